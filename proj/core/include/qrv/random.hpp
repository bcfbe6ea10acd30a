// Copyright 2026 The qrv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random states, channels and classifiers for tests, oracles and
// benchmarks.

#ifndef QRV_RANDOM_HPP_
#define QRV_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "qrv/classifier.hpp"

namespace qrv {

using Rng = std::mt19937_64;

/// Entries i.i.d. complex normal.
ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Index dim, Rng& rng);

PureState random_pure_state(Index dim, Rng& rng);

/// G G^dagger / tr(G G^dagger) with G of size dim x rank (Hilbert-Schmidt
/// measure when rank = dim).
DensityMatrix random_density(Index dim, Rng& rng, Index rank = 0);

/// Channel from a Haar isometry dim -> dim * kraus_count.
KrausChannel random_channel(Index dim, Index kraus_count, Rng& rng);

/// Rank-one projective measurement in a Haar-random basis, grouped into
/// `classes` outcomes of near-equal size.
Measurement random_measurement(Index dim, std::size_t classes, Rng& rng);

/// Random channel followed by a random measurement.
Classifier random_classifier(Index dim, std::size_t classes, Rng& rng,
                             Index kraus_count = 2);

}  // namespace qrv

#endif  // QRV_RANDOM_HPP_
