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

#ifndef QRV_SRC_VERIFIER_INTERNAL_HPP_
#define QRV_SRC_VERIFIER_INTERNAL_HPP_

#include "qrv/verifier.hpp"

namespace qrv::detail {

/// Classifies rho and throws MisclassifiedInput unless the label is l.
Classification require_label(const Classifier& c, const DensityMatrix& rho,
                             std::size_t l, const NumericPolicy& policy);

/// Turns a solver output into a state that ties or loses label l against k.
/// The solver's sigma satisfies tr(W sigma) <= 0 only up to tolerance; it is
/// mixed with the lowest eigenvector of W just enough to cross.
DensityMatrix repair_to_boundary(const Classifier& c, const ComplexMatrix& raw,
                                 std::size_t l, std::size_t k,
                                 const ComplexMatrix& w,
                                 const HermitianEigensystem& w_eig,
                                 const NumericPolicy& policy);

}  // namespace qrv::detail

#endif  // QRV_SRC_VERIFIER_INTERNAL_HPP_
