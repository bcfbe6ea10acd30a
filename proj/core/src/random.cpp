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

#include "qrv/random.hpp"

#include <cmath>
#include <string>

namespace qrv {

ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

namespace {

// Orthonormal columns, Haar distributed over isometries.
ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  const ComplexMatrix g = random_ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR();
  for (Index j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

}  // namespace

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

PureState random_pure_state(Index dim, Rng& rng) {
  ComplexVector v = random_ginibre(dim, 1, rng).col(0);
  v /= v.norm();
  return PureState::from_amplitudes(std::move(v));
}

DensityMatrix random_density(Index dim, Rng& rng, Index rank) {
  if (rank <= 0) {
    rank = dim;
  }
  const ComplexMatrix g = random_ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) * 0.5;
  return DensityMatrix::from_matrix(std::move(rho));
}

KrausChannel random_channel(Index dim, Index kraus_count, Rng& rng) {
  if (kraus_count <= 0) {
    throw InvalidArgument("random_channel: kraus_count must be positive");
  }
  const ComplexMatrix v = random_isometry(dim * kraus_count, dim, rng);
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < kraus_count; ++k) {
    kraus.push_back(v.block(k * dim, 0, dim, dim));
  }
  return KrausChannel::from_kraus(std::move(kraus));
}

Measurement random_measurement(Index dim, std::size_t classes, Rng& rng) {
  if (classes < 2 || static_cast<Index>(classes) > dim) {
    throw InvalidArgument("random_measurement: need 2 <= classes <= dim");
  }
  const ComplexMatrix u = random_unitary(dim, rng);
  std::vector<ComplexMatrix> ops(classes, ComplexMatrix::Zero(dim, dim));
  for (Index i = 0; i < dim; ++i) {
    const std::size_t k = static_cast<std::size_t>(i) % classes;
    ops[k] += u.col(i) * u.col(i).adjoint();
  }
  return Measurement::create(std::move(ops));
}

Classifier random_classifier(Index dim, std::size_t classes, Rng& rng,
                             Index kraus_count) {
  KrausChannel channel = random_channel(dim, kraus_count, rng);
  Measurement measurement = random_measurement(dim, classes, rng);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < classes; ++k) {
    labels.push_back("c" + std::to_string(k));
  }
  return Classifier::create(std::move(channel), std::move(measurement),
                            std::move(labels));
}

}  // namespace qrv
