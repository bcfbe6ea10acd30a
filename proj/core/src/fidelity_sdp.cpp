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

#include <string>
#include <utility>
#include <vector>

#include "qrv/sdp.hpp"

namespace qrv {

namespace {

// Hermitian matrices selecting Re m(i, j) and Im m(i, j) through tr(E m).
ComplexMatrix real_part_selector(Index dim, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  if (i == j) {
    e(i, i) = 1.0;
  } else {
    e(i, j) = 0.5;
    e(j, i) = 0.5;
  }
  return e;
}

ComplexMatrix imag_part_selector(Index dim, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  e(i, j) = Complex(0.0, 0.5);
  e(j, i) = Complex(0.0, -0.5);
  return e;
}

// Equalities pinning the Hermitian block at `offset` of a dim x dim variable.
void pin_block(std::vector<SdpConstraint>& out, Index dim, Index offset,
               const ComplexMatrix& value) {
  const Index k = value.rows();
  for (Index i = 0; i < k; ++i) {
    for (Index j = i; j < k; ++j) {
      out.push_back({real_part_selector(dim, offset + i, offset + j),
                     Relation::kEqual, value(i, j).real()});
      if (i != j) {
        // tr(E m) with E(i,j) = i/2, E(j,i) = -i/2 gives
        // (i m(j,i) - i m(i,j)) / 2 = Im m(i,j).
        out.push_back({imag_part_selector(dim, offset + i, offset + j),
                       Relation::kEqual, value(i, j).imag()});
      }
    }
  }
}

// Eigenvectors and eigenvalues of m above the support tolerance.
std::pair<ComplexMatrix, RealVector> support_of(const ComplexMatrix& m,
                                                const NumericPolicy& policy) {
  const HermitianEigensystem es = hermitian_eigensystem(m, policy);
  std::vector<Index> kept;
  for (Index i = 0; i < es.eigenvalues.size(); ++i) {
    if (es.eigenvalues(i) > policy.support_tol) {
      kept.push_back(i);
    }
  }
  ComplexMatrix basis(m.rows(), static_cast<Index>(kept.size()));
  RealVector values(static_cast<Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    basis.col(static_cast<Index>(c)) = es.eigenvectors.col(kept[c]);
    values(static_cast<Index>(c)) = es.eigenvalues(kept[c]);
  }
  return {std::move(basis), std::move(values)};
}

}  // namespace

SdpProblem fidelity_pair_sdp(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const NumericPolicy& policy) {
  if (rho.dim() != sigma.dim()) {
    throw InvalidArgument("fidelity_pair_sdp: dimension mismatch");
  }
  const auto [v_rho, l_rho] = support_of(rho.matrix(), policy);
  const auto [v_sigma, l_sigma] = support_of(sigma.matrix(), policy);
  const Index r = l_rho.size();
  const Index s = l_sigma.size();
  const ComplexMatrix overlap = v_sigma.adjoint() * v_rho;
  SdpProblem p;
  p.dim = r + s;
  p.objective = ComplexMatrix::Zero(r + s, r + s);
  p.objective.topRightCorner(r, s) = -0.5 * overlap.adjoint();
  p.objective.bottomLeftCorner(s, r) = -0.5 * overlap;
  pin_block(p.constraints, r + s, 0, l_rho.cast<Complex>().asDiagonal().toDenseMatrix());
  pin_block(p.constraints, r + s, r, l_sigma.cast<Complex>().asDiagonal().toDenseMatrix());
  return p;
}

FidelityBlock sqrt_fidelity_sdp(const DensityMatrix& rho,
                                std::span<const SdpConstraint> sigma_constraints,
                                const NumericPolicy& policy) {
  const Index n = rho.dim();
  const HermitianEigensystem es = hermitian_eigensystem(rho.matrix(), policy);
  std::vector<Index> kept;
  for (Index i = 0; i < n; ++i) {
    if (es.eigenvalues(i) > policy.support_tol) {
      kept.push_back(i);
    }
  }
  const Index r = static_cast<Index>(kept.size());
  FidelityBlock block;
  block.dim = n;
  block.rank = r;
  block.support.resize(n, r);
  ComplexMatrix lambda = ComplexMatrix::Zero(r, r);
  for (Index c = 0; c < r; ++c) {
    block.support.col(c) = es.eigenvectors.col(kept[static_cast<std::size_t>(c)]);
    lambda(c, c) = es.eigenvalues(kept[static_cast<std::size_t>(c)]);
  }

  const Index total = r + n;
  SdpProblem& p = block.problem;
  p.dim = total;
  p.objective = ComplexMatrix::Zero(total, total);
  p.objective.topRightCorner(r, n) = -0.5 * block.support.adjoint();
  p.objective.bottomLeftCorner(n, r) = -0.5 * block.support;
  pin_block(p.constraints, total, 0, lambda);

  for (std::size_t i = 0; i < sigma_constraints.size(); ++i) {
    const SdpConstraint& c = sigma_constraints[i];
    if (c.a.rows() != n || c.a.cols() != n) {
      throw InvalidArgument("sqrt_fidelity_sdp: sigma constraint " +
                            std::to_string(i) + " has the wrong dimension");
    }
    if (!all_finite(c.a) || hermitian_deviation(c.a) > policy.hermitian_tol) {
      throw InvalidArgument("sqrt_fidelity_sdp: sigma constraint " +
                            std::to_string(i) + " is not a Hermitian matrix");
    }
    SdpConstraint lifted;
    lifted.a = ComplexMatrix::Zero(total, total);
    lifted.a.bottomRightCorner(n, n) = c.a;
    lifted.relation = c.relation;
    lifted.b = c.b;
    p.constraints.push_back(std::move(lifted));
  }
  return block;
}

void add_fidelity_floor(FidelityBlock& block, double floor) {
  block.problem.constraints.push_back(
      {block.problem.objective, Relation::kLessEqual, -floor});
}

ComplexMatrix extract_sigma(const FidelityBlock& block, const ComplexMatrix& z) {
  return z.bottomRightCorner(block.dim, block.dim);
}

SdpConstraint unit_trace(Index dim) {
  return {ComplexMatrix::Identity(dim, dim), Relation::kEqual, 1.0};
}

std::vector<SdpConstraint> fix_sigma(const ComplexMatrix& sigma) {
  std::vector<SdpConstraint> out;
  pin_block(out, sigma.rows(), 0, sigma);
  return out;
}

}  // namespace qrv
