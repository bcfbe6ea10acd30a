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

#include "qrv/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace qrv {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

// Eigenvalues of a matrix already known to be Hermitian (no validation).
RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double hermitian_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (m.size() == 0) {
    return 0.0;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

PureState PureState::from_amplitudes(ComplexVector amplitudes,
                                     const NumericPolicy& policy) {
  if (amplitudes.size() == 0) {
    throw InvalidArgument("pure state: empty amplitude vector");
  }
  if (!all_finite(amplitudes)) {
    throw InvalidArgument("pure state: non-finite amplitude");
  }
  policy.check_dim(static_cast<std::size_t>(amplitudes.size()), "pure state");
  const double norm = amplitudes.norm();
  const double deviation = std::abs(norm - 1.0);
  if (deviation > policy.norm_reject_tol) {
    throw InvalidArgument("pure state: amplitude norm " + std::to_string(norm) +
                          " is not 1");
  }
  if (deviation > policy.norm_tol) {
    amplitudes /= norm;
  }
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(Index dim, Index index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw InvalidArgument("basis state: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m,
                                         const NumericPolicy& policy) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidArgument("density matrix: must be square and non-empty");
  }
  if (!all_finite(m)) {
    throw InvalidArgument("density matrix: non-finite entry");
  }
  policy.check_dim(static_cast<std::size_t>(m.rows()), "density matrix");
  if (hermitian_deviation(m) > policy.hermitian_tol) {
    throw InvalidArgument("density matrix: not Hermitian (deviation " +
                          std::to_string(hermitian_deviation(m)) + ")");
  }
  ComplexMatrix h = hermitian_part(m);
  const double trace = h.trace().real();
  if (std::abs(trace - 1.0) > policy.trace_tol) {
    throw InvalidArgument("density matrix: trace " + std::to_string(trace) +
                          " is not 1");
  }
  const double min_eig = hermitian_eigenvalues(h).minCoeff();
  if (min_eig < -policy.psd_clamp_tol) {
    throw InvalidArgument("density matrix: not positive semidefinite "
                          "(smallest eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::nearest_state(const ComplexMatrix& m,
                                           const NumericPolicy& policy) {
  if (m.rows() == 0 || m.rows() != m.cols() || !all_finite(m)) {
    throw InvalidArgument("nearest_state: need a finite square matrix");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  RealVector eig = solver.eigenvalues().cwiseMax(0.0);
  const double total = eig.sum();
  if (!(total > 0.0)) {
    throw InvalidArgument("nearest_state: matrix has no positive part");
  }
  eig /= total;
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexMatrix out = v * eig.asDiagonal() * v.adjoint();
  return from_matrix(hermitian_part(out), policy);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) {
    throw InvalidArgument("maximally_mixed: dimension must be positive");
  }
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) /
                       static_cast<double>(dim));
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m,
                                           const NumericPolicy& policy) {
  if (m.rows() == 0 || !all_finite(m)) {
    throw InvalidArgument("hermitian_eigensystem: need a finite non-empty matrix");
  }
  const double deviation = hermitian_deviation(m);
  if (deviation > policy.hermitian_tol) {
    throw InvalidArgument("hermitian_eigensystem: matrix is not Hermitian "
                          "(deviation " +
                          std::to_string(deviation) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigensystem: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m,
                              const NumericPolicy& policy) {
  HermitianEigensystem es = hermitian_eigensystem(m, policy);
  if (es.eigenvalues.minCoeff() < -policy.psd_reject_tol) {
    throw InvalidArgument("matrix_sqrt_psd: matrix is not positive "
                          "semidefinite (smallest eigenvalue " +
                          std::to_string(es.eigenvalues.minCoeff()) + ")");
  }
  // Eigenvalues at round-off level are zero; their square roots are not small.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
  RealVector roots =
      es.eigenvalues.unaryExpr([noise](double v) { return v <= noise ? 0.0 : std::sqrt(v); });
  ComplexMatrix r =
      es.eigenvectors * roots.asDiagonal() * es.eigenvectors.adjoint();
  return hermitian_part(r);
}

DensityMatrix pure_to_density(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix::from_matrix(a * a.adjoint());
}

DensityMatrix pure_to_density(const ComplexVector& amplitudes,
                              const NumericPolicy& policy) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > policy.norm_reject_tol) {
    throw InvalidArgument("pure_to_density: vector norm " +
                          std::to_string(norm) + " is not 1");
  }
  return pure_to_density(PureState::from_amplitudes(amplitudes, policy));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  // tr sqrt(sqrt(rho) sigma sqrt(rho)) is the nuclear norm of sqrt(rho) sqrt(sigma).
  const ComplexMatrix product =
      matrix_sqrt_psd(rho.matrix()) * matrix_sqrt_psd(sigma.matrix());
  const double root_fidelity = Eigen::BDCSVD<ComplexMatrix>(product).singularValues().sum();
  return std::clamp(root_fidelity * root_fidelity, 0.0, 1.0);
}

double infidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 1.0 - fidelity(rho, sigma);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  const RealVector eig =
      hermitian_eigenvalues(hermitian_part(rho.matrix() - sigma.matrix()));
  return std::clamp(0.5 * eig.cwiseAbs().sum(), 0.0, 1.0);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double overlap_squared(const PureState& phi, const PureState& psi) {
  if (phi.dim() != psi.dim()) {
    throw InvalidArgument("overlap_squared: dimension mismatch");
  }
  return std::norm(phi.amplitudes().dot(psi.amplitudes()));
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace qrv
