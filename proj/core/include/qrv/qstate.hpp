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

// Dense quantum-state representations and the distances between them.

#ifndef QRV_QSTATE_HPP_
#define QRV_QSTATE_HPP_

#include <complex>

#include <Eigen/Dense>

#include "qrv/numeric_policy.hpp"

namespace qrv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

bool all_finite(const ComplexMatrix& m);

/// max |m - m^dagger|; +inf for non-square input.
double hermitian_deviation(const ComplexMatrix& m);

/// Unit-norm state vector.
class PureState {
 public:
  /// Accepts amplitudes whose norm is within norm_reject_tol of one and
  /// renormalizes when the deviation exceeds norm_tol. Amplitudes already
  /// within norm_tol are stored bit-for-bit.
  static PureState from_amplitudes(ComplexVector amplitudes,
                                   const NumericPolicy& policy = {});
  static PureState basis(Index dim, Index index);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  explicit PureState(ComplexVector amplitudes)
      : amplitudes_(std::move(amplitudes)) {}

  ComplexVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates the matrix and stores its Hermitian part.
  static DensityMatrix from_matrix(ComplexMatrix m,
                                   const NumericPolicy& policy = {});
  /// Hermitizes, clamps negative eigenvalues and renormalizes the trace.
  /// For solver output that is a state only up to solver tolerance.
  static DensityMatrix nearest_state(const ComplexMatrix& m,
                                     const NumericPolicy& policy = {});
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}

  ComplexMatrix matrix_;
};

struct HermitianEigensystem {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m,
                                           const NumericPolicy& policy = {});

/// Principal square root of a PSD matrix. Eigenvalues in
/// [-psd_clamp_tol, 0) are clamped; anything below -psd_reject_tol throws.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m,
                              const NumericPolicy& policy = {});

DensityMatrix pure_to_density(const PureState& psi);
/// Raw-vector overload; rejects vectors whose norm is off by more than
/// norm_reject_tol.
DensityMatrix pure_to_density(const ComplexVector& amplitudes,
                              const NumericPolicy& policy = {});

/// F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// The robustness distance D = 1 - F.
double infidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// T(rho, sigma) = 1/2 sum |eig(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Kronecker product a (x) b.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// |<phi|psi>|^2.
double overlap_squared(const PureState& phi, const PureState& psi);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qrv

#endif  // QRV_QSTATE_HPP_
