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

#ifndef QRV_NUMERIC_POLICY_HPP_
#define QRV_NUMERIC_POLICY_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrv {

/// Invalid input: dimension mismatch, malformed state, channel or measurement.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver or factorization could not produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tolerance used by the library, in one place.
///
/// Absolute tolerances; all library data is O(1) in magnitude (states,
/// channels, measurement effects), so no relative scaling is applied.
struct NumericPolicy {
  double hermitian_tol = 1e-9;
  /// Eigenvalues in [-psd_clamp_tol, 0) count as zero.
  double psd_clamp_tol = 1e-8;
  /// Eigenvalues below -psd_reject_tol make a matrix "not PSD".
  double psd_reject_tol = 1e-6;
  double trace_tol = 1e-9;
  /// Pure-state amplitudes are renormalized when the norm is off by more
  /// than norm_tol and rejected beyond norm_reject_tol.
  double norm_tol = 1e-9;
  double norm_reject_tol = 1e-6;
  double trace_preserving_tol = 1e-7;
  double completeness_tol = 1e-7;
  double unitary_tol = 1e-7;
  /// Two class probabilities closer than this are a tie.
  double tie_tol = 1e-12;
  /// Eigenvalues of rho above this span its support in fidelity SDPs.
  double support_tol = 1e-12;
  std::size_t max_dim = 256;

  /// Throws InvalidArgument when dim exceeds max_dim.
  void check_dim(std::size_t dim, const std::string& what) const;
};

/// Policy with max_dim read from QRV_MAX_DIM when set.
NumericPolicy policy_from_environment();

}  // namespace qrv

#endif  // QRV_NUMERIC_POLICY_HPP_
