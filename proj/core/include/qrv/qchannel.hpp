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

// Quantum channels in Kraus form.

#ifndef QRV_QCHANNEL_HPP_
#define QRV_QCHANNEL_HPP_

#include <span>
#include <vector>

#include "qrv/qstate.hpp"

namespace qrv {

/// Trace-preserving map rho -> sum_k E_k rho E_k^dagger. Complete
/// positivity is structural.
class KrausChannel {
 public:
  /// Throws unless every operator has the same shape and
  /// max|sum E^dagger E - I| <= trace_preserving_tol.
  static KrausChannel from_kraus(std::vector<ComplexMatrix> kraus,
                                 const NumericPolicy& policy = {});

  Index dim_in() const { return kraus_.front().cols(); }
  Index dim_out() const { return kraus_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus)
      : kraus_(std::move(kraus)) {}

  std::vector<ComplexMatrix> kraus_;
};

struct ChannelDiagnostics {
  std::size_t kraus_count = 0;
  /// max|sum_k E_k^dagger E_k - I|
  double trace_preservation_deviation = 0.0;
  bool trace_preserving = false;
};

/// Diagnoses a raw Kraus list without requiring it to be a valid channel.
ChannelDiagnostics validate_kraus(std::span<const ComplexMatrix> kraus,
                                  const NumericPolicy& policy = {});
ChannelDiagnostics validate(const KrausChannel& channel,
                            const NumericPolicy& policy = {});

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// sum_k E_k m E_k^dagger for an arbitrary square matrix m.
ComplexMatrix apply_to_matrix(const KrausChannel& channel,
                              const ComplexMatrix& m);

/// Heisenberg-picture map sum_k E_k^dagger obs E_k; obs must be Hermitian.
ComplexMatrix dual_apply(const KrausChannel& channel, const ComplexMatrix& obs,
                         const NumericPolicy& policy = {});

/// outer o inner, with Kraus set {F_j E_k}.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

KrausChannel identity_channel(Index dim);
KrausChannel unitary_channel(const ComplexMatrix& u,
                             const NumericPolicy& policy = {});

/// rho -> (1 - p) rho + p I/d, built from the d^2 Weyl operators. For d = 2
/// the Kraus set is {sqrt(1 - 3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
/// up to phases.
KrausChannel depolarizing(double p, Index dim = 2);

/// Kraus set {V_k M_k}: V_k is applied iff the measurement outcome is k.
KrausChannel measure_and_control(std::span<const ComplexMatrix> measurement,
                                 std::span<const ComplexMatrix> controlled,
                                 const NumericPolicy& policy = {});

bool is_unitary(const ComplexMatrix& u, double tol);

}  // namespace qrv

#endif  // QRV_QCHANNEL_HPP_
