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

#include "qrv/qchannel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qrv {

namespace {

double tp_deviation(std::span<const ComplexMatrix> kraus) {
  const Index d = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : kraus) {
    sum.noalias() += e.adjoint() * e;
  }
  sum -= ComplexMatrix::Identity(d, d);
  return sum.cwiseAbs().maxCoeff();
}

void check_shapes(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) {
    throw InvalidArgument("Kraus channel: at least one operator is required");
  }
  const Index rows = kraus.front().rows();
  const Index cols = kraus.front().cols();
  if (rows == 0 || cols == 0) {
    throw InvalidArgument("Kraus channel: empty operator");
  }
  for (const auto& e : kraus) {
    if (e.rows() != rows || e.cols() != cols) {
      throw InvalidArgument("Kraus channel: operators have different shapes");
    }
    if (!all_finite(e)) {
      throw InvalidArgument("Kraus channel: non-finite entry");
    }
  }
}

}  // namespace

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    return false;
  }
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::Identity(u.rows(), u.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

KrausChannel KrausChannel::from_kraus(std::vector<ComplexMatrix> kraus,
                                      const NumericPolicy& policy) {
  check_shapes(kraus);
  policy.check_dim(static_cast<std::size_t>(kraus.front().cols()),
                   "Kraus channel");
  policy.check_dim(static_cast<std::size_t>(kraus.front().rows()),
                   "Kraus channel");
  const double deviation = tp_deviation(kraus);
  if (deviation > policy.trace_preserving_tol) {
    throw InvalidArgument("Kraus channel: not trace preserving (deviation " +
                          std::to_string(deviation) + ")");
  }
  return KrausChannel(std::move(kraus));
}

ChannelDiagnostics validate_kraus(std::span<const ComplexMatrix> kraus,
                                  const NumericPolicy& policy) {
  check_shapes(kraus);
  ChannelDiagnostics diag;
  diag.kraus_count = kraus.size();
  diag.trace_preservation_deviation = tp_deviation(kraus);
  diag.trace_preserving =
      diag.trace_preservation_deviation <= policy.trace_preserving_tol;
  return diag;
}

ChannelDiagnostics validate(const KrausChannel& channel,
                            const NumericPolicy& policy) {
  return validate_kraus(channel.kraus(), policy);
}

ComplexMatrix apply_to_matrix(const KrausChannel& channel,
                              const ComplexMatrix& m) {
  if (m.rows() != channel.dim_in() || m.cols() != channel.dim_in()) {
    throw InvalidArgument("channel apply: input has dimension " +
                          std::to_string(m.rows()) + ", channel expects " +
                          std::to_string(channel.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(channel.dim_out(), channel.dim_out());
  for (const auto& e : channel.kraus()) {
    out.noalias() += e * m * e.adjoint();
  }
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  ComplexMatrix out = apply_to_matrix(channel, rho.matrix());
  out = (out + out.adjoint()) * 0.5;
  return DensityMatrix::from_matrix(std::move(out));
}

ComplexMatrix dual_apply(const KrausChannel& channel, const ComplexMatrix& obs,
                         const NumericPolicy& policy) {
  if (obs.rows() != channel.dim_out() || obs.cols() != channel.dim_out()) {
    throw InvalidArgument("dual_apply: observable has dimension " +
                          std::to_string(obs.rows()) + ", channel outputs " +
                          std::to_string(channel.dim_out()));
  }
  if (hermitian_deviation(obs) > policy.hermitian_tol) {
    throw InvalidArgument("dual_apply: observable is not Hermitian");
  }
  ComplexMatrix out = ComplexMatrix::Zero(channel.dim_in(), channel.dim_in());
  for (const auto& e : channel.kraus()) {
    out.noalias() += e.adjoint() * obs * e;
  }
  return (out + out.adjoint()) * 0.5;
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (inner.dim_out() != outer.dim_in()) {
    throw InvalidArgument("compose: inner output dimension " +
                          std::to_string(inner.dim_out()) +
                          " does not match outer input dimension " +
                          std::to_string(outer.dim_in()));
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& f : outer.kraus()) {
    for (const auto& e : inner.kraus()) {
      ComplexMatrix product = f * e;
      if (product.cwiseAbs().maxCoeff() > 0.0) {
        kraus.push_back(std::move(product));
      }
    }
  }
  if (kraus.empty()) {
    kraus.push_back(ComplexMatrix::Zero(outer.dim_out(), inner.dim_in()));
  }
  // Products of trace-preserving maps are trace preserving; re-validate with
  // a looser bound that allows for accumulated rounding.
  NumericPolicy loose;
  loose.trace_preserving_tol = 1e-6;
  loose.max_dim = std::max<std::size_t>(
      loose.max_dim, static_cast<std::size_t>(
                         std::max(outer.dim_out(), inner.dim_in())));
  return KrausChannel::from_kraus(std::move(kraus), loose);
}

KrausChannel identity_channel(Index dim) {
  if (dim <= 0) {
    throw InvalidArgument("identity_channel: dimension must be positive");
  }
  return KrausChannel::from_kraus({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel unitary_channel(const ComplexMatrix& u,
                             const NumericPolicy& policy) {
  if (!is_unitary(u, policy.unitary_tol)) {
    throw InvalidArgument("unitary_channel: matrix is not unitary");
  }
  return KrausChannel::from_kraus({u}, policy);
}

KrausChannel depolarizing(double p, Index dim) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("depolarizing: p must lie in [0, 1]");
  }
  if (dim < 2) {
    throw InvalidArgument("depolarizing: dimension must be at least 2");
  }
  const double d = static_cast<double>(dim);
  // Weyl operators W_ab = X^a Z^b with X|j> = |j+1>, Z|j> = w^j |j>.
  std::vector<ComplexMatrix> kraus;
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) {
      const double weight = (a == 0 && b == 0)
                                ? 1.0 - p * (d * d - 1.0) / (d * d)
                                : p / (d * d);
      if (weight <= 0.0) {
        continue;
      }
      ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
      for (Index j = 0; j < dim; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(b * j) / d;
        w((j + a) % dim, j) = std::polar(1.0, angle);
      }
      kraus.push_back(std::sqrt(weight) * w);
    }
  }
  return KrausChannel::from_kraus(std::move(kraus));
}

KrausChannel measure_and_control(std::span<const ComplexMatrix> measurement,
                                 std::span<const ComplexMatrix> controlled,
                                 const NumericPolicy& policy) {
  if (measurement.size() != controlled.size()) {
    throw InvalidArgument("measure_and_control: need one controlled unitary "
                          "per measurement outcome");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(measurement.size());
  for (std::size_t k = 0; k < measurement.size(); ++k) {
    if (!is_unitary(controlled[k], policy.unitary_tol)) {
      throw InvalidArgument("measure_and_control: controlled operation " +
                            std::to_string(k) + " is not unitary");
    }
    if (controlled[k].cols() != measurement[k].rows()) {
      throw InvalidArgument("measure_and_control: dimension mismatch");
    }
    kraus.push_back(controlled[k] * measurement[k]);
  }
  return KrausChannel::from_kraus(std::move(kraus), policy);
}

}  // namespace qrv
