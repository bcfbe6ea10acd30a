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

#include "qrv/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qrv {

Measurement Measurement::create(std::vector<ComplexMatrix> operators,
                                const NumericPolicy& policy) {
  if (operators.size() < 2) {
    throw InvalidArgument("measurement: at least two operators are required");
  }
  const Index d = operators.front().cols();
  if (d == 0) {
    throw InvalidArgument("measurement: empty operator");
  }
  policy.check_dim(static_cast<std::size_t>(d), "measurement");
  std::vector<ComplexMatrix> effects;
  effects.reserve(operators.size());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < operators.size(); ++k) {
    const ComplexMatrix& m = operators[k];
    if (m.rows() != d || m.cols() != d) {
      throw InvalidArgument("measurement: operator " + std::to_string(k) +
                            " is not " + std::to_string(d) + "x" +
                            std::to_string(d));
    }
    if (!all_finite(m)) {
      throw InvalidArgument("measurement: non-finite entry in operator " +
                            std::to_string(k));
    }
    ComplexMatrix e = m.adjoint() * m;
    e = (e + e.adjoint()) * 0.5;
    sum += e;
    effects.push_back(std::move(e));
  }
  const double deviation =
      (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (deviation > policy.completeness_tol) {
    throw InvalidArgument("measurement: operators are not complete (deviation " +
                          std::to_string(deviation) + ")");
  }
  return Measurement(std::move(operators), std::move(effects));
}

Measurement Measurement::computational_basis(Index dim) {
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < dim; ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(k, k) = 1.0;
    ops.push_back(std::move(p));
  }
  return create(std::move(ops));
}

Classifier Classifier::create(KrausChannel channel, Measurement measurement,
                              std::vector<std::string> labels,
                              const NumericPolicy& policy) {
  if (channel.dim_in() != channel.dim_out()) {
    throw InvalidArgument("classifier: channel must have equal input and "
                          "output dimension");
  }
  if (channel.dim_out() != measurement.dim()) {
    throw InvalidArgument("classifier: channel output dimension " +
                          std::to_string(channel.dim_out()) +
                          " does not match measurement dimension " +
                          std::to_string(measurement.dim()));
  }
  if (labels.size() != measurement.size()) {
    throw InvalidArgument("classifier: " + std::to_string(labels.size()) +
                          " labels for " + std::to_string(measurement.size()) +
                          " measurement operators");
  }
  std::vector<ComplexMatrix> dual;
  dual.reserve(measurement.size());
  for (std::size_t k = 0; k < measurement.size(); ++k) {
    dual.push_back(dual_apply(channel, measurement.effect(k), policy));
  }
  return Classifier(std::move(channel), std::move(measurement),
                    std::move(labels), std::move(dual));
}

Index state_dim(const QuantumState& state) {
  return std::visit([](const auto& s) { return s.dim(); }, state);
}

DensityMatrix to_density(const QuantumState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) {
    return pure_to_density(*psi);
  }
  return std::get<DensityMatrix>(state);
}

namespace {

void require_dim(const Classifier& c, Index dim) {
  if (dim != c.dim()) {
    throw InvalidArgument("classifier expects dimension " +
                          std::to_string(c.dim()) + ", state has " +
                          std::to_string(dim));
  }
}

}  // namespace

ClassDistribution class_probabilities(const Classifier& c,
                                      const DensityMatrix& rho) {
  require_dim(c, rho.dim());
  const ComplexMatrix out = apply_to_matrix(c.channel(), rho.matrix());
  RealVector p(static_cast<Index>(c.num_classes()));
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const double v =
        (c.measurement().effect(k).cwiseProduct(out.transpose())).sum().real();
    p(static_cast<Index>(k)) = std::clamp(v, 0.0, 1.0);
  }
  return {std::move(p)};
}

ClassDistribution class_probabilities(const Classifier& c,
                                      const PureState& psi) {
  require_dim(c, psi.dim());
  const ComplexVector& a = psi.amplitudes();
  RealVector p(static_cast<Index>(c.num_classes()));
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const double v = a.dot(c.dual_effect(k) * a).real();
    p(static_cast<Index>(k)) = std::clamp(v, 0.0, 1.0);
  }
  return {std::move(p)};
}

ClassDistribution class_probabilities(const Classifier& c,
                                      const QuantumState& state) {
  return std::visit(
      [&c](const auto& s) { return class_probabilities(c, s); }, state);
}

Classification classify_distribution(const ClassDistribution& dist,
                                     const NumericPolicy& policy) {
  const RealVector& p = dist.probabilities;
  Classification out;
  out.distribution = dist;
  Index best = 0;
  for (Index k = 1; k < p.size(); ++k) {
    if (p(k) > p(best)) {
      best = k;
    }
  }
  double second = 0.0;
  for (Index k = 0; k < p.size(); ++k) {
    if (k != best) {
      second = std::max(second, p(k));
    }
  }
  out.label = static_cast<std::size_t>(best);
  out.margin = std::sqrt(p(best)) - std::sqrt(second);
  out.tie = p.size() > 1 && p(best) - second <= policy.tie_tol;
  return out;
}

Classification classify(const Classifier& c, const DensityMatrix& rho,
                        const NumericPolicy& policy) {
  return classify_distribution(class_probabilities(c, rho), policy);
}

Classification classify(const Classifier& c, const QuantumState& state,
                        const NumericPolicy& policy) {
  return classify_distribution(class_probabilities(c, state), policy);
}

bool preserves_label(const ClassDistribution& dist, std::size_t label,
                     const NumericPolicy& policy) {
  const RealVector& p = dist.probabilities;
  const Index l = static_cast<Index>(label);
  for (Index k = 0; k < p.size(); ++k) {
    if (k != l && p(l) - p(k) <= policy.tie_tol) {
      return false;
    }
  }
  return true;
}

void check_dataset(const Classifier& c, const LabeledDataset& d) {
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    const DataEntry& e = d.entries[i];
    if (e.label >= c.num_classes()) {
      throw InvalidArgument("dataset entry " + std::to_string(i) +
                            ": label " + std::to_string(e.label) +
                            " out of range");
    }
    if (state_dim(e.state) != c.dim()) {
      throw InvalidArgument("dataset entry " + std::to_string(i) +
                            ": dimension " +
                            std::to_string(state_dim(e.state)) +
                            " does not match classifier dimension " +
                            std::to_string(c.dim()));
    }
  }
}

double accuracy(const Classifier& c, const LabeledDataset& d,
                const NumericPolicy& policy) {
  if (d.entries.empty()) {
    throw InvalidArgument("accuracy: empty dataset");
  }
  check_dataset(c, d);
  std::size_t correct = 0;
  for (const DataEntry& e : d.entries) {
    if (classify(c, e.state, policy).label == e.label) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(d.entries.size());
}

ComplexMatrix class_gap_observable(const Classifier& c, std::size_t l,
                                   std::size_t k) {
  if (l >= c.num_classes() || k >= c.num_classes()) {
    throw InvalidArgument("class_gap_observable: class index out of range");
  }
  return c.dual_effect(l) - c.dual_effect(k);
}

}  // namespace qrv
