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

// Quantum classifiers: a channel followed by a measurement, with the argmax
// decision rule.

#ifndef QRV_CLASSIFIER_HPP_
#define QRV_CLASSIFIER_HPP_

#include <string>
#include <variant>
#include <vector>

#include "qrv/qchannel.hpp"

namespace qrv {

/// Measurement family {M_k}, one operator per class, sum M_k^dagger M_k = I.
class Measurement {
 public:
  static Measurement create(std::vector<ComplexMatrix> operators,
                            const NumericPolicy& policy = {});
  /// Projective measurement onto the computational basis.
  static Measurement computational_basis(Index dim);

  Index dim() const { return operators_.front().cols(); }
  std::size_t size() const { return operators_.size(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  /// M_k^dagger M_k.
  const ComplexMatrix& effect(std::size_t k) const { return effects_[k]; }

 private:
  Measurement(std::vector<ComplexMatrix> operators,
              std::vector<ComplexMatrix> effects)
      : operators_(std::move(operators)), effects_(std::move(effects)) {}

  std::vector<ComplexMatrix> operators_;
  std::vector<ComplexMatrix> effects_;
};

class Classifier {
 public:
  /// Requires a square channel whose output dimension matches the
  /// measurement, and one label per measurement operator.
  static Classifier create(KrausChannel channel, Measurement measurement,
                           std::vector<std::string> labels,
                           const NumericPolicy& policy = {});

  Index dim() const { return channel_.dim_in(); }
  std::size_t num_classes() const { return measurement_.size(); }
  const KrausChannel& channel() const { return channel_; }
  const Measurement& measurement() const { return measurement_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// E^dagger(M_k^dagger M_k): the effect pulled back through the channel.
  const ComplexMatrix& dual_effect(std::size_t k) const {
    return dual_effects_[k];
  }

 private:
  Classifier(KrausChannel channel, Measurement measurement,
             std::vector<std::string> labels,
             std::vector<ComplexMatrix> dual_effects)
      : channel_(std::move(channel)),
        measurement_(std::move(measurement)),
        labels_(std::move(labels)),
        dual_effects_(std::move(dual_effects)) {}

  KrausChannel channel_;
  Measurement measurement_;
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> dual_effects_;
};

using QuantumState = std::variant<PureState, DensityMatrix>;

struct DataEntry {
  QuantumState state;
  std::size_t label = 0;
};

struct LabeledDataset {
  std::vector<DataEntry> entries;
};

Index state_dim(const QuantumState& state);
DensityMatrix to_density(const QuantumState& state);

struct ClassDistribution {
  RealVector probabilities;
};

struct Classification {
  std::size_t label = 0;
  ClassDistribution distribution;
  /// sqrt(p1) - sqrt(p2) for the two largest probabilities.
  double margin = 0.0;
  /// Another class is within tie_tol of the winner.
  bool tie = false;
};

/// p_k = tr(M_k^dagger M_k E(rho)), clamped to [0, 1].
ClassDistribution class_probabilities(const Classifier& c,
                                      const DensityMatrix& rho);
/// p_k = <psi| E^dagger(M_k^dagger M_k) |psi>.
ClassDistribution class_probabilities(const Classifier& c,
                                      const PureState& psi);
ClassDistribution class_probabilities(const Classifier& c,
                                      const QuantumState& state);

/// Argmax with lowest-index tie-break.
Classification classify_distribution(const ClassDistribution& dist,
                                     const NumericPolicy& policy = {});
Classification classify(const Classifier& c, const DensityMatrix& rho,
                        const NumericPolicy& policy = {});
Classification classify(const Classifier& c, const QuantumState& state,
                        const NumericPolicy& policy = {});

/// True when `label` is the strict winner: no other class reaches p_label
/// within tie_tol.
bool preserves_label(const ClassDistribution& dist, std::size_t label,
                     const NumericPolicy& policy = {});

/// Throws on an empty dataset or a label/dimension mismatch.
double accuracy(const Classifier& c, const LabeledDataset& d,
                const NumericPolicy& policy = {});

/// Accuracy at or above this is "well trained"; lower accuracy only warns.
inline constexpr double kWellTrainedAccuracy = 0.95;

/// W = E^dagger(M_l^dagger M_l - M_k^dagger M_k). A state sigma moves to
/// class k (or ties) iff tr(W sigma) <= 0.
ComplexMatrix class_gap_observable(const Classifier& c, std::size_t l,
                                   std::size_t k);

void check_dataset(const Classifier& c, const LabeledDataset& d);

}  // namespace qrv

#endif  // QRV_CLASSIFIER_HPP_
