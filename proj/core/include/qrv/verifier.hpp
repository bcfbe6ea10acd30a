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

// Robustness verification: the margin bound, the feasibility and optimal-
// bound SDPs, the pure-state search, and dataset-level robust accuracy.

#ifndef QRV_VERIFIER_HPP_
#define QRV_VERIFIER_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qrv/classifier.hpp"
#include "qrv/sdp.hpp"

namespace qrv {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Robustness was requested for a state the classifier gets wrong.
class MisclassifiedInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct AdversarialExample {
  DensityMatrix sigma;
  std::size_t target_class = 0;
  /// D(rho, sigma) = 1 - F(rho, sigma).
  double distance = 0.0;
};

/// sqrt(p1) - sqrt(p2) > sqrt(2 eps). A true result certifies eps-robustness;
/// false is inconclusive.
bool lemma_certifies(double margin, double eps);
bool lemma_robust_bound(const Classifier& c, const DensityMatrix& rho,
                        double eps, const NumericPolicy& policy = {});

/// The three conditions for sigma to be an eps-adversarial example of rho
/// with label l: rho is classified as l, sigma is not strictly classified as
/// l, and D(rho, sigma) <= eps + tol.
bool is_adversarial(const Classifier& c, const DensityMatrix& rho,
                    std::size_t l, const DensityMatrix& sigma, double eps,
                    double tol = 1e-5, const NumericPolicy& policy = {});

struct RobustnessCheck {
  bool robust = true;
  /// The feasible sigma of smallest distance over all target classes.
  std::optional<AdversarialExample> witness;
  /// Phase-one optimum per class (+inf when infeasible in closed form).
  std::vector<double> phase_one_values;
  int sdp_solves = 0;
};

/// Solves one feasibility SDP per competing class. Throws MisclassifiedInput
/// when classify(rho) != l and NumericalError when a solve fails.
RobustnessCheck check_epsilon_robust(const Classifier& c,
                                     const DensityMatrix& rho, std::size_t l,
                                     double eps, const SdpOptions& sdp = {},
                                     const NumericPolicy& policy = {});

struct ClassBound {
  std::size_t target_class = 0;
  double delta = kUnbounded;
  std::optional<DensityMatrix> sigma;
  int iterations = 0;
};

struct OptimalBound {
  /// min_k delta_k; kUnbounded when no class can be reached.
  double delta = kUnbounded;
  std::optional<std::size_t> argmin_class;
  std::optional<DensityMatrix> sigma_star;
  std::vector<ClassBound> per_class;
  int sdp_solves = 0;
  int sdp_iterations = 0;

  bool unbounded() const { return !argmin_class.has_value(); }
};

/// delta = min over k != l of min { 1 - F(rho, sigma) : sigma moves rho's
/// label to k or ties it }. Throws MisclassifiedInput when classify(rho) != l
/// and NumericalError when a class problem neither solves nor is infeasible.
OptimalBound compute_optimal_bound(const Classifier& c,
                                   const DensityMatrix& rho, std::size_t l,
                                   const SdpOptions& sdp = {},
                                   const NumericPolicy& policy = {});

struct PureBoundOptions {
  /// Local searches per class: psi, the eigenvectors of the class-gap
  /// observable, then random unit vectors.
  int starts = 32;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  /// Also try the maximizer of the Lagrangian relaxation.
  bool lagrangian_start = true;
};

struct PureBound {
  /// Best value found (an upper bound on the pure-state optimum).
  double delta = kUnbounded;
  std::optional<PureState> phi_star;
  std::optional<std::size_t> argmin_class;
  /// No start reached the feasible set for some class; delta is then not
  /// usable as a verdict.
  bool inconclusive = false;
  int converged_starts = 0;
};

PureBound pure_state_optimal_bound(const Classifier& c, const PureState& psi,
                                   std::size_t l,
                                   const PureBoundOptions& options = {},
                                   const NumericPolicy& policy = {});

enum class VerifyMode { kMixed, kPure };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::kMixed;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  SdpOptions sdp;
  PureBoundOptions pure;
  NumericPolicy policy;
};

struct StateVerdict {
  std::size_t index = 0;
  std::size_t label = 0;
  std::size_t predicted = 0;
  bool correctly_classified = false;
  double margin = 0.0;
  bool tie = false;
  bool lemma_certifies = false;
  /// An optimal bound was computed (the margin test did not settle the state).
  bool bound_computed = false;
  double delta = kUnbounded;
  bool robust = false;
  /// The bound computation threw or was inconclusive; excluded from RA.
  bool failed = false;
  std::string error;
  std::optional<AdversarialExample> adversarial;
};

struct VerificationTimings {
  /// Margin-bound pass over the whole dataset (URA).
  double under_approximation = 0.0;
  /// Full filter-then-solve pass (RA), including the margin filter.
  double robust_accuracy = 0.0;
  /// Part of robust_accuracy spent in bound computations.
  double bound_solves = 0.0;
};

struct VerificationReport {
  double epsilon = 0.0;
  VerifyMode mode = VerifyMode::kMixed;
  std::vector<StateVerdict> verdicts;
  double accuracy = 0.0;
  double robust_accuracy = 0.0;
  double under_approx_robust_accuracy = 0.0;
  std::size_t correctness_failures = 0;
  std::size_t failed_states = 0;
  std::size_t bound_computations = 0;
  /// Indices of verdicts whose adversarial example forms the set R.
  std::vector<std::size_t> adversarial_sources;
  int sdp_solves = 0;
  int sdp_iterations = 0;
  VerificationTimings timings;
  std::vector<std::string> warnings;
};

/// Filter-then-solve over a dataset. Per-state failures are recorded in the
/// verdict and never abort the batch.
VerificationReport verify_dataset(const Classifier& c, const LabeledDataset& d,
                                  double eps, const VerifyOptions& options = {});

/// 1 - r/|T| where r counts entries with margin <= sqrt(2 eps).
double under_robust_accuracy(const Classifier& c, const LabeledDataset& d,
                             double eps, const NumericPolicy& policy = {});

/// Throws unless 0 <= eps < 1.
void check_epsilon(double eps);

}  // namespace qrv

#endif  // QRV_VERIFIER_HPP_
