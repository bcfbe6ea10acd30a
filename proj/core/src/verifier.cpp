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

#include "qrv/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "verifier_internal.hpp"

namespace qrv {

void check_epsilon(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    std::ostringstream msg;
    msg << "epsilon must lie in [0, 1), got " << eps;
    throw InvalidArgument(msg.str());
  }
}

bool lemma_certifies(double margin, double eps) {
  return margin > std::sqrt(2.0 * eps);
}

bool lemma_robust_bound(const Classifier& c, const DensityMatrix& rho,
                        double eps, const NumericPolicy& policy) {
  check_epsilon(eps);
  return lemma_certifies(classify(c, rho, policy).margin, eps);
}

bool is_adversarial(const Classifier& c, const DensityMatrix& rho,
                    std::size_t l, const DensityMatrix& sigma, double eps,
                    double tol, const NumericPolicy& policy) {
  if (classify(c, rho, policy).label != l) {
    return false;
  }
  if (preserves_label(class_probabilities(c, sigma), l, policy)) {
    return false;
  }
  return infidelity(rho, sigma) <= eps + tol;
}

namespace detail {

Classification require_label(const Classifier& c, const DensityMatrix& rho,
                             std::size_t l, const NumericPolicy& policy) {
  if (l >= c.num_classes()) {
    throw InvalidArgument("label " + std::to_string(l) + " out of range");
  }
  Classification cls = classify(c, rho, policy);
  if (cls.label != l) {
    throw MisclassifiedInput("state is classified as " +
                             std::to_string(cls.label) + ", not " +
                             std::to_string(l) +
                             "; robustness is only defined for correctly "
                             "classified states");
  }
  return cls;
}

DensityMatrix repair_to_boundary(const Classifier& c, const ComplexMatrix& raw,
                                 std::size_t l, std::size_t k,
                                 const ComplexMatrix& w,
                                 const HermitianEigensystem& w_eig,
                                 const NumericPolicy& policy) {
  DensityMatrix sigma = DensityMatrix::nearest_state(raw, policy);
  const ComplexVector phi = w_eig.eigenvectors.col(0);
  const double lambda_min = w_eig.eigenvalues(0);
  const ComplexMatrix target = phi * phi.adjoint();
  double factor = 1.0 + 1e-9;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const RealVector p = class_probabilities(c, sigma).probabilities;
    if (p(static_cast<Index>(l)) - p(static_cast<Index>(k)) <=
        policy.tie_tol) {
      return sigma;
    }
    const double gap = sigma.matrix().cwiseProduct(w.transpose()).sum().real();
    const double t = std::clamp(
        std::max(gap, 0.0) / (std::max(gap, 0.0) - lambda_min) * factor, 0.0,
        1.0);
    ComplexMatrix mixed = (1.0 - t) * sigma.matrix() + t * target;
    sigma = DensityMatrix::nearest_state(mixed, policy);
    factor *= 10.0;
  }
  throw NumericalError("could not move the solver's state across the class "
                       "boundary");
}

}  // namespace detail

OptimalBound compute_optimal_bound(const Classifier& c,
                                   const DensityMatrix& rho, std::size_t l,
                                   const SdpOptions& sdp,
                                   const NumericPolicy& policy) {
  const Classification cls = detail::require_label(c, rho, l, policy);
  const RealVector& p = cls.distribution.probabilities;
  OptimalBound out;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    if (k == l) {
      continue;
    }
    ClassBound cb;
    cb.target_class = k;
    const ComplexMatrix w = class_gap_observable(c, l, k);
    const HermitianEigensystem w_eig = hermitian_eigensystem(w, policy);
    if (p(static_cast<Index>(l)) - p(static_cast<Index>(k)) <= policy.tie_tol) {
      cb.delta = 0.0;
      cb.sigma = rho;
    } else if (w_eig.eigenvalues(0) > 0.0) {
      // tr(W sigma) > 0 for every state: class k is unreachable.
      cb.delta = kUnbounded;
    } else {
      const std::vector<SdpConstraint> constraints{
          unit_trace(rho.dim()), {w, Relation::kLessEqual, 0.0}};
      const FidelityBlock block = sqrt_fidelity_sdp(rho, constraints, policy);
      const SdpSolution sol = solve(block.problem, sdp, policy);
      ++out.sdp_solves;
      out.sdp_iterations += sol.iterations;
      cb.iterations = sol.iterations;
      if (sol.status == SdpStatus::kOptimal) {
        const double root = std::clamp(-sol.objective_value, 0.0, 1.0);
        cb.delta = 1.0 - root * root;
        cb.sigma = detail::repair_to_boundary(
            c, extract_sigma(block, sol.x), l, k, w, w_eig, policy);
      } else if (sol.status == SdpStatus::kInfeasible) {
        cb.delta = kUnbounded;
      } else {
        throw NumericalError("optimal bound SDP for class " +
                             std::to_string(k) + " ended with status " +
                             to_string(sol.status));
      }
    }
    if (cb.delta < out.delta) {
      out.delta = cb.delta;
      out.argmin_class = k;
      out.sigma_star = cb.sigma;
    }
    out.per_class.push_back(std::move(cb));
  }
  return out;
}

RobustnessCheck check_epsilon_robust(const Classifier& c,
                                     const DensityMatrix& rho, std::size_t l,
                                     double eps, const SdpOptions& sdp,
                                     const NumericPolicy& policy) {
  check_epsilon(eps);
  const Classification cls = detail::require_label(c, rho, l, policy);
  const RealVector& p = cls.distribution.probabilities;
  RobustnessCheck out;
  auto offer = [&](DensityMatrix sigma, std::size_t k) {
    const double d = infidelity(rho, sigma);
    if (!out.witness || d < out.witness->distance) {
      out.witness = AdversarialExample{std::move(sigma), k, d};
    }
  };
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    if (k == l) {
      continue;
    }
    const ComplexMatrix w = class_gap_observable(c, l, k);
    const HermitianEigensystem w_eig = hermitian_eigensystem(w, policy);
    if (p(static_cast<Index>(l)) - p(static_cast<Index>(k)) <= policy.tie_tol) {
      out.phase_one_values.push_back(-1.0);
      offer(rho, k);
      continue;
    }
    if (w_eig.eigenvalues(0) > 0.0) {
      out.phase_one_values.push_back(kUnbounded);
      continue;
    }
    const std::vector<SdpConstraint> constraints{
        unit_trace(rho.dim()), {w, Relation::kLessEqual, 0.0}};
    FidelityBlock block = sqrt_fidelity_sdp(rho, constraints, policy);
    add_fidelity_floor(block, std::sqrt(1.0 - eps));
    const SdpSolution sol = find_feasible_point(block.problem, sdp, policy);
    ++out.sdp_solves;
    out.phase_one_values.push_back(sol.phase_one_value);
    if (sol.status == SdpStatus::kOptimal) {
      offer(detail::repair_to_boundary(c, extract_sigma(block, sol.x), l, k, w,
                                       w_eig, policy),
            k);
    } else if (sol.status != SdpStatus::kInfeasible) {
      throw NumericalError("feasibility SDP for class " + std::to_string(k) +
                           " ended with status " + to_string(sol.status));
    }
  }
  out.robust = !out.witness.has_value();
  return out;
}

double under_robust_accuracy(const Classifier& c, const LabeledDataset& d,
                             double eps, const NumericPolicy& policy) {
  check_epsilon(eps);
  if (d.entries.empty()) {
    throw InvalidArgument("under_robust_accuracy: empty dataset");
  }
  check_dataset(c, d);
  std::size_t r = 0;
  for (const DataEntry& e : d.entries) {
    if (!lemma_certifies(classify(c, e.state, policy).margin, eps)) {
      ++r;
    }
  }
  return 1.0 - static_cast<double>(r) / static_cast<double>(d.entries.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct StateWork {
  StateVerdict verdict;
  int sdp_solves = 0;
  int sdp_iterations = 0;
  double solve_seconds = 0.0;
};

StateWork verify_state(const Classifier& c, const DataEntry& entry,
                       std::size_t index, double eps,
                       const VerifyOptions& options) {
  StateWork work;
  StateVerdict& v = work.verdict;
  v.index = index;
  v.label = entry.label;
  const Classification cls = classify(c, entry.state, options.policy);
  v.predicted = cls.label;
  v.margin = cls.margin;
  v.tie = cls.tie;
  v.correctly_classified = cls.label == entry.label;
  if (!v.correctly_classified) {
    return work;
  }
  v.lemma_certifies = lemma_certifies(cls.margin, eps);
  if (v.lemma_certifies) {
    v.robust = true;
    return work;
  }
  v.bound_computed = true;
  const auto start = Clock::now();
  try {
    const auto* psi = std::get_if<PureState>(&entry.state);
    if (options.mode == VerifyMode::kPure && psi != nullptr) {
      PureBoundOptions pure = options.pure;
      pure.seed = options.seed + index;
      const PureBound pb =
          pure_state_optimal_bound(c, *psi, entry.label, pure, options.policy);
      if (pb.inconclusive) {
        v.failed = true;
        v.error = "pure-state search found no feasible point";
      } else {
        v.delta = pb.delta;
        v.robust = pb.delta > eps;
        if (!v.robust) {
          const DensityMatrix rho = pure_to_density(*psi);
          DensityMatrix sigma = pure_to_density(*pb.phi_star);
          const double d = infidelity(rho, sigma);
          v.adversarial =
              AdversarialExample{std::move(sigma), *pb.argmin_class, d};
        }
      }
    } else {
      const DensityMatrix rho = to_density(entry.state);
      const OptimalBound ob = compute_optimal_bound(c, rho, entry.label,
                                                    options.sdp, options.policy);
      work.sdp_solves = ob.sdp_solves;
      work.sdp_iterations = ob.sdp_iterations;
      v.delta = ob.delta;
      v.robust = ob.delta > eps;
      if (!v.robust) {
        const double d = infidelity(rho, *ob.sigma_star);
        v.adversarial = AdversarialExample{*ob.sigma_star, *ob.argmin_class, d};
      }
    }
  } catch (const std::exception& e) {
    v.failed = true;
    v.robust = false;
    v.adversarial.reset();
    v.error = e.what();
  }
  work.solve_seconds = seconds_since(start);
  return work;
}

}  // namespace

VerificationReport verify_dataset(const Classifier& c, const LabeledDataset& d,
                                  double eps, const VerifyOptions& options) {
  check_epsilon(eps);
  if (d.entries.empty()) {
    throw InvalidArgument("verify_dataset: empty dataset");
  }
  if (options.workers == 0) {
    throw InvalidArgument("verify_dataset: workers must be at least 1");
  }
  check_dataset(c, d);
  VerificationReport report;
  report.epsilon = eps;
  report.mode = options.mode;

  const auto ura_start = Clock::now();
  report.under_approx_robust_accuracy =
      under_robust_accuracy(c, d, eps, options.policy);
  report.timings.under_approximation = seconds_since(ura_start);

  const std::size_t n = d.entries.size();
  std::vector<StateWork> work(n);
  const auto ra_start = Clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      work[i] = verify_state(c, d.entries[i], i, eps, options);
    }
  };
  const std::size_t threads = std::min(options.workers, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  report.timings.robust_accuracy = seconds_since(ra_start);

  std::size_t correct = 0;
  report.verdicts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    StateWork& w = work[i];
    report.sdp_solves += w.sdp_solves;
    report.sdp_iterations += w.sdp_iterations;
    report.timings.bound_solves += w.solve_seconds;
    const StateVerdict& v = w.verdict;
    if (v.correctly_classified) {
      ++correct;
    } else {
      ++report.correctness_failures;
    }
    if (v.bound_computed) {
      ++report.bound_computations;
    }
    if (v.failed) {
      ++report.failed_states;
    }
    if (v.adversarial) {
      report.adversarial_sources.push_back(i);
    }
    report.verdicts.push_back(std::move(w.verdict));
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  const std::size_t denominator = n - report.failed_states;
  report.robust_accuracy =
      denominator == 0
          ? 0.0
          : 1.0 - static_cast<double>(report.adversarial_sources.size()) /
                      static_cast<double>(denominator);

  if (report.accuracy < kWellTrainedAccuracy) {
    std::ostringstream msg;
    msg << "classifier accuracy " << report.accuracy
        << " is below the well-trained threshold " << kWellTrainedAccuracy;
    report.warnings.push_back(msg.str());
  }
  if (report.failed_states > 0) {
    report.warnings.push_back(std::to_string(report.failed_states) +
                              " state(s) failed verification and are excluded "
                              "from the robust accuracy");
  }
  return report;
}

}  // namespace qrv
