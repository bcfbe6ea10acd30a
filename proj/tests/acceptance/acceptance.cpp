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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrv/generators.hpp"
#include "qrv/io.hpp"
#include "qrv/oracle.hpp"
#include "qrv/random.hpp"
#include "qrv/sdp.hpp"
#include "qrv/verifier.hpp"

namespace {

using qrv::Classifier;
using qrv::DensityMatrix;
using qrv::Index;
using qrv::PureState;
using qrv::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Returns a state the classifier assigns without a tie.
DensityMatrix untied_state(const Classifier& c, Rng& rng, Index rank = 0) {
  for (;;) {
    DensityMatrix rho = qrv::random_density(c.dim(), rng, rank);
    if (!qrv::classify(c, rho).tie) {
      return rho;
    }
  }
}

Classifier random_trine_classifier(Rng& rng) {
  const double rotation = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double tilt = uniform(rng, 0.0, std::numbers::pi);
  std::vector<qrv::ComplexMatrix> operators;
  for (int k = 0; k < 3; ++k) {
    const double a = rotation + 2.0 * std::numbers::pi * k / 3.0;
    const qrv::BlochVector r{std::sin(a) * std::cos(tilt), std::sin(a) * std::sin(tilt),
                             std::cos(a)};
    operators.push_back(std::sqrt(2.0 / 3.0) * qrv::from_bloch(r).matrix());
  }
  return Classifier::create(qrv::random_channel(2, 2, rng),
                            qrv::Measurement::create(std::move(operators)), {"0", "1", "2"});
}

qrv::VerificationReport verify_one(const Classifier& c, const DensityMatrix& rho,
                                   std::size_t l, double eps) {
  qrv::LabeledDataset d;
  d.entries.push_back({rho, l});
  return qrv::verify_dataset(c, d, eps);
}

Outcome fidelity_dual_path() {
  Rng rng(1001);
  Stopwatch clock;
  double worst = 0.0;
  int failures = 0;
  for (Index dim : {2, 4, 8}) {
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix rho = qrv::random_density(dim, rng, 1 + i % dim);
      const DensityMatrix sigma = qrv::random_density(dim, rng, 1 + (i / dim) % dim);
      const qrv::SdpSolution sol = qrv::solve(qrv::fidelity_pair_sdp(rho, sigma));
      if (sol.status != qrv::SdpStatus::kOptimal) {
        ++failures;
        continue;
      }
      const double f_sdp = sol.objective_value * sol.objective_value;
      const double err = std::abs(f_sdp - qrv::fidelity(rho, sigma));
      worst = std::max(worst, err);
      failures += err > 1e-6 ? 1 : 0;
    }
  }
  const double t = clock.seconds();
  return {failures == 0 && t < 60.0,
          fmt("300 pairs at dims 2/4/8, max |F_sdp - F_eig| = %.2e, %d over 1e-6, %.1f s",
              worst, failures, t)};
}

Outcome fuchs_van_de_graaf() {
  Rng rng(1002);
  int violations = 0;
  double slack = 1.0;
  for (int i = 0; i < 200; ++i) {
    const Index dim = 2 + i % 7;
    const DensityMatrix rho = qrv::random_density(dim, rng, 1 + i % dim);
    const DensityMatrix sigma = qrv::random_density(dim, rng);
    const double f = qrv::fidelity(rho, sigma);
    const double t = qrv::trace_distance(rho, sigma);
    const double lower = 1.0 - std::sqrt(f);
    const double upper = std::sqrt(1.0 - f);
    violations += (t < lower - 1e-7 || t > upper + 1e-7) ? 1 : 0;
    slack = std::min({slack, t - lower, upper - t});
  }
  return {violations == 0,
          fmt("200 pairs, %d violations, tightest slack %.2e", violations, slack)};
}

Outcome margin_bound_soundness() {
  Rng rng(1003);
  int applicable = 0;
  int violations = 0;
  for (int i = 0; i < 100; ++i) {
    const Index dim = i % 2 == 0 ? 2 : 4;
    const std::size_t classes = dim == 2 ? 2 : 2 + static_cast<std::size_t>(i % 3);
    const Classifier c = qrv::random_classifier(dim, classes, rng);
    const DensityMatrix rho = untied_state(c, rng, 1 + i % dim);
    const qrv::Classification cls = qrv::classify(c, rho);
    // Radii on both sides of margin^2 / 2, where the margin test switches.
    const double eps = uniform(rng, 0.0, 0.75) * cls.margin * cls.margin;
    if (!qrv::lemma_certifies(cls.margin, eps)) {
      continue;
    }
    ++applicable;
    const double delta = qrv::compute_optimal_bound(c, rho, cls.label).delta;
    violations += delta < eps - 1e-6 ? 1 : 0;
  }
  return {violations == 0 && applicable > 0,
          fmt("100 instances, %d certified by the margin test, %d with delta < eps - 1e-6",
              applicable, violations)};
}

Outcome tie_overlap_closed_form() {
  Rng rng(1004);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Index n = 2 + i % 5;
    qrv::RealVector p(n);
    for (Index k = 0; k < n; ++k) {
      p(k) = -std::log(uniform(rng, 1e-12, 1.0));
    }
    p /= p.sum();
    std::vector<double> sorted(p.data(), p.data() + n);
    std::sort(sorted.rbegin(), sorted.rend());
    const double gap = std::sqrt(sorted[0]) - std::sqrt(sorted[1]);
    const double closed = std::sqrt(1.0 - gap * gap / 2.0);
    worst = std::max(worst, std::abs(qrv::max_overlap_with_tie(p) - closed));
  }
  return {worst <= 1e-5, fmt("50 vectors of length 2-6, max error %.2e", worst)};
}

Outcome oracle_equivalence() {
  Rng rng(1005);
  Stopwatch clock;
  int disagreements = 0;
  int in_band = 0;
  int below_bound = 0;
  int robust = 0;
  for (int i = 0; i < 50; ++i) {
    const Classifier c =
        i % 3 == 2 ? random_trine_classifier(rng) : qrv::random_classifier(2, 2, rng);
    const DensityMatrix rho = untied_state(c, rng, 1 + i % 2);
    const std::size_t l = qrv::classify(c, rho).label;
    const double eps = log_uniform(rng, 1e-3, 0.5);
    const qrv::VerificationReport r = verify_one(c, rho, l, eps);
    const qrv::StateVerdict& v = r.verdicts.front();
    const qrv::OracleResult o = qrv::bloch_grid_min_distance(c, rho, l, 100);
    robust += v.robust ? 1 : 0;
    if (v.bound_computed && !v.failed) {
      below_bound += o.delta_hat < v.delta - 1e-6 ? 1 : 0;
    }
    if (v.failed || v.robust != (o.delta_hat > eps)) {
      if (!v.failed && std::abs(v.delta - eps) <= 1e-4) {
        ++in_band;
      } else {
        ++disagreements;
      }
    }
  }
  const double t = clock.seconds();
  return {disagreements == 0 && below_bound == 0 && t < 600.0,
          fmt("50 instances (%d robust), %d disagreements outside the band, %d inside, "
              "%d oracle values below delta, %.1f s",
              robust, disagreements, in_band, below_bound, t)};
}

bool conjuncts_hold(const Classifier& c, const DensityMatrix& rho, std::size_t l,
                    const DensityMatrix& sigma, double eps) {
  const qrv::Classification src = qrv::classify(c, rho);
  const qrv::Classification adv = qrv::classify(c, sigma);
  const bool source_ok = src.label == l && !src.tie;
  const bool changed = adv.label != l || adv.tie;
  return source_ok && changed && qrv::infidelity(rho, sigma) <= eps + 1e-5;
}

Outcome adversarial_validity() {
  Rng rng(1006);
  std::size_t extracted = 0;
  std::size_t invalid = 0;
  auto audit = [&](const Classifier& c, const qrv::LabeledDataset& d, double eps,
                   qrv::VerifyMode mode) {
    qrv::VerifyOptions options;
    options.mode = mode;
    const qrv::VerificationReport r = qrv::verify_dataset(c, d, eps, options);
    for (std::size_t idx : r.adversarial_sources) {
      const qrv::StateVerdict& v = r.verdicts[idx];
      const DensityMatrix rho = qrv::to_density(d.entries[v.index].state);
      ++extracted;
      invalid += conjuncts_hold(c, rho, v.label, v.adversarial->sigma, eps) ? 0 : 1;
    }
  };
  const qrv::QubitCaseStudy study = qrv::make_qubit_case_study();
  for (double eps : {0.001, 0.004}) {
    audit(study.classifier, study.train, eps, qrv::VerifyMode::kMixed);
    audit(study.classifier, study.train, eps, qrv::VerifyMode::kPure);
  }
  for (Index dim : {2, 4}) {
    const Classifier c = qrv::random_classifier(dim, 2, rng);
    qrv::LabeledDataset d;
    for (int i = 0; i < 40; ++i) {
      DensityMatrix rho = untied_state(c, rng, 1 + i % dim);
      const std::size_t l = qrv::classify(c, rho).label;
      d.entries.push_back({std::move(rho), l});
    }
    for (double eps : {0.01, 0.05, 0.2}) {
      audit(c, d, eps, qrv::VerifyMode::kMixed);
    }
  }
  return {invalid == 0 && extracted > 0,
          fmt("%zu extracted examples, %zu failing a conjunct", extracted, invalid)};
}

Outcome case_study_table() {
  const qrv::QubitCaseStudy study = qrv::make_qubit_case_study();
  const std::vector<double> radii{0.001, 0.002, 0.003, 0.004};
  std::vector<qrv::VerificationReport> reports;
  for (double eps : radii) {
    reports.push_back(qrv::verify_dataset(study.classifier, study.train, eps));
  }
  bool ok = true;
  std::string table = "\n      eps      URA%      RA%    t_URA(s)   t_RA(s)  solves";
  for (std::size_t j = 0; j < reports.size(); ++j) {
    const qrv::VerificationReport& r = reports[j];
    table += fmt("\n      %.3f  %7.2f  %7.2f  %9.2e  %9.2e  %6d", radii[j],
                 100.0 * r.under_approx_robust_accuracy, 100.0 * r.robust_accuracy,
                 r.timings.under_approximation, r.timings.robust_accuracy, r.sdp_solves);
    ok = ok && r.under_approx_robust_accuracy <= r.robust_accuracy;
    if (j > 0) {
      ok = ok && r.robust_accuracy <= reports[j - 1].robust_accuracy &&
           r.under_approx_robust_accuracy <= reports[j - 1].under_approx_robust_accuracy;
    }
    if (r.sdp_solves > 0) {
      ok = ok && 10.0 * r.timings.under_approximation <= r.timings.robust_accuracy;
    }
  }
  return {ok, fmt("800 states, accuracy %.2f%%", 100.0 * reports.front().accuracy) + table};
}

Outcome pure_vs_mixed() {
  Rng rng(1008);
  int order_violations = 0;
  double worst_sweep = 0.0;
  for (int i = 0; i < 30; ++i) {
    const Classifier c = qrv::random_classifier(2, 2, rng);
    PureState psi = qrv::random_pure_state(2, rng);
    while (qrv::classify(c, qrv::QuantumState(psi)).tie) {
      psi = qrv::random_pure_state(2, rng);
    }
    const std::size_t l = qrv::classify(c, qrv::QuantumState(psi)).label;
    qrv::PureBoundOptions options;
    options.seed = static_cast<std::uint64_t>(i);
    const double pure = qrv::pure_state_optimal_bound(c, psi, l, options).delta;
    const double mixed = qrv::compute_optimal_bound(c, qrv::pure_to_density(psi), l).delta;
    order_violations += pure < mixed - 1e-5 ? 1 : 0;
    const double sweep = qrv::bloch_sphere_pure_sweep(c, psi, l).delta_hat;
    if (std::isfinite(pure) || std::isfinite(sweep)) {
      worst_sweep = std::max(worst_sweep, std::abs(pure - sweep));
    }
  }
  return {order_violations == 0 && worst_sweep <= 2e-3,
          fmt("30 instances, %d with delta_pure < delta_mixed - 1e-5, "
              "max |delta_pure - sweep| = %.2e",
              order_violations, worst_sweep)};
}

Outcome monotonicity() {
  Rng rng(1009);
  int channel_violations = 0;
  for (int i = 0; i < 100; ++i) {
    const Index dim = 2 + i % 4;
    const qrv::KrausChannel ch = qrv::random_channel(dim, 1 + i % 3, rng);
    const DensityMatrix rho = qrv::random_density(dim, rng, 1 + i % dim);
    const DensityMatrix sigma = qrv::random_density(dim, rng);
    const double before = qrv::fidelity(rho, sigma);
    const double after = qrv::fidelity(qrv::apply(ch, rho), qrv::apply(ch, sigma));
    channel_violations += after < before - 1e-7 ? 1 : 0;
  }
  int verdict_violations = 0;
  for (int i = 0; i < 50; ++i) {
    const Index dim = i % 2 == 0 ? 2 : 4;
    const Classifier c = qrv::random_classifier(dim, 2, rng);
    const DensityMatrix rho = untied_state(c, rng);
    const std::size_t l = qrv::classify(c, rho).label;
    double e1 = log_uniform(rng, 1e-4, 0.5);
    double e2 = log_uniform(rng, 1e-4, 0.5);
    if (e1 > e2) {
      std::swap(e1, e2);
    }
    const bool robust1 = verify_one(c, rho, l, e1).verdicts.front().robust;
    const bool robust2 = verify_one(c, rho, l, e2).verdicts.front().robust;
    const bool check1 = qrv::check_epsilon_robust(c, rho, l, e1).robust;
    const bool check2 = qrv::check_epsilon_robust(c, rho, l, e2).robust;
    verdict_violations += (robust2 && !robust1) || (check2 && !check1) ? 1 : 0;
  }
  return {channel_violations == 0 && verdict_violations == 0,
          fmt("100 channel instances with %d violations, 50 radius pairs with %d",
              channel_violations, verdict_violations)};
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "qrv_acceptance_determinism";
  std::filesystem::create_directories(dir);
  qrv::QubitCaseOptions gen;
  gen.seed = 20;
  gen.n_train = 200;
  gen.n_val = 50;
  std::vector<std::string> files;
  for (int run = 0; run < 2; ++run) {
    const qrv::QubitCaseStudy s = qrv::make_qubit_case_study(gen);
    const std::string tag = std::to_string(run);
    qrv::write_json_file(dir / ("train" + tag + ".json"), qrv::dataset_to_json(s.train));
    qrv::write_json_file(dir / ("val" + tag + ".json"), qrv::dataset_to_json(s.validation));
    for (qrv::VerifyMode mode : {qrv::VerifyMode::kMixed, qrv::VerifyMode::kPure}) {
      qrv::VerifyOptions options;
      options.mode = mode;
      options.seed = 7;
      options.workers = run == 0 ? 1 : 3;
      const qrv::VerificationReport r = qrv::verify_dataset(s.classifier, s.train, 0.003, options);
      const std::string name = "report_" + qrv::to_string(mode) + tag;
      qrv::write_json_file(dir / (name + ".json"), qrv::report_to_json(r, "adv.json", false));
      qrv::write_json_file(dir / (name + ".adv.json"), qrv::adversarial_to_json(r));
    }
  }
  int compared = 0;
  int differing = 0;
  for (const char* stem : {"train", "val", "report_mixed", "report_pure"}) {
    for (const char* ext : {".json", ".adv.json"}) {
      const std::filesystem::path a = dir / (std::string(stem) + "0" + ext);
      if (!std::filesystem::exists(a)) {
        continue;
      }
      const std::filesystem::path b = dir / (std::string(stem) + "1" + ext);
      ++compared;
      differing += file_bytes(a) != file_bytes(b) ? 1 : 0;
    }
  }
  std::filesystem::remove_all(dir);
  return {differing == 0 && compared == 6,
          fmt("%d file pairs from two seeded runs, %d differing", compared, differing)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"fidelity: eigendecomposition vs SDP", fidelity_dual_path},
      {"trace distance vs fidelity bounds", fuchs_van_de_graaf},
      {"margin test soundness", margin_bound_soundness},
      {"tie-overlap closed form", tie_overlap_closed_form},
      {"qubit verdicts vs Bloch oracle", oracle_equivalence},
      {"adversarial example validity", adversarial_validity},
      {"qubit case study table structure", case_study_table},
      {"pure vs mixed bounds", pure_vs_mixed},
      {"monotonicity", monotonicity},
      {"seeded determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
