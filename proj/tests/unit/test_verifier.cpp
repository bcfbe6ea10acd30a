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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qrv/random.hpp"
#include "qrv/verifier.hpp"

namespace qrv {
namespace {

Classifier z_classifier() {
  return Classifier::create(identity_channel(2), Measurement::computational_basis(2),
                            {"zero", "one"});
}

DensityMatrix diag_state(double p0) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = 1.0 - p0;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix ket0() { return pure_to_density(PureState::basis(2, 0)); }

struct Instance {
  Classifier c;
  DensityMatrix rho;
  std::size_t label;
};

// A random classifier and a state it classifies without a tie.
Instance random_instance(Index dim, Rng& rng, Index rank = 0) {
  for (;;) {
    Classifier c = random_classifier(dim, 2, rng);
    DensityMatrix rho = random_density(dim, rng, rank);
    const Classification cls = classify(c, rho);
    if (!cls.tie) {
      return {std::move(c), std::move(rho), cls.label};
    }
  }
}

TEST(MarginBound, Examples) {
  const Classifier c = z_classifier();
  EXPECT_TRUE(lemma_robust_bound(c, diag_state(1.0), 0.4));
  EXPECT_FALSE(lemma_robust_bound(c, diag_state(0.5), 0.01));
  EXPECT_TRUE(lemma_robust_bound(c, diag_state(0.9), 0.001));
  EXPECT_TRUE(lemma_certifies(1.0, 0.4));
  EXPECT_FALSE(lemma_certifies(0.0, 1e-6));
  EXPECT_THROW(lemma_robust_bound(c, diag_state(0.9), 1.0), InvalidArgument);
  EXPECT_THROW(lemma_robust_bound(c, diag_state(0.9), -0.1), InvalidArgument);
}

TEST(CheckEpsilonRobust, ZeroRadius) {
  const RobustnessCheck r = check_epsilon_robust(z_classifier(), ket0(), 0, 0.0);
  EXPECT_TRUE(r.robust);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(CheckEpsilonRobust, MixtureCrossesBoundary) {
  const Classifier c = z_classifier();
  const RobustnessCheck r = check_epsilon_robust(c, ket0(), 0, 0.6);
  EXPECT_FALSE(r.robust);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(is_adversarial(c, ket0(), 0, r.witness->sigma, 0.6));
  // Any feasible point will do; the closest one sits at 0.5.
  EXPECT_GE(r.witness->distance, 0.5 - 1e-6);
  EXPECT_LE(r.witness->distance, 0.6 + 1e-6);
}

TEST(CheckEpsilonRobust, RefusesMisclassified) {
  EXPECT_THROW(check_epsilon_robust(z_classifier(), ket0(), 1, 0.1), MisclassifiedInput);
  EXPECT_THROW(compute_optimal_bound(z_classifier(), ket0(), 1), MisclassifiedInput);
}

TEST(CheckEpsilonRobust, AgreesWithOptimalBound) {
  Rng rng(41);
  int compared = 0;
  for (int i = 0; i < 30; ++i) {
    const Instance in = random_instance(2, rng);
    const double delta = compute_optimal_bound(in.c, in.rho, in.label).delta;
    std::uniform_real_distribution<double> u(0.0, 0.99);
    const double eps = std::isinf(delta) ? u(rng) : std::min(0.99, delta * 2.0 * u(rng));
    if (std::abs(eps - delta) <= 1e-5) {
      continue;
    }
    ++compared;
    EXPECT_EQ(check_epsilon_robust(in.c, in.rho, in.label, eps).robust, eps < delta)
        << "instance " << i << " eps " << eps << " delta " << delta;
  }
  EXPECT_GE(compared, 25);
}

TEST(OptimalBound, ZMeasurementBasisState) {
  const OptimalBound b = compute_optimal_bound(z_classifier(), ket0(), 0);
  EXPECT_NEAR(b.delta, 0.5, 1e-6);
  ASSERT_TRUE(b.argmin_class.has_value());
  EXPECT_EQ(*b.argmin_class, 1u);
  ASSERT_TRUE(b.sigma_star.has_value());
  EXPECT_NEAR(infidelity(ket0(), *b.sigma_star), b.delta, 1e-5);
  EXPECT_FALSE(preserves_label(class_probabilities(z_classifier(), *b.sigma_star), 0));
}

TEST(OptimalBound, TieIsZero) {
  const OptimalBound b =
      compute_optimal_bound(z_classifier(), DensityMatrix::maximally_mixed(2), 0);
  EXPECT_EQ(b.delta, 0.0);
  EXPECT_EQ(b.sdp_solves, 0);
}

TEST(OptimalBound, UnreachableClassIsUnbounded) {
  // Class 1 has a zero effect, so no state ever reaches it.
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  const Classifier c = Classifier::create(
      identity_channel(2), Measurement::create({ComplexMatrix::Identity(2, 2), zero}),
      {"always", "never"});
  const OptimalBound b = compute_optimal_bound(c, ket0(), 0);
  EXPECT_TRUE(std::isinf(b.delta));
  EXPECT_TRUE(b.unbounded());
  EXPECT_FALSE(b.sigma_star.has_value());
}

TEST(OptimalBound, MarginTestConsistency) {
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    const Instance in = random_instance(i % 2 == 0 ? 2 : 4, rng);
    const double margin = classify(in.c, in.rho).margin;
    const OptimalBound b = compute_optimal_bound(in.c, in.rho, in.label);
    EXPECT_GE(b.delta, margin * margin / 2.0 - 1e-6) << "instance " << i;
    if (b.sigma_star) {
      EXPECT_NEAR(infidelity(in.rho, *b.sigma_star), b.delta, 1e-5);
      EXPECT_FALSE(preserves_label(class_probabilities(in.c, *b.sigma_star), in.label));
    }
  }
}

TEST(PureBound, TieIsZero) {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const PureState plus = PureState::from_amplitudes(v);
  const PureBound b = pure_state_optimal_bound(z_classifier(), plus, 0);
  EXPECT_EQ(b.delta, 0.0);
  ASSERT_TRUE(b.phi_star.has_value());
  EXPECT_NEAR(overlap_squared(*b.phi_star, plus), 1.0, 1e-12);
}

TEST(PureBound, BasisStateReachesEquator) {
  const Classifier c = z_classifier();
  const PureBound b = pure_state_optimal_bound(c, PureState::basis(2, 0), 0);
  EXPECT_NEAR(b.delta, 0.5, 1e-9);
  ASSERT_TRUE(b.phi_star.has_value());
  EXPECT_NEAR(overlap_squared(*b.phi_star, PureState::basis(2, 0)), 0.5, 1e-9);
  const RealVector p = class_probabilities(c, *b.phi_star).probabilities;
  EXPECT_NEAR(p(0), p(1), 1e-9);
}

TEST(PureBound, NotBelowMixedBound) {
  Rng rng(43);
  for (int i = 0; i < 30; ++i) {
    const Instance in = random_instance(2, rng, 1);
    const PureState psi = PureState::from_amplitudes(
        hermitian_eigensystem(in.rho.matrix()).eigenvectors.col(1));
    const double mixed = compute_optimal_bound(in.c, in.rho, in.label).delta;
    const PureBound pure = pure_state_optimal_bound(in.c, psi, in.label);
    EXPECT_FALSE(pure.inconclusive);
    EXPECT_GE(pure.delta, mixed - 1e-5) << "instance " << i;
  }
}

TEST(PureBound, RefusesMisclassified) {
  EXPECT_THROW(pure_state_optimal_bound(z_classifier(), PureState::basis(2, 0), 1),
               MisclassifiedInput);
}

LabeledDataset basis_dataset() {
  LabeledDataset d;
  for (int i = 0; i < 6; ++i) {
    d.entries.push_back({PureState::basis(2, i % 2), static_cast<std::size_t>(i % 2)});
  }
  return d;
}

TEST(VerifyDataset, MarginOneIsFullyRobust) {
  const VerificationReport r = verify_dataset(z_classifier(), basis_dataset(), 0.4);
  EXPECT_DOUBLE_EQ(r.robust_accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.under_approx_robust_accuracy, 1.0);
  EXPECT_TRUE(r.adversarial_sources.empty());
  EXPECT_EQ(r.sdp_solves, 0);
  EXPECT_EQ(r.bound_computations, 0u);
}

TEST(VerifyDataset, BoundaryTiesAreNotRobust) {
  LabeledDataset d;
  for (int i = 0; i < 4; ++i) {
    d.entries.push_back({DensityMatrix::maximally_mixed(2), 0});
  }
  const VerificationReport r = verify_dataset(z_classifier(), d, 0.01);
  EXPECT_DOUBLE_EQ(r.robust_accuracy, 0.0);
  EXPECT_DOUBLE_EQ(r.under_approx_robust_accuracy, 0.0);
  EXPECT_EQ(r.adversarial_sources.size(), 4u);
  for (const StateVerdict& v : r.verdicts) {
    EXPECT_EQ(v.delta, 0.0);
    ASSERT_TRUE(v.adversarial.has_value());
    EXPECT_EQ(v.adversarial->distance, 0.0);
  }
}

TEST(VerifyDataset, MisclassifiedAreCountedSeparately) {
  LabeledDataset d = basis_dataset();
  d.entries.push_back({PureState::basis(2, 0), 1});
  const VerificationReport r = verify_dataset(z_classifier(), d, 0.1);
  EXPECT_EQ(r.correctness_failures, 1u);
  EXPECT_FALSE(r.verdicts.back().correctly_classified);
  EXPECT_FALSE(r.verdicts.back().adversarial.has_value());
  EXPECT_DOUBLE_EQ(r.robust_accuracy, 1.0);
  ASSERT_FALSE(r.warnings.empty());
}

TEST(VerifyDataset, AdversarialExamplesAreValid) {
  Rng rng(44);
  LabeledDataset d;
  const Classifier c = random_classifier(2, 2, rng);
  while (d.entries.size() < 40) {
    DensityMatrix rho = random_density(2, rng);
    const Classification cls = classify(c, rho);
    if (!cls.tie) {
      d.entries.push_back({std::move(rho), cls.label});
    }
  }
  const double eps = 0.05;
  const VerificationReport r = verify_dataset(c, d, eps);
  EXPECT_LE(r.under_approx_robust_accuracy, r.robust_accuracy + 1e-12);
  EXPECT_NEAR(r.robust_accuracy,
              1.0 - static_cast<double>(r.adversarial_sources.size()) / d.entries.size(),
              1e-15);
  for (std::size_t i : r.adversarial_sources) {
    const StateVerdict& v = r.verdicts[i];
    EXPECT_FALSE(v.robust);
    EXPECT_FALSE(v.lemma_certifies);
    EXPECT_TRUE(is_adversarial(c, to_density(d.entries[i].state), v.label,
                               v.adversarial->sigma, eps));
  }
  for (const StateVerdict& v : r.verdicts) {
    if (v.lemma_certifies) {
      EXPECT_TRUE(v.robust);
    }
  }
}

TEST(VerifyDataset, WorkersDoNotChangeResults) {
  Rng rng(45);
  const Classifier c = random_classifier(4, 3, rng);
  LabeledDataset d;
  while (d.entries.size() < 24) {
    PureState psi = random_pure_state(4, rng);
    const Classification cls = classify(c, QuantumState(psi));
    if (!cls.tie) {
      d.entries.push_back({std::move(psi), cls.label});
    }
  }
  for (VerifyMode mode : {VerifyMode::kMixed, VerifyMode::kPure}) {
    VerifyOptions one;
    one.mode = mode;
    VerifyOptions many = one;
    many.workers = 4;
    const VerificationReport a = verify_dataset(c, d, 0.05, one);
    const VerificationReport b = verify_dataset(c, d, 0.05, many);
    ASSERT_EQ(a.verdicts.size(), b.verdicts.size());
    for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
      EXPECT_EQ(a.verdicts[i].robust, b.verdicts[i].robust);
      EXPECT_EQ(a.verdicts[i].delta, b.verdicts[i].delta);
    }
    EXPECT_EQ(a.robust_accuracy, b.robust_accuracy);
  }
}

TEST(VerifyDataset, Errors) {
  EXPECT_THROW(verify_dataset(z_classifier(), LabeledDataset{}, 0.1), InvalidArgument);
  EXPECT_THROW(verify_dataset(z_classifier(), basis_dataset(), 1.5), InvalidArgument);
  VerifyOptions o;
  o.workers = 0;
  EXPECT_THROW(verify_dataset(z_classifier(), basis_dataset(), 0.1, o), InvalidArgument);
}

TEST(UnderRobustAccuracy, Examples) {
  EXPECT_DOUBLE_EQ(under_robust_accuracy(z_classifier(), basis_dataset(), 0.4), 1.0);
  LabeledDataset ties;
  ties.entries.push_back({DensityMatrix::maximally_mixed(2), 0});
  EXPECT_DOUBLE_EQ(under_robust_accuracy(z_classifier(), ties, 1e-6), 0.0);
  EXPECT_THROW(under_robust_accuracy(z_classifier(), ties, 1.0), InvalidArgument);
}

TEST(IsAdversarial, Conjuncts) {
  const Classifier c = z_classifier();
  EXPECT_TRUE(is_adversarial(c, ket0(), 0, diag_state(0.5), 0.5));
  EXPECT_FALSE(is_adversarial(c, ket0(), 0, diag_state(0.5), 0.4));
  EXPECT_FALSE(is_adversarial(c, ket0(), 0, diag_state(0.6), 0.5));
  EXPECT_FALSE(is_adversarial(c, ket0(), 1, diag_state(0.5), 0.5));
}

TEST(Monotonicity, RobustnessInEpsilon) {
  Rng rng(46);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int i = 0; i < 20; ++i) {
    const Instance in = random_instance(2, rng);
    double e1 = u(rng);
    double e2 = u(rng);
    if (e1 > e2) {
      std::swap(e1, e2);
    }
    if (check_epsilon_robust(in.c, in.rho, in.label, e2).robust) {
      EXPECT_TRUE(check_epsilon_robust(in.c, in.rho, in.label, e1).robust);
    }
  }
}

}  // namespace
}  // namespace qrv
