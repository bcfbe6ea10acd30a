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

#include "qrv/classifier.hpp"
#include "qrv/generators.hpp"
#include "qrv/random.hpp"

namespace qrv {
namespace {

Classifier z_classifier() {
  return Classifier::create(identity_channel(2), Measurement::computational_basis(2),
                            {"zero", "one"});
}

DensityMatrix plus_state() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return pure_to_density(v);
}

TEST(Measurement, Invariants) {
  EXPECT_THROW(Measurement::create({ComplexMatrix::Identity(2, 2)}), InvalidArgument);
  EXPECT_THROW(Measurement::create({ComplexMatrix::Identity(2, 2),
                                    ComplexMatrix::Identity(2, 2)}),
               InvalidArgument);
  EXPECT_NO_THROW(Measurement::computational_basis(4));
}

TEST(Classifier, Invariants) {
  EXPECT_THROW(Classifier::create(identity_channel(4), Measurement::computational_basis(2),
                                  {"a", "b"}),
               InvalidArgument);
  EXPECT_THROW(Classifier::create(identity_channel(2), Measurement::computational_basis(2),
                                  {"a"}),
               InvalidArgument);
}

TEST(ClassProbabilities, Examples) {
  const Classifier c = z_classifier();
  const RealVector p0 =
      class_probabilities(c, pure_to_density(PureState::basis(2, 0))).probabilities;
  EXPECT_NEAR(p0(0), 1.0, 1e-15);
  EXPECT_NEAR(p0(1), 0.0, 1e-15);
  const RealVector pm = class_probabilities(c, DensityMatrix::maximally_mixed(2)).probabilities;
  EXPECT_NEAR(pm(0), 0.5, 1e-15);
  EXPECT_NEAR(pm(1), 0.5, 1e-15);
  const RealVector pp = class_probabilities(c, plus_state()).probabilities;
  EXPECT_NEAR(pp(0), 0.5, 1e-15);
  EXPECT_NEAR(pp(1), 0.5, 1e-15);
}

TEST(ClassProbabilities, DimensionMismatch) {
  EXPECT_THROW(class_probabilities(z_classifier(), DensityMatrix::maximally_mixed(4)),
               InvalidArgument);
}

TEST(ClassProbabilities, SumToOneAndPureRouteAgrees) {
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    const Index n = i % 2 == 0 ? 2 : 4;
    const Classifier c = random_classifier(n, static_cast<std::size_t>(2 + i % (n - 1)), rng);
    const PureState psi = random_pure_state(n, rng);
    const RealVector mixed = class_probabilities(c, pure_to_density(psi)).probabilities;
    const RealVector pure = class_probabilities(c, psi).probabilities;
    EXPECT_NEAR(mixed.sum(), 1.0, 1e-7);
    EXPECT_LT((mixed - pure).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Classify, Examples) {
  const Classifier c = z_classifier();
  const Classification zero = classify(c, pure_to_density(PureState::basis(2, 0)));
  EXPECT_EQ(zero.label, 0u);
  EXPECT_NEAR(zero.margin, 1.0, 1e-15);
  EXPECT_FALSE(zero.tie);

  const Classification mixed = classify(c, DensityMatrix::maximally_mixed(2));
  EXPECT_EQ(mixed.label, 0u);
  EXPECT_NEAR(mixed.margin, 0.0, 1e-15);
  EXPECT_TRUE(mixed.tie);
}

TEST(Classify, QubitCaseStudyAnchor) {
  const double theta = 0.4835;
  const double phi = 1.0;
  const Classifier c = Classifier::create(unitary_channel(rotation_y(theta)),
                                          Measurement::computational_basis(2), {"a", "b"});
  const Classification cls = classify(c, QuantumState(xz_state(phi)));
  const double p0 = std::pow(std::cos((phi + theta) / 2.0), 2);
  EXPECT_EQ(cls.label, 0u);
  EXPECT_NEAR(cls.distribution.probabilities(0), p0, 1e-12);
  EXPECT_NEAR(cls.margin, std::sqrt(p0) - std::sqrt(1.0 - p0), 1e-12);
}

TEST(Classify, LowestIndexWinsTies) {
  ClassDistribution d{RealVector(3)};
  d.probabilities << 0.2, 0.4, 0.4;
  const Classification cls = classify_distribution(d);
  EXPECT_EQ(cls.label, 1u);
  EXPECT_TRUE(cls.tie);
  EXPECT_FALSE(preserves_label(d, 1));
  EXPECT_FALSE(preserves_label(d, 2));
  d.probabilities << 0.2, 0.5, 0.3;
  EXPECT_TRUE(preserves_label(d, 1));
}

TEST(Accuracy, Examples) {
  const Classifier c = z_classifier();
  LabeledDataset d;
  d.entries.push_back({PureState::basis(2, 0), 0});
  EXPECT_DOUBLE_EQ(accuracy(c, d), 1.0);
  d.entries.push_back({PureState::basis(2, 1), 1});
  LabeledDataset flipped = d;
  for (DataEntry& e : flipped.entries) {
    e.label = 1 - e.label;
  }
  EXPECT_DOUBLE_EQ(accuracy(c, flipped), 0.0);
  EXPECT_THROW(accuracy(c, LabeledDataset{}), InvalidArgument);
}

TEST(Accuracy, QubitCaseStudyIsPerfect) {
  const QubitCaseStudy s = make_qubit_case_study();
  EXPECT_DOUBLE_EQ(accuracy(s.classifier, s.train), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(s.classifier, s.validation), 1.0);
}

TEST(CheckDataset, Errors) {
  const Classifier c = z_classifier();
  LabeledDataset bad_label;
  bad_label.entries.push_back({PureState::basis(2, 0), 2});
  EXPECT_THROW(check_dataset(c, bad_label), InvalidArgument);
  LabeledDataset bad_dim;
  bad_dim.entries.push_back({PureState::basis(4, 0), 0});
  EXPECT_THROW(check_dataset(c, bad_dim), InvalidArgument);
}

TEST(ClassGapObservable, SignMatchesProbabilities) {
  Rng rng(22);
  const Classifier c = random_classifier(4, 3, rng);
  const DensityMatrix rho = random_density(4, rng);
  const RealVector p = class_probabilities(c, rho).probabilities;
  const ComplexMatrix w = class_gap_observable(c, 0, 2);
  EXPECT_NEAR((w * rho.matrix()).trace().real(), p(0) - p(2), 1e-10);
}

}  // namespace
}  // namespace qrv
