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

#include <gtest/gtest.h>

#include "qrv/qstate.hpp"
#include "qrv/random.hpp"

namespace qrv {
namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(PureToDensity, BasisProjector) {
  const DensityMatrix rho = pure_to_density(PureState::basis(2, 0));
  EXPECT_LT(max_abs(rho.matrix() - diag2(1, 0)), 1e-15);
}

TEST(PureToDensity, PlusState) {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrix rho = pure_to_density(PureState::from_amplitudes(v));
  EXPECT_LT(max_abs(rho.matrix() - ComplexMatrix::Constant(2, 2, 0.5)), 1e-15);
}

TEST(PureToDensity, RankOneSpectrum) {
  Rng rng(7);
  const DensityMatrix rho = pure_to_density(random_pure_state(4, rng));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  const RealVector ev = hermitian_eigensystem(rho.matrix()).eigenvalues;
  EXPECT_NEAR(ev(3), 1.0, 1e-12);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(ev(i), 0.0, 1e-12);
  }
}

TEST(PureToDensity, RejectsUnnormalized) {
  ComplexVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState::from_amplitudes(v), InvalidArgument);
  EXPECT_THROW(pure_to_density(v), InvalidArgument);
}

TEST(PureState, RenormalizesSmallDrift) {
  ComplexVector v(2);
  v << 1.0 + 1e-8, 0.0;
  EXPECT_NEAR(PureState::from_amplitudes(v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(DensityMatrix, Invariants) {
  EXPECT_THROW(DensityMatrix::from_matrix(diag2(0.6, 0.6)), InvalidArgument);
  EXPECT_THROW(DensityMatrix::from_matrix(diag2(1.2, -0.2)), InvalidArgument);
  ComplexMatrix nh = diag2(0.5, 0.5);
  nh(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::from_matrix(nh), InvalidArgument);
  ComplexMatrix nan = diag2(0.5, 0.5);
  nan(0, 1) = std::nan("");
  EXPECT_THROW(DensityMatrix::from_matrix(nan), InvalidArgument);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(diag2(1.0 + 1e-9, -1e-9)));
}

TEST(DensityMatrix, DimensionCap) {
  NumericPolicy policy;
  policy.max_dim = 4;
  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::Identity(8, 8) / 8.0, policy),
               InvalidArgument);
}

TEST(DensityMatrix, NearestStateRepairsDrift) {
  ComplexMatrix m = diag2(1.0 + 1e-6, -1e-6);
  const DensityMatrix rho = DensityMatrix::nearest_state(m);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_GE(hermitian_eigensystem(rho.matrix()).eigenvalues(0), 0.0);
}

TEST(HermitianEigensystem, Examples) {
  const HermitianEigensystem id = hermitian_eigensystem(ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(id.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(id.eigenvalues(1), 1.0, 1e-15);

  const HermitianEigensystem d = hermitian_eigensystem(diag2(0.3, 0.7));
  EXPECT_NEAR(d.eigenvalues(0), 0.3, 1e-15);
  EXPECT_NEAR(d.eigenvalues(1), 0.7, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors(1, 1)), 1.0, 1e-15);

  const HermitianEigensystem x = hermitian_eigensystem(pauli::x());
  EXPECT_NEAR(x.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(x.eigenvalues(1), 1.0, 1e-15);
}

TEST(HermitianEigensystem, ReconstructsRandom) {
  Rng rng(11);
  for (Index n : {2, 5, 16}) {
    const ComplexMatrix g = random_ginibre(n, n, rng);
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    const HermitianEigensystem es = hermitian_eigensystem(h);
    const ComplexMatrix back = es.eigenvectors *
                               es.eigenvalues.cast<Complex>().asDiagonal() *
                               es.eigenvectors.adjoint();
    EXPECT_LT(max_abs(back - h), 1e-8);
    EXPECT_LT(max_abs(es.eigenvectors.adjoint() * es.eigenvectors -
                      ComplexMatrix::Identity(n, n)),
              1e-8);
  }
}

TEST(HermitianEigensystem, RejectsNonHermitian) {
  ComplexMatrix m = diag2(1, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eigensystem(m), InvalidArgument);
}

TEST(MatrixSqrtPsd, Examples) {
  EXPECT_LT(max_abs(matrix_sqrt_psd(diag2(4, 9)) - diag2(2, 3)), 1e-12);
  EXPECT_LT(max_abs(matrix_sqrt_psd(ComplexMatrix::Identity(3, 3)) -
                    ComplexMatrix::Identity(3, 3)),
            1e-12);
  const ComplexMatrix p = ComplexMatrix::Constant(2, 2, 0.5);
  EXPECT_LT(max_abs(matrix_sqrt_psd(p) - p), 1e-12);
}

TEST(MatrixSqrtPsd, ClampsAndRejects) {
  EXPECT_NO_THROW(matrix_sqrt_psd(diag2(1.0, -5e-9)));
  EXPECT_THROW(matrix_sqrt_psd(diag2(1.0, -1e-5)), InvalidArgument);
}

TEST(MatrixSqrtPsd, SquaresBackOnRandomPsd) {
  Rng rng(3);
  for (Index n = 2; n <= 16; ++n) {
    const ComplexMatrix g = random_ginibre(n, n, rng);
    const ComplexMatrix m = g * g.adjoint();
    const ComplexMatrix r = matrix_sqrt_psd(m);
    EXPECT_LT(max_abs(r * r - m), 1e-7) << "dim " << n;
    EXPECT_LT(max_abs(r - r.adjoint()), 1e-9);
  }
}

TEST(Fidelity, Examples) {
  const DensityMatrix zero = pure_to_density(PureState::basis(2, 0));
  const DensityMatrix one = pure_to_density(PureState::basis(2, 1));
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-12);
  EXPECT_NEAR(fidelity(zero, mixed), 0.5, 1e-12);
  EXPECT_NEAR(infidelity(zero, mixed), 0.5, 1e-12);
}

TEST(Fidelity, SelfAndSymmetry) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Index n = 2 + i % 4;
    const DensityMatrix a = random_density(n, rng);
    const DensityMatrix b = random_density(n, rng, 1 + i % 2);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-8);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-8);
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Fidelity, PureStateOverlap) {
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const PureState psi = random_pure_state(4, rng);
    const PureState phi = random_pure_state(4, rng);
    EXPECT_NEAR(fidelity(pure_to_density(psi), pure_to_density(phi)),
                overlap_squared(psi, phi), 1e-8);
  }
}

TEST(Fidelity, DimensionMismatch) {
  EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(4)),
               InvalidArgument);
  EXPECT_THROW(trace_distance(DensityMatrix::maximally_mixed(2),
                              DensityMatrix::maximally_mixed(4)),
               InvalidArgument);
}

TEST(TraceDistance, Examples) {
  const DensityMatrix zero = pure_to_density(PureState::basis(2, 0));
  const DensityMatrix one = pure_to_density(PureState::basis(2, 1));
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-12);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(zero, mixed), 0.5, 1e-12);
  EXPECT_NEAR(trace_distance(one, mixed), trace_distance(mixed, one), 1e-15);
}

TEST(TraceDistance, FuchsVanDeGraaf) {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const Index n = Index{2} << (i % 3);
    const DensityMatrix a = random_density(n, rng);
    const DensityMatrix b = random_density(n, rng, 1 + i % n);
    const double f = fidelity(a, b);
    const double t = trace_distance(a, b);
    EXPECT_LE(1.0 - std::sqrt(f), t + 1e-7);
    EXPECT_LE(t, std::sqrt(1.0 - f) + 1e-7);
  }
}

TEST(TensorProduct, Examples) {
  EXPECT_LT(max_abs(tensor_product(ComplexMatrix::Identity(2, 2),
                                   ComplexMatrix::Identity(2, 2)) -
                    ComplexMatrix::Identity(4, 4)),
            1e-15);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_LT(max_abs(tensor_product(diag2(1, 0), diag2(0, 1)) - expected), 1e-15);
  const ComplexMatrix xx = tensor_product(pauli::x(), pauli::x());
  const ComplexVector out = xx * PureState::basis(4, 0).amplitudes();
  EXPECT_LT((out - PureState::basis(4, 3).amplitudes()).norm(), 1e-15);
}

}  // namespace
}  // namespace qrv
