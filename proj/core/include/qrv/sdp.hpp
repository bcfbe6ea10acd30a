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

// Small dense semidefinite programs over Hermitian matrices, solved by a
// primal-dual interior-point method on the real symmetric embedding.

#ifndef QRV_SDP_HPP_
#define QRV_SDP_HPP_

#include <span>
#include <string>
#include <vector>

#include "qrv/qstate.hpp"

namespace qrv {

using RealMatrix = Eigen::MatrixXd;

enum class Relation { kLessEqual, kEqual };

/// tr(A X) <relation> b.
struct SdpConstraint {
  ComplexMatrix a;
  Relation relation = Relation::kEqual;
  double b = 0.0;
};

/// minimize tr(C X) subject to the constraints and X >= 0 (n x n Hermitian).
struct SdpProblem {
  Index dim = 0;
  ComplexMatrix objective;
  std::vector<SdpConstraint> constraints;
};

enum class SdpStatus { kOptimal, kInfeasible, kMaxIterations, kNumericalFailure };

std::string to_string(SdpStatus status);

struct SdpOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  int max_iterations = 200;
  /// Trace cap tr(X) <= big_m used by the phase-one problem.
  double big_m = 1e4;
  double step_fraction = 0.98;
  int regularization_retries = 4;
  /// Keep per-iteration objective values in SdpSolution::trace.
  bool record_trace = false;
};

struct SdpIterate {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double mu = 0.0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;
  ComplexMatrix x;
  /// C - sum_i y_i A_i, projected back to Hermitian form.
  ComplexMatrix dual_slack;
  /// One multiplier per constraint; <= constraints have y <= 0.
  RealVector multipliers;
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double max_constraint_violation = 0.0;
  /// tr(X Z) for the dual slack Z.
  double complementarity = 0.0;
  int iterations = 0;
  /// Set with kInfeasible when the certificate found was for the dual
  /// (primal unbounded).
  bool dual_infeasible = false;
  /// Phase-one optimum s* (only set by find_feasible_point).
  double phase_one_value = 0.0;
  std::vector<SdpIterate> trace;
};

/// Throws InvalidArgument on malformed problems (shape, Hermiticity,
/// non-finite data, dimension cap). Solver trouble is reported in status.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {},
                  const NumericPolicy& policy = {});

/// Phase one: minimize s subject to tr(A_i X) - s <= b_i for each inequality,
/// the equalities, and tr(X) <= big_m. Status is kOptimal with a feasible X
/// when s* <= feas_tol, kInfeasible when s* > feas_tol.
SdpSolution find_feasible_point(const SdpProblem& problem,
                                const SdpOptions& options = {},
                                const NumericPolicy& policy = {});

/// Max violation of the problem's constraints at X (0 when feasible).
double constraint_violation(const SdpProblem& problem, const ComplexMatrix& x);

/// Real symmetric image [[Re H, -Im H], [Im H, Re H]] of a Hermitian H.
RealMatrix embed_hermitian(const ComplexMatrix& h);
/// Inverse of the embedding for any symmetric 2n x 2n matrix
/// [[P, Q], [R, S]]: ((P + S) + i (R - Q)) / 2. Preserves positivity.
ComplexMatrix project_embedded(const RealMatrix& m);

struct RealSdpConstraint {
  RealMatrix a;
  Relation relation = Relation::kEqual;
  double b = 0.0;
};

/// The embedded problem: every value tr(A X) doubles, so b doubles too.
struct RealSdpProblem {
  Index dim = 0;
  RealMatrix objective;
  std::vector<RealSdpConstraint> constraints;
};

RealSdpProblem embed_problem(const SdpProblem& problem);

// Fidelity block. The variable is Z = [[Lambda, Y], [Y^dagger, sigma]] where
// rho = V Lambda V^dagger is restricted to its support, so
// sqrt F(rho, sigma) = max Re tr(V Y) over Z >= 0.

struct FidelityBlock {
  SdpProblem problem;
  /// Columns span the support of rho.
  ComplexMatrix support;
  Index rank = 0;
  Index dim = 0;
};

/// Builds "minimize -Re tr(V Y)" with the block constraints fixed to rho's
/// spectrum and each sigma constraint tr(A sigma) <relation> b lifted into
/// the joint variable. The SDP optimum is -sqrt F(rho, sigma*).
FidelityBlock sqrt_fidelity_sdp(const DensityMatrix& rho,
                                std::span<const SdpConstraint> sigma_constraints,
                                const NumericPolicy& policy = {});

/// The block problem for two known states, both restricted to their
/// supports so that the problem is strictly feasible. The optimum is
/// -sqrt F(rho, sigma).
SdpProblem fidelity_pair_sdp(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const NumericPolicy& policy = {});

/// Adds Re tr(V Y) >= floor, i.e. F(rho, sigma) >= floor^2.
void add_fidelity_floor(FidelityBlock& block, double floor);

/// The sigma block of a joint solution.
ComplexMatrix extract_sigma(const FidelityBlock& block, const ComplexMatrix& z);

/// tr(sigma) = 1.
SdpConstraint unit_trace(Index dim);

/// n^2 real equalities pinning sigma to the given matrix (the trace is
/// implied).
std::vector<SdpConstraint> fix_sigma(const ComplexMatrix& sigma);

}  // namespace qrv

#endif  // QRV_SDP_HPP_
