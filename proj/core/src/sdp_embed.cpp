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

#include <algorithm>
#include <cmath>
#include <string>

#include "qrv/sdp.hpp"

namespace qrv {

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal:
      return "optimal";
    case SdpStatus::kInfeasible:
      return "infeasible";
    case SdpStatus::kMaxIterations:
      return "max_iterations";
    case SdpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

RealMatrix embed_hermitian(const ComplexMatrix& h) {
  const Index n = h.rows();
  RealMatrix out(2 * n, 2 * n);
  const RealMatrix re = h.real();
  const RealMatrix im = h.imag();
  out.topLeftCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  out.bottomRightCorner(n, n) = re;
  return out;
}

ComplexMatrix project_embedded(const RealMatrix& m) {
  const Index n = m.rows() / 2;
  const RealMatrix p = m.topLeftCorner(n, n);
  const RealMatrix q = m.topRightCorner(n, n);
  const RealMatrix r = m.bottomLeftCorner(n, n);
  const RealMatrix s = m.bottomRightCorner(n, n);
  ComplexMatrix out(n, n);
  out.real() = (p + s) * 0.5;
  out.imag() = (r - q) * 0.5;
  return (out + out.adjoint()) * 0.5;
}

RealSdpProblem embed_problem(const SdpProblem& problem) {
  RealSdpProblem out;
  out.dim = 2 * problem.dim;
  out.objective = embed_hermitian(problem.objective);
  out.constraints.reserve(problem.constraints.size());
  for (const SdpConstraint& c : problem.constraints) {
    out.constraints.push_back({embed_hermitian(c.a), c.relation, 2.0 * c.b});
  }
  return out;
}

double constraint_violation(const SdpProblem& problem, const ComplexMatrix& x) {
  double worst = 0.0;
  for (const SdpConstraint& c : problem.constraints) {
    const double value = c.a.cwiseProduct(x.transpose()).sum().real();
    const double v = c.relation == Relation::kEqual
                         ? std::abs(value - c.b)
                         : std::max(0.0, value - c.b);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace qrv
