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

// Infeasible-start primal-dual path following with Nesterov-Todd scaling and
// Mehrotra predictor-corrector steps, on problems of the form
//
//   minimize   <C, X> + c_l . x
//   subject to <A_i, X> + (A_l x)_i = b_i,   X >= 0 (symmetric),  x >= 0,
//
// where x collects slack variables for inequality rows (and the phase-one
// shift). The dual is maximize b . y with Z = C - sum y_i A_i >= 0 and
// z = c_l - A_l^T y >= 0.

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrv/sdp.hpp"

namespace qrv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Farkas-ray tolerance for infeasibility certificates; a ray with this
// residual rules out feasible points of trace below ~1/kCertTol.
constexpr double kCertTol = 1e-9;

struct StandardForm {
  Index n = 0;
  RealMatrix c;
  std::vector<RealMatrix> a;
  RealVector b;
  RealMatrix alp;  // m x nl
  RealVector cl;   // nl
  Index shift_column = -1;
};

enum class IpmStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kMaxIterations,
  kNumericalFailure
};

struct IpmResult {
  IpmStatus status = IpmStatus::kNumericalFailure;
  RealMatrix x, z;
  RealVector y, xl, zl;
  int iterations = 0;
  double pobj = 0.0;
  double dobj = 0.0;
  std::vector<SdpIterate> trace;
};

double inner(const RealMatrix& a, const RealMatrix& b) {
  return a.cwiseProduct(b).sum();
}

void symmetrize(RealMatrix& m) { m = (m + m.transpose()).eval() * 0.5; }

RealVector apply_a(const StandardForm& f, const RealMatrix& x) {
  RealVector out(static_cast<Index>(f.a.size()));
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    out(static_cast<Index>(i)) = inner(f.a[i], x);
  }
  return out;
}

RealMatrix apply_at(const StandardForm& f, const RealVector& y) {
  RealMatrix out = RealMatrix::Zero(f.n, f.n);
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    out.noalias() += y(static_cast<Index>(i)) * f.a[i];
  }
  return out;
}

// Largest alpha with X + alpha dX >= 0, given X = L L^T.
double max_step(const RealMatrix& l, const RealMatrix& dx) {
  const auto tri = l.triangularView<Eigen::Lower>();
  RealMatrix t = tri.solve(dx);
  t = tri.solve(t.transpose().eval());
  symmetrize(t);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(t, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return lo >= 0.0 ? kInf : -1.0 / lo;
}

double max_step_lp(const RealVector& x, const RealVector& dx) {
  double step = kInf;
  for (Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) {
      step = std::min(step, -x(i) / dx(i));
    }
  }
  return step;
}

double max_abs(const RealVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_eigenvalue(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

struct Direction {
  RealMatrix dx, dz;
  RealVector dy, dxl, dzl;
};

IpmResult run_ipm(const StandardForm& f, const SdpOptions& opt) {
  const Index n = f.n;
  const Index m = f.b.size();
  const Index nl = f.cl.size();

  double xi = std::max(10.0, std::sqrt(static_cast<double>(n)));
  double eta = std::max({10.0, std::sqrt(static_cast<double>(n)),
                         f.c.norm(), max_abs(f.cl)});
  for (Index i = 0; i < m; ++i) {
    const double norm_a =
        std::sqrt(f.a[static_cast<std::size_t>(i)].squaredNorm() +
                  f.alp.row(i).squaredNorm());
    xi = std::max(xi, static_cast<double>(n) * (1.0 + std::abs(f.b(i))) /
                          (1.0 + norm_a));
    eta = std::max(eta, norm_a);
  }

  IpmResult res;
  RealMatrix x = xi * RealMatrix::Identity(n, n);
  RealMatrix z = eta * RealMatrix::Identity(n, n);
  RealVector xl = RealVector::Constant(nl, xi);
  RealVector zl = RealVector::Constant(nl, eta);
  RealVector y = RealVector::Zero(m);

  auto finish = [&](IpmStatus status, int iter) {
    res.status = status;
    res.x = x;
    res.z = z;
    res.y = y;
    res.xl = xl;
    res.zl = zl;
    res.iterations = iter;
    return res;
  };

  const double dof = static_cast<double>(n + nl);
  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    const RealVector rp = f.b - apply_a(f, x) - f.alp * xl;
    RealMatrix rd = f.c - apply_at(f, y) - z;
    symmetrize(rd);
    const RealVector rdl = f.cl - f.alp.transpose() * y - zl;
    const double gap = inner(x, z) + xl.dot(zl);
    const double mu = gap / dof;
    res.pobj = inner(f.c, x) + f.cl.dot(xl);
    res.dobj = f.b.dot(y);
    const double pinf = max_abs(rp);
    const double dinf = std::max(max_abs(rd), max_abs(rdl));
    if (opt.record_trace) {
      res.trace.push_back({iter, res.pobj, res.dobj, pinf, dinf, mu});
    }

    if (pinf <= opt.feas_tol && dinf <= opt.feas_tol && gap <= opt.gap_tol &&
        std::abs(res.pobj - res.dobj) <= opt.gap_tol) {
      return finish(IpmStatus::kOptimal, iter);
    }
    if (iter == opt.max_iterations) {
      break;
    }

    // Farkas rays: y with A^T y <= 0, A_l^T y <= 0, b.y = 1 proves primal
    // infeasibility; X with A(X) + A_l x = 0, <C,X> + c_l.x = -1 proves dual
    // infeasibility.
    if (iter > 0 && res.dobj > 0.0 && m > 0) {
      const RealVector yhat = y / res.dobj;
      const double lp_part =
          nl > 0 ? (f.alp.transpose() * yhat).maxCoeff() : -kInf;
      if (max_eigenvalue(apply_at(f, yhat)) <= kCertTol && lp_part <= kCertTol) {
        return finish(IpmStatus::kPrimalInfeasible, iter);
      }
    }
    if (iter > 0 && res.pobj < 0.0) {
      const double scale = -res.pobj;
      const double residual =
          m > 0 ? max_abs(RealVector(apply_a(f, x) + f.alp * xl)) / scale : 0.0;
      if (residual <= kCertTol) {
        return finish(IpmStatus::kDualInfeasible, iter);
      }
    }

    Eigen::LLT<RealMatrix> llx(x);
    Eigen::LLT<RealMatrix> llz(z);
    if (llx.info() != Eigen::Success || llz.info() != Eigen::Success) {
      return finish(IpmStatus::kNumericalFailure, iter);
    }
    const RealMatrix lx = llx.matrixL();
    const RealMatrix lz = llz.matrixL();

    // NT scaling point W with W Z W = X: for R^T L = U D V^T,
    // G = L V D^{-1/2}, W = G G^T and G^T Z G = G^{-1} X G^{-T} = D.
    Eigen::JacobiSVD<RealMatrix> svd(lz.transpose() * lx,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector lambda = svd.singularValues();
    if (lambda.minCoeff() <= 0.0 || !lambda.allFinite()) {
      return finish(IpmStatus::kNumericalFailure, iter);
    }
    const RealVector dhalf = lambda.cwiseSqrt();
    const RealMatrix g =
        lx * svd.matrixV() * dhalf.cwiseInverse().asDiagonal();
    const RealMatrix lx_inv = lx.triangularView<Eigen::Lower>().solve(
        RealMatrix::Identity(n, n));
    const RealMatrix g_inv =
        dhalf.asDiagonal() * svd.matrixV().transpose() * lx_inv;
    RealMatrix w = g * g.transpose();
    symmetrize(w);

    const RealVector d2 = xl.cwiseQuotient(zl);

    std::vector<RealMatrix> waw(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) {
      waw[static_cast<std::size_t>(j)] =
          w * f.a[static_cast<std::size_t>(j)] * w;
    }
    RealMatrix schur(m, m);
    for (Index i = 0; i < m; ++i) {
      for (Index j = i; j < m; ++j) {
        const double v = inner(f.a[static_cast<std::size_t>(i)],
                               waw[static_cast<std::size_t>(j)]);
        schur(i, j) = v;
        schur(j, i) = v;
      }
    }
    if (nl > 0) {
      schur.noalias() += f.alp * d2.asDiagonal() * f.alp.transpose();
    }

    Eigen::LLT<RealMatrix> chol;
    bool factored = false;
    double reg = 1e-12 * std::max(1.0, m > 0 ? schur.diagonal().maxCoeff() : 1.0);
    for (int attempt = 0; attempt <= opt.regularization_retries; ++attempt) {
      RealMatrix trial = schur;
      if (attempt > 0) {
        trial.diagonal().array() += reg;
        reg *= 100.0;
      }
      chol.compute(trial);
      if (chol.info() == Eigen::Success) {
        factored = true;
        break;
      }
    }
    if (!factored) {
      return finish(IpmStatus::kNumericalFailure, iter);
    }

    // A(W Rd W)_i = <W A_i W, Rd>.
    RealVector a_wrdw(m);
    for (Index i = 0; i < m; ++i) {
      a_wrdw(i) = inner(waw[static_cast<std::size_t>(i)], rd);
    }

    auto direction = [&](const RealMatrix& rc, const RealVector& rcl) {
      Direction d;
      RealVector rhs = rp - apply_a(f, rc) + a_wrdw;
      if (nl > 0) {
        rhs += f.alp * (d2.cwiseProduct(rdl) - rcl);
      }
      d.dy = m > 0 ? RealVector(chol.solve(rhs)) : RealVector();
      d.dz = rd - apply_at(f, d.dy);
      symmetrize(d.dz);
      d.dx = rc - w * d.dz * w;
      symmetrize(d.dx);
      d.dzl = rdl - f.alp.transpose() * d.dy;
      d.dxl = rcl - d2.cwiseProduct(d.dzl);
      return d;
    };
    auto primal_step = [&](const Direction& d) {
      return std::min(max_step(lx, d.dx), max_step_lp(xl, d.dxl));
    };
    auto dual_step = [&](const Direction& d) {
      return std::min(max_step(lz, d.dz), max_step_lp(zl, d.dzl));
    };

    // Predictor (affine scaling).
    const Direction aff = direction(-x, -xl);
    const double ap_aff = std::min(1.0, primal_step(aff));
    const double ad_aff = std::min(1.0, dual_step(aff));
    const double gap_aff =
        inner(x + ap_aff * aff.dx, z + ad_aff * aff.dz) +
        (xl + ap_aff * aff.dxl).dot(zl + ad_aff * aff.dzl);
    const double sigma =
        std::clamp(std::pow(std::max(gap_aff, 0.0) / gap, 3.0), 0.0, 1.0);

    // Corrector in the scaled space, where X and Z are both diag(lambda):
    // lambda o (dX~ + dZ~) = sigma mu I - lambda^2 - dX~_a o dZ~_a.
    const RealMatrix dxt = g_inv * aff.dx * g_inv.transpose();
    const RealMatrix dzt = g.transpose() * aff.dz * g;
    RealMatrix h = -0.5 * (dxt * dzt + dzt * dxt);
    h.diagonal().array() += sigma * mu;
    h.diagonal() -= lambda.cwiseProduct(lambda);
    RealMatrix s(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        s(i, j) = 2.0 * h(i, j) / (lambda(i) + lambda(j));
      }
    }
    symmetrize(s);
    const RealMatrix rc = g * s * g.transpose();
    RealVector rcl(nl);
    for (Index i = 0; i < nl; ++i) {
      rcl(i) = (sigma * mu - xl(i) * zl(i) - aff.dxl(i) * aff.dzl(i)) / zl(i);
    }
    const Direction dir = direction(rc, rcl);
    const double ap = std::min(1.0, opt.step_fraction * primal_step(dir));
    const double ad = std::min(1.0, opt.step_fraction * dual_step(dir));
    if (!(ap > 0.0) || !(ad > 0.0) || !dir.dy.allFinite() ||
        !dir.dx.allFinite() || !dir.dz.allFinite()) {
      return finish(IpmStatus::kNumericalFailure, iter);
    }

    x += ap * dir.dx;
    xl += ap * dir.dxl;
    y += ad * dir.dy;
    z += ad * dir.dz;
    zl += ad * dir.dzl;
    symmetrize(x);
    symmetrize(z);
  }
  return finish(IpmStatus::kMaxIterations, opt.max_iterations);
}

void validate_problem(const SdpProblem& p, const NumericPolicy& policy) {
  if (p.dim <= 0) {
    throw InvalidArgument("sdp: variable dimension must be positive");
  }
  policy.check_dim(static_cast<std::size_t>(p.dim), "sdp");
  auto check = [&](const ComplexMatrix& m, const std::string& what) {
    if (m.rows() != p.dim || m.cols() != p.dim) {
      throw InvalidArgument("sdp: " + what + " is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", expected " +
                            std::to_string(p.dim));
    }
    if (!all_finite(m)) {
      throw InvalidArgument("sdp: " + what + " has a non-finite entry");
    }
    if (hermitian_deviation(m) > policy.hermitian_tol) {
      throw InvalidArgument("sdp: " + what + " is not Hermitian");
    }
  };
  check(p.objective, "objective");
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    check(p.constraints[i].a, "constraint " + std::to_string(i));
    if (!std::isfinite(p.constraints[i].b)) {
      throw InvalidArgument("sdp: constraint " + std::to_string(i) +
                            " has a non-finite bound");
    }
  }
}

StandardForm standard_form(const RealSdpProblem& p, bool phase_one,
                           double big_m) {
  StandardForm f;
  f.n = p.dim;
  std::size_t rows = p.constraints.size() + (phase_one ? 1 : 0);
  Index slacks = 0;
  for (const auto& c : p.constraints) {
    if (c.relation == Relation::kLessEqual) {
      ++slacks;
    }
  }
  if (phase_one) {
    ++slacks;  // trace cap
  }
  const Index nl = slacks + (phase_one ? 1 : 0);
  f.alp = RealMatrix::Zero(static_cast<Index>(rows), nl);
  f.cl = RealVector::Zero(nl);
  f.b.resize(static_cast<Index>(rows));
  f.a.reserve(rows);
  if (phase_one) {
    f.shift_column = nl - 1;
    // The shift t enters embedded rows with weight 2, so its cost is 2 too.
    f.cl(f.shift_column) = 2.0;
  }
  f.c = phase_one ? RealMatrix::Zero(p.dim, p.dim) : p.objective;
  Index slack = 0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    const Index row = static_cast<Index>(i);
    f.a.push_back(c.a);
    f.b(row) = c.b;
    if (c.relation == Relation::kLessEqual) {
      f.alp(row, slack++) = 1.0;
      if (phase_one) {
        // <A, X> - s <= b with s = t - 1, embedded: <A^, X^> - 2t <= b^ - 2.
        f.alp(row, f.shift_column) = -2.0;
        f.b(row) -= 2.0;
      }
    }
  }
  if (phase_one) {
    const Index row = static_cast<Index>(p.constraints.size());
    f.a.push_back(RealMatrix::Identity(p.dim, p.dim));
    f.b(row) = 2.0 * big_m;
    f.alp(row, slack++) = 1.0;
  }
  return f;
}

// Fills the complex-space fields of an SdpSolution from an embedded result.
SdpSolution to_solution(const SdpProblem& problem, const IpmResult& r) {
  SdpSolution sol;
  sol.x = project_embedded(r.x);
  sol.dual_slack = project_embedded(r.z);
  sol.multipliers = r.y.head(static_cast<Index>(problem.constraints.size()));
  sol.objective_value = problem.objective.cwiseProduct(sol.x.transpose())
                            .sum()
                            .real();
  double dual = 0.0;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    dual += problem.constraints[i].b * sol.multipliers(static_cast<Index>(i));
  }
  sol.dual_objective = dual;
  sol.duality_gap = std::abs(sol.objective_value - sol.dual_objective);
  sol.max_constraint_violation = constraint_violation(problem, sol.x);
  sol.complementarity = 0.5 * (inner(r.x, r.z) + r.xl.dot(r.zl));
  sol.iterations = r.iterations;
  sol.trace = r.trace;
  for (auto& it : sol.trace) {
    // Report the trace in the units of the complex problem.
    it.primal_objective *= 0.5;
    it.dual_objective *= 0.5;
    it.primal_infeasibility *= 0.5;
    it.mu *= 0.5;
  }
  return sol;
}

}  // namespace

SdpSolution find_feasible_point(const SdpProblem& problem,
                                const SdpOptions& options,
                                const NumericPolicy& policy) {
  validate_problem(problem, policy);
  const StandardForm f =
      standard_form(embed_problem(problem), /*phase_one=*/true, options.big_m);
  const IpmResult r = run_ipm(f, options);
  SdpSolution sol = to_solution(problem, r);
  // The phase-one objective is t alone; report it instead of tr(C X).
  sol.objective_value = r.xl(f.shift_column) - 1.0;
  sol.phase_one_value = sol.objective_value;
  switch (r.status) {
    case IpmStatus::kOptimal:
      sol.status = sol.phase_one_value <= options.feas_tol
                       ? SdpStatus::kOptimal
                       : SdpStatus::kInfeasible;
      break;
    case IpmStatus::kPrimalInfeasible:
      sol.status = SdpStatus::kInfeasible;
      sol.phase_one_value = std::numeric_limits<double>::infinity();
      break;
    case IpmStatus::kDualInfeasible:
      // Phase one is bounded below by t >= 0; a dual ray means trouble.
      sol.status = SdpStatus::kNumericalFailure;
      break;
    case IpmStatus::kMaxIterations:
      sol.status = SdpStatus::kMaxIterations;
      break;
    case IpmStatus::kNumericalFailure:
      sol.status = SdpStatus::kNumericalFailure;
      break;
  }
  return sol;
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options,
                  const NumericPolicy& policy) {
  validate_problem(problem, policy);
  const StandardForm f =
      standard_form(embed_problem(problem), /*phase_one=*/false, options.big_m);
  const IpmResult r = run_ipm(f, options);
  SdpSolution sol = to_solution(problem, r);
  switch (r.status) {
    case IpmStatus::kOptimal:
      sol.status = sol.duality_gap <= options.gap_tol &&
                           sol.max_constraint_violation <= options.feas_tol
                       ? SdpStatus::kOptimal
                       : SdpStatus::kNumericalFailure;
      return sol;
    case IpmStatus::kPrimalInfeasible:
      sol.status = SdpStatus::kInfeasible;
      return sol;
    case IpmStatus::kDualInfeasible:
      sol.status = SdpStatus::kInfeasible;
      sol.dual_infeasible = true;
      return sol;
    case IpmStatus::kMaxIterations:
      sol.status = SdpStatus::kMaxIterations;
      break;
    case IpmStatus::kNumericalFailure:
      sol.status = SdpStatus::kNumericalFailure;
      break;
  }
  // No convergence: a positive phase-one optimum still proves infeasibility.
  const SdpSolution phase_one = find_feasible_point(problem, options, policy);
  if (phase_one.status == SdpStatus::kInfeasible) {
    sol.status = SdpStatus::kInfeasible;
    sol.phase_one_value = phase_one.phase_one_value;
  }
  return sol;
}

}  // namespace qrv
