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

// Pure-state optimal bound: for each competing class k,
//
//   maximize |<psi|phi>|^2  subject to  <phi|W|phi> <= 0,  |phi| = 1,
//
// with W the class-gap observable, by multi-start local search on the unit
// sphere. Steps follow the objective gradient projected onto the tangent
// space of the active constraint, then a Newton correction returns to
// <phi|W|phi> = 0.

#include <algorithm>
#include <cmath>
#include <optional>

#include "qrv/random.hpp"
#include "qrv/verifier.hpp"
#include "verifier_internal.hpp"

namespace qrv {

namespace {

constexpr double kBoundaryTol = 1e-13;

double real_inner(const ComplexVector& a, const ComplexVector& b) {
  return a.dot(b).real();
}

class QcqpSearch {
 public:
  QcqpSearch(const ComplexVector& psi, const ComplexMatrix& w)
      : psi_(psi), w_(w) {}

  double objective(const ComplexVector& phi) const {
    return std::norm(psi_.dot(phi));
  }
  double gap(const ComplexVector& phi) const {
    return phi.dot(w_ * phi).real();
  }

  // Pulls phi onto <phi|W|phi> <= 0 by Newton steps along the tangent
  // gradient of the gap.
  std::optional<ComplexVector> to_feasible(ComplexVector phi) const {
    phi.normalize();
    for (int it = 0; it < 100; ++it) {
      const double g = gap(phi);
      if (g <= kBoundaryTol) {
        return phi;
      }
      const ComplexVector grad = 2.0 * (w_ * phi - g * phi);
      const double norm2 = grad.squaredNorm();
      if (norm2 < 1e-24) {
        return std::nullopt;
      }
      // Overshoot slightly so the iterate lands on the feasible side.
      phi -= (g + 0.5 * kBoundaryTol) / norm2 * grad;
      phi.normalize();
    }
    return std::nullopt;
  }

  std::optional<ComplexVector> refine(const ComplexVector& start,
                                      int max_iterations) const {
    std::optional<ComplexVector> feasible = to_feasible(start);
    if (!feasible) {
      return std::nullopt;
    }
    ComplexVector phi = *feasible;
    double f = objective(phi);
    double step = 1.0;
    for (int it = 0; it < max_iterations; ++it) {
      const double g = gap(phi);
      const ComplexVector grad_f = 2.0 * (psi_ * psi_.dot(phi) - f * phi);
      ComplexVector dir = grad_f;
      if (g > -1e-10) {
        const ComplexVector grad_g = 2.0 * (w_ * phi - g * phi);
        const double gg = grad_g.squaredNorm();
        if (gg > 1e-24) {
          const double mu = real_inner(grad_g, grad_f) / gg;
          // A negative multiplier means the interior is uphill.
          if (mu > 0.0) {
            dir -= mu * grad_g;
          }
        }
      }
      const double slope = dir.squaredNorm();
      if (slope < 1e-22) {
        break;
      }
      bool moved = false;
      step = std::min(1.0, step * 2.0);
      while (step > 1e-14) {
        ComplexVector trial = phi + step * dir;
        trial.normalize();
        if (std::optional<ComplexVector> fixed = to_feasible(trial)) {
          const double ft = objective(*fixed);
          if (ft > f + 1e-4 * step * slope) {
            phi = *fixed;
            f = ft;
            moved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) {
        break;
      }
    }
    return phi;
  }

  // Maximizer of the Lagrangian relaxation min_mu lambda_max(P - mu W),
  // which is exact here because the joint numerical range of two Hermitian
  // matrices is convex. Bisects mu on the sign of the gap at the top
  // eigenvector, then blends the two bracketing eigenvectors onto the
  // boundary.
  std::optional<ComplexVector> lagrangian_candidate() const {
    const ComplexMatrix p = psi_ * psi_.adjoint();
    auto top = [&](double mu) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p - mu * w_);
      return ComplexVector(es.eigenvectors().col(es.eigenvectors().cols() - 1));
    };
    double lo = 0.0;
    double hi = 1.0;
    ComplexVector v_hi = top(hi);
    while (gap(v_hi) > 0.0) {
      hi *= 2.0;
      if (hi > 1e12) {
        return std::nullopt;
      }
      v_hi = top(hi);
    }
    ComplexVector v_lo = top(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      ComplexVector v = top(mid);
      if (gap(v) > 0.0) {
        lo = mid;
        v_lo = std::move(v);
      } else {
        hi = mid;
        v_hi = std::move(v);
      }
    }
    if (gap(v_lo) <= 0.0) {
      return v_lo;
    }
    const Complex overlap = v_hi.dot(v_lo);
    if (std::abs(overlap) > 0.0) {
      v_hi *= overlap / std::abs(overlap);
    }
    double a_lo = 0.0;
    double a_hi = 1.0;
    auto blend = [&](double a) {
      ComplexVector v = (1.0 - a) * v_lo + a * v_hi;
      return ComplexVector(v.normalized());
    };
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a_lo + a_hi);
      if (gap(blend(mid)) > 0.0) {
        a_lo = mid;
      } else {
        a_hi = mid;
      }
    }
    return blend(a_hi);
  }

 private:
  const ComplexVector& psi_;
  const ComplexMatrix& w_;
};

}  // namespace

PureBound pure_state_optimal_bound(const Classifier& c, const PureState& psi,
                                   std::size_t l,
                                   const PureBoundOptions& options,
                                   const NumericPolicy& policy) {
  const DensityMatrix rho = pure_to_density(psi);
  const Classification cls = detail::require_label(c, rho, l, policy);
  const RealVector& p = cls.distribution.probabilities;
  const ComplexVector& a = psi.amplitudes();
  const Index n = psi.dim();
  PureBound out;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    if (k == l) {
      continue;
    }
    const ComplexMatrix w = class_gap_observable(c, l, k);
    const HermitianEigensystem w_eig = hermitian_eigensystem(w, policy);
    double delta_k = kUnbounded;
    std::optional<ComplexVector> best;
    if (p(static_cast<Index>(l)) - p(static_cast<Index>(k)) <= policy.tie_tol) {
      delta_k = 0.0;
      best = a;
      ++out.converged_starts;
    } else if (w_eig.eigenvalues(0) > 0.0) {
      continue;
    } else {
      const QcqpSearch search(a, w);
      std::vector<ComplexVector> starts;
      if (options.lagrangian_start) {
        if (auto v = search.lagrangian_candidate()) {
          starts.push_back(*v);
        }
      }
      starts.push_back(a);
      for (Index i = 0; i < n; ++i) {
        starts.push_back(w_eig.eigenvectors.col(i));
      }
      Rng rng(options.seed * 1000003ULL + k);
      while (static_cast<int>(starts.size()) <
             options.starts + (options.lagrangian_start ? 1 : 0)) {
        starts.push_back(random_pure_state(n, rng).amplitudes());
      }
      double best_f = -1.0;
      for (const ComplexVector& s : starts) {
        std::optional<ComplexVector> phi =
            search.refine(s, options.max_iterations);
        if (!phi) {
          continue;
        }
        ++out.converged_starts;
        const double f = search.objective(*phi);
        if (f > best_f) {
          best_f = f;
          best = std::move(phi);
        }
      }
      if (!best) {
        out.inconclusive = true;
        continue;
      }
      delta_k = 1.0 - std::clamp(best_f, 0.0, 1.0);
    }
    if (delta_k < out.delta) {
      out.delta = delta_k;
      out.argmin_class = k;
      out.phi_star = PureState::from_amplitudes(best->normalized(), policy);
    }
  }
  return out;
}

}  // namespace qrv
