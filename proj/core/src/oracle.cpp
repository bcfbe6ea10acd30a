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

#include "qrv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qrv/random.hpp"

namespace qrv {

namespace {

double dot3(const BlochVector& a, const BlochVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void require_qubit(Index dim, const char* what) {
  if (dim != 2) {
    throw InvalidArgument(std::string(what) + ": the Bloch oracle needs dimension 2, got " +
                          std::to_string(dim));
  }
}

// True when some k != l reaches p_l within tie_tol.
bool leaves_class(const BlochModel& m, std::size_t l, const BlochVector& r,
                  double tie_tol) {
  const double pl = m.probability(l, r);
  for (std::size_t k = 0; k < m.num_classes(); ++k) {
    if (k != l && pl - m.probability(k, r) <= tie_tol) {
      return true;
    }
  }
  return false;
}

void require_label(const BlochModel& m, const BlochVector& r, std::size_t l,
                   const NumericPolicy& policy) {
  if (l >= m.num_classes()) {
    throw InvalidArgument("oracle: label out of range");
  }
  for (std::size_t k = 0; k < m.num_classes(); ++k) {
    if (m.probability(k, r) > m.probability(l, r) + policy.tie_tol) {
      throw MisclassifiedInput("oracle: state is not classified as " +
                               std::to_string(l));
    }
  }
}

}  // namespace

BlochVector bloch_vector(const DensityMatrix& rho) {
  require_qubit(rho.dim(), "bloch_vector");
  const ComplexMatrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix from_bloch(const BlochVector& r) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + r[2]);
  m(1, 1) = 0.5 * (1.0 - r[2]);
  m(0, 1) = Complex(0.5 * r[0], -0.5 * r[1]);
  m(1, 0) = Complex(0.5 * r[0], 0.5 * r[1]);
  return DensityMatrix::nearest_state(m);
}

double qubit_fidelity(const BlochVector& r, const BlochVector& s) {
  const double mixed = std::max(0.0, (1.0 - dot3(r, r)) * (1.0 - dot3(s, s)));
  return std::clamp(0.5 * (1.0 + dot3(r, s) + std::sqrt(mixed)), 0.0, 1.0);
}

double BlochModel::probability(std::size_t k, const BlochVector& r) const {
  return offset[k] + dot3(slope[k], r);
}

BlochModel bloch_model(const Classifier& c) {
  require_qubit(c.dim(), "bloch_model");
  const std::array<ComplexMatrix, 3> paulis{pauli::x(), pauli::y(), pauli::z()};
  const ComplexMatrix half_identity = 0.5 * pauli::identity();
  BlochModel m;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const ComplexMatrix& effect = c.measurement().effect(k);
    auto expect = [&](const ComplexMatrix& input) {
      const ComplexMatrix out = apply_to_matrix(c.channel(), input);
      return (effect * out).trace().real();
    };
    m.offset.push_back(expect(half_identity));
    BlochVector s{};
    for (int j = 0; j < 3; ++j) {
      s[static_cast<std::size_t>(j)] = expect(0.5 * paulis[static_cast<std::size_t>(j)]);
    }
    m.slope.push_back(s);
  }
  return m;
}

OracleResult bloch_grid_min_distance(const Classifier& c,
                                     const DensityMatrix& rho, std::size_t l,
                                     int resolution,
                                     const NumericPolicy& policy) {
  require_qubit(rho.dim(), "bloch_grid_min_distance");
  if (resolution < 2) {
    throw InvalidArgument("bloch_grid_min_distance: resolution must be >= 2");
  }
  const BlochModel model = bloch_model(c);
  const BlochVector r0 = bloch_vector(rho);
  require_label(model, r0, l, policy);
  OracleResult out;
  out.evaluated = 1;
  if (leaves_class(model, l, r0, policy.tie_tol)) {
    out.delta_hat = 0.0;
    out.sigma_hat = rho;
    return out;
  }
  BlochVector best_r{};
  auto consider = [&](const BlochVector& r) {
    ++out.evaluated;
    const double d = 1.0 - qubit_fidelity(r0, r);
    if (d < out.delta_hat && leaves_class(model, l, r, policy.tie_tol)) {
      out.delta_hat = d;
      best_r = r;
    }
    return d;
  };
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  const int directions = resolution * resolution;
  for (std::size_t k = 0; k < model.num_classes(); ++k) {
    if (k == l) {
      continue;
    }
    // Tie plane b + a.r = 0 between classes l and k.
    BlochVector a{};
    for (std::size_t i = 0; i < 3; ++i) {
      a[i] = model.slope[l][i] - model.slope[k][i];
    }
    const double b = model.offset[l] - model.offset[k];
    const double a2 = dot3(a, a);
    if (a2 < 1e-24 || b * b > a2) {
      continue;
    }
    const double shift = (b + dot3(a, r0)) / a2;
    const BlochVector f{r0[0] - shift * a[0], r0[1] - shift * a[1],
                        r0[2] - shift * a[2]};
    // Orthonormal basis of the plane.
    const double an = std::sqrt(a2);
    const BlochVector n{a[0] / an, a[1] / an, a[2] / an};
    BlochVector e1 = std::abs(n[0]) < 0.9 ? BlochVector{1.0, 0.0, 0.0}
                                          : BlochVector{0.0, 1.0, 0.0};
    const double proj = dot3(e1, n);
    for (std::size_t i = 0; i < 3; ++i) {
      e1[i] -= proj * n[i];
    }
    const double e1n = std::sqrt(dot3(e1, e1));
    for (double& x : e1) {
      x /= e1n;
    }
    const BlochVector e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                         n[0] * e1[1] - n[1] * e1[0]};
    const double f2 = dot3(f, f);
    if (f2 <= 1.0) {
      consider(f);
    }
    for (int j = 0; j < directions; ++j) {
      const double t = 2.0 * std::numbers::pi * j / directions;
      const BlochVector u{std::cos(t) * e1[0] + std::sin(t) * e2[0],
                          std::cos(t) * e1[1] + std::sin(t) * e2[1],
                          std::cos(t) * e1[2] + std::sin(t) * e2[2]};
      const double fu = dot3(f, u);
      const double disc = fu * fu - f2 + 1.0;
      if (disc < 0.0) {
        continue;
      }
      double lo = std::max(0.0, -fu - std::sqrt(disc));
      double hi = -fu + std::sqrt(disc);
      if (hi < lo) {
        continue;
      }
      auto point = [&](double s) {
        BlochVector r{f[0] + s * u[0], f[1] + s * u[1], f[2] + s * u[2]};
        const double norm = std::sqrt(dot3(r, r));
        if (norm > 1.0) {
          for (double& x : r) {
            x /= norm;
          }
        }
        return r;
      };
      // D is unimodal on the chord because sqrt(F) is concave.
      consider(point(lo));
      consider(point(hi));
      double x1 = hi - golden * (hi - lo);
      double x2 = lo + golden * (hi - lo);
      double d1 = consider(point(x1));
      double d2 = consider(point(x2));
      while (hi - lo > 1e-12) {
        if (d1 <= d2) {
          hi = x2;
          x2 = x1;
          d2 = d1;
          x1 = hi - golden * (hi - lo);
          d1 = consider(point(x1));
        } else {
          lo = x1;
          x1 = x2;
          d1 = d2;
          x2 = lo + golden * (hi - lo);
          d2 = consider(point(x2));
        }
      }
    }
  }
  if (out.delta_hat < kUnbounded) {
    out.sigma_hat = from_bloch(best_r);
  }
  return out;
}

OracleResult bloch_sphere_pure_sweep(const Classifier& c, const PureState& psi,
                                     std::size_t l, double step,
                                     const NumericPolicy& policy) {
  require_qubit(psi.dim(), "bloch_sphere_pure_sweep");
  if (!(step > 0.0)) {
    throw InvalidArgument("bloch_sphere_pure_sweep: step must be positive");
  }
  const BlochModel model = bloch_model(c);
  const BlochVector r0 = bloch_vector(pure_to_density(psi));
  require_label(model, r0, l, policy);
  OracleResult out;
  const int thetas = static_cast<int>(std::floor(std::numbers::pi / step)) + 1;
  const int phis = static_cast<int>(std::ceil(2.0 * std::numbers::pi / step));
  std::vector<double> cos_phi(static_cast<std::size_t>(phis));
  std::vector<double> sin_phi(static_cast<std::size_t>(phis));
  for (int j = 0; j < phis; ++j) {
    cos_phi[static_cast<std::size_t>(j)] = std::cos(j * step);
    sin_phi[static_cast<std::size_t>(j)] = std::sin(j * step);
  }
  BlochVector best{};
  for (int i = 0; i < thetas; ++i) {
    const double theta = std::min(i * step, std::numbers::pi);
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    for (int j = 0; j < phis; ++j) {
      const BlochVector r{st * cos_phi[static_cast<std::size_t>(j)],
                          st * sin_phi[static_cast<std::size_t>(j)], ct};
      ++out.evaluated;
      const double d = 0.5 * (1.0 - dot3(r0, r));
      if (d < out.delta_hat && leaves_class(model, l, r, policy.tie_tol)) {
        out.delta_hat = d;
        best = r;
      }
    }
  }
  if (out.delta_hat < kUnbounded) {
    out.sigma_hat = from_bloch(best);
  }
  return out;
}

std::optional<AdversarialExample> random_neighborhood_probe(
    const Classifier& c, const DensityMatrix& rho, std::size_t l, double eps,
    std::size_t samples, std::uint64_t seed, const NumericPolicy& policy) {
  check_epsilon(eps);
  Rng rng(seed);
  std::uniform_real_distribution<double> mix(0.0, std::min(1.0, 4.0 * eps));
  std::optional<AdversarialExample> best;
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = mix(rng);
    const PureState tau = random_pure_state(rho.dim(), rng);
    const ComplexVector& a = tau.amplitudes();
    DensityMatrix sigma = DensityMatrix::nearest_state(
        (1.0 - t) * rho.matrix() + t * (a * a.adjoint()), policy);
    const double d = infidelity(rho, sigma);
    if (d > eps) {
      continue;
    }
    const ClassDistribution dist = class_probabilities(c, sigma);
    if (preserves_label(dist, l, policy)) {
      continue;
    }
    if (best && d >= best->distance) {
      continue;
    }
    std::size_t target = l == 0 ? 1 : 0;
    for (std::size_t k = 0; k < c.num_classes(); ++k) {
      if (k != l && dist.probabilities(static_cast<Index>(k)) >
                        dist.probabilities(static_cast<Index>(target))) {
        target = k;
      }
    }
    best = AdversarialExample{std::move(sigma), target, d};
  }
  return best;
}

namespace {

RealVector sorted_roots(const RealVector& p) {
  if (p.size() < 2) {
    throw InvalidArgument("need a probability vector with at least 2 entries");
  }
  if (p.minCoeff() < 0.0 || std::abs(p.sum() - 1.0) > 1e-9) {
    throw InvalidArgument("not a probability vector");
  }
  std::vector<double> v(p.data(), p.data() + p.size());
  std::sort(v.begin(), v.end(), std::greater<>());
  RealVector q(p.size());
  for (Index i = 0; i < q.size(); ++i) {
    q(i) = std::sqrt(v[static_cast<std::size_t>(i)]);
  }
  return q;
}

}  // namespace

double max_overlap_with_tie(const RealVector& p) {
  const RealVector q = sorted_roots(p);
  const Index n = q.size();
  double best = 0.0;
  for (Index j = 1; j < n; ++j) {
    RealVector x = RealVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < 100000; ++it) {
      RealVector y = x + q;
      const double avg = 0.5 * (y(0) + y(j));
      y(0) = avg;
      y(j) = avg;
      y = y.cwiseMax(0.0);
      y.normalize();
      const double change = (y - x).norm();
      x = std::move(y);
      if (change < 1e-15) {
        break;
      }
    }
    best = std::max(best, x.dot(q));
  }
  return best;
}

double min_norm_on_tie_plane(const RealVector& p) {
  const RealVector q = sorted_roots(p);
  const Index n = q.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, n);
  a.row(0) = q.transpose();
  a(1, 0) = 1.0;
  a(1, 1) = -1.0;
  const Eigen::Vector2d rhs(1.0, 0.0);
  const Eigen::Matrix2d gram = a * a.transpose();
  const Eigen::LDLT<Eigen::Matrix2d> gram_solver(gram);
  RealVector y = RealVector::Constant(n, 1.0 / q.sum());
  for (int it = 0; it < 100000; ++it) {
    // Gradient step on |y|^2, then projection onto the constraint set.
    RealVector next = 0.5 * y;
    next -= a.transpose() * gram_solver.solve(a * next - rhs);
    next = next.cwiseMax(0.0);
    const double change = (next - y).norm();
    y = std::move(next);
    if (change < 1e-16) {
      break;
    }
  }
  return y.squaredNorm();
}

OracleCheck cross_check_report(const Classifier& c, const LabeledDataset& d,
                               const VerificationReport& report,
                               int resolution, double band,
                               std::size_t probe_samples,
                               const NumericPolicy& policy) {
  if (report.verdicts.size() != d.entries.size()) {
    throw InvalidArgument("cross_check_report: report does not match dataset");
  }
  OracleCheck out;
  const double eps = report.epsilon;
  for (const StateVerdict& v : report.verdicts) {
    if (!v.correctly_classified || v.failed) {
      continue;
    }
    const DataEntry& entry = d.entries[v.index];
    ++out.checked;
    OracleDisagreement dis;
    dis.index = v.index;
    dis.verifier_robust = v.robust;
    dis.delta = v.delta;
    if (c.dim() == 2) {
      const auto* psi = std::get_if<PureState>(&entry.state);
      const OracleResult o =
          report.mode == VerifyMode::kPure && psi != nullptr
              ? bloch_sphere_pure_sweep(c, *psi, v.label, 1e-3, policy)
              : bloch_grid_min_distance(c, to_density(entry.state), v.label,
                                        resolution, policy);
      dis.delta_hat = o.delta_hat;
      dis.oracle_robust = o.delta_hat > eps;
    } else {
      const auto found = random_neighborhood_probe(
          c, to_density(entry.state), v.label, eps, probe_samples,
          0x9e3779b97f4a7c15ULL ^ v.index, policy);
      dis.oracle_robust = !found.has_value();
      if (found) {
        dis.delta_hat = found->distance;
      }
      // Finding nothing proves nothing, so only a found example counts.
      if (dis.oracle_robust) {
        continue;
      }
    }
    if (dis.oracle_robust == dis.verifier_robust) {
      continue;
    }
    const double nearest = std::min(std::abs(dis.delta - eps),
                                    std::abs(dis.delta_hat - eps));
    if (nearest <= band) {
      ++out.boundary_cases;
    } else {
      out.disagreements.push_back(dis);
    }
  }
  return out;
}

}  // namespace qrv
