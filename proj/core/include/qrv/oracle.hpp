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

// Brute-force ground truth for small dimensions. Nothing here uses the SDP
// solver or the dual map; qubit class probabilities come from applying the
// Kraus operators to Pauli matrices directly.

#ifndef QRV_ORACLE_HPP_
#define QRV_ORACLE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qrv/verifier.hpp"

namespace qrv {

using BlochVector = std::array<double, 3>;

BlochVector bloch_vector(const DensityMatrix& rho);
DensityMatrix from_bloch(const BlochVector& r);

/// F for qubits: (1 + r.s + sqrt((1 - |r|^2)(1 - |s|^2))) / 2.
double qubit_fidelity(const BlochVector& r, const BlochVector& s);

/// Class probabilities of a qubit classifier as affine functions of the
/// Bloch vector: p_k(r) = offset_k + slope_k . r.
struct BlochModel {
  std::vector<double> offset;
  std::vector<BlochVector> slope;

  std::size_t num_classes() const { return offset.size(); }
  double probability(std::size_t k, const BlochVector& r) const;
};

/// Throws unless the classifier acts on a qubit.
BlochModel bloch_model(const Classifier& c);

struct OracleResult {
  /// Smallest distance to a state that is not strictly classified as l;
  /// kUnbounded when none was found.
  double delta_hat = kUnbounded;
  std::optional<DensityMatrix> sigma_hat;
  std::size_t evaluated = 0;
};

/// Search of the Bloch ball for the closest state that is not strictly
/// classified as l. Since sqrt F is concave and rho lies strictly inside
/// class l, the minimizer sits on one of the tie planes p_l = p_k. Each plane
/// is swept by `resolution`^2 directions from the foot point of rho, and
/// along each chord the (unimodal) distance is minimized by golden-section
/// search. Every evaluated state is feasible, so delta_hat is never below the
/// true bound; it converges to it as the resolution grows.
OracleResult bloch_grid_min_distance(const Classifier& c,
                                     const DensityMatrix& rho, std::size_t l,
                                     int resolution,
                                     const NumericPolicy& policy = {});

/// Sweep of pure qubit states on a (theta, phi) grid with spacing `step`
/// radians. Returns the closest pure state leaving class l.
OracleResult bloch_sphere_pure_sweep(const Classifier& c, const PureState& psi,
                                     std::size_t l, double step = 1e-3,
                                     const NumericPolicy& policy = {});

/// Random search in any dimension: sigma = (1 - t) rho + t tau with tau a
/// random pure state and t uniform in [0, min(1, 4 eps)], rejecting
/// D(rho, sigma) > eps. Returns the closest class-changing sample. Finding
/// nothing is not a robustness certificate.
std::optional<AdversarialExample> random_neighborhood_probe(
    const Classifier& c, const DensityMatrix& rho, std::size_t l, double eps,
    std::size_t samples, std::uint64_t seed, const NumericPolicy& policy = {});

/// Numerical maximization of x . sqrt(p) over unit vectors x >= 0 whose
/// largest-probability coordinate equals some other coordinate, by projected
/// ascent on each branch x_1 = x_j. p must be a probability vector.
double max_overlap_with_tie(const RealVector& p);

/// Numerical minimization of |y|^2 over y >= 0 with y . sqrt(p) = 1 and
/// y_1 = y_2 (coordinates sorted by decreasing p), by projected descent.
double min_norm_on_tie_plane(const RealVector& p);

struct OracleDisagreement {
  std::size_t index = 0;
  bool verifier_robust = false;
  bool oracle_robust = false;
  double delta = kUnbounded;
  double delta_hat = kUnbounded;
};

struct OracleCheck {
  std::size_t checked = 0;
  /// Verdicts that differ but lie within `band` of epsilon.
  std::size_t boundary_cases = 0;
  std::vector<OracleDisagreement> disagreements;
};

/// Re-derives every verdict of a report with the oracles. Qubit states are
/// compared against the Bloch-ball grid (or the pure sweep in pure mode);
/// other dimensions run the random probe, which can only expose a robust
/// verdict that has an adversarial example.
OracleCheck cross_check_report(const Classifier& c, const LabeledDataset& d,
                               const VerificationReport& report,
                               int resolution = 100, double band = 1e-4,
                               std::size_t probe_samples = 10000,
                               const NumericPolicy& policy = {});

}  // namespace qrv

#endif  // QRV_ORACLE_HPP_
