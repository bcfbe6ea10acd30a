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

// Input generators: the single-qubit region classifier with its sampled
// dataset, and amplitude encoding of grayscale images.

#ifndef QRV_GENERATORS_HPP_
#define QRV_GENERATORS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "qrv/classifier.hpp"

namespace qrv {

/// R_y(theta) = exp(-i sigma_y theta / 2).
ComplexMatrix rotation_y(double theta);

/// cos(phi/2)|0> + sin(phi/2)|1>: the X-Z plane state at polar angle phi.
PureState xz_state(double phi);

struct QubitCaseOptions {
  double theta_a = 1.0;
  double theta_b = 1.23;
  double theta_star = 0.4835;
  std::size_t n_train = 800;
  std::size_t n_val = 200;
  /// Standard deviation of the polar-angle perturbation, in radians.
  double noise_std = 0.15;
  std::uint64_t seed = 0;
};

struct QubitCaseStudy {
  Classifier classifier;
  LabeledDataset train;
  LabeledDataset validation;
};

/// Unitary channel R_y(theta_star) and measurement {|0><0|, |1><1|} with
/// labels "a" and "b". Each dataset alternates a and b samples, drawn as
/// xz_state(anchor + N(0, noise_std)) and redrawn until the classifier
/// assigns the anchor's class; after 1000 rejections the anchor itself is
/// used. Anchors must lie on opposite sides of the decision boundary
/// phi = pi/2 - theta_star.
QubitCaseStudy make_qubit_case_study(const QubitCaseOptions& options = {});

struct GrayImage {
  int width = 0;
  int height = 0;
  /// Row-major.
  std::vector<double> pixels;
};

/// Plain (P2) portable graymap.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::filesystem::path& path);

/// Each output pixel is the mean of the source area it covers, with
/// fractional overlaps weighted by their area.
GrayImage downscale_area(const GrayImage& image, int width, int height);

/// sum_i x_i / |x| |i>. Throws when all values are zero or any is negative.
PureState amplitude_encode(std::span<const double> values,
                           const NumericPolicy& policy = {});

/// Downscales to 16 x 16 when needed and encodes into 8 qubits.
PureState encode_image(const GrayImage& image, const NumericPolicy& policy = {});

}  // namespace qrv

#endif  // QRV_GENERATORS_HPP_
