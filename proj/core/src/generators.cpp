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

#include "qrv/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "qrv/random.hpp"

namespace qrv {

namespace {

constexpr int kMaxRejections = 1000;
constexpr int kImageSide = 16;

bool valid_angle(double a) {
  return std::isfinite(a) && a > -std::numbers::pi && a <= std::numbers::pi;
}

LabeledDataset sample_split(const Classifier& c, const QubitCaseOptions& o,
                            std::size_t count, Rng& rng) {
  std::normal_distribution<double> noise(0.0, o.noise_std);
  const double anchors[2] = {o.theta_a, o.theta_b};
  LabeledDataset d;
  d.entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t label = i % 2;
    PureState psi = xz_state(anchors[label]);
    if (o.noise_std > 0.0) {
      for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        PureState trial = xz_state(anchors[label] + noise(rng));
        const Classification cls = classify(c, QuantumState(trial));
        if (cls.label == label && !cls.tie) {
          psi = std::move(trial);
          break;
        }
      }
    }
    d.entries.push_back({std::move(psi), label});
  }
  return d;
}

std::string next_token(std::istream& in) {
  std::string token;
  while (in >> token) {
    if (token.front() != '#') {
      const auto hash = token.find('#');
      if (hash != std::string::npos) {
        std::string rest;
        std::getline(in, rest);
        token.resize(hash);
      }
      return token;
    }
    std::string rest;
    std::getline(in, rest);
  }
  throw InvalidArgument("PGM: unexpected end of file");
}

long parse_int(const std::string& token, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw InvalidArgument(std::string("PGM: invalid ") + what + " \"" + token + "\"");
  }
  return v;
}

// Overlap of [lo, hi) with each unit source cell, for one output cell.
std::vector<std::pair<int, double>> overlaps(double lo, double hi) {
  std::vector<std::pair<int, double>> out;
  for (int s = static_cast<int>(std::floor(lo)); s < hi; ++s) {
    const double w = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
    if (w > 0.0) {
      out.emplace_back(s, w);
    }
  }
  return out;
}

}  // namespace

ComplexMatrix rotation_y(double theta) {
  ComplexMatrix u(2, 2);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  u << c, -s, s, c;
  return u;
}

PureState xz_state(double phi) {
  ComplexVector v(2);
  v << std::cos(phi / 2.0), std::sin(phi / 2.0);
  return PureState::from_amplitudes(std::move(v));
}

QubitCaseStudy make_qubit_case_study(const QubitCaseOptions& o) {
  if (!valid_angle(o.theta_a) || !valid_angle(o.theta_b) ||
      !valid_angle(o.theta_star)) {
    throw InvalidArgument("qubit case study: angles must lie in (-pi, pi]");
  }
  if (o.n_train == 0 && o.n_val == 0) {
    throw InvalidArgument("qubit case study: no samples requested");
  }
  if (!(o.noise_std >= 0.0) || !std::isfinite(o.noise_std)) {
    throw InvalidArgument("qubit case study: noise_std must be non-negative");
  }
  Classifier c = Classifier::create(unitary_channel(rotation_y(o.theta_star)),
                                    Measurement::computational_basis(2),
                                    {"a", "b"});
  const Classification ca = classify(c, QuantumState(xz_state(o.theta_a)));
  const Classification cb = classify(c, QuantumState(xz_state(o.theta_b)));
  if (ca.label != 0 || ca.tie || cb.label != 1 || cb.tie) {
    throw InvalidArgument(
        "qubit case study: anchors must fall on opposite sides of the "
        "classifier boundary (a in class 0, b in class 1)");
  }
  Rng rng(o.seed);
  LabeledDataset train = sample_split(c, o, o.n_train, rng);
  LabeledDataset validation = sample_split(c, o, o.n_val, rng);
  return {std::move(c), std::move(train), std::move(validation)};
}

GrayImage read_pgm(std::istream& in) {
  if (next_token(in) != "P2") {
    throw InvalidArgument("PGM: expected plain graymap magic \"P2\"");
  }
  GrayImage img;
  img.width = static_cast<int>(parse_int(next_token(in), "width"));
  img.height = static_cast<int>(parse_int(next_token(in), "height"));
  const long max_value = parse_int(next_token(in), "maximum value");
  if (img.width <= 0 || img.height <= 0 || img.width > 4096 || img.height > 4096) {
    throw InvalidArgument("PGM: image size out of range");
  }
  if (max_value <= 0 || max_value > 65535) {
    throw InvalidArgument("PGM: maximum value must lie in [1, 65535]");
  }
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long v = parse_int(next_token(in), "pixel");
    if (v < 0 || v > max_value) {
      throw InvalidArgument("PGM: pixel " + std::to_string(i) + " out of range");
    }
    img.pixels.push_back(static_cast<double>(v));
  }
  return img;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open " + path.string());
  }
  return read_pgm(in);
}

GrayImage downscale_area(const GrayImage& image, int width, int height) {
  if (width <= 0 || height <= 0 || image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw InvalidArgument("downscale_area: invalid image or target size");
  }
  if (width == image.width && height == image.height) {
    return image;
  }
  const double sx = static_cast<double>(image.width) / width;
  const double sy = static_cast<double>(image.height) / height;
  GrayImage out{width, height, std::vector<double>(static_cast<std::size_t>(width) * height)};
  for (int r = 0; r < height; ++r) {
    const auto rows = overlaps(r * sy, (r + 1) * sy);
    for (int c = 0; c < width; ++c) {
      const auto cols = overlaps(c * sx, (c + 1) * sx);
      double sum = 0.0;
      for (const auto& [ry, wy] : rows) {
        for (const auto& [cx, wx] : cols) {
          sum += wy * wx * image.pixels[static_cast<std::size_t>(ry) * image.width + cx];
        }
      }
      out.pixels[static_cast<std::size_t>(r) * width + c] = sum / (sx * sy);
    }
  }
  return out;
}

PureState amplitude_encode(std::span<const double> values,
                           const NumericPolicy& policy) {
  if (values.empty()) {
    throw InvalidArgument("amplitude_encode: no values");
  }
  double norm2 = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("amplitude_encode: values must be finite and non-negative");
    }
    norm2 += v * v;
  }
  if (norm2 == 0.0) {
    throw InvalidArgument("amplitude_encode: all values are zero");
  }
  const double norm = std::sqrt(norm2);
  ComplexVector a(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    a(static_cast<Index>(i)) = values[i] / norm;
  }
  return PureState::from_amplitudes(std::move(a), policy);
}

PureState encode_image(const GrayImage& image, const NumericPolicy& policy) {
  const GrayImage small = downscale_area(image, kImageSide, kImageSide);
  return amplitude_encode(small.pixels, policy);
}

}  // namespace qrv
