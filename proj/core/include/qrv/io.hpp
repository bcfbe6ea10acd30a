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

// JSON file formats. Every document carries "format": "qrv/1"; complex
// numbers are [re, im] pairs and matrices are arrays of rows. Parsing a
// document written by this module reproduces the original bit for bit.

#ifndef QRV_IO_HPP_
#define QRV_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "qrv/classifier.hpp"
#include "qrv/sdp.hpp"
#include "qrv/verifier.hpp"

namespace qrv {

using Json = nlohmann::json;

inline constexpr const char* kFormatTag = "qrv/1";

/// A document does not match its schema. path() is a JSON pointer to the
/// offending value, e.g. "/states/3/data/0/1".
class SchemaError : public InvalidArgument {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "");

Json state_to_json(const QuantumState& state);
QuantumState state_from_json(const Json& j, const std::string& path = "",
                             const NumericPolicy& policy = {});

Json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const Json& j, const std::string& path = "",
                               const NumericPolicy& policy = {});

Json classifier_to_json(const Classifier& c);
Classifier classifier_from_json(const Json& j, const NumericPolicy& policy = {});

Json dataset_to_json(const LabeledDataset& d);
LabeledDataset dataset_from_json(const Json& j, const NumericPolicy& policy = {});

/// Real-embedding-free dump of a complex SDP for external cross-checking:
/// {dim, objective, constraints: [{a, relation: "<="|"=", b}]}.
Json sdp_problem_to_json(const SdpProblem& problem);

std::string to_string(VerifyMode mode);
VerifyMode verify_mode_from_string(const std::string& s);

/// Verification report. Unbounded distances are written as null with
/// "unbounded": true. Timings are omitted when `include_timings` is false so
/// that reports of seeded runs are byte-identical.
Json report_to_json(const VerificationReport& report,
                    const std::string& sidecar_file = "",
                    bool include_timings = true);

/// Adversarial examples in the dataset schema. Each state keeps the true
/// label of its source and adds "source", "target_class" and "distance".
Json adversarial_to_json(const VerificationReport& report);

/// Settings for the verify command, read from a JSON config file.
struct RunConfig {
  double epsilon = 0.001;
  VerifyMode mode = VerifyMode::kMixed;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  bool oracle_check = false;
  NumericPolicy policy;
  SdpOptions sdp;
};

/// Fields absent from `j` keep the values in `base`. Requires
/// 0 < epsilon < 1 and workers >= 1.
RunConfig run_config_from_json(const Json& j, RunConfig base = {});
void validate_run_config(const RunConfig& config);

/// Throws InvalidArgument when the file cannot be read or is not JSON.
Json read_json_file(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace qrv

#endif  // QRV_IO_HPP_
