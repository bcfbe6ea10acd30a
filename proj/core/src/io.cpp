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

#include "qrv/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qrv {

namespace {

std::string child(const std::string& path, const std::string& key) {
  return path + "/" + key;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) {
    throw SchemaError(path, "expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(child(path, key), "missing field");
  }
  return *it;
}

const Json& array_field(const Json& j, const std::string& path,
                        const char* key) {
  const Json& v = field(j, path, key);
  if (!v.is_array()) {
    throw SchemaError(child(path, key), "expected an array");
  }
  return v;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) {
    throw SchemaError(path, "expected a number");
  }
  return j.get<double>();
}

std::size_t index_value(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

void check_format(const Json& j) {
  const Json& f = field(j, "", "format");
  if (!f.is_string() || f.get<std::string>() != kFormatTag) {
    throw SchemaError("/format", std::string("expected \"") + kFormatTag + "\"");
  }
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError(path, "expected a [re, im] pair");
  }
  return {number(j[0], child(path, std::size_t{0})),
          number(j[1], child(path, std::size_t{1}))};
}

// Runs a constructor and reports its validation failure at `path`.
template <typename F>
auto at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw SchemaError(path, e.what());
  }
}

Json adversarial_state(const StateVerdict& v) {
  const AdversarialExample& a = *v.adversarial;
  return {{"kind", "density"},
          {"data", matrix_to_json(a.sigma.matrix())},
          {"label", v.label},
          {"source", v.index},
          {"target_class", a.target_class},
          {"distance", a.distance}};
}

}  // namespace

SchemaError::SchemaError(std::string path, const std::string& message)
    : InvalidArgument((path.empty() ? std::string("/") : path) + ": " + message),
      path_(path.empty() ? "/" : std::move(path)) {}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(path, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = child(path, r);
    if (!j[r].is_array() || j[r].empty()) {
      throw SchemaError(row_path, "expected a non-empty row");
    }
    if (r == 0) {
      cols = j[r].size();
    } else if (j[r].size() != cols) {
      throw SchemaError(row_path, "row length differs from row 0");
    }
  }
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          complex_from_json(j[r][c], child(child(path, r), c));
    }
  }
  return m;
}

Json state_to_json(const QuantumState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) {
    Json data = Json::array();
    for (Index i = 0; i < psi->dim(); ++i) {
      data.push_back(complex_to_json(psi->amplitudes()(i)));
    }
    return {{"kind", "pure"}, {"data", std::move(data)}};
  }
  return {{"kind", "density"},
          {"data", matrix_to_json(std::get<DensityMatrix>(state).matrix())}};
}

QuantumState state_from_json(const Json& j, const std::string& path,
                             const NumericPolicy& policy) {
  const Json& kind = field(j, path, "kind");
  const Json& data = field(j, path, "data");
  const std::string data_path = child(path, "data");
  if (kind == "pure") {
    if (!data.is_array() || data.empty()) {
      throw SchemaError(data_path, "expected a non-empty amplitude array");
    }
    ComplexVector v(static_cast<Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      v(static_cast<Index>(i)) = complex_from_json(data[i], child(data_path, i));
    }
    return at_path(data_path, [&] {
      return QuantumState(PureState::from_amplitudes(std::move(v), policy));
    });
  }
  if (kind == "density") {
    ComplexMatrix m = matrix_from_json(data, data_path);
    return at_path(data_path, [&] {
      return QuantumState(DensityMatrix::from_matrix(std::move(m), policy));
    });
  }
  throw SchemaError(child(path, "kind"), "expected \"pure\" or \"density\"");
}

Json channel_to_json(const KrausChannel& channel) {
  Json kraus = Json::array();
  for (const ComplexMatrix& k : channel.kraus()) {
    kraus.push_back(matrix_to_json(k));
  }
  return {{"dim", channel.dim_in()}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const Json& j, const std::string& path,
                               const NumericPolicy& policy) {
  const std::size_t dim = index_value(field(j, path, "dim"), child(path, "dim"));
  const Json& kraus = array_field(j, path, "kraus");
  const std::string kraus_path = child(path, "kraus");
  if (kraus.empty()) {
    throw SchemaError(kraus_path, "expected at least one Kraus operator");
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    ComplexMatrix k = matrix_from_json(kraus[i], child(kraus_path, i));
    if (static_cast<std::size_t>(k.cols()) != dim) {
      throw SchemaError(child(kraus_path, i),
                        "operator does not act on dimension " + std::to_string(dim));
    }
    ops.push_back(std::move(k));
  }
  return at_path(kraus_path, [&] {
    return KrausChannel::from_kraus(std::move(ops), policy);
  });
}

Json classifier_to_json(const Classifier& c) {
  Json ops = Json::array();
  for (const ComplexMatrix& m : c.measurement().operators()) {
    ops.push_back(matrix_to_json(m));
  }
  return {{"format", kFormatTag},
          {"labels", c.labels()},
          {"channel", channel_to_json(c.channel())},
          {"measurement", {{"operators", std::move(ops)}}}};
}

Classifier classifier_from_json(const Json& j, const NumericPolicy& policy) {
  check_format(j);
  const Json& labels_json = array_field(j, "", "labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < labels_json.size(); ++i) {
    if (!labels_json[i].is_string()) {
      throw SchemaError(child("/labels", i), "expected a string");
    }
    labels.push_back(labels_json[i].get<std::string>());
  }
  KrausChannel channel = channel_from_json(field(j, "", "channel"), "/channel", policy);
  const Json& meas = field(j, "", "measurement");
  const Json& ops_json = array_field(meas, "/measurement", "operators");
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < ops_json.size(); ++i) {
    ops.push_back(matrix_from_json(ops_json[i], child("/measurement/operators", i)));
  }
  Measurement measurement = at_path("/measurement/operators", [&] {
    return Measurement::create(std::move(ops), policy);
  });
  return at_path("/", [&] {
    return Classifier::create(std::move(channel), std::move(measurement),
                              std::move(labels), policy);
  });
}

Json dataset_to_json(const LabeledDataset& d) {
  Json states = Json::array();
  for (const DataEntry& e : d.entries) {
    Json s = state_to_json(e.state);
    s["label"] = e.label;
    states.push_back(std::move(s));
  }
  return {{"format", kFormatTag}, {"states", std::move(states)}};
}

LabeledDataset dataset_from_json(const Json& j, const NumericPolicy& policy) {
  check_format(j);
  const Json& states = array_field(j, "", "states");
  LabeledDataset d;
  d.entries.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string path = child("/states", i);
    QuantumState s = state_from_json(states[i], path, policy);
    const std::size_t label =
        index_value(field(states[i], path, "label"), child(path, "label"));
    d.entries.push_back({std::move(s), label});
  }
  return d;
}

Json sdp_problem_to_json(const SdpProblem& problem) {
  Json constraints = Json::array();
  for (const SdpConstraint& c : problem.constraints) {
    constraints.push_back(
        {{"a", matrix_to_json(c.a)},
         {"relation", c.relation == Relation::kEqual ? "=" : "<="},
         {"b", c.b}});
  }
  return {{"format", kFormatTag},
          {"dim", problem.dim},
          {"objective", matrix_to_json(problem.objective)},
          {"constraints", std::move(constraints)}};
}

std::string to_string(VerifyMode mode) {
  return mode == VerifyMode::kPure ? "pure" : "mixed";
}

VerifyMode verify_mode_from_string(const std::string& s) {
  if (s == "mixed") {
    return VerifyMode::kMixed;
  }
  if (s == "pure") {
    return VerifyMode::kPure;
  }
  throw InvalidArgument("mode must be \"mixed\" or \"pure\", got \"" + s + "\"");
}

Json report_to_json(const VerificationReport& report,
                    const std::string& sidecar_file, bool include_timings) {
  Json verdicts = Json::array();
  std::size_t sidecar_index = 0;
  for (const StateVerdict& v : report.verdicts) {
    Json o = {{"index", v.index},
              {"label", v.label},
              {"predicted", v.predicted},
              {"correctly_classified", v.correctly_classified},
              {"margin", v.margin},
              {"tie", v.tie},
              {"lemma_certifies", v.lemma_certifies},
              {"bound_computed", v.bound_computed},
              {"robust", v.robust},
              {"failed", v.failed}};
    const bool unbounded = v.bound_computed && std::isinf(v.delta);
    o["delta"] = v.bound_computed && !unbounded ? Json(v.delta) : Json(nullptr);
    o["unbounded"] = unbounded;
    if (!v.error.empty()) {
      o["error"] = v.error;
    }
    if (v.adversarial) {
      o["adversarial"] = {{"sidecar_index", sidecar_index++},
                          {"target_class", v.adversarial->target_class},
                          {"distance", v.adversarial->distance}};
    } else {
      o["adversarial"] = nullptr;
    }
    verdicts.push_back(std::move(o));
  }
  Json j = {{"format", kFormatTag},
            {"epsilon", report.epsilon},
            {"mode", to_string(report.mode)},
            {"accuracy", report.accuracy},
            {"robust_accuracy", report.robust_accuracy},
            {"under_approx_robust_accuracy", report.under_approx_robust_accuracy},
            {"correctness_failures", report.correctness_failures},
            {"failed_states", report.failed_states},
            {"bound_computations", report.bound_computations},
            {"adversarial_count", report.adversarial_sources.size()},
            {"solver",
             {{"sdp_solves", report.sdp_solves},
              {"sdp_iterations", report.sdp_iterations}}},
            {"warnings", report.warnings},
            {"verdicts", std::move(verdicts)}};
  if (!sidecar_file.empty()) {
    j["adversarial_file"] = sidecar_file;
  }
  if (include_timings) {
    j["timings"] = {{"under_approximation", report.timings.under_approximation},
                    {"robust_accuracy", report.timings.robust_accuracy},
                    {"bound_solves", report.timings.bound_solves}};
  }
  return j;
}

Json adversarial_to_json(const VerificationReport& report) {
  Json states = Json::array();
  for (const StateVerdict& v : report.verdicts) {
    if (v.adversarial) {
      states.push_back(adversarial_state(v));
    }
  }
  return {{"format", kFormatTag}, {"states", std::move(states)}};
}

RunConfig run_config_from_json(const Json& j, RunConfig base) {
  if (!j.is_object()) {
    throw SchemaError("/", "expected an object");
  }
  if (j.contains("format")) {
    check_format(j);
  }
  auto real = [&](const char* key, double& into) {
    if (j.contains(key)) {
      into = number(j[key], child("", key));
    }
  };
  real("epsilon", base.epsilon);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) {
      throw SchemaError("/mode", "expected a string");
    }
    base.mode = at_path("/mode", [&] {
      return verify_mode_from_string(j["mode"].get<std::string>());
    });
  }
  if (j.contains("workers")) {
    base.workers = index_value(j["workers"], "/workers");
  }
  if (j.contains("seed")) {
    base.seed = index_value(j["seed"], "/seed");
  }
  if (j.contains("oracle_check")) {
    if (!j["oracle_check"].is_boolean()) {
      throw SchemaError("/oracle_check", "expected a boolean");
    }
    base.oracle_check = j["oracle_check"].get<bool>();
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (!t.is_object()) {
      throw SchemaError("/tolerances", "expected an object");
    }
    NumericPolicy& p = base.policy;
    const std::pair<const char*, double*> fields[] = {
        {"hermitian_tol", &p.hermitian_tol},
        {"psd_clamp_tol", &p.psd_clamp_tol},
        {"psd_reject_tol", &p.psd_reject_tol},
        {"trace_tol", &p.trace_tol},
        {"norm_tol", &p.norm_tol},
        {"norm_reject_tol", &p.norm_reject_tol},
        {"trace_preserving_tol", &p.trace_preserving_tol},
        {"completeness_tol", &p.completeness_tol},
        {"unitary_tol", &p.unitary_tol},
        {"tie_tol", &p.tie_tol},
        {"support_tol", &p.support_tol},
        {"sdp_gap_tol", &base.sdp.gap_tol},
        {"sdp_feas_tol", &base.sdp.feas_tol}};
    for (const auto& [key, target] : fields) {
      if (t.contains(key)) {
        *target = number(t[key], child("/tolerances", key));
        if (!(*target >= 0.0)) {
          throw SchemaError(child("/tolerances", key), "must be non-negative");
        }
      }
    }
    for (const auto& [key, value] : t.items()) {
      bool known = false;
      for (const auto& f : fields) {
        known = known || key == f.first;
      }
      if (!known) {
        throw SchemaError(child("/tolerances", key), "unknown tolerance");
      }
    }
  }
  if (j.contains("max_dim")) {
    base.policy.max_dim = index_value(j["max_dim"], "/max_dim");
  }
  at_path("/", [&] {
    validate_run_config(base);
    return 0;
  });
  return base;
}

void validate_run_config(const RunConfig& config) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  if (config.workers < 1) {
    throw InvalidArgument("workers must be at least 1");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw InvalidArgument("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw InvalidArgument("error while writing " + path.string());
  }
}

}  // namespace qrv
