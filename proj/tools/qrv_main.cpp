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

// qrv: robustness verification of quantum classifiers from the command line.
//
// Exit codes: 0 success, 1 non-robust states found with --strict, 2 input
// error, 3 solver failure (every bound computation failed, or the oracle
// contradicts a verdict).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrv/generators.hpp"
#include "qrv/io.hpp"
#include "qrv/oracle.hpp"
#include "qrv/verifier.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
  kOk = 0,
  kNotRobust = 1,
  kInputError = 2,
  kSolverFailure = 3,
};

std::string sig4(double v) {
  if (std::isinf(v)) {
    return "inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// Schema errors carry a JSON path; prefix it with the file it came from.
template <typename F>
auto load(const std::string& file, F&& parse) {
  try {
    return parse(qrv::read_json_file(file));
  } catch (const qrv::SchemaError& e) {
    throw qrv::InvalidArgument(file + ": " + e.what());
  }
}

qrv::Classifier load_classifier(const std::string& file,
                                const qrv::NumericPolicy& policy) {
  return load(file, [&](const qrv::Json& j) {
    return qrv::classifier_from_json(j, policy);
  });
}

qrv::LabeledDataset load_dataset(const std::string& file,
                                 const qrv::NumericPolicy& policy) {
  return load(file, [&](const qrv::Json& j) {
    return qrv::dataset_from_json(j, policy);
  });
}

fs::path sidecar_path(const fs::path& report, std::size_t run, std::size_t runs) {
  fs::path p = report;
  std::string stem = p.stem().string();
  if (runs > 1) {
    stem += ".eps" + std::to_string(run);
  }
  return p.replace_filename(stem + ".adversarial.json");
}

struct FileArgs {
  std::string classifier;
  std::string dataset;
};

void add_files(CLI::App* cmd, FileArgs& files) {
  cmd->add_option("classifier", files.classifier, "Classifier JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("dataset", files.dataset, "Dataset JSON file")
      ->required()
      ->check(CLI::ExistingFile);
}

struct VerifyArgs {
  FileArgs files;
  std::vector<double> epsilons;
  std::string mode = "mixed";
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  bool strict = false;
  bool oracle = false;
  bool reproducible = false;
  int resolution = 100;
  std::string report;
  std::string config;
};

bool given(const CLI::App& cmd, const std::string& name) {
  const CLI::Option* opt = cmd.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

qrv::RunConfig resolve_config(const VerifyArgs& args, const CLI::App& cmd) {
  qrv::RunConfig config;
  config.policy = qrv::policy_from_environment();
  if (!args.config.empty()) {
    config = load(args.config, [&](const qrv::Json& j) {
      return qrv::run_config_from_json(j, config);
    });
  }
  if (given(cmd, "--epsilon")) {
    config.epsilon = args.epsilons.front();
  }
  if (given(cmd, "--mode")) {
    config.mode = qrv::verify_mode_from_string(args.mode);
  }
  if (given(cmd, "--workers")) {
    config.workers = args.workers;
  }
  if (given(cmd, "--seed")) {
    config.seed = args.seed;
  }
  if (args.oracle) {
    config.oracle_check = true;
  }
  qrv::validate_run_config(config);
  return config;
}

std::vector<double> epsilon_list(const VerifyArgs& args,
                                 const qrv::RunConfig& config) {
  std::vector<double> eps = args.epsilons.empty()
                                ? std::vector<double>{config.epsilon}
                                : args.epsilons;
  for (double e : eps) {
    qrv::RunConfig probe = config;
    probe.epsilon = e;
    qrv::validate_run_config(probe);
  }
  return eps;
}

void print_table(const std::vector<qrv::VerificationReport>& reports,
                 bool with_ra) {
  constexpr std::size_t kLabel = 28;
  constexpr std::size_t kCol = 12;
  auto row = [&](const std::string& label, auto value) {
    std::string line = pad(label, kLabel);
    for (const qrv::VerificationReport& r : reports) {
      line += pad(value(r), kCol);
    }
    std::cout << line << '\n';
  };
  row("epsilon", [](const auto& r) { return sig4(r.epsilon); });
  std::cout << "Robust accuracy (%)\n";
  row("  margin bound (URA)",
      [](const auto& r) { return sig4(100.0 * r.under_approx_robust_accuracy); });
  if (with_ra) {
    row("  optimal bound (RA)",
        [](const auto& r) { return sig4(100.0 * r.robust_accuracy); });
  }
  std::cout << "Verification time (s)\n";
  row("  margin bound",
      [](const auto& r) { return sig4(r.timings.under_approximation); });
  if (with_ra) {
    row("  optimal bound",
        [](const auto& r) { return sig4(r.timings.robust_accuracy); });
    row("bound computations", [](const auto& r) {
      return std::to_string(r.bound_computations);
    });
    row("SDP solves", [](const auto& r) { return std::to_string(r.sdp_solves); });
    row("adversarial examples", [](const auto& r) {
      return std::to_string(r.adversarial_sources.size());
    });
    row("failed states",
        [](const auto& r) { return std::to_string(r.failed_states); });
  }
}

qrv::Json oracle_json(const qrv::OracleCheck& check) {
  qrv::Json dis = qrv::Json::array();
  for (const qrv::OracleDisagreement& d : check.disagreements) {
    dis.push_back({{"index", d.index},
                   {"verifier_robust", d.verifier_robust},
                   {"oracle_robust", d.oracle_robust},
                   {"delta", std::isinf(d.delta) ? qrv::Json(nullptr) : qrv::Json(d.delta)},
                   {"delta_hat", std::isinf(d.delta_hat) ? qrv::Json(nullptr)
                                                         : qrv::Json(d.delta_hat)}});
  }
  return {{"checked", check.checked},
          {"boundary_cases", check.boundary_cases},
          {"disagreements", std::move(dis)}};
}

int run_verify(const VerifyArgs& args, const CLI::App& cmd) {
  const qrv::RunConfig config = resolve_config(args, cmd);
  const std::vector<double> eps = epsilon_list(args, config);
  const qrv::Classifier c = load_classifier(args.files.classifier, config.policy);
  const qrv::LabeledDataset d = load_dataset(args.files.dataset, config.policy);
  qrv::check_dataset(c, d);

  qrv::VerifyOptions options;
  options.mode = config.mode;
  options.workers = config.workers;
  options.seed = config.seed;
  options.sdp = config.sdp;
  options.policy = config.policy;

  std::vector<qrv::VerificationReport> reports;
  std::vector<qrv::OracleCheck> checks;
  for (double e : eps) {
    reports.push_back(qrv::verify_dataset(c, d, e, options));
    if (config.oracle_check) {
      checks.push_back(qrv::cross_check_report(c, d, reports.back(),
                                               args.resolution, 1e-4, 10000,
                                               config.policy));
    }
  }

  std::cout << "states: " << d.entries.size() << "  accuracy: "
            << sig4(100.0 * reports.front().accuracy) << "%  mode: "
            << qrv::to_string(config.mode) << '\n';
  print_table(reports, true);
  for (const qrv::VerificationReport& r : reports) {
    for (const std::string& w : r.warnings) {
      std::cerr << "warning (eps " << sig4(r.epsilon) << "): " << w << '\n';
    }
  }
  bool oracle_failed = false;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    std::cout << "oracle (eps " << sig4(eps[i]) << "): checked "
              << checks[i].checked << ", boundary " << checks[i].boundary_cases
              << ", disagreements " << checks[i].disagreements.size() << '\n';
    oracle_failed = oracle_failed || !checks[i].disagreements.empty();
  }

  if (!args.report.empty()) {
    qrv::Json runs = qrv::Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const fs::path sidecar = sidecar_path(args.report, i, reports.size());
      qrv::Json j = qrv::report_to_json(reports[i], sidecar.filename().string(),
                                        !args.reproducible);
      if (!checks.empty()) {
        j["oracle"] = oracle_json(checks[i]);
      }
      qrv::write_json_file(sidecar, qrv::adversarial_to_json(reports[i]));
      runs.push_back(std::move(j));
    }
    if (runs.size() == 1) {
      qrv::write_json_file(args.report, runs.front());
    } else {
      qrv::write_json_file(args.report,
                           {{"format", qrv::kFormatTag}, {"reports", std::move(runs)}});
    }
  }

  bool non_robust = false;
  for (const qrv::VerificationReport& r : reports) {
    if (r.bound_computations > 0 && r.failed_states == r.bound_computations) {
      std::cerr << "error: every bound computation failed at eps "
                << sig4(r.epsilon) << '\n';
      return kSolverFailure;
    }
    non_robust = non_robust || !r.adversarial_sources.empty();
  }
  if (oracle_failed) {
    std::cerr << "error: the oracle contradicts verifier verdicts\n";
    return kSolverFailure;
  }
  return args.strict && non_robust ? kNotRobust : kOk;
}

int run_bound(const VerifyArgs& args, const CLI::App& cmd) {
  const qrv::RunConfig config = resolve_config(args, cmd);
  const std::vector<double> eps = epsilon_list(args, config);
  const qrv::Classifier c = load_classifier(args.files.classifier, config.policy);
  const qrv::LabeledDataset d = load_dataset(args.files.dataset, config.policy);
  qrv::check_dataset(c, d);
  std::vector<qrv::VerificationReport> reports;
  qrv::Json runs = qrv::Json::array();
  for (double e : eps) {
    qrv::VerificationReport r;
    r.epsilon = e;
    const auto start = std::chrono::steady_clock::now();
    r.under_approx_robust_accuracy =
        qrv::under_robust_accuracy(c, d, e, config.policy);
    r.timings.under_approximation =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    qrv::Json j = {{"epsilon", e},
                   {"under_approx_robust_accuracy", r.under_approx_robust_accuracy}};
    if (!args.reproducible) {
      j["timings"] = {{"under_approximation", r.timings.under_approximation}};
    }
    runs.push_back(std::move(j));
    reports.push_back(std::move(r));
  }
  std::cout << "states: " << d.entries.size() << '\n';
  print_table(reports, false);
  if (!args.report.empty()) {
    qrv::write_json_file(args.report,
                         {{"format", qrv::kFormatTag}, {"runs", std::move(runs)}});
  }
  return kOk;
}

int run_classify(const FileArgs& files, const std::string& report) {
  const qrv::NumericPolicy policy = qrv::policy_from_environment();
  const qrv::Classifier c = load_classifier(files.classifier, policy);
  const qrv::LabeledDataset d = load_dataset(files.dataset, policy);
  qrv::check_dataset(c, d);
  qrv::Json states = qrv::Json::array();
  std::size_t correct = 0;
  std::cout << pad("index", 8) << pad("label", 12) << pad("predicted", 12)
            << pad("margin", 12) << '\n';
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    const qrv::DataEntry& e = d.entries[i];
    const qrv::Classification cls = qrv::classify(c, e.state, policy);
    correct += cls.label == e.label ? 1 : 0;
    std::cout << pad(std::to_string(i), 8) << pad(c.labels()[e.label], 12)
              << pad(c.labels()[cls.label] + (cls.tie ? "*" : ""), 12)
              << pad(sig4(cls.margin), 12) << '\n';
    states.push_back({{"index", i},
                      {"label", e.label},
                      {"predicted", cls.label},
                      {"margin", cls.margin},
                      {"tie", cls.tie}});
  }
  const double acc = static_cast<double>(correct) / static_cast<double>(d.entries.size());
  std::cout << "accuracy: " << sig4(acc) << " (" << correct << "/"
            << d.entries.size() << ")\n";
  if (!report.empty()) {
    qrv::write_json_file(report, {{"format", qrv::kFormatTag},
                                  {"accuracy", acc},
                                  {"labels", c.labels()},
                                  {"states", std::move(states)}});
  }
  return kOk;
}

int run_gen_qubit(const qrv::QubitCaseOptions& options, const std::string& out_dir) {
  const qrv::QubitCaseStudy study = qrv::make_qubit_case_study(options);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  qrv::write_json_file(dir / "classifier.json", qrv::classifier_to_json(study.classifier));
  qrv::write_json_file(dir / "train.json", qrv::dataset_to_json(study.train));
  qrv::write_json_file(dir / "validation.json", qrv::dataset_to_json(study.validation));
  std::cout << "wrote " << (dir / "classifier.json").string() << ", "
            << (dir / "train.json").string() << " (" << study.train.entries.size()
            << " states), " << (dir / "validation.json").string() << " ("
            << study.validation.entries.size() << " states)\n";
  return kOk;
}

int run_encode_image(const std::vector<std::string>& images, std::size_t label,
                     const std::string& out) {
  const qrv::NumericPolicy policy = qrv::policy_from_environment();
  qrv::LabeledDataset d;
  for (const std::string& file : images) {
    const qrv::GrayImage img = qrv::read_pgm_file(file);
    d.entries.push_back({qrv::encode_image(img, policy), label});
  }
  qrv::write_json_file(out, qrv::dataset_to_json(d));
  std::cout << "encoded " << d.entries.size() << " image(s) into " << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness verification of quantum classifiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qrv 0.1.0");

  FileArgs classify_files;
  std::string classify_report;
  CLI::App* classify = app.add_subcommand("classify", "Classify a dataset");
  add_files(classify, classify_files);
  classify->add_option("--report", classify_report, "Write labels and accuracy as JSON");

  auto add_verify_flags = [](CLI::App* cmd, VerifyArgs& a, bool full) {
    add_files(cmd, a.files);
    cmd->add_option("--epsilon", a.epsilons,
                    "Robustness radius in (0, 1); repeat or separate by commas")
        ->delimiter(',');
    cmd->add_option("--report", a.report, "Write the report JSON here");
    cmd->add_option("--config", a.config, "JSON run configuration")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--reproducible", a.reproducible,
                  "Leave wall-clock timings out of the report file");
    if (full) {
      cmd->add_option("--mode", a.mode, "Adversary model")
          ->check(CLI::IsMember({"mixed", "pure"}));
      cmd->add_option("--workers", a.workers, "Worker threads")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--seed", a.seed, "Seed for the pure-state search");
      cmd->add_flag("--strict", a.strict, "Exit 1 when a state is not robust");
      cmd->add_flag("--oracle", a.oracle, "Cross-check verdicts with the brute-force oracle");
      cmd->add_option("--resolution", a.resolution, "Bloch grid resolution for --oracle")
          ->check(CLI::Range(2, 2000));
    }
  };

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Filter-then-solve robustness verification");
  add_verify_flags(verify, verify_args, true);

  VerifyArgs bound_args;
  CLI::App* bound = app.add_subcommand("bound", "Margin-bound under-approximation only");
  add_verify_flags(bound, bound_args, false);

  VerifyArgs oracle_args;
  oracle_args.oracle = true;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Verify and compare every verdict with the brute-force oracle");
  add_verify_flags(oracle, oracle_args, true);

  qrv::QubitCaseOptions gen;
  std::string gen_dir = ".";
  CLI::App* gen_qubit = app.add_subcommand("gen-qubit", "Generate the single-qubit case study");
  gen_qubit->add_option("--theta-a", gen.theta_a, "Polar angle of anchor a");
  gen_qubit->add_option("--theta-b", gen.theta_b, "Polar angle of anchor b");
  gen_qubit->add_option("--theta-star", gen.theta_star, "Trained rotation angle");
  gen_qubit->add_option("--n-train", gen.n_train, "Training states");
  gen_qubit->add_option("--n-val", gen.n_val, "Validation states");
  gen_qubit->add_option("--noise-std", gen.noise_std, "Angle perturbation in radians");
  gen_qubit->add_option("--seed", gen.seed, "Random seed");
  gen_qubit->add_option("--out-dir", gen_dir, "Output directory");

  std::vector<std::string> images;
  std::size_t image_label = 0;
  std::string image_out;
  CLI::App* encode = app.add_subcommand("encode-image", "Amplitude-encode 16x16 grayscale images");
  encode->add_option("images", images, "Plain PGM files")->required()->check(CLI::ExistingFile);
  encode->add_option("--label", image_label, "Class index for every image");
  encode->add_option("--out", image_out, "Dataset file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*classify) {
      return run_classify(classify_files, classify_report);
    }
    if (*verify) {
      return run_verify(verify_args, *verify);
    }
    if (*bound) {
      return run_bound(bound_args, *bound);
    }
    if (*oracle) {
      return run_verify(oracle_args, *oracle);
    }
    if (*gen_qubit) {
      return run_gen_qubit(gen, gen_dir);
    }
    if (*encode) {
      return run_encode_image(images, image_label, image_out);
    }
  } catch (const qrv::NumericalError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const qrv::InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
