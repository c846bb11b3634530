//
// Copyright 2026 The dpkt Authors
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
//

// Command-line front end: datagen, run, sweep and check.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpkt/datagen.h"
#include "dpkt/harness.h"
#include "dpkt/selfcheck.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kCellFailed = 2;

int ConfigError(const absl::Status& status) {
  std::cerr << "dpkt: " << status.ToString() << "\n";
  return kConfigError;
}

bool WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return f.good();
}

// Config file (optional) plus --key=value overrides left over by the parser.
absl::StatusOr<dpkt::ExperimentPlan> LoadPlan(const std::string& config_path,
                                              const std::vector<std::string>& extras) {
  dpkt::ConfigMap config;
  if (!config_path.empty()) {
    absl::StatusOr<dpkt::ConfigMap> parsed = dpkt::ParseConfigFile(config_path);
    if (!parsed.ok()) return parsed.status();
    config = *std::move(parsed);
  }
  if (absl::Status s = dpkt::ApplyOverrides(extras, &config); !s.ok()) return s;
  return dpkt::PlanFromConfig(config);
}

struct DatagenArgs {
  int64_t n = 800;
  int64_t d = 1000;
  int64_t s_star = 10;
  std::string task = "linear";
  double nu2 = 0.1;
  std::string label_sign = "model";
  std::string theta_scale = "unit";
  uint64_t seed = 0;
  std::string out;
  std::string theta_out;
};

int RunDatagen(const DatagenArgs& a) {
  dpkt::SynthSpec spec;
  spec.n = a.n;
  spec.d = a.d;
  spec.s_star = a.s_star;
  absl::StatusOr<dpkt::LossKind> task = dpkt::ParseLossKind(a.task);
  if (!task.ok()) return ConfigError(task.status());
  if (*task == dpkt::LossKind::kLinear) {
    spec.task = dpkt::LinearNoise{a.nu2};
  } else {
    absl::StatusOr<dpkt::LabelSign> sign = dpkt::ParseLabelSign(a.label_sign);
    if (!sign.ok()) return ConfigError(sign.status());
    spec.task = dpkt::LogisticLabels{*sign};
  }
  absl::StatusOr<dpkt::ThetaScale> scale = dpkt::ParseThetaScale(a.theta_scale);
  if (!scale.ok()) return ConfigError(scale.status());
  spec.theta_scale = *scale;

  absl::StatusOr<dpkt::Generated> gen = dpkt::Generate(spec, dpkt::Rng(a.seed));
  if (!gen.ok()) return ConfigError(gen.status());
  if (absl::Status s = dpkt::WriteLibsvm(gen->data, a.out); !s.ok()) return ConfigError(s);
  const std::string theta_path = a.theta_out.empty() ? a.out + ".theta.json" : a.theta_out;
  if (!WriteText(theta_path, dpkt::ThetaToJson(gen->theta_star).dump(2) + "\n")) {
    return ConfigError(absl::UnavailableError("cannot write " + theta_path));
  }
  std::cout << "wrote " << a.out << " (" << a.n << " x " << a.d << ") and " << theta_path
            << "\n";
  return kOk;
}

struct RunArgs {
  std::string config;
  std::string method;
  double epsilon = 1.0;
  int trial = 0;
  std::string json_out;
  bool include_nonprivate = false;
};

int RunSingle(const RunArgs& a, const std::vector<std::string>& extras) {
  absl::StatusOr<dpkt::ExperimentPlan> plan = LoadPlan(a.config, extras);
  if (!plan.ok()) return ConfigError(plan.status());
  absl::StatusOr<dpkt::Method> method = dpkt::ParseMethod(a.method);
  if (!method.ok()) return ConfigError(method.status());
  if (a.trial < 0 || a.trial >= plan->trials) {
    return ConfigError(absl::InvalidArgumentError("--trial must lie in [0, trials)"));
  }

  // Reuse the sweep's seed for this cell when epsilon is on the plan's grid.
  size_t eps_index = 0;
  auto it = std::find(plan->epsilons.begin(), plan->epsilons.end(), a.epsilon);
  if (it != plan->epsilons.end() && *method != dpkt::Method::kIght) {
    eps_index = static_cast<size_t>(it - plan->epsilons.begin());
  }
  absl::StatusOr<dpkt::TrialData> data = dpkt::MaterializeTrial(*plan, a.trial);
  if (!data.ok()) return ConfigError(data.status());
  const uint64_t seed = dpkt::CellSeed(data->seed, *method, eps_index);
  absl::StatusOr<dpkt::CellOutcome> outcome =
      dpkt::RunCell(*plan, *method, a.epsilon, *data, seed);
  if (!outcome.ok()) {
    std::cerr << "dpkt: " << a.method << " failed: " << outcome.status().ToString() << "\n";
    return kCellFailed;
  }

  nlohmann::json report = {{"method", a.method},
                           {"epsilon", a.epsilon},
                           {"delta", plan->delta},
                           {"trial", a.trial},
                           {"seed", seed},
                           {"metrics", dpkt::CellMetrics(*plan, *outcome, *data)}};
  if (outcome->receipt.has_value()) report["receipt"] = dpkt::ReceiptToJson(*outcome->receipt);
  std::cout << report.dump(2) << "\n";

  if (!a.json_out.empty()) {
    nlohmann::json j;
    if (outcome->transfer.has_value()) {
      j = dpkt::TransferResultToJson(*outcome->transfer, !a.include_nonprivate);
    } else {
      j = {{"theta", std::vector<double>(outcome->theta.data(),
                                         outcome->theta.data() + outcome->theta.size())}};
      if (outcome->receipt.has_value()) j["receipt"] = dpkt::ReceiptToJson(*outcome->receipt);
    }
    if (!WriteText(a.json_out, j.dump(2) + "\n")) {
      return ConfigError(absl::UnavailableError("cannot write " + a.json_out));
    }
  }
  return kOk;
}

int RunSweep(const std::string& config, const std::string& out_override,
             const std::vector<std::string>& extras) {
  absl::StatusOr<dpkt::ExperimentPlan> plan = LoadPlan(config, extras);
  if (!plan.ok()) return ConfigError(plan.status());
  if (!out_override.empty()) plan->output_path = out_override;
  absl::StatusOr<dpkt::PlanOutput> out = dpkt::RunPlan(*plan);
  if (!out.ok()) return ConfigError(out.status());

  if (plan->output_path.empty()) {
    std::cout << dpkt::FormatCsv(out->rows);
  } else {
    if (absl::Status s = dpkt::EmitCsv(out->rows, plan->output_path); !s.ok()) {
      return ConfigError(s);
    }
    const std::string receipts = plan->output_path + ".receipts.json";
    if (!WriteText(receipts, dpkt::ReceiptsToJson(out->receipts).dump(2) + "\n")) {
      return ConfigError(absl::UnavailableError("cannot write " + receipts));
    }
    std::cerr << "wrote " << out->rows.size() << " rows to " << plan->output_path << "\n";
  }
  if (out->failed_cells > 0) {
    std::cerr << "dpkt: " << out->failed_cells << " cell(s) failed; see failed:* rows\n";
    return kCellFailed;
  }
  return kOk;
}

int RunCheck(uint64_t seed) {
  bool all = true;
  for (const dpkt::CheckResult& r : dpkt::RunSelfChecks(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << "\n";
    all = all && r.passed;
  }
  return all ? kOk : kCellFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private sparse learning via knowledge transfer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dpkt 0.1.0");

  DatagenArgs gen;
  CLI::App* datagen = app.add_subcommand("datagen", "Write a synthetic dataset and its theta*");
  datagen->add_option("--n", gen.n, "Examples")->capture_default_str();
  datagen->add_option("--d", gen.d, "Dimension")->capture_default_str();
  datagen->add_option("--s-star", gen.s_star, "Nonzeros in theta*")->capture_default_str();
  datagen->add_option("--task", gen.task, "linear or logistic")->capture_default_str();
  datagen->add_option("--nu2", gen.nu2, "Linear noise variance")->capture_default_str();
  datagen->add_option("--label-sign", gen.label_sign, "model or flipped")->capture_default_str();
  datagen->add_option("--theta-scale", gen.theta_scale, "raw or unit")->capture_default_str();
  datagen->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  datagen->add_option("--out", gen.out, "libsvm output path")->required();
  datagen->add_option("--theta-out", gen.theta_out, "theta* JSON path (default <out>.theta.json)");

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Fit one method at one epsilon");
  run_cmd->add_option("--config", run.config, "Plan config file");
  run_cmd->add_option("--method", run.method, "ight, dp_ight or dpsl_kt")->required();
  run_cmd->add_option("--epsilon", run.epsilon, "Privacy budget")->required();
  run_cmd->add_option("--trial", run.trial, "Trial index")->capture_default_str();
  run_cmd->add_option("--json", run.json_out, "Write theta (and receipt) as JSON");
  run_cmd->add_flag("--include-nonprivate", run.include_nonprivate,
                    "Also export the teacher and iterate traces (not private)");
  run_cmd->add_flag("--private-only{false}", run.include_nonprivate,
                    "Export only theta_p, support and receipt (default)");
  run_cmd->allow_extras();

  std::string sweep_config, sweep_out;
  bool list_keys = false;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a full plan and write a CSV");
  sweep->add_option("--config", sweep_config, "Plan config file");
  sweep->add_option("--out", sweep_out, "CSV path (overrides the plan's output key)");
  sweep->add_flag("--list-keys", list_keys, "Print every plan key and exit");
  sweep->allow_extras();

  uint64_t check_seed = 0;
  CLI::App* check = app.add_subcommand("check", "Run the built-in invariant checks");
  check->add_option("--seed", check_seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (*datagen) return RunDatagen(gen);
  if (*run_cmd) return RunSingle(run, run_cmd->remaining());
  if (*sweep) {
    if (list_keys) {
      for (const auto& [key, help] : dpkt::PlanConfigKeys()) {
        std::printf("%-28s %s\n", key.c_str(), help.c_str());
      }
      return kOk;
    }
    return RunSweep(sweep_config, sweep_out, sweep->remaining());
  }
  if (*check) return RunCheck(check_seed);
  return kConfigError;
}
