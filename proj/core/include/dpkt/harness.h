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

#ifndef DPKT_HARNESS_H_
#define DPKT_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "dpkt/baselines.h"
#include "dpkt/datagen.h"
#include "dpkt/dataset.h"
#include "dpkt/losses.h"
#include "dpkt/transfer.h"

namespace dpkt {

enum class Method { kIght, kDpIght, kDpslKt };

std::string_view MethodName(Method method);
absl::StatusOr<Method> ParseMethod(std::string_view name);

struct FileData {
  std::string train_path;
  std::optional<std::string> test_path;
  std::optional<int64_t> dim;
};

struct IghtBlock {
  StepRule step_rule = StepRule::kTheory;
  double step_size = 1.0;
  double ridge = 0.0;
  int max_iters = 1000;
};

struct DpIghtBlock {
  // kSpectral is rejected: it would read the private data.
  StepRule step_rule = StepRule::kTheory;
  double step_size = 1.0;
  int iterations = 10;
  std::optional<double> clip_l2;
};

struct DpslKtBlock {
  StepRule teacher_step_rule = StepRule::kTheory;
  double teacher_step_size = 1.0;
  int teacher_iters = 1000;
  StepRule student_step_rule = StepRule::kTheory;
  double student_step_size = 1.0;
  int student_iters = 1000;
  LambdaMode lambda_mode = LambdaRuleMode{};
  std::optional<int64_t> m;
  SynthKind synth = SynthKind::kUniformPm1;
  double tau2 = 1.0;
  std::optional<std::string> synth_pool_path;
  double safety_factor = 1.1;
  double c_gamma = 1.0;
  double c3 = 1.0;
  double c4 = 1.0;
  double sample_size_c = 4.0;
};

struct ExperimentPlan {
  LossKind task = LossKind::kLinear;
  std::variant<SynthSpec, FileData> data = SynthSpec{};
  std::vector<Method> methods = {Method::kIght, Method::kDpIght, Method::kDpslKt};
  // Config files default to {2, 4, 6, 8, 10} when task = logistic.
  std::vector<double> epsilons = {0.8, 1.5, 2.5, 3.5, 5.0};
  double delta = 0.01;
  int trials = 10;
  uint64_t master_seed = 0;
  std::string output_path;
  // Extra examples generated per synthetic trial and held out for test
  // metrics. Training rows do not depend on it.
  int64_t test_size = 0;
  // Sparsity level of every solver; defaults to s* for synthetic data.
  std::optional<int64_t> sparsity;
  std::optional<double> stop_tol = 1e-10;
  int threads = 1;
  // Cross-validated lambda (DPSL-KT) and step (DP-IGHT) on an 80/20 split.
  bool grid = false;
  // Off by default so that reruns produce byte-identical CSVs.
  bool record_wall_time = false;
  // Runs just this trial (same seeds it gets inside the full sweep).
  std::optional<int> only_trial;
  IghtBlock ight;
  DpIghtBlock dp_ight;
  DpslKtBlock dpsl_kt;
};

absl::Status ValidatePlan(const ExperimentPlan& plan);

// Flat "key = value" text, '#' starts a comment. Duplicate keys are errors.
using ConfigMap = std::map<std::string, std::string>;
absl::StatusOr<ConfigMap> ParseConfigText(std::string_view text);
absl::StatusOr<ConfigMap> ParseConfigFile(const std::string& path);
// Applies "--key=value" (or "key=value") overrides on top of `base`.
absl::Status ApplyOverrides(const std::vector<std::string>& overrides, ConfigMap* base);
// Unknown keys and malformed values are errors.
absl::StatusOr<ExperimentPlan> PlanFromConfig(const ConfigMap& config);
// Every recognised key with a one-line description.
const std::vector<std::pair<std::string, std::string>>& PlanConfigKeys();

struct ResultRow {
  std::string method;
  double epsilon = 0.0;
  double delta = 0.0;
  int trial = 0;
  uint64_t seed = 0;
  std::string metric_name;
  double value = 0.0;
  double wall_time_ms = 0.0;

  bool operator==(const ResultRow&) const = default;
};

struct CellReceipt {
  std::string method;
  double epsilon = 0.0;
  int trial = 0;
  PrivacyReceipt receipt;
};

struct PlanOutput {
  std::vector<ResultRow> rows;
  std::vector<CellReceipt> receipts;
  int failed_cells = 0;
};

// One trial's data. Training rows depend only on (plan data block, trial
// seed).
struct TrialData {
  Dataset train;
  std::optional<Dataset> test;
  std::optional<ParamVector> theta_star;
  uint64_t seed = 0;
};

uint64_t TrialSeed(uint64_t master_seed, int trial);
uint64_t CellSeed(uint64_t trial_seed, Method method, size_t epsilon_index);

absl::StatusOr<TrialData> MaterializeTrial(const ExperimentPlan& plan, int trial);

struct CellOutcome {
  ParamVector theta;
  std::optional<PrivacyReceipt> receipt;
  // Extra per-method diagnostics, e.g. lambda or the grid choice.
  std::map<std::string, double> extras;
  std::optional<TransferResult> transfer;
};

// Fits one method at one epsilon on one trial's data.
absl::StatusOr<CellOutcome> RunCell(const ExperimentPlan& plan, Method method,
                                    double epsilon, const TrialData& data,
                                    uint64_t cell_seed);

// relative_error, support_f1 and squared_error when theta* is known;
// test_mse (linear) or test_error (logistic) when a test set exists; nnz.
std::map<std::string, double> CellMetrics(const ExperimentPlan& plan,
                                          const CellOutcome& outcome,
                                          const TrialData& data);

// Runs every (method, epsilon, trial) cell. A failed cell becomes a row with
// metric_name "failed:<reason>" and value NaN; the sweep continues.
// Configuration errors (e.g. an unreadable data file) are returned.
absl::StatusOr<PlanOutput> RunPlan(const ExperimentPlan& plan);

// Sorts by (method, epsilon, trial, metric_name).
void SortRows(std::vector<ResultRow>* rows);
// Header "method,epsilon,delta,trial,seed,metric_name,value,wall_time_ms";
// reals printed with 9 significant digits. Rows are sorted first.
std::string FormatCsv(std::vector<ResultRow> rows);
absl::Status EmitCsv(const std::vector<ResultRow>& rows, const std::string& path);
absl::StatusOr<std::vector<ResultRow>> ParseCsv(std::string_view text);

nlohmann::json ReceiptsToJson(const std::vector<CellReceipt>& receipts);

}  // namespace dpkt

#endif  // DPKT_HARNESS_H_
