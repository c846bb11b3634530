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

#include "dpkt/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <thread>
#include <tuple>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpkt/libsvm.h"
#include "dpkt/metrics.h"
#include "dpkt/random.h"
#include "dpkt/status_macros.h"
#include "dpkt/thresholding.h"
#include "string_compat.h"

namespace dpkt {
namespace {

constexpr char kCsvHeader[] = "method,epsilon,delta,trial,seed,metric_name,value,wall_time_ms";
// Grid selection reads a held-out split of the private data, which the
// receipt does not account for.
constexpr char kGridSelectionLabel[] =
    "grid search on an 80/20 split of the private data; selection not accounted";

// Data that is read from disk once per plan rather than once per trial.
struct Sources {
  std::optional<Dataset> train;
  std::optional<Dataset> test;
  std::shared_ptr<const DesignMatrix> pool;
};

absl::StatusOr<Sources> LoadSources(const ExperimentPlan& plan) {
  Sources src;
  int64_t dim = 0;
  if (const auto* file = std::get_if<FileData>(&plan.data)) {
    DPKT_ASSIGN_OR_RETURN(Dataset train, ParseLibsvmFile(file->train_path, file->dim));
    dim = train.dim();
    if (file->test_path.has_value()) {
      DPKT_ASSIGN_OR_RETURN(src.test, ParseLibsvmFile(*file->test_path, dim));
    }
    src.train = std::move(train);
  } else {
    dim = std::get<SynthSpec>(plan.data).d;
  }
  if (plan.dpsl_kt.synth_pool_path.has_value()) {
    DPKT_ASSIGN_OR_RETURN(Dataset pool, ParseLibsvmFile(*plan.dpsl_kt.synth_pool_path, dim));
    src.pool = pool.shared_features();
  }
  return src;
}

int64_t PlanSparsity(const ExperimentPlan& plan) {
  if (plan.sparsity.has_value()) return *plan.sparsity;
  if (const auto* spec = std::get_if<SynthSpec>(&plan.data)) return spec->s_star;
  return 0;
}

absl::StatusOr<TrialData> Materialize(const ExperimentPlan& plan, const Sources& src,
                                      int trial) {
  const uint64_t seed = TrialSeed(plan.master_seed, trial);
  const auto* spec = std::get_if<SynthSpec>(&plan.data);
  if (spec == nullptr) return TrialData{*src.train, src.test, std::nullopt, seed};

  SynthSpec full = *spec;
  full.n = spec->n + plan.test_size;
  DPKT_ASSIGN_OR_RETURN(Generated gen, Generate(full, Rng(seed).Split(Stream::kData)));
  std::vector<int64_t> train_rows(static_cast<size_t>(spec->n));
  std::iota(train_rows.begin(), train_rows.end(), 0);
  TrialData out{gen.data.Subset(train_rows), std::nullopt, std::move(gen.theta_star), seed};
  if (plan.test_size > 0) {
    std::vector<int64_t> test_rows(static_cast<size_t>(plan.test_size));
    std::iota(test_rows.begin(), test_rows.end(), spec->n);
    out.test = gen.data.Subset(test_rows);
  }
  return out;
}

// Deterministic 80/20 split of the training rows for grid selection.
std::pair<Dataset, Dataset> GridSplit(const Dataset& data, uint64_t trial_seed) {
  const int64_t n = data.num_examples();
  std::vector<int64_t> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng = Rng(trial_seed).Split(Stream::kSplit);
  for (int64_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.UniformInt(0, i)]);
  const int64_t cut = std::max<int64_t>(1, (4 * n) / 5);
  std::vector<int64_t> fit(perm.begin(), perm.begin() + cut);
  std::vector<int64_t> val(perm.begin() + cut, perm.end());
  std::sort(fit.begin(), fit.end());
  std::sort(val.begin(), val.end());
  if (val.empty()) val = fit;
  return {data.Subset(fit), data.Subset(val)};
}

absl::StatusOr<double> ValidationLoss(LossKind kind, const Dataset& val,
                                      const ParamVector& theta) {
  DPKT_ASSIGN_OR_RETURN(LossModel model, LossModel::Create(kind, val, 0.0));
  return model.Value(theta);
}

absl::StatusOr<double> TheoryStep(const LossModel& model, int64_t s, double ridge) {
  DPKT_ASSIGN_OR_RETURN(ModelBounds bounds, ComputeModelBounds(model, s));
  DPKT_ASSIGN_OR_RETURN(StepSizes steps, DefaultStepSizes(bounds, ridge, 1.0));
  return steps.teacher;
}

TransferConfig MakeTransferConfig(const ExperimentPlan& plan, double epsilon,
                                  const TrialData& data,
                                  std::shared_ptr<const DesignMatrix> pool,
                                  uint64_t seed) {
  const DpslKtBlock& b = plan.dpsl_kt;
  const int64_t s = PlanSparsity(plan);
  TransferConfig cfg;
  cfg.teacher.sparsity = s;
  cfg.teacher.step_size = b.teacher_step_size;
  cfg.teacher.max_iters = b.teacher_iters;
  cfg.teacher.stop_tol = plan.stop_tol;
  cfg.student = cfg.teacher;
  cfg.student.step_size = b.student_step_size;
  cfg.student.max_iters = b.student_iters;
  cfg.teacher_step = b.teacher_step_rule;
  cfg.student_step = b.student_step_rule;
  cfg.synth.kind = b.synth;
  cfg.synth.tau2 = b.tau2;
  cfg.synth.safety_factor = b.safety_factor;
  cfg.synth.pool = b.synth == SynthKind::kEmpirical && pool == nullptr
                       ? data.train.shared_features()
                       : std::move(pool);
  cfg.m = b.m;
  cfg.privacy = {epsilon, plan.delta};
  cfg.lambda_mode = b.lambda_mode;
  cfg.seed = seed;
  cfg.c_gamma = b.c_gamma;
  cfg.sample_size_c = b.sample_size_c;
  cfg.step_constants.c3 = b.c3;
  cfg.step_constants.c4 = b.c4;
  return cfg;
}

absl::StatusOr<CellOutcome> RunIghtCell(const ExperimentPlan& plan, const TrialData& data) {
  const int64_t s = PlanSparsity(plan);
  DPKT_ASSIGN_OR_RETURN(LossModel model,
                        LossModel::Create(plan.task, data.train, plan.ight.ridge));
  double step = plan.ight.step_size;
  if (plan.ight.step_rule == StepRule::kTheory) {
    DPKT_ASSIGN_OR_RETURN(step, TheoryStep(model, s, plan.ight.ridge));
  } else if (plan.ight.step_rule == StepRule::kSpectral) {
    step = SpectralStepSize(model);
  }
  IghtConfig cfg;
  cfg.sparsity = s;
  cfg.step_size = step;
  cfg.max_iters = plan.ight.max_iters;
  cfg.stop_tol = plan.stop_tol;
  DPKT_ASSIGN_OR_RETURN(FitTrace trace, NonPrivateIght(model, cfg));
  CellOutcome out;
  out.theta = std::move(trace.final);
  out.extras["step_size"] = step;
  out.extras["iters_run"] = trace.iters_run;
  return out;
}

absl::StatusOr<DpIghtResult> FitDpIght(const ExperimentPlan& plan, const Dataset& train,
                                       double epsilon, double step, uint64_t seed) {
  DPKT_ASSIGN_OR_RETURN(LossModel model, LossModel::Create(plan.task, train, 0.0));
  DpIghtConfig cfg;
  cfg.sparsity = PlanSparsity(plan);
  cfg.step_size = step;
  cfg.iterations = plan.dp_ight.iterations;
  cfg.privacy = {epsilon, plan.delta};
  cfg.clip_l2 = plan.dp_ight.clip_l2;
  cfg.seed = seed;
  return DpIght(model, cfg);
}

absl::StatusOr<CellOutcome> RunDpIghtCell(const ExperimentPlan& plan, double epsilon,
                                          const TrialData& data, uint64_t seed) {
  double step = plan.dp_ight.step_size;
  CellOutcome out;
  if (plan.grid) {
    auto [fit, val] = GridSplit(data.train, data.seed);
    double best_loss = std::numeric_limits<double>::infinity();
    int best = -1;
    absl::Status last = absl::OkStatus();
    for (int k = 0; k <= 6; ++k) {
      const double eta = std::ldexp(1.0, -k);
      absl::StatusOr<DpIghtResult> r = FitDpIght(plan, fit, epsilon, eta, seed);
      if (!r.ok()) {
        last = r.status();
        continue;
      }
      DPKT_ASSIGN_OR_RETURN(double loss, ValidationLoss(plan.task, val, r->trace.final));
      if (loss < best_loss) {
        best_loss = loss;
        best = k;
      }
    }
    if (best < 0) return last.ok() ? absl::InternalError("empty step grid") : last;
    step = std::ldexp(1.0, -best);
    out.extras["grid_choice"] = step;
  } else if (plan.dp_ight.step_rule == StepRule::kTheory) {
    DPKT_ASSIGN_OR_RETURN(LossModel model, LossModel::Create(plan.task, data.train, 0.0));
    DPKT_ASSIGN_OR_RETURN(step, TheoryStep(model, PlanSparsity(plan), 0.0));
  }
  DPKT_ASSIGN_OR_RETURN(DpIghtResult r, FitDpIght(plan, data.train, epsilon, step, seed));
  if (plan.grid) r.receipt.labels["hyperparameter_selection"] = kGridSelectionLabel;
  out.theta = std::move(r.trace.final);
  out.receipt = std::move(r.receipt);
  out.extras["step_size"] = step;
  return out;
}

absl::StatusOr<CellOutcome> RunDpslKtCell(const ExperimentPlan& plan, double epsilon,
                                          const TrialData& data, uint64_t seed,
                                          std::shared_ptr<const DesignMatrix> pool) {
  TransferConfig cfg = MakeTransferConfig(plan, epsilon, data, pool, seed);
  CellOutcome out;
  if (plan.grid) {
    auto [fit, val] = GridSplit(data.train, data.seed);
    TransferConfig grid_cfg = cfg;
    if (cfg.synth.kind == SynthKind::kEmpirical && pool == nullptr) {
      grid_cfg.synth.pool = fit.shared_features();
    }
    if (grid_cfg.m.has_value()) grid_cfg.m = std::min(*grid_cfg.m, fit.num_examples());
    double best_loss = std::numeric_limits<double>::infinity();
    double best_c = 0.0;
    absl::Status last = absl::OkStatus();
    for (int e = -6; e <= 1; ++e) {
      const double c = std::pow(10.0, e);
      grid_cfg.lambda_mode = LambdaRuleMode{c};
      absl::StatusOr<TransferResult> r = RunDpslKt(fit, plan.task, grid_cfg);
      if (!r.ok()) {
        last = r.status();
        continue;
      }
      DPKT_ASSIGN_OR_RETURN(double loss, ValidationLoss(plan.task, val, r->theta_p));
      if (loss < best_loss) {
        best_loss = loss;
        best_c = c;
      }
    }
    if (best_c == 0.0) return last.ok() ? absl::InternalError("empty lambda grid") : last;
    cfg.lambda_mode = LambdaRuleMode{best_c};
    out.extras["grid_choice"] = best_c;
  }
  DPKT_ASSIGN_OR_RETURN(TransferResult r, RunDpslKt(data.train, plan.task, cfg));
  if (plan.grid) r.receipt.labels["hyperparameter_selection"] = kGridSelectionLabel;
  out.theta = r.theta_p;
  out.receipt = r.receipt;
  out.extras["lambda"] = r.lambda;
  out.extras["teacher_step"] = r.teacher_step;
  out.extras["student_step"] = r.student_step;
  out.transfer = std::move(r);
  return out;
}

std::string Sanitize(std::string_view reason) {
  std::string out(reason);
  for (char& ch : out) {
    if (ch == ',') ch = ';';
    if (ch == '\n' || ch == '\r' || ch == '"') ch = ' ';
  }
  return out;
}

absl::StatusOr<CellOutcome> RunCellWith(const ExperimentPlan& plan, Method method,
                                        double epsilon, const TrialData& data,
                                        uint64_t seed,
                                        std::shared_ptr<const DesignMatrix> pool) {
  switch (method) {
    case Method::kIght:
      return RunIghtCell(plan, data);
    case Method::kDpIght:
      return RunDpIghtCell(plan, epsilon, data, seed);
    case Method::kDpslKt:
      return RunDpslKtCell(plan, epsilon, data, seed, std::move(pool));
  }
  return absl::InternalError("unknown method");
}

struct TrialOutput {
  std::vector<ResultRow> rows;
  std::vector<CellReceipt> receipts;
  int failed = 0;
};

TrialOutput RunTrial(const ExperimentPlan& plan, const Sources& src, int trial) {
  TrialOutput out;
  const uint64_t trial_seed = TrialSeed(plan.master_seed, trial);
  auto fail = [&](Method method, double eps, uint64_t seed, const absl::Status& status) {
    ResultRow row{std::string(MethodName(method)), eps, plan.delta, trial, seed,
                  absl::StrCat("failed:", Sanitize(status.ToString())),
                  std::numeric_limits<double>::quiet_NaN(), 0.0};
    out.rows.push_back(std::move(row));
    ++out.failed;
  };

  absl::StatusOr<TrialData> data = Materialize(plan, src, trial);
  if (!data.ok()) {
    for (Method method : plan.methods) {
      for (size_t e = 0; e < plan.epsilons.size(); ++e) {
        fail(method, plan.epsilons[e], CellSeed(trial_seed, method, e), data.status());
      }
    }
    return out;
  }

  auto emit = [&](Method method, double eps, uint64_t seed, const CellOutcome& outcome,
                  double wall_ms) {
    for (const auto& [name, value] : CellMetrics(plan, outcome, *data)) {
      out.rows.push_back(ResultRow{std::string(MethodName(method)), eps, plan.delta, trial,
                                   seed, name, value, wall_ms});
    }
    if (outcome.receipt.has_value()) {
      out.receipts.push_back(
          CellReceipt{std::string(MethodName(method)), eps, trial, *outcome.receipt});
    }
  };

  for (Method method : plan.methods) {
    // The non-private fit ignores epsilon, so it runs once per trial.
    std::optional<absl::StatusOr<CellOutcome>> shared;
    double shared_ms = 0.0;
    for (size_t e = 0; e < plan.epsilons.size(); ++e) {
      const double eps = plan.epsilons[e];
      const uint64_t seed = CellSeed(trial_seed, method, method == Method::kIght ? 0 : e);
      absl::StatusOr<CellOutcome> outcome = absl::UnknownError("not run");
      double wall_ms = 0.0;
      if (method == Method::kIght && shared.has_value()) {
        outcome = *shared;
        wall_ms = shared_ms;
      } else {
        const auto start = std::chrono::steady_clock::now();
        outcome = RunCellWith(plan, method, eps, *data, seed, src.pool);
        if (plan.record_wall_time) {
          wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        }
        if (method == Method::kIght) {
          shared = outcome;
          shared_ms = wall_ms;
        }
      }
      if (!outcome.ok()) {
        fail(method, eps, seed, outcome.status());
        continue;
      }
      emit(method, eps, seed, *outcome, wall_ms);
    }
  }
  return out;
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kIght:
      return "ight";
    case Method::kDpIght:
      return "dp_ight";
    case Method::kDpslKt:
      return "dpsl_kt";
  }
  return "unknown";
}

absl::StatusOr<Method> ParseMethod(std::string_view name) {
  if (name == "ight") return Method::kIght;
  if (name == "dp_ight") return Method::kDpIght;
  if (name == "dpsl_kt") return Method::kDpslKt;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown method '", ToAbsl(name), "' (expected ight, dp_ight or dpsl_kt)"));
}

absl::Status ValidatePlan(const ExperimentPlan& plan) {
  if (plan.epsilons.empty()) return absl::InvalidArgumentError("epsilons must be nonempty");
  for (double e : plan.epsilons) {
    if (!(e > 0.0)) return absl::InvalidArgumentError("every epsilon must be > 0");
  }
  if (!(plan.delta > 0.0 && plan.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (plan.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (plan.methods.empty()) return absl::InvalidArgumentError("methods must be nonempty");
  if (plan.threads < 1) return absl::InvalidArgumentError("threads must be >= 1");
  if (plan.test_size < 0) return absl::InvalidArgumentError("test_size must be >= 0");
  if (plan.only_trial.has_value() &&
      (*plan.only_trial < 0 || *plan.only_trial >= plan.trials)) {
    return absl::InvalidArgumentError("only_trial must lie in [0, trials)");
  }
  if (const auto* spec = std::get_if<SynthSpec>(&plan.data)) {
    DPKT_RETURN_IF_ERROR(ValidateSynthSpec(*spec));
    if (plan.task == LossKind::kLogistic && !std::holds_alternative<LogisticLabels>(spec->task)) {
      return absl::InvalidArgumentError("logistic task needs logistic labels");
    }
    if (plan.task == LossKind::kLinear && !std::holds_alternative<LinearNoise>(spec->task)) {
      return absl::InvalidArgumentError("linear task needs linear labels");
    }
  } else if (!plan.sparsity.has_value()) {
    return absl::InvalidArgumentError("file data needs an explicit sparsity");
  }
  if (PlanSparsity(plan) < 1) return absl::InvalidArgumentError("sparsity must be >= 1");
  if (plan.dp_ight.step_rule == StepRule::kSpectral) {
    return absl::InvalidArgumentError(
        "dp_ight.step_rule=spectral would read the private data; use theory or fixed");
  }
  if (plan.dp_ight.iterations < 1) {
    return absl::InvalidArgumentError("dp_ight.iterations must be >= 1");
  }
  if (plan.ight.max_iters < 1 || plan.dpsl_kt.teacher_iters < 1 ||
      plan.dpsl_kt.student_iters < 1) {
    return absl::InvalidArgumentError("iteration counts must be >= 1");
  }
  return absl::OkStatus();
}

uint64_t TrialSeed(uint64_t master_seed, int trial) {
  return Rng(master_seed).Split(Stream::kTrial).Split(static_cast<uint64_t>(trial)).seed();
}

uint64_t CellSeed(uint64_t trial_seed, Method method, size_t epsilon_index) {
  const uint64_t key = (static_cast<uint64_t>(method) << 32) | epsilon_index;
  return Rng(trial_seed).Split(Stream::kCell).Split(key).seed();
}

absl::StatusOr<TrialData> MaterializeTrial(const ExperimentPlan& plan, int trial) {
  DPKT_RETURN_IF_ERROR(ValidatePlan(plan));
  DPKT_ASSIGN_OR_RETURN(Sources src, LoadSources(plan));
  return Materialize(plan, src, trial);
}

absl::StatusOr<CellOutcome> RunCell(const ExperimentPlan& plan, Method method,
                                    double epsilon, const TrialData& data,
                                    uint64_t cell_seed) {
  DPKT_RETURN_IF_ERROR(ValidatePlan(plan));
  std::shared_ptr<const DesignMatrix> pool;
  if (plan.dpsl_kt.synth_pool_path.has_value()) {
    DPKT_ASSIGN_OR_RETURN(Dataset p,
                          ParseLibsvmFile(*plan.dpsl_kt.synth_pool_path, data.train.dim()));
    pool = p.shared_features();
  }
  return RunCellWith(plan, method, epsilon, data, cell_seed, std::move(pool));
}

std::map<std::string, double> CellMetrics(const ExperimentPlan& plan,
                                          const CellOutcome& outcome,
                                          const TrialData& data) {
  std::map<std::string, double> m = outcome.extras;
  m["nnz"] = static_cast<double>(CountNonZeros(outcome.theta));
  if (data.theta_star.has_value()) {
    const ParamVector& truth = *data.theta_star;
    if (absl::StatusOr<double> rel = RelativeEstimationError(outcome.theta, truth); rel.ok()) {
      m["relative_error"] = *rel;
    }
    m["squared_error"] = (outcome.theta - truth).squaredNorm();
    m["support_f1"] = SupportF1(SupportSet::Of(outcome.theta), SupportSet::Of(truth));
  }
  if (data.test.has_value() && data.test->num_examples() > 0) {
    const Eigen::VectorXd z = data.test->features().Multiply(outcome.theta);
    const Eigen::VectorXd& y = data.test->labels();
    if (plan.task == LossKind::kLinear) {
      m["test_mse"] = (z - y).squaredNorm() / static_cast<double>(y.size());
    } else {
      int64_t wrong = 0;
      for (Eigen::Index i = 0; i < y.size(); ++i) wrong += (z[i] > 0.0) != (y[i] > 0.5);
      m["test_error"] = static_cast<double>(wrong) / static_cast<double>(y.size());
    }
  }
  if (outcome.receipt.has_value()) m["sigma2"] = outcome.receipt->sigma2;
  return m;
}

absl::StatusOr<PlanOutput> RunPlan(const ExperimentPlan& plan) {
  DPKT_RETURN_IF_ERROR(ValidatePlan(plan));
  DPKT_ASSIGN_OR_RETURN(Sources src, LoadSources(plan));

  std::vector<int> trials;
  if (plan.only_trial.has_value()) {
    trials.push_back(*plan.only_trial);
  } else {
    for (int t = 0; t < plan.trials; ++t) trials.push_back(t);
  }
  std::vector<TrialOutput> outputs(trials.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < trials.size(); k = next++) {
      outputs[k] = RunTrial(plan, src, trials[k]);
    }
  };
  const int workers = std::min<int>(plan.threads, static_cast<int>(trials.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  PlanOutput out;
  for (TrialOutput& t : outputs) {
    out.failed_cells += t.failed;
    std::move(t.rows.begin(), t.rows.end(), std::back_inserter(out.rows));
    std::move(t.receipts.begin(), t.receipts.end(), std::back_inserter(out.receipts));
  }
  SortRows(&out.rows);
  return out;
}

void SortRows(std::vector<ResultRow>* rows) {
  std::stable_sort(rows->begin(), rows->end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.method, a.epsilon, a.trial, a.metric_name) <
           std::tie(b.method, b.epsilon, b.trial, b.metric_name);
  });
}

std::string FormatCsv(std::vector<ResultRow> rows) {
  SortRows(&rows);
  std::string out = absl::StrCat(kCsvHeader, "\n");
  char buf[128];
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%d,%llu,", r.epsilon, r.delta, r.trial,
                  static_cast<unsigned long long>(r.seed));
    absl::StrAppend(&out, r.method, ",", buf, r.metric_name, ",");
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", r.value, r.wall_time_ms);
    out += buf;
  }
  return out;
}

absl::Status EmitCsv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return absl::UnavailableError(absl::StrCat("cannot open ", path, " for writing"));
  f << FormatCsv(rows);
  f.flush();
  if (!f.good()) return absl::DataLossError(absl::StrCat("write to ", path, " failed"));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> ParseCsv(std::string_view text_in) {
  const absl::string_view text = ToAbsl(text_in);
  std::vector<ResultRow> rows;
  int64_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader) return absl::InvalidArgumentError("unexpected CSV header");
      continue;
    }
    std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    if (f.size() != 8) {
      return absl::InvalidArgumentError(absl::StrCat("CSV line ", line_no, ": expected 8 fields"));
    }
    ResultRow r;
    r.method = std::string(f[0]);
    r.metric_name = std::string(f[5]);
    if (!absl::SimpleAtod(f[1], &r.epsilon) || !absl::SimpleAtod(f[2], &r.delta) ||
        !absl::SimpleAtoi(f[3], &r.trial) || !absl::SimpleAtoi(f[4], &r.seed) ||
        !absl::SimpleAtod(f[6], &r.value) || !absl::SimpleAtod(f[7], &r.wall_time_ms)) {
      return absl::InvalidArgumentError(absl::StrCat("CSV line ", line_no, ": bad number"));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json ReceiptsToJson(const std::vector<CellReceipt>& receipts) {
  nlohmann::json out = nlohmann::json::array();
  for (const CellReceipt& c : receipts) {
    out.push_back({{"method", c.method},
                   {"epsilon", c.epsilon},
                   {"trial", c.trial},
                   {"receipt", ReceiptToJson(c.receipt)}});
  }
  return out;
}

}  // namespace dpkt
