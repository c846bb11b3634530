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

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpkt/harness.h"
#include "dpkt/status_macros.h"
#include "string_compat.h"

namespace dpkt {
namespace {

// Collects keys whose meaning depends on other keys; assembled at the end.
struct Builder {
  ExperimentPlan plan;
  std::string data_kind = "synthetic";
  SynthSpec spec;
  double nu2 = 0.1;
  LabelSign sign = LabelSign::kModel;
  FileData file;
  std::string lambda_mode = "rule";
  double lambda_c = 1.0;
  double lambda = 0.0;
  double mu = 0.0;
};

absl::Status Bad(std::string_view key, std::string_view value, std::string_view want) {
  return absl::InvalidArgumentError(absl::StrCat("config key '", ToAbsl(key), "': cannot parse '",
                                                 ToAbsl(value), "' as ", ToAbsl(want)));
}

absl::StatusOr<double> Real(std::string_view key, std::string_view v) {
  double out;
  if (!absl::SimpleAtod(ToAbsl(v), &out) || std::isnan(out)) return Bad(key, v, "a number");
  return out;
}

template <typename Int>
absl::StatusOr<Int> Integer(std::string_view key, std::string_view v) {
  Int out;
  if (!absl::SimpleAtoi(ToAbsl(v), &out)) return Bad(key, v, "an integer");
  return out;
}

absl::StatusOr<bool> Bool(std::string_view key, std::string_view v) {
  bool out;
  if (!absl::SimpleAtob(ToAbsl(v), &out)) return Bad(key, v, "a boolean");
  return out;
}

absl::StatusOr<std::optional<double>> OptionalReal(std::string_view key, std::string_view v) {
  if (v == "none" || v == "auto") return std::optional<double>();
  DPKT_ASSIGN_OR_RETURN(double x, Real(key, v));
  return std::optional<double>(x);
}

using Setter = std::function<absl::Status(Builder&, std::string_view key, std::string_view v)>;

struct KeySpec {
  const char* key;
  const char* help;
  Setter set;
};

#define DPKT_REAL(field)                                        \
  [](Builder& b, std::string_view k, std::string_view v) {      \
    DPKT_ASSIGN_OR_RETURN(b.field, Real(k, v));                 \
    return absl::OkStatus();                                    \
  }
#define DPKT_INT(type, field)                                   \
  [](Builder& b, std::string_view k, std::string_view v) {      \
    DPKT_ASSIGN_OR_RETURN(b.field, Integer<type>(k, v));        \
    return absl::OkStatus();                                    \
  }
#define DPKT_PARSED(fn, field)                                  \
  [](Builder& b, std::string_view, std::string_view v) {        \
    DPKT_ASSIGN_OR_RETURN(b.field, fn(v));                      \
    return absl::OkStatus();                                    \
  }

const std::vector<KeySpec>& Keys() {
  static const auto* keys = new std::vector<KeySpec>{
      {"task", "linear or logistic", DPKT_PARSED(ParseLossKind, plan.task)},
      {"data", "synthetic or file",
       [](Builder& b, std::string_view k, std::string_view v) {
         if (v != "synthetic" && v != "file") return Bad(k, v, "synthetic or file");
         b.data_kind = std::string(v);
         return absl::OkStatus();
       }},
      {"n", "synthetic training examples per trial", DPKT_INT(int64_t, spec.n)},
      {"d", "synthetic dimension", DPKT_INT(int64_t, spec.d)},
      {"s_star", "nonzeros in the synthetic theta*", DPKT_INT(int64_t, spec.s_star)},
      {"nu2", "linear label noise variance", DPKT_REAL(nu2)},
      {"label_sign", "logistic labels: model or flipped", DPKT_PARSED(ParseLabelSign, sign)},
      {"theta_scale", "theta* scale: raw or unit", DPKT_PARSED(ParseThetaScale, spec.theta_scale)},
      {"test_size", "held-out synthetic examples per trial", DPKT_INT(int64_t, plan.test_size)},
      {"train_path", "libsvm training file (data=file)",
       [](Builder& b, std::string_view, std::string_view v) {
         b.file.train_path = std::string(v);
         return absl::OkStatus();
       }},
      {"test_path", "libsvm test file (data=file)",
       [](Builder& b, std::string_view, std::string_view v) {
         b.file.test_path = std::string(v);
         return absl::OkStatus();
       }},
      {"dim", "feature dimension for libsvm files (default: largest index)",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(int64_t d, Integer<int64_t>(k, v));
         b.file.dim = d;
         return absl::OkStatus();
       }},
      {"methods", "comma list of ight, dp_ight, dpsl_kt",
       [](Builder& b, std::string_view, std::string_view v) {
         b.plan.methods.clear();
         for (absl::string_view m : absl::StrSplit(ToAbsl(v), ',', absl::SkipWhitespace())) {
           DPKT_ASSIGN_OR_RETURN(Method method, ParseMethod(ToStd(absl::StripAsciiWhitespace(m))));
           b.plan.methods.push_back(method);
         }
         return absl::OkStatus();
       }},
      {"epsilons", "comma list of privacy budgets",
       [](Builder& b, std::string_view k, std::string_view v) {
         b.plan.epsilons.clear();
         for (absl::string_view e : absl::StrSplit(ToAbsl(v), ',', absl::SkipWhitespace())) {
           DPKT_ASSIGN_OR_RETURN(double eps, Real(k, ToStd(absl::StripAsciiWhitespace(e))));
           b.plan.epsilons.push_back(eps);
         }
         return absl::OkStatus();
       }},
      {"delta", "privacy delta", DPKT_REAL(plan.delta)},
      {"trials", "trials per (method, epsilon)", DPKT_INT(int, plan.trials)},
      {"master_seed", "seed every trial is split from", DPKT_INT(uint64_t, plan.master_seed)},
      {"output", "CSV output path",
       [](Builder& b, std::string_view, std::string_view v) {
         b.plan.output_path = std::string(v);
         return absl::OkStatus();
       }},
      {"sparsity", "solver sparsity s (default s_star)",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(int64_t s, Integer<int64_t>(k, v));
         b.plan.sparsity = s;
         return absl::OkStatus();
       }},
      {"stop_tol", "relative iterate-change stop, or none",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(b.plan.stop_tol, OptionalReal(k, v));
         return absl::OkStatus();
       }},
      {"threads", "worker threads across trials", DPKT_INT(int, plan.threads)},
      {"grid", "cross-validate lambda and DP-IGHT step on an 80/20 split",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(b.plan.grid, Bool(k, v));
         return absl::OkStatus();
       }},
      {"record_wall_time", "fill wall_time_ms (breaks byte-identical reruns)",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(b.plan.record_wall_time, Bool(k, v));
         return absl::OkStatus();
       }},
      {"only_trial", "run a single trial index",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(int t, Integer<int>(k, v));
         b.plan.only_trial = t;
         return absl::OkStatus();
       }},
      {"ight.step_rule", "theory, spectral or fixed",
       DPKT_PARSED(ParseStepRule, plan.ight.step_rule)},
      {"ight.step_size", "step when step_rule=fixed", DPKT_REAL(plan.ight.step_size)},
      {"ight.ridge", "ridge weight of the non-private fit", DPKT_REAL(plan.ight.ridge)},
      {"ight.max_iters", "iteration budget", DPKT_INT(int, plan.ight.max_iters)},
      {"dp_ight.step_rule", "theory or fixed",
       DPKT_PARSED(ParseStepRule, plan.dp_ight.step_rule)},
      {"dp_ight.step_size", "step when step_rule=fixed", DPKT_REAL(plan.dp_ight.step_size)},
      {"dp_ight.iterations", "noisy steps T", DPKT_INT(int, plan.dp_ight.iterations)},
      {"dp_ight.clip_l2", "per-example gradient clip, or auto (max row l2 norm)",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(b.plan.dp_ight.clip_l2, OptionalReal(k, v));
         return absl::OkStatus();
       }},
      {"dpsl_kt.teacher_step_rule", "theory, spectral or fixed",
       DPKT_PARSED(ParseStepRule, plan.dpsl_kt.teacher_step_rule)},
      {"dpsl_kt.teacher_step_size", "teacher step when fixed",
       DPKT_REAL(plan.dpsl_kt.teacher_step_size)},
      {"dpsl_kt.teacher_iters", "teacher iteration budget",
       DPKT_INT(int, plan.dpsl_kt.teacher_iters)},
      {"dpsl_kt.student_step_rule", "theory, spectral or fixed",
       DPKT_PARSED(ParseStepRule, plan.dpsl_kt.student_step_rule)},
      {"dpsl_kt.student_step_size", "student step when fixed",
       DPKT_REAL(plan.dpsl_kt.student_step_size)},
      {"dpsl_kt.student_iters", "student iteration budget",
       DPKT_INT(int, plan.dpsl_kt.student_iters)},
      {"dpsl_kt.lambda_mode", "rule, explicit or rsc",
       [](Builder& b, std::string_view k, std::string_view v) {
         if (v != "rule" && v != "explicit" && v != "rsc") {
           return Bad(k, v, "rule, explicit or rsc");
         }
         b.lambda_mode = std::string(v);
         return absl::OkStatus();
       }},
      {"dpsl_kt.lambda_c", "constant of the lambda rule", DPKT_REAL(lambda_c)},
      {"dpsl_kt.lambda", "ridge weight when lambda_mode=explicit", DPKT_REAL(lambda)},
      {"dpsl_kt.mu", "strong convexity when lambda_mode=rsc", DPKT_REAL(mu)},
      {"dpsl_kt.m", "synthetic sample count (default n)",
       [](Builder& b, std::string_view k, std::string_view v) {
         DPKT_ASSIGN_OR_RETURN(int64_t m, Integer<int64_t>(k, v));
         b.plan.dpsl_kt.m = m;
         return absl::OkStatus();
       }},
      {"dpsl_kt.synth", "uniform, gaussian or empirical",
       DPKT_PARSED(ParseSynthKind, plan.dpsl_kt.synth)},
      {"dpsl_kt.tau2", "coordinate variance for synth=gaussian", DPKT_REAL(plan.dpsl_kt.tau2)},
      {"dpsl_kt.synth_pool", "public libsvm rows for synth=empirical",
       [](Builder& b, std::string_view, std::string_view v) {
         b.plan.dpsl_kt.synth_pool_path = std::string(v);
         return absl::OkStatus();
       }},
      {"dpsl_kt.safety_factor", "inflation of the estimated beta_tilde",
       DPKT_REAL(plan.dpsl_kt.safety_factor)},
      {"dpsl_kt.c_gamma", "constant of the linear gamma bound", DPKT_REAL(plan.dpsl_kt.c_gamma)},
      {"dpsl_kt.c3", "teacher step constant", DPKT_REAL(plan.dpsl_kt.c3)},
      {"dpsl_kt.c4", "student step constant", DPKT_REAL(plan.dpsl_kt.c4)},
      {"dpsl_kt.sample_size_c", "requires m >= c s ln d",
       DPKT_REAL(plan.dpsl_kt.sample_size_c)},
  };
  return *keys;
}

#undef DPKT_REAL
#undef DPKT_INT
#undef DPKT_PARSED

}  // namespace

absl::StatusOr<ConfigMap> ParseConfigText(std::string_view text_in) {
  const absl::string_view text = ToAbsl(text_in);
  ConfigMap out;
  int64_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = raw.substr(0, raw.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": expected key = value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (key.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("config line ", line_no, ": empty key"));
    }
    if (!out.emplace(key, value).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": duplicate key '", key, "'"));
    }
  }
  return out;
}

absl::StatusOr<ConfigMap> ParseConfigFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) return absl::NotFoundError(absl::StrCat("cannot open config ", path));
  std::ostringstream buf;
  buf << f.rdbuf();
  return ParseConfigText(buf.str());
}

absl::Status ApplyOverrides(const std::vector<std::string>& overrides, ConfigMap* base) {
  for (absl::string_view o : overrides) {
    if (absl::StartsWith(o, "--")) o.remove_prefix(2);
    const size_t eq = o.find('=');
    if (eq == absl::string_view::npos || eq == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("override '", o, "' is not of the form --key=value"));
    }
    (*base)[std::string(o.substr(0, eq))] = std::string(o.substr(eq + 1));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentPlan> PlanFromConfig(const ConfigMap& config) {
  Builder b;
  for (const auto& [key, value] : config) {
    const auto& keys = Keys();
    auto it = std::find_if(keys.begin(), keys.end(),
                           [&](const KeySpec& k) { return key == k.key; });
    if (it == keys.end()) {
      return absl::InvalidArgumentError(absl::StrCat("unknown config key '", key, "'"));
    }
    DPKT_RETURN_IF_ERROR(it->set(b, key, value));
  }

  ExperimentPlan plan = std::move(b.plan);
  if (plan.task == LossKind::kLogistic && !config.contains("epsilons")) {
    plan.epsilons = {2.0, 4.0, 6.0, 8.0, 10.0};
  }
  if (b.data_kind == "synthetic") {
    if (plan.task == LossKind::kLinear) {
      b.spec.task = LinearNoise{b.nu2};
    } else {
      b.spec.task = LogisticLabels{b.sign};
    }
    plan.data = b.spec;
  } else {
    if (b.file.train_path.empty()) {
      return absl::InvalidArgumentError("data=file needs train_path");
    }
    plan.data = b.file;
  }
  if (b.lambda_mode == "rule") {
    plan.dpsl_kt.lambda_mode = LambdaRuleMode{b.lambda_c};
  } else if (b.lambda_mode == "explicit") {
    plan.dpsl_kt.lambda_mode = ExplicitLambda{b.lambda};
  } else {
    plan.dpsl_kt.lambda_mode = RscMode{b.mu};
  }
  DPKT_RETURN_IF_ERROR(ValidatePlan(plan));
  return plan;
}

const std::vector<std::pair<std::string, std::string>>& PlanConfigKeys() {
  static const auto* out = [] {
    auto* v = new std::vector<std::pair<std::string, std::string>>();
    for (const KeySpec& k : Keys()) v->emplace_back(k.key, k.help);
    return v;
  }();
  return *out;
}

}  // namespace dpkt
