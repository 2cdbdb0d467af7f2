// Copyright 2026 The robctl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robctl/construct.h"
#include "robctl/dp.h"
#include "robctl/error.h"
#include "robctl/instance.h"
#include "robctl/inventory.h"
#include "robctl/io.h"
#include "robctl/lp.h"
#include "robctl/reform.h"
#include "robctl/verify.h"

namespace robctl::cli {
namespace {

// key: value lines followed by a free-form summary.
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    lines_ << key << ": " << value << "\n";
  }
  void add(const std::string& key, double value) { add(key, format(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void summary(const std::string& text) { summary_ << text << "\n"; }

  std::string str() const {
    std::string s = lines_.str();
    if (!summary_.str().empty()) s += "\n" + summary_.str();
    return s;
  }

  static std::string format(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
  }

 private:
  std::ostringstream lines_;
  std::ostringstream summary_;
};

std::string stage_key(int k, const char* field) {
  return "stage" + std::to_string(k) + "." + field;
}

double solve_model(const LpProblem& lp, Report& report, const std::string& key) {
  const LpSolution sol = solve(lp);
  report.add(key + ".status", status_name(sol.status));
  report.add(key + ".variables", lp.num_vars());
  report.add(key + ".rows", lp.num_rows());
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorKind::kUnbounded,
                key + ": model is " + std::string(status_name(sol.status)));
  }
  report.add(key, sol.objective);
  return sol.objective;
}

void cmd_solve_dp(const std::string& path, Report& report) {
  const Instance raw = parse_instance(read_text_file(path));
  const NormalizedInstance norm = normalize(raw);
  const DpSolution dp = solve_dp(norm.instance);
  report.add("horizon", raw.horizon());
  report.add("normalized", norm.record.is_identity() ? "no" : "yes");
  report.add("value", dp.value);
  for (int k = 1; k <= raw.horizon(); ++k) {
    const DpStage& st = dp.stages[k - 1];
    report.add(stage_key(k, "y_low"), st.y_low);
    report.add(stage_key(k, "y_up"), st.y_up);
    report.add(stage_key(k, "lower_threshold"), st.lower_threshold);
    report.add(stage_key(k, "upper_threshold"), st.upper_threshold);
    report.add(stage_key(k, "cost_to_go_pieces"), st.J.size());
  }
  if (raw.has_cumulative_bounds()) {
    report.add("cumulative_bounds", "ignored");
  }
  report.summary("optimal worst-case cost " + Report::format(dp.value) +
                 "; u_k = U below the lower threshold, L above the upper one,"
                 " y_low - x in between.");
}

void cmd_construct(const std::string& path, const std::string& out_path,
                   Report& report) {
  const Instance raw = parse_instance(read_text_file(path));
  const NormalizedInstance norm = normalize(raw);
  const DpSolution dp = solve_dp(norm.instance);
  const PolicyBundle bundle = forward_induction(norm.instance, dp);
  report.add("horizon", raw.horizon());
  report.add("dp_value", dp.value);
  report.add("value", bundle.value);
  for (int k = 1; k <= raw.horizon(); ++k) {
    const StageCertificate& cert = bundle.certificates[k - 1];
    report.add(stage_key(k, "case"), case_name(bundle.cases[k - 1].tag));
    report.add(stage_key(k, "q"), bundle.q[k - 1].to_string());
    report.add(stage_key(k, "z"), bundle.z[k - 1].to_string());
    report.add(stage_key(k, "q_range"), "[" + Report::format(cert.range_low) +
                                            ", " + Report::format(cert.range_up) + "]");
    report.add(stage_key(k, "domination_slack"), cert.domination_slack);
  }
  if (raw.horizon() <= kMaxEnumerationHorizon) {
    report.add("worst_case_convex",
               worst_case_eval(bundle, norm.instance, CostMode::kConvex).value);
    report.add("worst_case_affine",
               worst_case_eval(bundle, norm.instance, CostMode::kAffine).value);
  }
  if (raw.has_cumulative_bounds()) {
    report.add("cumulative_bounds", "ignored");
  }
  if (!out_path.empty()) write_text_file(out_path, serialize_bundle(bundle));
  report.summary("affine policy certified at value " +
                 Report::format(bundle.value) + " (dynamic programming value " +
                 Report::format(dp.value) + ").");
}

void cmd_lp(const std::string& path, const std::string& model, bool cumulative,
            Report& report) {
  const Instance inst = parse_instance(read_text_file(path));
  if (model == "aarc") {
    solve_model(build_aarc(inst, cumulative).lp, report, "aarc");
  } else if (model == "scenario-exact") {
    solve_model(build_scenario_exact(inst, cumulative), report, "scenario_exact");
  } else {
    solve_model(build_affine_policy_scenario(inst, cumulative), report,
                "affine_scenario");
  }
  report.add("cumulative", cumulative ? "yes" : "no");
}

void cmd_counterexample(bool without_cumulative, Report& report) {
  const bool cum = !without_cumulative;
  const Instance inst = counterexample_instance(cum);
  const double exact = solve_model(build_scenario_exact(inst, cum), report,
                                   "scenario_exact");
  const double affine = solve_model(build_affine_policy_scenario(inst, cum),
                                    report, "affine_scenario");
  const double aarc = solve_model(build_aarc(inst, cum).lp, report, "aarc");
  const double gap = 100.0 * (aarc / exact - 1.0);
  report.add("gap_percent", gap);
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << "scenario-exact " << exact
     << ", affine-scenario " << affine << ", aarc " << aarc
     << std::setprecision(2) << ", gap " << gap << "%";
  report.summary(os.str());
}

void cmd_inventory(const std::string& path, Report& report) {
  const RsfcSpec spec = parse_rsfc(read_text_file(path));
  const Instance raw = build_instance(spec);
  const NormalizedInstance norm = normalize(raw);
  const DpSolution dp = solve_dp(norm.instance);
  const PolicyBundle bundle = forward_induction(norm.instance, dp);
  const MemoryReport mem = memory_report(bundle, norm.instance, norm.record);
  report.add("horizon", raw.horizon());
  report.add("value", bundle.value);
  report.add("memory_ok", mem.ok() ? "yes" : "no");
  for (const std::string& v : mem.violations) report.add("violation", v);

  std::ostringstream table;
  table << "order coefficients q[k][t] on past demands w_t\n";
  table << std::setw(6) << "k\\t";
  for (int t = 1; t < raw.horizon(); ++t) table << std::setw(10) << t;
  table << "\n";
  for (int k = 1; k <= raw.horizon(); ++k) {
    table << std::setw(6) << k;
    for (int t = 1; t < raw.horizon(); ++t) {
      if (t < k) {
        const double q = mem.q[k - 1][t - 1];
        table << std::setw(10) << std::fixed << std::setprecision(4)
              << (std::abs(q) < 5e-5 ? 0.0 : q);
      } else {
        table << std::setw(10) << "-";
      }
    }
    table << "\n";
  }
  std::string text = table.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  report.summary(text);
}

void cmd_export_lp(const std::string& path, const std::string& model,
                   bool cumulative, const std::string& out_path,
                   Report& report) {
  const Instance inst = parse_instance(read_text_file(path));
  LpProblem lp;
  if (model == "aarc") {
    lp = build_aarc(inst, cumulative).lp;
  } else if (model == "scenario-exact") {
    lp = build_scenario_exact(inst, cumulative);
  } else {
    lp = build_affine_policy_scenario(inst, cumulative);
  }
  std::ostringstream os;
  write_lp_text(lp, os);
  write_text_file(out_path, os.str());
  report.add("model", model);
  report.add("variables", lp.num_vars());
  report.add("rows", lp.num_rows());
  report.add("file", out_path);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return kExitParse;
    case ErrorKind::kUnbounded:
      return kExitInfeasible;
    case ErrorKind::kCapability:
      return kExitCapability;
    case ErrorKind::kInternal:
      break;
  }
  return kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Minimax robust control: dynamic programming, affine policies "
               "and LP reformulations", "robctl"};
  app.require_subcommand(1);
  std::string report_path;
  app.add_option("--report", report_path, "Also write the report to FILE");

  const std::vector<std::string> models{"aarc", "scenario-exact",
                                        "affine-scenario"};
  std::string instance_path;
  std::string out_path;
  std::string model;
  bool cumulative = false;
  bool without_cumulative = false;

  auto* solve_dp_cmd = app.add_subcommand("solve-dp", "Dynamic programming value and thresholds");
  solve_dp_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);

  auto* construct_cmd = app.add_subcommand("construct", "Certified affine policies");
  construct_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  construct_cmd->add_option("--out", out_path, "Write the policy coefficients as JSON");

  auto* aarc_cmd = app.add_subcommand("solve-aarc", "Affinely adjustable robust counterpart LP");
  aarc_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  aarc_cmd->add_flag("--cumulative", cumulative, "Impose cumulative control bounds");

  auto* exact_cmd = app.add_subcommand("scenario-exact", "Scenario-tree LP with non-anticipative controls");
  exact_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  exact_cmd->add_flag("--cumulative", cumulative, "Impose cumulative control bounds");

  auto* affine_cmd = app.add_subcommand("affine-scenario", "Scenario-tree LP with affine policies");
  affine_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  affine_cmd->add_flag("--cumulative", cumulative, "Impose cumulative control bounds");

  auto* cex_cmd = app.add_subcommand("counterexample", "Built-in instance where affine policies are suboptimal");
  cex_cmd->add_flag("--without-cumulative", without_cumulative, "Drop the cumulative bounds");

  auto* inv_cmd = app.add_subcommand("inventory-demo", "Retailer instance and demand-memory report");
  inv_cmd->add_option("spec", instance_path)->required()->check(CLI::ExistingFile);

  auto* export_cmd = app.add_subcommand("export-lp", "Write an LP model as text");
  export_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--model", model)->required()->check(CLI::IsMember(models));
  export_cmd->add_option("--out", out_path)->required();
  export_cmd->add_flag("--cumulative", cumulative, "Impose cumulative control bounds");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  Report report;
  try {
    if (solve_dp_cmd->parsed()) {
      cmd_solve_dp(instance_path, report);
    } else if (construct_cmd->parsed()) {
      cmd_construct(instance_path, out_path, report);
    } else if (aarc_cmd->parsed()) {
      cmd_lp(instance_path, "aarc", cumulative, report);
    } else if (exact_cmd->parsed()) {
      cmd_lp(instance_path, "scenario-exact", cumulative, report);
    } else if (affine_cmd->parsed()) {
      cmd_lp(instance_path, "affine-scenario", cumulative, report);
    } else if (cex_cmd->parsed()) {
      cmd_counterexample(without_cumulative, report);
    } else if (inv_cmd->parsed()) {
      cmd_inventory(instance_path, report);
    } else if (export_cmd->parsed()) {
      cmd_export_lp(instance_path, model, cumulative, out_path, report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  const std::string text = report.str();
  out << text;
  if (!report_path.empty()) {
    std::ofstream file(report_path);
    if (!file) {
      err << "error: cannot write " << report_path << "\n";
      return kExitFailure;
    }
    file << text;
  }
  return kExitOk;
}

}  // namespace robctl::cli
