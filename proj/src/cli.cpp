#include "ivt/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivt/core.hpp"
#include "ivt/expr.hpp"
#include "ivt/plot.hpp"
#include "ivt/trace_io.hpp"
#include "ivt/verifier.hpp"

namespace ivt::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Signals an exit code from deep inside a command.
struct ExitWith {
  int code;
  std::string message;
};

struct ProblemFlags {
  std::string function;
  std::string a;
  std::string b;
  std::string epsilon;
  int steps = 40;
  std::string backend = "exact";
  int float_bits = 64;
  std::string mode = "interpolated";
  bool stop_early = false;
  unsigned weight_bits = 0;  // 0: weights used as computed
};

void add_problem_flags(CLI::App& cmd, ProblemFlags& f, bool with_mode,
                       bool required) {
  cmd.add_option("--function", f.function, "f(x), e.g. \"min((1+6x^2)/7, 8+9x)\"")
      ->required(required);
  cmd.add_option("--a", f.a, "left endpoint (rational)")->required(required);
  cmd.add_option("--b", f.b, "right endpoint (rational)")->required(required);
  cmd.add_option("--epsilon", f.epsilon, "tolerance (rational, > 0)")
      ->required(required);
  cmd.add_option("--steps", f.steps, "number of steps")->capture_default_str();
  cmd.add_option("--backend", f.backend, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  cmd.add_option("--float-bits", f.float_bits, "float backend precision")
      ->check(CLI::IsMember({32, 64}))
      ->capture_default_str();
  if (with_mode) {
    cmd.add_option("--mode", f.mode, "interpolated or classical")
        ->check(CLI::IsMember({"interpolated", "classical"}))
        ->capture_default_str();
  }
  cmd.add_flag("--stop-early", f.stop_early,
               "stop at the first step with |f(c_n)| < epsilon");
  cmd.add_option("--weight-bits", f.weight_bits,
                 "round interior weights to multiples of 2^-K (0 = off)");
}

Rational parse_rational_flag(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ExitWith{kUsageError, "--" + name + ": " + e.what()};
  }
}

FunctionExpr parse_function_flag(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ExitWith{kUsageError, std::string("--function: ") + e.what()};
  }
}

ProblemConfig<Rational> config_from(const ProblemFlags& f, WeightMode mode) {
  ProblemConfig<Rational> cfg{parse_rational_flag("a", f.a),
                              parse_rational_flag("b", f.b),
                              parse_rational_flag("epsilon", f.epsilon),
                              f.steps,
                              mode,
                              f.stop_early,
                              std::nullopt};
  if (f.weight_bits != 0) cfg.weight_bits = f.weight_bits;
  try {
    validate(cfg);
  } catch (const Error& e) {
    throw ExitWith{kUsageError, e.what()};
  }
  return cfg;
}

WeightMode mode_from(const std::string& s) {
  return s == "classical" ? WeightMode::Classical : WeightMode::Interpolated;
}

ScalarBackend backend_from(const ProblemFlags& f) {
  return ScalarBackend{f.backend == "float" ? BackendKind::Float : BackendKind::Exact,
                       f.float_bits};
}

AnyTrace execute(const ProblemFlags& flags, WeightMode mode, const FunctionExpr& f) {
  const auto cfg = config_from(flags, mode);
  try {
    return run_backend(backend_from(flags), cfg, f);
  } catch (const SignPreconditionViolated& e) {
    throw ExitWith{kPreconditionFailed, e.what()};
  } catch (const Error& e) {
    throw ExitWith{kUsageError, e.what()};
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ExitWith{kUsageError, "cannot open " + path + " for writing"};
  return file;
}

std::string approx(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Earliest step with |f(c_n)| < eps, read from the trace's own values.
template <Scalar T>
std::optional<int> first_witness_step(const Trace<T>& t) {
  for (const auto& s : t.steps) {
    if (abs_value(s.f_c_n) < t.config.epsilon) return s.n;
  }
  return std::nullopt;
}

void print_summary(std::ostream& out, const AnyTrace& trace, const FunctionExpr& f) {
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t.limit_estimate)>;
        out << "steps: " << t.steps.size() << '\n'
            << "limit_estimate: " << to_string(t.limit_estimate) << " (~"
            << approx(ScalarTraits<T>::to_double(t.limit_estimate)) << ")\n"
            << "limit_error_bound: " << to_string(t.limit_error_bound) << " (~"
            << approx(ScalarTraits<T>::to_double(t.limit_error_bound)) << ")\n";
        if constexpr (std::is_same_v<T, Rational>) {
          const auto w = extract_witness(t, f);
          out << "witness: " << witness_kind_name(w.kind);
          if (w.j) out << " j=" << *w.j;
          out << " x=" << w.x.str() << " f(x)=" << w.f_x.str()
              << (w.f_x.abs() < t.config.epsilon ? " (|f(x)| < epsilon)"
                                                 : " (|f(x)| >= epsilon)")
              << '\n';
        } else {
          const auto j = first_witness_step(t);
          out << "witness (float, uncertified): ";
          if (j) {
            out << "midpoint j=" << *j << '\n';
          } else {
            out << "none among midpoints\n";
          }
        }
      },
      trace);
}

int cmd_run(const ProblemFlags& flags, const std::string& out_path,
            std::ostream& out) {
  const FunctionExpr f = parse_function_flag(flags.function);
  const AnyTrace trace = execute(flags, mode_from(flags.mode), f);
  if (out_path.empty()) {
    write_trace_jsonl(out, trace, f.str());
    return kOk;
  }
  {
    std::ofstream file = open_out(out_path);
    write_trace_jsonl(file, trace, f.str());
  }
  print_summary(out, trace, f);
  return kOk;
}

int cmd_compare(const ProblemFlags& flags, bool csv, std::ostream& out) {
  const FunctionExpr f = parse_function_flag(flags.function);
  auto interp_job = std::async(std::launch::async, [&] {
    return execute(flags, WeightMode::Interpolated, f);
  });
  auto classical_job = std::async(std::launch::async, [&] {
    return execute(flags, WeightMode::Classical, f);
  });
  const AnyTrace interp = interp_job.get();
  const AnyTrace classical = classical_job.get();

  std::visit(
      [&](const auto& ti) {
        using T = std::decay_t<decltype(ti.limit_estimate)>;
        const auto& tc = std::get<Trace<T>>(classical);
        const std::size_t rows = std::max(ti.steps.size(), tc.steps.size());
        auto cell = [&](const auto& steps, std::size_t i, auto field) -> std::string {
          if (i >= steps.size()) return "";
          return csv ? to_string(field(steps[i]))
                     : approx(ScalarTraits<T>::to_double(field(steps[i])));
        };
        auto c_of = [](const auto& s) { return s.c_n; };
        auto f_of = [](const auto& s) { return s.f_c_n; };
        auto d_of = [](const auto& s) { return s.d_n; };
        if (csv) {
          out << "n,c_interp,f_interp,d_interp,c_classical,f_classical\n";
          for (std::size_t i = 0; i < rows; ++i) {
            out << (i + 1) << ',' << cell(ti.steps, i, c_of) << ','
                << cell(ti.steps, i, f_of) << ',' << cell(ti.steps, i, d_of) << ','
                << cell(tc.steps, i, c_of) << ',' << cell(tc.steps, i, f_of) << '\n';
          }
          return;
        }
        out << std::left << std::setw(4) << "n" << std::setw(18) << "c_interp"
            << std::setw(18) << "f_interp" << std::setw(18) << "d_interp"
            << std::setw(18) << "c_classical" << std::setw(18) << "f_classical"
            << '\n';
        for (std::size_t i = 0; i < rows; ++i) {
          out << std::setw(4) << (i + 1) << std::setw(18) << cell(ti.steps, i, c_of)
              << std::setw(18) << cell(ti.steps, i, f_of) << std::setw(18)
              << cell(ti.steps, i, d_of) << std::setw(18) << cell(tc.steps, i, c_of)
              << std::setw(18) << cell(tc.steps, i, f_of) << '\n';
        }
        auto witness_text = [](const std::optional<int>& j) {
          return j ? "step " + std::to_string(*j) : std::string("none");
        };
        out << "first witness: interpolated " << witness_text(first_witness_step(ti))
            << ", classical " << witness_text(first_witness_step(tc)) << '\n';
      },
      interp);
  return kOk;
}

ordered_json outcome_json(const ClaimOutcome& o) {
  ordered_json j;
  j["m"] = o.m;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, WitnessFound>) {
          j["case"] = "witness";
          j["j"] = r.j;
          j["value"] = r.value.str();
        } else if constexpr (std::is_same_v<R, SignsStraddle>) {
          j["case"] = "straddle";
          j["f_a_m"] = r.f_a_m.str();
          j["f_b_m"] = r.f_b_m.str();
        } else {
          j["case"] = "violation";
          j["detail"] = r.detail;
        }
      },
      o.result);
  return j;
}

int cmd_verify(const std::string& trace_path, const std::string& function_text,
               const std::string& delta_text, int m, std::ostream& out) {
  std::ifstream file(trace_path, std::ios::binary);
  if (!file) throw ExitWith{kUsageError, "cannot open " + trace_path};
  LoadedTrace loaded;
  try {
    loaded = read_trace_jsonl(file);
  } catch (const std::exception& e) {
    throw ExitWith{kUsageError, std::string("malformed trace: ") + e.what()};
  }
  std::string text = function_text;
  if (text.empty()) {
    if (!loaded.function_text) {
      throw ExitWith{kUsageError, "--function is required (trace carries none)"};
    }
    text = *loaded.function_text;
  }
  const FunctionExpr f = parse_function_flag(text);
  const auto* trace = std::get_if<ExactTrace>(&loaded.trace);
  if (trace == nullptr) throw ExitWith{kUsageError, BackendNotExact().what()};

  ordered_json report;
  report["function"] = f.str();
  report["steps"] = trace->steps.size();

  const auto outcomes = check_claim(*trace, f);
  bool violated = false;
  ordered_json claims = ordered_json::array();
  for (const auto& o : outcomes) {
    violated = violated || o.is_violation();
    claims.push_back(outcome_json(o));
  }
  report["claim"] = std::move(claims);

  const auto problems = check_structure(*trace, f);
  report["structure"] = {{"ok", problems.empty()}, {"violations", problems}};
  violated = violated || !problems.empty();

  try {
    const auto w = extract_witness(*trace, f);
    ordered_json wj;
    wj["kind"] = witness_kind_name(w.kind);
    if (w.j) wj["j"] = *w.j;
    wj["x"] = w.x.str();
    wj["f_x"] = w.f_x.str();
    wj["below_epsilon"] = w.f_x.abs() < trace->config.epsilon;
    report["witness"] = std::move(wj);
  } catch (const EvalError& e) {
    report["witness"] = {{"error", e.what()}};
    violated = true;
  }

  if (!delta_text.empty() || m != 0) {
    if (delta_text.empty() || m == 0) {
      throw ExitWith{kUsageError, "--delta and --m must be given together"};
    }
    const Rational delta = parse_rational_flag("delta", delta_text);
    ContinuityBudget budget;
    try {
      budget = continuity_budget_check(*trace, delta, m);
    } catch (const Error& e) {
      throw ExitWith{kUsageError, e.what()};
    }
    ordered_json bj;
    bj["delta"] = budget.delta.str();
    bj["m"] = budget.m;
    bj["half_delta"] = budget.half_delta.str();
    bj["limit_term"] = budget.limit_term.str();
    bj["limit_term_below_half_delta"] = budget.half_delta_checks.first;
    bj["width_term"] = budget.width_term.str();
    bj["width_term_below_half_delta"] = budget.half_delta_checks.second;
    report["budget"] = std::move(bj);
  }

  const bool final_ok = !outcomes.empty() && !outcomes.back().is_violation();
  report["ok"] = !violated && final_ok;
  out << report.dump(2) << '\n';
  return violated || !final_ok ? kInvariantViolated : kOk;
}

struct PlotFlags {
  std::string trace_path;
  std::string out_path;
  double x_min = -1;
  double x_max = 1;
  double y_min = -1;
  double y_max = 1;
};

int cmd_plot(const ProblemFlags& flags, const PlotFlags& pf, std::ostream& out) {
  PlotSpec spec{FunctionExpr::var(), ExactTrace{}, {-1.0, 1.0}, {-1.0, 1.0}, std::nullopt, PlotStyle{}};
  if (!pf.trace_path.empty()) {
    std::ifstream file(pf.trace_path, std::ios::binary);
    if (!file) throw ExitWith{kUsageError, "cannot open " + pf.trace_path};
    LoadedTrace loaded;
    try {
      loaded = read_trace_jsonl(file);
    } catch (const std::exception& e) {
      throw ExitWith{kUsageError, std::string("malformed trace: ") + e.what()};
    }
    std::string text = flags.function;
    if (text.empty() && loaded.function_text) text = *loaded.function_text;
    if (text.empty()) throw ExitWith{kUsageError, "--function is required"};
    spec.function = parse_function_flag(text);
    spec.trace = std::move(loaded.trace);
  } else {
    if (flags.function.empty() || flags.a.empty() || flags.b.empty() ||
        flags.epsilon.empty()) {
      throw ExitWith{kUsageError,
                     "plot needs --trace or --function, --a, --b and --epsilon"};
    }
    spec.function = parse_function_flag(flags.function);
    spec.trace = execute(flags, mode_from(flags.mode), spec.function);
  }
  spec.x_range = {pf.x_min, pf.x_max};
  spec.y_range = {pf.y_min, pf.y_max};
  std::string svg;
  try {
    svg = render_trace_svg(spec);
  } catch (const Error& e) {
    throw ExitWith{kUsageError, e.what()};
  }
  if (pf.out_path.empty()) {
    out << svg;
  } else {
    std::ofstream file = open_out(pf.out_path);
    file << svg;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Interpolated bisection for the approximate intermediate value theorem",
               "ivt"};
  app.require_subcommand(1);

  ProblemFlags run_flags;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "run the iteration and write a JSONL trace");
  add_problem_flags(*run_cmd, run_flags, true, true);
  run_cmd->add_option("--out", run_out, "trace file (default: stdout)");

  ProblemFlags cmp_flags;
  bool csv = false;
  auto* cmp_cmd =
      app.add_subcommand("compare", "interpolated and classical weights side by side");
  add_problem_flags(*cmp_cmd, cmp_flags, false, true);
  cmp_cmd->add_flag("--csv", csv, "machine-readable CSV");

  std::string verify_trace;
  std::string verify_function;
  std::string verify_delta;
  int verify_m = 0;
  auto* verify_cmd = app.add_subcommand("verify", "check a trace and report as JSON");
  verify_cmd->add_option("--trace", verify_trace, "JSONL trace")->required();
  verify_cmd->add_option("--function", verify_function,
                         "f(x) (default: the function recorded in the trace)");
  verify_cmd->add_option("--delta", verify_delta, "continuity radius (rational)");
  verify_cmd->add_option("--m", verify_m, "step index for the budget check");

  ProblemFlags plot_flags;
  PlotFlags pf;
  auto* plot_cmd = app.add_subcommand("plot", "render a trace as SVG");
  add_problem_flags(*plot_cmd, plot_flags, true, false);
  plot_cmd->add_option("--trace", pf.trace_path, "plot an existing JSONL trace");
  plot_cmd->add_option("--out", pf.out_path, "SVG file (default: stdout)");
  plot_cmd->add_option("--xmin", pf.x_min)->capture_default_str();
  plot_cmd->add_option("--xmax", pf.x_max)->capture_default_str();
  plot_cmd->add_option("--ymin", pf.y_min)->capture_default_str();
  plot_cmd->add_option("--ymax", pf.y_max)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ivt: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, run_out, out);
    if (cmp_cmd->parsed()) return cmd_compare(cmp_flags, csv, out);
    if (verify_cmd->parsed()) {
      return cmd_verify(verify_trace, verify_function, verify_delta, verify_m, out);
    }
    if (plot_cmd->parsed()) return cmd_plot(plot_flags, pf, out);
  } catch (const ExitWith& e) {
    err << "ivt: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "ivt: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace ivt::cli
