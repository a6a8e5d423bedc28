#include "ivt/trace_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace ivt {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

const char* backend_name(BackendKind kind) {
  return kind == BackendKind::Exact ? "exact" : "float";
}

template <Scalar T>
void write_typed(std::ostream& out, const Trace<T>& trace,
                 const std::optional<std::string>& function_text) {
  const auto& cfg = trace.config;
  ordered_json head;
  head["a"] = to_string(cfg.a);
  head["b"] = to_string(cfg.b);
  head["epsilon"] = to_string(cfg.epsilon);
  head["backend"] = backend_name(ScalarTraits<T>::kind);
  head["mode"] = mode_name(cfg.mode);
  head["max_steps"] = cfg.max_steps;
  if constexpr (ScalarTraits<T>::kind == BackendKind::Float) {
    head["float_bits"] = ScalarTraits<T>::float_bits;
  }
  if (cfg.stop_early) head["stop_early"] = true;
  if (cfg.weight_bits) head["weight_bits"] = *cfg.weight_bits;
  if (function_text) head["function"] = *function_text;
  out << head.dump() << '\n';

  for (const auto& s : trace.steps) {
    ordered_json row;
    row["n"] = s.n;
    row["a_n"] = to_string(s.a_n);
    row["b_n"] = to_string(s.b_n);
    row["c_n"] = to_string(s.c_n);
    row["f_c_n"] = to_string(s.f_c_n);
    row["d_n"] = to_string(s.d_n);
    out << row.dump() << '\n';
  }

  ordered_json tail;
  tail["limit_estimate"] = to_string(trace.limit_estimate);
  tail["limit_error_bound"] = to_string(trace.limit_error_bound);
  if (trace.stopped_early_at) tail["stopped_early_at"] = *trace.stopped_early_at;
  out << tail.dump() << '\n';
}

struct Line {
  std::size_t number;
  json value;
};

template <Scalar T>
T scalar_field(const Line& line, const char* key) {
  const auto it = line.value.find(key);
  if (it == line.value.end() || !it->is_string()) {
    throw TraceFormatError(line.number,
                           std::string("missing string field \"") + key + "\"");
  }
  try {
    return ScalarTraits<T>::parse(it->get<std::string>());
  } catch (const std::exception& e) {
    throw TraceFormatError(line.number,
                           std::string("field \"") + key + "\": " + e.what());
  }
}

template <typename I>
I int_field(const Line& line, const char* key) {
  const auto it = line.value.find(key);
  if (it == line.value.end() || !it->is_number_integer()) {
    throw TraceFormatError(line.number,
                           std::string("missing integer field \"") + key + "\"");
  }
  return it->get<I>();
}

template <Scalar T>
Trace<T> read_typed(const std::vector<Line>& lines) {
  const Line& head = lines.front();
  Trace<T> trace;
  auto& cfg = trace.config;
  cfg.a = scalar_field<T>(head, "a");
  cfg.b = scalar_field<T>(head, "b");
  cfg.epsilon = scalar_field<T>(head, "epsilon");
  cfg.max_steps = int_field<int>(head, "max_steps");
  const auto mode = head.value.value("mode", std::string("interpolated"));
  if (mode == "interpolated") {
    cfg.mode = WeightMode::Interpolated;
  } else if (mode == "classical") {
    cfg.mode = WeightMode::Classical;
  } else {
    throw TraceFormatError(head.number, "unknown mode \"" + mode + "\"");
  }
  cfg.stop_early = head.value.value("stop_early", false);
  if (head.value.contains("weight_bits")) {
    cfg.weight_bits = int_field<unsigned>(head, "weight_bits");
  }

  const Line& tail = lines.back();
  if (!tail.value.contains("limit_estimate")) {
    throw TraceFormatError(tail.number, "last line must carry limit_estimate");
  }
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const Line& line = lines[i];
    StepRecord<T> s;
    s.n = int_field<int>(line, "n");
    s.a_n = scalar_field<T>(line, "a_n");
    s.b_n = scalar_field<T>(line, "b_n");
    s.c_n = scalar_field<T>(line, "c_n");
    s.f_c_n = scalar_field<T>(line, "f_c_n");
    s.d_n = scalar_field<T>(line, "d_n");
    trace.steps.push_back(std::move(s));
  }
  if (trace.steps.empty()) throw TraceFormatError(tail.number, "trace has no steps");
  trace.limit_estimate = scalar_field<T>(tail, "limit_estimate");
  trace.limit_error_bound = scalar_field<T>(tail, "limit_error_bound");
  if (tail.value.contains("stopped_early_at")) {
    trace.stopped_early_at = int_field<int>(tail, "stopped_early_at");
  }
  return trace;
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const AnyTrace& trace,
                       const std::optional<std::string>& function_text) {
  std::visit([&](const auto& t) { write_typed(out, t, function_text); }, trace);
}

LoadedTrace read_trace_jsonl(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded() || !value.is_object()) {
      throw TraceFormatError(number, "not a JSON object");
    }
    lines.push_back(Line{number, std::move(value)});
  }
  if (lines.size() < 3) {
    throw TraceFormatError(number + 1, "expected config, steps and a final line");
  }
  const Line& head = lines.front();
  const auto backend = head.value.value("backend", std::string());
  LoadedTrace loaded{ExactTrace{}, std::nullopt};
  if (backend == "exact") {
    loaded.trace = read_typed<Rational>(lines);
  } else if (backend == "float") {
    const int bits = head.value.value("float_bits", 64);
    if (bits == 64) {
      loaded.trace = read_typed<double>(lines);
    } else if (bits == 32) {
      loaded.trace = read_typed<float>(lines);
    } else {
      throw TraceFormatError(head.number, "unsupported float_bits");
    }
  } else {
    throw TraceFormatError(head.number, "unknown backend \"" + backend + "\"");
  }
  if (const auto it = head.value.find("function");
      it != head.value.end() && it->is_string()) {
    loaded.function_text = it->get<std::string>();
  }
  return loaded;
}

}  // namespace ivt
