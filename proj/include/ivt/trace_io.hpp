#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ivt/core.hpp"

namespace ivt {

// JSONL trace format, one object per line:
//   {"a":"-1/1","b":"1/1","epsilon":"1/3","backend":"exact",
//    "mode":"interpolated","max_steps":40,...}
//   {"n":1,"a_n":"-1/1","b_n":"1/1","c_n":"0/1","f_c_n":"1/7","d_n":"13/14"}
//   ...
//   {"limit_estimate":"...","limit_error_bound":"..."}
// Scalars are strings: "num/den" for exact traces, shortest round-trip
// decimals for float traces. Optional config keys: "float_bits",
// "stop_early", "weight_bits", "function" (canonical text). The final line
// may carry "stopped_early_at".
void write_trace_jsonl(std::ostream& out, const AnyTrace& trace,
                       const std::optional<std::string>& function_text = {});

struct LoadedTrace {
  AnyTrace trace;
  std::optional<std::string> function_text;
};

// Throws TraceFormatError naming the offending line.
LoadedTrace read_trace_jsonl(std::istream& in);

}  // namespace ivt
