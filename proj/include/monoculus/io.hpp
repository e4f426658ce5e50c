#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoculus/engine.hpp"
#include "monoculus/metrics.hpp"

namespace monoculus {

/// Sets one simulation parameter from its flag name (without dashes), e.g.
/// ("algo", "ld"), ("c", "2"). Throws std::invalid_argument for unknown keys or bad values.
void apply_param(SimulationParams& params, std::string_view key, std::string_view value);

/// Every parameter as (key, value) text, in a fixed order. The initial
/// configuration and memory are not included.
std::vector<std::pair<std::string, std::string>> param_entries(const SimulationParams& params);

/// Flat `key = value` text; `#` starts a comment. Throws IoError when unreadable
/// and std::invalid_argument on malformed lines.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Trace CSV. A `#` preamble records the parameters and the initial configuration
/// so that a trace can be replayed; then the header
/// `event,round,robot,phase,algo,x_before_1..d,x_after_1..d,work_cum`.
void write_trace_csv(std::ostream& out, const SimulationParams& params, const RunResult& result);
std::string trace_csv(const SimulationParams& params, const RunResult& result);

/// Parameters (with the initial configuration pinned) recovered from a trace preamble.
SimulationParams read_trace_params(std::istream& in);

/// Structured run summary.
std::string run_summary_json(const SimulationParams& params, const RunResult& result, const RunMetrics& metrics);

}  // namespace monoculus
