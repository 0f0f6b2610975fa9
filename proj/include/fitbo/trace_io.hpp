#pragma once

#include <string>

#include "fitbo/bo_loop.hpp"

namespace fitbo {

inline constexpr const char* kTraceSchema = "fitbo-trace-v1";

// Line-delimited JSON: one header object, then one object per iteration.
// Serialisation is canonical, so serialize(parse(s)) == s for files this
// writer produced.
std::string trace_to_jsonl(const BOTrace& trace);

// Throws std::runtime_error on malformed input or schema mismatch.
BOTrace trace_from_jsonl(const std::string& text);

}  // namespace fitbo
