#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qseries/errors.hpp"

namespace qs {

// f_0, f_1, ... with f_i the number of parts equal to i. Entries past the
// end are zero.
using FreqSeq = std::vector<std::int64_t>;

FreqSeq canonical(FreqSeq f);
std::int64_t entry(const FreqSeq& f, std::int64_t i);
// sum i * f_i
std::int64_t weight(const FreqSeq& f);
// sum f_i
std::int64_t part_count(const FreqSeq& f);
// max f_i + f_{i+1} over i >= from
std::int64_t max_adjacent_sum(const FreqSeq& f, std::int64_t from = 0);
std::string format_freq(const FreqSeq& f);
FreqSeq freq_from_json(const nlohmann::json& j);

// k partitions, each weakly decreasing; parts equal to 0 are allowed.
struct MultiPartition {
  std::vector<std::vector<std::int64_t>> parts;

  int k() const { return static_cast<int>(parts.size()); }
  std::int64_t size() const;
  std::int64_t length() const;
  // s_1 >= ... >= s_k with s_m the total length of lists m..k.
  std::vector<std::int64_t> suffix_lengths() const;
  void validate() const;
  nlohmann::json to_json() const;
  std::string to_string() const;
  bool operator==(const MultiPartition&) const = default;
};

MultiPartition multipartition_from_json(const nlohmann::json& j);

FreqSeq frame_of(const MultiPartition& mp);
// Frame with s_1 >= ... >= s_k pairs.
FreqSeq frame_from_lengths(const std::vector<std::int64_t>& s);
bool is_frame(const FreqSeq& f);

struct MotionResult {
  FreqSeq seq;
  // focus pair index after the last motion
  std::int64_t focus = 0;
};

// m particle motions from the pair (f_u, f_{u+1}).
MotionResult pm_stepwise(const FreqSeq& f, std::int64_t u, std::int64_t m);
// Closed form; needs (f_u, f_{u+1}) = (h, 0).
MotionResult pm_explicit(const FreqSeq& f, std::int64_t u, std::int64_t m);

struct ReverseResult {
  FreqSeq seq;
  std::int64_t steps = 0;
};

// Reverse motion back to (h, 0) at u; needs f_{u-1} = 0.
ReverseResult rpm(const FreqSeq& f, std::int64_t u);
ReverseResult rpm_stepwise(const FreqSeq& f, std::int64_t u);

struct TraceStep {
  FreqSeq state;
  std::string op;
  nlohmann::json params;
};

struct MotionTrace {
  std::vector<TraceStep> steps;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Single motions and focus shifts of pm_stepwise.
MotionTrace pm_trace(const FreqSeq& f, std::int64_t u, std::int64_t m);

FreqSeq lambda(const MultiPartition& mp);
MotionTrace lambda_trace(const MultiPartition& mp);

// k defaults to the largest adjacent sum of f.
MultiPartition gamma(const FreqSeq& f, std::optional<int> k = std::nullopt);
MotionTrace gamma_trace(const FreqSeq& f);

}  // namespace qs
