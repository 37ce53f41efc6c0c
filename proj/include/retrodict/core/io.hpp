#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "retrodict/core/distribution.hpp"
#include "retrodict/core/divergence.hpp"

namespace retrodict::core {

// Kernel files
// ------------
// CSV: the header row lists target labels. If the first header cell is empty
// (or "source"), every following row starts with its source label; otherwise
// rows hold only probabilities and the source labels equal the target labels
// (square kernels) or are numbered 0..n-1.
//
// JSON: {"labels": [...], "rows": [[...], ...]}, optionally "source_labels"
// and "elapsed_time".
//
// Prior files use the same layouts with a single row. JSON priors may also
// give {"labels": [...], "mass": [...]}.
//
// Malformed input throws ParseError with line and column.

TransitionKernel parse_kernel_csv(std::string_view text);
TransitionKernel parse_kernel_json(std::string_view text);
DiscreteDistribution parse_distribution_csv(std::string_view text);
DiscreteDistribution parse_distribution_json(std::string_view text);

/// Dispatches on extension (.json, otherwise CSV).
TransitionKernel load_kernel(const std::filesystem::path& path);
DiscreteDistribution load_distribution(const std::filesystem::path& path);

/// Flat JSON object with keys s0, st, avg_st, avg_sr, mutual_info, kl_t_t,
/// kl_t_pt, kl_pt_t, kl_r_r, kl_r_p0, kl_p0_r. Numbers carry 17 significant
/// digits; infinite values are written as the string "inf".
std::string report_to_json(const EntropyReport& report);

void write_kernel_json(std::ostream& out, const TransitionKernel& kernel);
void write_distribution_json(std::ostream& out, const DiscreteDistribution& p);

}  // namespace retrodict::core
