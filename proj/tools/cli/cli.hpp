#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "lefschetz/classifier.hpp"
#include "lefschetz/rank_oracle.hpp"
#include "lefschetz/survey.hpp"

namespace lefschetz::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitDimensionCap = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;
inline constexpr int kExitInternal = 70;

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default --jobs: LEFSCHETZ_JOBS if set and positive, else the hardware
/// concurrency.
int default_jobs();

/// "12,9,3" -> {12, 9, 3}. An empty string gives an empty list. Throws
/// InvalidArgument on anything else.
std::vector<int> parse_int_list(const std::string& text);

nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const RankReport& report);
nlohmann::json to_json(const SurveyRow& row);

/// Header and one data line, no trailing newline on the last line.
std::string survey_csv(const SurveyRow& row);

/// "x1^2 x2^4"; the unit monomial prints as "1".
std::string monomial_text(const ExponentVector& alpha);

}  // namespace lefschetz::cli
