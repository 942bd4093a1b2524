#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddrf/core_model.hpp"
#include "ddrf/dynamic_drf.hpp"
#include "ddrf/ratio_harness.hpp"

namespace ddrf {

class ParseError : public Error {
 public:
  ParseError(Index line, Index column, const std::string& message);
  Index line;    // 1-based; 0 when unknown
  Index column;  // 1-based; 0 when unknown
};

/// Instance files are line-oriented UTF-8 text:
///
///   # comments and blank lines are ignored
///   n = 3
///   m = 2
///   note = optional free text
///   1 1/10
///   1/10 1
///   1 1
///
/// Header keys n and m are required and must precede the n demand rows of m
/// whitespace-separated rationals ("p/q" or integer, never decimals). Rows
/// whose maximum is not exactly 1 are renormalized and reported in
/// `renormalized_agents`.
struct ParsedInstance {
  Instance instance;
  std::optional<std::string> note;
  std::vector<Index> renormalized_agents;
};

ParsedInstance parse_instance(const std::string& text);

std::string write_instance(const Instance& instance,
                           const std::optional<std::string>& note);

/// In-memory mirror of a run-report file (JSON). Agent and resource indices
/// are 1-based on this surface to match the reports people read; rationals
/// are exact "p/q" strings in the file so re-parsing reproduces a run
/// bit-exactly. Ratio rows additionally carry *_approx decimal renderings
/// (20 significant digits, round-half-even) that are ignored on parse.
struct RunReport {
  Index n = 0;
  Index m = 0;
  std::string algo;

  struct StepRecord {
    Index k = 0;
    Index tau = 0;  // 1-based split index
    Rational water_level;
    std::vector<Rational> shares;
    std::vector<Index> saturated_resources;  // 1-based, exact saturation
  };
  std::vector<StepRecord> steps;

  std::optional<RatioReport> ratio;
  std::string ratio_objective;  // "maxsum" | "maxmin" | "both" when present
};

RunReport make_run_report(const Instance& instance,
                          const std::vector<StepSolution>& steps,
                          const std::string& algo);

std::string write_run_report(const RunReport& report);

RunReport parse_run_report(const std::string& text);

/// Rebuilds per-step solutions from a report so they can be pushed through
/// the property battery. Throws ParseError on malformed shapes.
std::vector<StepSolution> report_solutions(const RunReport& report);

}  // namespace ddrf
