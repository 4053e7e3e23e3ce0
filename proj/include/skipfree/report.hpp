#ifndef SKIPFREE_REPORT_HPP
#define SKIPFREE_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skipfree/analytic.hpp"
#include "skipfree/chains.hpp"
#include "skipfree/montecarlo.hpp"
#include "skipfree/oracle.hpp"

namespace skipfree {

using json = nlohmann::ordered_json;

// Parses {"family":"finite","pmf":[[-1,0.3],[2,0.7]]} or
// {"family":"poisson_shifted","lambda":1.5}.
IncrementDistribution dist_from_spec_json(const json& spec);

// Self-auditing result bundle: every agreement flag is recomputable from
// the numbers the report itself contains.
struct Report {
  int schema_version = 1;
  json input_spec;
  std::optional<WalkSummary> walk_summary;
  std::vector<ParityProbabilities> parity;
  std::map<std::string, SeriesBracket> oracle_brackets;
  std::vector<SimulationEstimate> simulation;
  std::map<std::string, bool> agreement_flags;
};

json report_to_json(const Report& report);
Report report_from_json(const json& j);

bool all_flags_pass(const Report& report);

// analytic pipeline: summary + parity rows for each requested k
Report run_analyze(const json& spec, const std::vector<long long>& k_list);

// Monte Carlo only; deterministic for fixed cfg
Report run_simulate(const json& spec, long long k, const SimulationConfig& cfg);

// three-way analytic | series bracket | Monte Carlo comparison with
// agreement flags (series containment at 1e-8 slack, MC at 3 std errors,
// censoring brackets for hit-type quantities)
Report run_compare(const json& spec, const std::vector<long long>& k_list,
                   const SimulationConfig& cfg, int series_terms = 2000);

// Built-in worked examples: the shifted-Poisson walk at lambda = 3/2 and
// the separable lambda = 3 walk it generates.  Flags record whether each
// value matches its reference at the documented tolerance.
Report run_reference_examples();

// human-oriented renderings
std::string render_report_text(const Report& report);
std::string render_compare_csv(const Report& report);

}  // namespace skipfree

#endif
