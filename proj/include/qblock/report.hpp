#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qblock/value.hpp"

namespace qblock {

using Json = nlohmann::ordered_json;

// Invalid run configuration; maps to process exit code 2.
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameters of one verification run.  n and q use 0 as "not given": the
// missing one is derived (q as the smallest admissible prime for n, n as
// v2(q^2-1)); when both are given they must agree.  With neither given the
// run defaults to n = 3.
struct RunConfig {
  int n = 0;
  long long q = 0;
  std::set<std::string> checks;  // subset of {quiver, decomp, isometry,
                                 // perfect, all}; empty means all
  std::string format = "text";   // text | json
  std::uint64_t seed = 0;

  // outputs of finalize_config
  bool n_derived = false;
  bool q_derived = false;
};

// Resolves missing parameters, validates the combination and the check
// names, and returns the families that will run, in dependency order.
// Throws usage_error on any inconsistency.
std::vector<std::string> finalize_config(RunConfig& cfg);

// Exact value as an integer coefficient vector over the power basis of its
// field, with a common denominator and a basis tag:
//   {"basis":"rational",          "coeffs":["3"],      "den":"2"}
//   {"basis":"quad",   "q":"47",  "coeffs":["-1","1"], "den":"2"}
//   {"basis":"cyclo",  "m":4,     "coeffs":["0","1","0","-1"], "den":"1"}
Json value_to_json(const Value& v);

// One verification family each; every family object carries its parameter,
// a "checks" array (name / pass / claim / data) and an overall "pass".
Json exactnum_family();
Json quiver_family(int n);
Json decomp_family(int n);
Json chartable_family(long long q);
Json isometry_family(int n);
Json perfect_family(long long q);

struct RunResult {
  Json report;
  bool pass = false;
};

// Runs the configured families in dependency order and assembles the
// report.  Wall-clock timings go to *log (pass nullptr to silence); they
// are kept out of the report itself so that equal configs always produce
// byte-identical reports.
RunResult run_report(RunConfig cfg, std::ostream* log = nullptr);

// Human-readable rendering of a report produced by run_report.
std::string render_text(const Json& report);

}  // namespace qblock
