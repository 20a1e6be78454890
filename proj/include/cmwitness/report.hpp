#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "cmwitness/classifier.hpp"
#include "cmwitness/poly_io.hpp"

namespace cmwitness {

/// Malformed job or family description (bad JSON shape, unknown option).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

struct JobOptions {
  unsigned colon_search_degree = 6;
  unsigned spot_check_seed = 1;
  bool timings = false;
};

struct JobSpec {
  BaseRing ring;
  std::string f;
  std::string g;
  JobOptions options;
};

JobSpec parse_job(const nlohmann::json& j);
nlohmann::json job_to_json(const JobSpec& job);

/// Outcome of the full pipeline. `report` is always filled once the input has
/// been accepted; `failed_checks` names every verification that did not pass.
struct ClassifyOutcome {
  nlohmann::json report;
  std::vector<std::string> failed_checks;
};

/// Parse, check hypotheses, classify, build R, conductor, certificate, colon search.
/// Throws ParseError / InputError / HypothesisViolation on rejected input.
ClassifyOutcome run_classification(const JobSpec& job);

/// Keys sorted, two-space indent, trailing newline.
std::string dump_report(const nlohmann::json& report);

nlohmann::json to_json(const Poly& p, const BaseRing& ring);
nlohmann::json to_json(const KElement& x, const BaseRing& ring);
nlohmann::json to_json(const PolyMatrix& m, const BaseRing& ring);
nlohmann::json to_json(const FreeComplex& cx, const BaseRing& ring);

/// Integer parameter ranges substituted into f and g templates.
struct FamilyParameter {
  std::string name;
  long from = 0;
  long to = 0;
  long step = 1;
};

struct FamilySpec {
  BaseRing ring;
  std::string f;
  std::string g;
  std::vector<FamilyParameter> parameters;
  std::size_t max_rows = 10000;
};

FamilySpec parse_family(const nlohmann::json& j);

/// Replaces each parameter name (as a whole identifier) by its parenthesized value.
std::string instantiate(const std::string& tmpl, const std::vector<std::pair<std::string, long>>& values);

/// CSV with header "<params>,case,cm,q_shape", one row per parameter tuple in
/// lexicographic order (first parameter slowest). Rejected inputs are rows with
/// case "rejected:<predicate>" and empty verdict columns.
std::string run_sweep(const FamilySpec& family);

}  // namespace cmwitness
