#include "cmwitness/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include "cmwitness/f2_linear.hpp"

namespace cmwitness {

using nlohmann::json;

namespace {

const std::set<std::string> kJobKeys = {"variables", "f", "g", "options"};
const std::set<std::string> kOptionKeys = {"colon_search_degree", "spot_check_seed", "timings"};
const std::set<std::string> kFamilyKeys = {"variables", "f", "g", "parameters", "max_rows"};

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw InputError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

BaseRing parse_variables(const json& j) {
  const json& v = require(j, "variables");
  if (!v.is_array()) throw InputError("'variables' must be an array of strings");
  BaseRing ring;
  for (const auto& x : v) {
    if (!x.is_string()) throw InputError("'variables' must be an array of strings");
    ring.variables.push_back(x.get<std::string>());
  }
  try {
    ring.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return ring;
}

unsigned require_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) throw InputError("'" + key + "' must be a non-negative integer");
  return v.get<unsigned>();
}

json checks_json(const std::vector<std::pair<std::string, bool>>& checks) {
  json out = json::object();
  for (const auto& [name, ok] : checks) out[name] = ok;
  return out;
}

void collect_failures(const std::vector<std::pair<std::string, bool>>& checks, const std::string& prefix,
                      std::vector<std::string>& failed) {
  for (const auto& [name, ok] : checks)
    if (!ok) failed.push_back(prefix + name);
}

json ideal_json(const IdealGens& ideal, const BaseRing& ring) {
  json out = json::array();
  for (const auto& g : ideal.gens) out.push_back(to_json(g, ring));
  return out;
}

json witness_json(const Poly& f, const std::optional<S2Witness>& w, const BaseRing& ring) {
  json out = json::object();
  out["in_S2"] = w.has_value();
  if (!w) return out;
  out["h"] = to_json(w->h, ring);
  out["a"] = to_json(w->a, ring);
  const auto w4 = in_S2wedge4(f, *w);
  out["in_S2w4"] = w4.has_value();
  if (w4) {
    out["h_prime"] = to_json(w4->h, ring);
    out["a_prime"] = to_json(w4->a_prime, ring);
  }
  return out;
}

json presentation_json(const RingPresentation& r, const BaseRing& ring) {
  json out;
  out["sfree"] = r.sfree;
  out["generator_names"] = r.generator_names;
  json gens = json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g, ring));
  out["generators"] = gens;
  json mins = json::array();
  for (const auto& m : r.min_polys)
    mins.push_back({{"name", m.name}, {"c1", to_json(m.c1, ring)}, {"c0", to_json(m.c0, ring)}, {"ok", m.ok}});
  out["min_polys"] = mins;
  if (r.mult_table) {
    json table = json::array();
    for (const auto& row : r.mult_table->entries) {
      json jr = json::array();
      for (const auto& entry : row) {
        json coeffs = json::array();
        for (const auto& s : entry) coeffs.push_back(to_string(s, ring));
        jr.push_back(coeffs);
      }
      table.push_back(jr);
    }
    out["multiplication_table"] = table;
  } else {
    out["multiplication_table"] = nullptr;
  }
  out["relations"] = to_json(r.relations, ring);
  out["checks"] = checks_json(r.checks);
  return out;
}

json conductor_json(const ConductorReport& c, const BaseRing& ring) {
  json out;
  out["available"] = c.available;
  out["name"] = c.name;
  out["generators"] = c.ideal ? ideal_json(*c.ideal, ring) : json::array();
  out["verified"] = c.verified;
  out["reason"] = c.reason;
  if (c.j_datum)
    out["J"] = {{"generators", ideal_json(*c.j_datum, ring)}, {"verified", c.j_verified}};
  else
    out["J"] = nullptr;
  return out;
}

// Numerators of η mod 2 land in the span found by the search on P.
json colon_search_json(const AlgebraDesc& alg, const NamedIdeals& ids, unsigned degree,
                       std::vector<std::string>& failed) {
  json out;
  out["ideal"] = "P";
  out["target"] = "A";
  out["denom_bound"] = 1;
  out["degree_bound"] = degree;
  ColonSearchResult r;
  try {
    r = bounded_colon_search(ids.P, MembershipOracle::ring_A(alg.nvars()), 1, degree);
  } catch (const BoundTooLarge& e) {
    out["skipped"] = e.what();
    return out;
  }
  out["solution_rank"] = r.span_mod2.size();
  bool sound = true;
  for (const auto& x : r.new_elements)
    sound = sound && colon_membership(x, ids.P, MembershipOracle::ring_A(alg.nvars()));
  out["solutions_verified"] = sound;
  if (!sound) failed.push_back("colon_search.solutions_verified");

  const KElement two_eta = Poly::constant(alg.nvars(), Integer(2)) * ids.eta;
  std::uint64_t deg = 0;
  for (const auto& c : two_eta.coords())
    if (!c.is_zero()) deg = std::max(deg, c.total_degree());
  if (deg > degree) {
    out["eta_in_span"] = nullptr;
    return out;
  }
  const auto monomials = monomials_up_to(alg.nvars(), degree);
  const std::size_t dim = 4 * monomials.size();
  F2Matrix with(0, dim);
  for (const auto& v : r.span_mod2) with.append_row(v);
  const std::size_t before = rank(with);
  with.append_row(encode_mod2(two_eta.coords(), monomials));
  const bool eta_in = rank(with) == before;
  out["eta_in_span"] = eta_in;
  if (!eta_in) failed.push_back("colon_search.eta_in_span");
  return out;
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), last_(std::chrono::steady_clock::now()) {}
  void lap(json& into, const char* stage) {
    if (!enabled_) return;
    const auto now = std::chrono::steady_clock::now();
    into[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point last_;
};

}  // namespace

JobSpec parse_job(const json& j) {
  if (!j.is_object()) throw InputError("job must be a JSON object");
  reject_unknown_keys(j, kJobKeys, "job");
  JobSpec job;
  job.ring = parse_variables(j);
  job.f = require_string(j, "f");
  job.g = require_string(j, "g");
  if (j.contains("options")) {
    const json& o = j.at("options");
    if (!o.is_object()) throw InputError("'options' must be an object");
    reject_unknown_keys(o, kOptionKeys, "options");
    if (o.contains("colon_search_degree"))
      job.options.colon_search_degree = require_unsigned(o.at("colon_search_degree"), "colon_search_degree");
    if (o.contains("spot_check_seed"))
      job.options.spot_check_seed = require_unsigned(o.at("spot_check_seed"), "spot_check_seed");
    if (o.contains("timings")) {
      if (!o.at("timings").is_boolean()) throw InputError("'timings' must be a boolean");
      job.options.timings = o.at("timings").get<bool>();
    }
  }
  if (job.options.colon_search_degree > 8) throw InputError("'colon_search_degree' must be at most 8");
  return job;
}

json job_to_json(const JobSpec& job) {
  json out;
  out["variables"] = job.ring.variables;
  out["f"] = job.f;
  out["g"] = job.g;
  out["options"] = {{"colon_search_degree", job.options.colon_search_degree},
                    {"spot_check_seed", job.options.spot_check_seed}};
  if (job.options.timings) out["options"]["timings"] = true;
  return out;
}

json to_json(const Poly& p, const BaseRing& ring) { return to_string(p, ring); }

json to_json(const KElement& x, const BaseRing& ring) {
  json coords = json::array();
  for (const auto& c : x.coords()) coords.push_back(to_string(c, ring));
  return {{"coords", coords}, {"denom_exp", x.denom_exp()}};
}

json to_json(const PolyMatrix& m, const BaseRing& ring) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j), ring));
    out.push_back(row);
  }
  return out;
}

json to_json(const FreeComplex& cx, const BaseRing& ring) {
  json maps = json::array();
  for (const auto& m : cx.maps) maps.push_back(to_json(m, ring));
  return {{"labels", cx.labels},
          {"maps", maps},
          {"resolves", cx.resolves == FreeComplex::Resolves::Cokernel ? "cokernel" : "image_of_first"}};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

ClassifyOutcome run_classification(const JobSpec& job) {
  ClassifyOutcome out;
  json& rep = out.report;
  json timings = json::object();
  Stopwatch clock(job.options.timings);

  const Poly f = parse_poly(job.f, job.ring);
  const Poly g = parse_poly(job.g, job.ring);
  const AlgebraDesc alg = make_algebra(job.ring, f, g);
  clock.lap(timings, "predicates");
  const BaseRing& ring = job.ring;

  rep["input"] = {{"variables", ring.variables}, {"f", to_string(f, ring)}, {"g", to_string(g, ring)}};
  rep["options"] = {{"colon_search_degree", job.options.colon_search_degree},
                    {"spot_check_seed", job.options.spot_check_seed}};
  rep["predicates"] = {{"squarefree_f", true}, {"squarefree_g", true}, {"A1", true}, {"degree_four", true}};
  rep["witnesses"] = {{"f", witness_json(f, alg.wf, ring)}, {"g", witness_json(g, alg.wg, ring)}};

  const CaseTag tag = classify(alg);
  rep["case"] = to_string(tag);
  const auto verdict = cm_verdict(tag);
  rep["cm"] = verdict ? json(*verdict) : json(nullptr);
  clock.lap(timings, "classify");

  if (tag == CaseTag::OutsideScope_not_S2) {
    rep["predicates"]["product_in_S2w4"] = nullptr;
    rep["q_shape"] = nullptr;
    rep["R"] = nullptr;
    rep["conductor"] = conductor_json(conductor(alg, tag), ring);
    rep["certificate"] = nullptr;
    rep["resolutions"] = json::object();
    rep["colon_search"] = nullptr;
    if (job.options.timings) rep["timings_ms"] = timings;
    return out;
  }

  rep["predicates"]["product_in_S2w4"] = product_in_S2wedge4(*alg.wf, *alg.wg);
  const QLifts q = q_lifts(alg);
  rep["q_shape"] = {{"z", to_string(q.shape.z, ring)},
                    {"c", to_string(q.shape.c, ring)},
                    {"e", to_string(q.shape.e, ring)},
                    {"tag", to_string(q.shape.tag)},
                    {"lifts", {{"z", to_string(q.z, ring)}, {"c", to_string(q.c, ring)}, {"e", to_string(q.e, ring)}}}};

  const RingPresentation r = build_R(alg, tag);
  rep["R"] = presentation_json(r, ring);
  collect_failures(r.checks, "R.", out.failed_checks);
  for (const auto& m : r.min_polys)
    if (!m.ok) out.failed_checks.push_back("R.min_poly." + m.name);
  clock.lap(timings, "build_R");

  const ConductorReport c = conductor(alg, tag, r);
  rep["conductor"] = conductor_json(c, ring);
  if (c.available && !c.verified) out.failed_checks.push_back("conductor.verified");
  if (c.j_datum && !c.j_verified) out.failed_checks.push_back("conductor.J.verified");
  clock.lap(timings, "conductor");

  rep["resolutions"] = json::object();
  if (!r.cm_verdict) {
    const CmModuleCertificate cert = build_small_cm_certificate(alg, tag, job.options.spot_check_seed);
    const int pd_q = static_cast<int>(cert.Q_resolution.length());
    json jc;
    jc["checks"] = checks_json(cert.checks);
    jc["valid"] = cert.valid();
    jc["ideals"] = {{"I", ideal_json(cert.ideal_I, ring)},
                    {"P", ideal_json(cert.ideal_P, ring)},
                    {"H", ideal_json(cert.ideal_H, ring)},
                    {"IP", ideal_json(cert.ideal_IP, ring)}};
    jc["module_M"] = {{"name", cert.module_M_oracle.name}, {"dual_of", "IP"}};
    jc["pd_I"] = {{"pd_bound", cert.pd_I.pd_bound}, {"depth", cert.pd_I.depth}, {"minimal", cert.pd_I.minimal}};
    // R ≅ S² ⊕ Syz²(S/Q), so pd R = pd(S/Q) − 2.
    jc["pd_R"] = pd_q - 2;
    jc["depth_R"] = ring.dimension() - (pd_q - 2);
    rep["certificate"] = jc;
    collect_failures(cert.checks, "certificate.", out.failed_checks);
    bool i_ok = false, be_ok = false;
    for (const auto& [name, ok] : cert.checks) {
      if (name == "I_resolution_ok") i_ok = ok;
      if (name == "BE_ok") be_ok = ok;
    }
    rep["resolutions"]["I"] = to_json(cert.I_resolution, ring);
    rep["resolutions"]["I"]["verified"] = i_ok;
    rep["resolutions"]["S_mod_Q"] = to_json(cert.Q_resolution, ring);
    rep["resolutions"]["S_mod_Q"]["verified"] = be_ok;
    clock.lap(timings, "certificate");
  } else {
    rep["certificate"] = nullptr;
  }

  rep["colon_search"] = colon_search_json(alg, named_ideals(alg), job.options.colon_search_degree, out.failed_checks);
  clock.lap(timings, "colon_search");
  if (job.options.timings) rep["timings_ms"] = timings;
  return out;
}

FamilySpec parse_family(const json& j) {
  if (!j.is_object()) throw InputError("family must be a JSON object");
  reject_unknown_keys(j, kFamilyKeys, "family");
  FamilySpec fam;
  fam.ring = parse_variables(j);
  fam.f = require_string(j, "f");
  fam.g = require_string(j, "g");
  const json& ps = require(j, "parameters");
  if (!ps.is_array()) throw InputError("'parameters' must be an array");
  std::set<std::string> seen(fam.ring.variables.begin(), fam.ring.variables.end());
  for (const auto& p : ps) {
    if (!p.is_object()) throw InputError("each parameter must be an object");
    reject_unknown_keys(p, {"name", "from", "to", "step"}, "parameter");
    FamilyParameter fp;
    fp.name = require_string(p, "name");
    if (fp.name.empty() || !(std::isalpha(static_cast<unsigned char>(fp.name[0])) || fp.name[0] == '_'))
      throw InputError("parameter name '" + fp.name + "' is not an identifier");
    if (!seen.insert(fp.name).second) throw InputError("parameter name '" + fp.name + "' is already in use");
    if (!require(p, "from").is_number_integer() || !require(p, "to").is_number_integer())
      throw InputError("parameter bounds must be integers");
    fp.from = p.at("from").get<long>();
    fp.to = p.at("to").get<long>();
    if (p.contains("step")) {
      if (!p.at("step").is_number_integer() || p.at("step").get<long>() <= 0)
        throw InputError("parameter step must be a positive integer");
      fp.step = p.at("step").get<long>();
    }
    fam.parameters.push_back(fp);
  }
  if (j.contains("max_rows")) fam.max_rows = require_unsigned(j.at("max_rows"), "max_rows");
  return fam;
}

std::string instantiate(const std::string& tmpl, const std::vector<std::pair<std::string, long>>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const unsigned char ch = static_cast<unsigned char>(tmpl[i]);
    if (!(std::isalpha(ch) || ch == '_')) {
      out += tmpl[i++];
      continue;
    }
    std::size_t j = i;
    while (j < tmpl.size() && (std::isalnum(static_cast<unsigned char>(tmpl[j])) || tmpl[j] == '_')) ++j;
    const std::string ident = tmpl.substr(i, j - i);
    auto it = std::find_if(values.begin(), values.end(), [&](const auto& v) { return v.first == ident; });
    if (it == values.end()) {
      out += ident;
    } else {
      // Exponents take bare literals; elsewhere parenthesize to keep signs local.
      std::size_t k = out.size();
      while (k > 0 && out[k - 1] == ' ') --k;
      const bool exponent = k > 0 && out[k - 1] == '^';
      out += exponent ? std::to_string(it->second) : "(" + std::to_string(it->second) + ")";
    }
    i = j;
  }
  return out;
}

namespace {

struct SweepRow {
  std::vector<long> params;
  std::string case_tag;
  std::string cm;
  std::string q_shape;
};

SweepRow sweep_one(const FamilySpec& fam, const std::vector<long>& params) {
  std::vector<std::pair<std::string, long>> values;
  for (std::size_t i = 0; i < params.size(); ++i) values.emplace_back(fam.parameters[i].name, params[i]);
  SweepRow row{params, "", "", ""};
  try {
    const Poly f = parse_poly(instantiate(fam.f, values), fam.ring);
    const Poly g = parse_poly(instantiate(fam.g, values), fam.ring);
    const AlgebraDesc alg = make_algebra(fam.ring, f, g);
    const CaseTag tag = classify(alg);
    row.case_tag = to_string(tag);
    const auto verdict = cm_verdict(tag);
    row.cm = verdict ? (*verdict ? "true" : "false") : "none";
    row.q_shape = tag == CaseTag::OutsideScope_not_S2 ? "none" : to_string(q_lifts(alg).shape.tag);
  } catch (const ParseError&) {
    row.case_tag = "rejected:parse";
  } catch (const HypothesisViolation& e) {
    row.case_tag = "rejected:" + e.predicate();
  }
  return row;
}

}  // namespace

std::string run_sweep(const FamilySpec& fam) {
  std::vector<std::vector<long>> tuples{{}};
  for (const auto& p : fam.parameters) {
    std::vector<std::vector<long>> next;
    for (const auto& t : tuples)
      for (long v = p.from; v <= p.to; v += p.step) {
        auto u = t;
        u.push_back(v);
        next.push_back(std::move(u));
        if (next.size() > fam.max_rows) throw InputError("family exceeds max_rows");
      }
    tuples = std::move(next);
  }

  std::vector<SweepRow> rows(tuples.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), tuples.size()));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < tuples.size(); i += workers) rows[i] = sweep_one(fam, tuples[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::ostringstream csv;
  for (const auto& p : fam.parameters) csv << p.name << ',';
  csv << "case,cm,q_shape\n";
  for (const auto& r : rows) {
    for (long v : r.params) csv << v << ',';
    csv << r.case_tag << ',' << r.cm << ',' << r.q_shape << '\n';
  }
  return csv.str();
}

}  // namespace cmwitness
