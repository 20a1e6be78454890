#include "cmwitness/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmwitness/report.hpp"

#ifndef CMWITNESS_GOLDEN_DIR
#define CMWITNESS_GOLDEN_DIR "tests/golden"
#endif

namespace cmwitness {

using nlohmann::json;

const std::vector<CorpusEntry>& regression_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"outside_scope_xv", R"({"variables":["X","Y","V"],"f":"X*V^2+4","g":"X*Y^2+4"})"},
      {"caseA_both", R"({"variables":["U","Y","V"],"f":"U^2*V^2+4","g":"U^2*Y^2+4"})"},
      {"noncm_grade2_family", R"({"variables":["X","Y","V"],"f":"V^2*X^2-2*X^2+4","g":"V^2*Y^2-2*Y^2+4"})"},
      {"noncm_grade3_family", R"({"variables":["X","Y"],"f":"-X^2+4","g":"-Y^2+4"})"},
      {"caseB_synthetic", R"({"variables":["X","Y"],"f":"X^2+2","g":"Y^2+2"})"},
      {"caseC_cm_synthetic", R"({"variables":["X","Y"],"f":"X^2+2","g":"X^2*Y^2+2*Y^2+4"})"},
  };
  return corpus;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

json error_json(const std::string& kind, const std::string& detail) { return {{"error", kind}, {"detail", detail}}; }

// Runs `body`, mapping rejected input to exit 2 and internal failures to exit 3.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const HypothesisViolation& e) {
    json j = error_json("hypothesis_violation", e.what());
    j["predicate"] = e.predicate();
    err << j.dump() << '\n';
    return kExitRejected;
  } catch (const ParseError& e) {
    json j = error_json("parse_error", e.what());
    j["position"] = e.position();
    err << j.dump() << '\n';
    return kExitRejected;
  } catch (const InputError& e) {
    err << error_json("input_error", e.what()).dump() << '\n';
    return kExitRejected;
  } catch (const json::exception& e) {
    err << error_json("input_error", e.what()).dump() << '\n';
    return kExitRejected;
  } catch (const ClosureFailure& e) {
    err << error_json("verification_failure", e.what()).dump() << '\n';
    return kExitInternalFailure;
  } catch (const std::exception& e) {
    err << error_json("internal_error", e.what()).dump() << '\n';
    return kExitInternalFailure;
  }
}

int report_failures(const ClassifyOutcome& r, std::ostream& err) {
  if (r.failed_checks.empty()) return kExitOk;
  json j = error_json("verification_failure", "checks failed");
  j["checks"] = r.failed_checks;
  err << j.dump() << '\n';
  return kExitInternalFailure;
}

int cmd_classify(const std::string& job_path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JobSpec job = parse_job(json::parse(read_file(job_path)));
    const ClassifyOutcome r = run_classification(job);
    const std::string text = dump_report(r.report);
    if (out_path.empty())
      out << text;
    else
      write_file(out_path, text);
    return report_failures(r, err);
  });
}

// First differing line, for a readable mismatch message.
std::string first_difference(const std::string& expected, const std::string& actual) {
  std::istringstream a(expected), b(actual);
  std::string la, lb;
  for (int line = 1;; ++line) {
    const bool ga = static_cast<bool>(std::getline(a, la));
    const bool gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) return "contents differ";
    if (!ga || !gb || la != lb) {
      std::ostringstream s;
      s << "line " << line << "\n    expected: " << (ga ? la : "<end of file>")
        << "\n    actual:   " << (gb ? lb : "<end of file>");
      return s.str();
    }
  }
}

int cmd_regress(const std::string& golden_dir, bool update, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    int status = kExitOk;
    for (const auto& entry : regression_corpus()) {
      const JobSpec job = parse_job(json::parse(entry.job));
      const ClassifyOutcome r = run_classification(job);
      if (!r.failed_checks.empty()) {
        out << entry.name << ": FAILED checks";
        for (const auto& c : r.failed_checks) out << ' ' << c;
        out << '\n';
        status = kExitInternalFailure;
        continue;
      }
      if (entry.name == "outside_scope_xv" && !outside_scope_regression(job.ring).passed()) {
        out << entry.name << ": FAILED polynomial-identity regression\n";
        status = kExitInternalFailure;
        continue;
      }
      const std::string actual = dump_report(r.report);
      const std::string path = (std::filesystem::path(golden_dir) / (entry.name + ".json")).string();
      if (update) {
        write_file(path, actual);
        out << entry.name << ": updated\n";
        continue;
      }
      if (!std::filesystem::exists(path)) {
        out << entry.name << ": missing golden file " << path << '\n';
        if (status == kExitOk) status = kExitRegressionMismatch;
        continue;
      }
      const std::string expected = read_file(path);
      if (expected == actual) {
        out << entry.name << ": ok\n";
      } else {
        out << entry.name << ": MISMATCH at " << first_difference(expected, actual) << '\n';
        if (status == kExitOk) status = kExitRegressionMismatch;
      }
    }
    return status;
  });
}

int cmd_sweep(const std::string& family_path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FamilySpec fam = parse_family(json::parse(read_file(family_path)));
    const std::string csv = run_sweep(fam);
    if (out_path.empty())
      out << csv;
    else
      write_file(out_path, csv);
    return kExitOk;
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral closures of biquadratic extensions in mixed characteristic 2", "cmwitness"};
  app.require_subcommand(1);

  std::string job_path, report_path;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one (f, g) pair and write a JSON report");
  classify_cmd->add_option("--job", job_path, "Job description (JSON)")->required();
  classify_cmd->add_option("--out", report_path, "Report path (default: stdout)");

  std::string golden_dir = CMWITNESS_GOLDEN_DIR;
  bool update = false;
  auto* regress_cmd = app.add_subcommand("regress", "Re-run the worked examples against the golden reports");
  regress_cmd->add_option("--golden-dir", golden_dir, "Directory of golden reports");
  regress_cmd->add_flag("--update", update, "Rewrite the golden reports instead of comparing");

  std::string family_path, csv_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Classify a parameterized family and write CSV rows");
  sweep_cmd->add_option("--family", family_path, "Family description (JSON)")->required();
  sweep_cmd->add_option("--out", csv_path, "CSV path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitRejected;
  }

  if (*classify_cmd) return cmd_classify(job_path, report_path, out, err);
  if (*regress_cmd) return cmd_regress(golden_dir, update, out, err);
  return cmd_sweep(family_path, csv_path, out, err);
}

}  // namespace cmwitness
