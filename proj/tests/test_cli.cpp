#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmwitness/cli.hpp"
#include "cmwitness/report.hpp"

using namespace cmwitness;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cmwitness_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kData = CMWITNESS_TEST_DATA_DIR;
const std::string kGolden = CMWITNESS_TEST_GOLDEN_DIR;

}  // namespace

TEST_SUITE("cli_report") {
  TEST_CASE("classify writes a report") {
    const auto dir = scratch_dir("classify");
    const Run r = cli({"classify", "--job", kData + "/noncm_grade2_family.json", "--out", (dir / "r.json").string()});
    REQUIRE(r.code == 0);
    const auto rep = nlohmann::json::parse(slurp(dir / "r.json"));
    CHECK(rep["case"] == "CaseC_NonCM_grade2");
    CHECK(rep["cm"] == false);
    CHECK(rep["certificate"]["valid"] == true);
    CHECK(rep["certificate"]["pd_R"] == 1);
    CHECK(rep["witnesses"]["f"]["h"] == "X*V");
    CHECK(rep["witnesses"]["f"]["a"] == "-X^2+2");
    CHECK(rep["witnesses"]["f"]["in_S2w4"] == false);
    CHECK(rep["q_shape"]["tag"] == "Grade2Pd3");
  }

  TEST_CASE("outside scope reports a null verdict") {
    const Run r = cli({"classify", "--job", kData + "/outside_scope_xv.json"});
    REQUIRE(r.code == 0);
    const auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["case"] == "OutsideScope_not_S2");
    CHECK(rep["cm"].is_null());
  }

  TEST_CASE("reports are byte-identical across runs") {
    const Run a = cli({"classify", "--job", kData + "/noncm_grade2_family.json"});
    const Run b = cli({"classify", "--job", kData + "/noncm_grade2_family.json"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("timings") == std::string::npos);
  }

  TEST_CASE("rejected input exits with code 2") {
    const auto dir = scratch_dir("rejected");
    auto job = [&](const std::string& name, const std::string& text) { return write(dir / name, text); };

    Run r = cli({"classify", "--job", job("parse.json", R"({"variables":["X","Y"],"f":"X^^2","g":"Y"})")});
    CHECK(r.code == 2);
    CHECK(r.err.find("parse_error") != std::string::npos);

    r = cli({"classify", "--job", job("sqf.json", R"({"variables":["X","Y"],"f":"X^2*Y","g":"Y+2"})")});
    CHECK(r.code == 2);
    CHECK(r.err.find("\"predicate\":\"squarefree\"") != std::string::npos);

    r = cli({"classify", "--job", job("a1.json", R"({"variables":["X","Y"],"f":"2*X","g":"2*Y"})")});
    CHECK(r.code == 2);

    r = cli({"classify", "--job", job("key.json", R"({"variables":["X"],"f":"X","g":"X+2","colour":1})")});
    CHECK(r.code == 2);
    CHECK(r.err.find("input_error") != std::string::npos);

    r = cli({"classify", "--job", job("json.json", "{not json")});
    CHECK(r.code == 2);

    r = cli({"classify", "--job", (dir / "missing.json").string()});
    CHECK(r.code == 2);

    r = cli({"frobnicate"});
    CHECK(r.code == 2);
  }

  TEST_CASE("timings appear only on request") {
    const auto dir = scratch_dir("timings");
    const auto path = write(dir / "t.json", R"({"variables":["X","Y"],"f":"X^2+2","g":"Y^2+2","options":{"timings":true}})");
    const Run r = cli({"classify", "--job", path});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).contains("timings_ms"));
  }

  TEST_CASE("regress passes against the checked-in corpus") {
    const Run r = cli({"regress", "--golden-dir", kGolden});
    CHECK(r.code == 0);
    CHECK(r.out.find("MISMATCH") == std::string::npos);
  }

  TEST_CASE("regress reports a corrupted golden file") {
    const auto dir = scratch_dir("golden");
    for (const auto& e : fs::directory_iterator(kGolden)) fs::copy(e.path(), dir / e.path().filename());
    std::string text = slurp(dir / "caseB_synthetic.json");
    const auto pos = text.find("CaseB_productNotS2w4");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "CaseC");
    write(dir / "caseB_synthetic.json", text);
    fs::remove(dir / "caseA_both.json");

    const Run r = cli({"regress", "--golden-dir", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("caseB_synthetic: MISMATCH") != std::string::npos);
    CHECK(r.out.find("caseA_both: missing golden") != std::string::npos);
    CHECK(r.out.find("noncm_grade3_family: ok") != std::string::npos);
  }

  TEST_CASE("sweep over odd parameters gives case (b) throughout") {
    const Run r = cli({"sweep", "--family", kData + "/family_caseB.json"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "s,t,case,cm,q_shape");
    int rows = 0;
    while (std::getline(lines, line)) {
      CHECK(line.find(",CaseB_productNotS2w4,true,") != std::string::npos);
      ++rows;
    }
    CHECK(rows == 9);
    CHECK(r.out.find('\r') == std::string::npos);
  }

  TEST_CASE("sweep rows agree with classify") {
    const FamilySpec fam = parse_family(nlohmann::json::parse(slurp(kData + "/family_degenerations.json")));
    std::istringstream lines(run_sweep(fam));
    std::string line;
    std::getline(lines, line);
    int compared = 0;
    while (std::getline(lines, line)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
      while (cells.size() < 5) cells.emplace_back();
      const std::vector<std::pair<std::string, long>> values = {{"r", std::stol(cells[0])}, {"s", std::stol(cells[1])}};
      JobSpec job{fam.ring, instantiate(fam.f, values), instantiate(fam.g, values), {}};
      try {
        const auto rep = run_classification(job).report;
        CHECK(cells[2] == rep["case"].get<std::string>());
        CHECK(cells[3] == (rep["cm"].is_null() ? "none" : rep["cm"].get<bool>() ? "true" : "false"));
        if (!rep["q_shape"].is_null()) CHECK(cells[4] == rep["q_shape"]["tag"].get<std::string>());
      } catch (const HypothesisViolation& e) {
        CHECK(cells[2] == "rejected:" + e.predicate());
      }
      ++compared;
    }
    CHECK(compared == 10);
  }

  TEST_CASE("sweep edge cases") {
    const auto dir = scratch_dir("sweep");
    Run r = cli({"sweep", "--family",
                 write(dir / "empty.json",
                       R"({"variables":["X","Y"],"f":"X^2+2*s","g":"Y^2+2","parameters":[{"name":"s","from":3,"to":1}]})")});
    CHECK(r.code == 0);
    CHECK(r.out == "s,case,cm,q_shape\n");

    r = cli({"sweep", "--family",
             write(dir / "big.json",
                   R"({"variables":["X","Y"],"f":"X^2+2*s","g":"Y^2+2","max_rows":3,"parameters":[{"name":"s","from":1,"to":9}]})")});
    CHECK(r.code == 2);

    r = cli({"sweep", "--family",
             write(dir / "clash.json",
                   R"({"variables":["X","Y"],"f":"X^2","g":"Y^2","parameters":[{"name":"X","from":1,"to":2}]})")});
    CHECK(r.code == 2);

    const auto out = dir / "rows.csv";
    r = cli({"sweep", "--family",
             write(dir / "exp.json",
                   R"({"variables":["X","Y"],"f":"X^k+2","g":"Y^2+2","parameters":[{"name":"k","from":2,"to":3}]})"),
             "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(slurp(out) ==
          "k,case,cm,q_shape\n"
          "2,CaseB_productNotS2w4,true,Grade3CI_NotTwoGen\n"
          "3,OutsideScope_not_S2,none,none\n");
  }

  TEST_CASE("template instantiation") {
    CHECK(instantiate("X^2+2*s-t", {{"s", 3}, {"t", -1}}) == "X^2+2*(3)-(-1)");
    CHECK(instantiate("X^k+ks", {{"k", 4}}) == "X^4+ks");
  }
}
