#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bench.hpp"

using namespace redukt;

namespace {

BenchResult fixtures_bench(unsigned jobs) {
  BenchOptions opt;
  opt.dir = REDUKT_FIXTURE_DIR;
  opt.formulas_file = std::string(REDUKT_FIXTURE_DIR) + "/suite.ltl";
  opt.state_limit = 100000;
  opt.jobs = jobs;
  return run_bench(opt);
}

} // namespace

TEST_CASE("the fixture matrix covers every agreement bucket except failure") {
  BenchResult r = fixtures_bench(0);
  CHECK(r.records.size() == 14 * 12);
  CHECK(r.errors == 0);
  CHECK(r.timeout == 0);
  CHECK(r.trusted_match + r.untrusted_match + r.untrusted_mismatch == r.records.size());
  CHECK(r.trusted_match > 0);
  CHECK(r.untrusted_match > 0);
  CHECK(r.untrusted_mismatch > 0);

  bool documented = false;
  for (const auto& rec : r.records) {
    if (rec.net == "fig1" && rec.formula == "G !(q & X q & X X q & X X X q)") {
      CHECK(rec.agreement == "untrusted-mismatch");
      CHECK(rec.semi_value == VerdictValue::True);
      CHECK(rec.full_value == VerdictValue::False);
      documented = true;
    }
    // a trusted semi answer always matches the full answer
    if (rec.semi_trusted)
      CHECK(rec.semi_value == rec.full_value);
  }
  CHECK(documented);
}

TEST_CASE("records come back in input order regardless of scheduling") {
  BenchResult serial = fixtures_bench(1);
  BenchResult parallel = fixtures_bench(8);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].net == parallel.records[i].net);
    CHECK(serial.records[i].formula == parallel.records[i].formula);
    CHECK(serial.records[i].agreement == parallel.records[i].agreement);
    CHECK(serial.records[i].semi_value == parallel.records[i].semi_value);
    CHECK(serial.records[i].full_value == parallel.records[i].full_value);
  }
  // nets are processed in name order, formulas in file order
  CHECK(serial.records.front().net == "chain4");
  CHECK(serial.records.front().formula == "F p");
}

TEST_CASE("bench JSON carries records and a summary") {
  BenchResult r = fixtures_bench(0);
  auto j = nlohmann::json::parse(bench_to_json(r));
  REQUIRE(j.contains("records"));
  REQUIRE(j.contains("summary"));
  CHECK(j["records"].size() == r.records.size());
  CHECK(j["summary"]["pairs"] == r.records.size());
  CHECK(j["summary"]["untrustedMismatch"] == r.untrusted_mismatch);
  CHECK(j["records"][0].contains("sensitivityOfPhi"));
  CHECK(j["records"][0]["semi"].contains("value"));
  CHECK(j["records"][0]["full"].contains("value"));

  std::string text = bench_summary(r);
  CHECK(text.find("untrusted-mismatch") != std::string::npos);
  CHECK(text.find("fig1 / G !(q & X q & X X q & X X X q)") != std::string::npos);
}

TEST_CASE("formula files allow comments and blank lines") {
  std::string path = "/tmp/redukt_formulas_test.ltl";
  {
    std::ofstream out(path);
    out << "# header\n\nF p\n  \nG q\n";
  }
  auto lines = load_formula_lines(path);
  CHECK(lines == std::vector<std::string>{"F p", "G q"});
}

TEST_CASE("a bad formula becomes an error record, not a crash") {
  std::string dir = "/tmp/redukt_bench_err";
  std::filesystem::create_directories(dir);
  {
    std::ofstream net(dir + "/tiny.rnet");
    net << "pl A 1\ntr t A -> A\nap p = tok(A) >= 1\nap q = tok(A) >= 2\n";
    std::ofstream forms(dir + "/f.ltl");
    forms << "F p\nF (p &\n";
  }
  BenchOptions opt;
  opt.dir = dir;
  opt.formulas_file = dir + "/f.ltl";
  BenchResult r = run_bench(opt);
  REQUIRE(r.records.size() == 2);
  CHECK(r.errors == 1);
  CHECK(r.records[0].error.empty());
  CHECK(!r.records[1].error.empty());
  CHECK(r.records[1].agreement == "error");
}

TEST_CASE("load_model_file names the file in its errors") {
  try {
    load_model_file("/tmp/redukt_missing_file.rnet");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("redukt_missing_file") != std::string::npos);
  }
}
