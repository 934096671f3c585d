#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rwre/harness/run.hpp>

#include <cstdio>
#include <filesystem>

using namespace rwre;
using namespace rwre::harness;

namespace {

nlohmann::json base_config(std::uint64_t seed) {
  nlohmann::json j;
  j["seed"] = seed;
  return j;
}

}  // namespace

TEST_CASE("config requires a seed") {
  nlohmann::json j;
  j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.6}};
  CHECK_THROWS_AS(parse_config("solomon", j), ConfigError);
  j["seed"] = 1;
  CHECK_NOTHROW(parse_config("solomon", j));
}

TEST_CASE("config validation errors") {
  nlohmann::json j = base_config(1);
  j["threads"] = 0;
  CHECK_THROWS_AS(parse_config("solomon", j), ConfigError);
  CHECK_THROWS_AS(run(parse_config("no-such-experiment", base_config(1))), ConfigError);
  nlohmann::json missing_law = base_config(1);
  CHECK_THROWS_AS(run(parse_config("solomon", missing_law)), ConfigError);
}

TEST_CASE("solomon run emits the documented records") {
  nlohmann::json j = base_config(4);
  j["law"] = {{"kind", "two_point"}, {"d", 1}, {"right_a", 0.9}, {"right_b", 0.4}, {"prob_a", 0.5}};
  const RunOutcome out = run(parse_config("solomon", j));
  REQUIRE(out.records.size() == 4);
  bool saw_velocity = false;
  for (const auto& r : out.records) {
    CHECK(known_quantity(r.quantity));
    CHECK(r.exact);
    if (r.quantity == "solomon.velocity") {
      saw_velocity = true;
      CHECK(r.value == doctest::Approx(0.1076923).epsilon(1e-6));
    }
  }
  CHECK(saw_velocity);
}

TEST_CASE("records are identical across thread counts") {
  nlohmann::json j = base_config(99);
  j["law"] = {{"kind", "two_point"}, {"d", 1}, {"right_a", 0.8}, {"right_b", 0.45}};
  j["L_list"] = {4.0, 8.0};
  j["trials"] = 4000;
  j["threads"] = 1;
  const RunOutcome a = run(parse_config("decay", j));
  j["threads"] = 8;
  const RunOutcome b = run(parse_config("decay", j));
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    // The digest differs (the document embeds "threads"); the contract is on
    // the value fields.
    CHECK(a.records[i].quantity == b.records[i].quantity);
    CHECK(a.records[i].value == b.records[i].value);
    CHECK(a.records[i].ci_lo == b.records[i].ci_lo);
    CHECK(a.records[i].ci_hi == b.records[i].ci_hi);
    CHECK(a.records[i].trials == b.records[i].trials);
    CHECK(a.records[i].censored == b.records[i].censored);
  }
}

TEST_CASE("csv export writes a header and one row per record") {
  nlohmann::json j = base_config(5);
  j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.75}};
  const RunOutcome out = run(parse_config("solomon", j));
  const std::string path = std::filesystem::temp_directory_path() / "rwre_test.csv";
  export_csv(out.records, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == static_cast<int>(out.records.size()));
  std::remove(path.c_str());
}

TEST_CASE("decay records are ordered by increasing L") {
  nlohmann::json j = base_config(6);
  j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.7}};
  j["L_list"] = {3.0, 6.0, 9.0};
  j["trials"] = 500;
  const RunOutcome out = run(parse_config("decay", j));
  double last = 0.0;
  for (const auto& r : out.records) {
    if (r.quantity != "decay.backtrack_prob") continue;
    const double L = r.detail.at("L").get<double>();
    CHECK(L > last);
    last = L;
  }
  CHECK(last == 9.0);
}

TEST_CASE("jsonl round trip preserves records") {
  nlohmann::json j = base_config(7);
  j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.6}};
  j["N0"] = 12;
  j["M"] = 1.0;
  const RunOutcome out = run(parse_config("check-pbox", j));
  const std::string path = std::filesystem::temp_directory_path() / "rwre_test.jsonl";
  export_jsonl(out.records, path);
  const auto back = import_jsonl(path);
  REQUIRE(back.size() == out.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].same_values(out.records[i]));
  }
  std::remove(path.c_str());
}

TEST_CASE("verdict failure is reported for strict handling") {
  nlohmann::json j = base_config(8);
  j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.6}};
  j["N0"] = 12;
  j["M"] = 2.0;  // known Fail case
  const RunOutcome out = run(parse_config("check-pbox", j));
  CHECK(out.verdict_failure);
  j["M"] = 1.0;
  CHECK(!run(parse_config("check-pbox", j)).verdict_failure);
}

TEST_CASE("every experiment emits only registered quantities") {
  std::vector<std::pair<std::string, nlohmann::json>> runs;
  {
    nlohmann::json j = base_config(11);
    j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.7}};
    runs.emplace_back("solomon", j);
    nlohmann::json s = j;
    s["stop"] = {{"kind", "directional"}, {"L", 4.0}};
    s["trials"] = 50;
    runs.emplace_back("simulate", s);
    nlohmann::json e = j;
    e["region"] = {{"kind", "interval"}, {"lo", -5}, {"hi", 5}};
    runs.emplace_back("exit-prob", e);
    nlohmann::json sched = base_config(11);
    sched["L"] = 1e4;
    sched["d"] = 2;
    sched["kappa"] = 0.1;
    runs.emplace_back("schedule", sched);
    nlohmann::json audit = base_config(11);
    audit["d"] = 2;
    audit["N0"] = 60;
    runs.emplace_back("audit-constants", audit);
    nlohmann::json bn = base_config(11);
    bn["n"] = 7;
    bn["k"] = 2;
    runs.emplace_back("binomial-bound", bn);
    nlohmann::json col = base_config(11);
    col["n"] = 7;
    col["d"] = 2;
    col["direction"] = {1.0, 0.0};
    col["window_halfwidth"] = 40;
    runs.emplace_back("coloring", col);
  }
  for (const auto& [name, doc] : runs) {
    const RunOutcome out = run(parse_config(name, doc));
    CHECK(!out.records.empty());
    for (const auto& r : out.records) {
      CHECK(known_quantity(r.quantity));
      CHECK(r.experiment == name);
      CHECK(!r.config_digest.empty());
    }
  }
}

TEST_CASE("simulate with a region stop and trajectory dump") {
  nlohmann::json j = base_config(12);
  j["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 1.0}};
  j["stop"] = {{"kind", "directional"}, {"L", 5.0}};
  j["trials"] = 3;
  const std::string dump = std::filesystem::temp_directory_path() / "rwre_dump.jsonl";
  j["dump_path"] = dump;
  const RunOutcome out = run(parse_config("simulate", j));
  for (const auto& r : out.records) {
    if (r.quantity == "simulate.mean_steps") CHECK(r.value == doctest::Approx(6.0));
  }
  std::ifstream in(dump);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec.contains("site"));
    ++lines;
  }
  CHECK(lines == 3 * 7);  // three deterministic paths of 7 sites each
  std::remove(dump.c_str());
}

TEST_CASE("config digest is stable and content-sensitive") {
  nlohmann::json a = base_config(1);
  a["x"] = 1;
  nlohmann::json b = base_config(1);
  b["x"] = 2;
  CHECK(config_digest(a) == config_digest(a));
  CHECK(config_digest(a) != config_digest(b));
}
