#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "moobench/harness/cli.hpp"
#include "moobench/harness/experiment.hpp"
#include "moobench/harness/plan.hpp"
#include "moobench/harness/report.hpp"

using namespace moobench;
using namespace moobench::harness;
using solvers::MethodKind;

namespace {

ResultRecord record(std::string method, double c, std::uint64_t seed, double hv) {
  ResultRecord r;
  r.method = std::move(method);
  r.dataset = "glyphs";
  r.seed = seed;
  r.c = c;
  r.param_count = 1234;
  r.mcr = {0.1 + 0.01 * double(seed), 0.2};
  r.ce = {0.3, 0.4 + 1.0 / 3.0};
  r.hv_mcr = hv;
  r.hv_ce = hv / 3.0;
  r.front_mcr = {r.mcr};
  r.provenance = "lr=0.001, wd=0 \"quoted\"";
  return r;
}

ExperimentPlan tiny_plan() {
  ExperimentPlan p;
  p.dataset = "glyphs-small";
  p.seeds = {0, 1};
  p.capacities = {0.5};
  p.trunk_widths = {8};
  p.epochs = 1;
  p.jobs = 2;
  return p;
}

std::string to_text(const std::vector<ResultRecord>& r, ReportFormat f) {
  std::ostringstream o;
  emit_report(r, f, o);
  return o.str();
}

}  // namespace

TEST_CASE("plan parsing") {
  std::istringstream in(
      "# desk plan\n"
      "dataset = glyphs-small\n"
      "methods = uniform, mgda\n"
      "seeds = 0,1,2\n"
      "capacities = 0.25,4\n"
      "hpo = random   # comment\n"
      "budget = 10\n"
      "ref_point = 1,1\n"
      "\n");
  const auto p = parse_plan(in);
  CHECK(p.dataset == "glyphs-small");
  CHECK(p.methods == std::vector<MethodKind>{MethodKind::uniform, MethodKind::mgda});
  CHECK(p.seeds == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(p.capacities == std::vector<double>{0.25, 4.0});
  CHECK(p.hpo == HpoMode::random);
  CHECK(p.budget == 10);

  std::ostringstream out;
  write_plan(out, p);
  std::istringstream back(out.str());
  const auto q = parse_plan(back);
  CHECK(q.methods == p.methods);
  CHECK(q.seeds == p.seeds);
  CHECK(q.capacities == p.capacities);

  std::istringstream single("seeds = 3\n");
  CHECK(parse_plan(single).seeds == std::vector<std::uint64_t>{3});

  std::istringstream unknown("widths = 3\n");
  CHECK_THROWS_AS(parse_plan(unknown), std::invalid_argument);
  std::istringstream malformed("dataset glyphs\n");
  CHECK_THROWS_AS(parse_plan(malformed), std::invalid_argument);
  ExperimentPlan e;
  CHECK_THROWS_AS(set_plan_value(e, "methods", "epo"), std::invalid_argument);
  set_plan_value(e, "capacities", "0,1");
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  e = ExperimentPlan{};
  set_plan_value(e, "seeds", "1,1");
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  CHECK(parse_seeds("0,3,7") == std::vector<std::uint64_t>{0, 3, 7});
  CHECK(dataset_config("glyphs-small").train_count == 1200);
  CHECK_THROWS_AS(dataset_config("mnist"), std::invalid_argument);
}

TEST_CASE("mean and sample standard deviation") {
  const auto s = mean_std({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(mean_std({0.7}).std == 0.0);
  CHECK(mean_std({}).mean == 0.0);
}

TEST_CASE("aggregates match recomputation from records") {
  std::vector<ResultRecord> r;
  for (std::uint64_t s = 0; s < 4; ++s) r.push_back(record("uniform", 1.0, s, 0.8 + 0.01 * double(s)));
  r.push_back(record("uniform", 2.0, 0, 0.9));
  r[2].status = "failed";
  const auto rows = aggregate(r);
  REQUIRE(rows.size() == 2);
  const auto& a = rows[0];
  CHECK(a.c == 1.0);
  CHECK(a.seeds == 3);
  CHECK(a.failed == 1);
  const double m = (0.80 + 0.81 + 0.83) / 3.0;
  double v = 0.0;
  for (double x : {0.80, 0.81, 0.83}) v += (x - m) * (x - m);
  CHECK(a.hv_mcr.mean == doctest::Approx(m).epsilon(1e-14));
  CHECK(a.hv_mcr.std == doctest::Approx(std::sqrt(v / 2.0)).epsilon(1e-12));
  CHECK(a.mcr[0].mean == doctest::Approx((0.10 + 0.11 + 0.13) / 3.0));
  CHECK(rows[1].hv_mcr.std == 0.0);
}

TEST_CASE("delta ST from the mean single task HV") {
  std::vector<ResultRecord> r;
  r.push_back(record("single_task", 1.0, 0, 0.90));
  r.push_back(record("single_task", 1.0, 1, 0.86));
  r.push_back(record("uniform", 1.0, 0, 0.85));
  r.push_back(record("uniform", 1.0, 1, 0.84));
  r.push_back(record("uniform", 2.0, 0, 0.80));
  std::ostringstream paired;
  assign_delta_st(r, {}, &paired);
  CHECK(std::abs(r[2].delta_st_mcr - (0.88 - 0.85)) <= 1e-12);
  CHECK(std::abs(r[3].delta_st_ce - (0.88 / 3.0 - 0.84 / 3.0)) <= 1e-12);
  CHECK(std::abs(r[0].delta_st_mcr - (0.88 - 0.90)) <= 1e-12);
  CHECK(r[4].delta_st_mcr == 0.0);
  CHECK_FALSE(paired.str().empty());

  std::vector<ResultRecord> only{record("uniform", 2.0, 0, 0.80)};
  assign_delta_st(only, {{2.0, {0.95, 0.5}}});
  CHECK(std::abs(only[0].delta_st_mcr - 0.15) <= 1e-12);
  CHECK(std::abs(only[0].delta_st_ce - (0.5 - 0.8 / 3.0)) <= 1e-12);
}

TEST_CASE("CSV round trip and report determinism") {
  std::vector<ResultRecord> r{record("uniform", 1.0, 1, 0.1 + 0.2), record("single_task", 0.25, 0, 2.0 / 3.0)};
  r[0].front_mcr = {{0.1, 0.2}, {0.15, 0.125}};
  r[1].status = "failed";
  r[1].provenance = "a,b\nc";
  const auto text = to_text(r, ReportFormat::csv);
  std::istringstream in(text);
  auto back = parse_records_csv(in);
  auto sorted = r;
  sort_records(sorted);
  CHECK(back == sorted);
  CHECK(text.substr(0, text.find('\n')).rfind("method,dataset,seed,c,param_count,mcr,ce,hv_mcr,hv_ce", 0) == 0);
  CHECK(csv_columns().size() == 14);

  auto shuffled = r;
  std::swap(shuffled[0], shuffled[1]);
  for (auto f : {ReportFormat::csv, ReportFormat::json, ReportFormat::plotdata, ReportFormat::table}) {
    CHECK(to_text(r, f) == to_text(shuffled, f));
  }
  std::istringstream bad("method,dataset\nx,y\n");
  CHECK_THROWS_AS(parse_records_csv(bad), std::invalid_argument);
}

TEST_CASE("report errors") {
  const std::vector<ResultRecord> r{record("uniform", 1.0, 0, 0.5)};
  std::ostringstream out;
  CHECK_THROWS_AS(emit_report(r, ReportFormat::csv, out, {"mgda"}), std::invalid_argument);
  CHECK(out.str().empty());
  CHECK_THROWS_AS(emit_report({}, ReportFormat::json, out), std::invalid_argument);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::csv, "/nonexistent-dir/x/r.csv"), std::runtime_error);

  const auto path = std::filesystem::temp_directory_path() / "moobench_report_test.json";
  emit_report(r, ReportFormat::json, path.string());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == to_text(r, ReportFormat::json));
  std::filesystem::remove(path);
}

TEST_CASE("ablation table from records") {
  std::vector<ResultRecord> r{record("single_task", 1.0, 0, 0.9), record("uniform", 1.0, 0, 0.8)};
  assign_delta_st(r);
  const auto t = ablation_from_records(r);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].methods.at("uniform").delta_st_mcr.mean == doctest::Approx(0.1));
  std::ostringstream out;
  write_ablation_table(out, t);
  CHECK(out.str().find("0.9000 +- 0.0000") != std::string::npos);
}

TEST_CASE("final runs: determinism, ΔST consistency and seed isolation") {
  auto plan = tiny_plan();
  const auto a = run_final(plan);
  REQUIRE(a.size() == 4);
  for (const auto& r : a) {
    CHECK(r.ok());
    CHECK(r.dataset == "glyphs-small");
  }
  plan.jobs = 1;
  CHECK(run_final(plan) == a);

  double st_mcr = 0.0, st_ce = 0.0;
  for (const auto& r : a)
    if (r.method == "single_task") {
      st_mcr += r.hv_mcr / 2.0;
      st_ce += r.hv_ce / 2.0;
    }
  for (const auto& r : a) {
    CHECK(std::abs(r.delta_st_mcr - (st_mcr - r.hv_mcr)) <= 1e-12);
    CHECK(std::abs(r.delta_st_ce - (st_ce - r.hv_ce)) <= 1e-12);
  }

  plan.seeds = {0, 5};
  const auto b = run_final(plan);
  for (const auto& ra : a) {
    if (ra.seed != 0) continue;
    const auto it = std::find_if(b.begin(), b.end(), [&](const ResultRecord& rb) {
      return rb.method == ra.method && rb.seed == 0;
    });
    REQUIRE(it != b.end());
    CHECK(it->hv_mcr == ra.hv_mcr);
    CHECK(it->mcr == ra.mcr);
    CHECK(it->front_mcr == ra.front_mcr);
  }
}

TEST_CASE("capacity ablation") {
  auto plan = tiny_plan();
  plan.capacities = {0.5, 1.0};
  plan.seeds = {0};
  const auto t = run_capacity_ablation(plan);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].c == 0.5);
  CHECK(t.rows[1].methods.count("uniform") == 1);
  CHECK(t.records.size() == 4);

  plan.methods = {MethodKind::uniform};
  CHECK_THROWS_AS(run_capacity_ablation(plan), std::invalid_argument);
}

TEST_CASE("cli exit codes") {
  auto run = [](std::vector<const char*> args) {
    args.insert(args.begin(), "moobench");
    std::ostringstream out, err;
    return run_cli(static_cast<int>(args.size()), args.data(), out, err);
  };
  CHECK(run({"--help"}) == 0);
  CHECK(run({"run", "--bogus"}) == 1);
  CHECK(run({"run", "--method", "epo"}) == 1);
  CHECK(run({"report", "/nonexistent/r.csv"}) == 2);
  CHECK(run({}) == 1);
}
