#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speckledip/records.hpp"

using namespace speckledip;

namespace {

std::vector<OutputRecord> sample_rows() {
  OutputRecord analytic_only;
  analytic_only.delta_t_fs = -2000.0;
  analytic_only.analytic_c12 = 1.0693349999999995e-05;
  analytic_only.analytic_c12_corrected = 3.5644499999999926e-06;
  analytic_only.analytic_singles = 0.00267;

  OutputRecord full;
  full.delta_t_fs = 0.0;
  full.analytic_c12 = 2.5e-05;
  full.analytic_c12_corrected = 0.0;
  full.analytic_singles = 0.005;
  full.mc_c12 = 2.61e-05;
  full.mc_c12_se = 5.1e-06;
  full.mc_singles_1 = 0.00497;
  full.mc_singles_1_se = 7.03e-05;
  full.mc_singles_2 = 0.00503;
  full.mc_singles_2_se = 7.08e-05;
  full.mc_accidentals = 2.4e-05;
  full.mc_accidentals_se = 4.9e-06;
  full.n_pulses = 1000000;
  full.seed = 42;

  return {analytic_only, full};
}

}  // namespace

TEST_CASE("csv carries the fixed header and round-trips exactly") {
  const auto rows = sample_rows();
  const std::string csv = to_csv(rows);

  CHECK(csv.rfind("delta_t_fs,analytic_c12,analytic_c12_corrected,", 0) == 0);
  CHECK(csv.back() == '\n');

  const auto parsed = parse_csv(csv);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].delta_t_fs == rows[i].delta_t_fs);
    CHECK(parsed[i].analytic_c12 == rows[i].analytic_c12);
    CHECK(parsed[i].analytic_c12_corrected == rows[i].analytic_c12_corrected);
    CHECK(parsed[i].analytic_singles == rows[i].analytic_singles);
    CHECK(parsed[i].mc_c12 == rows[i].mc_c12);
    CHECK(parsed[i].mc_c12_se == rows[i].mc_c12_se);
    CHECK(parsed[i].mc_singles_1 == rows[i].mc_singles_1);
    CHECK(parsed[i].mc_singles_2 == rows[i].mc_singles_2);
    CHECK(parsed[i].mc_accidentals == rows[i].mc_accidentals);
    CHECK(parsed[i].n_pulses == rows[i].n_pulses);
    CHECK(parsed[i].seed == rows[i].seed);
  }
}

TEST_CASE("absent fields are empty cells, not zeros") {
  const auto rows = sample_rows();
  const std::string csv = to_csv(rows);
  const std::string first_row = csv.substr(csv.find('\n') + 1);
  const std::string cells = first_row.substr(0, first_row.find('\n'));
  // analytic-only row: ten trailing empty cells
  CHECK(cells.substr(cells.size() - 10) == ",,,,,,,,,,");
}

TEST_CASE("json mirrors the csv values and keys") {
  const auto rows = sample_rows();
  const auto parsed_csv = parse_csv(to_csv(rows));
  const nlohmann::json js = nlohmann::json::parse(to_json(rows));
  REQUIRE(js.is_array());
  REQUIRE(js.size() == rows.size());

  CHECK(js[0]["mc_c12"].is_null());
  CHECK(js[0]["n_pulses"].is_null());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(js[i]["delta_t_fs"].get<double>() == parsed_csv[i].delta_t_fs);
    CHECK(js[i]["analytic_c12"].get<double>() == parsed_csv[i].analytic_c12);
    CHECK(js[i]["analytic_singles"].get<double>() ==
          parsed_csv[i].analytic_singles);
  }
  CHECK(js[1]["mc_c12"].get<double>() == *parsed_csv[1].mc_c12);
  CHECK(js[1]["n_pulses"].get<std::uint64_t>() == 1000000);
  CHECK(js[1]["seed"].get<std::uint64_t>() == 42);

  // key order follows the column order
  const std::string text = to_json(rows);
  CHECK(text.find("delta_t_fs") < text.find("analytic_c12"));
  CHECK(text.find("analytic_singles") < text.find("mc_c12"));
  CHECK(text.find("mc_accidentals_se") < text.find("n_pulses"));
}

TEST_CASE("parse_csv rejects malformed input") {
  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a,b,c\n"), std::invalid_argument);
  const std::string good = to_csv(sample_rows());
  std::string mangled = good;
  mangled.replace(0, 10, "delta_t_ps");
  CHECK_THROWS_AS(parse_csv(mangled), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv(good + "1,2,3\n"), std::invalid_argument);
}

TEST_CASE("records built from predictions and sweep results") {
  DipPrediction p;
  p.delta_t = -5e-13;
  p.coincidence_rate = 3e-5;
  p.corrected_rate = 1e-5;
  p.singles_rate = 5e-3;
  p.overlap_sq = 0.5;
  const OutputRecord r = record_from_prediction(p);
  CHECK(r.delta_t_fs == -500.0);
  CHECK(r.analytic_c12 == 3e-5);
  CHECK(!r.mc_c12.has_value());
  CHECK(!r.seed.has_value());

  SweepResult s;
  s.delta_t = -5e-13;
  s.singles_1 = {4.9e-3, 7e-5};
  s.singles_2 = {5.1e-3, 7e-5};
  s.coincidences = {2.9e-5, 5e-6};
  s.analytic_ref = p;
  s.n_pulses = 12345;
  s.seed = 6;
  const OutputRecord m = record_from_sweep(s);
  CHECK(m.delta_t_fs == -500.0);
  CHECK(*m.mc_c12 == 2.9e-5);
  CHECK(*m.mc_singles_2 == 5.1e-3);
  CHECK(!m.mc_accidentals.has_value());
  CHECK(*m.n_pulses == 12345);

  s.accidentals = Estimate{2.5e-5, 4e-6};
  const OutputRecord w = record_from_sweep(s);
  CHECK(*w.mc_accidentals == 2.5e-5);
  CHECK(*w.mc_accidentals_se == 4e-6);
}
