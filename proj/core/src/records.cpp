#include "speckledip/records.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace speckledip {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

std::string format_cell(const std::optional<std::uint64_t>& v) {
  if (!v) return {};
  char buf[24];
  std::snprintf(buf, sizeof buf, "%" PRIu64, *v);
  return buf;
}

}  // namespace

OutputRecord record_from_prediction(const DipPrediction& prediction) {
  OutputRecord r;
  r.delta_t_fs = prediction.delta_t * 1e15;
  r.analytic_c12 = prediction.coincidence_rate;
  r.analytic_c12_corrected = prediction.corrected_rate;
  r.analytic_singles = prediction.singles_rate;
  return r;
}

OutputRecord record_from_sweep(const SweepResult& result) {
  OutputRecord r = record_from_prediction(result.analytic_ref);
  r.mc_c12 = result.coincidences.value;
  r.mc_c12_se = result.coincidences.se;
  r.mc_singles_1 = result.singles_1.value;
  r.mc_singles_1_se = result.singles_1.se;
  r.mc_singles_2 = result.singles_2.value;
  r.mc_singles_2_se = result.singles_2.se;
  if (result.accidentals) {
    r.mc_accidentals = result.accidentals->value;
    r.mc_accidentals_se = result.accidentals->se;
  }
  r.n_pulses = result.n_pulses;
  r.seed = result.seed;
  return r;
}

std::string to_csv(std::span<const OutputRecord> records) {
  std::ostringstream os;
  for (std::size_t c = 0; c < kOutputColumns.size(); ++c) {
    if (c) os << ',';
    os << kOutputColumns[c];
  }
  os << '\n';
  for (const OutputRecord& r : records) {
    os << format_double(r.delta_t_fs) << ',' << format_double(r.analytic_c12)
       << ',' << format_double(r.analytic_c12_corrected) << ','
       << format_double(r.analytic_singles) << ',' << format_cell(r.mc_c12)
       << ',' << format_cell(r.mc_c12_se) << ',' << format_cell(r.mc_singles_1)
       << ',' << format_cell(r.mc_singles_1_se) << ','
       << format_cell(r.mc_singles_2) << ',' << format_cell(r.mc_singles_2_se)
       << ',' << format_cell(r.mc_accidentals) << ','
       << format_cell(r.mc_accidentals_se) << ',' << format_cell(r.n_pulses)
       << ',' << format_cell(r.seed) << '\n';
  }
  return os.str();
}

std::string to_json(std::span<const OutputRecord> records) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const OutputRecord& r : records) {
    nlohmann::ordered_json row;
    row["delta_t_fs"] = r.delta_t_fs;
    row["analytic_c12"] = r.analytic_c12;
    row["analytic_c12_corrected"] = r.analytic_c12_corrected;
    row["analytic_singles"] = r.analytic_singles;
    auto set = [&row](const char* key, const auto& opt) {
      if (opt)
        row[key] = *opt;
      else
        row[key] = nullptr;
    };
    set("mc_c12", r.mc_c12);
    set("mc_c12_se", r.mc_c12_se);
    set("mc_singles_1", r.mc_singles_1);
    set("mc_singles_1_se", r.mc_singles_1_se);
    set("mc_singles_2", r.mc_singles_2);
    set("mc_singles_2_se", r.mc_singles_2_se);
    set("mc_accidentals", r.mc_accidentals);
    set("mc_accidentals_se", r.mc_accidentals_se);
    set("n_pulses", r.n_pulses);
    set("seed", r.seed);
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::invalid_argument("parse_csv: bad numeric cell '" + s + "'");
  return v;
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

std::optional<std::uint64_t> parse_opt_u64(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return static_cast<std::uint64_t>(std::strtoull(s.c_str(), nullptr, 10));
}

}  // namespace

std::vector<OutputRecord> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("parse_csv: empty input");
  const std::vector<std::string> header = split_line(line);
  if (header.size() != kOutputColumns.size())
    throw std::invalid_argument("parse_csv: wrong column count in header");
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] != kOutputColumns[c])
      throw std::invalid_argument("parse_csv: unexpected column '" +
                                  header[c] + "'");

  std::vector<OutputRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != kOutputColumns.size())
      throw std::invalid_argument("parse_csv: wrong cell count in row");
    OutputRecord r;
    r.delta_t_fs = parse_double(cells[0]);
    r.analytic_c12 = parse_double(cells[1]);
    r.analytic_c12_corrected = parse_double(cells[2]);
    r.analytic_singles = parse_double(cells[3]);
    r.mc_c12 = parse_opt_double(cells[4]);
    r.mc_c12_se = parse_opt_double(cells[5]);
    r.mc_singles_1 = parse_opt_double(cells[6]);
    r.mc_singles_1_se = parse_opt_double(cells[7]);
    r.mc_singles_2 = parse_opt_double(cells[8]);
    r.mc_singles_2_se = parse_opt_double(cells[9]);
    r.mc_accidentals = parse_opt_double(cells[10]);
    r.mc_accidentals_se = parse_opt_double(cells[11]);
    r.n_pulses = parse_opt_u64(cells[12]);
    r.seed = parse_opt_u64(cells[13]);
    records.push_back(r);
  }
  return records;
}

}  // namespace speckledip
