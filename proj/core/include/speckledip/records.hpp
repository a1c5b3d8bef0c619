#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speckledip/analytic.hpp"
#include "speckledip/montecarlo.hpp"

namespace speckledip {

/// One flattened output row per delay. Delay is reported in femtoseconds;
/// every other quantity is per gate. MC fields are absent in
/// analytic-only tables and the accidental fields are absent unless a
/// blocked-arm estimate ran.
struct OutputRecord {
  double delta_t_fs = 0.0;
  double analytic_c12 = 0.0;
  double analytic_c12_corrected = 0.0;
  double analytic_singles = 0.0;
  std::optional<double> mc_c12;
  std::optional<double> mc_c12_se;
  std::optional<double> mc_singles_1;
  std::optional<double> mc_singles_1_se;
  std::optional<double> mc_singles_2;
  std::optional<double> mc_singles_2_se;
  std::optional<double> mc_accidentals;
  std::optional<double> mc_accidentals_se;
  std::optional<std::uint64_t> n_pulses;
  std::optional<std::uint64_t> seed;
};

/// Fixed column order shared by the CSV header and the JSON keys.
inline constexpr std::array<const char*, 14> kOutputColumns = {
    "delta_t_fs",     "analytic_c12",    "analytic_c12_corrected",
    "analytic_singles", "mc_c12",        "mc_c12_se",
    "mc_singles_1",   "mc_singles_1_se", "mc_singles_2",
    "mc_singles_2_se", "mc_accidentals", "mc_accidentals_se",
    "n_pulses",       "seed"};

OutputRecord record_from_prediction(const DipPrediction& prediction);
OutputRecord record_from_sweep(const SweepResult& result);

/// CSV with the exact column names, '.' decimal point, newline-terminated
/// rows, doubles at full round-trip precision, empty cells for absent
/// fields.
std::string to_csv(std::span<const OutputRecord> records);

/// JSON array of objects keyed by the column names in column order;
/// absent fields serialize as null.
std::string to_json(std::span<const OutputRecord> records);

/// Parses to_csv output back into records. Throws std::invalid_argument
/// on a malformed header or row.
std::vector<OutputRecord> parse_csv(const std::string& text);

}  // namespace speckledip
