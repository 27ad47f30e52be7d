#pragma once

#include "measurecost/device.hpp"
#include "measurecost/energetics.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace measurecost {

/// Malformed external input (JSON, numeric flags).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON. Matrices are lists of [re, im] pairs in row-major order; a list of rows
// of such pairs is accepted as well.
//   instrument: {"dim": n, "outcomes": [[M_k0, M_k1, ...], ...]}
//   state:      {"dim": n, "rho": M} or {"dim": n, "psi": [[re, im], ...]}
//   device:     instrument fields plus "memory_blocks", "U_SM" and "rho_M"

QuantumInstrument parse_instrument(std::string_view text);
std::string instrument_to_json(const QuantumInstrument& instr);

DensityMatrix parse_state(std::string_view text);
std::string state_to_json(const DensityMatrix& rho);

std::string device_to_json(const MeasurementDevice& dev, const QuantumInstrument& instr);
std::pair<MeasurementDevice, QuantumInstrument> parse_device(std::string_view text);

std::string report_to_json(const EnergyReport& report);

// CSV with a header row, LF endings and 12 significant digits.

/// %.12g with -0 printed as 0; NaN becomes an empty field.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const;
};

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot with axes, ticks and a legend.
std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<SvgSeries>& series);

}  // namespace measurecost
