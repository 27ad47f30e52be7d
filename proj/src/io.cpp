#include "measurecost/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace measurecost {

using nlohmann::json;

namespace {

json complex_pair(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out.push_back(complex_pair(m(i, j)));
  return out;
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("json: expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix parse_matrix(const json& j, Index rows, Index cols) {
  if (!j.is_array()) throw InputError("json: matrix must be an array");
  std::vector<Complex> flat;
  const bool nested_rows = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested_rows) {
    for (const auto& row : j) {
      if (!row.is_array()) throw InputError("json: matrix row must be an array");
      for (const auto& e : row) flat.push_back(parse_complex(e));
    }
  } else {
    for (const auto& e : j) flat.push_back(parse_complex(e));
  }
  if (static_cast<Index>(flat.size()) != rows * cols)
    throw InputError("json: matrix has " + std::to_string(flat.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) m(i, c) = flat[static_cast<std::size_t>(i * cols + c)];
  return m;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

Index read_dim(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw InputError("json: missing integer field \"dim\"");
  const auto d = j["dim"].get<long long>();
  if (d < 1 || d > 4096) throw InputError("json: \"dim\" out of range");
  return static_cast<Index>(d);
}

QuantumInstrument instrument_from(const json& j) {
  const Index d = read_dim(j);
  if (!j.contains("outcomes") || !j["outcomes"].is_array()) throw InputError("json: missing array \"outcomes\"");
  std::vector<KrausList> outcomes;
  for (const auto& o : j["outcomes"]) {
    if (!o.is_array()) throw InputError("json: each outcome must be a list of matrices");
    KrausList kl;
    for (const auto& m : o) kl.push_back(parse_matrix(m, d, d));
    outcomes.push_back(std::move(kl));
  }
  return QuantumInstrument(d, std::move(outcomes));
}

json instrument_json(const QuantumInstrument& instr) {
  json outcomes = json::array();
  for (const auto& kl : instr.outcomes()) {
    json list = json::array();
    for (const auto& m : kl) list.push_back(matrix_to_json(m));
    outcomes.push_back(std::move(list));
  }
  return json{{"dim", instr.system_dim()}, {"outcomes", std::move(outcomes)}};
}

}  // namespace

QuantumInstrument parse_instrument(std::string_view text) { return instrument_from(parse_json(text)); }

std::string instrument_to_json(const QuantumInstrument& instr) { return instrument_json(instr).dump() + "\n"; }

DensityMatrix parse_state(std::string_view text) {
  const json j = parse_json(text);
  const Index d = read_dim(j);
  if (j.contains("rho")) return DensityMatrix(parse_matrix(j["rho"], d, d));
  if (j.contains("psi")) {
    const ComplexVector psi = parse_matrix(j["psi"], d, 1).col(0);
    return DensityMatrix::pure(psi);
  }
  throw InputError("json: state needs \"rho\" or \"psi\"");
}

std::string state_to_json(const DensityMatrix& rho) {
  return json{{"dim", rho.dim()}, {"rho", matrix_to_json(rho.matrix())}}.dump() + "\n";
}

std::string device_to_json(const MeasurementDevice& dev, const QuantumInstrument& instr) {
  json j = instrument_json(instr);
  j["memory_blocks"] = dev.layout().block_dims();
  j["U_SM"] = matrix_to_json(dev.u_sm());
  j["rho_M"] = matrix_to_json(dev.rho_m().matrix());
  return j.dump() + "\n";
}

std::pair<MeasurementDevice, QuantumInstrument> parse_device(std::string_view text) {
  const json j = parse_json(text);
  auto instr = instrument_from(j);
  if (!j.contains("memory_blocks") || !j["memory_blocks"].is_array()) throw InputError("json: missing \"memory_blocks\"");
  std::vector<Index> blocks;
  for (const auto& b : j["memory_blocks"]) {
    if (!b.is_number_integer()) throw InputError("json: memory block sizes must be integers");
    blocks.push_back(b.get<Index>());
  }
  MemoryLayout layout(blocks);
  const Index dm = layout.total_dim();
  const Index ds = instr.system_dim();
  if (!j.contains("U_SM")) throw InputError("json: missing \"U_SM\"");
  ComplexMatrix u = parse_matrix(j["U_SM"], ds * dm, ds * dm);
  DensityMatrix rho_m = DensityMatrix::maximally_mixed(dm);
  if (j.contains("rho_M")) {
    rho_m = DensityMatrix(parse_matrix(j["rho_M"], dm, dm));
  } else {
    ComplexVector m0 = ComplexVector::Zero(dm);
    m0(0) = 1.0;
    rho_m = DensityMatrix::pure(m0);
  }
  MeasurementDevice dev(ds, std::move(layout), std::move(rho_m), std::move(u), Hamiltonian::zero(ds),
                        Hamiltonian::zero(dm));
  return {std::move(dev), std::move(instr)};
}

std::string report_to_json(const EnergyReport& report) {
  json j = json::object();
  const auto values = report_values(report);
  for (std::size_t i = 0; i < kEnergyReportFields.size(); ++i) {
    const std::string key(kEnergyReportFields[i]);
    if (std::isnan(values[i]))
      j[key] = nullptr;
    else
      j[key] = values[i] + 0.0;
  }
  return j.dump() + "\n";
}

// ---------------------------------------------------------------------------

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt(double x, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x + 0.0);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<SvgSeries>& series) {
  constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 50;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmin < xmax)) xmin = 0, xmax = 1;
  if (!(ymin < ymax)) ymin -= 0.5, ymax += 0.5;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width, "%.0f") + "\" height=\"" +
         fmt(height, "%.0f") + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape_xml(title) + "</text>\n";
  out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double xv = xmin + (xmax - xmin) * t / ticks;
    const double yv = ymin + (ymax - ymin) * t / ticks;
    out += "<line x1=\"" + fmt(px(xv)) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" + fmt(px(xv)) + "\" y2=\"" +
           fmt(top + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" +
           fmt(xv, "%.3g") + "</text>\n";
    out += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(py(yv)) + "\" x2=\"" + fmt(left) + "\" y2=\"" +
           fmt(py(yv)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(py(yv) + 4) + "\" text-anchor=\"end\">" +
           fmt(yv, "%.3g") + "</text>\n";
  }
  if (ymin < 0 && ymax > 0)
    out += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(py(0)) + "\" x2=\"" + fmt(left + pw) + "\" y2=\"" +
           fmt(py(0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  out += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(height - 10) + "\" text-anchor=\"middle\">" +
         escape_xml(x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(top + ph / 2) + ")\">" + escape_xml(y_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      out += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
    }
    out += "\"><title>" + escape_xml(s.label) + "</title></polyline>\n";
    const double ly = top + 16 + 18.0 * static_cast<double>(k);
    out += "<line x1=\"" + fmt(left + pw + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(left + pw + 36) + "\" y2=\"" +
           fmt(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt(left + pw + 42) + "\" y=\"" + fmt(ly + 4) + "\">" + escape_xml(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace measurecost
