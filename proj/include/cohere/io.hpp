#pragma once

// State files (JSON), scan grids (CSV) and the scan heatmap (SVG).
//
// State file schema:
//   {"kind": "pure",  "dims": [2, 2], "amplitudes": [{"re": .., "im": ..}, ...]}
//   {"kind": "mixed", "dims": [2, 2], "matrix": [{"re": .., "im": ..}, ...]}
// Matrix entries are row-major; a list of rows is accepted as well.

#include "cohere/gdc_twoqubit.hpp"
#include "cohere/state.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace cohere {

using json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() || !j["im"].is_number())
    throw InvalidState("parse error: complex entries must be {\"re\": number, \"im\": number}");
  return {j["re"].get<double>(), j["im"].get<double>()};
}

inline json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace detail

inline AnyState parse_state(const json& j) {
  if (!j.is_object()) throw InvalidState("parse error: state file must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidState("parse error: missing \"kind\"");
  if (!j.contains("dims") || !j["dims"].is_array()) throw InvalidState("parse error: missing \"dims\"");
  Dims dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer()) throw InvalidState("parse error: dims must be integers");
    dims.push_back(d.get<int>());
  }
  detail::validate_dims(dims);
  const std::size_t n = total_dimension(dims);
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "pure") {
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) throw InvalidState("parse error: missing \"amplitudes\"");
    const json& a = j["amplitudes"];
    if (a.size() != n) throw InvalidState("length violation: amplitude count must equal the product of dims");
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = detail::parse_complex(a[k]);
    return PureState(std::move(dims), std::move(v));
  }
  if (kind == "mixed") {
    if (!j.contains("matrix") || !j["matrix"].is_array()) throw InvalidState("parse error: missing \"matrix\"");
    const json& m = j["matrix"];
    CMatrix rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const bool nested = !m.empty() && m[0].is_array();
    if (nested) {
      if (m.size() != n) throw InvalidState("length violation: matrix side must equal the product of dims");
      for (std::size_t r = 0; r < n; ++r) {
        if (!m[r].is_array() || m[r].size() != n)
          throw InvalidState("length violation: matrix side must equal the product of dims");
        for (std::size_t c = 0; c < n; ++c)
          rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = detail::parse_complex(m[r][c]);
      }
    } else {
      if (m.size() != n * n) throw InvalidState("length violation: matrix side must equal the product of dims");
      for (std::size_t k = 0; k < n * n; ++k)
        rho(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = detail::parse_complex(m[k]);
    }
    return DensityMatrix(std::move(dims), std::move(rho));
  }
  throw InvalidState("parse error: kind must be \"pure\" or \"mixed\"");
}

inline AnyState parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidState(std::string("parse error: ") + e.what());
  }
  return parse_state(j);
}

inline AnyState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

// Doubles are written with round-trip precision, so parsing the output
// reproduces every entry exactly.
inline json state_json(const AnyState& s) {
  json j;
  if (const auto* p = std::get_if<PureState>(&s)) {
    j["kind"] = "pure";
    j["dims"] = p->dims();
    json amps = json::array();
    for (Eigen::Index k = 0; k < p->amplitudes().size(); ++k) amps.push_back(detail::complex_json(p->amplitudes()(k)));
    j["amplitudes"] = std::move(amps);
  } else {
    const auto& rho = std::get<DensityMatrix>(s);
    j["kind"] = "mixed";
    j["dims"] = rho.dims();
    json m = json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r)
      for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) m.push_back(detail::complex_json(rho.matrix()(r, c)));
    j["matrix"] = std::move(m);
  }
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

// %.12g
inline std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Rounded to 12 significant digits for reports.
inline double round_sig12(double x) { return std::stod(format_sig12(x)); }

inline std::string scan_csv(const std::vector<ScanPoint>& points) {
  std::string out = "theta,phi,c_gdc\n";
  for (const auto& p : points) {
    out += format_sig12(p.theta);
    out += ',';
    out += format_sig12(p.phi);
    out += ',';
    out += format_sig12(p.c_gdc);
    out += '\n';
  }
  return out;
}

namespace detail {

// Linear interpolation through a few perceptually ordered anchors.
inline std::string heat_color(double t) {
  static constexpr double anchors[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  char buf[16];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(anchors[k][c] + f * (anchors[k + 1][c] - anchors[k][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace detail

// Heatmap with phi on the horizontal axis and theta increasing upwards.
inline std::string scan_svg(const std::vector<ScanPoint>& points, int theta_steps, int phi_steps) {
  constexpr double left = 70, top = 30, size = 400, bar_x = 500, bar_w = 20;
  double vmax = 0.0;
  for (const auto& p : points) vmax = std::max(vmax, p.c_gdc);
  const double scale = vmax > 0.0 ? 1.0 / vmax : 0.0;
  const double cw = size / phi_steps, ch = size / theta_steps;

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"490\" viewBox=\"0 0 600 490\">\n";
  s << "<rect width=\"600\" height=\"490\" fill=\"white\"/>\n";
  s << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto it = static_cast<int>(k / static_cast<std::size_t>(phi_steps));
    const auto ip = static_cast<int>(k % static_cast<std::size_t>(phi_steps));
    s << "<rect x=\"" << format_sig12(left + ip * cw) << "\" y=\"" << format_sig12(top + (theta_steps - 1 - it) * ch)
      << "\" width=\"" << format_sig12(cw) << "\" height=\"" << format_sig12(ch) << "\" fill=\""
      << detail::heat_color(points[k].c_gdc * scale) << "\"/>\n";
  }
  for (int k = 0; k < 50; ++k)
    s << "<rect x=\"" << bar_x << "\" y=\"" << format_sig12(top + size - (k + 1) * size / 50) << "\" width=\"" << bar_w
      << "\" height=\"" << format_sig12(size / 50) << "\" fill=\"" << detail::heat_color((k + 0.5) / 50) << "\"/>\n";
  s << "</g>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << size << "\" height=\"" << size
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"14\" fill=\"black\">\n";
  s << "<text x=\"" << left << "\" y=\"" << top + size + 20 << "\" text-anchor=\"middle\">0</text>\n";
  s << "<text x=\"" << left + size << "\" y=\"" << top + size + 20 << "\" text-anchor=\"middle\">π/2</text>\n";
  s << "<text x=\"" << left + size / 2 << "\" y=\"" << top + size + 40 << "\" text-anchor=\"middle\">φ</text>\n";
  s << "<text x=\"" << left - 8 << "\" y=\"" << top + size + 5 << "\" text-anchor=\"end\">0</text>\n";
  s << "<text x=\"" << left - 8 << "\" y=\"" << top + 5 << "\" text-anchor=\"end\">π/2</text>\n";
  s << "<text x=\"" << left - 40 << "\" y=\"" << top + size / 2 << "\" text-anchor=\"middle\">θ</text>\n";
  s << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << top + 5 << "\">" << format_sig12(round_sig12(vmax)) << "</text>\n";
  s << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << top + size + 5 << "\">0</text>\n";
  s << "<text x=\"" << bar_x - 10 << "\" y=\"" << top - 10 << "\">C_GDC</text>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace cohere
