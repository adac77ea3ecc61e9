#include "nsg/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nsg/error.hpp"
#include "nsg/oracle.hpp"

namespace nsg::io {

static_assert(std::endian::native == std::endian::little, "binary signal I/O assumes little-endian");

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot write " + path);
  out.precision(17);
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

CVec parse_samples(const json& arr) {
  if (!arr.is_array()) throw ParseError("'samples' must be an array");
  CVec out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      throw ParseError("samples must be numbers or [re, im] pairs");
    }
  }
  return out;
}

/// Rows of comma-separated numbers; a non-numeric first line is a header.
std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t columns) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  Index lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && lineno == 1) continue;
      throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    if (row.size() != columns) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                       " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Index as_index(double v, const std::string& what) {
  if (v != std::floor(v) || std::abs(v) > 1e15) throw ParseError(what + " must be an integer");
  return static_cast<Index>(v);
}

json cvec_json(const CVec& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

}  // namespace

NsgSystem parse_system(const json& j, const BuildOptions& opts) {
  const Index L = field<Index>(j, "L");
  if (j.contains("gabor")) {
    const json& g = j.at("gabor");
    const CVec win = windows::generate(field<std::string>(g, "generator"), field<Index>(g, "length"));
    const Index offset = g.contains("offset") ? field<Index>(g, "offset") : 0;
    return gabor_system(win, offset, field<Index>(g, "a"), field<Index>(g, "channels"), L);
  }
  const json& arr = j.contains("windows") ? j.at("windows") : json();
  if (!arr.is_array()) throw ParseError("'windows' must be an array");
  std::vector<Window> ws;
  for (const auto& w : arr) {
    Window win;
    win.offset = field<Index>(w, "offset");
    win.channels = field<Index>(w, "channels");
    if (w.contains("samples")) {
      win.samples = parse_samples(w.at("samples"));
    } else if (w.contains("generator")) {
      win.samples = windows::generate(field<std::string>(w, "generator"), field<Index>(w, "length"));
    } else {
      throw ParseError("window needs 'samples' or 'generator'");
    }
    ws.push_back(std::move(win));
  }
  return build_system(L, std::move(ws), opts);
}

NsgSystem read_system(const std::string& path, const BuildOptions& opts) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_system(j, opts);
}

json system_to_json(const NsgSystem& s) {
  json ws = json::array();
  for (const auto& w : s.windows()) {
    ws.push_back({{"offset", w.offset}, {"channels", w.channels}, {"samples", cvec_json(w.samples)}});
  }
  return {{"L", s.L()}, {"windows", ws}};
}

void write_system(const std::string& path, const NsgSystem& s) { write_json(path, system_to_json(s)); }

Signal read_signal(const std::string& path) {
  if (ends_with(path, ".bin")) {
    const std::string raw = read_text(path);
    if (raw.size() % (2 * sizeof(double)) != 0) {
      throw ParseError(path + ": size is not a multiple of 16 bytes");
    }
    Signal f(raw.size() / sizeof(Complex));
    std::memcpy(f.data(), raw.data(), raw.size());
    return f;
  }
  const auto rows = read_csv(path, 3);
  Signal f(rows.size(), Complex(0.0));
  std::vector<char> seen(rows.size(), 0);
  for (const auto& r : rows) {
    const Index i = as_index(r[0], "index");
    if (i < 0 || i >= static_cast<Index>(rows.size()) || seen[i]) {
      throw ParseError(path + ": indices must be a permutation of 0..N-1");
    }
    seen[i] = 1;
    f[i] = Complex(r[1], r[2]);
  }
  return f;
}

void write_signal(const std::string& path, const Signal& f) {
  if (ends_with(path, ".bin")) {
    auto out = open_out(path, std::ios::out | std::ios::binary);
    out.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(f.size() * sizeof(Complex)));
    return;
  }
  auto out = open_out(path);
  out << "index,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) out << i << ',' << f[i].real() << ',' << f[i].imag() << '\n';
}

Coefficients read_coefficients(const std::string& path, const NsgSystem& s) {
  const auto rows = read_csv(path, 4);
  if (static_cast<Index>(rows.size()) != s.total_channels()) {
    throw DimensionError(path + ": " + std::to_string(rows.size()) + " coefficients, system has " +
                         std::to_string(s.total_channels()));
  }
  Coefficients c = zero_coefficients(s);
  std::vector<std::vector<char>> seen(s.size());
  for (Index n = 0; n < s.size(); ++n) seen[n].assign(s.M(n), 0);
  for (const auto& r : rows) {
    const Index n = as_index(r[0], "n");
    const Index m = as_index(r[1], "m");
    if (n < 0 || n >= s.size() || m < 0 || m >= s.M(n)) {
      throw DimensionError(path + ": coefficient (" + std::to_string(n) + ", " + std::to_string(m) +
                           ") outside the system");
    }
    if (seen[n][m]) throw ParseError(path + ": duplicate coefficient");
    seen[n][m] = 1;
    c[n][m] = Complex(r[2], r[3]);
  }
  return c;
}

void write_coefficients(const std::string& path, const Coefficients& c) {
  auto out = open_out(path);
  out << "n,m,re,im\n";
  for (std::size_t n = 0; n < c.size(); ++n) {
    for (std::size_t m = 0; m < c[n].size(); ++m) {
      out << n << ',' << m << ',' << c[n][m].real() << ',' << c[n][m].imag() << '\n';
    }
  }
}

void write_operator(const std::string& path, const WalnutOperator& W) {
  auto out = open_out(path);
  out << "offset,l,re,im\n";
  for (const auto& [x, w] : W.bands()) {
    for (Index l = 0; l < W.L(); ++l) {
      if (w[l] == Complex(0.0)) continue;
      out << x << ',' << l << ',' << w[l].real() << ',' << w[l].imag() << '\n';
    }
  }
}

void write_magnitude_grid(const std::string& path, const WalnutOperator& W) {
  const DenseMatrix D = to_dense(W);
  auto out = open_out(path);
  for (Index r = 0; r < D.rows(); ++r) {
    for (Index c = 0; c < D.cols(); ++c) out << (c ? "," : "") << std::abs(D(r, c));
    out << '\n';
  }
}

void write_json(const std::string& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json to_json(const RegimeReport& r) {
  json ws = json::array();
  for (const auto& w : r.windows) {
    ws.push_back({{"n", w.n},
                  {"order_ok", w.order_ok},
                  {"half_ok", w.half_ok},
                  {"cor43_ok", w.cor43_ok},
                  {"epsilon", w.epsilon}});
  }
  return {{"painless", r.painless},
          {"thm41", r.thm41},
          {"cor43", r.cor43},
          {"circular_ok", r.circular_ok},
          {"circular_equality", r.circular_equality},
          {"endpoint_vanishing", r.endpoint_vanishing},
          {"degenerate_touching", r.degenerate_touching},
          {"epsilon", r.epsilon},
          {"C", r.C},
          {"max_overlap", r.max_overlap},
          {"violations", r.violations},
          {"windows", ws}};
}

json to_json(const StructureReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"n", e.n},
                       {"k", e.k},
                       {"offset", e.offset},
                       {"support_start", e.support.start()},
                       {"support_length", e.support.length()},
                       {"sup_norm", e.sup_norm},
                       {"bound", e.bound},
                       {"within_bound", e.within_bound}});
  }
  json wit = json::array();
  for (const auto& w : r.witnesses) {
    wit.push_back({{"offset", w.offset}, {"position", w.position}, {"magnitude", w.magnitude},
                   {"reason", w.reason}});
  }
  return {{"verdict", to_string(r.overall())},
          {"support", to_string(r.support)},
          {"weight_bound", to_string(r.weight_bound)},
          {"operator_norm", to_string(r.operator_norm)},
          {"max_off_structure", r.max_off_structure},
          {"degenerate_touching", r.degenerate_touching},
          {"k_max", r.k_max},
          {"entries", entries},
          {"witnesses", wit}};
}

json to_json(const NeumannReport& r) {
  json bands = json::array();
  for (const auto& [x, v] : r.band_sup) bands.push_back({{"offset", x}, {"sup", v}});
  return {{"iterations", r.iterations},
          {"A", r.A},
          {"B", r.B},
          {"contraction", r.contraction},
          {"last_term_norm", r.last_term_norm},
          {"tail_bound", std::isfinite(r.tail_bound) ? json(r.tail_bound) : json(nullptr)},
          {"bands", bands},
          {"structure", to_json(r.structure)}};
}

json to_json(const DualityReport& r) {
  json offs = json::array();
  for (const auto& [x, v] : r.offset_max) offs.push_back({{"offset", x}, {"max_residual", v}});
  return {{"max_defect", r.max_defect},
          {"worst_offset", r.worst_offset},
          {"worst_position", r.worst_position},
          {"offsets", offs}};
}

json to_json(const ExistenceReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json wit = json::array();
  for (const auto& w : r.witnesses) {
    wit.push_back({{"condition", w.condition}, {"position", w.position}, {"window", w.window},
                   {"value", w.value}});
  }
  return {{"A", num(r.A)},
          {"A_bi", num(r.A_bi)},
          {"A_bii", num(r.A_bii)},
          {"A_biii", num(r.A_biii)},
          {"feasible", r.feasible()},
          {"witnesses", wit}};
}

json to_json(const LemmaReport& r) {
  json clauses = json::array();
  for (const auto& c : r.clauses) {
    json wit = json::array();
    for (const auto& w : c.witnesses) {
      wit.push_back({{"n", w.n}, {"m", w.m}, {"k", w.k}, {"j", w.j}, {"detail", w.detail}});
    }
    clauses.push_back({{"clause", std::string(1, c.id)}, {"pass", c.pass}, {"checks", c.checks},
                       {"witnesses", wit}});
  }
  return {{"regime_ok", r.regime_ok}, {"k_max", r.k_max}, {"all_pass", r.all_pass()},
          {"clauses", clauses}};
}

}  // namespace nsg::io
