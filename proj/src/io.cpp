#include "cantor/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "cantor/errors.hpp"

namespace cantor::io {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Non-empty lines split into trimmed fields; the first line must equal `header`.
std::vector<std::vector<std::string>> csv_rows(std::string_view text, std::string_view header,
                                               std::size_t columns) {
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw InvalidInput("expected CSV header '" + std::string(header) + "', got '" + line + "'");
      seen_header = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != columns) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields");
    }
    for (auto& f : fields) f = trim(f);
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw InvalidInput("empty CSV input");
  return rows;
}

std::string fmt(double x) { return format_real<double>(x); }

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <Real T>
std::string jacobi_csv(const JacobiMatrix<T>& j) {
  std::string s = "k,a_k,b_k\n";
  for (int k = 1; k <= j.valid_length; ++k) {
    s += std::to_string(k) + ',' + format_real<T>(j.a_at(k)) + ',' + format_real<T>(j.b_at(k)) + '\n';
  }
  return s;
}

template <Real T>
JacobiMatrix<T> parse_jacobi_csv(std::string_view text) {
  const auto rows = csv_rows(text, "k,a_k,b_k", 3);
  if (rows.empty()) throw InvalidInput("Jacobi CSV has no coefficient rows");
  JacobiMatrix<T> j;
  int expect = 1;
  for (const auto& r : rows) {
    if (r[0] != std::to_string(expect)) {
      throw InvalidInput("Jacobi CSV row " + std::to_string(expect) + " has index '" + r[0] + "'");
    }
    j.a.push_back(parse_real<T>(r[1]));
    j.b.push_back(parse_real<T>(r[2]));
    ++expect;
  }
  j.valid_length = static_cast<int>(rows.size());
  j.validate();
  return j;
}

template <Real T>
std::string measure_csv(const DiscreteMeasure<T>& m) {
  std::string s = "node,weight\n";
  for (std::size_t i = 0; i < m.size(); ++i) s += format_real<T>(m.nodes[i]) + ',' + format_real<T>(m.weights[i]) + '\n';
  return s;
}

template <Real T>
DiscreteMeasure<T> parse_measure_csv(std::string_view text) {
  DiscreteMeasure<T> m;
  for (const auto& r : csv_rows(text, "node,weight", 2)) {
    m.nodes.push_back(parse_real<T>(r[0]));
    m.weights.push_back(parse_real<T>(r[1]));
  }
  m.validate();
  return m;
}

template <Real T>
std::string points_csv(std::span<const T> points) {
  std::string s = "index,value\n";
  for (std::size_t i = 0; i < points.size(); ++i) s += std::to_string(i + 1) + ',' + format_real<T>(points[i]) + '\n';
  return s;
}

template <Real T>
std::string intervals_csv(const GammaSequence& gamma, int s_max) {
  std::string s = "level,index,lo,hi\n";
  for (int level = 0; level <= s_max; ++level) {
    const auto iv = basic_intervals<T>(gamma, level);
    for (std::size_t i = 0; i < iv.size(); ++i) {
      s += std::to_string(level) + ',' + std::to_string(i + 1) + ',' + format_real<T>(iv[i].lo) + ',' +
           format_real<T>(iv[i].hi) + '\n';
    }
  }
  return s;
}

template <Real T>
std::string scales_csv(const GammaSequence& gamma, int s_max) {
  std::string s = "s,delta,l1,ratio\n";
  for (int k = 0; k <= s_max; ++k) {
    const T d = gamma.delta<T>(k);
    const T l = leftmost_length<T>(gamma, k);
    s += std::to_string(k) + ',' + format_real<T>(d) + ',' + format_real<T>(l) + ',' + format_real<T>(l / d) + '\n';
  }
  return s;
}

std::string convergence_csv(const StabilizationStep& step) {
  std::string s = "k,delta_a,delta_b\n";
  for (std::size_t i = 0; i < step.delta_a.size(); ++i) {
    s += std::to_string(i + 1) + ',' + fmt(step.delta_a[i]) + ',' + fmt(step.delta_b[i]) + '\n';
  }
  return s;
}

std::string spacing_report_csv(const SpacingReport& report) {
  std::string s = "n,s,M_n,lower_eq1,upper_eq1,lower_eq2,upper_eq2,pass_eq1,pass_eq2,margin_lo,margin_hi\n";
  for (const auto& r : report.rows) {
    s += std::to_string(r.n) + ',' + std::to_string(r.s) + ',' + fmt(r.m_n) + ',' + fmt(r.lower_eq1) + ',' +
         fmt(r.upper_eq1) + ',' + fmt_opt(r.lower_eq2) + ',' + fmt_opt(r.upper_eq2) + ',' + fmt_bool(r.pass_eq1) +
         ',' + (r.pass_eq2 ? fmt_bool(*r.pass_eq2) : std::string()) + ',' + fmt(r.margin_lo) + ',' +
         fmt(r.margin_hi) + '\n';
  }
  return s;
}

nlohmann::json to_json(const GammaDescriptor& d) {
  return {{"kind", gamma_kind_name(d.kind)}, {"values", d.values}, {"descriptor", d.to_string()}};
}

nlohmann::json to_json(const BoundCheck& c) {
  return {{"name", c.name}, {"detail", c.detail}, {"lhs", c.lhs},
          {"rhs", c.rhs},   {"pass", c.pass},     {"informational", c.informational}};
}

nlohmann::json to_json(const SpacingRow& r) {
  nlohmann::json j = {{"n", r.n},
                      {"s", r.s},
                      {"M_n", r.m_n},
                      {"argmin", {r.argmin + 1, r.argmin + 2}},
                      {"lower_eq1", r.lower_eq1},
                      {"upper_eq1", r.upper_eq1},
                      {"pass_eq1", r.pass_eq1},
                      {"margin_lo", r.margin_lo},
                      {"margin_hi", r.margin_hi},
                      {"source", r.exact ? "exact-branch" : "eigensolve"}};
  if (r.lower_eq2) {
    j["lower_eq2"] = *r.lower_eq2;
    j["upper_eq2"] = *r.upper_eq2;
    j["pass_eq2"] = *r.pass_eq2;
  }
  if (r.cross_check) j["cross_check"] = *r.cross_check;
  return j;
}

nlohmann::json to_json(const SpacingReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return {{"rows", rows}, {"precision_notice", r.precision_notice}, {"all_pass", r.all_pass()}};
}

nlohmann::json to_json(const StabilizationStep& s) {
  return {{"depth", s.depth}, {"max_delta", s.max_delta()}, {"delta_a", s.delta_a}, {"delta_b", s.delta_b}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + '\n'; }

#define CANTOR_INSTANTIATE_IO(T)                                                \
  template std::string jacobi_csv<T>(const JacobiMatrix<T>&);                   \
  template JacobiMatrix<T> parse_jacobi_csv<T>(std::string_view);               \
  template std::string measure_csv<T>(const DiscreteMeasure<T>&);               \
  template DiscreteMeasure<T> parse_measure_csv<T>(std::string_view);           \
  template std::string points_csv<T>(std::span<const T>);                       \
  template std::string intervals_csv<T>(const GammaSequence&, int);             \
  template std::string scales_csv<T>(const GammaSequence&, int);

CANTOR_INSTANTIATE_IO(double)
CANTOR_INSTANTIATE_IO(DoubleDouble)

#undef CANTOR_INSTANTIATE_IO

}  // namespace cantor::io
