#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "cantor/errors.hpp"
#include "cantor/io.hpp"

namespace cantor::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view precision_mode_name(PrecisionMode p) {
  switch (p) {
    case PrecisionMode::Double: return "double";
    case PrecisionMode::DoubleDouble: return "double-double";
    case PrecisionMode::Auto: return "auto";
  }
  return "double";
}

namespace {

PrecisionMode parse_precision_mode(std::string_view s) {
  if (s == "double") return PrecisionMode::Double;
  if (s == "double-double") return PrecisionMode::DoubleDouble;
  if (s == "auto") return PrecisionMode::Auto;
  throw InvalidInput("precision must be double, double-double or auto (got '" + std::string(s) + "')");
}

GammaDomain domain_of(const RunConfig& cfg) {
  return cfg.chebyshev_limit ? GammaDomain::ChebyshevLimit : GammaDomain::Open;
}

/// --gamma takes a descriptor or the path of a file holding one, either as
/// plain text or as a JSON object {"kind": ..., "values": [...]}.
std::string resolve_gamma_text(const std::string& arg) {
  if (arg.find(':') != std::string::npos || !fs::is_regular_file(arg)) return arg;
  const std::string text = io::read_file(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
      GammaDescriptor d;
      d.kind = parse_gamma_kind(j.at("kind").get<std::string>());
      for (const auto& v : j.at("values")) d.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      return d.to_string();
    } catch (const json::exception& e) {
      throw InvalidInput("gamma file " + arg + ": " + e.what());
    }
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return first == std::string::npos ? std::string() : text.substr(first, last - first + 1);
}

Precision geometry_precision(const RunConfig& cfg, const GammaSequence& gamma) {
  switch (cfg.precision) {
    case PrecisionMode::Double: return Precision::Double;
    case PrecisionMode::DoubleDouble: return Precision::DoubleDouble;
    case PrecisionMode::Auto: break;
  }
  return gamma.delta<double>(cfg.levels) < 1e-12 ? Precision::DoubleDouble : Precision::Double;
}

EigenOptions eigen_options(const RunConfig& cfg) {
  EigenOptions o;
  o.rel_tol = cfg.tol_eigen;
  return o;
}

json metadata(const RunConfig& cfg, const GammaSequence& gamma, std::string_view precision) {
  return {{"tool", "cantor-cli"},
          {"tool_version", kToolVersion},
          {"command", cfg.command},
          {"gamma", io::to_json(gamma.descriptor())},
          {"precision", precision},
          {"config", cfg.to_json()}};
}

json gamma_annotations(const GammaSequence& gamma, int depth) {
  return {{"summability_partial_sum", gamma.summability_partial_sum(depth)},
          {"parreau_widom_partial_sum", gamma.parreau_widom_partial_sum(depth)},
          {"all_values_at_most_one_sixth", gamma.all_at_most_one_sixth()},
          {"partial_sum_depth", depth},
          {"note", "annotations of the materialised prefix only; no classification is asserted"}};
}

void prepare_out(const RunConfig& cfg) { fs::create_directories(cfg.out); }

void write(const RunConfig& cfg, const std::string& name, std::string_view content) {
  io::write_file_atomic(cfg.out / name, content);
}

// ---------------------------------------------------------------------------

template <Real T>
int geometry_impl(const RunConfig& cfg, const GammaSequence& gamma, std::ostream& out) {
  const int iv_levels = cfg.interval_levels >= 0 ? cfg.interval_levels : std::min(cfg.levels, 12);
  const std::string intervals = io::intervals_csv<T>(gamma, iv_levels);
  const std::string scales = io::scales_csv<T>(gamma, cfg.levels);

  json checks = json::array();
  constexpr double kQuarterPiSq = std::numbers::pi * std::numbers::pi / 4.0;
  bool all_ok = true;
  for (int s = 0; s <= cfg.levels; ++s) {
    const T d = gamma.delta<T>(s);
    const T l = leftmost_length<T>(gamma, s);
    const bool ok = d <= l && l <= T(kQuarterPiSq) * d;
    all_ok = all_ok && ok;
    checks.push_back({{"s", s}, {"ratio", to_double(l / d)}, {"pass", ok}});
  }
  json doc = metadata(cfg, gamma, RealTraits<T>::name);
  doc["interval_levels"] = iv_levels;
  doc["scale_checks"] = checks;
  doc["all_pass"] = all_ok;
  doc["annotations"] = gamma_annotations(gamma, cfg.levels);

  prepare_out(cfg);
  write(cfg, "intervals.csv", intervals);
  write(cfg, "scales.csv", scales);
  write(cfg, "geometry.json", io::dump(doc));
  out << "geometry: levels 0.." << cfg.levels << ", intervals to level " << iv_levels << ", scale bounds "
      << (all_ok ? "hold" : "VIOLATED") << '\n';
  return all_ok ? kSuccess : kNumericalFailure;
}

template <Real T>
JacobiRecovery<T> recover_or_diagnose(const RunConfig& cfg, const MapFamily& fam, int count, std::string_view precision) {
  try {
    return jacobi_for_gamma<T>(fam, count, JacobiControl{cfg.tol_stab, cfg.depth, 1});
  } catch (const JacobiNonConvergence& e) {
    json doc = metadata(cfg, fam.gamma(), precision);
    doc["error"] = e.what();
    doc["last_step"] = io::to_json(e.step());
    prepare_out(cfg);
    write(cfg, "convergence.csv", io::convergence_csv(e.step()));
    write(cfg, "jacobi_previous.csv", io::jacobi_csv(e.previous()));
    write(cfg, "jacobi_last.csv", io::jacobi_csv(e.last()));
    write(cfg, "diagnostics.json", io::dump(doc));
    throw;
  }
}

template <Real T>
int jacobi_impl(const RunConfig& cfg, const MapFamily& fam, std::ostream& out) {
  const auto rec = recover_or_diagnose<T>(cfg, fam, cfg.degree_max, RealTraits<T>::name);
  json doc = metadata(cfg, fam.gamma(), RealTraits<T>::name);
  doc["depth"] = rec.depth;
  doc["valid_length"] = rec.matrix.valid_length;
  doc["last_step"] = {{"depth", rec.last_step.depth}, {"max_delta", rec.last_step.max_delta()}};
  prepare_out(cfg);
  write(cfg, "jacobi.csv", io::jacobi_csv(rec.matrix));
  write(cfg, "convergence.csv", io::convergence_csv(rec.last_step));
  write(cfg, "jacobi.json", io::dump(doc));
  out << "jacobi: K = " << rec.matrix.valid_length << " at depth " << rec.depth << ", max change "
      << rec.last_step.max_delta() << '\n';
  return kSuccess;
}

template <Real T>
int zeros_impl(const RunConfig& cfg, const MapFamily& fam, std::ostream& out) {
  const int n = cfg.degree >= 0 ? cfg.degree : cfg.degree_max;
  const bool dyadic = (n & (n - 1)) == 0;
  json doc = metadata(cfg, fam.gamma(), RealTraits<T>::name);
  doc["degree"] = n;
  std::string zeros_csv;
  std::optional<std::string> critical_csv;
  if (dyadic && n >= 2) {
    const int m = std::countr_zero(static_cast<unsigned>(n));
    const auto z = exact_zeros<T>(fam, m);
    zeros_csv = io::points_csv<T>(z.points);
    critical_csv = io::points_csv<T>(critical_set<T>(fam, m).points);
    doc["provenance"] = provenance_name(z.provenance);
    if (n >= 2) doc["argmin"] = min_spacing_index<T>(z.points) + 1;
  } else {
    const auto rec = recover_or_diagnose<T>(cfg, fam, n, RealTraits<T>::name);
    const auto z = eigen_zeros(rec.matrix, n, eigen_options(cfg));
    zeros_csv = io::points_csv<T>(z.points);
    doc["provenance"] = provenance_name(z.provenance);
    doc["depth"] = rec.depth;
    if (n >= 2) doc["argmin"] = min_spacing_index<T>(z.points) + 1;
  }
  prepare_out(cfg);
  write(cfg, "zeros.csv", zeros_csv);
  if (critical_csv) write(cfg, "critical.csv", *critical_csv);
  write(cfg, "zeros.json", io::dump(doc));
  out << "zeros: degree " << n << " (" << doc["provenance"].get<std::string>() << ")\n";
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct VerifyOutcome {
  json checks = json::array();
  int asserted = 0;
  int failed = 0;

  void add(const BoundCheck& c) {
    checks.push_back(io::to_json(c));
    if (c.informational) return;
    ++asserted;
    if (!c.pass) ++failed;
  }
};

template <Real T>
void verify_exact_parts(const RunConfig& cfg, const MapFamily& fam, int levels, VerifyOutcome& v, json& roro) {
  // Theorem-style critical-set pairs on exact sets.
  const int k_max = std::min(5, levels - 1);
  for (int k = 1; k <= k_max; ++k) {
    for (int kp = 0; kp < k; ++kp) {
      v.add(verify_critical_containment<T>(fam, k, kp, cfg.tol_containment));
      v.add(verify_critical_bound<T>(fam, k, kp));
    }
  }
  // Branch-difference chain, random words per level.
  for (int n = 1; n <= std::min(8, levels); ++n) {
    const auto rep = verify_branch_lemma<T>(fam, n, cfg.trials, cfg.seed + static_cast<std::uint64_t>(n));
    BoundCheck c;
    c.name = "branch-chain";
    c.detail = "level " + std::to_string(n) + ", " + std::to_string(rep.trials) + " random words";
    c.lhs = rep.violations;
    c.rhs = 0.0;
    c.pass = rep.violations == 0;
    v.add(c);
    v.add(rep.critical_chain);
    roro.push_back({{"n", n}, {"trials", rep.trials}, {"violations", rep.violations}, {"worst_margin", rep.worst_margin}});
  }
}

int verify_impl(const RunConfig& cfg, const MapFamily& fam, std::ostream& out) {
  const auto& gamma = fam.gamma();
  const int n_max = cfg.degree_max;
  const Precision exact_prec = geometry_precision(cfg, gamma);
  const std::string prec_label(precision_name(exact_prec));

  JacobiMatrix<double> j;
  json jsource;
  if (cfg.jacobi) {
    j = io::parse_jacobi_csv<double>(io::read_file(*cfg.jacobi));
    if (j.valid_length < n_max) {
      throw InvalidInput("Jacobi file has " + std::to_string(j.valid_length) + " coefficients, degree-max is " +
                         std::to_string(n_max));
    }
    jsource = {{"file", cfg.jacobi->string()}, {"valid_length", j.valid_length}};
  } else if (cfg.precision == PrecisionMode::DoubleDouble) {
    const auto rec = recover_or_diagnose<DoubleDouble>(cfg, fam, n_max, prec_label);
    j.valid_length = rec.matrix.valid_length;
    for (const auto& x : rec.matrix.a) j.a.push_back(to_double(x));
    for (const auto& x : rec.matrix.b) j.b.push_back(to_double(x));
    jsource = {{"depth", rec.depth}, {"max_delta", rec.last_step.max_delta()}, {"recovered_in", "double-double"}};
  } else {
    auto rec = recover_or_diagnose<double>(cfg, fam, n_max, prec_label);
    j = std::move(rec.matrix);
    jsource = {{"depth", rec.depth}, {"max_delta", rec.last_step.max_delta()}, {"recovered_in", "double"}};
  }

  ZeroCache zeros(j, eigen_options(cfg));
  VerifyOutcome v;

  // eq1 / eq2 sweep over every degree 2..n_max.
  std::vector<int> degrees;
  for (int n = 2; n <= n_max; ++n) degrees.push_back(n);
  SpacingOptions sopt;
  sopt.c = cfg.c;
  sopt.cross_check_tol = cfg.tol_zero;
  sopt.eigen = eigen_options(cfg);
  const SpacingReport report = spacing_report(fam, zeros, degrees, sopt);
  int sweep_fail = 0;
  for (const auto& row : report.rows) {
    if (!row.pass_eq1 || !row.pass_eq2.value_or(true)) ++sweep_fail;
  }
  v.asserted += static_cast<int>(report.rows.size());
  v.failed += sweep_fail;

  std::mt19937_64 rng(cfg.seed);
  // Random triples l > m > n > 1.
  if (n_max >= 4) {
    std::uniform_int_distribution<int> pick(2, n_max);
    for (int t = 0; t < cfg.samples; ++t) {
      std::set<int> s;
      while (s.size() < 3) s.insert(pick(rng));
      auto it = s.begin();
      const int n = *it++;
      const int m = *it++;
      const int l = *it;
      v.add(verify_interlacing_bound(zeros, l, m, n));
    }
  }
  // Random pairs r >= n for the second-neighbour bound.
  if (n_max >= 2) {
    std::uniform_int_distribution<int> pick_r(2, n_max);
    for (int t = 0; t < cfg.samples; ++t) {
      const int r = pick_r(rng);
      std::uniform_int_distribution<int> pick_n(1, r);
      v.add(verify_second_neighbor_bound(zeros, r, pick_n(rng)));
    }
  }
  // Interlacing for every 2 <= s < r <= min(n_max, 64).
  int interlace_pairs = 0;
  int interlace_fail = 0;
  json interlace_failures = json::array();
  const int r_max = std::min(n_max, 64);
  for (int r = 3; r <= r_max; ++r) {
    for (int s = 2; s < r; ++s) {
      const auto res = check_interlacing(zeros.zeros(s).points, zeros.zeros(r).points);
      ++interlace_pairs;
      if (!res.pass) {
        ++interlace_fail;
        interlace_failures.push_back({{"s", s}, {"r", r}, {"detail", res.detail}});
      }
    }
  }
  v.asserted += interlace_pairs;
  v.failed += interlace_fail;

  // Exact-set checks.
  json roro = json::array();
  const int levels = std::min(cfg.levels, 8);
  if (exact_prec == Precision::DoubleDouble) {
    verify_exact_parts<DoubleDouble>(cfg, fam, levels, v, roro);
  } else {
    verify_exact_parts<double>(cfg, fam, levels, v, roro);
  }

  // Informational observations.
  json info = json::array();
  {
    BoundCheck c;
    c.name = "dyadic-scale-collapse";
    c.informational = true;
    c.detail = "M_{2^m} non-increasing in m >= 1 (observed, not asserted)";
    bool mono = true;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows) {
      if (!row.exact) continue;
      mono = mono && row.m_n <= prev;
      prev = row.m_n;
    }
    c.pass = mono;
    info.push_back(io::to_json(c));
  }
  {
    BoundCheck c;
    c.name = "largest-gap-sanity";
    c.informational = true;
    const int n = n_max;
    const int lev = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))));
    double largest_gap = 0.0;
    for (const auto& g : gaps<double>(gamma, std::min(lev, 20) - 1)) largest_gap = std::max(largest_gap, g.length());
    c.detail = "max zero gap at degree " + std::to_string(n) + " > half the largest gap of E_" + std::to_string(lev);
    c.lhs = largest_gap / 2.0;
    c.rhs = max_spacing<double>(std::span<const double>(zeros.zeros(n).points));
    c.pass = c.lhs < c.rhs;
    info.push_back(io::to_json(c));
  }

  json doc = metadata(cfg, gamma, prec_label);
  doc["jacobi"] = jsource;
  doc["report"] = io::to_json(report);
  doc["precision_notice"] = report.precision_notice || zeros.any_escalated();
  doc["checks"] = v.checks;
  doc["interlacing"] = {{"pairs", interlace_pairs}, {"violations", interlace_fail}, {"failures", interlace_failures}};
  doc["branch_chain"] = roro;
  doc["informational"] = info;
  doc["annotations"] = gamma_annotations(gamma, std::max(cfg.levels, 1));
  doc["summary"] = {{"asserted", v.asserted}, {"failed", v.failed}, {"all_pass", v.failed == 0}};

  prepare_out(cfg);
  write(cfg, "spacing_report.csv", io::spacing_report_csv(report));
  write(cfg, "spacing_report.json", io::dump(doc));
  out << "verify: " << v.asserted << " asserted checks, " << v.failed << " failed ("
      << sweep_fail << " in the spacing sweep, " << interlace_fail << " interlacing)\n";
  if (report.precision_notice) out << "notice: some spacings approach double-precision resolution\n";
  return v.failed == 0 ? kSuccess : kNumericalFailure;
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  static const std::set<std::string> commands = {"geometry", "jacobi", "zeros", "verify"};
  if (!commands.count(command)) throw InvalidInput("unknown command '" + command + "'");
  if (gamma.empty()) throw InvalidInput("--gamma is required");
  GammaSequence::parse(gamma, domain_of(*this));
  if (levels < 0 || levels > 60) throw InvalidInput("levels must be in [0, 60]");
  if (interval_levels > 24) throw InvalidInput("interval-levels must be <= 24");
  if (depth < 2 || depth > 24) throw InvalidInput("depth must be in [2, 24]");
  if (!(tol_stab > 0.0 && tol_zero > 0.0 && tol_eigen > 0.0 && tol_containment > 0.0)) {
    throw InvalidInput("tolerances must be positive");
  }
  if (samples < 0 || trials < 0) throw InvalidInput("samples and trials must be >= 0");
  if (c && !(*c > 0.0)) throw InvalidInput("c must be positive");
  const long long cap = 1LL << (depth - 2);
  const int min_degree = command == "jacobi" ? 1 : 2;
  if (degree_max < min_degree) throw InvalidInput("degree-max must be >= " + std::to_string(min_degree));
  const int n_needed = command == "zeros" && degree >= 0 ? degree : degree_max;
  if (command == "zeros" && n_needed < 1) throw InvalidInput("degree must be >= 1");
  const bool dyadic_zeros = command == "zeros" && (n_needed & (n_needed - 1)) == 0 && n_needed >= 2;
  if (dyadic_zeros) {
    if (n_needed > (1 << 24)) throw InvalidInput("degree too large");
  } else if ((command != "geometry") && n_needed > cap) {
    throw InvalidInput("degree " + std::to_string(n_needed) + " exceeds 2^(N-2) = " + std::to_string(cap) +
                       " for depth N = " + std::to_string(depth));
  }
  if (jacobi && command != "verify") throw InvalidInput("--jacobi is only used by verify");
}

json RunConfig::to_json() const {
  json j = {{"command", command},
            {"gamma", gamma},
            {"chebyshev_limit", chebyshev_limit},
            {"levels", levels},
            {"interval_levels", interval_levels},
            {"degree_max", degree_max},
            {"degree", degree},
            {"depth", depth},
            {"tol_stab", tol_stab},
            {"tol_zero", tol_zero},
            {"tol_eigen", tol_eigen},
            {"tol_containment", tol_containment},
            {"precision", precision_mode_name(precision)},
            {"c", c ? json(*c) : json(nullptr)},
            {"out", out.string()},
            {"jacobi", jacobi ? json(jacobi->string()) : json(nullptr)},
            {"seed", seed},
            {"samples", samples},
            {"trials", trials}};
  return j;
}

void apply_config_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "command") cfg.command = val.get<std::string>();
      else if (key == "gamma") {
        if (val.is_object()) {
          GammaDescriptor d;
          d.kind = parse_gamma_kind(val.at("kind").get<std::string>());
          for (const auto& x : val.at("values")) d.values.push_back(x.is_string() ? x.get<std::string>() : x.dump());
          cfg.gamma = d.to_string();
        } else {
          cfg.gamma = val.get<std::string>();
        }
      }
      else if (key == "chebyshev_limit") cfg.chebyshev_limit = val.get<bool>();
      else if (key == "levels") cfg.levels = val.get<int>();
      else if (key == "interval_levels") cfg.interval_levels = val.get<int>();
      else if (key == "degree_max") cfg.degree_max = val.get<int>();
      else if (key == "degree") cfg.degree = val.get<int>();
      else if (key == "depth") cfg.depth = val.get<int>();
      else if (key == "tol_stab") cfg.tol_stab = val.get<double>();
      else if (key == "tol_zero") cfg.tol_zero = val.get<double>();
      else if (key == "tol_eigen") cfg.tol_eigen = val.get<double>();
      else if (key == "tol_containment") cfg.tol_containment = val.get<double>();
      else if (key == "precision") cfg.precision = parse_precision_mode(val.get<std::string>());
      else if (key == "c") {
        if (val.is_null()) cfg.c.reset();
        else if (val.is_string()) cfg.c = parse_real<double>(val.get<std::string>());
        else cfg.c = val.get<double>();
      }
      else if (key == "out") cfg.out = val.get<std::string>();
      else if (key == "jacobi") {
        if (val.is_null()) cfg.jacobi.reset();
        else cfg.jacobi = fs::path(val.get<std::string>());
      }
      else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "samples") cfg.samples = val.get<int>();
      else if (key == "trials") cfg.trials = val.get<int>();
      else throw InvalidInput("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const MapFamily fam(GammaSequence::parse(cfg.gamma, domain_of(cfg)));
    const Precision prec = geometry_precision(cfg, fam.gamma());
    const bool dd = prec == Precision::DoubleDouble;
    if (cfg.command == "geometry") {
      return dd ? geometry_impl<DoubleDouble>(cfg, fam.gamma(), out) : geometry_impl<double>(cfg, fam.gamma(), out);
    }
    if (cfg.command == "jacobi") {
      return cfg.precision == PrecisionMode::DoubleDouble ? jacobi_impl<DoubleDouble>(cfg, fam, out)
                                                          : jacobi_impl<double>(cfg, fam, out);
    }
    if (cfg.command == "zeros") {
      return cfg.precision == PrecisionMode::DoubleDouble ? zeros_impl<DoubleDouble>(cfg, fam, out)
                                                          : zeros_impl<double>(cfg, fam, out);
    }
    return verify_impl(cfg, fam, out);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ConvergenceFailure& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cantor-set orthogonal polynomial experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string gamma, precision, out_dir, jacobi_path;
  int levels = 0, interval_levels = 0, degree_max = 0, degree = 0, depth = 0, samples = 0, trials = 0;
  std::string c;
  double tol_stab = 0, tol_zero = 0, tol_eigen = 0, tol_containment = 0;
  std::uint64_t seed = 0;
  bool chebyshev_limit = false;

  std::map<std::string, CLI::App*> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"geometry", "basic intervals and scale checks"},
      {"jacobi", "recover recurrence coefficients"},
      {"zeros", "zeros of P_n"},
      {"verify", "run every spacing inequality and write the report"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    subs[name] = sub;
    sub->add_option("--config", config_path, "JSON config file (flags override it)");
    sub->add_option("--gamma", gamma, "gamma descriptor kind:v1,v2,... or a file holding one");
    sub->add_flag("--chebyshev-limit", chebyshev_limit, "admit gamma = 1/4");
    sub->add_option("--levels", levels, "maximal level s_max");
    sub->add_option("--interval-levels", interval_levels, "levels written to intervals.csv");
    sub->add_option("--degree-max", degree_max, "maximal degree n_max (K for jacobi)");
    sub->add_option("--degree", degree, "degree for the zeros command");
    sub->add_option("--depth", depth, "refinement depth budget N");
    sub->add_option("--precision", precision, "double | double-double | auto");
    sub->add_option("--c", c, "declared inf gamma_k (decimal or p/q)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--tol-stab", tol_stab, "coefficient stabilisation tolerance");
    sub->add_option("--tol-zero", tol_zero, "exact vs eigensolve zero tolerance");
    sub->add_option("--tol-eigen", tol_eigen, "bisection tolerance relative to the spectral width");
    sub->add_option("--tol-containment", tol_containment, "critical-set containment tolerance");
    sub->add_option("--seed", seed, "random seed for sampled checks");
    sub->add_option("--samples", samples, "random triples and pairs in verify");
    sub->add_option("--trials", trials, "random branch words per level in verify");
    if (std::string(name) == "verify") sub->add_option("--jacobi", jacobi_path, "read J from this CSV");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }

  RunConfig cfg;
  CLI::App* sub = nullptr;
  for (auto& [name, s] : subs) {
    if (s->parsed()) {
      cfg.command = name;
      sub = s;
    }
  }
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  try {
    if (given("--config")) {
      json j;
      try {
        j = json::parse(io::read_file(config_path));
      } catch (const json::exception& e) {
        throw InvalidInput("config " + config_path + ": " + e.what());
      }
      apply_config_json(cfg, j);
      cfg.command = sub->get_name();
    }
    if (given("--gamma")) cfg.gamma = gamma;
    if (!cfg.gamma.empty()) cfg.gamma = resolve_gamma_text(cfg.gamma);
    if (given("--chebyshev-limit")) cfg.chebyshev_limit = chebyshev_limit;
    if (given("--levels")) cfg.levels = levels;
    if (given("--interval-levels")) cfg.interval_levels = interval_levels;
    if (given("--degree-max")) cfg.degree_max = degree_max;
    if (given("--degree")) cfg.degree = degree;
    if (given("--depth")) cfg.depth = depth;
    if (given("--precision")) cfg.precision = parse_precision_mode(precision);
    if (given("--c")) cfg.c = parse_real<double>(c);
    if (given("--out")) cfg.out = out_dir;
    if (given("--tol-stab")) cfg.tol_stab = tol_stab;
    if (given("--tol-zero")) cfg.tol_zero = tol_zero;
    if (given("--tol-eigen")) cfg.tol_eigen = tol_eigen;
    if (given("--tol-containment")) cfg.tol_containment = tol_containment;
    if (given("--seed")) cfg.seed = seed;
    if (given("--samples")) cfg.samples = samples;
    if (given("--trials")) cfg.trials = trials;
    if (cfg.command == "verify" && given("--jacobi")) cfg.jacobi = jacobi_path;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
  return run(cfg, out, err);
}

}  // namespace cantor::cli
