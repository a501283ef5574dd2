#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorentz/lorentz.hpp"

namespace lorentz::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default report directory.
inline constexpr const char* kOutputDirEnv = "LORENTZ_OUTPUT_DIR";

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position + 1)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

inline std::string fmt(double x, int digits = 15) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline bool is_space(char c) { return c == ' ' || c == '\t'; }

/// Scanner over a comma separated literal that reports 0-based positions.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_spaces() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool done() {
    skip_spaces();
    return pos_ >= text_.size();
  }
  std::size_t position() const noexcept { return pos_; }

  double number() {
    skip_spaces();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw parse_error("expected a number", pos_);
    if (!std::isfinite(value)) throw parse_error("number is not finite", pos_);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  index_t index() {
    skip_spaces();
    const std::size_t start = pos_;
    index_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc() || ptr == text_.data() + pos_)
      throw parse_error("expected a positive integer index", start);
    if (value == 0) throw parse_error("indices are 1-based", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  void expect(char c, const char* what) {
    skip_spaces();
    if (pos_ >= text_.size() || text_[pos_] != c) throw parse_error(std::string("expected ") + what, pos_);
    ++pos_;
  }

  /// Consumes a separator, or returns false at end of input.
  bool separator() {
    if (done()) return false;
    expect(',', "',' between entries");
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// "3,1,2" -> coefficients on indices 1..3.
inline FiniteVector parse_dense(std::string_view text) {
  detail::Scanner s(text);
  std::vector<double> values;
  if (s.done()) throw parse_error("empty vector literal", 0);
  do values.push_back(s.number());
  while (s.separator());
  return FiniteVector::from_dense(values);
}

/// "5:3,2:-1" -> index:value pairs.
inline FiniteVector parse_sparse(std::string_view text) {
  detail::Scanner s(text);
  std::vector<FiniteVector::entry> entries;
  if (s.done()) throw parse_error("empty vector literal", 0);
  do {
    const std::size_t at = s.position();
    const index_t n = s.index();
    s.expect(':', "':' after index");
    const double v = s.number();
    for (const auto& e : entries)
      if (e.first == n) throw parse_error("duplicate index " + std::to_string(n), at);
    entries.emplace_back(n, v);
  } while (s.separator());
  return FiniteVector::from_entries(std::move(entries));
}

inline std::vector<double> parse_numbers(std::string_view text) {
  detail::Scanner s(text);
  std::vector<double> out;
  if (s.done()) throw parse_error("empty list", 0);
  do out.push_back(s.number());
  while (s.separator());
  return out;
}

inline std::vector<index_t> parse_indices(std::string_view text) {
  detail::Scanner s(text);
  std::vector<index_t> out;
  if (s.done()) throw parse_error("empty list", 0);
  do out.push_back(s.index());
  while (s.separator());
  return out;
}

/// "start:stop:step", inclusive, values rounded to 12 decimals.
inline std::vector<double> parse_range(std::string_view text) {
  detail::Scanner s(text);
  const double start = s.number();
  s.expect(':', "':' after range start");
  const double stop = s.number();
  s.expect(':', "':' after range stop");
  const std::size_t step_at = s.position();
  const double step = s.number();
  if (!s.done()) throw parse_error("trailing characters", s.position());
  if (!(step > 0.0)) throw parse_error("step must be positive", step_at);
  if (stop < start) throw parse_error("range stop is below start", 0);
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long long n = 0; n < count; ++n)
    out.push_back(std::round((start + static_cast<double>(n) * step) * 1e12) / 1e12);
  return out;
}

namespace detail {

struct WeightOptions {
  double theta = 0.5;
  std::string prefix;
  std::string summation = "naive";

  void attach(CLI::App* app) {
    app->add_option("--theta", theta, "Power-law exponent in [0.01, 0.99]");
    app->add_option("--prefix", prefix, "Explicit weight prefix w_1,...,w_m (power-law tail)");
    app->add_option("--summation", summation, "Partial-sum mode")
        ->check(CLI::IsMember({"naive", "compensated"}));
  }

  WeightSequence build() const {
    const auto mode = summation == "compensated" ? Summation::compensated : Summation::naive;
    if (prefix.empty()) return WeightSequence::power_law(theta, mode);
    return WeightSequence::with_prefix(parse_numbers(prefix), theta, mode);
  }

  void to_config(json& j) const {
    j["theta"] = theta;
    if (!prefix.empty()) j["prefix"] = prefix;
    j["summation"] = summation;
  }
};

/// Reads `key=value` lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

/// Splices config-file values into the argument list right after the
/// subcommand, skipping keys already given on the command line.
inline std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t n = 0; n < args.size(); ++n) {
    if (args[n] == "--config" && n + 1 < args.size()) {
      path = args[++n];
    } else if (args[n].rfind("--config=", 0) == 0) {
      path = args[n].substr(9);
    } else {
      rest.push_back(args[n]);
    }
  }
  if (path.empty()) return args;
  args = std::move(rest);
  static const std::vector<std::string> kCommands{"norm", "verify", "construct", "equiv"};
  std::size_t insert_at = args.size();
  for (std::size_t n = 0; n < args.size(); ++n)
    if (std::find(kCommands.begin(), kCommands.end(), args[n]) != kCommands.end()) {
      insert_at = n + 1;
      break;
    }
  std::vector<std::string> extra;
  for (const auto& [key, value] : read_config_file(path)) {
    if (key == "config" || has_flag(args, key)) continue;
    if (value == "false") continue;
    extra.push_back("--" + key);
    if (value != "true") extra.push_back(value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), extra.begin(), extra.end());
  return args;
}

inline std::string join(const std::vector<index_t>& v) {
  std::string s;
  for (std::size_t n = 0; n < v.size(); ++n) s += (n ? "," : "") + std::to_string(v[n]);
  return s;
}

inline std::string format_vector(const FiniteVector& v) {
  std::string s;
  for (const auto& [n, a] : v.entries()) s += (s.empty() ? "" : ",") + std::to_string(n) + ":" + fmt(a);
  return s.empty() ? "0" : s;
}

/// Resolves where a document goes: explicit path, $LORENTZ_OUTPUT_DIR/<stem>.<ext>,
/// or nothing (caller prints to stdout).
inline std::optional<std::string> resolve_output(const std::string& explicit_path, const std::string& stem,
                                                 const std::string& ext) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
    return (std::filesystem::path(dir) / (stem + "." + ext)).string();
  return std::nullopt;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write output file " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file " + path);
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lorentz sequence space norms, block constructions and inequality checks"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "File of key=value lines; flags override it");

  // norm ---------------------------------------------------------------------
  auto* norm = app.add_subcommand("norm", "Evaluate d(w,p) and l_p norms of a vector");
  detail::WeightOptions norm_weight;
  norm_weight.attach(norm);
  double norm_p = 1.0;
  std::string dense, sparse;
  norm->add_option("--p", norm_p, "Exponent p >= 1");
  auto* dense_opt = norm->add_option("--dense", dense, "Comma separated values on indices 1..n");
  auto* sparse_opt = norm->add_option("--sparse", sparse, "index:value pairs");
  dense_opt->excludes(sparse_opt);

  // verify -------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check an inequality over a parameter grid");
  std::string statement;
  verify->add_option("statement", statement, "lemma-3-1 | lemma-3-2 | remark-3-3 | lemma-3-4 | theorem-3-5")
      ->required();
  double v_theta = 0.5, v_p = 1.0, v_tol = 1e-12;
  std::string theta_grid, p_grid, lengths, output, format = "json";
  index_t j_min = 0, j_max = 1000, k_min = 1, k_max = 1000, k_log = 80, i_max = 1000, trials = 0, K = 10;
  index_t max_support = 60, index_range = 200;
  std::uint64_t seed = 42;
  double A = 0, B = 0, m_bound = 0;
  std::size_t max_violations = 1000;
  bool record_runtime = false;
  auto* o_theta = verify->add_option("--theta", v_theta, "Single theta");
  auto* o_theta_grid = verify->add_option("--theta-grid", theta_grid, "start:stop:step");
  o_theta->excludes(o_theta_grid);
  auto* o_p = verify->add_option("--p", v_p, "Single p");
  auto* o_p_grid = verify->add_option("--p-grid", p_grid, "Comma separated p values");
  o_p->excludes(o_p_grid);
  verify->add_option("--j-min", j_min);
  auto* o_j_max = verify->add_option("--j-max", j_max);
  verify->add_option("--k-min", k_min);
  auto* o_k_max = verify->add_option("--k-max", k_max);
  auto* o_k_log = verify->add_option("--k-log", k_log, "Log-sampled k count (0 = every k)");
  auto* o_i_max = verify->add_option("--i-max", i_max);
  auto* o_trials = verify->add_option("--trials", trials, "Random trials per (theta, p)");
  verify->add_option("--seed", seed);
  verify->add_option("--K", K, "Scheme levels");
  verify->add_option("--lengths", lengths, "Explicit block lengths j_1,...,j_K");
  auto* o_A = verify->add_option("--A", A, "Upper constant override");
  auto* o_B = verify->add_option("--B", B, "Lower constant override");
  auto* o_m = verify->add_option("--m-bound", m_bound, "Declared bound on J_{k-1}/j_k");
  verify->add_option("--max-support", max_support);
  verify->add_option("--index-range", index_range);
  verify->add_option("--tolerance", v_tol);
  verify->add_option("--max-violations", max_violations);
  verify->add_option("--output", output, "Report path");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--record-runtime", record_runtime, "Embed wall time (breaks byte reproducibility)");

  // construct ----------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "Build block schemes or select block counts");
  detail::WeightOptions c_weight;
  c_weight.attach(construct);
  index_t corollary_K = 0, select_K = 0, growth_cutoff = SearchConfig{}.growth_cutoff;
  double c_p = 1.0;
  bool show_blocks = false;
  std::string c_output;
  auto* o_cor = construct->add_option("--corollary-K", corollary_K, "j_1 = 1, j_{k+1} = J_k");
  auto* o_sel = construct->add_option("--select-counts-K", select_K, "Select N_1..N_K");
  o_cor->excludes(o_sel);
  construct->add_option("--p", c_p);
  construct->add_option("--growth-cutoff", growth_cutoff);
  construct->add_flag("--show-blocks", show_blocks, "Print block supports per level");
  construct->add_option("--output", c_output, "JSON dump path");

  // equiv --------------------------------------------------------------------
  auto* equiv = app.add_subcommand("equiv", "Estimate domination constants between two norms");
  detail::WeightOptions e_weight;
  e_weight.attach(equiv);
  std::string pair = "d-vs-lp", e_output;
  double e_p = 1.0;
  index_t e_N = 2, e_k = 2;
  SearchConfig search;
  equiv->add_option("--pair", pair)->check(CLI::IsMember({"d-vs-lp", "lp-vs-d", "d-vs-d", "dk-vs-d", "d-vs-dk"}));
  equiv->add_option("--p", e_p);
  equiv->add_option("--N", e_N, "Dimension");
  equiv->add_option("--k", e_k, "Block length for the averaged weight");
  equiv->add_option("--seed", search.seed);
  equiv->add_option("--grid-resolution", search.grid_resolution);
  equiv->add_option("--grid-max-dim", search.grid_max_dim);
  equiv->add_option("--samples", search.samples);
  equiv->add_option("--sweeps", search.sweeps);
  equiv->add_option("--max-dim", search.max_dim);
  equiv->add_option("--output", e_output, "JSON report path");

  try {
    args = detail::apply_config_file(std::move(args));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<std::string> storage{"lorentz"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (norm->parsed()) {
      if (dense.empty() == sparse.empty()) {
        err << "error: give exactly one of --dense or --sparse\n";
        return kExitUsage;
      }
      FiniteVector v;
      try {
        v = dense.empty() ? parse_sparse(sparse) : parse_dense(dense);
      } catch (const parse_error& e) {
        err << "error: vector literal: " << e.what() << '\n';
        return kExitUsage;
      }
      const SpaceParams params(norm_p, norm_weight.build());
      const double d = lorentz_norm(v, params);
      const double l = lp_norm(v, norm_p);
      out << "lorentz_norm = " << detail::fmt(d) << '\n';
      out << "lp_norm = " << detail::fmt(l) << '\n';
      out << "ratio = " << (d > 0 ? detail::fmt(l / d) : std::string("nan")) << '\n';
      return kExitPass;
    }

    if (verify->parsed()) {
      const auto st = parse_statement(statement);
      if (!st) {
        err << "error: unknown statement '" << statement << "'\n";
        return kExitUsage;
      }
      GridSpec spec;
      spec.statement = *st;
      const bool random_statement = *st == Statement::disjoint_sum || *st == Statement::block_equivalence;
      const bool block_statement = *st == Statement::block_conditions || *st == Statement::block_equivalence;

      if (o_theta->count())
        spec.thetas = {v_theta};
      else if (!theta_grid.empty())
        spec.thetas = parse_range(theta_grid);
      else if (random_statement || block_statement)
        spec.thetas = {0.25, 0.5, 0.75};
      else
        spec.thetas = parse_range("0.05:0.95:0.05");

      if (o_p->count())
        spec.ps = {v_p};
      else if (!p_grid.empty())
        spec.ps = parse_numbers(p_grid);
      else
        spec.ps = *st == Statement::disjoint_sum ? std::vector<double>{1, 1.5, 2, 3} : std::vector<double>{1, 2};

      // An explicit --k-max without --k-log means every k.
      const index_t k_samples = o_k_max->count() && !o_k_log->count() ? 0 : k_log;
      lorentz::detail::require(k_min >= 1 && k_min <= k_max, "need 1 <= k-min <= k-max");
      if (k_samples == 0) {
        spec.k_values = range_values(k_min, k_max);
      } else {
        spec.k_values.clear();
        for (index_t k : log_sampled(k_max, k_samples))
          if (k >= k_min) spec.k_values.push_back(k);
      }
      if (*st == Statement::weight_equivalence && !o_k_max->count() && !o_k_log->count())
        spec.k_values = range_values(1, 1000);
      lorentz::detail::require(j_min <= j_max, "need j-min <= j-max");
      spec.j_values = range_values(j_min, j_max);
      lorentz::detail::require(i_max >= 1, "need i-max >= 1");
      spec.i_values = range_values(1, i_max);
      spec.trials = o_trials->count() ? trials : (*st == Statement::block_equivalence ? 1000 : 10'000);
      spec.seed = seed;
      spec.K = K;
      if (!lengths.empty()) spec.lengths = parse_indices(lengths);
      if (o_A->count()) spec.A = A;
      if (o_B->count()) spec.B = B;
      if (o_m->count()) spec.m_bound = m_bound;
      spec.max_support = max_support;
      spec.index_range = index_range;
      (void)o_j_max;
      (void)o_i_max;

      auto report = run_grid(spec, v_tol, max_violations);

      json config{{"command", "verify"}, {"statement", statement}};
      config["theta"] = spec.thetas;
      if (random_statement || *st == Statement::block_conditions) config["p"] = spec.ps;
      switch (*st) {
        case Statement::integral_estimate:
          config["j_min"] = j_min;
          config["j_max"] = j_max;
          config["k"] = spec.k_values;
          break;
        case Statement::weight_equivalence:
          config["i_max"] = i_max;
          config["k"] = spec.k_values;
          break;
        case Statement::disjoint_sum:
          config["trials"] = spec.trials;
          config["max_support"] = max_support;
          config["index_range"] = index_range;
          break;
        default:
          config["K"] = K;
          if (!lengths.empty()) config["lengths"] = lengths;
          if (spec.A) config["A"] = *spec.A;
          if (spec.B) config["B"] = *spec.B;
          if (spec.m_bound) config["m_bound"] = *spec.m_bound;
          if (*st == Statement::block_equivalence) config["trials"] = spec.trials;
          break;
      }
      if (random_statement) config["seed"] = seed;
      config["tolerance"] = v_tol;
      config["format"] = format;

      std::string document;
      if (format == "csv") {
        std::ostringstream os;
        write_csv(os, report);
        document = os.str();
      } else {
        document = as_json(report, config, record_runtime).dump(2) + "\n";
      }
      const auto path = detail::resolve_output(output, statement, format);
      std::ostream& summary = path ? out : err;
      if (path)
        detail::write_file(*path, document);
      else
        out << document;
      summary << statement << ": " << (report.passed() ? "PASS" : "FAIL") << " instances=" << report.instances
              << " violations=" << report.violation_count << " min_slack=" << detail::fmt(report.min_slack)
              << " runtime_ms=" << detail::fmt(report.runtime_ms.value_or(0.0), 6) << '\n';
      return report.passed() ? kExitPass : kExitViolation;
    }

    if (construct->parsed()) {
      if (!o_cor->count() && !o_sel->count()) {
        err << "error: give exactly one of --corollary-K or --select-counts-K\n";
        return kExitUsage;
      }
      json doc{{"command", "construct"}};
      if (o_cor->count()) {
        const auto scheme = factorial_scheme(corollary_K);
        out << "lengths: " << detail::join(scheme.lengths()) << '\n';
        out << "offsets: " << detail::join(scheme.offsets()) << '\n';
        out << "M: " << detail::fmt(stagger_ratio(scheme, scheme.levels())) << '\n';
        if (show_blocks)
          for (index_t k = 1; k <= scheme.levels(); ++k) {
            out << "level " << k << ":";
            for (index_t i = 1; i <= scheme.count(k); ++i) {
              const index_t first = scheme.offset(k - 1) + (i - 1) * scheme.length(k) + 1;
              const index_t last = first + scheme.length(k) - 1;
              out << " {" << first;
              if (last != first) out << ".." << last;
              out << "}";
            }
            out << '\n';
          }
        doc["config"] = {{"corollary_K", corollary_K}};
        doc["lengths"] = scheme.lengths();
        doc["offsets"] = scheme.offsets();
        doc["M"] = stagger_ratio(scheme, scheme.levels());
      } else {
        SearchConfig cfg;
        cfg.growth_cutoff = growth_cutoff;
        const auto w = c_weight.build();
        const auto sel = select_block_counts(w, c_p, select_K, cfg);
        if (c_p != 1.0)
          out << "note: p > 1 uses the equivalence-constant proxy (N/W_N^(k))^(1/p) > k, not a "
                 "complementation constant\n";
        json entries = json::array();
        for (const auto& e : sel.entries) {
          out << "N_" << e.k << " = " << e.count << "  ratio = " << detail::fmt(e.ratio) << " > " << e.k;
          if (e.minimal_count > 1) out << "  (at N-1: " << detail::fmt(e.ratio_below) << ")";
          if (e.raised) out << "  [raised from " << e.minimal_count << "]";
          out << '\n';
          entries.push_back({{"k", e.k},
                             {"N", e.count},
                             {"minimal_N", e.minimal_count},
                             {"ratio", e.ratio},
                             {"ratio_below", e.ratio_below},
                             {"raised", e.raised}});
        }
        out << "counts: " << detail::join(sel.counts()) << '\n';
        json config{{"select_counts_K", select_K}, {"p", c_p}, {"growth_cutoff", growth_cutoff}};
        c_weight.to_config(config);
        doc["config"] = config;
        doc["selection"] = entries;
        doc["proxy"] = c_p != 1.0;
      }
      if (!c_output.empty()) detail::write_file(c_output, doc.dump(2) + "\n");
      return kExitPass;
    }

    if (equiv->parsed()) {
      const auto w = e_weight.build();
      if (e_N > search.max_dim)
        throw lorentz::cutoff_error("dimension " + std::to_string(e_N) + " exceeds --max-dim " +
                                    std::to_string(search.max_dim));
      NormDescriptor first, second;
      if (pair == "d-vs-lp") {
        first = lorentz_descriptor(w, e_p, e_N);
        second = lp_descriptor(e_p, e_N);
      } else if (pair == "lp-vs-d") {
        first = lp_descriptor(e_p, e_N);
        second = lorentz_descriptor(w, e_p, e_N);
      } else if (pair == "d-vs-d") {
        first = second = lorentz_descriptor(w, e_p, e_N);
      } else if (pair == "dk-vs-d") {
        first = averaged_descriptor(w, e_k, e_p, e_N);
        second = lorentz_descriptor(w, e_p, e_N);
      } else {
        first = lorentz_descriptor(w, e_p, e_N);
        second = averaged_descriptor(w, e_k, e_p, e_N);
      }
      const auto forward = domination_constant(first, second, e_N, search);
      const auto reverse = domination_constant(second, first, e_N, search);
      const double equivalence = forward.estimate * reverse.estimate;
      out << "pair = " << pair << ", N = " << e_N << ", p = " << detail::fmt(e_p) << '\n';
      auto print = [&](const char* label, const NormDescriptor& a, const NormDescriptor& b,
                       const EquivEstimate& est) {
        out << label << " sup |v|_" << a.name << " / |v|_" << b.name << ": lower = " << detail::fmt(est.lower)
            << ", estimate = " << detail::fmt(est.estimate) << ", witness = " << detail::format_vector(est.witness)
            << '\n';
      };
      print("forward", first, second, forward);
      print("reverse", second, first, reverse);
      out << "equivalence = " << detail::fmt(equivalence) << '\n';

      json config{{"command", "equiv"}, {"pair", pair}, {"p", e_p}, {"N", e_N}};
      e_weight.to_config(config);
      if (pair == "dk-vs-d" || pair == "d-vs-dk") config["k"] = e_k;
      config["seed"] = search.seed;
      config["grid_resolution"] = search.grid_resolution;
      config["grid_max_dim"] = search.grid_max_dim;
      config["samples"] = search.samples;
      config["sweeps"] = search.sweeps;
      config["max_dim"] = search.max_dim;
      json doc{{"command", "equiv"},
               {"pair", pair},
               {"N", e_N},
               {"forward", as_json(forward)},
               {"reverse", as_json(reverse)},
               {"equivalence", equivalence}};
      if (pair == "d-vs-lp" || pair == "lp-vs-d") {
        const double exact = equiv_to_lp_exact(w, e_p, e_N);
        const double found = pair == "d-vs-lp" ? reverse.lower : forward.lower;
        out << "exact = " << detail::fmt(exact) << '\n';
        out << "difference = " << detail::fmt(exact - found) << '\n';
        doc["exact"] = exact;
        doc["difference"] = exact - found;
      }
      if ((pair == "dk-vs-d" || pair == "d-vs-dk") && w.is_power_law()) {
        const double upper = std::pow(weight_upper_constant(w.theta()), 1.0 / e_p);
        const double lower = std::pow(weight_lower_constant(w.theta()), 1.0 / e_p);
        const double dk_over_d = pair == "dk-vs-d" ? forward.estimate : reverse.estimate;
        const double d_over_dk = pair == "dk-vs-d" ? reverse.estimate : forward.estimate;
        const bool within = dk_over_d <= upper * (1 + 1e-12) && 1.0 / d_over_dk >= lower * (1 - 1e-12);
        out << "band: " << detail::fmt(lower) << " <= |v|_dk/|v|_d <= " << detail::fmt(upper) << " : "
            << (within ? "within" : "OUTSIDE") << '\n';
        doc["band"] = {{"lower", lower}, {"upper", upper}, {"within", within}};
      }
      doc["config"] = config;
      if (const auto path = detail::resolve_output(e_output, "equiv-" + pair, "json"))
        detail::write_file(*path, doc.dump(2) + "\n");
      return kExitPass;
    }
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lorentz::cli
