#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "blocks.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "finite_vector.hpp"
#include "space.hpp"
#include "weights.hpp"

namespace lorentz {

struct Param {
  std::string name;
  double value;
  friend bool operator==(const Param&, const Param&) = default;
};

/// One checked inequality (or sandwich) at one parameter point.
/// slack < 0 means the inequality is violated by |slack|.
struct InequalityInstance {
  std::string name;
  std::vector<Param> params;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double mid = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double slack = 0.0;
  /// Middle term was bracketed by integrals instead of summed directly.
  bool bracketed = false;
};

/// Aggregate of many instances. Passes iff no instance has slack < -tolerance.
struct VerificationReport {
  std::string statement;
  std::vector<std::pair<std::string, std::string>> grid;
  double tolerance = 1e-12;
  std::uint64_t instances = 0;
  std::uint64_t violation_count = 0;
  std::uint64_t bracketed_count = 0;
  std::vector<InequalityInstance> violations;
  std::size_t max_recorded = 1000;
  double min_slack = std::numeric_limits<double>::infinity();
  std::optional<InequalityInstance> min_instance;
  std::optional<std::uint64_t> seed;
  std::optional<double> runtime_ms;
  std::vector<std::string> notes;

  bool passed() const noexcept { return violation_count == 0; }
  bool strict_positive_observed() const noexcept { return instances > 0 && min_slack > 0.0; }

  void add(const InequalityInstance& inst) {
    ++instances;
    if (inst.bracketed) ++bracketed_count;
    if (!min_instance || inst.slack < min_slack || std::isnan(inst.slack)) {
      min_slack = inst.slack;
      min_instance = inst;
    }
    if (!(inst.slack >= -tolerance)) {
      ++violation_count;
      if (violations.size() < max_recorded) violations.push_back(inst);
    }
  }

  void merge(const VerificationReport& other) {
    instances += other.instances;
    violation_count += other.violation_count;
    bracketed_count += other.bracketed_count;
    for (const auto& v : other.violations)
      if (violations.size() < max_recorded) violations.push_back(v);
    if (other.min_instance && (!min_instance || other.min_slack < min_slack)) {
      min_slack = other.min_slack;
      min_instance = other.min_instance;
    }
    for (const auto& n : other.notes)
      if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
  }
};

// ---------------------------------------------------------------------------
// Constants

/// (1-θ)/2: lower constant in w_i^(k) >= c w_i for w = n^-θ.
inline double weight_lower_constant(double theta) { return (1.0 - theta) / 2.0; }

/// (2 - 2^θ)/(2^{1-θ} - 1): upper constant in w_i^(k) <= C w_i for w = n^-θ.
inline double weight_upper_constant(double theta) {
  return (2.0 - std::pow(2.0, theta)) / (std::pow(2.0, 1.0 - theta) - 1.0);
}

/// (1-θ)/2 (1/(M+1))^θ: lower constant for shifted block averages when the
/// scheme satisfies J_{k-1}/j_k <= M.
inline double shifted_lower_constant(double theta, double M) {
  return (1.0 - theta) / 2.0 * std::pow(1.0 / (M + 1.0), theta);
}

/// max_{k<=K} J_{k-1}/j_k. The k = 1 term is J_0/j_1 = 0, so a single level gives 0.
inline double stagger_ratio(const BlockScheme& scheme, index_t K) {
  detail::require(K >= 1 && K <= scheme.levels(), "K outside scheme levels");
  double M = 0.0;
  for (index_t k = 2; k <= K; ++k)
    M = std::max(M, static_cast<double>(scheme.offset(k - 1)) / static_cast<double>(scheme.length(k)));
  return M;
}

// ---------------------------------------------------------------------------
// Single-point checkers

inline constexpr index_t kDirectWindowLimit = 1'000'000;

namespace detail {

inline double power_integral(double a, double b, double theta) {
  const double e = 1.0 - theta;
  return (std::pow(b, e) - std::pow(a, e)) / e;
}

inline void require_power_law(const WeightSequence& w) {
  require(w.is_power_law(), "this check is stated for the power-law weight n^-theta");
}

}  // namespace detail

/// Sandwich for shifted power sums:
///   ((j+1)/k+1)^{1-θ} - ((j+1)/k)^{1-θ}
///     <= Σ_{n=j+1}^{j+k} n^-θ / Σ_{n=1}^k n^-θ
///     <= ((j/k+1)^{1-θ} - (j/k)^{1-θ}) / (2^{1-θ} - 1).
/// Windows longer than kDirectWindowLimit are bracketed by integrals and the
/// slack is taken against the bracket's worse end.
inline InequalityInstance check_integral_estimate(const WeightSequence& w, index_t j, index_t k) {
  detail::require_power_law(w);
  detail::require(k >= 1, "k must be >= 1");
  const double theta = w.theta();
  const double e = 1.0 - theta;
  const double jd = static_cast<double>(j), kd = static_cast<double>(k);

  InequalityInstance inst;
  inst.name = "integral-estimate";
  inst.params = {{"theta", theta}, {"j", jd}, {"k", kd}};
  inst.lhs = std::pow((jd + 1.0) / kd + 1.0, e) - std::pow((jd + 1.0) / kd, e);
  inst.rhs = (std::pow(jd / kd + 1.0, e) - std::pow(jd / kd, e)) / (std::pow(2.0, e) - 1.0);

  const bool direct = k <= kDirectWindowLimit && j + k <= WeightSequence::kMaxCachedIndex;
  if (direct) {
    inst.mid = w.window_sum(j + 1, k) / partial_sum(w, k);
    inst.slack = std::min(inst.mid - inst.lhs, inst.rhs - inst.mid);
  } else {
    const double num_lo = detail::power_integral(jd + 1.0, jd + kd + 1.0, theta);
    const double num_hi = detail::power_integral(jd, jd + kd, theta);
    const double den_lo = detail::power_integral(1.0, kd + 1.0, theta);
    const double den_hi = 1.0 + detail::power_integral(1.0, kd, theta);
    const double r_lo = num_lo / den_hi, r_hi = num_hi / den_lo;
    inst.mid = 0.5 * (r_lo + r_hi);
    inst.slack = std::min(r_lo - inst.lhs, inst.rhs - r_hi);
    inst.bracketed = true;
  }
  return inst;
}

inline InequalityInstance check_integral_estimate(double theta, index_t j, index_t k) {
  return check_integral_estimate(WeightSequence::power_law(theta), j, k);
}

/// (1-θ)/2 w_i <= w_i^(k) <= (2-2^θ)/(2^{1-θ}-1) w_i for w = n^-θ.
inline InequalityInstance check_weight_equivalence(const WeightSequence& w, index_t i, index_t k) {
  detail::require_power_law(w);
  detail::require(i >= 1 && k >= 1, "i, k must be >= 1");
  const double theta = w.theta();
  const double wi = w(i);
  InequalityInstance inst;
  inst.name = "weight-equivalence";
  inst.params = {{"theta", theta}, {"i", static_cast<double>(i)}, {"k", static_cast<double>(k)}};
  inst.lhs = weight_lower_constant(theta) * wi;
  inst.mid = averaged_weight(w, i, k);
  inst.rhs = weight_upper_constant(theta) * wi;
  inst.slack = std::min(inst.mid - inst.lhs, inst.rhs - inst.mid);
  return inst;
}

inline InequalityInstance check_weight_equivalence(double theta, index_t i, index_t k) {
  return check_weight_equivalence(WeightSequence::power_law(theta), i, k);
}

/// ‖x+y‖^p <= ‖x‖^p + ‖y‖^p for disjointly supported x, y.
inline InequalityInstance check_disjoint_subadditivity(const FiniteVector& x, const FiniteVector& y,
                                                         const SpaceParams& params) {
  detail::require(disjoint_supports(x, y), "supports of x and y overlap");
  InequalityInstance inst;
  inst.name = "disjoint-p-subadditivity";
  inst.params = {{"theta", params.w.theta()},
                 {"p", params.p},
                 {"support_x", static_cast<double>(x.support_size())},
                 {"support_y", static_cast<double>(y.support_size())}};
  inst.lhs = lorentz_norm_pow(x + y, params);
  inst.rhs = lorentz_norm_pow(x, params) + lorentz_norm_pow(y, params);
  inst.slack = inst.rhs - inst.lhs;
  return inst;
}

/// For every k <= K and block i at level k:
///   w_i^(j_k) <= A w_i   and   B w_i <= (1/W_{j_k}) Σ_{window i of level k} w_n.
/// Emits two instances per (k, i).
inline VerificationReport check_block_conditions(const BlockScheme& scheme, const WeightSequence& w,
                                                 double A, double B, index_t K,
                                                 double tolerance = 1e-12) {
  detail::require(A > 0.0 && B > 0.0, "A and B must be positive");
  detail::require(K >= 1 && K <= scheme.levels(), "K outside scheme levels");
  VerificationReport report;
  report.statement = "lemma-3-4";
  report.tolerance = tolerance;
  w.reserve(scheme.offset(K));
  for (index_t k = 1; k <= K; ++k) {
    const index_t len = scheme.length(k);
    for (index_t i = 1; i <= scheme.count(k); ++i) {
      const double wi = w(i);
      const std::vector<Param> params{{"theta", w.theta()},
                                      {"k", static_cast<double>(k)},
                                      {"i", static_cast<double>(i)},
                                      {"j_k", static_cast<double>(len)},
                                      {"J_prev", static_cast<double>(scheme.offset(k - 1))}};
      InequalityInstance upper;
      upper.name = "average-upper";
      upper.params = params;
      upper.lhs = averaged_weight(w, i, len);
      upper.rhs = A * wi;
      upper.slack = upper.rhs - upper.lhs;
      report.add(upper);

      InequalityInstance lower;
      lower.name = "shifted-average-lower";
      lower.params = params;
      lower.lhs = B * wi;
      lower.rhs = averaged_weight(w, i, len, scheme.offset(k - 1));
      lower.slack = lower.rhs - lower.lhs;
      report.add(lower);
    }
  }
  return report;
}

enum class CoefficientFamily { uniform, geometric, spike };

/// Random coefficients ((a_i^(k))_{i<=count_k})_{k<=K}, cycling through the
/// three families by trial number.
inline YVector random_coefficient_family(std::mt19937_64& rng, const BlockScheme& scheme, index_t K,
                                         CoefficientFamily family) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  YVector y;
  std::vector<std::vector<double>> levels(K);
  for (index_t k = 1; k <= K; ++k) levels[k - 1].assign(scheme.count(k), 0.0);

  switch (family) {
    case CoefficientFamily::uniform: {
      bool any = false;
      for (auto& level : levels) {
        if (unit(rng) < 0.5) continue;
        for (auto& a : level) a = unif(rng);
        any = true;
      }
      if (!any)
        for (auto& a : levels.back()) a = unif(rng);
      break;
    }
    case CoefficientFamily::geometric: {
      const double ratio = 0.05 + 0.9 * unit(rng);
      double mag = 0.5 + unit(rng);
      std::vector<double*> slots;
      for (auto& level : levels)
        for (auto& a : level) slots.push_back(&a);
      std::shuffle(slots.begin(), slots.end(), rng);
      for (double* a : slots) {
        *a = unit(rng) < 0.5 ? -mag : mag;
        mag *= ratio;
      }
      break;
    }
    case CoefficientFamily::spike: {
      std::uniform_int_distribution<index_t> pick_level(1, K);
      const index_t k = pick_level(rng);
      std::uniform_int_distribution<index_t> pick_pos(0, scheme.count(k) - 1);
      levels[k - 1][pick_pos(rng)] = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * unit(rng));
      for (auto& level : levels)
        for (auto& a : level)
          if (a == 0.0 && unit(rng) < 0.1) a = 1e-6 * unif(rng);
      break;
    }
  }
  for (index_t k = 1; k <= K; ++k) y.add_component(scheme.count(k), std::move(levels[k - 1]));
  return y;
}

struct BlockEquivalenceOptions {
  index_t trials = 1000;
  std::uint64_t seed = 0;
  /// Declared bound on J_{k-1}/j_k; a computed ratio above it fails the run.
  std::optional<double> m_bound;
  double tolerance = 1e-12;
};

/// Equivalence of the staggered blocks with the canonical basis of the
/// l_p-sum of finite sections, for w = n^-θ.
///
/// Computes M = max J_{k-1}/j_k, sets A = (2-2^θ)/(2^{1-θ}-1) and
/// B = (1-θ)/2 (1/(M+1))^θ, checks the two block conditions for k <= K, then
/// samples coefficient families y and checks
///   B ‖y‖_Y^p <= ‖expand(y)‖^p <= A^p ‖y‖_Y^p.
inline VerificationReport check_block_equivalence(const BlockScheme& scheme, double theta, double p,
                                                  index_t K, const BlockEquivalenceOptions& opt) {
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  const auto w = WeightSequence::power_law(theta);
  const double M = stagger_ratio(scheme, K);
  const double A = weight_upper_constant(theta);
  const double B = shifted_lower_constant(theta, M);

  VerificationReport report;
  report.statement = "theorem-3-5";
  report.tolerance = opt.tolerance;
  report.seed = opt.seed;

  if (opt.m_bound) {
    InequalityInstance pre;
    pre.name = "stagger-bound";
    pre.params = {{"theta", theta}, {"p", p}, {"K", static_cast<double>(K)}};
    pre.lhs = M;
    pre.rhs = *opt.m_bound;
    pre.slack = std::isfinite(M) ? *opt.m_bound - M : -std::numeric_limits<double>::infinity();
    report.add(pre);
  }

  auto conditions = check_block_conditions(scheme, w, A, B, K, opt.tolerance);
  report.merge(conditions);

  const SpaceParams params(p, w);
  const double Ap = std::pow(A, p);
  std::mt19937_64 rng(opt.seed);
  for (index_t t = 0; t < opt.trials; ++t) {
    const auto family = static_cast<CoefficientFamily>(t % 3);
    const YVector y = random_coefficient_family(rng, scheme, K, family);
    const double ynorm = y_norm_pow(y, params);
    InequalityInstance inst;
    inst.name = "two-sided-norm-bound";
    inst.params = {{"theta", theta}, {"p", p}, {"trial", static_cast<double>(t)},
                   {"family", static_cast<double>(t % 3)}};
    inst.lhs = B * ynorm;
    inst.mid = expanded_norm_pow(y, scheme, w, p);
    inst.rhs = Ap * ynorm;
    inst.slack = std::min(inst.mid - inst.lhs, inst.rhs - inst.mid);
    report.add(inst);
  }
  report.notes.push_back("M=" + std::to_string(M));
  return report;
}

// ---------------------------------------------------------------------------
// Grid runner

enum class Statement { integral_estimate, weight_equivalence, disjoint_sum, block_conditions, block_equivalence };

/// CLI identifiers of the statements.
inline std::string statement_id(Statement s) {
  switch (s) {
    case Statement::integral_estimate: return "lemma-3-1";
    case Statement::weight_equivalence: return "lemma-3-2";
    case Statement::disjoint_sum: return "remark-3-3";
    case Statement::block_conditions: return "lemma-3-4";
    case Statement::block_equivalence: return "theorem-3-5";
  }
  return "";
}

inline std::optional<Statement> parse_statement(const std::string& id) {
  for (auto s : {Statement::integral_estimate, Statement::weight_equivalence, Statement::disjoint_sum,
                 Statement::block_conditions, Statement::block_equivalence})
    if (statement_id(s) == id) return s;
  return std::nullopt;
}

/// round(exp(t)) for `count` points t evenly spaced on [0, ln max], deduplicated;
/// always contains 1 and max.
inline std::vector<index_t> log_sampled(index_t max, index_t count) {
  detail::require(max >= 1, "log sampling needs max >= 1");
  std::vector<index_t> out{1};
  if (count >= 2) {
    const double top = std::log(static_cast<double>(max));
    for (index_t n = 1; n < count; ++n) {
      const double t = top * static_cast<double>(n) / static_cast<double>(count - 1);
      out.push_back(static_cast<index_t>(std::llround(std::exp(t))));
    }
  }
  out.push_back(max);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  while (!out.empty() && out.back() > max) out.pop_back();
  return out;
}

inline std::vector<index_t> range_values(index_t lo, index_t hi) {
  std::vector<index_t> out;
  for (index_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

struct GridSpec {
  Statement statement = Statement::integral_estimate;
  std::vector<double> thetas{0.5};
  std::vector<double> ps{1.0};
  std::vector<index_t> j_values{0};
  std::vector<index_t> k_values{1};
  std::vector<index_t> i_values{1};
  index_t trials = 10'000;
  std::uint64_t seed = 42;
  /// Block scheme for the block statements; factorial_scheme(K) when empty.
  std::vector<index_t> lengths;
  index_t K = 10;
  std::optional<double> A;
  std::optional<double> B;
  std::optional<double> m_bound;
  index_t max_support = 60;
  index_t index_range = 200;
};

namespace detail {

inline std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t n = 0; n < v.size(); ++n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v[n]);
    s += (n ? "," : "") + std::string(buf);
  }
  return s;
}

inline std::string describe_indices(const std::vector<index_t>& v) {
  if (v.empty()) return "";
  bool contiguous = true;
  for (std::size_t n = 1; n < v.size(); ++n) contiguous &= v[n] == v[n - 1] + 1;
  if (contiguous && v.size() > 2)
    return std::to_string(v.front()) + ".." + std::to_string(v.back());
  std::string s;
  for (std::size_t n = 0; n < v.size(); ++n) s += (n ? "," : "") + std::to_string(v[n]);
  return s;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Disjoint random pair on indices 1..range: each chosen index goes to x or y.
inline std::pair<FiniteVector, FiniteVector> random_disjoint_pair(std::mt19937_64& rng,
                                                                  index_t max_support,
                                                                  index_t range, bool zero_y) {
  std::uniform_int_distribution<index_t> size_dist(1, max_support);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const index_t m = std::min(size_dist(rng), range);
  std::vector<index_t> pool(range);
  for (index_t n = 0; n < range; ++n) pool[n] = n + 1;
  for (index_t n = 0; n < m; ++n) {
    std::uniform_int_distribution<index_t> pick(n, range - 1);
    std::swap(pool[n], pool[pick(rng)]);
  }
  std::vector<FiniteVector::entry> xs, ys;
  for (index_t n = 0; n < m; ++n) {
    double a = unif(rng);
    if (a == 0.0) a = 0.5;
    if (zero_y || coin(rng))
      xs.emplace_back(pool[n], a);
    else
      ys.emplace_back(pool[n], a);
  }
  return {FiniteVector::from_entries(std::move(xs)), FiniteVector::from_entries(std::move(ys))};
}

}  // namespace detail

/// Evaluates one statement over every point of `spec` in grid order.
inline VerificationReport run_grid(const GridSpec& spec, double tolerance = 1e-12,
                                   std::size_t max_recorded = 1000) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.statement = statement_id(spec.statement);
  report.tolerance = tolerance;
  report.max_recorded = max_recorded;
  report.grid.emplace_back("theta", detail::join_numbers(spec.thetas));

  const auto scheme = [&] {
    return spec.lengths.empty() ? factorial_scheme(spec.K) : BlockScheme::from_lengths(spec.lengths);
  };

  switch (spec.statement) {
    case Statement::integral_estimate: {
      report.grid.emplace_back("j", detail::describe_indices(spec.j_values));
      report.grid.emplace_back("k", detail::describe_indices(spec.k_values));
      for (double theta : spec.thetas) {
        const auto w = WeightSequence::power_law(theta);
        for (index_t j : spec.j_values)
          for (index_t k : spec.k_values) report.add(check_integral_estimate(w, j, k));
      }
      if (report.bracketed_count > 0)
        report.notes.push_back("windows longer than " + std::to_string(kDirectWindowLimit) +
                               " were bracketed by integrals");
      break;
    }
    case Statement::weight_equivalence: {
      report.grid.emplace_back("i", detail::describe_indices(spec.i_values));
      report.grid.emplace_back("k", detail::describe_indices(spec.k_values));
      for (double theta : spec.thetas) {
        const auto w = WeightSequence::power_law(theta);
        if (!spec.i_values.empty() && !spec.k_values.empty())
          w.reserve(*std::max_element(spec.i_values.begin(), spec.i_values.end()) *
                    *std::max_element(spec.k_values.begin(), spec.k_values.end()));
        for (index_t i : spec.i_values)
          for (index_t k : spec.k_values) report.add(check_weight_equivalence(w, i, k));
      }
      break;
    }
    case Statement::disjoint_sum: {
      report.seed = spec.seed;
      report.grid.emplace_back("p", detail::join_numbers(spec.ps));
      report.grid.emplace_back("trials", std::to_string(spec.trials));
      report.grid.emplace_back("max_support", std::to_string(spec.max_support));
      report.grid.emplace_back("index_range", std::to_string(spec.index_range));
      for (std::size_t a = 0; a < spec.thetas.size(); ++a) {
        const SpaceParams base(1.0, WeightSequence::power_law(spec.thetas[a]));
        for (std::size_t b = 0; b < spec.ps.size(); ++b) {
          const SpaceParams params(spec.ps[b], base.w);
          std::mt19937_64 rng(detail::derive_seed(spec.seed, a, b));
          for (index_t t = 0; t < spec.trials; ++t) {
            const auto [x, y] =
                detail::random_disjoint_pair(rng, spec.max_support, spec.index_range, t % 50 == 0);
            auto inst = check_disjoint_subadditivity(x, y, params);
            inst.params.push_back({"trial", static_cast<double>(t)});
            report.add(inst);
          }
        }
      }
      break;
    }
    case Statement::block_conditions: {
      const auto s = scheme();
      const index_t K = std::min<index_t>(spec.K, s.levels());
      const double M = stagger_ratio(s, K);
      report.grid.emplace_back("lengths", detail::describe_indices(s.lengths()));
      report.grid.emplace_back("K", std::to_string(K));
      report.grid.emplace_back("M", detail::join_numbers({M}));
      for (double theta : spec.thetas) {
        const double A = spec.A.value_or(weight_upper_constant(theta));
        const double B = spec.B.value_or(shifted_lower_constant(theta, M));
        report.grid.emplace_back("A(theta=" + detail::join_numbers({theta}) + ")",
                                 detail::join_numbers({A}));
        report.grid.emplace_back("B(theta=" + detail::join_numbers({theta}) + ")",
                                 detail::join_numbers({B}));
        report.merge(check_block_conditions(s, WeightSequence::power_law(theta), A, B, K, tolerance));
      }
      break;
    }
    case Statement::block_equivalence: {
      const auto s = scheme();
      const index_t K = std::min<index_t>(spec.K, s.levels());
      report.seed = spec.seed;
      report.grid.emplace_back("p", detail::join_numbers(spec.ps));
      report.grid.emplace_back("lengths", detail::describe_indices(s.lengths()));
      report.grid.emplace_back("K", std::to_string(K));
      report.grid.emplace_back("M", detail::join_numbers({stagger_ratio(s, K)}));
      report.grid.emplace_back("trials", std::to_string(spec.trials));
      for (std::size_t a = 0; a < spec.thetas.size(); ++a)
        for (std::size_t b = 0; b < spec.ps.size(); ++b) {
          BlockEquivalenceOptions opt;
          opt.trials = spec.trials;
          opt.seed = detail::derive_seed(spec.seed, a, b);
          opt.m_bound = spec.m_bound;
          opt.tolerance = tolerance;
          report.merge(check_block_equivalence(s, spec.thetas[a], spec.ps[b], K, opt));
        }
      break;
    }
  }
  report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lorentz
