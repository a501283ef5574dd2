#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_vector.hpp"
#include "space.hpp"
#include "weights.hpp"

namespace lorentz {

/// A symmetric, 1-unconditional norm on N coordinates of the form
/// (Σ â_n^p ω_n)^{1/p} with ω nonincreasing. Covers l_p (ω ≡ 1), d(w,p) and
/// d(w^(k),p).
struct NormDescriptor {
  std::string name;
  double p = 1.0;
  std::vector<double> omega;

  index_t dimension() const noexcept { return omega.size(); }

  /// Norm of a nonincreasing nonnegative array of length <= dimension().
  double evaluate_decreasing(std::span<const double> a) const {
    detail::require(a.size() <= omega.size(), "vector exceeds descriptor dimension");
    return detail::root_p(weighted_power_sum(a, p, [&](index_t n) { return omega[n - 1]; }), p);
  }

  double evaluate(const FiniteVector& v) const {
    const auto a = decreasing_rearrangement(v);
    return evaluate_decreasing(a);
  }
};

inline NormDescriptor lp_descriptor(double p, index_t N) {
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  return {"l_p", p, std::vector<double>(N, 1.0)};
}

inline NormDescriptor lorentz_descriptor(const WeightSequence& w, double p, index_t N) {
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  std::vector<double> omega(N);
  for (index_t n = 1; n <= N; ++n) omega[n - 1] = w(n);
  return {"d(w,p)", p, std::move(omega)};
}

/// d(w^(k),p): the norm spanned isometrically by (d_i^(k))_i.
inline NormDescriptor averaged_descriptor(const WeightSequence& w, index_t k, double p, index_t N) {
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  std::vector<double> omega(N);
  for (index_t i = 1; i <= N; ++i) omega[i - 1] = averaged_weight(w, i, k);
  return {"d(w^(" + std::to_string(k) + "),p)", p, std::move(omega)};
}

struct SearchConfig {
  std::uint64_t seed = 0;
  /// Grid points per coordinate on [0,1] when N <= grid_max_dim.
  int grid_resolution = 32;
  index_t grid_max_dim = 4;
  /// Random cone samples when N > grid_max_dim.
  int samples = 2000;
  int sweeps = 200;
  index_t max_dim = 4096;
  /// Upper bound on N_k in select_block_counts.
  index_t growth_cutoff = 1'000'000;
};

/// Result of a domination-constant search: `lower` is certified by `witness`.
struct EquivEstimate {
  double lower = 0.0;
  double estimate = 0.0;
  FiniteVector witness;
  std::uint64_t iterations = 0;
};

/// (N / W_N)^{1/p}: the smallest C with ‖v‖_p <= C ‖v‖_{d(w,p)} on N
/// coordinates. Attained at the constant vector; the reverse constant is 1.
inline double equiv_to_lp_exact(const WeightSequence& w, double p, index_t N) {
  detail::require(N >= 1, "dimension must be >= 1");
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  return detail::root_p(static_cast<double>(N) / partial_sum(w, N), p);
}

namespace detail {

class ConeSearch {
 public:
  ConeSearch(const NormDescriptor& a, const NormDescriptor& b) : a_(a), b_(b) {}

  double ratio(std::span<const double> x) {
    ++evaluations_;
    const double num = a_.evaluate_decreasing(x);
    const double den = b_.evaluate_decreasing(x);
    const double r = num / den;
    if (!std::isfinite(num) || !std::isfinite(den) || !std::isfinite(r))
      throw lorentz::numeric_error("non-finite norm value during search (" + a_.name + " / " +
                                   b_.name + ")");
    return r;
  }

  /// Offers a candidate; keeps the best under (ratio desc, witness lex asc).
  void offer(const std::vector<double>& x) {
    const double r = ratio(x);
    if (best_.empty() || r > best_ratio_ || (r == best_ratio_ && x < best_)) {
      best_ratio_ = r;
      best_ = x;
    }
  }

  const std::vector<double>& best() const noexcept { return best_; }
  double best_ratio() const noexcept { return best_ratio_; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }

  /// Coordinate ascent inside the cone 1 = x_1 >= x_2 >= ... >= x_N >= 0.
  void ascend(int sweeps) {
    std::vector<double> x = best_;
    double fx = best_ratio_;
    const std::size_t N = x.size();
    for (int s = 0; s < sweeps; ++s) {
      bool improved = false;
      for (std::size_t i = 1; i < N; ++i) {
        const double lo = i + 1 < N ? x[i + 1] : 0.0;
        const double hi = x[i - 1];
        if (!(hi > lo)) continue;
        auto eval_at = [&](double t) {
          const double keep = x[i];
          x[i] = t;
          const double r = ratio(x);
          x[i] = keep;
          return r;
        };
        double best_t = x[i];
        double best_r = fx;
        auto consider = [&](double t, double r) {
          if (r > best_r) {
            best_r = r;
            best_t = t;
          }
        };
        consider(lo, eval_at(lo));
        consider(hi, eval_at(hi));
        // golden-section on the interior
        constexpr double kInvPhi = 0.6180339887498949;
        double a = lo, b = hi;
        double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
        double fc = eval_at(c), fd = eval_at(d);
        for (int it = 0; it < 40 && (b - a) > 1e-12; ++it) {
          if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval_at(c);
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval_at(d);
          }
        }
        consider(c, fc);
        consider(d, fd);
        if (best_r > fx) {
          x[i] = best_t;
          fx = best_r;
          improved = true;
        }
      }
      if (!improved) break;
    }
    offer(x);
  }

 private:
  const NormDescriptor& a_;
  const NormDescriptor& b_;
  std::vector<double> best_;
  double best_ratio_ = -std::numeric_limits<double>::infinity();
  std::uint64_t evaluations_ = 0;
};

inline void enumerate_grid(ConeSearch& search, std::vector<double>& x, std::size_t pos, int level,
                           int resolution) {
  if (pos == x.size()) {
    search.offer(x);
    return;
  }
  for (int l = level; l >= 0; --l) {
    x[pos] = static_cast<double>(l) / (resolution - 1);
    enumerate_grid(search, x, pos + 1, l, resolution);
  }
}

}  // namespace detail

/// Estimates sup ‖v‖_A / ‖v‖_B over nonzero v on N coordinates.
///
/// Both norms are symmetric and 1-unconditional, so the ratio depends only on
/// the decreasing rearrangement and the search runs over the cone
/// 1 = a_1 >= ... >= a_N >= 0. Candidates are the cone's extreme rays
/// (1,...,1,0,...,0), then either a full grid (N <= grid_max_dim) or random
/// cone samples, followed by coordinate ascent from the best point.
inline EquivEstimate domination_constant(const NormDescriptor& A, const NormDescriptor& B,
                                         index_t N, const SearchConfig& cfg = {}) {
  detail::require(N >= 1, "dimension must be >= 1");
  if (N > cfg.max_dim)
    throw lorentz::cutoff_error("dimension " + std::to_string(N) + " exceeds search cutoff " +
                                std::to_string(cfg.max_dim));
  detail::require(A.dimension() >= N && B.dimension() >= N,
                  "norm descriptors must cover the search dimension");
  detail::require(cfg.grid_resolution >= 2, "grid resolution must be >= 2");

  detail::ConeSearch search(A, B);
  std::vector<double> x(N, 0.0);
  for (index_t m = 1; m <= N; ++m) {
    std::fill(x.begin(), x.end(), 0.0);
    std::fill(x.begin(), x.begin() + m, 1.0);
    search.offer(x);
  }

  if (N <= cfg.grid_max_dim) {
    x.assign(N, 0.0);
    x[0] = 1.0;
    detail::enumerate_grid(search, x, 1, cfg.grid_resolution - 1, cfg.grid_resolution);
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int s = 0; s < cfg.samples; ++s) {
      x[0] = 1.0;
      for (index_t n = 1; n < N; ++n) x[n] = unif(rng);
      std::sort(x.begin() + 1, x.end(), std::greater<>());
      search.offer(x);
    }
  }
  search.ascend(cfg.sweeps);

  EquivEstimate out;
  out.witness = FiniteVector::from_dense(search.best());
  out.estimate = search.best_ratio();
  out.lower = A.evaluate(out.witness) / B.evaluate(out.witness);
  out.iterations = search.evaluations();
  return out;
}

/// (N / W_N^(k))^{1/p} with W_N^(k) = Σ_{i<=N} w_i^(k): the ratio the constant
/// vector of length N certifies between l_p^N and (d_i^(k))_{i<=N}.
inline double k_equivalence_ratio(const WeightSequence& w, double p, index_t k, index_t N) {
  return detail::root_p(static_cast<double>(N) / averaged_partial_sum(w, k, N), p);
}

struct BlockCountEntry {
  index_t k;
  index_t count;          // N_k after enforcement
  index_t minimal_count;  // minimal N with ratio > k
  double ratio;           // k_equivalence_ratio at minimal_count
  double ratio_below;     // at minimal_count - 1; NaN when minimal_count == 1
  bool raised;            // count was lifted to keep the sequence nondecreasing
};

struct BlockCountSelection {
  double p;
  std::vector<BlockCountEntry> entries;

  std::vector<index_t> counts() const {
    std::vector<index_t> out;
    for (const auto& e : entries) out.push_back(e.count);
    return out;
  }
};

/// For k = 1..K, the least N with (N / W_N^(k))^{1/p} > k. For p = 1 this is
/// the first N at which (d_i^(k))_{i<=N} fails to be k-equivalent to l_1^N; for
/// p > 1 the same quantity serves as a proxy for failure of k-complementation.
inline BlockCountSelection select_block_counts(const WeightSequence& w, double p, index_t K,
                                               const SearchConfig& cfg = {}) {
  detail::require(K >= 1, "K must be >= 1");
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  BlockCountSelection out{p, {}};
  index_t previous = 0;
  for (index_t k = 1; k <= K; ++k) {
    const double target = static_cast<double>(k);
    index_t N = 1;
    double r = k_equivalence_ratio(w, p, k, N);
    double below = std::numeric_limits<double>::quiet_NaN();
    while (!(r > target)) {
      if (N >= cfg.growth_cutoff)
        throw lorentz::cutoff_error("N_" + std::to_string(k) + " exceeds growth cutoff " +
                                    std::to_string(cfg.growth_cutoff) +
                                    " (weight behaves like l_1 at this scale)");
      below = r;
      ++N;
      r = k_equivalence_ratio(w, p, k, N);
    }
    const index_t chosen = std::max(N, previous);
    out.entries.push_back({k, chosen, N, r, below, chosen != N});
    previous = chosen;
  }
  return out;
}

}  // namespace lorentz
