#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lorentz {

/// 1-based coordinate index.
using index_t = std::uint64_t;

inline constexpr double kMinTheta = 0.01;
inline constexpr double kMaxTheta = 0.99;

enum class Summation { naive, compensated };

namespace detail {

inline index_t checked_add(index_t a, index_t b) {
  if (a > std::numeric_limits<index_t>::max() - b)
    throw lorentz::overflow_error("index arithmetic overflows 64 bits");
  return a + b;
}

inline index_t checked_mul(index_t a, index_t b) {
  if (a != 0 && b > std::numeric_limits<index_t>::max() / a)
    throw lorentz::overflow_error("index arithmetic overflows 64 bits");
  return a * b;
}

inline void require_theta(double theta) {
  require(std::isfinite(theta) && theta >= kMinTheta && theta <= kMaxTheta,
          "theta must lie in [0.01, 0.99], got " + std::to_string(theta));
}

}  // namespace detail

/// A normalized, nonincreasing, positive weight (w_n) with an append-only
/// cache of the values w_n and partial sums W_k.
///
/// Two kinds are supported: the power law w_n = n^-θ, and an explicit finite
/// prefix followed by the power-law tail n^-θ. Membership in c_0 \ l_1 is an
/// asymptotic property and cannot be checked on a prefix; both kinds satisfy
/// it analytically for θ in (0,1). What is enforced is w_1 = 1, monotonicity
/// and positivity of every entry the library can produce.
///
/// Copies share the cache. The cache is guarded by a shared mutex so concurrent
/// readers are safe; growth recomputes the same values, so racing growers are
/// harmless.
class WeightSequence {
 public:
  enum class Kind { power_law, prefix_power_tail };

  /// Largest index the cache will grow to (two doubles per entry).
  static constexpr index_t kMaxCachedIndex = index_t{1} << 27;

  static WeightSequence power_law(double theta, Summation mode = Summation::naive) {
    detail::require_theta(theta);
    return WeightSequence(Kind::power_law, theta, {}, mode);
  }

  /// Explicit prefix (w_1, ..., w_m) followed by w_n = n^-θ for n > m.
  static WeightSequence with_prefix(std::vector<double> prefix, double tail_theta,
                                    Summation mode = Summation::naive) {
    detail::require_theta(tail_theta);
    detail::require(!prefix.empty(), "weight prefix must be nonempty");
    detail::require(prefix.front() == 1.0, "weight prefix must start with w_1 = 1");
    for (std::size_t n = 0; n < prefix.size(); ++n) {
      detail::require(std::isfinite(prefix[n]) && prefix[n] > 0.0,
                      "weight prefix entries must be positive and finite");
      if (n > 0)
        detail::require(prefix[n] <= prefix[n - 1],
                        "weight prefix must be nonincreasing (entry " +
                            std::to_string(n + 1) + ")");
    }
    const double first_tail =
        std::pow(static_cast<double>(prefix.size() + 1), -tail_theta);
    detail::require(first_tail <= prefix.back(),
                    "power-law tail must start below the last prefix entry");
    return WeightSequence(Kind::prefix_power_tail, tail_theta, std::move(prefix), mode);
  }

  Kind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  const std::vector<double>& prefix() const noexcept { return prefix_; }
  Summation summation() const noexcept { return mode_; }
  bool is_power_law() const noexcept { return kind_ == Kind::power_law; }

  /// w_n, computed without touching the cache.
  double operator()(index_t n) const {
    detail::require(n >= 1, "weight index must be >= 1");
    return raw(n);
  }

  /// W_k; W_0 = 0 is allowed here for internal window arithmetic.
  double cumulative(index_t k) const {
    ensure(k);
    std::shared_lock lock(cache_->mu);
    return cache_->partial[k];
  }

  /// Σ_{n=first}^{first+count-1} w_n by direct left-to-right summation.
  /// A window starting at 1 returns W_count exactly.
  double window_sum(index_t first, index_t count) const {
    detail::require(first >= 1, "window must start at an index >= 1");
    if (count == 0) return 0.0;
    const index_t last = detail::checked_add(first, count - 1);
    if (first == 1) return cumulative(last);
    ensure(last);
    std::shared_lock lock(cache_->mu);
    const auto& w = cache_->values;
    double s = 0.0;
    for (index_t n = first; n <= last; ++n) s += w[n];
    return s;
  }

  /// Same window as window_sum, as a difference of cached partial sums (O(1)).
  double window_difference(index_t first, index_t count) const {
    detail::require(first >= 1, "window must start at an index >= 1");
    if (count == 0) return 0.0;
    const index_t last = detail::checked_add(first, count - 1);
    ensure(last);
    std::shared_lock lock(cache_->mu);
    return cache_->partial[last] - cache_->partial[first - 1];
  }

  /// Grow the cache so that indices up to n are available.
  void reserve(index_t n) const { ensure(n); }

  index_t cached_size() const {
    std::shared_lock lock(cache_->mu);
    return cache_->values.empty() ? 0 : cache_->values.size() - 1;
  }

  /// Checks w_1 = 1, positivity and monotonicity on the first n entries.
  bool validate_prefix(index_t n) const {
    double prev = raw(1);
    if (prev != 1.0) return false;
    for (index_t i = 2; i <= n; ++i) {
      const double cur = raw(i);
      if (!(cur > 0.0) || cur > prev) return false;
      prev = cur;
    }
    return true;
  }

  std::string describe() const {
    std::string s = is_power_law() ? "power-law" : "prefix+power-law";
    s += "(theta=" + std::to_string(theta_);
    if (!is_power_law()) s += ", prefix_len=" + std::to_string(prefix_.size());
    return s + ")";
  }

 private:
  struct Cache {
    mutable std::shared_mutex mu;
    std::vector<double> values{0.0};   // values[n] = w_n, slot 0 unused
    std::vector<double> partial{0.0};  // partial[n] = W_n, W_0 = 0
    double running = 0.0;       // uncompensated running sum
    double compensation = 0.0;  // Neumaier correction term
  };

  WeightSequence(Kind kind, double theta, std::vector<double> prefix, Summation mode)
      : kind_(kind),
        theta_(theta),
        prefix_(std::move(prefix)),
        mode_(mode),
        cache_(std::make_shared<Cache>()) {}

  double raw(index_t n) const {
    if (n <= prefix_.size()) return prefix_[n - 1];
    return std::pow(static_cast<double>(n), -theta_);
  }

  void ensure(index_t n) const {
    {
      std::shared_lock lock(cache_->mu);
      if (cache_->partial.size() > n) return;
    }
    if (n > kMaxCachedIndex)
      throw lorentz::cutoff_error("weight cache limit exceeded: index " + std::to_string(n));
    std::unique_lock lock(cache_->mu);
    auto& c = *cache_;
    const index_t have = c.partial.size() - 1;
    if (have >= n) return;
    const index_t target = std::min<index_t>(kMaxCachedIndex, std::max<index_t>(n, have + have / 2));
    c.values.reserve(target + 1);
    c.partial.reserve(target + 1);
    double sum = c.running;
    double comp = c.compensation;
    for (index_t i = have + 1; i <= target; ++i) {
      const double wi = raw(i);
      c.values.push_back(wi);
      if (mode_ == Summation::naive) {
        sum += wi;
        c.partial.push_back(sum);
      } else {
        const double t = sum + wi;
        if (std::abs(sum) >= std::abs(wi))
          comp += (sum - t) + wi;
        else
          comp += (wi - t) + sum;
        sum = t;
        c.partial.push_back(sum + comp);
      }
    }
    c.running = sum;
    c.compensation = comp;
  }

  Kind kind_;
  double theta_;
  std::vector<double> prefix_;
  Summation mode_;
  std::shared_ptr<Cache> cache_;
};

/// w_n.
inline double weight(const WeightSequence& w, index_t n) { return w(n); }

/// W_k = Σ_{n=1}^k w_n.
inline double partial_sum(const WeightSequence& w, index_t k) {
  detail::require(k >= 1, "partial sum index must be >= 1");
  return w.cumulative(k);
}

/// (1/W_k) Σ_{n=J+(i-1)k+1}^{J+ik} w_n. With J = 0 this is the averaged
/// weight w_i^(k); a positive offset shifts the summation window right.
inline double averaged_weight(const WeightSequence& w, index_t i, index_t k, index_t offset = 0) {
  detail::require(i >= 1 && k >= 1, "averaged weight needs i, k >= 1");
  const index_t first = detail::checked_add(detail::checked_add(offset, detail::checked_mul(i - 1, k)), 1);
  return w.window_difference(first, k) / w.cumulative(k);
}

/// Σ_{i=1}^N w_i^(k) = W_{Nk} / W_k.
inline double averaged_partial_sum(const WeightSequence& w, index_t k, index_t count) {
  detail::require(k >= 1 && count >= 1, "averaged partial sum needs k, N >= 1");
  return w.cumulative(detail::checked_mul(count, k)) / w.cumulative(k);
}

/// Read-only view of the shifted block averages of a weight.
class AveragedWeightView {
 public:
  AveragedWeightView(WeightSequence base, index_t block_length, index_t offset = 0)
      : base_(std::move(base)), k_(block_length), offset_(offset) {
    detail::require(k_ >= 1, "block length must be >= 1");
  }

  double operator()(index_t i) const { return averaged_weight(base_, i, k_, offset_); }

  const WeightSequence& base() const noexcept { return base_; }
  index_t block_length() const noexcept { return k_; }
  index_t offset() const noexcept { return offset_; }

 private:
  WeightSequence base_;
  index_t k_;
  index_t offset_;
};

}  // namespace lorentz
