#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_vector.hpp"
#include "space.hpp"
#include "weights.hpp"

namespace lorentz {

/// Staggered constant-coefficient block layout.
///
/// Level k (1-based) holds count_k consecutive blocks of length j_k starting
/// after offset J_{k-1}, so J_k = J_{k-1} + count_k * j_k. The default count is
/// count_k = k, which gives J_k = j_1 + 2 j_2 + ... + k j_k.
class BlockScheme {
 public:
  static BlockScheme from_lengths(std::vector<index_t> lengths) {
    std::vector<index_t> counts(lengths.size());
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] = k + 1;
    return with_counts(std::move(lengths), std::move(counts));
  }

  static BlockScheme with_counts(std::vector<index_t> lengths, std::vector<index_t> counts) {
    detail::require(!lengths.empty(), "block scheme needs at least one level");
    detail::require(lengths.size() == counts.size(), "lengths and counts differ in size");
    BlockScheme s;
    s.offsets_.push_back(0);
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      detail::require(lengths[k] >= 1, "block lengths must be positive");
      detail::require(counts[k] >= 1, "block counts must be positive");
      s.offsets_.push_back(detail::checked_add(s.offsets_.back(),
                                               detail::checked_mul(counts[k], lengths[k])));
    }
    s.lengths_ = std::move(lengths);
    s.counts_ = std::move(counts);
    return s;
  }

  index_t levels() const noexcept { return lengths_.size(); }
  /// j_k, 1-based level.
  index_t length(index_t k) const { return lengths_.at(k - 1); }
  /// Number of blocks at level k.
  index_t count(index_t k) const { return counts_.at(k - 1); }
  /// J_k for k = 0..levels().
  index_t offset(index_t k) const { return offsets_.at(k); }
  index_t total_length() const noexcept { return offsets_.back(); }

  const std::vector<index_t>& lengths() const noexcept { return lengths_; }
  const std::vector<index_t>& counts() const noexcept { return counts_; }
  const std::vector<index_t>& offsets() const noexcept { return offsets_; }

  bool default_counts() const noexcept {
    for (std::size_t k = 0; k < counts_.size(); ++k)
      if (counts_[k] != k + 1) return false;
    return true;
  }

  /// First K levels of this scheme.
  BlockScheme truncated(index_t K) const {
    detail::require(K >= 1 && K <= levels(), "truncation outside scheme levels");
    return with_counts({lengths_.begin(), lengths_.begin() + K}, {counts_.begin(), counts_.begin() + K});
  }

 private:
  BlockScheme() = default;
  std::vector<index_t> lengths_;
  std::vector<index_t> counts_;
  std::vector<index_t> offsets_;
};

/// j_1 = 1, j_{k+1} = J_k. Gives J_k = (k+1)!/2 and J_{k-1}/j_k = 1 for k >= 2.
/// Throws overflow_error once J_K leaves the 64-bit range (K = 20).
inline BlockScheme factorial_scheme(index_t K) {
  detail::require(K >= 1, "factorial scheme needs K >= 1");
  std::vector<index_t> lengths{1};
  index_t J = 1;
  for (index_t k = 2; k <= K; ++k) {
    lengths.push_back(J);
    J = detail::checked_add(J, detail::checked_mul(k, J));
  }
  return BlockScheme::from_lengths(std::move(lengths));
}

/// Level k holds N_k unstaggered blocks of length k: the layout of the family
/// ((d_i^(k))_{i=1}^{N_k})_k placed left to right.
inline BlockScheme selection_scheme(const std::vector<index_t>& block_counts) {
  std::vector<index_t> lengths(block_counts.size());
  for (std::size_t k = 0; k < lengths.size(); ++k) lengths[k] = k + 1;
  return BlockScheme::with_counts(std::move(lengths), block_counts);
}

/// Coefficient W_k^{-1/p} carried by every coordinate of a length-k block.
inline double block_coefficient(const WeightSequence& w, double p, index_t k) {
  return std::pow(partial_sum(w, k), -1.0 / p);
}

/// d_i^(k) translated by J: W_k^{-1/p} on indices J+(i-1)k+1 .. J+ik.
inline FiniteVector block_vector(const WeightSequence& w, double p, index_t i, index_t k,
                                 index_t offset = 0) {
  detail::require(i >= 1 && k >= 1, "block vector needs i, k >= 1");
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  const index_t first =
      detail::checked_add(detail::checked_add(offset, detail::checked_mul(i - 1, k)), 1);
  detail::checked_add(first, k - 1);
  const double c = block_coefficient(w, p, k);
  std::vector<FiniteVector::entry> entries;
  entries.reserve(k);
  for (index_t n = 0; n < k; ++n) entries.emplace_back(first + n, c);
  return FiniteVector::from_entries(std::move(entries));
}

/// Level k yields count_k blocks of length j_k placed after J_{k-1}.
inline std::vector<std::vector<FiniteVector>> staggered_family(const WeightSequence& w, double p,
                                                               const BlockScheme& scheme) {
  std::vector<std::vector<FiniteVector>> out(scheme.levels());
  for (index_t k = 1; k <= scheme.levels(); ++k) {
    auto& level = out[k - 1];
    level.reserve(scheme.count(k));
    for (index_t i = 1; i <= scheme.count(k); ++i)
      level.push_back(block_vector(w, p, i, scheme.length(k), scheme.offset(k - 1)));
  }
  return out;
}

namespace detail {

inline void require_fits(const YVector& y, const BlockScheme& scheme) {
  require(y.size() <= scheme.levels(), "coefficient family has more levels (" +
                                           std::to_string(y.size()) + ") than the scheme (" +
                                           std::to_string(scheme.levels()) + ")");
  for (std::size_t k = 0; k < y.size(); ++k)
    require(y.components()[k].coefficients.size() <= scheme.count(k + 1),
            "level " + std::to_string(k + 1) + " has more coefficients than blocks");
}

}  // namespace detail

/// Σ_k Σ_i a_i^(k) d_i^(j_k) as a coordinate vector. Component k of y holds the
/// level-k coefficients.
inline FiniteVector expand(const YVector& y, const BlockScheme& scheme, const WeightSequence& w,
                           double p) {
  detail::require_fits(y, scheme);
  std::vector<FiniteVector::entry> entries;
  for (index_t k = 1; k <= y.size(); ++k) {
    const auto& coeffs = y.components()[k - 1].coefficients;
    const index_t len = scheme.length(k);
    const double c = block_coefficient(w, p, len);
    for (index_t i = 1; i <= coeffs.size(); ++i) {
      if (coeffs[i - 1] == 0.0) continue;
      const index_t first = scheme.offset(k - 1) + (i - 1) * len + 1;
      for (index_t n = 0; n < len; ++n) entries.emplace_back(first + n, coeffs[i - 1] * c);
    }
  }
  return FiniteVector::from_entries(std::move(entries));
}

/// A maximal run of equal magnitudes in a block-constant vector.
struct BlockRun {
  double magnitude;
  index_t length;
  index_t level;
  index_t position;
};

/// Runs of expand(y): one per nonzero coefficient, magnitude |a| W_{j_k}^{-1/p}.
inline std::vector<BlockRun> block_runs(const YVector& y, const BlockScheme& scheme,
                                        const WeightSequence& w, double p) {
  detail::require_fits(y, scheme);
  std::vector<BlockRun> runs;
  for (index_t k = 1; k <= y.size(); ++k) {
    const auto& coeffs = y.components()[k - 1].coefficients;
    const double c = block_coefficient(w, p, scheme.length(k));
    for (index_t i = 1; i <= coeffs.size(); ++i)
      if (coeffs[i - 1] != 0.0) runs.push_back({std::abs(coeffs[i - 1]) * c, scheme.length(k), k, i});
  }
  return runs;
}

/// ‖v‖_{d(w,p)}^p for a block-constant v given by its runs, without
/// materializing the coordinates: runs are laid out by decreasing magnitude and
/// each contributes magnitude^p (W_{end} - W_{start}).
inline double block_norm_pow(std::vector<BlockRun> runs, const WeightSequence& w, double p) {
  std::sort(runs.begin(), runs.end(), [](const BlockRun& a, const BlockRun& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    if (a.level != b.level) return a.level < b.level;
    return a.position < b.position;
  });
  double s = 0.0;
  index_t pos = 0;
  for (const auto& r : runs) {
    const index_t end = detail::checked_add(pos, r.length);
    s += detail::pow_p(r.magnitude, p) * (w.cumulative(end) - w.cumulative(pos));
    pos = end;
  }
  return s;
}

/// ‖expand(y)‖^p through block_norm_pow.
inline double expanded_norm_pow(const YVector& y, const BlockScheme& scheme,
                                const WeightSequence& w, double p) {
  return block_norm_pow(block_runs(y, scheme, w, p), w, p);
}

}  // namespace lorentz
