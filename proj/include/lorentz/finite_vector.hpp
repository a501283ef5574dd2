#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "weights.hpp"

namespace lorentz {

/// Finitely supported real sequence with 1-based indices.
///
/// Stored as (index, value) pairs sorted by index. Zero coefficients are never
/// stored, so two vectors compare equal iff they are equal as sequences.
class FiniteVector {
 public:
  using entry = std::pair<index_t, double>;

  FiniteVector() = default;

  /// Builds from unordered pairs. Duplicate indices and index 0 are rejected.
  static FiniteVector from_entries(std::vector<entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const entry& a, const entry& b) { return a.first < b.first; });
    FiniteVector v;
    v.entries_.reserve(entries.size());
    for (std::size_t n = 0; n < entries.size(); ++n) {
      detail::require(entries[n].first >= 1, "vector indices are 1-based");
      detail::require(n == 0 || entries[n].first != entries[n - 1].first,
                      "duplicate index " + std::to_string(entries[n].first));
      detail::require(std::isfinite(entries[n].second), "coefficients must be finite");
      if (entries[n].second != 0.0) v.entries_.push_back(entries[n]);
    }
    return v;
  }

  /// Coefficients assigned to indices 1..values.size().
  static FiniteVector from_dense(std::span<const double> values) {
    FiniteVector v;
    for (std::size_t n = 0; n < values.size(); ++n) {
      detail::require(std::isfinite(values[n]), "coefficients must be finite");
      if (values[n] != 0.0) v.entries_.emplace_back(static_cast<index_t>(n + 1), values[n]);
    }
    return v;
  }

  static FiniteVector unit(index_t n) { return from_entries({{n, 1.0}}); }

  double operator[](index_t n) const {
    auto it = find(n);
    return it != entries_.end() && it->first == n ? it->second : 0.0;
  }

  void set(index_t n, double value) {
    detail::require(n >= 1, "vector indices are 1-based");
    detail::require(std::isfinite(value), "coefficients must be finite");
    auto it = find(n);
    const bool present = it != entries_.end() && it->first == n;
    if (value == 0.0) {
      if (present) entries_.erase(it);
    } else if (present) {
      it->second = value;
    } else {
      entries_.insert(it, {n, value});
    }
  }

  const std::vector<entry>& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  index_t max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }

  FiniteVector& operator*=(double a) {
    if (a == 0.0) {
      entries_.clear();
      return *this;
    }
    for (auto& e : entries_) e.second *= a;
    return *this;
  }

  friend FiniteVector operator*(double a, FiniteVector v) { return v *= a; }

  friend FiniteVector operator+(const FiniteVector& x, const FiniteVector& y) {
    FiniteVector out;
    out.entries_.reserve(x.entries_.size() + y.entries_.size());
    auto a = x.entries_.begin(), b = y.entries_.begin();
    while (a != x.entries_.end() || b != y.entries_.end()) {
      if (b == y.entries_.end() || (a != x.entries_.end() && a->first < b->first)) {
        out.entries_.push_back(*a++);
      } else if (a == x.entries_.end() || b->first < a->first) {
        out.entries_.push_back(*b++);
      } else {
        const double s = a->second + b->second;
        if (s != 0.0) out.entries_.emplace_back(a->first, s);
        ++a;
        ++b;
      }
    }
    return out;
  }

  friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

 private:
  std::vector<entry>::iterator find(index_t n) {
    return std::lower_bound(entries_.begin(), entries_.end(), n,
                            [](const entry& e, index_t i) { return e.first < i; });
  }
  std::vector<entry>::const_iterator find(index_t n) const {
    return std::lower_bound(entries_.begin(), entries_.end(), n,
                            [](const entry& e, index_t i) { return e.first < i; });
  }

  std::vector<entry> entries_;
};

inline bool disjoint_supports(const FiniteVector& x, const FiniteVector& y) {
  auto a = x.entries().begin(), b = y.entries().begin();
  while (a != x.entries().end() && b != y.entries().end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first)
      ++a;
    else
      ++b;
  }
  return true;
}

}  // namespace lorentz
