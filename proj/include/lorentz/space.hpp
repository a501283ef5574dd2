#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_vector.hpp"
#include "weights.hpp"

namespace lorentz {

/// Exponent and weight of a Lorentz sequence space d(w,p).
struct SpaceParams {
  double p;
  WeightSequence w;

  SpaceParams(double p_, WeightSequence w_) : p(p_), w(std::move(w_)) {
    detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  }
};

namespace detail {

inline double pow_p(double x, double p) { return p == 1.0 ? x : std::pow(x, p); }
inline double root_p(double x, double p) { return p == 1.0 ? x : std::pow(x, 1.0 / p); }

}  // namespace detail

/// |coefficients| sorted nonincreasing; ties ordered by index.
inline std::vector<double> decreasing_rearrangement(const FiniteVector& v) {
  std::vector<std::pair<double, index_t>> keyed;
  keyed.reserve(v.support_size());
  for (const auto& [n, a] : v.entries()) keyed.emplace_back(std::abs(a), n);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  std::vector<double> out;
  out.reserve(keyed.size());
  for (const auto& k : keyed) out.push_back(k.first);
  return out;
}

/// Σ_n a_n^p ω_n for a nonincreasing nonnegative array a, accumulated from the
/// largest term down. `omega` maps a 1-based position to its weight.
template <class WeightFn>
double weighted_power_sum(std::span<const double> decreasing, double p, WeightFn&& omega) {
  double s = 0.0;
  for (std::size_t n = 0; n < decreasing.size(); ++n)
    s += detail::pow_p(decreasing[n], p) * omega(static_cast<index_t>(n + 1));
  return s;
}

/// ‖v‖_{d(w,p)}^p.
inline double lorentz_norm_pow(const FiniteVector& v, const SpaceParams& params) {
  const auto a = decreasing_rearrangement(v);
  return weighted_power_sum(a, params.p, [&](index_t n) { return params.w(n); });
}

/// ‖v‖_{d(w,p)} = (Σ â_n^p w_n)^{1/p}.
inline double lorentz_norm(const FiniteVector& v, const SpaceParams& params) {
  return detail::root_p(lorentz_norm_pow(v, params), params.p);
}

inline double lp_norm(const FiniteVector& v, double p) {
  detail::require(std::isfinite(p) && p >= 1.0, "p must be a finite real >= 1");
  double s = 0.0;
  for (const auto& e : v.entries()) s += detail::pow_p(std::abs(e.second), p);
  return detail::root_p(s, p);
}

/// Element of the l_p-sum of finite sections D_N. Component k carries a
/// declared dimension N_k and at most N_k coefficients (the rest are zero).
class YVector {
 public:
  struct Component {
    index_t dimension;
    std::vector<double> coefficients;
  };

  YVector() = default;

  void add_component(index_t dimension, std::vector<double> coefficients) {
    detail::require(dimension >= 1, "component dimension must be >= 1");
    detail::require(coefficients.size() <= dimension,
                    "component has more coefficients than its dimension");
    components_.push_back({dimension, std::move(coefficients)});
  }

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }

 private:
  std::vector<Component> components_;
};

/// ‖y‖_Y^p = Σ_k ‖component_k‖_{d(w,p)}^p.
inline double y_norm_pow(const YVector& y, const SpaceParams& params) {
  double s = 0.0;
  for (const auto& c : y.components())
    s += lorentz_norm_pow(FiniteVector::from_dense(c.coefficients), params);
  return s;
}

inline double y_norm(const YVector& y, const SpaceParams& params) {
  return detail::root_p(y_norm_pow(y, params), params.p);
}

}  // namespace lorentz
