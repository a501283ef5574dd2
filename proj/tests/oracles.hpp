#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's summation or rearrangement code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

/// Σ_{n=first}^{last} n^-θ in long double.
inline long double power_sum(double theta, unsigned long long first, unsigned long long last) {
  long double s = 0.0L;
  for (unsigned long long n = first; n <= last; ++n) s += std::pow(static_cast<long double>(n), -static_cast<long double>(theta));
  return s;
}

/// max over all permutations π of Σ |a_π(n)|^p w_n, by enumeration.
inline double sup_over_permutations(std::vector<double> a, const std::function<double(int)>& w, double p) {
  for (auto& x : a) x = std::abs(x);
  std::sort(a.begin(), a.end());
  double best = 0.0;
  do {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += std::pow(a[n], p) * w(static_cast<int>(n + 1));
    best = std::max(best, s);
  } while (std::next_permutation(a.begin(), a.end()));
  return std::pow(best, 1.0 / p);
}

/// Brute-force max of ‖a‖_p / (Σ a_n^p w_n)^{1/p} over the grid
/// 1 = a_1 >= a_2 >= ... >= a_N >= 0 with `levels` values per coordinate.
inline double cone_grid_max(const std::vector<double>& w, double p, int levels) {
  const std::size_t N = w.size();
  std::vector<int> idx(N, levels - 1);
  double best = 0.0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int cap) {
    if (pos == N) {
      double lp = 0.0, d = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        const double a = static_cast<double>(idx[n]) / (levels - 1);
        lp += std::pow(a, p);
        d += std::pow(a, p) * w[n];
      }
      best = std::max(best, std::pow(lp / d, 1.0 / p));
      return;
    }
    for (int l = cap; l >= 0; --l) {
      idx[pos] = l;
      rec(pos + 1, l);
    }
  };
  rec(1, levels - 1);
  return best;
}

}  // namespace oracle
