#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace coherence {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_step = 0.1;   // per-coordinate offset of the initial simplex
  double diameter_tol = 1e-10; // max-norm distance of every vertex from the best
  int max_iterations = 2000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> history;  // best value after each iteration, non-increasing
};

/// Minimizes f from the axis-aligned simplex {x0, x0 + step e_i}.
/// NaN objective values are treated as +inf. Ties are broken by vertex
/// insertion order, so the run is deterministic.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opt = {}) {
  const std::size_t n = x0.size();
  auto eval = [&f](const std::vector<double>& x) {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opt.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t j = 0; j <= n; ++j) values[j] = eval(simplex[j]);

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> v2;
    s2.reserve(n + 1);
    v2.reserve(n + 1);
    for (auto k : idx) {
      s2.push_back(std::move(simplex[k]));
      v2.push_back(values[k]);
    }
    simplex = std::move(s2);
    values = std::move(v2);
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(simplex[j][i] - simplex[0][i]));
    return d;
  };
  auto along = [n](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = from[i] + t * (to[i] - from[i]);
    return p;
  };

  NelderMeadResult result;
  order();
  int iter = 0;
  while (iter < opt.max_iterations && diameter() >= opt.diameter_tol) {
    ++iter;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[j][i];
    for (auto& c : centroid) c /= static_cast<double>(n);

    const auto& worst = simplex[n];
    auto xr = along(centroid, worst, -opt.reflection);
    const double fr = eval(xr);

    if (fr < values[0]) {
      auto xe = along(centroid, worst, -opt.reflection * opt.expansion);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = std::move(xe);
        values[n] = fe;
      } else {
        simplex[n] = std::move(xr);
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = std::move(xr);
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      auto xc = outside ? along(centroid, xr, opt.contraction) : along(centroid, worst, opt.contraction);
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[n])) {
        simplex[n] = std::move(xc);
        values[n] = fc;
      } else {
        for (std::size_t j = 1; j <= n; ++j) {
          simplex[j] = along(simplex[0], simplex[j], opt.shrink);
          values[j] = eval(simplex[j]);
        }
      }
    }
    order();
    result.history.push_back(values[0]);
  }

  result.x = simplex[0];
  result.value = values[0];
  result.iterations = iter;
  return result;
}

}  // namespace coherence
