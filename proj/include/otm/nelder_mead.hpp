#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace otm {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SimplexOptions {
  double initial_step = 0.05;
  double relative_tolerance = 1e-8;
  int max_iterations = 2000;
};

/// Nelder-Mead downhill simplex (standard coefficients 1, 2, 1/2, 1/2).
/// Converges when both the spread of simplex values and the simplex diameter
/// fall below relative_tolerance (relative to the best value / point).
template <std::size_t N, typename F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start, const SimplexOptions& opt) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  pts[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += opt.initial_step;
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  std::array<std::size_t, N + 1> order;
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::array<Point, N + 1> p2;
    std::array<double, N + 1> v2;
    for (std::size_t i = 0; i <= N; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts = p2;
    vals = v2;
  };
  auto affine = [](const Point& a, const Point& b, double t) {
    Point r;
    for (std::size_t k = 0; k < N; ++k) r[k] = a[k] + t * (b[k] - a[k]);
    return r;
  };

  SimplexResult<N> res;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    sort_simplex();
    double fspread = 0.0, xspread = 0.0, xscale = 1.0;
    for (std::size_t i = 1; i <= N; ++i) {
      fspread = std::max(fspread, std::abs(vals[i] - vals[0]));
      for (std::size_t k = 0; k < N; ++k) {
        xspread = std::max(xspread, std::abs(pts[i][k] - pts[0][k]));
        xscale = std::max(xscale, std::abs(pts[0][k]));
      }
    }
    if (fspread <= opt.relative_tolerance * std::max(std::abs(vals[0]), 1e-12) &&
        xspread <= opt.relative_tolerance * xscale) {
      res.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);

    const Point xr = affine(centroid, pts[N], -1.0);
    const double fr = f(xr);
    if (fr < vals[0]) {
      const Point xe = affine(centroid, pts[N], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        pts[N] = xe;
        vals[N] = fe;
      } else {
        pts[N] = xr;
        vals[N] = fr;
      }
      continue;
    }
    if (fr < vals[N - 1]) {
      pts[N] = xr;
      vals[N] = fr;
      continue;
    }
    const bool outside = fr < vals[N];
    const Point xc = outside ? affine(centroid, pts[N], -0.5) : affine(centroid, pts[N], 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : vals[N])) {
      pts[N] = xc;
      vals[N] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      pts[i] = affine(pts[0], pts[i], 0.5);
      vals[i] = f(pts[i]);
    }
  }
  sort_simplex();
  res.x = pts[0];
  res.value = vals[0];
  res.iterations = it;
  return res;
}

}  // namespace otm
