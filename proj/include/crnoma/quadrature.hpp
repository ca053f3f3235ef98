// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "crnoma/error.hpp"

namespace crnoma {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over the finite [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below abs_tol. Results depend only on f and the limits:
/// panels are summed in left-to-right order. Throws ConvergenceError when the
/// panel budget is exhausted.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_panels = 10000) {
  QuadratureResult result;
  if (a == b) return result;
  auto by_error = [](const detail::Panel& x, const detail::Panel& y) {
    return x.error != y.error ? x.error < y.error : x.a > y.a;
  };
  std::vector<detail::Panel> active{detail::gauss_kronrod_15(f, a, b)};
  std::vector<detail::Panel> settled;
  double total_error = active.front().error;
  int panels = 1;
  while (total_error > abs_tol && !active.empty()) {
    std::pop_heap(active.begin(), active.end(), by_error);
    const detail::Panel worst = active.back();
    active.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 8.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
      settled.push_back(worst);  // cannot be refined further
      total_error = 0.0;
      for (const auto& p : active) total_error += p.error;
      for (const auto& p : settled) total_error += p.error;
      if (total_error <= abs_tol) break;
      continue;
    }
    if (panels + 1 > max_panels) {
      active.push_back(worst);
      double achieved = 0.0;
      for (const auto& p : active) achieved += p.error;
      for (const auto& p : settled) achieved += p.error;
      throw ConvergenceError("adaptive quadrature exhausted " + std::to_string(max_panels) +
                                 " panels; achieved tolerance " + std::to_string(achieved),
                             achieved);
    }
    for (const auto& child : {detail::gauss_kronrod_15(f, worst.a, mid),
                              detail::gauss_kronrod_15(f, mid, worst.b)}) {
      active.push_back(child);
      std::push_heap(active.begin(), active.end(), by_error);
    }
    ++panels;
    // Recompute rather than update incrementally so rounding never stalls the loop.
    total_error = 0.0;
    for (const auto& p : active) total_error += p.error;
    for (const auto& p : settled) total_error += p.error;
  }
  settled.insert(settled.end(), active.begin(), active.end());
  std::sort(settled.begin(), settled.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  for (const auto& p : settled) {
    result.value += p.value;
    result.abs_error += p.error;
  }
  result.panels = panels;
  return result;
}

/// Integral of f(x) e^{-x} over [a, infinity), via t = e^{-(x - a)} onto (0, 1].
template <class F>
QuadratureResult integrate_exponential_tail(F&& f, double a, double abs_tol,
                                            int max_panels = 10000) {
  const double weight = std::exp(-a);
  if (weight == 0.0) return {};
  auto mapped = [&](double t) { return f(a - std::log(t)); };
  QuadratureResult r = integrate_adaptive(mapped, 0.0, 1.0, abs_tol / weight, max_panels);
  r.value *= weight;
  r.abs_error *= weight;
  return r;
}

}  // namespace crnoma
