#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace tsmeta::detail {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Standard reflection / expansion / contraction / shrink simplex search.
// Infinite objective values mark infeasible points.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, int max_iterations,
                                    double step = 0.1, double tol = 1e-10) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];
    if (std::isfinite(values[worst]) &&
        std::abs(values[worst] - values[best]) <= tol * (std::abs(values[best]) + tol)) {
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
    }
    auto toward = [&](double coef) {
      std::vector<double> p(dim);
      for (std::size_t j = 0; j < dim; ++j) p[j] = centroid[j] + coef * (simplex[worst][j] - centroid[j]);
      return p;
    };

    const std::vector<double> reflected = toward(-1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      const std::vector<double> expanded = toward(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const std::vector<double> contracted = fr < values[worst] ? toward(-0.5) : toward(0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      }
      values[i] = f(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

}  // namespace tsmeta::detail
