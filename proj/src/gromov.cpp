#include "treerep/gromov.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

namespace treerep {

double gromov_product(const DistanceMatrix& d, std::size_t x, std::size_t y, std::size_t w) {
  const double value = 0.5 * (d.at(w, x) + d.at(w, y) - d.at(x, y));
  if (value < 0.0 && value > -kMetricTolerance) return 0.0;
  return value;
}

namespace {

// Largest four-point defect with w as the base point.
double base_defect(const DistanceMatrix& d, std::size_t w, std::vector<double>& products) {
  const std::size_t n = d.size();
  const auto dw = d.row(w);
  for (std::size_t x = 0; x < n; ++x) {
    const auto dx = d.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      products[x * n + y] = 0.5 * (dw[x] + dw[y] - dx[y]);
    }
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const double* gx = products.data() + x * n;
    for (std::size_t y = x + 1; y < n; ++y) {
      const double* gy = products.data() + y * n;
      double best = 0.0;
      for (std::size_t z = 0; z < n; ++z) {
        best = std::max(best, std::min(gx[z], gy[z]));
      }
      worst = std::max(worst, best - gx[y]);
    }
  }
  return worst;
}

}  // namespace

DeltaResult delta_hyperbolicity(const DistanceMatrix& d, const DeltaQuery& query) {
  const std::size_t n = d.size();
  if (n < 4) return {0.0, true};
  if (query.mode == DeltaMode::fixed_base) {
    if (query.base >= n) throw std::out_of_range("base point out of range");
    std::vector<double> products(n * n);
    return {base_defect(d, query.base, products), false};
  }

  const unsigned threads = std::max(1u, std::min<unsigned>(query.threads, static_cast<unsigned>(n)));
  std::vector<double> partial(threads, 0.0);
  auto work = [&](unsigned t) {
    std::vector<double> products(n * n);
    for (std::size_t w = t; w < n; w += threads) {
      partial[t] = std::max(partial[t], base_defect(d, w, products));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return {*std::max_element(partial.begin(), partial.end()), false};
}

}  // namespace treerep
