#include "dar/estimation/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dar::estimation {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double evaluate(const std::function<double(const std::vector<double>&)>& f,
                const std::vector<double>& x, int& evals) {
  ++evals;
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

std::vector<double> affine(const std::vector<double>& a, const std::vector<double>& b, double t) {
  // a + t (b - a)
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, double xtol, double ftol,
                          int max_evals) {
  const std::size_t dim = x0.size();
  int evals = 0;
  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({x0, evaluate(f, x0, evals)});
  for (std::size_t i = 0; i < dim; ++i) {
    auto x = x0;
    x[i] += step;
    simplex.push_back({x, evaluate(f, x, evals)});
  }

  // Stable sort keeps vertex order deterministic on ties.
  const auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  const auto converged = [&] {
    const Vertex& best = simplex.front();
    double diameter = 0.0;
    for (std::size_t v = 1; v <= dim; ++v) {
      for (std::size_t i = 0; i < dim; ++i) {
        diameter = std::max(diameter, std::fabs(simplex[v].x[i] - best.x[i]));
      }
    }
    return diameter < xtol && simplex.back().f - best.f < ftol;
  };

  order();
  bool done = converged();
  while (!done && evals < max_evals) {
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v < dim; ++v) {
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    Vertex& worst = simplex.back();
    const double second_worst = simplex[dim - 1].f;
    auto reflected = affine(centroid, worst.x, -1.0);
    const double fr = evaluate(f, reflected, evals);

    if (fr < simplex.front().f) {
      auto expanded = affine(centroid, worst.x, -2.0);
      const double fe = evaluate(f, expanded, evals);
      if (fe < fr) {
        worst = {std::move(expanded), fe};
      } else {
        worst = {std::move(reflected), fr};
      }
    } else if (fr < second_worst) {
      worst = {std::move(reflected), fr};
    } else {
      const bool outside = fr < worst.f;
      auto contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, worst.x, 0.5);
      const double fc = evaluate(f, contracted, evals);
      if (fc < std::min(fr, worst.f)) {
        worst = {std::move(contracted), fc};
      } else {
        const auto best = simplex.front().x;
        for (std::size_t v = 1; v <= dim; ++v) {
          simplex[v].x = affine(best, simplex[v].x, 0.5);
          simplex[v].f = evaluate(f, simplex[v].x, evals);
        }
      }
    }
    order();
    done = converged();
  }
  return {simplex.front().x, simplex.front().f, evals, done};
}

}  // namespace dar::estimation
