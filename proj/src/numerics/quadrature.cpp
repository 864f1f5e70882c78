#include "dar/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "dar/error.hpp"

namespace dar::numerics {

namespace {

// Kronrod abscissae (descending, last is the centre); odd indices are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

enum class Map { Identity, RightTail, LeftTail };

struct Segment {
  double a;
  double b;
  Map map;
  int piece;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

class Integrand {
 public:
  Integrand(const std::function<double(double)>& f, std::vector<double> anchors)
      : f_(f), anchors_(std::move(anchors)) {}

  // Evaluates the (possibly transformed) integrand for piece `piece`.
  double operator()(Map map, int piece, double t) const {
    switch (map) {
      case Map::Identity: return f_(t);
      case Map::RightTail: {
        const double x = anchors_[static_cast<std::size_t>(piece)] + (1.0 - t) / t;
        return f_(x) / (t * t);
      }
      case Map::LeftTail: {
        const double x = anchors_[static_cast<std::size_t>(piece)] - (1.0 - t) / t;
        return f_(x) / (t * t);
      }
    }
    return 0.0;
  }

 private:
  const std::function<double(double)>& f_;
  std::vector<double> anchors_;
};

void gauss_kronrod(const Integrand& g, Segment& s) {
  const double centre = 0.5 * (s.a + s.b);
  const double half = 0.5 * (s.b - s.a);
  const double fc = g(s.map, s.piece, centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = g(s.map, s.piece, centre - dx) + g(s.map, s.piece, centre + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  s.value = kronrod * half;
  s.error = std::fabs((kronrod - gauss) * half);
  if (!std::isfinite(s.value)) {
    throw Error(ErrorKind::NonConvergence, "quadrature: non-finite integrand value");
  }
}

QuadratureResult run(const Integrand& g, std::vector<Segment> initial, double tol,
                     int max_intervals) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Precondition, "quadrature: tol must be positive");
  std::priority_queue<Segment, std::vector<Segment>, ByError> queue;
  double total = 0.0;
  double error = 0.0;
  for (auto& s : initial) {
    gauss_kronrod(g, s);
    total += s.value;
    error += s.error;
    queue.push(s);
  }
  int count = static_cast<int>(queue.size());
  while (error > tol) {
    if (count >= max_intervals) {
      throw Error(ErrorKind::NonConvergence, "quadrature: error estimate " +
                                                 std::to_string(error) + " above tolerance after " +
                                                 std::to_string(count) + " intervals");
    }
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(ErrorKind::NonConvergence, "quadrature: interval cannot be bisected further");
    }
    Segment left{worst.a, mid, worst.map, worst.piece, 0.0, 0.0};
    Segment right{mid, worst.b, worst.map, worst.piece, 0.0, 0.0};
    gauss_kronrod(g, left);
    gauss_kronrod(g, right);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++count;
  }
  // Re-sum to shed the drift of the incremental updates.
  QuadratureResult out;
  out.intervals = count;
  while (!queue.empty()) {
    out.value += queue.top().value;
    out.abs_error += queue.top().error;
    queue.pop();
  }
  return out;
}

}  // namespace

QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     std::span<const double> breakpoints, double tol,
                                     int max_intervals) {
  std::vector<double> points(breakpoints.begin(), breakpoints.end());
  if (points.empty()) points.push_back(0.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Segment> segments;
  segments.push_back({0.0, 1.0, Map::LeftTail, 0, 0.0, 0.0});
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    segments.push_back({points[i], points[i + 1], Map::Identity, 0, 0.0, 0.0});
  }
  segments.push_back(
      {0.0, 1.0, Map::RightTail, static_cast<int>(points.size() - 1), 0.0, 0.0});
  const Integrand g(f, points);
  return run(g, std::move(segments), tol, max_intervals);
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_intervals) {
  if (!(a < b)) throw Error(ErrorKind::Precondition, "integrate_interval: require a < b");
  const Integrand g(f, {});
  return run(g, {{a, b, Map::Identity, 0, 0.0, 0.0}}, tol, max_intervals);
}

double integrate_log_kernel(const std::function<double(double)>& density, double phi,
                            double alpha, double tol) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::Precondition, "integrate_log_kernel: alpha <= 0");
  const double root = std::sqrt(alpha);
  // Extra cuts at +/-1, +/-8 keep the bulk of a unit-scale density visible to
  // the first Gauss-Kronrod pass when -phi/sqrt(alpha) is far out.
  const std::array<double, 6> splits = {-phi / root, 0.0, -1.0, 1.0, -8.0, 8.0};
  const auto integrand = [&](double x) {
    const double d = density(x);
    if (d == 0.0) return 0.0;
    return std::log(std::fabs(phi + x * root)) * d;
  };
  return integrate_real_line(integrand, splits, tol).value;
}

}  // namespace dar::numerics
