#include "aoi/quadrature.hpp"

#include <cmath>

namespace aoi {
namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

Panel make_panel(const std::function<double(double)>& f, double a, double fa, double b,
                 double fb) {
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  return {a, fa, m, fm, b, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
}

constexpr int kMinLevels = 4;

double refine(const std::function<double(double)>& f, const Panel& p, double eps, int depth,
              int level) {
  const Panel left = make_panel(f, p.a, p.fa, p.m, p.fm);
  const Panel right = make_panel(f, p.m, p.fm, p.b, p.fb);
  const double delta = left.whole + right.whole - p.whole;
  if (depth <= 0 || (level >= kMinLevels && std::abs(delta) <= 15.0 * eps)) {
    return left.whole + right.whole + delta / 15.0;
  }
  return refine(f, left, 0.5 * eps, depth - 1, level + 1) +
         refine(f, right, 0.5 * eps, depth - 1, level + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const Panel whole = make_panel(f, a, f(a), b, f(b));
  return refine(f, whole, abs_tol, max_depth, 0);
}

}  // namespace aoi
