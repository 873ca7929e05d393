#include "attofocus/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "attofocus/errors.hpp"

namespace attofocus::quad {

namespace {

Rule build_gauss_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

void append_panels(Rule& out, double a, double b, int panels, int order) {
  const Rule& base = gauss_legendre(order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      out.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      out.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw InvalidParameter("Gauss-Legendre order must lie in [1, 512]");
  static std::mutex mtx;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

Rule composite_gauss_legendre(double a, double b, int panels, int order) {
  if (!(b > a) || panels < 1) throw InvalidParameter("composite rule needs b > a and at least one panel");
  Rule r;
  r.nodes.reserve(static_cast<std::size_t>(panels) * order);
  r.weights.reserve(static_cast<std::size_t>(panels) * order);
  append_panels(r, a, b, panels, order);
  return r;
}

Rule panel_rule(double a, double b, double max_panel_width, int order) {
  if (!(max_panel_width > 0.0)) throw InvalidParameter("panel width must be positive");
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel_width - 1e-9)));
  return composite_gauss_legendre(a, b, panels, order);
}

CutoffResult integrate_to_cutoff(const BatchIntegrand& f, double initial_cutoff,
                                 const std::function<double(double)>& panel_width,
                                 const CutoffOptions& opt) {
  if (!(initial_cutoff > 0.0)) throw InvalidParameter("initial cutoff must be positive");
  CutoffResult res;
  double lower = 0.0;
  double upper = initial_cutoff;
  double total = 0.0;
  double previous_total = 0.0;
  bool tail_reached = false;
  std::vector<double> values;

  for (int round = 0; round <= opt.max_doublings; ++round) {
    const double w = panel_width(upper);
    const int panels = std::max(1, static_cast<int>(std::ceil((upper - lower) / w - 1e-9)));
    Rule seg = composite_gauss_legendre(lower, upper, panels, opt.order);
    values.assign(seg.size(), 0.0);
    f(seg.nodes, values);
    res.evaluations += seg.size();

    double seg_sum = 0.0;
    for (std::size_t i = 0; i < seg.size(); ++i) {
      if (!std::isfinite(values[i])) {
        std::ostringstream os;
        os << "integrand not finite at x = " << seg.nodes[i];
        throw NumericalError(os.str());
      }
      seg_sum += seg.weights[i] * values[i];
      res.peak = std::max(res.peak, std::fabs(values[i]));
    }
    previous_total = total;
    total += seg_sum;

    double tail = 0.0;
    for (std::size_t i = seg.size() - opt.order; i < seg.size(); ++i) tail = std::max(tail, std::fabs(values[i]));

    if (tail_reached) {
      const double change = std::fabs(total - previous_total) / std::max(std::fabs(total), 1e-300);
      if (change < opt.rtol || total == 0.0) {
        res.value = total;
        res.cutoff = upper;
        res.tail = tail;
        res.doubling_change = total == 0.0 ? 0.0 : change;
        return res;
      }
      tail_reached = false;
    }
    if (tail <= opt.tail_ratio * res.peak) tail_reached = true;
    res.tail = tail;
    lower = upper;
    upper *= 2.0;
  }
  std::ostringstream os;
  os << "outer integral not certified after " << opt.max_doublings << " cutoff doublings (cutoff "
     << lower << ", tail/peak " << (res.peak > 0 ? res.tail / res.peak : 0.0) << ")";
  throw NumericalError(os.str());
}

}  // namespace attofocus::quad
