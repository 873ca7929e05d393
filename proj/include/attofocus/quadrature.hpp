#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace attofocus::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1], cached per n.
const Rule& gauss_legendre(int n);

/// `panels` equal panels on [a, b], `order` points each.
Rule composite_gauss_legendre(double a, double b, int panels, int order = 16);

/// Composite Gauss-Legendre with panel width at most `max_panel_width`.
Rule panel_rule(double a, double b, double max_panel_width, int order = 16);

/// Fills y[i] = f(x[i]) for a batch of nodes.
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> y)>;

struct CutoffOptions {
  double tail_ratio = 1e-12;  // integrand at the cutoff relative to its peak
  double rtol = 1e-6;         // relative change allowed when the cutoff is doubled
  int max_doublings = 12;
  int order = 16;
};

struct CutoffResult {
  double value = 0.0;
  double cutoff = 0.0;        // upper limit of the certified integral
  double peak = 0.0;
  double tail = 0.0;          // largest |integrand| on the last panel
  double doubling_change = 0.0;
  std::size_t evaluations = 0;
};

/// Integral of a non-negative decaying integrand over [0, inf). The upper limit
/// starts at `initial_cutoff` and doubles until the integrand on the last panel
/// drops below tail_ratio * peak; the result is then certified by one further
/// doubling. Throws NumericalError if either test fails within max_doublings.
/// `panel_width(cutoff)` gives the panel width to use on each new segment.
CutoffResult integrate_to_cutoff(const BatchIntegrand& f, double initial_cutoff,
                                 const std::function<double(double)>& panel_width,
                                 const CutoffOptions& options = {});

}  // namespace attofocus::quad
