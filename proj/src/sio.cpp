#include "osw/sio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace osw {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate_or_throw(const std::function<double(double)>& fn, double lo,
                          double hi, double rel_tol) {
  double value = Quad::integrate(fn, lo, hi, 12, rel_tol);
  if (!std::isfinite(value)) {
    char msg[96];
    std::snprintf(msg, sizeof(msg),
                  "kernel quadrature diverged on [%.6g, %.6g]", lo, hi);
    throw numeric_error(msg);
  }
  return value;
}

// integral of K(-u) (optionally |K(-u)|) over [lo, hi], split per decade so
// slowly oscillating kernels converge at every scale
double kernel_range_integral(const KernelSpec& kernel, double lo, double hi,
                             bool absolute, double rel_tol) {
  auto fn = [&](double u) {
    double v = kernel.evaluate(-u);
    return absolute ? std::fabs(v) : v;
  };
  double total = 0.0;
  double a = lo;
  while (a < hi) {
    double b = std::min(hi, a * 10.0);
    total += integrate_or_throw(fn, a, b, rel_tol);
    a = b;
  }
  return total;
}

// c_d = integral of K(-u) over cell offset d clipped at the truncation
std::vector<double> stencil(const KernelSpec& kernel, double delta, double eps,
                            std::size_t n, bool absolute) {
  std::vector<double> c(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    double lo = std::max(static_cast<double>(d) * delta, eps);
    double hi = static_cast<double>(d + 1) * delta;
    if (lo >= hi) continue;
    c[d] = kernel_range_integral(kernel, lo, hi, absolute, 1e-10);
  }
  return c;
}

GridFunction correlate(const GridFunction& f, const std::vector<double>& c,
                       Side side, bool absolute) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    if (side == Side::Plus) {
      for (std::size_t d = 0; i + d < n; ++d)
        acc += c[d] * (absolute ? std::fabs(f[i + d]) : f[i + d]);
    } else {
      for (std::size_t d = 0; d <= i; ++d)
        acc += c[d] * (absolute ? std::fabs(f[i - d]) : f[i - d]);
    }
    out[i] = acc;
  }
  return GridFunction(f.origin(), f.delta(), std::move(out));
}

void require_truncation(double eps, double delta, const char* who) {
  if (!(eps >= 0.5 * delta))
    throw precondition_error(std::string(who) +
                             ": truncation must be at least half a cell");
}

}  // namespace

KernelSpec default_kernel() {
  KernelSpec k;
  k.evaluate = [](double t) {
    return t < 0.0 ? std::sin(std::log(-t)) / t : 0.0;
  };
  k.c2 = 1.0;
  k.c3 = 8.0;
  k.c1_proxy = 2.0;
  k.name = "default-osc";
  return k;
}

KernelSpec reciprocal_kernel() {
  KernelSpec k;
  k.evaluate = [](double t) { return t < 0.0 ? 1.0 / t : 0.0; };
  k.c2 = 1.0;
  k.c3 = 4.0;
  k.c1_proxy = 2.0;
  k.name = "reciprocal";
  return k;
}

KernelConditionReport kernel_condition_report(const KernelSpec& kernel,
                                              const KernelSampleSpec& samples) {
  if (samples.t_count < 2 || !(samples.t_min > 0.0) ||
      !(samples.t_max > samples.t_min) || samples.proxy_hi <= samples.proxy_lo)
    throw config_error("kernel_condition_report: malformed sample plan");

  KernelConditionReport rep;
  const double ratio = samples.t_max / samples.t_min;
  const double count = static_cast<double>(samples.t_count - 1);
  for (std::size_t k = 0; k < samples.t_count; ++k) {
    double mag =
        samples.t_min * std::pow(ratio, static_cast<double>(k) / count);
    double t = -mag;
    rep.size_max = std::max(rep.size_max, std::fabs(t * kernel.evaluate(t)));
    if (k % samples.smooth_stride == 0) {
      for (std::size_t j = 0; j < samples.s_count; ++j) {
        double s = 0.49 * mag / static_cast<double>(1u << j);
        double diff = kernel.evaluate(t) - kernel.evaluate(t - s);
        rep.smooth_max = std::max(rep.smooth_max, std::fabs(diff) * t * t / s);
      }
    }
  }

  for (int a = samples.proxy_lo; a < samples.proxy_hi; ++a)
    for (int b = a + 1; b <= samples.proxy_hi; ++b) {
      double eps = std::pow(10.0, a);
      double big = std::pow(10.0, b);
      double integral = kernel_range_integral(kernel, eps, big, false, 1e-9);
      rep.proxy_max = std::max(rep.proxy_max, std::fabs(integral));
    }

  const double tol = 1.0 + 1e-6;
  rep.size_pass = rep.size_max <= kernel.c2 * tol;
  rep.smooth_pass = rep.smooth_max <= kernel.c3 * tol;
  rep.proxy_pass = rep.proxy_max <= kernel.c1_proxy * tol;
  rep.pass = rep.size_pass && rep.smooth_pass && rep.proxy_pass;
  return rep;
}

std::vector<double> transform_stencil(const KernelSpec& kernel, double delta,
                                      double eps, std::size_t cells) {
  require_truncation(eps, delta, "transform_stencil");
  return stencil(kernel, delta, eps, cells, false);
}

GridFunction apply_stencil(const std::vector<double>& weights,
                           const GridFunction& f, Side side) {
  if (weights.size() < f.size())
    throw precondition_error("apply_stencil: stencil shorter than the grid");
  return correlate(f, weights, side, false);
}

GridFunction truncated_transform(const GridFunction& f, const KernelSpec& kernel,
                                 double eps, Side side) {
  require_truncation(eps, f.delta(), "truncated_transform");
  std::vector<double> c = stencil(kernel, f.delta(), eps, f.size(), false);
  return correlate(f, c, side, false);
}

GridFunction maximal_transform(const GridFunction& f, const KernelSpec& kernel,
                               const std::vector<double>& eps_grid, Side side) {
  if (eps_grid.empty())
    throw precondition_error("maximal_transform: eps_grid is empty");
  if (!std::is_sorted(eps_grid.begin(), eps_grid.end()))
    throw precondition_error("maximal_transform: eps_grid must be sorted");
  for (double eps : eps_grid)
    require_truncation(eps, f.delta(), "maximal_transform");

  std::vector<double> best(f.size(), 0.0);
  for (double eps : eps_grid) {
    std::vector<double> c = stencil(kernel, f.delta(), eps, f.size(), true);
    GridFunction one = correlate(f, c, side, true);
    for (std::size_t i = 0; i < f.size(); ++i)
      best[i] = std::max(best[i], one[i]);
  }
  return GridFunction(f.origin(), f.delta(), std::move(best));
}

}  // namespace osw
