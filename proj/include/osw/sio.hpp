#pragma once

#include <functional>
#include <string>

#include "osw/maximal.hpp"

namespace osw {

/**
 * Convolution-type kernel supported on the negative half-line, with its
 * declared size bound c2 (|K(t)| <= c2/|t|), smoothness bound c3
 * (|K(t) - K(t-s)| <= c3 s / t^2 for 0 < s < |t|/2), and c1_proxy, a claimed
 * uniform bound on |integral of K over (-N, -eps)| for all 0 < eps < N.
 * evaluate must return 0 for t >= 0 and be state-free.
 */
struct KernelSpec {
  std::function<double(double)> evaluate;
  double c2 = 0.0;
  double c3 = 0.0;
  double c1_proxy = 0.0;
  std::string name;
};

/// K(t) = sin(ln(-t))/t on t < 0.  Oscillation keeps every truncated
/// integral inside [-2, 2] (it telescopes to a cosine difference), with
/// c2 = 1 and c3 = 8.
KernelSpec default_kernel();

/// K(t) = 1/t on t < 0: satisfies the size and smoothness bounds but its
/// truncated integrals grow like ln(N/eps), so the c1_proxy check must fail.
/// Kept as the negative control.
KernelSpec reciprocal_kernel();

/// Sampling plan for kernel_condition_report.  t runs over t_count
/// log-spaced magnitudes in [t_min, t_max]; every smooth_stride-th t also
/// gets s_count shifts s < |t|/2; truncated integrals are taken over all
/// decade pairs 10^a < 10^b with integer a, b in [proxy_lo, proxy_hi].
struct KernelSampleSpec {
  std::size_t t_count = 100000;
  double t_min = 1e-6;
  double t_max = 1e6;
  std::size_t smooth_stride = 97;
  std::size_t s_count = 8;
  int proxy_lo = -6;
  int proxy_hi = 6;
};

/// Measured maxima of the three kernel conditions over the sample plan;
/// each passes iff its maximum stays within declared * (1 + 1e-6).
struct KernelConditionReport {
  double size_max = 0.0;
  double smooth_max = 0.0;
  double proxy_max = 0.0;
  bool size_pass = false;
  bool smooth_pass = false;
  bool proxy_pass = false;
  bool pass = false;
};

KernelConditionReport kernel_condition_report(
    const KernelSpec& kernel, const KernelSampleSpec& samples = {});

/**
 * Truncated one-sided transform of a step function, evaluated on cell
 * boundaries: side Plus integrates K(x - y) f(y) over y >= x + eps at each
 * cell's left boundary x, side Minus integrates over y <= x - eps at each
 * cell's right boundary.  Both reduce to one correlation with the shared
 * stencil c_d = integral of K(-u) over [max(d delta, eps), (d+1) delta],
 * so <T+ f, g> = <f, T- g> holds to summation rounding by construction.
 * Cell integrals use adaptive Gauss-Kronrod quadrature, relative tol 1e-10.
 * Requires eps >= delta/2, keeping quadrature clear of the singularity.
 */
GridFunction truncated_transform(const GridFunction& f, const KernelSpec& kernel,
                                 double eps, Side side);

/// The stencil above, precomputed once for repeated applications.
std::vector<double> transform_stencil(const KernelSpec& kernel, double delta,
                                      double eps, std::size_t cells);

/// Correlation with a precomputed stencil; matches truncated_transform built
/// from the same kernel, eps, and grid bitwise.
GridFunction apply_stencil(const std::vector<double>& weights,
                           const GridFunction& f, Side side);

/**
 * Maximal truncated transform with absolute values inside: cellwise max over
 * eps in eps_grid of the correlation of |f| with |K| stencils.  The true
 * operator is nonincreasing in eps, so the max lives at the smallest entry;
 * the whole grid is scanned regardless.  eps_grid must be nonempty, sorted
 * ascending, all entries >= delta/2.
 */
GridFunction maximal_transform(const GridFunction& f, const KernelSpec& kernel,
                               const std::vector<double>& eps_grid,
                               Side side = Side::Plus);

}  // namespace osw
