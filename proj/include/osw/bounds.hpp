#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "osw/maximal.hpp"
#include "osw/sio.hpp"

namespace osw {

/**
 * Lower bound on an operator norm, certified by its witness: value is the
 * ratio the witness achieves, so re-evaluating the operator on the witness
 * reproduces value exactly.
 */
struct NormEstimate {
  std::string op;
  double p = 2.0;
  double value = 0.0;
  std::vector<double> witness;
  std::string method;
  std::uint64_t seed = 0;
};

using GridOp = std::function<GridFunction(const GridFunction&)>;
using GridNorm = std::function<double(const GridFunction&)>;

/**
 * Largest ratio ||apply(f)||_{L^2(w)} / ||f||_{L^2(w)} for a linear operator,
 * by power iteration on the weighted normal operator.  adjoint must satisfy
 * <apply(f), g> = <f, adjoint(g)> in the unweighted cell pairing.  Stops when
 * the ratio settles to relative tol or after iters rounds; the returned value
 * is re-measured from the witness, hence a true lower bound either way.
 */
NormEstimate opnorm_lower_p2(const std::string& tag, const GridOp& apply,
                             const GridOp& adjoint, const Weight& w,
                             std::uint64_t seed, std::size_t iters = 200,
                             double tol = 1e-8);

/**
 * Seeded random starts plus multiplicative coordinate ascent maximizing an
 * arbitrary ratio functional over functions on the prototype's grid.  ratio
 * must return 0 on inputs it cannot grade (zero function).
 */
NormEstimate opnorm_lower_search(const std::string& tag, double p,
                                 const GridNorm& ratio,
                                 const GridFunction& prototype,
                                 std::uint64_t seed, std::size_t probes = 200,
                                 std::size_t ascents = 200);

/// One measured inequality side against its fully explicit envelope; value
/// is lhs / envelope ("implied C"), defined is false when the ratio is 0/0.
struct ImpliedC {
  double lhs = 0.0;
  double envelope = 0.0;
  double value = 0.0;
  bool defined = false;
};

/**
 * Strong-type comparison: ||T_eps^+ f||_{L^p(w)} against
 * p p' (r')^{1/p'} ||f||_{L^p(v)} with v the r-power left maximal of w.
 * Needs 1 < r < 2 and p > 1.
 */
ImpliedC strong_envelope_check(const GridFunction& f, const Weight& w,
                               double p, double r, double eps,
                               const KernelSpec& kernel = default_kernel());

/// Weak-type (1,1) comparison: weak L^1(w) norm of T_eps^+ f against
/// ||w||_{A_1^+} log(e + ||w||_{A_1^+}) ||f||_{L^1(w)}.  f must be
/// nonnegative; a zero f leaves the record undefined.
ImpliedC weak_ratio(const GridFunction& f, const Weight& w,
                    const KernelSpec& kernel, double eps);

/**
 * Transform-versus-maximal comparisons on one side: the L^1(w) ratio
 * ||T_eps f||_1 / (||w||_class ||M f||_1) with the class constant a1 at
 * p = 1 and the three-point constant otherwise, plus the dual-exponent form
 * with weight M_r of w and the p' factor divided out.
 */
struct CoifmanRecord {
  ImpliedC l1_form;
  ImpliedC dual_form;
};

CoifmanRecord coifman_check(const GridFunction& f, const Weight& w, double p,
                            Side side, const KernelSpec& kernel, double eps,
                            double r = 1.5);

/**
 * Distributional comparison scan: for each gamma, the fraction of the level
 * set {T* f > lambda} (left-sided maximal transform) that still exceeds
 * 2 lambda while the left maximal of f stays below gamma lambda, plus the
 * weighted variant with the threshold shrunk by the weight's class constant.
 * Fits ln rho against 1/gamma by least squares and ranks the trend by
 * Spearman correlation with average ranks; zero-rho points are kept in the
 * record but excluded from the fit.
 */
struct GoodLambdaPoint {
  double gamma = 0.0;
  double rho = 0.0;
  double rho_weighted = 0.0;
  bool defined = false;
};

struct GoodLambdaScan {
  std::vector<GoodLambdaPoint> points;
  double slope = 0.0;
  double spearman = 0.0;
  std::size_t used = 0;
};

GoodLambdaScan goodlambda_scan(const GridFunction& f, const Weight& w,
                               const KernelSpec& kernel, double lambda,
                               const std::vector<double>& gammas,
                               const std::vector<double>& eps_grid);

/// Set-indicator comparison: ||T_eps^-(sigma chi_E)||_{L^p(w)} against
/// ||w||^{1/(p-1)} log(e + ||w||) sigma(E)^{1/p} with sigma = w^{-1/(p-1)}
/// and the class constant taken on the Minus side.
ImpliedC testset_check(const Weight& w, double p,
                       const std::vector<std::size_t>& set_cells,
                       const KernelSpec& kernel, double eps);

enum class SweepFamily { Constants, Ramps, DeltaPowers, Steps };
enum class SweepLaw { StrongP, WeakLog };

/**
 * One consistency sweep: for each weight in the family, estimate the
 * operator constant of the truncated transform and divide by the envelope
 * (p p' ||w|| under StrongP, ||w|| log(e + ||w||) on the weak norm under
 * WeakLog).  class_p picks the class constant: 1 reads the a1 form, any
 * other value the three-point form at that exponent.  stability is the
 * max/min ratio of positive implied constants.
 */
struct SweepConfig {
  SweepFamily family = SweepFamily::DeltaPowers;
  SweepLaw law = SweepLaw::StrongP;
  double p = 2.0;
  double class_p = 1.0;
  std::size_t n = 4096;
  double delta = 1.0 / 64.0;
  double eps = 1.0 / 128.0;
  std::uint64_t seed = 1;
  std::size_t points = 8;
  std::size_t iters = 200;
  std::size_t probes = 200;
};

struct SweepRow {
  double param = 0.0;
  double norm_w = 0.0;
  double estimate = 0.0;
  double envelope = 0.0;
  double implied_c = 0.0;
};

struct ExperimentReport {
  SweepConfig config;
  std::vector<SweepRow> rows;
  double stability = 0.0;
};

ExperimentReport sweep_experiment(const SweepConfig& cfg);

std::string experiment_csv(const ExperimentReport& report);
std::string experiment_json(const ExperimentReport& report);

/// Spearman rank correlation with average ranks on ties.
double spearman_rank(const std::vector<double>& x,
                     const std::vector<double>& y);

/// Weight family used by the sweeps, exposed so tests and the acceptance
/// harness can sample identical grids: pairs (family parameter, weight).
std::vector<std::pair<double, Weight>> sweep_family(const SweepConfig& cfg);

}  // namespace osw
