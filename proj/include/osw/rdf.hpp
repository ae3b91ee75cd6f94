#pragma once

#include <cstdint>
#include <string>

#include "osw/check.hpp"
#include "osw/maximal.hpp"

namespace osw {

enum class NormMethod { Theory, Empirical };

/**
 * Controls the majorant series D(h) = sum_k S^k(h) / (2B)^k where
 * S(h) = w^{-1} M^-(|h| w).  B plays the operator-norm surrogate: any value
 * at or above the true norm keeps the series geometric.  s_norm_bound pins B
 * directly; otherwise Theory uses the shape c_hat * q * 2^q * ||w||_{A_q^+}
 * and Empirical measures a lower bound by random probing plus coordinate
 * ascent and multiplies by safety.
 */
struct RdFConfig {
  double q = 2.0;
  double s_norm_bound = 0.0;
  std::size_t k_max = 20;
  NormMethod method = NormMethod::Theory;
  double c_hat = 1.0;
  double safety = 4.0;
  std::uint64_t seed = 1;
  std::size_t probes = 200;
  std::size_t ascents = 50;
};

/// w^{-1} M^-(|h| w) cellwise.
GridFunction rdf_S(const GridFunction& h, const Weight& w);

double rdf_bound(const Weight& w, const RdFConfig& cfg);

/// Truncated series sum_{k=0}^{k_max} S^k(h)/(2B)^k; term 0 is h itself, so
/// the result majorizes h cellwise for every truncation order.
GridFunction rdf_D(const GridFunction& h, const Weight& w,
                   const RdFConfig& cfg);

/**
 * Verifies the three majorant properties at once:
 *   (1) h <= D(h) cellwise, exact;
 *   (2) ||D(h)||_{L^q(w)} <= 2 ||h||_{L^q(w)}, certified by checking the
 *       term norms at most halve along the trajectory;
 *   (3) the product D(h) w has left-max ratio at most 2B (1 + tau_trunc),
 *       tau_trunc being the measured next-term correction max t_{k+1}/D.
 * Cells where the product vanishes sit left of the support and are skipped,
 * the left-looking maximal vanishes there too.
 */
struct RdFRecord {
  double q = 0.0;
  double b_used = 0.0;
  std::size_t k_max = 0;
  bool majorizes = false;
  CheckRecord norm_doubling;
  double trajectory_ratio = 0.0;
  double product_a1 = 0.0;
  double tau_trunc = 0.0;
  CheckRecord product_class;
  double tail_bound = 0.0;
  bool pass = false;
};

RdFRecord rdf_verify(const GridFunction& h, const Weight& w,
                     const RdFConfig& cfg);

std::string rdf_record_json(const RdFRecord& rec, const RdFConfig& cfg);

/// Theoretical ceiling shape p' 2^{p'} ||w||_{A_p^+}^{1/(p-1)} for the
/// L^p(w) norm of the right-looking maximal operator.
double mplus_norm_bound(const Weight& w, double p);

}  // namespace osw
