#include "osw/rdf.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "osw/weights.hpp"

namespace osw {

namespace {

void validate_config(const RdFConfig& cfg) {
  if (!(cfg.q > 1.0) || !std::isfinite(cfg.q))
    throw std::domain_error("rdf: need exponent q > 1");
  if (cfg.k_max < 1) throw config_error("rdf: need k_max >= 1");
  if (!(cfg.c_hat > 0.0)) throw config_error("rdf: need c_hat > 0");
  if (cfg.s_norm_bound < 0.0) throw config_error("rdf: negative norm bound");
  if (cfg.method == NormMethod::Empirical) {
    if (!(cfg.safety >= 2.0))
      throw config_error("rdf: empirical mode needs safety >= 2");
    if (cfg.probes == 0) throw config_error("rdf: need probes >= 1");
  }
}

void require_nonnegative(const GridFunction& h, const char* who) {
  for (double v : h.values())
    if (!(v >= 0.0))
      throw precondition_error(std::string(who) + ": h must be nonnegative");
}

double unit_draw(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

GridFunction scaled_step(const GridFunction& prev, const Weight& w,
                         double two_b) {
  GridFunction s = rdf_S(prev, w);
  std::vector<double> v = s.values();
  for (double& x : v) x /= two_b;
  return GridFunction(s.origin(), s.delta(), std::move(v));
}

double probe_ratio(const std::vector<double>& h, const Weight& w, double q) {
  GridFunction hf(w.origin(), w.delta(), h);
  double denom = lp_norm(hf, q, w);
  if (denom == 0.0) return 0.0;
  return lp_norm(rdf_S(hf, w), q, w) / denom;
}

double empirical_lower_bound(const Weight& w, const RdFConfig& cfg) {
  std::mt19937_64 eng(cfg.seed);
  const std::size_t n = w.size();
  std::vector<double> best(n, 1.0);
  double best_ratio = probe_ratio(best, w, cfg.q);
  for (std::size_t rep = 0; rep < cfg.probes; ++rep) {
    std::vector<double> h(n);
    for (double& x : h) {
      double u = unit_draw(eng);
      x = u < 0.2 ? 0.0 : unit_draw(eng);
    }
    double r = probe_ratio(h, w, cfg.q);
    if (r > best_ratio) {
      best_ratio = r;
      best = std::move(h);
    }
  }
  for (std::size_t rep = 0; rep < cfg.ascents; ++rep) {
    std::size_t i = static_cast<std::size_t>(eng() % n);
    double factor = unit_draw(eng) < 0.5 ? 0.5 : 2.0;
    std::vector<double> trial = best;
    trial[i] = trial[i] == 0.0 ? factor : trial[i] * factor;
    double r = probe_ratio(trial, w, cfg.q);
    if (r > best_ratio) {
      best_ratio = r;
      best = std::move(trial);
    }
  }
  if (best_ratio == 0.0)
    throw estimation_error("rdf_bound: no probe produced a nonzero ratio");
  return best_ratio;
}

}  // namespace

GridFunction rdf_S(const GridFunction& h, const Weight& w) {
  require_aligned(h, w, "rdf_S");
  std::vector<double> hw(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) hw[i] = std::fabs(h[i]) * w[i];
  GridFunction m =
      onesided_max(GridFunction(h.origin(), h.delta(), std::move(hw)),
                   Side::Minus);
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = m[i] / w[i];
  return GridFunction(h.origin(), h.delta(), std::move(out));
}

double rdf_bound(const Weight& w, const RdFConfig& cfg) {
  validate_config(cfg);
  if (cfg.s_norm_bound > 0.0) return cfg.s_norm_bound;
  if (cfg.method == NormMethod::Theory)
    return cfg.c_hat * cfg.q * std::pow(2.0, cfg.q) *
           ap_constant(w, cfg.q, Side::Plus).constant;
  return empirical_lower_bound(w, cfg) * cfg.safety;
}

GridFunction rdf_D(const GridFunction& h, const Weight& w,
                   const RdFConfig& cfg) {
  validate_config(cfg);
  require_nonnegative(h, "rdf_D");
  require_aligned(h, w, "rdf_D");
  const double two_b = 2.0 * rdf_bound(w, cfg);
  std::vector<double> acc = h.values();
  GridFunction term = h;
  for (std::size_t k = 1; k <= cfg.k_max; ++k) {
    term = scaled_step(term, w, two_b);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
  }
  return GridFunction(h.origin(), h.delta(), std::move(acc));
}

RdFRecord rdf_verify(const GridFunction& h, const Weight& w,
                     const RdFConfig& cfg) {
  validate_config(cfg);
  require_nonnegative(h, "rdf_verify");
  require_aligned(h, w, "rdf_verify");
  const double b = rdf_bound(w, cfg);
  const double two_b = 2.0 * b;

  RdFRecord rec;
  rec.q = cfg.q;
  rec.b_used = b;
  rec.k_max = cfg.k_max;

  std::vector<double> acc = h.values();
  GridFunction term = h;
  double prev_norm = lp_norm(h, cfg.q, w);
  for (std::size_t k = 1; k <= cfg.k_max + 1; ++k) {
    term = scaled_step(term, w, two_b);
    double cur_norm = lp_norm(term, cfg.q, w);
    if (prev_norm > 0.0) {
      double ratio = cur_norm / prev_norm * two_b;
      rec.trajectory_ratio = std::max(rec.trajectory_ratio, ratio);
      if (ratio > b * (1.0 + 1e-9))
        throw config_error(
            "rdf_verify: norm bound not certified on the trajectory");
    }
    prev_norm = cur_norm;
    if (k <= cfg.k_max)
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
  }
  GridFunction d(h.origin(), h.delta(), acc);

  rec.majorizes = true;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (d[i] < h[i]) rec.majorizes = false;

  rec.norm_doubling =
      make_check(lp_norm(d, cfg.q, w), 2.0 * lp_norm(h, cfg.q, w), 1e-12);

  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0.0) rec.tau_trunc = std::max(rec.tau_trunc, term[i] / d[i]);

  std::vector<double> prod(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) prod[i] = d[i] * w[i];
  GridFunction left_max = onesided_max(
      GridFunction(h.origin(), h.delta(), std::move(prod)), Side::Minus);
  for (std::size_t i = 0; i < d.size(); ++i) {
    double dv = d[i] * w[i];
    if (dv > 0.0)
      rec.product_a1 = std::max(rec.product_a1, left_max[i] / dv);
  }
  rec.product_class =
      make_check(rec.product_a1, two_b * (1.0 + rec.tau_trunc));
  rec.tail_bound =
      std::pow(2.0, -static_cast<double>(cfg.k_max)) * lp_norm(h, cfg.q, w);
  rec.pass = rec.majorizes && rec.norm_doubling.pass && rec.product_class.pass;
  return rec;
}

std::string rdf_record_json(const RdFRecord& rec, const RdFConfig& cfg) {
  nlohmann::json j;
  j["q"] = rec.q;
  j["b_used"] = rec.b_used;
  j["k_max"] = rec.k_max;
  j["majorizes"] = rec.majorizes;
  j["norm_doubling"] = {{"lhs", rec.norm_doubling.lhs},
                        {"rhs", rec.norm_doubling.rhs},
                        {"pass", rec.norm_doubling.pass}};
  j["trajectory_ratio"] = rec.trajectory_ratio;
  j["product_a1"] = rec.product_a1;
  j["tau_trunc"] = rec.tau_trunc;
  j["product_class"] = {{"lhs", rec.product_class.lhs},
                        {"rhs", rec.product_class.rhs},
                        {"pass", rec.product_class.pass}};
  j["tail_bound"] = rec.tail_bound;
  j["pass"] = rec.pass;
  j["method"] =
      cfg.method == NormMethod::Theory ? "theory" : "empirical";
  j["seed"] = cfg.seed;
  return j.dump(2);
}

double mplus_norm_bound(const Weight& w, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("mplus_norm_bound: need p > 1");
  double pprime = p / (p - 1.0);
  return pprime * std::pow(2.0, pprime) *
         std::pow(ap_constant(w, p, Side::Plus).constant, 1.0 / (p - 1.0));
}

}  // namespace osw
