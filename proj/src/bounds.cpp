#include "osw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <json.hpp>

#include "osw/weights.hpp"

namespace osw {

namespace {

double unit_draw(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::vector<double> random_signed(std::mt19937_64& eng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * unit_draw(eng) - 1.0;
  return v;
}

ImpliedC make_implied(double lhs, double envelope) {
  ImpliedC out;
  out.lhs = lhs;
  out.envelope = envelope;
  if (envelope > 0.0) {
    out.value = lhs / envelope;
    out.defined = true;
  }
  return out;
}

double class_constant(const Weight& w, double class_p, Side side) {
  return class_p == 1.0 ? a1_constant(w, side).constant
                        : ap_constant(w, class_p, side).constant;
}

double log_bump(double c) { return std::log(std::numbers::e + c); }

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

const char* family_name(SweepFamily f) {
  switch (f) {
    case SweepFamily::Constants: return "constants";
    case SweepFamily::Ramps: return "ramps";
    case SweepFamily::DeltaPowers: return "delta-powers";
    case SweepFamily::Steps: return "steps";
  }
  return "unknown";
}

const char* law_name(SweepLaw l) {
  return l == SweepLaw::StrongP ? "strong-p" : "weak-log";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

NormEstimate opnorm_lower_p2(const std::string& tag, const GridOp& apply,
                             const GridOp& adjoint, const Weight& w,
                             std::uint64_t seed, std::size_t iters,
                             double tol) {
  std::mt19937_64 eng(seed);
  const std::size_t n = w.size();
  const double origin = w.origin();
  const double delta = w.delta();
  auto wnorm = [&](const GridFunction& g) { return lp_norm(g, 2.0, w); };

  GridFunction v(origin, delta, random_signed(eng, n));
  for (int attempt = 0; wnorm(apply(v)) == 0.0; ++attempt) {
    if (attempt >= 16)
      throw estimation_error(tag + ": no start produced a nonzero image");
    v = GridFunction(origin, delta, random_signed(eng, n));
  }

  double prev = -1.0;
  for (std::size_t it = 0; it < iters; ++it) {
    GridFunction tv = apply(v);
    double num = wnorm(tv);
    double den = wnorm(v);
    if (num == 0.0 || den == 0.0) break;
    double mu = num / den;
    if (prev > 0.0 && std::fabs(mu - prev) <= tol * mu) break;
    prev = mu;

    std::vector<double> wt(n);
    for (std::size_t i = 0; i < n; ++i) wt[i] = tv[i] * w[i];
    GridFunction back = adjoint(GridFunction(origin, delta, std::move(wt)));
    std::vector<double> nv(n);
    for (std::size_t i = 0; i < n; ++i) nv[i] = back[i] / w[i];
    GridFunction next(origin, delta, std::move(nv));
    double scale = wnorm(next);
    if (scale == 0.0) break;
    next = cellwise(next, [scale](double x) { return x / scale; });
    v = next;
  }

  NormEstimate est;
  est.op = tag;
  est.p = 2.0;
  est.method = "matrix-p2";
  est.seed = seed;
  est.witness = v.values();
  double den = wnorm(v);
  est.value = den > 0.0 ? wnorm(apply(v)) / den : 0.0;
  if (!(est.value > 0.0))
    throw estimation_error(tag + ": iteration collapsed to a zero witness");
  return est;
}

NormEstimate opnorm_lower_search(const std::string& tag, double p,
                                 const GridNorm& ratio,
                                 const GridFunction& prototype,
                                 std::uint64_t seed, std::size_t probes,
                                 std::size_t ascents) {
  std::mt19937_64 eng(seed);
  const std::size_t n = prototype.size();
  const double origin = prototype.origin();
  const double delta = prototype.delta();
  auto grade = [&](const std::vector<double>& vals) {
    return ratio(GridFunction(origin, delta, vals));
  };

  std::vector<double> best(n, 1.0);
  double best_r = grade(best);
  for (std::size_t rep = 0; rep < probes; ++rep) {
    std::vector<double> trial(n, 0.0);
    switch (eng() % 3) {
      case 0:
        trial = random_signed(eng, n);
        break;
      case 1:
        for (double& x : trial) x = unit_draw(eng);
        break;
      default: {
        std::size_t spikes = 1 + eng() % 3;
        for (std::size_t s = 0; s < spikes; ++s)
          trial[eng() % n] = unit_draw(eng) < 0.5 ? -1.0 : 1.0;
        break;
      }
    }
    double r = grade(trial);
    if (r > best_r) {
      best_r = r;
      best = std::move(trial);
    }
  }
  static constexpr double kMoves[5] = {2.0, 0.5, -1.0, 1.5, 0.75};
  for (std::size_t rep = 0; rep < ascents; ++rep) {
    std::size_t i = eng() % n;
    std::size_t kind = eng() % 7;
    std::vector<double> trial = best;
    if (kind < 5) {
      trial[i] = trial[i] == 0.0 ? kMoves[kind] : trial[i] * kMoves[kind];
    } else {
      double scale = 0.0;
      for (double x : best) scale = std::max(scale, std::fabs(x));
      if (scale == 0.0) scale = 1.0;
      trial[i] += (kind == 5 ? 0.25 : -0.25) * scale;
    }
    double r = grade(trial);
    if (r > best_r) {
      best_r = r;
      best = std::move(trial);
    }
  }
  if (!(best_r > 0.0))
    throw estimation_error(tag + ": search found no nonzero ratio");

  NormEstimate est;
  est.op = tag;
  est.p = p;
  est.method = "random+ascent";
  est.seed = seed;
  est.witness = best;
  est.value = grade(best);
  return est;
}

ImpliedC strong_envelope_check(const GridFunction& f, const Weight& w,
                               double p, double r, double eps,
                               const KernelSpec& kernel) {
  if (!(r > 1.0) || !(r < 2.0))
    throw std::domain_error("strong_envelope_check: need r in (1,2)");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("strong_envelope_check: need p > 1");
  require_aligned(f, w, "strong_envelope_check");
  GridFunction tf = truncated_transform(f, kernel, eps, Side::Plus);
  double lhs = lp_norm(tf, p, w);
  Weight blurred(onesided_max_power(w, Side::Minus, r));
  double pprime = p / (p - 1.0);
  double rprime = r / (r - 1.0);
  double envelope = p * pprime * std::pow(rprime, 1.0 / pprime) *
                    lp_norm(f, p, blurred);
  return make_implied(lhs, envelope);
}

ImpliedC weak_ratio(const GridFunction& f, const Weight& w,
                    const KernelSpec& kernel, double eps) {
  for (double v : f.values())
    if (!(v >= 0.0))
      throw precondition_error("weak_ratio: f must be nonnegative");
  require_aligned(f, w, "weak_ratio");
  GridFunction tf = truncated_transform(f, kernel, eps, Side::Plus);
  double lhs = weak_lp_norm(tf, 1.0, w);
  double a1 = a1_constant(w, Side::Plus).constant;
  double envelope = a1 * log_bump(a1) * lp_norm(f, 1.0, w);
  return make_implied(lhs, envelope);
}

CoifmanRecord coifman_check(const GridFunction& f, const Weight& w, double p,
                            Side side, const KernelSpec& kernel, double eps,
                            double r) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::domain_error("coifman_check: need p >= 1");
  if (!(r > 1.0) || !(r < 2.0))
    throw std::domain_error("coifman_check: need r in (1,2)");
  require_aligned(f, w, "coifman_check");
  GridFunction tf = truncated_transform(f, kernel, eps, side);
  GridFunction mf = onesided_max(f, side);
  double cls = class_constant(w, p, side);

  CoifmanRecord rec;
  rec.l1_form =
      make_implied(lp_norm(tf, 1.0, w), cls * lp_norm(mf, 1.0, w));
  if (p > 1.0) {
    Weight blurred(onesided_max_power(w, side, r));
    double pprime = p / (p - 1.0);
    rec.dual_form = make_implied(lp_norm(tf, pprime, blurred),
                                 pprime * lp_norm(mf, pprime, blurred));
  }
  return rec;
}

GoodLambdaScan goodlambda_scan(const GridFunction& f, const Weight& w,
                               const KernelSpec& kernel, double lambda,
                               const std::vector<double>& gammas,
                               const std::vector<double>& eps_grid) {
  for (double v : f.values())
    if (!(v >= 0.0))
      throw precondition_error("goodlambda_scan: f must be nonnegative");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("goodlambda_scan: need lambda > 0");
  if (gammas.empty() || !std::is_sorted(gammas.begin(), gammas.end()))
    throw precondition_error("goodlambda_scan: gammas must be sorted ascending");
  for (double g : gammas)
    if (!(g > 0.0) || !(g < 1.0))
      throw std::domain_error("goodlambda_scan: gammas must lie in (0,1)");
  require_aligned(f, w, "goodlambda_scan");

  GridFunction star = maximal_transform(f, kernel, eps_grid, Side::Minus);
  GridFunction m = onesided_max(f, Side::Minus);
  double a1m = a1_constant(w, Side::Minus).constant;

  std::size_t denom_cells = 0;
  double denom_weight = 0.0;
  for (std::size_t i = 0; i < star.size(); ++i) {
    if (star[i] > lambda) {
      ++denom_cells;
      denom_weight += w[i];
    }
  }

  GoodLambdaScan scan;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double gamma : gammas) {
    GoodLambdaPoint pt;
    pt.gamma = gamma;
    if (denom_cells > 0) {
      pt.defined = true;
      std::size_t num_cells = 0;
      double num_weight = 0.0;
      for (std::size_t i = 0; i < star.size(); ++i) {
        if (star[i] > 2.0 * lambda) {
          if (m[i] < gamma * lambda) ++num_cells;
          if (m[i] < gamma * lambda / a1m) num_weight += w[i];
        }
      }
      pt.rho = static_cast<double>(num_cells) /
               static_cast<double>(denom_cells);
      pt.rho_weighted = num_weight / denom_weight;
      if (pt.rho > 0.0) {
        xs.push_back(1.0 / gamma);
        ys.push_back(std::log(pt.rho));
      }
    }
    scan.points.push_back(pt);
  }

  scan.used = xs.size();
  if (scan.used >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    scan.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    scan.spearman = spearman_rank(xs, ys);
  }
  return scan;
}

ImpliedC testset_check(const Weight& w, double p,
                       const std::vector<std::size_t>& set_cells,
                       const KernelSpec& kernel, double eps) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("testset_check: need p > 1");
  if (set_cells.empty()) return ImpliedC{};
  for (std::size_t i : set_cells)
    if (i >= w.size())
      throw std::out_of_range("testset_check: set cell outside the grid");

  std::vector<double> fv(w.size(), 0.0);
  double sigma_mass = 0.0;
  for (std::size_t i : set_cells) {
    double s = std::pow(w[i], -1.0 / (p - 1.0));
    fv[i] = s;
    sigma_mass += s;
  }
  sigma_mass *= w.delta();
  GridFunction f(w.origin(), w.delta(), std::move(fv));
  GridFunction tf = truncated_transform(f, kernel, eps, Side::Minus);
  double apm = ap_constant(w, p, Side::Minus).constant;
  double envelope = std::pow(apm, 1.0 / (p - 1.0)) * log_bump(apm) *
                    std::pow(sigma_mass, 1.0 / p);
  return make_implied(lp_norm(tf, p, w), envelope);
}

double spearman_rank(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw precondition_error("spearman_rank: need two same-length samples");
  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(rx.size());
  my /= static_cast<double>(ry.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
    sxy += (rx[i] - mx) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::pair<double, Weight>> sweep_family(const SweepConfig& cfg) {
  if (cfg.n < 8) throw config_error("sweep_family: need n >= 8");
  if (cfg.points < 1) throw config_error("sweep_family: need points >= 1");
  if (!(cfg.delta > 0.0)) throw config_error("sweep_family: need delta > 0");

  std::vector<std::pair<double, Weight>> fam;
  const std::size_t n = cfg.n;
  switch (cfg.family) {
    case SweepFamily::Constants: {
      double c = 0.25;
      for (std::size_t j = 0; j < cfg.points; ++j, c *= 4.0)
        fam.emplace_back(c,
                         Weight(0.0, cfg.delta, std::vector<double>(n, c)));
      break;
    }
    case SweepFamily::Ramps: {
      double s = 0.5;
      for (std::size_t j = 0; j < cfg.points; ++j, s *= 2.0) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
          v[i] = 1.0 + s * static_cast<double>(i + 1) /
                           static_cast<double>(n);
        fam.emplace_back(s, Weight(0.0, cfg.delta, std::move(v)));
      }
      break;
    }
    case SweepFamily::DeltaPowers: {
      std::vector<double> mass(n, 0.0);
      mass[0] = 1.0;
      GridFunction point(0.0, cfg.delta, std::move(mass));
      for (std::size_t j = 0; j < cfg.points; ++j) {
        double t = cfg.points == 1
                       ? 0.0
                       : static_cast<double>(j) /
                             static_cast<double>(cfg.points - 1);
        double dexp = 1.0 - std::pow(2.0, -8.0 * t);
        fam.emplace_back(dexp, mminus_delta_weight(point, dexp));
      }
      break;
    }
    case SweepFamily::Steps: {
      double h = 2.0;
      for (std::size_t j = 0; j < cfg.points; ++j, h *= 2.0) {
        std::vector<double> v(n, 1.0);
        for (std::size_t i = 0; i < n / 2; ++i) v[i] = h;
        fam.emplace_back(h, Weight(0.0, cfg.delta, std::move(v)));
      }
      break;
    }
  }
  return fam;
}

ExperimentReport sweep_experiment(const SweepConfig& cfg) {
  if (!(cfg.p >= 1.0) || !std::isfinite(cfg.p))
    throw config_error("sweep_experiment: need p >= 1");
  if (cfg.law == SweepLaw::StrongP && cfg.p <= 1.0)
    throw config_error("sweep_experiment: the strong law needs p > 1");
  if (cfg.class_p != 1.0 && cfg.class_p <= 1.0)
    throw config_error("sweep_experiment: class exponent must be 1 or > 1");

  KernelSpec kernel = default_kernel();
  std::vector<double> st =
      transform_stencil(kernel, cfg.delta, cfg.eps, cfg.n);
  auto apply_plus = [&st](const GridFunction& g) {
    return apply_stencil(st, g, Side::Plus);
  };
  auto apply_minus = [&st](const GridFunction& g) {
    return apply_stencil(st, g, Side::Minus);
  };

  ExperimentReport report;
  report.config = cfg;
  for (auto& [param, w] : sweep_family(cfg)) {
    SweepRow row;
    row.param = param;
    row.norm_w = class_constant(w, cfg.class_p, Side::Plus);
    if (cfg.law == SweepLaw::StrongP) {
      double pprime = cfg.p / (cfg.p - 1.0);
      if (cfg.p == 2.0) {
        row.estimate = opnorm_lower_p2("trunc-plus", apply_plus, apply_minus,
                                       w, cfg.seed, cfg.iters)
                           .value;
      } else {
        auto ratio = [&](const GridFunction& g) {
          double den = lp_norm(g, cfg.p, w);
          return den > 0.0 ? lp_norm(apply_plus(g), cfg.p, w) / den : 0.0;
        };
        row.estimate =
            opnorm_lower_search("trunc-plus", cfg.p, ratio, w, cfg.seed,
                                cfg.probes, cfg.iters)
                .value;
      }
      row.envelope = cfg.p * pprime * row.norm_w;
    } else {
      auto ratio = [&](const GridFunction& g) {
        double den = lp_norm(g, cfg.p, w);
        return den > 0.0 ? weak_lp_norm(apply_plus(g), cfg.p, w) / den : 0.0;
      };
      row.estimate = opnorm_lower_search("trunc-plus-weak", cfg.p, ratio, w,
                                         cfg.seed, cfg.probes,
                                         cfg.iters)
                         .value;
      row.envelope = row.norm_w * log_bump(row.norm_w);
    }
    row.implied_c = row.envelope > 0.0 ? row.estimate / row.envelope : 0.0;
    report.rows.push_back(row);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const SweepRow& row : report.rows) {
    if (row.implied_c > 0.0) {
      lo = std::min(lo, row.implied_c);
      hi = std::max(hi, row.implied_c);
    }
  }
  report.stability = (hi > 0.0 && std::isfinite(lo)) ? hi / lo : 0.0;
  return report;
}

std::string experiment_csv(const ExperimentReport& report) {
  std::string out = "param,norm_w,estimate,envelope,implied_C\n";
  for (const SweepRow& r : report.rows) {
    out += format_double(r.param) + "," + format_double(r.norm_w) + "," +
           format_double(r.estimate) + "," + format_double(r.envelope) + "," +
           format_double(r.implied_c) + "\n";
  }
  return out;
}

std::string experiment_json(const ExperimentReport& report) {
  const SweepConfig& cfg = report.config;
  nlohmann::json jc;
  jc["family"] = family_name(cfg.family);
  jc["law"] = law_name(cfg.law);
  jc["p"] = cfg.p;
  jc["class_p"] = cfg.class_p;
  jc["n"] = cfg.n;
  jc["delta"] = cfg.delta;
  jc["eps"] = cfg.eps;
  jc["seed"] = cfg.seed;
  jc["points"] = cfg.points;
  jc["iters"] = cfg.iters;
  jc["probes"] = cfg.probes;

  nlohmann::json j;
  j["config"] = jc;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(jc.dump())));
  j["config_hash"] = hash;
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& r : report.rows)
    rows.push_back({{"param", r.param},
                    {"norm_w", r.norm_w},
                    {"estimate", r.estimate},
                    {"envelope", r.envelope},
                    {"implied_C", r.implied_c}});
  j["rows"] = rows;
  j["stability"] = report.stability;
  return j.dump(2);
}

}  // namespace osw
