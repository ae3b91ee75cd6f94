#include "osw/czd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace osw {

namespace {

std::vector<CellInterval> runs_above(const GridFunction& m, double lambda) {
  std::vector<CellInterval> out;
  std::size_t i = 0;
  const std::size_t n = m.size();
  while (i < n) {
    if (m[i] > lambda) {
      std::size_t j = i + 1;
      while (j < n && m[j] > lambda) ++j;
      out.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

nlohmann::json interval_list(const std::vector<CellInterval>& ivs) {
  nlohmann::json arr = nlohmann::json::array();
  for (CellInterval iv : ivs) arr.push_back({iv.first, iv.last});
  return arr;
}

nlohmann::json check_entry(const CheckRecord& c) {
  return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}, {"pass", c.pass}};
}

}  // namespace

CZDecomposition cz_decompose(const GridFunction& f, double lambda) {
  for (double v : f.values())
    if (!(v >= 0.0))
      throw precondition_error("cz_decompose: f must be nonnegative");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("cz_decompose: lambda must be positive and finite");

  double mass = 0.0;
  for (double v : f.values()) mass += v;
  // Any level-set run reaching a cell D places left of the support averages
  // below mass / D, so ceil(mass / lambda) zero cells close every run.
  double pad_needed = std::ceil(mass / lambda);
  if (pad_needed + static_cast<double>(f.size()) > 5e7)
    throw precondition_error(
        "cz_decompose: level too small for the mass on this grid");
  std::size_t pad = static_cast<std::size_t>(pad_needed);

  GridFunction padded = pad_zero(f, pad, 0);
  std::vector<CellInterval> components;
  for (int attempt = 0;; ++attempt) {
    padded = pad_zero(f, pad, 0);
    GridFunction m = onesided_max(padded, Side::Plus);
    components = runs_above(m, lambda);
    // Prepended zeros shift the picture rigidly, so one adjustment settles
    // the room needed by the double-length companions.
    std::size_t deficit = 0;
    for (CellInterval iv : components) {
      std::size_t need = 2 * iv.size();
      if (iv.first < need) deficit = std::max(deficit, need - iv.first);
    }
    if (deficit == 0) break;
    if (attempt >= 3)
      throw numeric_error("cz_decompose: companion padding failed to settle");
    pad += deficit;
  }

  double fmax = 0.0;
  for (double v : f.values()) fmax = std::max(fmax, v);
  std::size_t min_len = std::numeric_limits<std::size_t>::max();
  for (CellInterval iv : components) min_len = std::min(min_len, iv.size());
  double eta = components.empty()
                   ? 0.0
                   : fmax / (lambda * static_cast<double>(min_len));

  std::vector<CellInterval> companions;
  std::vector<CellInterval> joined;
  for (CellInterval iv : components) {
    double sum = value_sum(padded, iv);
    double len = static_cast<double>(iv.size());
    if (!(sum > lambda * len * (1.0 - 1e-12)))
      throw numeric_error("cz_decompose: component average fell to the level");
    if (!(sum <= lambda * (1.0 + eta) * len * (1.0 + 1e-12)))
      throw numeric_error("cz_decompose: component average exceeds its bracket");
    companions.push_back({iv.first - 2 * iv.size(), iv.first});
    joined.push_back({iv.first - 2 * iv.size(), iv.last});
  }

  const double origin = padded.origin();
  const double delta = padded.delta();
  std::vector<double> gv = padded.values();
  for (CellInterval iv : components)
    for (std::size_t i = iv.first; i < iv.last; ++i) gv[i] = lambda;
  GridFunction good(origin, delta, std::move(gv));

  std::vector<double> bv(padded.size());
  for (std::size_t i = 0; i < bv.size(); ++i) bv[i] = padded[i] - good[i];
  GridFunction bad(origin, delta, std::move(bv));

  std::vector<GridFunction> bad_parts;
  for (CellInterval iv : components) {
    std::vector<double> pv(padded.size(), 0.0);
    for (std::size_t i = iv.first; i < iv.last; ++i) pv[i] = bad[i];
    bad_parts.emplace_back(origin, delta, std::move(pv));
  }
  return CZDecomposition{lambda,
                         pad,
                         eta,
                         std::move(padded),
                         std::move(components),
                         std::move(companions),
                         std::move(joined),
                         std::move(good),
                         std::move(bad),
                         std::move(bad_parts)};
}

std::string cz_decomposition_json(const CZDecomposition& dec) {
  nlohmann::json j;
  j["lambda"] = dec.lambda;
  j["pad_cells"] = dec.pad_cells;
  j["eta"] = dec.eta;
  j["origin"] = dec.padded_f.origin();
  j["delta"] = dec.padded_f.delta();
  j["cells"] = dec.padded_f.size();
  j["components"] = interval_list(dec.components);
  j["left_companions"] = interval_list(dec.left_companions);
  j["omega_tilde"] = interval_list(dec.omega_tilde);
  nlohmann::json avgs = nlohmann::json::array();
  for (CellInterval iv : dec.components)
    avgs.push_back(value_sum(dec.padded_f, iv) /
                   static_cast<double>(iv.size()));
  j["component_averages"] = avgs;
  return j.dump(2);
}

namespace {

Weight weight_on_padded(const CZDecomposition& dec, const Weight& w) {
  const GridFunction& pf = dec.padded_f;
  if (w.aligned_with(pf)) return w;
  double inner_origin =
      pf.origin() + static_cast<double>(dec.pad_cells) * pf.delta();
  bool extendable = w.delta() == pf.delta() &&
                    w.size() + dec.pad_cells == pf.size() &&
                    std::fabs(w.origin() - inner_origin) <= 1e-9 * pf.delta();
  if (!extendable)
    throw alignment_error(
        "cz_report: weight matches neither the padded grid nor the original");
  std::vector<double> vals(pf.size(), w[0]);
  std::copy(w.values().begin(), w.values().end(),
            vals.begin() + static_cast<std::ptrdiff_t>(dec.pad_cells));
  return Weight(GridFunction(pf.origin(), pf.delta(), std::move(vals)));
}

}  // namespace

CZReport cz_report(const CZDecomposition& dec, const Weight& w) {
  Weight wp = weight_on_padded(dec, w);
  const GridFunction& f = dec.padded_f;
  const double delta = f.delta();
  const double lambda = dec.lambda;
  GridFunction u = onesided_max(wp, Side::Minus);

  double whole_pair = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) whole_pair += f[i] * u[i];
  whole_pair *= delta;

  CZReport rep;
  double comp_weight = 0.0;
  for (std::size_t j = 0; j < dec.components.size(); ++j) {
    CellInterval comp = dec.components[j];
    CellInterval left = dec.left_companions[j];
    double w_left = weighted_measure(wp, left);
    double pair_left = 0.0;
    for (std::size_t i = left.first; i < left.last; ++i)
      pair_left += f[i] * u[i];
    double pair_comp = 0.0;
    for (std::size_t i = comp.first; i < comp.last; ++i)
      pair_comp += f[i] * u[i];
    rep.companion_literal.push_back(
        make_check(w_left, 3.0 / lambda * pair_left * delta));
    rep.companion_component.push_back(
        make_check(w_left, 3.0 / lambda * pair_comp * delta));
    comp_weight += weighted_measure(wp, comp);

    std::vector<double> masked = wp.values();
    for (std::size_t i = dec.omega_tilde[j].first;
         i < dec.omega_tilde[j].last; ++i)
      masked[i] = 0.0;
    GridFunction mm = onesided_max(
        GridFunction(f.origin(), delta, std::move(masked)), Side::Minus);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = comp.first; i < comp.last; ++i) {
      lo = std::min(lo, mm[i]);
      hi = std::max(hi, mm[i]);
    }
    double ratio = lo > 0.0 ? hi / lo : 0.0;
    rep.masked_ratio.push_back(ratio);
    rep.masked_ratio_max = std::max(rep.masked_ratio_max, ratio);
  }
  rep.total_weight = make_check(comp_weight, 4.0 / lambda * whole_pair);

  bool comps_ok = true;
  for (const CheckRecord& c : rep.companion_component)
    comps_ok = comps_ok && c.pass;
  rep.pass = comps_ok && rep.total_weight.pass &&
             rep.masked_ratio_max <= 1.5 * (1.0 + 1e-9);
  return rep;
}

std::string cz_report_json(const CZReport& rep) {
  nlohmann::json j;
  nlohmann::json lit = nlohmann::json::array();
  for (const CheckRecord& c : rep.companion_literal) lit.push_back(check_entry(c));
  nlohmann::json comp = nlohmann::json::array();
  for (const CheckRecord& c : rep.companion_component)
    comp.push_back(check_entry(c));
  j["companion_literal"] = lit;
  j["companion_component"] = comp;
  j["total_weight"] = check_entry(rep.total_weight);
  j["masked_ratio"] = rep.masked_ratio;
  j["masked_ratio_max"] = rep.masked_ratio_max;
  j["pass"] = rep.pass;
  return j.dump(2);
}

}  // namespace osw
