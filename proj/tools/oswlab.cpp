// Command-line front end: grid data in, checks and sweep reports out.
// Exit 0: all checks pass.  Exit 1: a mathematical check failed (the failing
// record is printed).  Exit 2: usage or IO error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "osw/bounds.hpp"
#include "osw/czd.hpp"
#include "osw/grid.hpp"
#include "osw/maximal.hpp"
#include "osw/rdf.hpp"
#include "osw/rhi.hpp"
#include "osw/sio.hpp"
#include "osw/weights.hpp"

namespace {

using namespace osw;

struct Options {
  std::string input;
  std::string weight;
  std::string output;
  std::string format = "json";
  std::string side = "plus";
  std::string kernel = "default-osc";
  std::string method = "theory";
  std::string family = "delta-powers";
  std::string law = "strong";
  std::string gammas = "0.05,0.1,0.2,0.3,0.4,0.5";
  double p = 1.0;
  double r = 1.0;
  double q = 2.0;
  double lambda = 1.0;
  double eps = 0.0;
  double delta_exp = 0.5;
  double eps_target = 0.25;
  std::size_t n = 256;
  std::size_t cases = 1000;
  std::uint64_t seed = 1;
  std::size_t stride = 1;
  std::size_t kmax = 20;
  std::size_t points = 8;
  std::size_t iters = 200;
  std::size_t probes = 200;
};

Side parse_side(const std::string& s) {
  return s == "minus" ? Side::Minus : Side::Plus;
}

KernelSpec parse_kernel(const std::string& name) {
  if (name == "default-osc") return default_kernel();
  if (name == "reciprocal") return reciprocal_kernel();
  throw config_error("unknown kernel: " + name);
}

Weight load_weight(const std::string& path) {
  return Weight(load_grid_file(path));
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void emit_grid(const GridFunction& f, const Options& opt) {
  if (!opt.output.empty()) {
    save_grid_file(f, opt.output);
    return;
  }
  if (opt.format == "csv")
    write_csv(f, std::cout);
  else
    write_json(f, std::cout);
}

nlohmann::json check_obj(const CheckRecord& c) {
  return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack},
          {"pass", c.pass}};
}

nlohmann::json params_obj(const RhiParams& params) {
  return {{"p", params.p},
          {"ap_norm", params.ap_norm},
          {"r_w", params.r_w},
          {"beta", params.beta},
          {"delta_rhi", params.delta_rhi}};
}

RhiParams measured_params(const Weight& w, double p) {
  double cls = p == 1.0 ? a1_constant(w, Side::Plus).constant
                        : ap_constant(w, p, Side::Plus).constant;
  return rhi_exponent(p, cls);
}

int run_maximal(const Options& opt) {
  GridFunction f = load_grid_file(opt.input);
  emit_grid(onesided_max_power(f, parse_side(opt.side), opt.r), opt);
  return 0;
}

int run_weight_const(const Options& opt) {
  Weight w = load_weight(opt.weight);
  WeightClassReport rep =
      opt.p == 1.0 ? a1_constant(w, parse_side(opt.side))
                   : ap_constant(w, opt.p, parse_side(opt.side), opt.stride);
  if (opt.format == "csv") {
    char line[128];
    std::snprintf(line, sizeof line, "p,side,constant,stride\n%.17g,%s,%.17g,%zu\n",
                  rep.p, side_name(rep.side), rep.constant, rep.stride);
    emit(line, opt.output);
  } else {
    emit(weight_report_json(rep), opt.output);
  }
  return 0;
}

int run_rhi_verify(const Options& opt) {
  Weight w = load_weight(opt.weight);
  RhiParams params = measured_params(w, opt.p);
  WeakRhiRecord rec = verify_weak_rhi(w, w.whole(), params);
  nlohmann::json j;
  j["params"] = params_obj(params);
  j["lambda0"] = rec.lambda0;
  j["integral_form"] = check_obj(rec.integral_form);
  j["norm_form"] = check_obj(rec.norm_form);
  j["pass"] = rec.pass;
  emit(j.dump(2), opt.output);
  return rec.pass ? 0 : 1;
}

int run_blocks_rhi(const Options& opt) {
  Weight w = load_weight(opt.weight);
  RhiParams params = measured_params(w, opt.p);
  const std::size_t n = w.size();
  std::size_t triples = 0;
  std::size_t failures = 0;
  double min_slack = 0.0;
  nlohmann::json worst;
  nlohmann::json first_failure;
  for (std::size_t u = 1; 3 * u <= n; ++u) {
    for (std::size_t a = 0; a + 3 * u <= n; a += opt.stride) {
      CheckRecord rec = verify_block_rhi(w, a, a + 2 * u, a + 3 * u, params);
      ++triples;
      if (triples == 1 || rec.slack < min_slack) {
        min_slack = rec.slack;
        worst = {{"a", a}, {"b", a + 2 * u}, {"c", a + 3 * u},
                 {"check", check_obj(rec)}};
      }
      if (!rec.pass && failures++ == 0)
        first_failure = {{"a", a}, {"b", a + 2 * u}, {"c", a + 3 * u},
                         {"check", check_obj(rec)}};
    }
  }
  nlohmann::json j;
  j["params"] = params_obj(params);
  j["triples"] = triples;
  j["failures"] = failures;
  j["tightest"] = worst;
  if (failures > 0) j["first_failure"] = first_failure;
  j["pass"] = failures == 0 && triples > 0;
  emit(j.dump(2), opt.output);
  return failures == 0 && triples > 0 ? 0 : 1;
}

int run_smallset(const Options& opt) {
  Weight w = load_weight(opt.weight);
  const std::size_t n = w.size();
  if (n < 8) throw precondition_error("smallset: weight grid too short");
  std::size_t b = n / 2;
  std::mt19937_64 eng(opt.seed);
  std::vector<std::size_t> cells;
  std::size_t want = std::max<std::size_t>(1, (n - b) / 16);
  while (cells.size() < want) {
    std::size_t c = b + eng() % (n - b);
    bool dup = false;
    for (std::size_t x : cells) dup = dup || x == c;
    if (!dup) cells.push_back(c);
  }
  SmallsetRecord rec = smallset_decay_check(w, opt.p, parse_side(opt.side),
                                            opt.eps_target, 0, b, n, cells);
  nlohmann::json j;
  j["class_constant"] = rec.class_constant;
  j["r_conjugate"] = rec.r_conjugate;
  j["threshold"] = rec.threshold;
  j["set_fraction"] = rec.set_fraction;
  j["weight_fraction"] = rec.weight_fraction;
  j["measured_xi"] = rec.measured_xi;
  j["hypothesis"] = rec.hypothesis;
  j["conclusion"] = rec.conclusion;
  j["pass"] = rec.pass;
  emit(j.dump(2), opt.output);
  return rec.pass ? 0 : 1;
}

int run_openness(const Options& opt) {
  Weight w = load_weight(opt.weight);
  OpennessRecord rec = openness_exponent(w, opt.p);
  nlohmann::json j;
  j["p"] = rec.p;
  j["p_minus_eps"] = rec.p_minus_eps;
  j["sigma_norm"] = rec.sigma_norm;
  j["r_sigma"] = rec.r_sigma;
  j["ap_norm"] = rec.ap_norm;
  j["fourpoint"] = rec.fourpoint;
  j["bound"] = rec.bound;
  j["finite"] = rec.finite;
  j["pass"] = rec.pass;
  emit(j.dump(2), opt.output);
  return rec.pass ? 0 : 1;
}

int run_czd(const Options& opt) {
  GridFunction f = load_grid_file(opt.input);
  CZDecomposition dec = cz_decompose(f, opt.lambda);
  nlohmann::json j;
  j["decomposition"] = nlohmann::json::parse(cz_decomposition_json(dec));
  bool pass = true;
  if (!opt.weight.empty()) {
    CZReport rep = cz_report(dec, load_weight(opt.weight));
    j["report"] = nlohmann::json::parse(cz_report_json(rep));
    pass = rep.pass;
  }
  emit(j.dump(2), opt.output);
  return pass ? 0 : 1;
}

int run_rdf_verify(const Options& opt) {
  GridFunction h = load_grid_file(opt.input);
  Weight w = load_weight(opt.weight);
  RdFConfig cfg;
  cfg.q = opt.q;
  cfg.k_max = opt.kmax;
  cfg.seed = opt.seed;
  cfg.method = opt.method == "empirical" ? NormMethod::Empirical
                                         : NormMethod::Theory;
  RdFRecord rec = rdf_verify(h, w, cfg);
  emit(rdf_record_json(rec, cfg), opt.output);
  return rec.pass ? 0 : 1;
}

int run_kernel_check(const Options& opt) {
  KernelConditionReport rep = kernel_condition_report(parse_kernel(opt.kernel));
  nlohmann::json j;
  j["kernel"] = opt.kernel;
  j["size_max"] = rep.size_max;
  j["smooth_max"] = rep.smooth_max;
  j["proxy_max"] = rep.proxy_max;
  j["size_pass"] = rep.size_pass;
  j["smooth_pass"] = rep.smooth_pass;
  j["proxy_pass"] = rep.proxy_pass;
  j["pass"] = rep.pass;
  emit(j.dump(2), opt.output);
  return rep.pass ? 0 : 1;
}

int run_transform(const Options& opt) {
  GridFunction f = load_grid_file(opt.input);
  double eps = opt.eps > 0.0 ? opt.eps : f.delta() / 2.0;
  emit_grid(truncated_transform(f, parse_kernel(opt.kernel), eps,
                                parse_side(opt.side)),
            opt);
  return 0;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

int run_goodlambda(const Options& opt) {
  GridFunction f = load_grid_file(opt.input);
  Weight w = load_weight(opt.weight);
  double base = opt.eps > 0.0 ? opt.eps : f.delta() / 2.0;
  std::vector<double> eps_grid = {base, 2.0 * base, 4.0 * base};
  GoodLambdaScan scan = goodlambda_scan(f, w, parse_kernel(opt.kernel),
                                        opt.lambda, parse_list(opt.gammas),
                                        eps_grid);
  nlohmann::json pts = nlohmann::json::array();
  for (const GoodLambdaPoint& pt : scan.points)
    pts.push_back({{"gamma", pt.gamma},
                   {"rho", pt.rho},
                   {"rho_weighted", pt.rho_weighted},
                   {"defined", pt.defined}});
  nlohmann::json j;
  j["points"] = pts;
  j["slope"] = scan.slope;
  j["spearman"] = scan.spearman;
  j["used"] = scan.used;
  emit(j.dump(2), opt.output);
  return 0;
}

int run_sweep(const Options& opt, const CLI::App* sub) {
  SweepConfig cfg;
  if (opt.family == "constants")
    cfg.family = SweepFamily::Constants;
  else if (opt.family == "ramps")
    cfg.family = SweepFamily::Ramps;
  else if (opt.family == "delta-powers")
    cfg.family = SweepFamily::DeltaPowers;
  else if (opt.family == "steps")
    cfg.family = SweepFamily::Steps;
  else
    throw config_error("unknown family: " + opt.family);
  if (opt.law == "strong")
    cfg.law = SweepLaw::StrongP;
  else if (opt.law == "weak")
    cfg.law = SweepLaw::WeakLog;
  else
    throw config_error("unknown law: " + opt.law);
  if (sub->count("--p") > 0) cfg.p = opt.p;
  if (sub->count("--q") > 0) cfg.class_p = opt.q;
  if (sub->count("--n") > 0) cfg.n = opt.n;
  if (opt.eps > 0.0) cfg.eps = opt.eps;
  cfg.seed = opt.seed;
  cfg.points = opt.points;
  cfg.iters = opt.iters;
  cfg.probes = opt.probes;
  ExperimentReport rep = sweep_experiment(cfg);
  emit(opt.format == "csv" ? experiment_csv(rep) : experiment_json(rep),
       opt.output);
  return 0;
}

int run_oracle_selftest(const Options& opt) {
  std::mt19937_64 eng(opt.seed);
  auto unit = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  for (std::size_t rep = 0; rep < opt.cases; ++rep) {
    std::size_t size = 8 + eng() % (opt.n > 8 ? opt.n - 7 : 1);
    std::vector<double> v(size, 0.0);
    for (double& x : v)
      if (unit() < 0.8) x = (unit() - 0.5) * 8.0;
    GridFunction f(0.0, 1.0 / 64.0, std::move(v));
    for (Side side : {Side::Plus, Side::Minus}) {
      GridFunction fast = onesided_max(f, side);
      GridFunction slow = onesided_max_oracle(f, side);
      for (std::size_t i = 0; i < size; ++i) {
        if (fast[i] != slow[i]) {
          nlohmann::json j;
          j["case"] = rep;
          j["side"] = side_name(side);
          j["cell"] = i;
          j["fast"] = fast[i];
          j["oracle"] = slow[i];
          j["pass"] = false;
          emit(j.dump(2), opt.output);
          return 1;
        }
      }
    }
  }
  nlohmann::json j;
  j["cases"] = opt.cases;
  j["max_n"] = opt.n;
  j["seed"] = opt.seed;
  j["pass"] = true;
  emit(j.dump(2), opt.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-sided maximal, weight-class, and singular-integral lab"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "output file (stdout if omitted)");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "random seed");
  };

  CLI::App* maximal = app.add_subcommand(
      "maximal", "one-sided maximal function of a grid file");
  maximal->add_option("--input", opt.input, "grid file")->required();
  maximal->add_option("--side", opt.side)->check(CLI::IsMember({"plus", "minus"}));
  maximal->add_option("--r", opt.r, "inner power (default 1)");
  add_common(maximal);

  CLI::App* wconst = app.add_subcommand(
      "weight-const", "measured one-sided class constant of a weight");
  wconst->add_option("--weight", opt.weight, "weight grid file")->required();
  wconst->add_option("--p", opt.p, "class exponent (1 reads the a1 form)");
  wconst->add_option("--side", opt.side)->check(CLI::IsMember({"plus", "minus"}));
  wconst->add_option("--stride", opt.stride, "triple enumeration stride");
  add_common(wconst);

  CLI::App* rhiv = app.add_subcommand(
      "rhi-verify", "weak reverse Hoelder check on the whole grid");
  rhiv->add_option("--weight", opt.weight)->required();
  rhiv->add_option("--p", opt.p, "class exponent feeding the exponent formula");
  add_common(rhiv);

  CLI::App* blocks = app.add_subcommand(
      "blocks-rhi", "block reverse Hoelder over all admissible triples");
  blocks->add_option("--weight", opt.weight)->required();
  blocks->add_option("--p", opt.p);
  blocks->add_option("--stride", opt.stride, "left endpoint stride");
  add_common(blocks);

  CLI::App* smallset = app.add_subcommand(
      "smallset", "small-set decay implication on a seeded sample set");
  smallset->add_option("--weight", opt.weight)->required();
  smallset->add_option("--p", opt.p);
  smallset->add_option("--side", opt.side)
      ->check(CLI::IsMember({"plus", "minus"}));
  smallset->add_option("--eps", opt.eps_target, "target weight fraction");
  add_common(smallset);

  CLI::App* openness = app.add_subcommand(
      "openness", "class exponent self-improvement record");
  openness->add_option("--weight", opt.weight)->required();
  openness->add_option("--p", opt.p)->required();
  add_common(openness);

  CLI::App* czd = app.add_subcommand(
      "czd", "level-set decomposition, optionally weighted report");
  czd->add_option("--input", opt.input, "function grid file")->required();
  czd->add_option("--lambda", opt.lambda, "level")->required();
  czd->add_option("--weight", opt.weight, "weight for the companion report");
  add_common(czd);

  CLI::App* rdf = app.add_subcommand(
      "rdf-verify", "majorant construction and its three properties");
  rdf->add_option("--input", opt.input, "function grid file")->required();
  rdf->add_option("--weight", opt.weight)->required();
  rdf->add_option("--q", opt.q, "exponent of the weighted space");
  rdf->add_option("--kmax", opt.kmax, "series truncation order");
  rdf->add_option("--method", opt.method, "operator norm bound source")
      ->check(CLI::IsMember({"theory", "empirical"}));
  add_common(rdf);

  CLI::App* kcheck = app.add_subcommand(
      "kernel-check", "size, smoothness, and truncated-integral conditions");
  kcheck->add_option("--kernel", opt.kernel)
      ->check(CLI::IsMember({"default-osc", "reciprocal"}));
  add_common(kcheck);

  CLI::App* transform = app.add_subcommand(
      "transform", "truncated one-sided singular integral of a grid file");
  transform->add_option("--input", opt.input)->required();
  transform->add_option("--eps", opt.eps, "truncation radius (default delta/2)");
  transform->add_option("--side", opt.side)
      ->check(CLI::IsMember({"plus", "minus"}));
  transform->add_option("--kernel", opt.kernel)
      ->check(CLI::IsMember({"default-osc", "reciprocal"}));
  add_common(transform);

  CLI::App* goodl = app.add_subcommand(
      "goodlambda", "level-set fraction scan against the gamma grid");
  goodl->add_option("--input", opt.input)->required();
  goodl->add_option("--weight", opt.weight)->required();
  goodl->add_option("--lambda", opt.lambda)->required();
  goodl->add_option("--gammas", opt.gammas, "comma-separated gamma grid");
  goodl->add_option("--eps", opt.eps, "base truncation (default delta/2)");
  goodl->add_option("--kernel", opt.kernel)
      ->check(CLI::IsMember({"default-osc", "reciprocal"}));
  add_common(goodl);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "implied-constant stability sweep over a weight family");
  sweep->add_option("--family", opt.family)
      ->check(CLI::IsMember({"constants", "ramps", "delta-powers", "steps"}));
  sweep->add_option("--law", opt.law)->check(CLI::IsMember({"strong", "weak"}));
  sweep->add_option("--p", opt.p, "norm exponent (default 2)");
  sweep->add_option("--q", opt.q, "class exponent (default 1, the a1 form)");
  sweep->add_option("--n", opt.n, "grid cells");
  sweep->add_option("--eps", opt.eps, "truncation radius");
  sweep->add_option("--points", opt.points, "family points");
  sweep->add_option("--iters", opt.iters, "power iteration rounds");
  sweep->add_option("--probes", opt.probes, "random search probes");
  add_common(sweep);

  CLI::App* oracle = app.add_subcommand(
      "oracle-selftest", "fast maximal versus brute force, bit exact");
  oracle->add_option("--n", opt.n, "maximum grid size");
  oracle->add_option("--cases", opt.cases, "number of random cases");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (maximal->parsed()) return run_maximal(opt);
    if (wconst->parsed()) return run_weight_const(opt);
    if (rhiv->parsed()) return run_rhi_verify(opt);
    if (blocks->parsed()) return run_blocks_rhi(opt);
    if (smallset->parsed()) return run_smallset(opt);
    if (openness->parsed()) return run_openness(opt);
    if (czd->parsed()) return run_czd(opt);
    if (rdf->parsed()) return run_rdf_verify(opt);
    if (kcheck->parsed()) return run_kernel_check(opt);
    if (transform->parsed()) return run_transform(opt);
    if (goodl->parsed()) return run_goodlambda(opt);
    if (sweep->parsed()) return run_sweep(opt, sweep);
    if (oracle->parsed()) return run_oracle_selftest(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
