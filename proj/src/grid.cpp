#include "osw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace osw {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

GridFunction::GridFunction(double origin, double delta, std::vector<double> values)
    : origin_(origin), delta_(delta), values_(std::move(values)) {
  if (!std::isfinite(origin_)) throw std::domain_error("grid origin must be finite");
  if (!(delta_ > 0.0) || !std::isfinite(delta_))
    throw std::domain_error("grid spacing must be positive and finite");
  if (values_.empty()) throw std::domain_error("grid needs at least one cell");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("grid values must be finite");
}

bool GridFunction::aligned_with(const GridFunction& other) const {
  return origin_ == other.origin_ && delta_ == other.delta_ &&
         values_.size() == other.values_.size();
}

Weight::Weight(GridFunction g) : GridFunction(std::move(g)) {
  for (double v : values())
    if (!(v > 0.0)) throw std::domain_error("weight values must be strictly positive");
}

Weight::Weight(double origin, double delta, std::vector<double> values)
    : Weight(GridFunction(origin, delta, std::move(values))) {}

void require_aligned(const GridFunction& a, const GridFunction& b, const char* who) {
  if (!a.aligned_with(b))
    throw alignment_error(std::string(who) + ": grids disagree in origin, delta, or size");
}

double integral(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.delta();
}

double value_sum(const GridFunction& f, CellInterval cells) {
  if (cells.last > f.size()) throw std::out_of_range("value_sum: cells exceed the grid");
  double s = 0.0;
  for (std::size_t i = cells.first; i < cells.last; ++i) s += f[i];
  return s;
}

double weighted_measure(const Weight& w, CellInterval cells) {
  if (cells.last > w.size())
    throw std::out_of_range("weighted_measure: cells exceed the grid");
  return value_sum(w, cells) * w.delta();
}

double lp_norm(const GridFunction& f, double p, const Weight& w) {
  require_aligned(f, w, "lp_norm");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::domain_error("lp_norm: need p >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    s += std::pow(std::fabs(f[i]), p) * w[i];
  return std::pow(s * f.delta(), 1.0 / p);
}

double weak_lp_norm(const GridFunction& f, double p, const Weight& w) {
  require_aligned(f, w, "weak_lp_norm");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::domain_error("weak_lp_norm: need p >= 1");
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double fa = std::fabs(f[a]), fb = std::fabs(f[b]);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  double best = 0.0;
  double measure = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    measure += w[order[k]] * w.delta();
    double level = std::fabs(f[order[k]]);
    if (level == 0.0) break;
    // candidate only at the last cell of a tied level: w(|f| >= level) needs
    // the whole tie block accumulated
    if (k + 1 < order.size() && std::fabs(f[order[k + 1]]) == level) continue;
    best = std::max(best, level * std::pow(measure, 1.0 / p));
  }
  return best;
}

GridFunction pad_zero(const GridFunction& f, std::size_t left_cells,
                      std::size_t right_cells) {
  std::vector<double> out(left_cells + f.size() + right_cells, 0.0);
  std::copy(f.values().begin(), f.values().end(), out.begin() + left_cells);
  double origin = f.origin() - f.delta() * static_cast<double>(left_cells);
  return GridFunction(origin, f.delta(), std::move(out));
}

void write_json(const GridFunction& f, std::ostream& out) {
  nlohmann::json j;
  j["origin"] = f.origin();
  j["delta"] = f.delta();
  j["values"] = f.values();
  out << j.dump(2) << '\n';
}

GridFunction read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("grid json parse failed: ") + e.what());
  }
  if (!j.contains("origin") || !j.contains("delta") || !j.contains("values"))
    throw std::runtime_error("grid json needs origin, delta, and values");
  return GridFunction(j.at("origin").get<double>(), j.at("delta").get<double>(),
                      j.at("values").get<std::vector<double>>());
}

void write_csv(const GridFunction& f, std::ostream& out) {
  out << "# origin=" << fmt_double(f.origin()) << '\n';
  out << "# delta=" << fmt_double(f.delta()) << '\n';
  out << "cell_index,value\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << i << ',' << fmt_double(f[i]) << '\n';
}

GridFunction read_csv(std::istream& in) {
  double origin = 0.0, delta = 0.0;
  bool have_origin = false, have_delta = false;
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      double v = std::strtod(line.c_str() + eq + 1, nullptr);
      if (key == "origin") origin = v, have_origin = true;
      if (key == "delta") delta = v, have_delta = true;
      continue;
    }
    if (line.rfind("cell_index", 0) == 0) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("grid csv row needs cell_index,value");
    values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  if (!have_origin || !have_delta)
    throw std::runtime_error("grid csv needs '# origin=' and '# delta=' headers");
  return GridFunction(origin, delta, std::move(values));
}

GridFunction load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return read_csv(in);
  return read_json(in);
}

void save_grid_file(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    write_csv(f, out);
  else
    write_json(f, out);
}

}  // namespace osw
