#include "hubo/mip.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hubo {
namespace mip {

double MipModel::objective_at(const std::vector<std::uint8_t>& x) const {
  const auto full = forced_assignment(x);
  double v = objective_offset;
  for (std::size_t i = 0; i < full.size(); ++i) v += objective[i] * full[i];
  return v;
}

std::vector<double> MipModel::forced_assignment(
    const std::vector<std::uint8_t>& x) const {
  if (static_cast<int>(x.size()) != num_originals)
    throw std::invalid_argument("assignment length mismatch");
  std::vector<double> full(var_names.size(), 0.0);
  for (int i = 0; i < num_originals; ++i) full[i] = x[i];
  for (const auto& [pair, var] : pair_aux)
    full[var] = static_cast<double>(x[pair[0]]) * x[pair[1]];
  for (const auto& [triple, var] : cubic_aux)
    full[var] = static_cast<double>(x[triple[0]]) * x[triple[1]] * x[triple[2]];
  return full;
}

bool MipModel::feasible(const std::vector<double>& assignment, double tol) const {
  for (const auto& c : constraints) {
    double lhs = 0.0;
    for (const auto& [var, coeff] : c.terms) lhs += coeff * assignment[var];
    if (lhs > c.rhs + tol) return false;
  }
  return true;
}

namespace {

std::string pair_name(const std::array<int, 2>& p) {
  return "a" + std::to_string(p[0]) + "_" + std::to_string(p[1]);
}

std::string triple_name(const std::array<int, 3>& t) {
  return "b" + std::to_string(t[0]) + "_" + std::to_string(t[1]) + "_" +
         std::to_string(t[2]);
}

// a <= x, a <= y, a >= x + y - 1 for a product variable a = x*y.
void add_product_constraints(MipModel& model, int a, int x, int y,
                             const std::string& stem) {
  model.constraints.push_back({{{a, 1.0}, {x, -1.0}}, 0.0, stem + "_1"});
  model.constraints.push_back({{{a, 1.0}, {y, -1.0}}, 0.0, stem + "_2"});
  model.constraints.push_back({{{a, -1.0}, {x, 1.0}, {y, 1.0}}, 1.0, stem + "_3"});
}

}  // namespace

MipModel linearize(const BinaryPoly& poly) {
  MipModel model;
  model.num_originals = poly.num_vars;
  model.var_names.reserve(poly.num_vars);
  for (int i = 0; i < poly.num_vars; ++i)
    model.var_names.push_back("x" + std::to_string(i));
  model.objective.assign(poly.num_vars, 0.0);
  model.objective_offset = poly.offset;
  for (const auto& [i, c] : poly.linear) model.objective[i] += c;

  // One auxiliary per distinct pair product: every quadratic term, plus the
  // stage-1 pair (two lowest indices) of every cubic term. Shared when the
  // indices coincide.
  for (const auto& [pair, c] : poly.quadratic) {
    const int var = static_cast<int>(model.var_names.size());
    model.pair_aux.emplace(pair, var);
    model.var_names.push_back(pair_name(pair));
    model.objective.push_back(c);
  }
  for (const auto& [triple, c] : poly.cubic) {
    (void)c;
    const std::array<int, 2> stage1{triple[0], triple[1]};
    if (!model.pair_aux.count(stage1)) {
      const int var = static_cast<int>(model.var_names.size());
      model.pair_aux.emplace(stage1, var);
      model.var_names.push_back(pair_name(stage1));
      model.objective.push_back(0.0);
    }
  }
  for (const auto& [triple, c] : poly.cubic) {
    const int var = static_cast<int>(model.var_names.size());
    model.cubic_aux.emplace(triple, var);
    model.var_names.push_back(triple_name(triple));
    model.objective.push_back(c);
  }

  for (const auto& [pair, var] : model.pair_aux)
    add_product_constraints(model, var, pair[0], pair[1],
                            "c_" + pair_name(pair));
  for (const auto& [triple, var] : model.cubic_aux) {
    const int stage1 = model.pair_aux.at({triple[0], triple[1]});
    add_product_constraints(model, var, stage1, triple[2],
                            "c_" + triple_name(triple));
  }
  return model;
}

MipModel linearize(const HuboInstance& inst) { return linearize(to_binary(inst)); }

PredictedSize predicted_size(long long num_vars, long long num_quadratic,
                             long long num_cubic) {
  return {num_vars + num_quadratic + 2 * num_cubic,
          3 * num_quadratic + 6 * num_cubic};
}

namespace {

void append_coefficient(std::ostringstream& out, double c, const std::string& name,
                        bool& leading) {
  if (c == 0.0) return;
  if (leading) {
    if (c < 0.0) out << "- ";
    leading = false;
  } else {
    out << (c < 0.0 ? " - " : " + ");
  }
  const double mag = std::abs(c);
  out.precision(17);
  if (mag != 1.0) out << mag << " ";
  out << name;
}

}  // namespace

std::string to_lp_string(const MipModel& model) {
  std::ostringstream out;
  out.precision(17);
  out << "\\ HUBO linearization\n";
  out << "Minimize\n obj: ";
  bool leading = true;
  for (std::size_t i = 0; i < model.var_names.size(); ++i)
    append_coefficient(out, model.objective[i], model.var_names[i], leading);
  if (model.objective_offset != 0.0 || leading) {
    const double c = model.objective_offset;
    if (leading) out << c;
    else out << (c < 0.0 ? " - " : " + ") << std::abs(c);
  }
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << " " << c.name << ": ";
    bool lead = true;
    for (const auto& [var, coeff] : c.terms)
      append_coefficient(out, coeff, model.var_names[var], lead);
    out << " <= " << c.rhs << "\n";
  }
  out << "Binary\n";
  for (const auto& name : model.var_names) out << " " << name;
  out << "\nEnd\n";
  return out.str();
}

void export_lp(const MipModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_lp_string(model);
}

std::string to_warm_start_string(const MipModel& model, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != model.num_originals)
    throw std::invalid_argument("spin configuration length mismatch");
  const auto full = model.forced_assignment(s.bits());
  std::ostringstream out;
  for (std::size_t i = 0; i < model.var_names.size(); ++i)
    out << model.var_names[i] << " " << static_cast<int>(std::lround(full[i]))
        << "\n";
  return out.str();
}

void export_warm_start(const MipModel& model, const SpinConfig& s,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_warm_start_string(model, s);
}

IncumbentTrace IncumbentTrace::parse(const std::string& text) {
  IncumbentTrace trace;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // trim
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string body = line.substr(begin, end - begin + 1);
    if (body.empty() || body[0] == '#') continue;
    if (body == "optimal") {
      trace.proven_optimal = true;
      continue;
    }
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": expected 'seconds,objective'");
    try {
      std::size_t used = 0;
      const double t = std::stod(body.substr(0, comma), &used);
      const double e = std::stod(body.substr(comma + 1));
      (void)used;
      if (!trace.points.empty()) {
        if (t <= trace.points.back().first)
          throw std::runtime_error("times not strictly increasing");
        if (e > trace.points.back().second)
          throw std::runtime_error("objective increased");
      }
      trace.points.push_back({t, e});
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": malformed number");
    } catch (const std::runtime_error& err) {
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": " +
                               err.what());
    }
  }
  return trace;
}

IncumbentTrace IncumbentTrace::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::optional<double> time_to_reach(const IncumbentTrace& trace, double e_ref) {
  for (const auto& [t, e] : trace.points)
    if (e <= e_ref + 1e-9) return t;
  return std::nullopt;
}

}  // namespace mip
}  // namespace hubo
