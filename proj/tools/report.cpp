#include "report.hpp"

#include <sstream>
#include <type_traits>

namespace jacobi::cli {

std::string sign_text(Sign s) { return std::string(1, sign_char(s)); }

Json assignment_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [v, q] : a) j[v.name()] = to_string(q);
  return j;
}

Json coordinate_json(const Coordinate& c) {
  Json j;
  if (const auto* q = std::get_if<Rational>(&c)) {
    j["exact"] = to_string(*q);
  } else {
    const auto& a = std::get<AlgebraicNumber>(c);
    j["exact"] = a.to_string();
  }
  j["approx"] = coordinate_approx(c);
  return j;
}

Json system_json(const OdeSystem& sys, const std::string& path) {
  Json j;
  j["path"] = path;
  j["dimension"] = sys.dimension();
  j["state"] = sys.state_names();
  j["params"] = sys.param_names();
  return j;
}

namespace {

Json fixed_point_json(const ClassifiedFixedPoint& p) {
  Json j;
  j["classification"] = to_string(p.classification);
  Json coords = Json::object();
  for (const auto& [v, c] : p.box.coords()) coords[v.name()] = coordinate_json(c);
  j["coordinates"] = coords;
  j["multiplicity"] = p.box.multiplicity();
  if (p.a_n_sign) j["a_n_sign"] = sign_text(*p.a_n_sign);
  if (!p.delta_signs.empty()) {
    Json d = Json::array();
    for (auto s : p.delta_signs) d.push_back(sign_text(s));
    j["delta_signs"] = d;
  }
  return j;
}

template <class T>
Json coeffs_json(const CharPoly<T>& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs) {
    if constexpr (std::is_same_v<T, Rational>)
      j.push_back(to_string(c));
    else
      j.push_back(c.to_string());
  }
  return j;
}

}  // namespace

Json stability_json(const StabilityReport& r) {
  Json j;
  j["parameter_point"] = assignment_json(r.parameter_point);
  j["stable_count"] = r.stable_count;
  j["parity_shortcut_used"] = r.parity_shortcut_used;
  Json fps = Json::array();
  for (const auto& p : r.fixed_points) fps.push_back(fixed_point_json(p));
  j["fixed_points"] = fps;
  return j;
}

std::string stability_text(const StabilityReport& r) {
  std::ostringstream os;
  os << "stable fixed points: " << r.stable_count << " of " << r.fixed_points.size() << "\n";
  if (r.parity_shortcut_used) os << "odd dimension: every fixed point is Jacobi unstable\n";
  for (const auto& p : r.fixed_points) {
    os << "  " << p.box.to_string() << "  " << to_string(p.classification);
    if (p.a_n_sign) {
      os << "  a_n " << sign_char(*p.a_n_sign) << " Delta ";
      for (auto s : p.delta_signs) os << sign_char(s);
    }
    os << "\n";
  }
  return os.str();
}

Json analysis_json(const OdeSystem& sys, const StabilityReport& r) {
  const OdeSystem s = sys.specialize(r.parameter_point);
  const SymbolicMatrix j = jacobian(s);
  const SymbolicMatrix j2 = matrix_square(j);
  Json out = stability_json(r);
  out["jacobian_charpoly"] = coeffs_json(char_poly(j));
  out["square_charpoly"] = coeffs_json(char_poly(j2));
  for (std::size_t k = 0; k < r.fixed_points.size(); ++k) {
    const auto point = r.fixed_points[k].box.rational_point();
    if (!point) continue;
    auto at = [&](const SymbolicMatrix& m) {
      Matrix<Rational> v(m.rows(), m.cols());
      for (std::size_t a = 0; a < m.rows(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b) v(a, b) = m(a, b).evaluate(*point);
      return v;
    };
    Json& fp = out["fixed_points"][k];
    const auto pj = char_poly(at(j));
    const auto pj2 = char_poly(at(j2));
    fp["a"] = coeffs_json(pj);
    fp["a_bar"] = coeffs_json(pj2);
    Json deltas = Json::array();
    for (const auto& d : hurwitz_sequence(pj2).delta) deltas.push_back(to_string(d));
    fp["delta"] = deltas;
  }
  return out;
}

Json scan_json(const ScanResult& s) {
  Json j;
  j["axes"] = s.axes;
  j["conditions"] = s.condition_names;
  Json grid = Json::array();
  for (const auto& p : s.grid) {
    Json g;
    g["parameters"] = assignment_json(p.mu);
    if (p.stable_count) g["stable_count"] = *p.stable_count;
    g["status"] = !p.error.empty() ? p.error : (p.boundary ? "boundary" : "ok");
    if (!p.message.empty()) g["message"] = p.message;
    Json signs = Json::object();
    for (std::size_t k = 0; k < p.condition_signs.size(); ++k) signs[s.condition_names[k]] = sign_text(p.condition_signs[k]);
    g["condition_signs"] = signs;
    grid.push_back(g);
  }
  j["grid"] = grid;
  return j;
}

std::string scan_csv(const ScanResult& s) {
  std::ostringstream os;
  for (const auto& a : s.axes) os << a << ",";
  os << "stable_count,status";
  for (const auto& c : s.condition_names) os << "," << c;
  os << "\n";
  for (const auto& p : s.grid) {
    for (const auto& a : s.axes) os << to_string(p.mu.at(Variable::named(a))) << ",";
    os << (p.stable_count ? std::to_string(*p.stable_count) : "") << ","
       << (!p.error.empty() ? p.error : (p.boundary ? "boundary" : "ok"));
    for (auto sg : p.condition_signs) os << "," << sign_char(sg);
    os << "\n";
  }
  return os.str();
}

Json qe_json(const QeProblem& qe) {
  Json j;
  j["always_unstable"] = qe.always_unstable;
  j["free_vars"] = qe.free_vars;
  j["quantified_vars"] = qe.quantified_vars;
  auto polys = [](const std::vector<Poly>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
  };
  j["equations"] = polys(qe.equations);
  j["inequations"] = polys(qe.inequations);
  j["inequalities"] = polys(qe.inequalities);
  Json as = Json::array();
  for (const auto& a : qe.assumptions) as.push_back(a.to_string());
  j["assumptions"] = as;
  j["smtlib"] = to_smtlib(qe);
  j["readable"] = to_readable(qe);
  return j;
}

Json trace_json(const DeviationTrace& t, bool with_samples) {
  Json j;
  j["verdict"] = to_string(t.verdict);
  j["initial_velocity_norm"] = t.initial_velocity_norm;
  j["window_ratio_min"] = t.window_min;
  j["window_ratio_max"] = t.window_max;
  j["sample_count"] = t.samples.size();
  if (with_samples) {
    Json s = Json::array();
    for (const auto& x : t.samples) s.push_back({{"t", x.t}, {"norm", x.norm}, {"ratio", x.ratio}});
    j["samples"] = s;
  }
  return j;
}

}  // namespace jacobi::cli
