#include "jacobi/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <set>
#include <thread>

#include "jacobi/errors.hpp"
#include "jacobi/parser.hpp"

namespace jacobi {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::JacobiStable: return "JacobiStable";
    case Classification::JacobiUnstable: return "JacobiUnstable";
    case Classification::Boundary: return "Boundary";
    case Classification::SideConditionViolated: return "SideConditionViolated";
  }
  return "?";
}

bool StabilityReport::has_boundary() const {
  return std::any_of(fixed_points.begin(), fixed_points.end(),
                     [](const ClassifiedFixedPoint& p) { return p.classification == Classification::Boundary; });
}

namespace {

bool relation_holds(Assumption::Relation r, Sign s) {
  switch (r) {
    case Assumption::Relation::Greater: return s == Sign::Positive;
    case Assumption::Relation::GreaterEqual: return s != Sign::Negative;
    case Assumption::Relation::Less: return s == Sign::Negative;
    case Assumption::Relation::LessEqual: return s != Sign::Positive;
    case Assumption::Relation::NotEqual: return s != Sign::Zero;
  }
  return false;
}

// Sign of N/D at the box; nullopt if D vanishes there.
std::optional<Sign> sign_at_box(const RationalFunction& f, const RealSolutionBox& box) {
  const Sign d = f.denom().is_constant() ? sign_of(f.denom().constant_term()) : box.sign_of(f.denom());
  if (d == Sign::Zero) return std::nullopt;
  return box.sign_of(f.numer()) * d;
}

void require_bound(const OdeSystem& sys, const Assignment& mu) {
  for (std::size_t k = 0; k < sys.param_vars().size(); ++k)
    if (!mu.count(sys.param_vars()[k]))
      throw Error(ErrorKind::UnboundVariable, "parameter '" + sys.param_names()[k] + "' has no value");
}

StabilityReport classify(const OdeSystem& sys, const Assignment& mu, bool stop_at_stable) {
  require_bound(sys, mu);
  sys.check_parameter_assumptions(mu);
  const OdeSystem s = sys.specialize(mu);
  const FixedPointSystem fp = fixed_point_system(s);

  StabilityReport report;
  for (auto v : sys.param_vars()) report.parameter_point[v] = mu.at(v);
  report.parity_shortcut_used = s.dimension() % 2 == 1;

  std::optional<HurwitzSequence<RationalFunction>> hurwitz;
  if (!report.parity_shortcut_used) hurwitz = hurwitz_sequence(char_poly(matrix_square(jacobian(s))));

  std::vector<Assumption> state_assumptions;
  for (const auto& a : s.assumptions())
    if (s.is_state(a.name)) state_assumptions.push_back(a);

  for (const auto& chain : triangularize(fp.equations, s.state_vars())) {
    for (auto& box : real_solve(chain, fp.side_conditions, {})) {
      ClassifiedFixedPoint point{std::move(box), Classification::JacobiUnstable, std::nullopt, {}};
      const bool admissible = std::all_of(state_assumptions.begin(), state_assumptions.end(), [&](const Assumption& a) {
        return relation_holds(a.relation, point.box.sign_of(a.lhs()));
      });
      if (!admissible) {
        point.classification = Classification::SideConditionViolated;
      } else if (!hurwitz) {
        point.classification = Classification::JacobiUnstable;
      } else {
        bool defined = true;
        auto an = sign_at_box(hurwitz->a_n, point.box);
        defined = defined && an.has_value();
        for (const auto& d : hurwitz->delta) {
          auto sd = sign_at_box(d, point.box);
          defined = defined && sd.has_value();
          point.delta_signs.push_back(sd.value_or(Sign::Zero));
        }
        point.a_n_sign = an.value_or(Sign::Zero);
        if (!defined) {
          point.classification = Classification::SideConditionViolated;
        } else {
          switch (verdict_from_signs(*an, point.delta_signs)) {
            case Verdict::Stable: point.classification = Classification::JacobiStable; break;
            case Verdict::Unstable: point.classification = Classification::JacobiUnstable; break;
            case Verdict::Boundary: point.classification = Classification::Boundary; break;
          }
        }
      }
      const bool stable = point.classification == Classification::JacobiStable;
      report.fixed_points.push_back(std::move(point));
      if (stable) {
        ++report.stable_count;
        if (stop_at_stable) return report;
      }
    }
  }
  return report;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> identifiers_in(std::string_view s) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < s.size();) {
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      seen.emplace(s.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

StabilityReport jacobi_count(const OdeSystem& sys, const Assignment& mu) { return classify(sys, mu, false); }

bool jacobi_exists(const OdeSystem& sys, const Assignment& mu) { return classify(sys, mu, true).stable_count > 0; }

std::vector<NamedCondition> parse_conditions(std::string_view text) {
  std::vector<NamedCondition> out;
  std::set<std::string> names;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = expression'", 0, line_no);
    const std::string name = trim(std::string_view(body).substr(0, eq));
    if (!is_identifier(name)) throw ParseError("invalid condition name '" + name + "'", 0, line_no);
    if (!names.insert(name).second) throw ParseError("duplicate condition '" + name + "'", 0, line_no);
    const std::string expr = body.substr(eq + 1);
    try {
      out.push_back({name, parse_polynomial(expr, identifiers_in(expr))});
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " in condition '" + name + "'", e.position(), line_no);
    } catch (const Error& e) {
      throw ParseError(std::string(e.what()) + " in condition '" + name + "'", 0, line_no);
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<NamedCondition> load_conditions(const std::filesystem::path& path) {
  return parse_conditions(read_text_file(path));
}

std::vector<std::pair<std::string, Sign>> check_conditions(const std::vector<NamedCondition>& conditions,
                                                          const Assignment& point) {
  std::vector<std::pair<std::string, Sign>> out;
  for (const auto& c : conditions) {
    for (auto v : c.poly.variables())
      if (!point.count(v))
        throw Error(ErrorKind::UnboundVariable, "condition '" + c.name + "' needs a value for '" + v.name() + "'");
    out.emplace_back(c.name, sign_of(c.poly.evaluate(point)));
  }
  return out;
}

ScanResult scan_parameters(const OdeSystem& sys, const std::vector<ScanAxis>& axes, const Assignment& fixed,
                           const std::vector<NamedCondition>& conditions, unsigned workers) {
  ScanResult result;
  std::vector<std::vector<Rational>> values;
  for (const auto& ax : axes) {
    if (!sys.is_param(ax.name)) throw Error(ErrorKind::UnknownVariable, "'" + ax.name + "' is not a parameter");
    if (std::find(result.axes.begin(), result.axes.end(), ax.name) != result.axes.end())
      throw Error(ErrorKind::InvalidArgument, "parameter '" + ax.name + "' scanned twice");
    if (ax.steps == 0) throw Error(ErrorKind::InvalidArgument, "zero steps for '" + ax.name + "'");
    if (ax.lo > ax.hi) throw Error(ErrorKind::InvalidArgument, "empty range for '" + ax.name + "'");
    result.axes.push_back(ax.name);
    std::vector<Rational> vs;
    if (ax.lo == ax.hi) {
      vs.push_back(ax.lo);
    } else {
      for (unsigned k = 0; k <= ax.steps; ++k) vs.push_back(ax.lo + (ax.hi - ax.lo) * Rational(k) / Rational(ax.steps));
    }
    values.push_back(std::move(vs));
  }
  Assignment base;
  for (auto v : sys.param_vars())
    if (auto it = fixed.find(v); it != fixed.end()) base.insert(*it);
  for (const auto& ax : axes) base.erase(Variable::named(ax.name));
  for (std::size_t k = 0; k < sys.param_vars().size(); ++k) {
    const bool scanned = std::find(result.axes.begin(), result.axes.end(), sys.param_names()[k]) != result.axes.end();
    if (!scanned && !base.count(sys.param_vars()[k]))
      throw Error(ErrorKind::UnboundVariable, "parameter '" + sys.param_names()[k] + "' is neither scanned nor set");
  }
  for (const auto& c : conditions) {
    result.condition_names.push_back(c.name);
    for (auto v : c.poly.variables())
      if (!sys.is_param(v.name()))
        throw Error(ErrorKind::UnboundVariable, "condition '" + c.name + "' uses '" + v.name() + "', not a parameter");
  }

  std::size_t total = 1;
  for (const auto& vs : values) total *= vs.size();
  result.grid.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Assignment mu = base;
    std::size_t rem = idx;
    for (std::size_t a = axes.size(); a-- > 0;) {
      mu[Variable::named(axes[a].name)] = values[a][rem % values[a].size()];
      rem /= values[a].size();
    }
    result.grid[idx].mu = std::move(mu);
  }

  auto run = [&](ScanPoint& p) {
    for (const auto& [name, s] : check_conditions(conditions, p.mu)) p.condition_signs.push_back(s);
    try {
      const auto report = jacobi_count(sys, p.mu);
      p.stable_count = report.stable_count;
      p.boundary = report.has_boundary();
    } catch (const Error& e) {
      p.error = to_string(e.kind());
      p.message = e.what();
    } catch (const std::exception& e) {
      p.error = "Internal";
      p.message = e.what();
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    for (auto& p : result.grid) run(p);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) run(result.grid[i]);
    });
  for (auto& t : pool) t.join();
  return result;
}

}  // namespace jacobi
