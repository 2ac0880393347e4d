#include "jacobi/deviation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "jacobi/errors.hpp"
#include "jacobi/kcc.hpp"

namespace jacobi {

const char* to_string(Focusing f) {
  switch (f) {
    case Focusing::Bunching: return "Bunching";
    case Focusing::Dispersing: return "Dispersing";
    case Focusing::Indeterminate: return "Indeterminate";
  }
  return "?";
}

namespace {

// Polynomial in a fixed variable list, evaluated in double precision.
class CompiledPoly {
 public:
  CompiledPoly(const Poly& p, const std::vector<Variable>& vars) {
    for (const auto& t : p.terms()) {
      Mono m{t.coeff.get_d(), {}};
      for (const auto& [id, e] : t.mono.entries()) {
        std::size_t k = 0;
        while (k < vars.size() && vars[k].id() != id) ++k;
        if (k == vars.size())
          throw Error(ErrorKind::UnboundVariable, "'" + Variable::from_id(id).name() + "' has no value");
        m.powers.emplace_back(k, e);
      }
      terms_.push_back(std::move(m));
    }
  }

  double operator()(const std::vector<double>& v) const {
    double s = 0;
    for (const auto& m : terms_) {
      double x = m.coeff;
      for (const auto& [k, e] : m.powers)
        for (unsigned i = 0; i < e; ++i) x *= v[k];
      s += x;
    }
    return s;
  }

 private:
  struct Mono {
    double coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  std::vector<Mono> terms_;
};

class CompiledFunction {
 public:
  CompiledFunction(const RationalFunction& f, const std::vector<Variable>& vars)
      : numer_(f.numer(), vars), denom_(f.denom(), vars) {}

  double denominator(const std::vector<double>& v) const { return denom_(v); }

  double operator()(const std::vector<double>& v) const {
    const double d = denom_(v);
    if (!(std::abs(d) > 1e-300)) throw Error(ErrorKind::Numerical, "denominator vanishes along the trajectory");
    return numer_(v) / d;
  }

 private:
  CompiledPoly numer_, denom_;
};

struct DeviationField {
  std::size_t n;
  std::vector<CompiledFunction> f;        // over x
  std::vector<CompiledFunction> two_n;    // 2 N^i_j over (x, y), row-major
  std::vector<CompiledFunction> two_dg;   // 2 dG^i/dx_j over (x, y)

  // Signs of the rhs denominators; a change means a pole was crossed.
  std::vector<int> pole_signs(const std::vector<double>& s) const {
    std::vector<double> x(s.begin(), s.begin() + static_cast<long>(n));
    x.resize(2 * n);
    std::vector<int> out;
    for (const auto& fi : f) {
      const double d = fi.denominator(x);
      out.push_back(d > 0 ? 1 : (d < 0 ? -1 : 0));
    }
    return out;
  }

  // s = (x, xi, v); returns ds/dt.
  std::vector<double> operator()(const std::vector<double>& s) const {
    std::vector<double> xy(2 * n);
    for (std::size_t i = 0; i < n; ++i) xy[i] = s[i];
    for (std::size_t i = 0; i < n; ++i) xy[n + i] = f[i](xy);
    std::vector<double> d(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = xy[n + i];
      d[n + i] = s[2 * n + i];
      double acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        acc += two_n[i * n + j](xy) * s[2 * n + j] + two_dg[i * n + j](xy) * s[n + j];
      d[2 * n + i] = -acc;
    }
    return d;
  }
};

DeviationField build_field(const OdeSystem& sys) {
  const auto vel = VelocityVars::for_system(sys);
  const auto spray = spray_coefficients(sys, vel);
  const auto conn = nonlinear_connection(spray, vel);
  std::vector<Variable> vars = sys.state_vars();
  vars.insert(vars.end(), vel.vars.begin(), vel.vars.end());
  const std::size_t n = sys.dimension();
  DeviationField field{n, {}, {}, {}};
  for (const auto& fi : sys.rhs()) field.f.emplace_back(fi, vars);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      field.two_n.emplace_back(conn(i, j) * RationalFunction(2), vars);
      field.two_dg.emplace_back(spray[i].derivative(sys.state_vars()[j]) * RationalFunction(2), vars);
    }
  return field;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

DeviationTrace simulate_deviation(const DeviationSetup& setup) {
  setup.system.check_parameter_assumptions(setup.mu);
  const OdeSystem sys = setup.system.specialize(setup.mu);
  const std::size_t n = sys.dimension();
  if (!sys.param_names().empty())
    throw Error(ErrorKind::UnboundVariable, "parameter '" + sys.param_names()[0] + "' has no value");
  if (setup.x0.size() != n || setup.w0.size() != n)
    throw Error(ErrorKind::InvalidArgument, "x0 and w0 need " + std::to_string(n) + " components");
  if (!(setup.t_max > 0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (!(setup.dt > 0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (setup.dt > setup.t_max / 100 * (1 + 1e-12)) throw Error(ErrorKind::InvalidArgument, "dt must be at most t_max / 100");
  if (!(setup.margin >= 0 && setup.margin < 1)) throw Error(ErrorKind::InvalidArgument, "margin must lie in [0, 1)");
  const double ww = dot(setup.w0.data(), setup.w0.data(), n);
  if (!(ww > 0)) throw Error(ErrorKind::InvalidArgument, "w0 must be nonzero");

  const DeviationField field = build_field(sys);
  const auto steps = static_cast<std::size_t>(std::ceil(setup.t_max / setup.dt - 1e-9));
  const double h = setup.t_max / static_cast<double>(steps);

  std::vector<double> s(3 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = setup.x0[i];
    s[2 * n + i] = setup.w0[i];
  }

  const std::vector<int> poles = field.pole_signs(s);
  DeviationTrace trace;
  trace.initial_velocity_norm = std::sqrt(dot(&s[2 * n], &s[2 * n], n) / ww);
  trace.samples.reserve(steps);
  auto axpy = [](const std::vector<double>& a, double k, const std::vector<double>& b) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + k * b[i];
    return r;
  };
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto k1 = field(s);
    const auto k2 = field(axpy(s, h / 2, k1));
    const auto k3 = field(axpy(s, h / 2, k2));
    const auto k4 = field(axpy(s, h, k3));
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (!std::isfinite(s[i])) throw Error(ErrorKind::Numerical, "trajectory left the domain of the system");
    }
    if (field.pole_signs(s) != poles)
      throw Error(ErrorKind::Numerical, "trajectory crossed a pole of the system near t = " + std::to_string(h * static_cast<double>(k)));
    DeviationSample sample;
    sample.t = h * static_cast<double>(k);
    sample.norm = std::sqrt(dot(&s[n], &s[n], n) / ww);
    sample.ratio = sample.norm / (sample.t * sample.t);
    sample.xi.assign(s.begin() + static_cast<long>(n), s.begin() + static_cast<long>(2 * n));
    trace.samples.push_back(std::move(sample));
  }

  bool first = true;
  for (const auto& smp : trace.samples) {
    if (smp.t < setup.t_max / 2 - 1e-12) continue;
    trace.window_min = first ? smp.ratio : std::min(trace.window_min, smp.ratio);
    trace.window_max = first ? smp.ratio : std::max(trace.window_max, smp.ratio);
    first = false;
  }
  if (trace.window_max < 1 - setup.margin)
    trace.verdict = Focusing::Bunching;
  else if (trace.window_min > 1 + setup.margin)
    trace.verdict = Focusing::Dispersing;
  return trace;
}

std::string render_trace(const DeviationTrace& trace) {
  std::ostringstream os;
  os << "t,norm,ratio\n";
  char buf[96];
  for (const auto& s : trace.samples) {
    std::snprintf(buf, sizeof buf, "%.10g,%.17g,%.17g\n", s.t, s.norm, s.ratio);
    os << buf;
  }
  return os.str();
}

}  // namespace jacobi
