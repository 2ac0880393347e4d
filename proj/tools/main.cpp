#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

#include "jacobi/analysis.hpp"
#include "jacobi/deviation.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/kcc.hpp"
#include "jacobi/parser.hpp"
#include "report.hpp"

using namespace jacobi;
using cli::Json;

namespace {

struct Options {
  std::string system_path;
  std::vector<std::string> sets;
  std::vector<std::string> boxes;
  std::vector<std::string> steps;
  std::vector<std::string> conditions;
  std::vector<std::string> chain;
  std::string format;
  unsigned workers = 0;
  bool readable = false;
  bool samples = false;
  std::string x0, w0;
  double t_max = 0.5, dt = 1e-4, margin = 0.05;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::UndeclaredIdentifier:
    case ErrorKind::ZeroDenominator: return 2;
    case ErrorKind::AssumptionViolated: return 3;
    case ErrorKind::NonIsolatedFixedPoints:
    case ErrorKind::DegenerateChain: return 4;
    case ErrorKind::UnsupportedDimension: return 5;
    default: return 1;
  }
}

std::pair<std::string, std::string> split_binding(const std::string& s, char sep) {
  const auto at = s.find(sep);
  if (at == std::string::npos || at == 0) throw Error(ErrorKind::InvalidArgument, "expected name" + std::string(1, sep) + "value, got '" + s + "'");
  return {s.substr(0, at), s.substr(at + 1)};
}

std::vector<std::pair<std::string, Rational>> parse_sets(const std::vector<std::string>& sets) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& s : sets) {
    auto [name, value] = split_binding(s, '=');
    out.emplace_back(name, parse_rational(value));
  }
  return out;
}

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = std::min(s.find(',', start), s.size());
    out.push_back(parse_rational(s.substr(start, comma - start)).get_d());
    start = comma + 1;
  }
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("JACOBI_WORKERS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "JACOBI_WORKERS must be a nonnegative integer");
    }
  }
  return 1;
}

class Runner {
 public:
  Runner(std::string command, Options opt) : command_(std::move(command)), opt_(std::move(opt)) {}

  int run() {
    const auto t0 = std::chrono::steady_clock::now();
    Json result;
    std::string text;
    if (command_ == "check-conditions") {
      result = check(text);
    } else {
      sys_ = load_system_file(opt_.system_path);
      const auto sets = parse_sets(opt_.sets);
      const bool full = command_ == "count" || command_ == "analyze" || command_ == "exists" || command_ == "simulate";
      if (full) {
        mu_ = sys_->bind_parameters(sets);
      } else {
        for (const auto& [name, v] : sets) {
          const auto& ps = sys_->param_names();
          if (std::find(ps.begin(), ps.end(), name) == ps.end())
            throw Error(ErrorKind::UnknownVariable, "'" + name + "' is not a parameter of the system");
          mu_[Variable::named(name)] = v;
        }
      }
      if (command_ == "count" || command_ == "analyze") {
        const auto r = jacobi_count(*sys_, mu_);
        if (r.has_boundary()) warnings_.push_back("a fixed point lies on the Hurwitz boundary; it is not counted as stable");
        result = command_ == "count" ? cli::stability_json(r) : cli::analysis_json(*sys_, r);
        text = cli::stability_text(r);
      } else if (command_ == "exists") {
        const bool e = jacobi_exists(*sys_, mu_);
        result = {{"parameter_point", cli::assignment_json(mu_)}, {"exists", e}};
        text = std::string(e ? "true" : "false") + "\n";
      } else if (command_ == "emit-qe") {
        const auto qe = emit_qe_problem(*sys_);
        result = cli::qe_json(qe);
        text = opt_.readable ? to_readable(qe) : to_smtlib(qe);
      } else if (command_ == "emit-sas") {
        text = emit_semialgebraic(*sys_);
        result = {{"semialgebraic", text}};
      } else if (command_ == "scan") {
        const auto s = scan();
        result = cli::scan_json(s);
        text = cli::scan_csv(s);
      } else if (command_ == "verify-kcc") {
        result = verify(text);
      } else if (command_ == "simulate") {
        const auto tr = simulate();
        result = cli::trace_json(tr, opt_.samples);
        text = render_trace(tr);
      }
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const std::string format = opt_.format.empty() ? default_format() : opt_.format;
    if (format == "json") {
      Json report;
      report["command"] = command_;
      if (sys_) report["system"] = cli::system_json(*sys_, opt_.system_path);
      report["result"] = result;
      report["diagnostics"] = {{"warnings", warnings_}, {"elapsed_ms", ms}};
      std::cout << report.dump(2) << "\n";
    } else {
      if (format == "csv" && command_ != "scan" && command_ != "simulate")
        throw Error(ErrorKind::InvalidArgument, "csv output is only available for scan and simulate");
      if (text.empty()) text = result.dump(2) + "\n";
      std::cout << text;
      for (const auto& w : warnings_) std::cerr << "warning: " << w << "\n";
    }
    return 0;
  }

 private:
  std::string default_format() const {
    if (command_ == "scan" || command_ == "simulate") return "csv";
    if (command_ == "emit-qe" || command_ == "emit-sas") return "text";
    return "json";
  }

  std::vector<NamedCondition> conditions() const {
    std::vector<NamedCondition> all;
    for (const auto& path : opt_.conditions) {
      auto c = load_conditions(path);
      all.insert(all.end(), c.begin(), c.end());
    }
    return all;
  }

  Json check(std::string& text) {
    Assignment point;
    for (const auto& [name, v] : parse_sets(opt_.sets)) point[Variable::named(name)] = v;
    const auto conds = conditions();
    Json out = Json::array();
    for (std::size_t k = 0; k < conds.size(); ++k) {
      const auto s = check_conditions({conds[k]}, point)[0];
      const std::string value = to_string(conds[k].poly.evaluate(point));
      out.push_back({{"name", s.first}, {"sign", cli::sign_text(s.second)}, {"value", value}});
      text += s.first + " " + cli::sign_text(s.second) + " " + value + "\n";
    }
    return {{"point", cli::assignment_json(point)}, {"conditions", out}};
  }

  ScanResult scan() {
    std::optional<unsigned> uniform;
    std::map<std::string, unsigned> per_axis;
    for (const auto& s : opt_.steps) {
      if (s.find('=') == std::string::npos) {
        uniform = static_cast<unsigned>(std::stoul(s));
      } else {
        auto [name, k] = split_binding(s, '=');
        per_axis[name] = static_cast<unsigned>(std::stoul(k));
      }
    }
    std::vector<ScanAxis> axes;
    for (const auto& b : opt_.boxes) {
      auto [name, range] = split_binding(b, '=');
      auto [lo, hi] = split_binding(range, ':');
      unsigned steps = per_axis.count(name) ? per_axis.at(name) : uniform.value_or(1);
      axes.push_back({name, parse_rational(lo), parse_rational(hi), steps});
    }
    if (axes.empty()) throw Error(ErrorKind::InvalidArgument, "scan needs at least one --box");
    const unsigned workers = opt_.workers ? opt_.workers : default_workers();
    auto res = scan_parameters(*sys_, axes, mu_, conditions(), workers);
    std::size_t boundary = 0, failed = 0;
    for (const auto& p : res.grid) {
      boundary += p.boundary;
      failed += !p.error.empty();
    }
    if (boundary) warnings_.push_back(std::to_string(boundary) + " grid points have a boundary fixed point");
    if (failed) warnings_.push_back(std::to_string(failed) + " grid points failed");
    return res;
  }

  Json verify(std::string& text) {
    Json out = Json::array();
    auto record = [&](const std::string& label, const std::function<bool()>& check) {
      Json r{{"fixed_point", label}};
      try {
        r["identity_holds"] = check();
      } catch (const Error& e) {
        r["error"] = e.what();
      }
      text += label + ": " + (r.contains("error") ? "error: " + r["error"].get<std::string>() : (r["identity_holds"].get<bool>() ? "holds" : "FAILS")) + "\n";
      out.push_back(r);
    };
    const OdeSystem s = sys_->specialize(mu_);
    if (!opt_.chain.empty()) {
      std::vector<std::string> ids = s.state_names();
      ids.insert(ids.end(), s.param_names().begin(), s.param_names().end());
      SymbolicFixedPoint fp{{}, s.state_names()};
      for (const auto& c : opt_.chain) fp.chain.push_back(parse_polynomial(c, ids));
      record("chain", [&] { return verify_curvature_identity(s, fp); });
      return {{"checks", out}};
    }
    if (!s.param_names().empty())
      throw Error(ErrorKind::UnboundVariable, "bind every parameter with --set or give a symbolic --chain");
    const auto fps = fixed_point_system(s);
    for (const auto& ts : triangularize(fps.equations, s.state_vars())) {
      for (const auto& box : real_solve(ts, fps.side_conditions, {})) {
        if (const auto point = box.rational_point()) {
          Assignment full = *point;
          record(box.to_string(), [&] { return verify_curvature_identity(s, full); });
        }
      }
      SymbolicFixedPoint fp{ts.chain, {}};
      for (auto v : ts.order) fp.order.push_back(v.name());
      record("chain " + ts.to_string(), [&] { return verify_curvature_identity(s, fp); });
    }
    return {{"checks", out}};
  }

  DeviationTrace simulate() {
    DeviationSetup setup{*sys_, mu_, {}, {}, opt_.t_max, opt_.dt, opt_.margin};
    if (!opt_.x0.empty()) {
      setup.x0 = parse_vector(opt_.x0);
    } else {
      const auto r = jacobi_count(*sys_, mu_);
      if (r.fixed_points.empty()) throw Error(ErrorKind::InvalidArgument, "no fixed point to start from; pass --x0");
      for (auto v : sys_->state_vars()) setup.x0.push_back(coordinate_approx(r.fixed_points[0].box.coord(v)));
    }
    if (!opt_.w0.empty()) {
      setup.w0 = parse_vector(opt_.w0);
    } else {
      setup.w0.assign(sys_->dimension(), 0.0);
      if (!setup.w0.empty()) setup.w0[0] = 1;
    }
    return simulate_deviation(setup);
  }

  std::string command_;
  Options opt_;
  std::optional<OdeSystem> sys_;
  Assignment mu_;
  std::vector<std::string> warnings_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi stability analysis of rational ODE systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_system) {
    auto* s = sub->add_option("--system", opt.system_path, "system file")->check(CLI::ExistingFile);
    if (needs_system) s->required();
    sub->add_option("--set", opt.sets, "parameter binding name=p/q (repeatable)");
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));
  };

  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "count plus characteristic polynomials at each fixed point"},
      {"count", "number of Jacobi stable fixed points at a parameter point"},
      {"exists", "whether a Jacobi stable fixed point exists at a parameter point"},
      {"emit-qe", "quantifier elimination problem (SMT-LIB)"},
      {"emit-sas", "semi-algebraic system for Jacobi stable fixed points"},
      {"scan", "count over a rational parameter grid"},
      {"verify-kcc", "check that the deviation curvature equals J^2/4 at fixed points"},
      {"simulate", "integrate the deviation equations"},
      {"check-conditions", "exact signs of condition polynomials"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, name != "check-conditions");
    subs[name] = sub;
  }
  subs["emit-qe"]->add_flag("--readable", opt.readable, "human-readable layout instead of SMT-LIB");
  subs["scan"]->add_option("--box", opt.boxes, "name=lo:hi (repeatable)")->required();
  subs["scan"]->add_option("--steps", opt.steps, "k, or name=k per axis");
  subs["scan"]->add_option("--workers", opt.workers, "worker threads (default JACOBI_WORKERS or 1)");
  for (const char* c : {"scan", "check-conditions"})
    subs[c]->add_option("--conditions", opt.conditions, "condition file")->check(CLI::ExistingFile);
  subs["check-conditions"]->get_option("--conditions")->required();
  subs["verify-kcc"]->add_option("--chain", opt.chain, "triangular chain in state-variable order (repeatable)");
  auto* sim = subs["simulate"];
  sim->add_option("--x0", opt.x0, "initial state, comma separated (default: first fixed point)");
  sim->add_option("--w0", opt.w0, "initial deviation velocity (default: first unit vector)");
  sim->add_option("--t-max", opt.t_max, "integration horizon");
  sim->add_option("--dt", opt.dt, "step size");
  sim->add_option("--margin", opt.margin, "verdict margin around ratio 1");
  sim->add_flag("--samples", opt.samples, "include samples in JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;
  try {
    return Runner(command, opt).run();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.line()) std::cerr << " (line " << e.line() << ")";
    std::cerr << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
