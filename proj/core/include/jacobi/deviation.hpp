#pragma once

#include <string>
#include <vector>

#include "jacobi/ode_model.hpp"

namespace jacobi {

/// Deviation run from xi(0) = 0 with xi'(0) = w0. The base trajectory x(t)
/// is integrated together with xi.
struct DeviationSetup {
  OdeSystem system;
  Assignment mu;
  std::vector<double> x0;
  std::vector<double> w0;
  double t_max = 0.5;
  double dt = 1e-4;
  /// Verdict margin around ratio 1 on the window [t_max / 2, t_max].
  double margin = 0.05;
};

enum class Focusing { Bunching, Dispersing, Indeterminate };

const char* to_string(Focusing f);

struct DeviationSample {
  double t = 0;
  double norm = 0;   // sqrt(<xi, xi> / <w0, w0>)
  double ratio = 0;  // norm / t^2
  std::vector<double> xi;
};

struct DeviationTrace {
  std::vector<DeviationSample> samples;  // t > 0, increasing
  Focusing verdict = Focusing::Indeterminate;
  double initial_velocity_norm = 0;
  double window_min = 0, window_max = 0;
};

/// Classical RK4 on (x, xi, xi') for
///   xi'' + 2 N(x, f(x)) xi' + 2 dG/dx(x, f(x)) xi = 0.
/// Throws Error(InvalidArgument) for a bad setup and Error(Numerical) when a
/// denominator vanishes or the state stops being finite.
DeviationTrace simulate_deviation(const DeviationSetup& setup);

/// CSV with header "t,norm,ratio".
std::string render_trace(const DeviationTrace& trace);

}  // namespace jacobi
