#pragma once

// JSON and text renderings of analysis results for the command-line tool.

#include <json.hpp>
#include <string>

#include "jacobi/analysis.hpp"
#include "jacobi/deviation.hpp"

namespace jacobi::cli {

using Json = nlohmann::ordered_json;

std::string sign_text(Sign s);
Json assignment_json(const Assignment& a);
Json coordinate_json(const Coordinate& c);
Json system_json(const OdeSystem& sys, const std::string& path);

Json stability_json(const StabilityReport& r);
std::string stability_text(const StabilityReport& r);

/// count plus the characteristic polynomials of J and J^2 at each fixed point.
Json analysis_json(const OdeSystem& sys, const StabilityReport& r);

Json scan_json(const ScanResult& s);
std::string scan_csv(const ScanResult& s);

Json qe_json(const QeProblem& qe);

Json trace_json(const DeviationTrace& t, bool with_samples);

}  // namespace jacobi::cli
