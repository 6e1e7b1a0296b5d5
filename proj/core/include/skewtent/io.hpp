#pragma once

#include <iosfwd>
#include <string>

#include "skewtent/acim.hpp"
#include "skewtent/entropy.hpp"
#include "skewtent/flexibility.hpp"
#include "skewtent/maps.hpp"

namespace skewtent {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// {"s": ..., "t": ...}
std::string to_json(const SkewTentMap& f);
// {"breakpoints": [...], "values": [...]}
std::string to_json(const PLUnimodalMap& f);
// {"h_top": ..., "h_mu": ..., "tail_bound": ..., "bracket": ...}
std::string to_json(const EntropyReport& rep);
// {"map": {...}, "h_top": ..., "h_mu": ..., "targets": {"a":..,"b":..},
//  "iterations": ...}
std::string to_json(const SolveResult& res, double a, double b);

// Accepts either map schema, keyed on the fields present.
MapVariant map_from_json(const std::string& text);
MapVariant map_from_json(std::istream& in);

// Header "x_left,x_right,rho", one row per piece, 17 significant digits.
void write_csv(std::ostream& out, const StepDensity& d);

}  // namespace skewtent
