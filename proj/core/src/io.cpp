#include "skewtent/io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace skewtent {

namespace {

using nlohmann::json;

json map_to_json_value(const SkewTentMap& f) { return json{{"s", f.s}, {"t", f.t}}; }

json map_to_json_value(const PLUnimodalMap& f) {
  return json{{"breakpoints", f.breakpoints}, {"values", f.values}};
}

MapVariant map_from_json_value(const json& j) {
  if (j.contains("s") && j.contains("t")) {
    return make_skew_tent(j.at("s").get<double>(), j.at("t").get<double>());
  }
  if (j.contains("breakpoints") && j.contains("values")) {
    return make_pl_unimodal(j.at("breakpoints").get<std::vector<double>>(),
                            j.at("values").get<std::vector<double>>());
  }
  throw DomainError("map JSON needs either {s, t} or {breakpoints, values}");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const SkewTentMap& f) { return map_to_json_value(f).dump(); }

std::string to_json(const PLUnimodalMap& f) { return map_to_json_value(f).dump(); }

std::string to_json(const EntropyReport& rep) {
  return json{{"h_top", rep.h_top},
              {"h_mu", rep.h_mu},
              {"tail_bound", rep.tail_bound},
              {"bracket", rep.bracket}}
      .dump();
}

std::string to_json(const SolveResult& res, double a, double b) {
  json jmap = std::visit([](const auto& m) { return map_to_json_value(m); }, res.map);
  return json{{"map", std::move(jmap)},
              {"h_top", res.report.h_top},
              {"h_mu", res.report.h_mu},
              {"targets", json{{"a", a}, {"b", b}}},
              {"iterations", res.iterations}}
      .dump();
}

MapVariant map_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad map JSON: ") + e.what());
  }
  return map_from_json_value(j);
}

MapVariant map_from_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad map JSON: ") + e.what());
  }
  return map_from_json_value(j);
}

void write_csv(std::ostream& out, const StepDensity& d) {
  out << "x_left,x_right,rho\n";
  for (std::size_t i = 0; i < d.heights.size(); ++i) {
    out << format_double(d.cuts[i]) << ',' << format_double(d.cuts[i + 1]) << ','
        << format_double(d.heights[i]) << '\n';
  }
}

}  // namespace skewtent
