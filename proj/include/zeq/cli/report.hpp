#pragma once

// JSON reports for the command-line tool. Keys are emitted in insertion order, so the
// output of a command depends only on its arguments.

#include <cctype>
#include <cstdint>
#include <ostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zeq/cli/parse.hpp"
#include "zeq/equising/family.hpp"
#include "zeq/isolated/isolated.hpp"

namespace zeq::cli {

using Json = nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 1;
  unsigned max_precision = 0;
  unsigned max_trials = 32;
  std::vector<std::string> params;
  unsigned parallel = 1;

  SearchOptions search() const {
    SearchOptions s;
    s.seed = seed;
    s.max_trials = max_trials;
    s.max_precision = max_precision;
    return s;
  }
  DecisionOptions decision() const {
    DecisionOptions d;
    d.seed = seed;
    d.max_trials = max_trials;
    d.max_precision = max_precision;
    return d;
  }
  /// Seeds for the harness and the invariance check.
  std::vector<std::uint64_t> seeds(unsigned n) const {
    std::vector<std::uint64_t> out;
    for (unsigned i = 0; i < n; ++i) out.push_back(seed + i);
    return out;
  }
};

/// "t, u" -> {"t", "u"}; empty names are rejected.
inline std::vector<std::string> split_params(const std::string& s) {
  std::vector<std::string> out;
  if (s.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty parameter name in '" + s + "'");
    std::string name = item.substr(b, e - b + 1);
    if (!std::isalpha(static_cast<unsigned char>(name[0])))
      throw InputError("parameter '" + name + "' is not an identifier");
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw InputError("parameter '" + name + "' is not an identifier");
    out.push_back(name);
  }
  return out;
}

inline Json to_json(const Order& o) {
  if (o.is_finite()) return o.value();
  if (o.is_infinite()) return "inf";
  return Json{{"zero_to_precision", o.value()}};
}

inline Json to_json(const MultiplicitySequence& s) { return Json::array({s[0], s[1], s[2], s[3]}); }

inline Json to_json(const std::array<std::optional<unsigned>, 4>& a) {
  Json out = Json::array();
  for (const auto& e : a) out.push_back(e ? Json(*e) : Json(nullptr));
  return out;
}

inline Json to_json(const CoordChange& c) {
  Json m = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < 3; ++j) row.push_back(to_string(c.matrix(i, j)));
    m.push_back(row);
  }
  return Json{{"matrix", m}, {"seed", c.seed}, {"trial", c.trial}};
}

inline Json to_json(const NuTransverseReport& r) {
  Json j{{"cond1", r.cond1}, {"cond2", r.cond2}};
  j["cond3"] = r.cond3_checked ? Json(r.cond3) : Json(nullptr);
  j["tangent_cone"] = r.tangent_cone;
  return j;
}

inline Json to_json(const EquimultipleResult& e) {
  return Json{{"generic", to_json(e.generic_mult)}, {"special", to_json(e.special_mult)}};
}

inline Json to_json(const CurveFamilyResult& c) {
  Json j{{"decision", c.decision ? "yes" : "no"}};
  j["unit"] = c.unit;
  j["regular"] = c.regular;
  j["equimultiple"] = c.equimultiple;
  j["degree"] = c.degree;
  j["i0"] = c.i0;
  j["special_i0"] = c.special_i0;
  j["entry_mult"] = to_json(c.entry);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

inline Json to_json(const FamilyReport& r) {
  Json j{{"decision", r.decision ? "yes" : "no"}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  Json w;
  w["f_mult"] = Json{{"generic", r.f_mult.generic}, {"special", r.f_mult.special}};
  w["disc_mult"] = r.disc_mult ? to_json(*r.disc_mult) : Json(nullptr);
  w["j0"] = r.j0;
  w["i0"] = r.curve ? Json(r.curve->i0) : Json(nullptr);
  w["curve"] = r.curve ? to_json(*r.curve) : Json(nullptr);
  if (r.fiber) w["fiber"] = to_json(*r.fiber);
  j["witnesses"] = w;
  j["coord_change"] = to_json(r.change);
  j["precision_used"] = r.precision_used;
  return j;
}

inline Json to_json(const NuStarConstancy& c) {
  Json j{{"decision", c.constant ? "yes" : "no"}};
  j["constant"] = c.constant;
  j["witnesses"] = Json{{"generic", to_json(c.generic)},
                        {"special", to_json(c.special)},
                        {"entries_compared", c.entries_compared}};
  j["cond3_checked"] = c.cond3_checked;
  j["coord_change"] = to_json(c.change);
  j["precision_used"] = c.precision_used;
  return j;
}

inline Json to_json(const ConsistencyReport& r) {
  Json j{{"decision", r.decision ? "yes" : "no"}};
  j["consistent"] = r.consistent;
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    Json x{{"seed", run.seed}};
    x["nutze"] = to_json(run.nutze);
    x["ze"] = to_json(run.ze);
    x["nustar"] = to_json(run.nustar);
    runs.push_back(x);
  }
  j["runs"] = runs;
  j["defects"] = r.defects;
  return j;
}

inline MPoly parse_surface(const std::string& expr, const std::vector<std::string>& params) {
  return parse_poly(expr, geometric_vars(), params);
}

inline Json musq_report(const std::string& expr, const Options& opt) {
  if (!opt.params.empty()) throw InputError("musq takes a germ without parameters");
  MPoly f = parse_surface(expr, {});
  SurfaceGerm::make(f);  // origin and variable checks
  auto r = multiplicity_sequence(f, opt.search());
  Json j{{"command", "musq"}, {"input", f.to_string()}};
  j["mu_seq"] = to_json(r.mu);
  j["smooth"] = r.smooth;
  j["reduced"] = r.reduced;
  j["coord_change"] = to_json(r.change);
  j["transversality"] = to_json(r.report);
  j["precision_used"] = r.precision_used;
  return j;
}

inline Json family_report(const std::string& expr, const std::string& mode, const Options& opt) {
  if (opt.params.empty()) throw InputError("check-family needs at least one parameter (--params)");
  SurfaceGerm germ = SurfaceGerm::make(parse_surface(expr, opt.params), opt.params);
  Json j{{"command", "check-family"}, {"mode", mode}, {"input", germ.original.to_string()}};
  j["params"] = opt.params;
  j["seed"] = opt.seed;
  Json body;
  if (mode == "ze") body = to_json(family_zariski_equisingular(germ, opt.decision()));
  else if (mode == "nutze") body = to_json(nu_transverse_ZE(germ, opt.decision()));
  else if (mode == "nustar") body = to_json(nu_star_constant(germ, opt.decision()));
  else if (mode == "harness") {
    j["seeds"] = opt.seeds(2);
    body = to_json(consistency_harness(germ, opt.seeds(2), opt.decision()));
  } else
    throw InputError("unknown mode '" + mode + "' (ze, nutze, nustar, harness)");
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

inline Json curve_milnor_report(const std::string& expr, const Options& opt) {
  if (!opt.params.empty()) throw InputError("curve-milnor takes a curve without parameters");
  MPoly g = parse_poly(expr, curve_vars());
  Json j{{"command", "curve-milnor"}, {"input", g.to_string()}};
  CurveDiscriminantFormula r = check_curve_discriminant(g, opt.seed, opt.max_trials);
  j["milnor"] = r.milnor;
  j["mult"] = r.mult;
  j["mult_disc"] = r.mult_disc;
  j["formula_holds"] = r.holds;
  j["seed"] = opt.seed;
  return j;
}

/// Indented "key: value" rendering of a report; arrays of scalars stay on one line.
inline void render_text(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(indent, ' ');
  auto scalar_array = [](const Json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  auto inline_value = [&](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
      return s + ")";
    }
    return v.dump();
  };
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << pad << k << ":\n";
      render_text(os, v, indent + 2);
    } else if (v.is_array() && !scalar_array(v)) {
      os << pad << k << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object()) {
          os << pad << "  [" << i << "]\n";
          render_text(os, v[i], indent + 4);
        } else {
          os << pad << "  " << inline_value(v[i]) << "\n";
        }
      }
    } else {
      os << pad << k << ": " << inline_value(v) << "\n";
    }
  }
}

}  // namespace zeq::cli
