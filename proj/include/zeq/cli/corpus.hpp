#pragma once

// Corpus files: a JSON array of germ and family entries, each carrying expectations with
// a provenance tag. The runner evaluates every applicable check and never stops at a
// failing entry. See corpus/SCHEMA.md.

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "zeq/cli/report.hpp"

namespace zeq::cli {

template <class T>
struct Expected {
  T value{};
  std::string provenance;
};

struct CorpusEntry {
  std::string name;
  std::string kind = "surface";  // or "curve"
  std::string expression;
  std::vector<std::string> params;
  std::vector<std::string> tags;
  std::optional<Expected<std::array<unsigned, 4>>> expected_mu_seq;
  std::optional<Expected<bool>> expected_family_decision;
  std::optional<Expected<unsigned>> expected_milnor;
  std::optional<LiteratureData> literature;
  std::string literature_provenance;
  bool literature_verified = false;
  std::vector<std::vector<Rat>> sample_points;

  bool has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

namespace detail {

inline void check_provenance(const std::string& entry, const std::string& p) {
  auto starts = [&](const char* prefix) { return p.rfind(prefix, 0) == 0 && p.size() > std::strlen(prefix); };
  if (p == "trivial" || starts("derived:") || starts("literature:")) return;
  throw InputError("corpus entry '" + entry + "': bad provenance '" + p + "'");
}

template <class T>
Expected<T> read_expected(const std::string& entry, const Json& j) {
  if (!j.is_object() || !j.contains("value") || !j.contains("provenance"))
    throw InputError("corpus entry '" + entry + "': expectation needs 'value' and 'provenance'");
  Expected<T> e;
  e.provenance = j.at("provenance").get<std::string>();
  check_provenance(entry, e.provenance);
  if constexpr (std::is_same_v<T, bool>) {
    std::string v = j.at("value").get<std::string>();
    if (v != "yes" && v != "no") throw InputError("corpus entry '" + entry + "': decision must be yes or no");
    e.value = v == "yes";
  } else {
    e.value = j.at("value").get<T>();
  }
  return e;
}

inline Rat parse_rat(const std::string& s) {
  MPoly p = parse_poly(s, std::vector<std::string>{});
  if (!p.is_constant()) throw InputError("'" + s + "' is not a rational number");
  return p.constant_term();
}

}  // namespace detail

inline CorpusEntry parse_entry(const Json& j) {
  if (!j.is_object()) throw InputError("corpus entries must be objects");
  CorpusEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    e.expression = j.at("expression").get<std::string>();
    e.kind = j.value("kind", std::string("surface"));
    if (e.kind != "surface" && e.kind != "curve")
      throw InputError("corpus entry '" + e.name + "': kind must be surface or curve");
    e.params = j.value("params", std::vector<std::string>{});
    e.tags = j.value("tags", std::vector<std::string>{});
    if (j.contains("expected_mu_seq"))
      e.expected_mu_seq = detail::read_expected<std::array<unsigned, 4>>(e.name, j["expected_mu_seq"]);
    if (j.contains("expected_family_decision"))
      e.expected_family_decision = detail::read_expected<bool>(e.name, j["expected_family_decision"]);
    if (j.contains("expected_milnor"))
      e.expected_milnor = detail::read_expected<unsigned>(e.name, j["expected_milnor"]);
    if (j.contains("literature")) {
      const Json& l = j["literature"];
      LiteratureData d;
      d.mu3 = l.at("mu3").get<unsigned>();
      d.k = l.at("k").get<unsigned>();
      d.phi = l.at("phi").get<unsigned>();
      e.literature_provenance = l.at("provenance").get<std::string>();
      detail::check_provenance(e.name, e.literature_provenance);
      d.source = e.literature_provenance;
      e.literature_verified = l.value("verified", false);
      e.literature = d;
    }
    for (const auto& p : j.value("sample_points", Json::array())) {
      std::vector<Rat> pt;
      for (const auto& c : p) pt.push_back(detail::parse_rat(c.get<std::string>()));
      if (pt.size() != e.params.size())
        throw InputError("corpus entry '" + e.name + "': sample point has the wrong dimension");
      e.sample_points.push_back(pt);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InputError("corpus entry '" + e.name + "': " + ex.what());
  }
  if (!e.expected_mu_seq && !e.expected_family_decision && !e.expected_milnor && !e.literature)
    throw InputError("corpus entry '" + e.name + "' has no expectation");
  if (e.kind == "curve" && !e.params.empty())
    throw InputError("corpus entry '" + e.name + "': curves take no parameters");
  return e;
}

inline std::vector<CorpusEntry> parse_corpus(const Json& j) {
  if (!j.is_array()) throw InputError("corpus must be a JSON array");
  std::vector<CorpusEntry> out;
  for (const auto& e : j) out.push_back(parse_entry(e));
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InputError("corpus file '" + path + "': " + ex.what());
  }
  return parse_corpus(j);
}

struct CheckResult {
  std::string check;
  std::string status;  // pass, fail, skipped, error
  Json detail = Json::object();
};

struct EntryResult {
  std::string name;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == "fail" || c.status == "error") return false;
    return true;
  }
};

namespace detail {

template <class F>
CheckResult run_check(const std::string& name, F&& body) {
  CheckResult r{name, "pass"};
  try {
    if (!body(r.detail)) r.status = "fail";
  } catch (const std::exception& ex) {
    r.status = "error";
    r.detail["error"] = ex.what();
  }
  return r;
}

inline void run_surface(const CorpusEntry& e, const Options& opt, EntryResult& out) {
  MPoly f = parse_surface(e.expression, {});
  SurfaceGerm::make(f);
  if (e.expected_mu_seq) {
    out.checks.push_back(run_check("mu_seq", [&](Json& d) {
      auto mu = multiplicity_sequence(f, opt.search()).mu;
      d["expected"] = e.expected_mu_seq->value;
      d["actual"] = to_json(mu);
      d["provenance"] = e.expected_mu_seq->provenance;
      return mu.v == e.expected_mu_seq->value;
    }));
  }
  out.checks.push_back(run_check("coordinate_invariance", [&](Json& d) {
    auto rep = coordinate_invariance_test(f, opt.seeds(3), opt.search());
    d["seeds"] = rep.seeds;
    Json seqs = Json::array();
    for (const auto& s : rep.sequences) seqs.push_back(to_json(s));
    d["sequences"] = seqs;
    return rep.equal;
  }));
  if (e.has_tag("isolated")) {
    out.checks.push_back(run_check("formula_mult_discriminant", [&](Json& d) {
      MultDiscriminantFormula a = check_mult_discriminant(f, opt.seed);
      d["mult_delta"] = a.mult_delta;
      d["mu2"] = a.mu.mu2;
      d["mu1"] = a.mu.mu1;
      return a.holds;
    }));
    out.checks.push_back(run_check("formula_discriminant_milnor", [&](Json& d) {
      SurfaceDiscriminantFormula s = check_surface_discriminant(f, opt.seed);
      d["mu_seq"] = to_json(s.nu);
      d["applicable"] = s.applicable;
      d["milnor_delta"] = s.milnor_delta;
      d["i0"] = s.nu[2];
      return s.applicable && s.holds && s.nu[2] == 1;
    }));
  }
  if (e.literature) {
    if (!e.literature_verified) {
      out.checks.push_back({"isolated_sequence", "skipped", Json{{"reason", "literature data unverified"},
                                                      {"provenance", e.literature_provenance}}});
    } else {
      out.checks.push_back(run_check("isolated_sequence", [&](Json& d) {
        IsolatedSequence p = isolated_sequence_check(f, *e.literature, opt.seed);
        d["computed"] = to_json(p.computed);
        d["predicted"] = to_json(p.predicted);
        d["provenance"] = e.literature_provenance;
        return p.holds;
      }));
    }
  }
}

inline void run_family(const CorpusEntry& e, const Options& opt, EntryResult& out) {
  SurfaceGerm germ = SurfaceGerm::make(parse_surface(e.expression, e.params), e.params);
  if (e.expected_family_decision) {
    out.checks.push_back(run_check("family_harness", [&](Json& d) {
      ConsistencyReport rep = consistency_harness(germ, opt.seeds(2), opt.decision());
      d["expected"] = e.expected_family_decision->value ? "yes" : "no";
      d["decision"] = rep.decision ? "yes" : "no";
      d["consistent"] = rep.consistent;
      d["defects"] = rep.defects;
      d["provenance"] = e.expected_family_decision->provenance;
      return rep.consistent && rep.decision == e.expected_family_decision->value;
    }));
  }
  if (!e.sample_points.empty()) {
    out.checks.push_back(run_check("semicontinuity", [&](Json& d) {
      SemicontinuityReport rep = semicontinuity_sample(germ, e.sample_points, opt.search());
      Json samples = Json::array();
      for (const auto& s : rep.samples) {
        Json p = Json::array();
        for (const auto& c : s.point) p.push_back(to_string(c));
        samples.push_back(Json{{"point", p}, {"at_point", to_json(s.at_point)}, {"at_zero", to_json(s.at_zero)}});
      }
      d["samples"] = samples;
      return rep.holds;
    }));
  }
}

inline void run_curve(const CorpusEntry& e, const Options& opt, EntryResult& out) {
  MPoly g = parse_poly(e.expression, curve_vars());
  if (e.expected_milnor) {
    out.checks.push_back(run_check("milnor", [&](Json& d) {
      unsigned mu = milnor_plane_curve(g, opt.seed);
      d["expected"] = e.expected_milnor->value;
      d["actual"] = mu;
      d["provenance"] = e.expected_milnor->provenance;
      return mu == e.expected_milnor->value;
    }));
  }
  if (e.has_tag("isolated")) {
    out.checks.push_back(run_check("formula_discriminant_milnor", [&](Json& d) {
      CurveDiscriminantFormula r = check_curve_discriminant(g, opt.seed, opt.max_trials);
      d["mult_disc"] = r.mult_disc;
      d["milnor"] = r.milnor;
      d["mult"] = r.mult;
      return r.holds;
    }));
  }
}

}  // namespace detail

inline EntryResult run_entry(const CorpusEntry& e, const Options& opt) {
  EntryResult out{e.name, {}};
  try {
    if (e.kind == "curve") detail::run_curve(e, opt, out);
    else if (e.params.empty()) detail::run_surface(e, opt, out);
    else detail::run_family(e, opt, out);
  } catch (const std::exception& ex) {
    out.checks.push_back({"input", "error", Json{{"error", ex.what()}}});
  }
  return out;
}

/// Runs the entries on up to opt.parallel threads; results keep the corpus order.
inline std::vector<EntryResult> run_corpus(const std::vector<CorpusEntry>& entries, const Options& opt) {
  std::vector<EntryResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < entries.size();) results[i] = run_entry(entries[i], opt);
  };
  unsigned n = std::max(1u, std::min<unsigned>(opt.parallel, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

inline Json corpus_report(const std::vector<EntryResult>& results, const Options& opt) {
  Json j{{"command", "corpus"}, {"seed", opt.seed}};
  Json entries = Json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(Json{{"check", c.check}, {"status", c.status}, {"detail", c.detail}});
    entries.push_back(Json{{"name", r.name}, {"passed", r.passed()}, {"checks", checks}});
    if (r.passed()) ++passed;
  }
  j["entries"] = entries;
  j["summary"] = Json{{"total", results.size()}, {"passed", passed}, {"failed", results.size() - passed}};
  return j;
}

/// One line per check: entry, check, status.
inline void render_corpus_table(std::ostream& os, const Json& report) {
  std::size_t w = 5;
  for (const auto& e : report["entries"]) w = std::max(w, e["name"].get<std::string>().size());
  auto pad = [](std::string s, std::size_t n) { return s.append(n > s.size() ? n - s.size() : 0, ' '); };
  os << pad("entry", w) << "  " << pad("check", 28) << "  status\n";
  for (const auto& e : report["entries"])
    for (const auto& c : e["checks"]) {
      os << pad(e["name"].get<std::string>(), w) << "  " << pad(c["check"].get<std::string>(), 28) << "  "
         << c["status"].get<std::string>();
      if (c["detail"].contains("error")) os << " (" << c["detail"]["error"].get<std::string>() << ")";
      os << "\n";
    }
  const Json& s = report["summary"];
  os << s["passed"].get<std::size_t>() << "/" << s["total"].get<std::size_t>() << " entries passed\n";
}

}  // namespace zeq::cli
