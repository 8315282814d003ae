// Acceptance run: one line per criterion, "PASS" only if the result is exact and within
// its time budget. Expected values come from the bundled corpus (with provenance) or are
// computed here by independent oracles.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "zeq/cli/corpus.hpp"
#include "zeq/disc/chain.hpp"

using namespace zeq;
using namespace zeq::cli;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string seq_str(const std::array<unsigned, 4>& v) { return MultiplicitySequence{v}.to_string(); }

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = load_corpus("corpus/corpus.json");
  return entries;
}

const CorpusEntry& entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw std::runtime_error("corpus entry '" + name + "' missing");
}

MPoly surface(const CorpusEntry& e) { return parse_poly(e.expression, geometric_vars(), e.params); }

MPoly from_roots(const std::vector<Rat>& roots) {
  const std::vector<std::string> v{"y"};
  MPoly f = MPoly::constant(v, Rat(1));
  for (const auto& r : roots) f *= MPoly::variable(v, "y") - MPoly::constant(v, r);
  return f;
}

void partitions(unsigned d, unsigned max_part, std::vector<unsigned>& cur,
                const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (d == 0) return visit(cur);
  for (unsigned p = std::min(d, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(d - p, p, cur, visit);
    cur.pop_back();
  }
}

// 1. The four reference germs against the oracles recorded in the corpus.
Outcome c1() {
  Outcome o;
  std::ostringstream d;
  for (const char* name : {"A1", "cusp-cylinder", "whitney-umbrella", "smooth"}) {
    const CorpusEntry& e = entry(name);
    auto t0 = Clock::now();
    auto mu = multiplicity_sequence(surface(e)).mu;
    double s = since(t0);
    bool good = mu.v == e.expected_mu_seq->value && s < 1.0;
    o.ok = o.ok && good;
    d << name << " " << mu.to_string() << (good ? "" : " (expected " + seq_str(e.expected_mu_seq->value) + ")")
      << " " << std::fixed << std::setprecision(3) << s << "s; ";
  }
  o.detail = d.str();
  return o;
}

// 2. nu* of every corpus germ is the same for seeds 1, 2, 3.
Outcome c2() {
  Outcome o;
  unsigned n = 0;
  for (const auto& e : corpus()) {
    if (e.kind != "surface" || !e.params.empty()) continue;
    auto rep = coordinate_invariance_test(surface(e), {1, 2, 3});
    ++n;
    if (!rep.equal) {
      o.ok = false;
      o.detail += e.name + " differs across seeds; ";
    }
  }
  o.detail += std::to_string(n) + " germs x 3 seeds";
  return o;
}

// 3. Subresultant chain against the root formula on 200 random root sets.
Outcome c3() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(1, 6), num(-5, 5), den(1, 4);
  unsigned bad = 0;
  for (int round = 0; round < 200; ++round) {
    std::vector<Rat> roots(deg(rng));
    for (auto& r : roots) {
      r = Rat(num(rng), den(rng));
      r.canonicalize();
    }
    if (round % 4 == 0 && roots.size() > 2) roots[2] = roots[0];
    DiscChain c = generalized_discriminants(from_roots(roots), "y");
    std::vector<Rat> got;
    for (std::size_t i = 1; i <= roots.size(); ++i) got.push_back(c.at(i).constant_term());
    if (got != root_formula_oracle(roots)) ++bad;
  }
  return {bad == 0, "200 polynomials, " + std::to_string(bad) + " mismatches"};
}

// 4. For every multiplicity pattern of degree <= 6: idiscr = d - s + 1, and
// D^{d-s+1} = C Disc(F_red) with C = prod m_i (only subsets meeting every cluster once
// survive in the root formula), independent of the roots.
Outcome c4() {
  unsigned patterns = 0, bad = 0;
  for (unsigned d = 1; d <= 6; ++d) {
    std::vector<unsigned> cur;
    partitions(d, d, cur, [&](const std::vector<unsigned>& m) {
      ++patterns;
      const unsigned s = static_cast<unsigned>(m.size());
      std::vector<Rat> distinct, roots;
      for (std::size_t i = 0; i < s; ++i) {
        distinct.push_back(Rat(static_cast<long>(2 * i * i + 1), 3));
        for (unsigned k = 0; k < m[i]; ++k) roots.push_back(distinct.back());
      }
      Rat prod = 1;
      for (auto e : m) prod *= e;
      DiscChain c = generalized_discriminants(from_roots(roots), "y");
      ClusterConstant l = cluster_discriminant_constant(distinct, m);
      if (idiscr(c) != d - s + 1 || !l.positive || !l.pattern_only || l.constant != prod) ++bad;
    });
  }
  return {bad == 0, std::to_string(patterns) + " patterns, " + std::to_string(bad) + " failures"};
}

// 5. mult D_f = mu^2 + mu^1 and the discriminant Milnor formula on the isolated corpus.
Outcome c5() {
  Outcome o;
  unsigned n = 0;
  for (const auto& e : corpus()) {
    if (!e.has_tag("isolated")) continue;
    ++n;
    if (e.kind == "curve") {
      CurveDiscriminantFormula r = check_curve_discriminant(parse_poly(e.expression, curve_vars()));
      if (!r.holds) {
        o.ok = false;
        o.detail += e.name + ": mult Disc " + std::to_string(r.mult_disc) + "; ";
      }
      continue;
    }
    MPoly f = surface(e);
    MultDiscriminantFormula a = check_mult_discriminant(f);
    SurfaceDiscriminantFormula b = check_surface_discriminant(f);
    if (!a.holds || !b.applicable || !b.holds || b.nu[2] != 1) {
      o.ok = false;
      o.detail += e.name + ": mult Delta " + std::to_string(a.mult_delta) + " vs mu2 + mu1 = " +
                  std::to_string(a.mu.mu2 + a.mu.mu1) + ", nu* " + b.nu.to_string() + ", mu(Delta) " +
                  std::to_string(b.milnor_delta) + "; ";
    }
  }
  o.detail += std::to_string(n) + " isolated entries";
  return o;
}

// 6. nu*(A1) predicted from the Teissier numbers and (mu3, k, phi) = (1, 0, 0).
Outcome c6() {
  const CorpusEntry& e = entry("A1-sum");
  IsolatedSequence p = isolated_sequence_check(surface(e), *e.literature);
  bool ok = p.holds && p.computed == MultiplicitySequence{{2, 2, 1, 2}};
  return {ok, "computed " + p.computed.to_string() + ", predicted " + p.predicted.to_string()};
}

// 7. The three deciders agree on every corpus family (seeds 1 and 2).
Outcome c7() {
  Outcome o;
  for (const auto& e : corpus()) {
    if (e.params.empty() || !e.expected_family_decision) continue;
    auto t0 = Clock::now();
    ConsistencyReport rep = consistency_harness(SurfaceGerm::make(surface(e), e.params), {1, 2});
    double s = since(t0);
    const bool bs = e.name == "briancon-speder";
    const double budget = bs ? 600.0 : 10.0;
    bool good = rep.consistent && rep.decision == e.expected_family_decision->value && s < budget;
    o.ok = o.ok && good;
    std::ostringstream d;
    d << e.name << " " << (rep.decision ? "yes" : "no") << (rep.consistent ? "" : " INCONSISTENT") << " "
      << std::fixed << std::setprecision(2) << s << "s/" << budget << "s; ";
    o.detail += d.str();
  }
  MPoly bs = surface(entry("briancon-speder"));
  o.detail += "BS settings: degree " + std::to_string(bs.total_degree()) + ", deg_z " +
              std::to_string(bs.degree_in(kZ)) + ", precision ceiling " +
              std::to_string(default_max_precision(bs, kZ)) + " (default), 32 trials";
  return o;
}

// 8. The shear family f(X + aZ, Y + bZ, Z) over (a, b) for the sheared A1 germ.
Outcome c8() {
  const std::vector<std::string> p{"a", "b"};
  MPoly f = parse_poly("z^2 - (x + y)*y", geometric_vars());
  NuTransverseReport t = check_nu_transverse(f);
  if (!t.passes()) return {false, "germ is not nu-transverse"};
  std::vector<std::string> vars{"x", "y", "z", "a", "b"};
  MPoly g = f.with_vars(vars);
  g = substitute(g, kX, MPoly::variable(vars, "x") + MPoly::variable(vars, "a") * MPoly::variable(vars, "z"));
  g = substitute(g, kY, MPoly::variable(vars, "y") + MPoly::variable(vars, "b") * MPoly::variable(vars, "z"));
  DecisionOptions opt;
  opt.fixed_coordinates = true;
  FamilyReport r = family_zariski_equisingular(SurfaceGerm::make(g, p), opt);
  return {r.decision, "family " + g.to_string() + ": " + (r.decision ? "yes" : "no")};
}

// 9. nu*(V_t0) <= nu*(V_0) at the corpus sample points of every family.
Outcome c9() {
  Outcome o;
  for (const auto& e : corpus()) {
    if (e.params.empty()) continue;
    if (e.sample_points.size() < 3) {
      o.ok = false;
      o.detail += e.name + ": fewer than 3 sample points; ";
      continue;
    }
    SemicontinuityReport r = semicontinuity_sample(SurfaceGerm::make(surface(e), e.params), e.sample_points);
    o.ok = o.ok && r.holds;
    o.detail += e.name + (r.holds ? " ok; " : " VIOLATED; ");
  }
  return o;
}

std::string run_binary(const std::string& args) {
  std::string cmd = std::string(ZEQ_BINARY) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "";
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  pclose(p);
  return out;
}

// 10. Identical inputs and seeds give byte-identical JSON, in process and from the tool.
Outcome c10() {
  Outcome o;
  Options opt;
  opt.seed = 7;
  auto twice = [&](const std::string& what, const std::function<std::string()>& f) {
    std::string a = f(), b = f();
    if (a != b || a.empty()) {
      o.ok = false;
      o.detail += what + " differs; ";
    }
  };
  twice("musq", [&] { return musq_report("z^2 - x*y^2", opt).dump(); });
  Options fam = opt;
  fam.params = {"t"};
  twice("harness", [&] { return family_report("z^2 - x*y - t*x^2", "harness", fam).dump(); });
  twice("corpus", [&] {
    std::vector<CorpusEntry> small;
    for (const auto& e : corpus())
      if (e.name != "briancon-speder") small.push_back(e);
    Options par = opt;
    par.parallel = 2;
    return corpus_report(run_corpus(small, par), par).dump();
  });
  twice("zeq musq", [] { return run_binary("musq 'z^2 - x^3' --seed 4"); });
  twice("zeq check-family", [] { return run_binary("check-family 'z^2 - x*y - t*x' --params t --mode nustar"); });
  if (o.detail.empty()) o.detail = "5 command lines, each run twice";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "nu* of the reference germs", 4.0, c1},
      {2, "coordinate invariance", 5.0, c2},
      {3, "chain equals root formula", 10.0, c3},
      {4, "distinct-root criterion and cluster constant", 10.0, c4},
      {5, "discriminant formulas on isolated germs", 30.0, c5},
      {6, "nu* of A1 from Teissier numbers", 5.0, c6},
      {7, "decider agreement on families", 630.0, c7},
      {8, "shear family of a transverse germ", 30.0, c8},
      {9, "semicontinuity", 60.0, c9},
      {10, "determinism", 120.0, c10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = since(t0);
    bool pass = o.ok && s <= c.budget_s;
    if (!pass) ++failed;
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  ["
              << std::fixed << std::setprecision(2) << s << "s / " << std::setprecision(0) << c.budget_s << "s]  "
              << o.detail << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
