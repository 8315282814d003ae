#pragma once

// Deciders for families f(x, y, z, t) of surface germs:
//   (i)   nu_transverse_ZE            Delta_{b,t} equisingular in (b, t)
//   (ii)  family_zariski_equisingular the discriminant chain is equimultiple along t
//   (iii) nu_star_constant            nu*(V_t) is constant
// and the harnesses built on them.
//
// Every decider first checks that f, then D_f, is equimultiple along the parameters; both
// are necessary for each of the three conditions and reject most non-equisingular families
// long before the expensive chain entries are needed.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "zeq/equising/nustar.hpp"

namespace zeq {

struct DecisionOptions {
  std::uint64_t seed = 1;
  unsigned max_trials = 32;
  unsigned max_precision = 0;     // 0: default ceiling
  bool reduce = true;             // replace f by its squarefree part
  bool fixed_coordinates = false;  // decide in the given coordinates only

  SearchOptions search() const {
    SearchOptions s;
    s.seed = seed;
    s.max_trials = max_trials;
    s.max_precision = max_precision;
    return s;
  }
};

struct FamilyReport {
  std::string mode;
  bool decision = false;
  bool blocked = false;  // fixed coordinates fail a regularity requirement
  std::string reason;
  CoordChange change;
  Multiplicities f_mult;
  std::optional<EquimultipleResult> disc_mult;  // D_f along the parameters
  unsigned j0 = 0;
  std::optional<CurveFamilyResult> curve;       // chain-level witness
  std::optional<NuTransverseReport> fiber;      // conditions on V_0 (mode nutze)
  unsigned precision_used = 0;
};

namespace detail {

inline std::vector<unsigned> trial_list(const DecisionOptions& opt) {
  if (opt.fixed_coordinates) return {0};
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= opt.max_trials; ++k) out.push_back(k);
  return out;
}

inline unsigned param_degree(const MPoly& f, const std::vector<std::size_t>& params) {
  unsigned deg = 0;
  for (const auto& [m, c] : f.terms()) {
    unsigned p = 0;
    for (auto i : params) p += m.exp[i];
    deg = std::max(deg, p);
  }
  return deg;
}

inline const std::vector<std::size_t>& geometric_indices() {
  static const std::vector<std::size_t> g{kX, kY, kZ};
  return g;
}

inline bool reached_chain(const CurveFamilyResult& c) {
  return c.regular && !c.unit && c.equimultiple;
}

inline bool same_curve_decision(const CurveFamilyResult& a, const CurveFamilyResult& b) {
  return a.decision == b.decision && a.i0 == b.i0 && a.special_i0 == b.special_i0 &&
         a.entry.generic_mult == b.entry.generic_mult && a.entry.special_mult == b.entry.special_mult;
}

/// Runs a plane-curve decision under the precision controller; when the chain was
/// consulted, the result is confirmed at the next precision.
template <class Task>
Adequate<CurveFamilyResult> decide_curve(Task&& task, PrecisionBudget budget) {
  auto r = with_adequate_precision(task, budget);
  if (!reached_chain(r.value)) return r;
  return confirm_stable(task, std::move(r), budget.max, same_curve_decision);
}

inline FamilyReport rejected_by_multiplicity(FamilyReport rep) {
  rep.decision = false;
  rep.reason = "f is not equimultiple along the parameters";
  return rep;
}

inline MPoly fiber_at_zero(const MPoly& g, const std::vector<std::size_t>& params) {
  MPoly g0 = set_zero(g, params).with_vars(geometric_vars());
  if (g0.is_zero()) throw InputError("the special fiber f(x, y, z, 0) is identically zero");
  return squarefree_part(g0);
}

}  // namespace detail

/// (ii) The first nonvanishing generalized discriminant D^{j0} of f in z is regular in y,
/// and either a unit or a Zariski equisingular family of plane curves over t.
inline FamilyReport family_zariski_equisingular(const SurfaceGerm& germ, const DecisionOptions& opt = {}) {
  FamilyReport rep;
  rep.mode = "ze";
  const MPoly f = opt.reduce ? germ.f : germ.original;
  const auto params = germ.param_indices();
  rep.f_mult = polynomial_multiplicities(f, detail::geometric_indices(), params);
  if (!rep.f_mult.equal()) return detail::rejected_by_multiplicity(rep);

  unsigned not_z = 0, not_y = 0;
  for (unsigned trial : detail::trial_list(opt)) {
    CoordChange change = coordinate_change(opt.seed, trial);
    MPoly g = apply(change, f);
    unsigned d = 0;
    try {
      d = regularity(g, kZ);
    } catch (const NotRegular&) {
      ++not_z;
      if (opt.fixed_coordinates) {
        rep.blocked = true;
        rep.change = change;
        rep.reason = "f is not regular in z";
        return rep;
      }
      continue;
    }
    PrecisionBudget budget = default_budget(g, kZ, opt.max_precision);
    const unsigned slack = family_slack(d, detail::param_degree(g, params));
    // Calibrate on D^{j0} of the special fiber, which is cheap.
    MPoly g0 = set_zero(g, params);
    auto special = with_adequate_precision(
        [&](unsigned n) -> unsigned {
          LocalDiscriminant ld = local_discriminant(g0, n);
          Order o = ld.D.order();
          if (o.is_zero_to_precision()) throw InsufficientPrecision("special discriminant", n);
          return o.is_finite() ? o.value() : 0;
        },
        budget);
    budget.current = std::min(budget.max, std::max(budget.current, special.value + slack + 1));

    unsigned j0 = 0;
    auto curve = detail::decide_curve(
        [&](unsigned n) {
          LocalDiscriminant ld = local_discriminant(g, n);
          j0 = ld.j0;
          return plane_curve_family_ze(ld.D, kX, kY, params, n, slack);
        },
        budget);
    if (!curve.value.regular) {
      ++not_y;
      if (opt.fixed_coordinates) {
        rep.blocked = true;
        rep.change = change;
        rep.reason = curve.value.reason;
        return rep;
      }
      continue;
    }
    rep.change = change;
    rep.j0 = j0;
    rep.curve = curve.value;
    if (!curve.value.equimultiple) rep.disc_mult = curve.value.entry;
    rep.decision = curve.value.decision;
    rep.reason = curve.value.reason;
    rep.precision_used = std::max(special.precision, curve.precision);
    return rep;
  }
  throw TrialsExhausted(opt.max_trials, not_z, not_y, 0);
}

/// (i) In coordinates nu-transverse for V_0, the discriminant curves Delta_{b,t} of the
/// projections (x, y - bz) form an equisingular family over (b, t).
inline FamilyReport nu_transverse_ZE(const SurfaceGerm& germ, const DecisionOptions& opt = {}) {
  FamilyReport rep;
  rep.mode = "nutze";
  const MPoly& f = germ.f;
  const auto params = germ.param_indices();
  rep.f_mult = polynomial_multiplicities(f, detail::geometric_indices(), params);
  if (!rep.f_mult.equal()) return detail::rejected_by_multiplicity(rep);

  unsigned c1 = 0, c2 = 0, c3 = 0;
  for (unsigned trial : detail::trial_list(opt)) {
    CoordChange change = coordinate_change(opt.seed, trial);
    MPoly g = apply(change, f);
    MPoly g0 = detail::fiber_at_zero(g, params);
    FiberAnalyzer an(g0, germ_budget(g0, opt.max_precision));
    NuTransverseReport fib = an.report(false);
    rep.change = change;
    rep.fiber = fib;
    if (!fib.cond1 || !fib.cond2) {
      (!fib.cond1 ? c1 : c2)++;
      if (opt.fixed_coordinates) {
        rep.blocked = true;
        rep.reason = "coordinates are not transverse for the special fiber";
        return rep;
      }
      continue;
    }
    const FiberStageA& sa = an.a();
    if (sa.unit) {
      rep.decision = true;
      rep.reason = "unit discriminant";
      rep.fiber = an.report(true);
      rep.precision_used = an.precision_used();
      return rep;
    }
    PrecisionBudget budget = default_budget(g, kZ, opt.max_precision);
    const unsigned pdeg = detail::param_degree(g, params);
    const unsigned slack = family_slack(sa.degree, pdeg);
    budget.current = std::min(budget.max, std::max(budget.current, sa.m_Delta + slack + 1));
    auto disc = with_adequate_precision(
        [&](unsigned n) {
          LocalDiscriminant ld = local_discriminant(g, n);
          EquimultipleResult em = equimultiple_along_params(ld.D, {kX, kY}, params);
          if (em.special_mult.is_finite())
            require_precision(ld.D, em.special_mult.value() + 1 + slack, "discriminant family");
          return em;
        },
        budget);
    rep.disc_mult = disc.value;
    rep.precision_used = std::max(an.precision_used(), disc.precision);
    if (!disc.value.equal) {
      rep.decision = false;
      rep.reason = "discriminant is not equimultiple along the parameters";
      return rep;
    }

    fib = an.report(true);
    rep.fiber = fib;
    if (!fib.cond3) {
      ++c3;
      if (opt.fixed_coordinates) {
        rep.blocked = true;
        rep.reason = "coordinates fail condition 3 for the special fiber";
        return rep;
      }
      continue;
    }
    const unsigned slack_bt = family_slack(sa.degree, g.degree_in(kY) + pdeg);
    PrecisionBudget cb = budget;
    cb.current = std::min(cb.max, std::max(an.precision_used(), disc.precision));
    auto curve = detail::decide_curve(
        [&](unsigned n) { return sheared_discriminant_ze(g, params, n, slack_bt); }, cb);
    rep.curve = curve.value;
    rep.decision = curve.value.decision;
    rep.reason = curve.value.regular ? curve.value.reason : "Delta_{b,t} is not regular in y";
    rep.precision_used = std::max(rep.precision_used, curve.precision);
    return rep;
  }
  throw TrialsExhausted(opt.max_trials, c1, c2, c3);
}

struct NuStarConstancy {
  bool constant = false;
  std::array<std::optional<unsigned>, 4> generic;
  std::array<std::optional<unsigned>, 4> special;
  unsigned entries_compared = 0;
  CoordChange change;
  bool cond3_checked = false;
  unsigned precision_used = 0;
};

/// (iii) Generic nu* (parameters symbolic) against nu*(V_0), compared entry by entry;
/// entries after the first difference are not computed. The coordinates are nu-transverse
/// for V_0 (condition 3 is only established when entries 3 and 4 are reached).
inline NuStarConstancy nu_star_constant(const SurfaceGerm& germ, const DecisionOptions& opt = {}) {
  NuStarConstancy out;
  const MPoly& f = germ.f;
  const auto params = germ.param_indices();
  auto done = [&](unsigned k) {
    out.entries_compared = k;
    out.constant = k == 4 && out.generic == out.special;
    return out;
  };
  Multiplicities m = polynomial_multiplicities(f, detail::geometric_indices(), params);
  out.generic[0] = m.generic;
  out.special[0] = m.special;
  if (!m.equal()) return done(1);

  SearchOptions so = opt.search();
  so.need_cond3 = false;
  if (opt.fixed_coordinates) so.max_trials = 1;
  else so.first_trial = 1;
  MPoly f0 = detail::fiber_at_zero(f, params);

  while (true) {
    TransverseCoordinates tc = search_nu_transverse(f0, so);
    FiberAnalyzer& an = *tc.analyzer;
    out.change = tc.change;
    MPoly g = apply(tc.change, f);
    const FiberStageA& sa = an.a();
    PrecisionBudget budget = default_budget(g, kZ, opt.max_precision);
    const unsigned slack = family_slack(std::max(1u, sa.degree), detail::param_degree(g, params));

    // Entry 2. A unit D_f(0) makes the generic discriminant a unit as well.
    out.special[1] = sa.unit ? 0 : sa.m_Delta;
    if (sa.unit) {
      out.generic[1] = 0;
      out.special[2] = out.generic[2] = 1;
      out.special[3] = out.generic[3] = 0;
      out.cond3_checked = true;
      out.precision_used = an.precision_used();
      return done(4);
    }
    budget.current = std::min(budget.max, std::max(budget.current, sa.m_Delta + slack + 1));
    auto fam = with_adequate_precision(
        [&](unsigned n) {
          LocalDiscriminant ld = local_discriminant(g, n);
          Order o = equimultiple_along_params(ld.D, {kX, kY}, params).generic_mult;
          require_precision(ld.D, sa.m_Delta + 1 + slack, "discriminant family");
          if (!o.is_finite()) throw InsufficientPrecision("generic discriminant", ld.D.precision());
          return std::make_pair(o.value(), ld.D);
        },
        budget);
    out.generic[1] = fam.value.first;
    out.precision_used = std::max(an.precision_used(), fam.precision);
    if (out.generic[1] != out.special[1]) return done(2);

    // Entries 3 and 4 need nu-transverse coordinates.
    if (!an.c().decision) {
      if (opt.fixed_coordinates) throw TrialsExhausted(1, 0, 0, 1);
      so.max_trials -= tc.change.trial + 1 - so.first_trial;
      so.first_trial = tc.change.trial + 1;
      continue;
    }
    out.cond3_checked = true;
    const FiberStageB& sb = an.b();
    out.special[2] = sb.i0;
    out.special[3] = sb.m_D;

    PrecisionBudget cb = budget;
    cb.current = std::min(cb.max, std::max(fam.precision, sb.m_D + sa.m_Delta + slack + 1));
    auto chain = with_stable_precision(
        [&](unsigned n) {
          LocalDiscriminant ld = local_discriminant(g, n);
          Preparation prep = prepare(ld.D, kY, n);
          DiscChain c = first_nonvanishing(prep.w, sb.i0);
          if (c.first_nonzero > sb.i0)
            throw InsufficientPrecision("generic generalized discriminant index", prep.w.precision());
          unsigned i0 = c.first_nonzero;
          if (i0 < sb.i0) return std::make_pair(i0, 0u);
          const TruncSeries& e = c.at(i0);
          require_precision(e, sb.m_D + 1 + slack, "generalized discriminant family");
          Order o = equimultiple_along_params(e, {kX}, params).generic_mult;
          if (!o.is_finite()) throw InsufficientPrecision("generic generalized discriminant", e.precision());
          return std::make_pair(i0, o.value());
        },
        cb);
    out.precision_used = std::max(out.precision_used, chain.precision);
    out.generic[2] = chain.value.first;
    if (out.generic[2] != out.special[2]) return done(3);
    out.generic[3] = chain.value.second;
    return done(4);
  }
}

struct HarnessRun {
  std::uint64_t seed = 0;
  FamilyReport nutze;
  FamilyReport ze;
  NuStarConstancy nustar;
};

struct ConsistencyReport {
  std::vector<HarnessRun> runs;
  bool consistent = true;
  bool decision = false;
  std::vector<std::string> defects;
};

/// The three conditions of the equivalence theorem, decided independently for each seed.
inline ConsistencyReport consistency_harness(const SurfaceGerm& germ, const std::vector<std::uint64_t>& seeds,
                                          DecisionOptions opt = {}) {
  ConsistencyReport rep;
  bool first = true;
  for (auto seed : seeds) {
    opt.seed = seed;
    HarnessRun run;
    run.seed = seed;
    run.nutze = nu_transverse_ZE(germ, opt);
    run.ze = family_zariski_equisingular(germ, opt);
    run.nustar = nu_star_constant(germ, opt);
    const bool a = run.nutze.decision, b = run.ze.decision, c = run.nustar.constant;
    if (a != b || b != c) {
      rep.consistent = false;
      rep.defects.push_back("seed " + std::to_string(seed) + ": (i) " + (a ? "yes" : "no") + ", (ii) " +
                            (b ? "yes" : "no") + ", (iii) " + (c ? "yes" : "no"));
    }
    if (first) rep.decision = b;
    else if (rep.decision != b) {
      rep.consistent = false;
      rep.defects.push_back("seed " + std::to_string(seed) + ": decision differs from the first seed");
    }
    first = false;
    rep.runs.push_back(std::move(run));
  }
  return rep;
}

struct InvarianceReport {
  bool equal = true;
  std::vector<std::uint64_t> seeds;
  std::vector<MultiplicitySequence> sequences;
};

/// nu* computed in the coordinate systems found from several seeds.
inline InvarianceReport coordinate_invariance_test(const MPoly& f, const std::vector<std::uint64_t>& seeds,
                                                   SearchOptions opt = {}) {
  InvarianceReport rep;
  for (auto seed : seeds) {
    opt.seed = seed;
    rep.seeds.push_back(seed);
    rep.sequences.push_back(multiplicity_sequence(f, opt).mu);
    if (rep.sequences.back() != rep.sequences.front()) rep.equal = false;
  }
  return rep;
}

struct SemicontinuitySample {
  std::vector<Rat> point;
  std::strong_ordering order = std::strong_ordering::equal;  // nu*(V_t0) vs nu*(V_0)
  unsigned entries_compared = 0;
  std::array<std::optional<unsigned>, 4> at_point;
  std::array<std::optional<unsigned>, 4> at_zero;
};

struct SemicontinuityReport {
  bool holds = true;
  std::vector<SemicontinuitySample> samples;
};

/// The fiber f(x, y, z, t0).
inline MPoly fiber_at(const SurfaceGerm& germ, const std::vector<Rat>& point) {
  if (point.size() != germ.params.size()) throw InputError("sample point has the wrong number of coordinates");
  MPoly g = germ.original;
  for (std::size_t i = 0; i < point.size(); ++i)
    g = substitute(g, 3 + i, MPoly::constant(g.vars(), point[i]));
  g = g.with_vars(geometric_vars());
  if (g.is_zero()) throw InputError("the fiber over a sample point is identically zero");
  return g;
}

/// nu*(V_t0) <= nu*(V_0) lexicographically at each sample point, compared lazily.
inline SemicontinuityReport semicontinuity_sample(const SurfaceGerm& germ,
                                                  const std::vector<std::vector<Rat>>& points,
                                                  const SearchOptions& opt = {}) {
  SemicontinuityReport rep;
  LazyNuStar zero(detail::fiber_at_zero(germ.original, germ.param_indices()), opt);
  for (const auto& p : points) {
    SemicontinuitySample s;
    s.point = p;
    LazyNuStar at(squarefree_part(fiber_at(germ, p)), opt);
    auto [ord, k] = compare_lazy(at, zero);
    s.order = ord;
    s.entries_compared = k;
    for (unsigned i = 0; i < k; ++i) {
      s.at_point[i] = at.entry(i);
      s.at_zero[i] = zero.entry(i);
    }
    if (ord == std::strong_ordering::greater) rep.holds = false;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace zeq
