#pragma once

// nu-transversality of a coordinate system for a surface germ without parameters, and
// the seeded search for such coordinates.
//
//   cond1  the z axis is not in the tangent cone of V
//   cond2  the y axis is transverse to the discriminant curve Delta_0
//   cond3  the discriminant curves Delta_b of the projections (x, y, z) -> (x, y - bz)
//          form a Zariski equisingular family in b

#include <optional>
#include <string>
#include <vector>

#include "zeq/equising/local.hpp"
#include "zeq/weier/precision.hpp"

namespace zeq {

struct FiberStageA {
  unsigned m_V = 0;
  bool cond1 = false;
  MPoly tangent_cone;
  unsigned degree = 0;  // Weierstrass degree in z
  bool unit = false;    // D_f(0) != 0
  TruncSeries D;
  unsigned m_Delta = 0;
  Order y_order;
  bool cond2 = false;
};

struct FiberStageB {
  unsigned degree = 0;  // order of D_f along the y axis
  unsigned i0 = 0;
  unsigned m_D = 0;
  friend bool operator==(const FiberStageB&, const FiberStageB&) = default;
};

/// Multiplicity, tangent cone, local discriminant and the transversality of the y axis.
inline FiberStageA fiber_stage_a(const MPoly& f, unsigned n) {
  FiberStageA a;
  a.m_V = order_at_origin(f).value();
  a.tangent_cone = lowest_form(f);
  Order oz = order_in_var(f, kZ);
  a.cond1 = oz.is_finite() && oz.value() == a.m_V;
  if (!a.cond1) return a;
  LocalDiscriminant ld = local_discriminant(f, n);
  a.degree = ld.w.degree();
  a.D = ld.D;
  a.unit = ld.unit;
  if (a.unit) {
    a.cond2 = true;
    return a;
  }
  Order o = a.D.order();
  if (!o.is_finite()) throw InsufficientPrecision("multiplicity of the discriminant", a.D.precision());
  a.m_Delta = o.value();
  a.y_order = order_in_var(a.D, kY);
  a.cond2 = a.y_order.is_finite() && a.y_order.value() == a.m_Delta;
  return a;
}

/// First nonvanishing generalized discriminant of D_f in y and its multiplicity.
inline FiberStageB fiber_stage_b(const FiberStageA& a, unsigned n) {
  FiberStageB b;
  Preparation prep = prepare(a.D, kY, n);
  b.degree = prep.w.degree();
  DiscChain chain = first_nonvanishing(prep.w);
  b.i0 = chain.first_nonzero;
  Order o = chain.at(b.i0).order();
  if (!o.is_finite()) throw InsufficientPrecision("multiplicity of D^i0", chain.at(b.i0).precision());
  b.m_D = o.value();
  return b;
}

/// A variable name not in `taken`, preferring `base`.
inline std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
  auto free = [&](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) == taken.end();
  };
  if (free(base)) return base;
  for (int i = 1;; ++i)
    if (free(base + std::to_string(i))) return base + std::to_string(i);
}

/// f(x, y + b z, z, ...) with a fresh parameter b appended to the variables.
inline MPoly sheared_family(const MPoly& f, std::string* b_name = nullptr) {
  auto vars = f.vars();
  std::string b = fresh_name(vars, "b");
  vars.push_back(b);
  MPoly g = f.with_vars(vars);
  MPoly shift = MPoly::variable(vars, "y") + MPoly::variable(vars, b) * MPoly::variable(vars, "z");
  if (b_name) *b_name = b;
  return substitute(g, kY, shift);
}

/// Slack, in degrees, for reading generic multiplicities of a family of discriminants off
/// truncated series: (2d - 2) max(1, parameter degree of the family).
inline unsigned family_slack(unsigned d, unsigned param_degree) {
  return (d >= 1 ? 2 * d - 2 : 0) * std::max(1u, param_degree);
}

/// Plane-curve family Delta_b for a germ (or family) f; parameters of f are passed along.
inline CurveFamilyResult sheared_discriminant_ze(const MPoly& f, const std::vector<std::size_t>& params,
                                                 unsigned n, unsigned slack) {
  std::string b;
  MPoly fb = sheared_family(f, &b);
  LocalDiscriminant ld = local_discriminant(fb, n);
  std::vector<std::size_t> all = params;
  all.push_back(fb.index_of(b));
  return plane_curve_family_ze(ld.D, kX, kY, all, n, slack);
}

struct NuTransverseReport {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool cond3_checked = false;
  std::string tangent_cone;
  Order m_Delta;
  Order y_order;
  CurveFamilyResult cond3_detail;

  bool passes() const { return cond1 && cond2 && cond3; }
};

/// Lazily evaluated analysis of one germ (no parameters) in fixed coordinates.
class FiberAnalyzer {
 public:
  FiberAnalyzer(MPoly f, PrecisionBudget budget) : f_(std::move(f)), budget_(budget) {}

  const MPoly& f() const { return f_; }

  const FiberStageA& a() {
    if (!a_) {
      auto r = with_adequate_precision([&](unsigned n) { return fiber_stage_a(f_, n); }, budget_);
      a_ = r.value;
      note(r.precision);
    }
    return *a_;
  }

  /// Requires cond1 and cond2 and a non-unit discriminant.
  const FiberStageB& b() {
    if (!b_) {
      a();
      auto r = with_stable_precision(
          [&](unsigned n) {
            FiberStageA a = fiber_stage_a(f_, n);
            return fiber_stage_b(a, n);
          },
          budget_);
      b_ = r.value;
      note(r.precision);
    }
    return *b_;
  }

  /// cond3; requires cond1 and cond2.
  const CurveFamilyResult& c() {
    if (!c_) {
      const FiberStageA& sa = a();
      if (sa.unit) {
        CurveFamilyResult r;
        r.decision = r.unit = true;
        r.reason = "unit discriminant";
        c_ = r;
        return *c_;
      }
      const FiberStageB& sb = b();
      unsigned slack = family_slack(sa.degree, f_.degree_in(kY));
      PrecisionBudget cb = budget_;
      cb.current = std::min(cb.max, std::max(cb.current, sb.m_D + sa.m_Delta + slack + 1));
      auto r = with_adequate_precision(
          [&](unsigned n) { return sheared_discriminant_ze(f_, {}, n, slack); }, cb);
      c_ = r.value;
      note(r.precision);
    }
    return *c_;
  }

  NuTransverseReport report(bool with_cond3) {
    NuTransverseReport r;
    const FiberStageA& sa = a();
    r.cond1 = sa.cond1;
    r.tangent_cone = sa.tangent_cone.to_string();
    if (!r.cond1) return r;
    r.cond2 = sa.cond2;
    r.m_Delta = sa.unit ? Order::finite(0) : Order::finite(sa.m_Delta);
    r.y_order = sa.unit ? Order::finite(0) : sa.y_order;
    if (!r.cond2 || !with_cond3) return r;
    r.cond3_detail = c();
    r.cond3 = r.cond3_detail.decision;
    r.cond3_checked = true;
    return r;
  }

  unsigned precision_used() const { return precision_used_; }

 private:
  void note(unsigned p) { precision_used_ = std::max(precision_used_, p); }

  MPoly f_;
  PrecisionBudget budget_;
  unsigned precision_used_ = 0;
  std::optional<FiberStageA> a_;
  std::optional<FiberStageB> b_;
  std::optional<CurveFamilyResult> c_;
};

inline PrecisionBudget germ_budget(const MPoly& f, unsigned max_precision_override) {
  return default_budget(f, kZ, max_precision_override);
}

/// Direct check of the three conditions for f in its current coordinates.
inline NuTransverseReport check_nu_transverse(const MPoly& f, unsigned max_precision = 0) {
  FiberAnalyzer an(f, germ_budget(f, max_precision));
  return an.report(true);
}

struct SearchOptions {
  std::uint64_t seed = 1;
  unsigned max_trials = 32;
  unsigned max_precision = 0;  // 0: default ceiling
  bool need_cond3 = true;      // false: accept on cond1 and cond2 (cond3 checked on demand)
  unsigned first_trial = 0;
};

struct TransverseCoordinates {
  CoordChange change;
  std::shared_ptr<FiberAnalyzer> analyzer;
  NuTransverseReport report;
};

/// Tries coordinate_change(seed, k) for k = first_trial, ... and returns the first change
/// passing the requested conditions.
inline TransverseCoordinates search_nu_transverse(const MPoly& f, const SearchOptions& opt) {
  unsigned fail1 = 0, fail2 = 0, fail3 = 0;
  for (unsigned k = opt.first_trial; k < opt.first_trial + opt.max_trials; ++k) {
    CoordChange change = coordinate_change(opt.seed, k);
    MPoly g = apply(change, f);
    auto an = std::make_shared<FiberAnalyzer>(g, germ_budget(g, opt.max_precision));
    NuTransverseReport rep = an->report(opt.need_cond3);
    if (!rep.cond1) {
      ++fail1;
    } else if (!rep.cond2) {
      ++fail2;
    } else if (opt.need_cond3 && !rep.cond3) {
      ++fail3;
    } else {
      return {change, an, rep};
    }
  }
  throw TrialsExhausted(opt.max_trials, fail1, fail2, fail3);
}

}  // namespace zeq
