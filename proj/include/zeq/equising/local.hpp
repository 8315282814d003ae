#pragma once

// Germ-level building blocks: local discriminants, equimultiplicity along the parameter
// germ, and the plane-curve instance of Zariski equisingularity.

#include <optional>
#include <string>
#include <vector>

#include "zeq/disc/chain.hpp"
#include "zeq/equising/germ.hpp"
#include "zeq/weier/weierstrass.hpp"

namespace zeq {

/// Weierstrass data of a series (exact series are prepared to base precision n).
inline Preparation prepare(const TruncSeries& s, std::size_t v, unsigned n) {
  if (s.is_exact()) return weierstrass(s.body(), v, n);
  return weierstrass(s, v);
}

struct LocalDiscriminant {
  WPoly w;        // Weierstrass polynomial of f in z
  DiscChain chain;  // generalized discriminants of w up to the first nonvanishing one
  unsigned j0 = 1;
  TruncSeries D;  // D^{j0}; the discriminant when f is reduced
  bool unit = false;
};

/// idiscr of the Weierstrass polynomial of f in z: d - s + 1 with d = ord_z f and s the
/// number of distinct roots, which is ord_z of the squarefree part of f.
inline unsigned exact_idiscr(const MPoly& f) {
  Order d = order_in_var(f, kZ), s = order_in_var(squarefree_part(f), kZ);
  if (!d.is_finite() || !s.is_finite()) throw NotRegular("z");
  return d.value() - s.value() + 1;
}

/// D^{j0} of the Weierstrass polynomial of f in z, j0 = idiscr (1 for reduced f).
/// Entries that are zero to precision n would overestimate j0; that is detected against
/// the exact index and reported as InsufficientPrecision.
inline LocalDiscriminant local_discriminant(const MPoly& f, unsigned n) {
  LocalDiscriminant out;
  out.w = weierstrass(f, kZ, n).w;
  out.chain = first_nonvanishing(out.w);
  out.j0 = out.chain.first_nonzero;
  if (out.j0 > 1 && out.j0 > exact_idiscr(f))
    throw InsufficientPrecision("first nonvanishing discriminant", n);
  out.D = out.chain.at(out.j0);
  out.unit = out.D.is_unit();
  return out;
}

struct EquimultipleResult {
  Order generic_mult;
  Order special_mult;
  bool equal = false;
};

/// Multiplicity in the geometric variables at parameters = 0 versus the smallest
/// geometric degree carrying a nonzero coefficient. Generic <= special always; they are
/// equal exactly when the family is equimultiple along the parameter germ.
inline EquimultipleResult equimultiple_along_params(const TruncSeries& s,
                                                    const std::vector<std::size_t>& geometric,
                                                    const std::vector<std::size_t>& params) {
  unsigned generic = ~0u, special = ~0u;
  for (const auto& [m, c] : s.body().terms()) {
    unsigned g = 0, p = 0;
    for (auto i : geometric) g += m.exp[i];
    for (auto i : params) p += m.exp[i];
    generic = std::min(generic, g);
    if (p == 0) special = std::min(special, g);
  }
  EquimultipleResult r;
  if (special == ~0u) {
    if (!s.is_exact()) throw InsufficientPrecision("multiplicity at parameters = 0", s.precision());
    r.special_mult = Order::infinite();
  } else {
    r.special_mult = Order::finite(special);
  }
  r.generic_mult = generic == ~0u ? Order::infinite() : Order::finite(generic);
  r.equal = r.generic_mult == r.special_mult;
  return r;
}

struct CurveFamilyResult {
  bool decision = false;
  bool unit = false;           // G(0) != 0
  bool regular = true;         // G regular in y
  bool equimultiple = true;    // G itself equimultiple along the parameters
  unsigned degree = 0;         // order of G along the y axis
  unsigned i0 = 0;             // idiscr of G with the parameters generic
  unsigned special_i0 = 0;     // idiscr of G at parameters = 0
  EquimultipleResult entry;    // of D^{i0}_G in x
  std::string reason;
};

/// Throws InsufficientPrecision unless s is known through total degree needed - 1.
inline void require_precision(const TruncSeries& s, unsigned needed, const std::string& what) {
  if (!s.is_exact() && s.precision() < needed) throw InsufficientPrecision(what, s.precision());
}

/// Plane-curve instance of Zariski equisingularity: G(x, y, params) regular in y, and the
/// first nonvanishing generalized discriminant of G in y equimultiple in x along the
/// parameter germ. A family that is not equimultiple is rejected first (equisingular
/// families of curves are equimultiple).
///
/// Generic multiplicities are read off the known terms, so each series consulted must be
/// known `slack` degrees past its special multiplicity; otherwise InsufficientPrecision.
inline CurveFamilyResult plane_curve_family_ze(const TruncSeries& g, std::size_t x, std::size_t y,
                                               const std::vector<std::size_t>& params, unsigned n,
                                               unsigned slack = 0) {
  CurveFamilyResult r;
  if (g.is_unit()) {
    r.decision = true;
    r.unit = true;
    r.reason = "unit discriminant";
    return r;
  }
  try {
    r.degree = regularity(g, y);
  } catch (const NotRegular&) {
    r.regular = false;
    r.reason = "discriminant not regular in " + g.vars()[y];
    return r;
  }
  EquimultipleResult em = equimultiple_along_params(g, {x, y}, params);
  if (em.special_mult.is_finite())
    require_precision(g, em.special_mult.value() + 1 + slack, "discriminant family");
  if (!em.equal) {
    r.equimultiple = false;
    r.entry = em;
    r.reason = "discriminant not equimultiple along the parameters";
    return r;
  }
  // idiscr can only drop off the special fiber, so the family scan stops at the special
  // index; reaching it means the family entry there vanishes to precision.
  Preparation sp = prepare(set_zero(g, params), y, n);
  DiscChain special = first_nonvanishing(sp.w);
  r.special_i0 = special.first_nonzero;

  Preparation fam = prepare(g, y, n);
  DiscChain chain = first_nonvanishing(fam.w, r.special_i0);
  if (chain.first_nonzero > r.special_i0)
    throw InsufficientPrecision("generalized discriminant index", fam.w.precision());
  r.i0 = chain.first_nonzero;
  if (r.special_i0 > r.i0) {
    r.entry.special_mult = Order::infinite();
    r.entry.generic_mult = chain.at(r.i0).order();
    r.reason = "first nonvanishing generalized discriminant vanishes at parameters = 0";
    return r;
  }
  r.entry = equimultiple_along_params(chain.at(r.i0), {x}, params);
  if (r.entry.special_mult.is_finite())
    require_precision(chain.at(r.i0), r.entry.special_mult.value() + 1 + slack,
                      "generalized discriminant family");
  r.decision = r.entry.equal;
  r.reason = r.decision ? "equimultiple" : "first nonvanishing generalized discriminant not equimultiple";
  return r;
}

}  // namespace zeq
