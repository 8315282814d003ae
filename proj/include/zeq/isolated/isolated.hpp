#pragma once

// Isolated singularities: Milnor numbers of plane curves from local resultants of the
// partials, the Teissier numbers mu^2 and mu^1 of a surface, and the identities linking
// them to the multiplicity sequence.

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "zeq/disc/resultant.hpp"
#include "zeq/equising/nustar.hpp"

namespace zeq {

inline const std::vector<std::string>& curve_vars() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

namespace detail {

inline bool vanishes_at_origin(const MPoly& p) { return p.constant_term() == 0; }

/// The curve g(x + e y, y) for the shear e of trial k (k = 0: g itself).
inline MPoly sheared_curve(const MPoly& g, std::uint64_t seed, unsigned trial) {
  if (trial == 0) return g;
  Matrix<Rat> m = Matrix<Rat>::identity(2, Rat(0), Rat(1));
  m(0, 1) = coordinate_change(seed, trial).matrix(0, 1);
  return substitute_linear(g, m, curve_vars()).with_vars(curve_vars());
}

}  // namespace detail

/// Throws NotIsolated if the partials of the plane curve g share a factor through 0.
inline void require_isolated_curve(const MPoly& g) {
  MPoly gx = derivative(g, kX), gy = derivative(g, kY);
  if (gx.is_zero() && gy.is_zero()) throw NotIsolated("curve has vanishing partial derivatives");
  MPoly h = gcd(gx, gy);
  if (!h.is_constant() && detail::vanishes_at_origin(h))
    throw NotIsolated("partial derivatives share the factor " + h.to_string() + " through the origin");
}

/// ord_x Res_y(W, g_x), W the Weierstrass polynomial of g_y in y: the intersection number
/// of the partials at 0. Throws NotRegular if g_y is not regular in y.
inline unsigned local_partials_resultant_order(const MPoly& g, unsigned max_precision = 0) {
  MPoly gx = derivative(g, kX), gy = derivative(g, kY);
  if (!detail::vanishes_at_origin(gx) || !detail::vanishes_at_origin(gy)) return 0;
  regularity(gy, kY);
  auto r = with_adequate_precision(
      [&](unsigned n) {
        WPoly w = weierstrass(gy, kY, n).w;
        std::vector<TruncSeries> qc;
        for (const auto& c : coefficients_in(gx, kY)) qc.push_back(TruncSeries::exact(c));
        if (gx.is_zero()) throw NotIsolated("curve has a vanishing partial derivative");
        TruncSeries res = resultant(w.coefficients(), qc, g.vars());
        Order o = res.order();
        if (o.is_infinite()) throw NotIsolated("partial derivatives share a branch through the origin");
        if (!o.is_finite()) throw InsufficientPrecision("resultant of the partials", res.precision());
        return o.value();
      },
      default_budget(gy, kY, max_precision));
  return r.value;
}

/// Milnor number of the plane curve germ g(x, y) at 0, minimized over `trials` seeded
/// shears (trial 0 is the identity).
inline unsigned milnor_plane_curve(const MPoly& g_in, std::uint64_t seed = 1, unsigned trials = 3,
                                   unsigned max_precision = 0) {
  MPoly g = g_in.with_vars(curve_vars());
  if (g.is_zero()) throw InputError("the zero polynomial does not define a curve germ");
  if (!detail::vanishes_at_origin(g)) throw InputError("curve does not pass through the origin");
  require_isolated_curve(g);
  unsigned best = ~0u;
  for (unsigned k = 0; k <= trials; ++k) {
    try {
      best = std::min(best, local_partials_resultant_order(detail::sheared_curve(g, seed, k), max_precision));
    } catch (const NotRegular&) {
    }
  }
  if (best == ~0u) throw TrialsExhausted(trials + 1, 0, trials + 1, 0);
  return best;
}

/// Throws NotIsolated if the singular locus of f = 0 contains a curve through 0: in
/// generic coordinates, Res_z(f, f_z) and Res_z(f, f_x + c f_y) would share a factor
/// vanishing at 0.
inline void require_isolated_surface(const MPoly& f_in, std::uint64_t seed = 1) {
  MPoly f = f_in.with_vars(geometric_vars());
  if (order_at_origin(f).value() <= 1) return;
  MPoly g = apply(coordinate_change(seed, 1), f);
  MPoly gz = derivative(g, kZ);
  MPoly other = derivative(g, kX) + derivative(g, kY).scaled(coordinate_change(seed, 2).matrix(0, 1));
  if (gz.is_zero() || other.is_zero()) throw NotIsolated("surface has vanishing partial derivatives");
  MPoly h = gcd(resultant(g, gz, "z"), resultant(g, other, "z"));
  if (!h.is_constant() && detail::vanishes_at_origin(h))
    throw NotIsolated("singular locus contains a curve through the origin");
}

/// The section of f by the plane X = 0 of the coordinate system of (seed, trial), as a
/// curve in (x, y) = (Y, Z).
inline MPoly plane_section(const MPoly& f, std::uint64_t seed, unsigned trial) {
  MPoly g = apply(coordinate_change(seed, trial), f.with_vars(geometric_vars()));
  MPoly s = set_zero(g, {kX});
  // Rename (y, z) to (x, y).
  MPoly out(curve_vars());
  for (const auto& [m, c] : s.terms()) {
    Monomial r;
    r.exp[kX] = m.exp[kY];
    r.exp[kY] = m.exp[kZ];
    out += MPoly::monomial(curve_vars(), r, c);
  }
  return out;
}

struct TeissierNumbers {
  unsigned mu2 = 0;
  unsigned mu1 = 0;
};

/// mu^1 = mult - 1 and mu^2 = Milnor number of a generic plane section, minimized over
/// `trials` sections.
inline TeissierNumbers mu2_mu1(const MPoly& f_in, std::uint64_t seed = 1, unsigned trials = 3) {
  MPoly f = f_in.with_vars(geometric_vars());
  if (f.is_zero()) throw InputError("the zero polynomial does not define a surface germ");
  require_isolated_surface(f, seed);
  TeissierNumbers t;
  t.mu1 = order_at_origin(f).value() - 1;
  unsigned best = ~0u;
  for (unsigned k = 1; k <= trials; ++k) {
    MPoly s = squarefree_part(plane_section(f, seed, k));
    best = std::min(best, milnor_plane_curve(s, seed, trials));
  }
  t.mu2 = best;
  return t;
}

struct MultDiscriminantFormula {
  unsigned mult_delta = 0;
  TeissierNumbers mu;
  bool holds = false;
};

/// mult D_f = mu^2 + mu^1 for a generic projection.
inline MultDiscriminantFormula check_mult_discriminant(const MPoly& f, std::uint64_t seed = 1) {
  MultDiscriminantFormula r;
  r.mu = mu2_mu1(f, seed);
  SearchOptions opt;
  opt.seed = seed;
  LazyNuStar nu(squarefree_part(f.with_vars(geometric_vars())), opt);
  r.mult_delta = nu.entry(1);
  r.holds = r.mult_delta == r.mu.mu2 + r.mu.mu1;
  return r;
}

struct CurveDiscriminantFormula {
  unsigned mult_disc = 0;  // order of Disc_y of the Weierstrass polynomial of c
  unsigned milnor = 0;
  unsigned mult = 0;
  bool holds = false;
};

/// mult Disc(c) = mu(c) + mult(c) - 1 for a plane curve c in generic coordinates.
inline CurveDiscriminantFormula check_curve_discriminant(const MPoly& c_in, std::uint64_t seed = 1, unsigned max_trials = 32) {
  MPoly c = c_in.with_vars(curve_vars());
  CurveDiscriminantFormula r;
  r.milnor = milnor_plane_curve(c, seed);
  r.mult = order_at_origin(c).value();
  for (unsigned k = 1; k <= max_trials; ++k) {
    MPoly h = detail::sheared_curve(c, seed, k);
    unsigned d;
    try {
      d = regularity(h, kY);
    } catch (const NotRegular&) {
      continue;
    }
    if (d != r.mult) continue;  // the y axis is tangent to c
    auto res = with_adequate_precision(
        [&](unsigned n) {
          TruncSeries disc = discriminant(weierstrass(h, kY, n).w);
          Order o = disc.order();
          if (!o.is_finite()) throw InsufficientPrecision("discriminant of the curve", disc.precision());
          return o.value();
        },
        default_budget(h, kY));
    r.mult_disc = res.value;
    r.holds = r.mult_disc + 1 == r.milnor + r.mult;
    return r;
  }
  throw TrialsExhausted(max_trials, 0, max_trials, 0);
}

struct SurfaceDiscriminantFormula {
  MultiplicitySequence nu;
  unsigned milnor_delta = 0;  // mu of the discriminant curve
  bool applicable = false;    // Res_z(f, f_z) is D_f times a unit
  bool holds = false;
};

/// mult D_{D_f} = mu(D_f) + mult D_f - 1 for an isolated surface singularity, with D_f
/// represented by Res_z(f, f_z) in the nu-transverse coordinates.
inline SurfaceDiscriminantFormula check_surface_discriminant(const MPoly& f_in, std::uint64_t seed = 1) {
  MPoly f = squarefree_part(f_in.with_vars(geometric_vars()));
  require_isolated_surface(f, seed);
  SurfaceDiscriminantFormula r;
  SearchOptions opt;
  opt.seed = seed;
  LazyNuStar nu(f, opt);
  r.nu = nu.all();
  if (r.nu.smooth_convention()) {
    r.applicable = r.holds = true;
    return r;
  }
  MPoly g = apply(nu.change(), f);
  MPoly delta = resultant(g, derivative(g, kZ), "z").with_vars(curve_vars());
  r.applicable = order_at_origin(delta).value() == r.nu[1] && r.nu[2] == 1;
  if (!r.applicable) return r;
  r.milnor_delta = milnor_plane_curve(delta, seed);
  r.holds = r.nu[3] + 1 == r.milnor_delta + r.nu[1];
  return r;
}

/// A seeded semi-quasihomogeneous germ z^2 + x^a + y^b + (terms of weighted degree > 1),
/// 2 <= a, b and a + b <= 6; isolated with mu = (a - 1)(b - 1).
inline MPoly random_isolated_germ(std::uint64_t seed, unsigned index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), index, 0x5eedu};
  std::mt19937_64 rng(seq);
  const auto& v = geometric_vars();
  unsigned a, b;
  do {
    a = 2 + rng() % 3;
    b = 2 + rng() % 3;
  } while (a + b > 6);
  auto mono = [&](unsigned i, unsigned j, unsigned k, Rat c) {
    Monomial m;
    m.exp[kX] = i;
    m.exp[kY] = j;
    m.exp[kZ] = k;
    return MPoly::monomial(v, m, c);
  };
  MPoly f = mono(0, 0, 2, Rat(1)) + mono(a, 0, 0, Rat(1)) + mono(0, b, 0, Rat(1));
  for (unsigned added = 0; added < 2;) {
    unsigned i = rng() % 4, j = rng() % 4, k = rng() % 2;
    // weighted degree i/a + j/b + k/2 > 1, i.e. 2bi + 2aj + abk > 2ab
    if (2 * b * i + 2 * a * j + a * b * k <= 2 * a * b || i + j + k > 5) continue;
    long n = 1 + static_cast<long>(rng() % 5);
    Rat c(rng() & 1u ? -n : n, 1 + static_cast<long>(rng() % 3));
    c.canonicalize();
    f += mono(i, j, k, c);
    ++added;
  }
  return f;
}

struct LiteratureData {
  unsigned mu3 = 0;
  unsigned k = 0;
  unsigned phi = 0;
  std::string source;
};

struct IsolatedSequence {
  MultiplicitySequence computed;
  MultiplicitySequence predicted;  // (mu1 + mu0, mu2 + mu1, 1, mu3 + mu2 + 2k + 3 phi)
  TeissierNumbers mu;
  bool holds = false;
};

inline IsolatedSequence isolated_sequence_check(const MPoly& f, const LiteratureData& lit, std::uint64_t seed = 1) {
  IsolatedSequence r;
  SearchOptions opt;
  opt.seed = seed;
  r.computed = multiplicity_sequence(f, opt).mu;
  r.mu = mu2_mu1(f, seed);
  r.predicted.v = {r.mu.mu1 + 1, r.mu.mu2 + r.mu.mu1, 1, lit.mu3 + r.mu.mu2 + 2 * lit.k + 3 * lit.phi};
  r.holds = r.computed == r.predicted;
  return r;
}

}  // namespace zeq
