#pragma once

// Multivariate gcd by recursion on variables: content/primitive-part splitting in a main
// variable, and a subresultant PRS for the primitive parts.

#include <vector>

#include "zeq/poly/mpoly.hpp"

namespace zeq {

MPoly gcd(const MPoly& a, const MPoly& b);

namespace detail {

/// Smallest-index variable that a or b depends on; -1 when both are constants.
inline int main_variable(const MPoly& a, const MPoly& b) {
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a.depends_on(i) || b.depends_on(i)) return static_cast<int>(i);
  return -1;
}

inline MPoly content_in(const MPoly& p, std::size_t var) {
  MPoly c(p.vars());
  for (const auto& coeff : coefficients_in(p, var)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? normalized(coeff) : gcd(c, coeff);
    if (c.is_constant()) break;
  }
  return c;
}

/// Pseudo-remainder of a by b in `var`: lc(b)^(deg a - deg b + 1) * a mod b.
inline MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  auto bc = coefficients_in(b, var);
  const unsigned db = static_cast<unsigned>(bc.size() - 1);
  const MPoly& lb = bc.back();
  MPoly r = a;
  unsigned da = r.degree_in(var);
  unsigned steps = da >= db ? da - db + 1 : 0;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    MPoly lr = coefficients_in(r, var).back();
    Monomial shift;
    shift.exp[var] = static_cast<std::uint16_t>(dr - db);
    r = r * lb - (b * lr).times_term(shift, Rat(1));
    --steps;
  }
  if (steps > 0) r = r * pow(lb, steps);
  return r;
}

/// gcd of two polynomials primitive in `var`, via the subresultant PRS.
inline MPoly primitive_gcd(MPoly a, MPoly b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  MPoly g = MPoly::constant(a.vars(), Rat(1));
  MPoly h = g;
  while (true) {
    unsigned delta = a.degree_in(var) - b.degree_in(var);
    MPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return MPoly::constant(a.vars(), Rat(1));
    a = b;
    b = divide_exact(r, g * pow(h, delta));
    g = coefficients_in(a, var).back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = divide_exact(pow(g, delta), pow(h, delta - 1));
    }
  }
  return divide_exact(b, content_in(b, var));
}

}  // namespace detail

/// Greatest common divisor, normalized to leading coefficient 1; gcd(0, 0) = 0.
inline MPoly gcd(const MPoly& a_in, const MPoly& b_in) {
  auto vars = detail::union_vars(a_in.vars(), b_in.vars());
  MPoly a = a_in.with_vars(vars);
  MPoly b = b_in.with_vars(vars);
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  int mv = detail::main_variable(a, b);
  if (mv < 0) return MPoly::constant(vars, Rat(1));
  auto v = static_cast<std::size_t>(mv);
  if (!a.depends_on(v)) return gcd(a, detail::content_in(b, v));
  if (!b.depends_on(v)) return gcd(detail::content_in(a, v), b);
  MPoly ca = detail::content_in(a, v);
  MPoly cb = detail::content_in(b, v);
  MPoly pa = divide_exact(a, ca);
  MPoly pb = divide_exact(b, cb);
  MPoly content = gcd(ca, cb);
  MPoly prim = detail::primitive_gcd(pa, pb, v);
  return normalized(content * prim);
}

/// Product of the distinct irreducible factors: p / gcd(p, dp/dv_1, ..., dp/dv_n).
inline MPoly squarefree_part(const MPoly& p) {
  if (p.is_zero()) throw InputError("squarefree part of zero");
  MPoly g = p;
  for (std::size_t v = 0; v < p.nvars() && !g.is_constant(); ++v) {
    if (!p.depends_on(v)) continue;
    g = gcd(g, derivative(p, v));
  }
  if (g.is_constant()) return p;
  return divide_exact(p, g);
}

}  // namespace zeq
