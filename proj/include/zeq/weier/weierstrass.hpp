#pragma once

// Weierstrass preparation f = u * W at finite precision.
//
// The lifting runs layer by layer in the base degree |beta| (the degree in every variable
// except v). With W = v^d + sum_k W_k, u = sum_k Q_k (layer k homogeneous of base degree
// k), layer k solves
//     v^d Q_k + q0 W_k = r_k,   r_k = F_k - sum_{0<i<k} W_i Q_{k-i},   deg_v W_k < d,
// by W_k = (q0^{-1} r_k) mod v^d and Q_k = (r_k - q0 W_k) / v^d.
//
// Truncation uses the weight w|beta| + e of x^beta v^e, with w = 1 when mult(f) = d and
// w = d otherwise; then every term of W other than v^d has weight >= d, so dropping
// terms of u of weight >= K - d never disturbs terms of weight < K.

#include <algorithm>
#include <string>
#include <vector>

#include "zeq/error.hpp"
#include "zeq/poly/mpoly.hpp"
#include "zeq/poly/series.hpp"

namespace zeq {

/// Monic polynomial v^d + a_1 v^(d-1) + ... + a_d with a_i(0) = 0. The a_i live over the
/// same variable list as the input (they do not involve v).
struct WPoly {
  std::vector<std::string> vars;
  std::size_t var = 0;
  std::vector<TruncSeries> a;  // a[i-1] = a_i

  unsigned degree() const noexcept { return static_cast<unsigned>(a.size()); }
  const std::string& var_name() const { return vars[var]; }

  /// Smallest coefficient precision (kExact when all are exact).
  unsigned precision() const {
    unsigned p = TruncSeries::kExact;
    for (const auto& c : a) p = std::min(p, c.precision());
    return p;
  }

  bool is_exact() const { return precision() == TruncSeries::kExact; }

  /// Coefficients c_0..c_d of v^0..v^d (c_d = 1 exactly).
  std::vector<TruncSeries> coefficients() const {
    const unsigned d = degree();
    std::vector<TruncSeries> c(d + 1);
    c[d] = TruncSeries::constant(vars, Rat(1));
    for (unsigned i = 1; i <= d; ++i) c[d - i] = a[i - 1];
    return c;
  }

  /// The known polynomial data v^d + sum body(a_i) v^(d-i).
  MPoly body() const {
    std::vector<MPoly> c;
    for (const auto& s : coefficients()) c.push_back(s.body());
    return from_coefficients(c, var, vars);
  }

  std::string to_string() const {
    std::string s = body().to_string();
    unsigned p = precision();
    if (p != TruncSeries::kExact) s += "  [coefficients + O(" + std::to_string(p) + ")]";
    return s;
  }
};

struct Preparation {
  WPoly w;
  TruncSeries unit;
};

/// Order of f along the v axis, or NotRegular.
inline unsigned regularity(const MPoly& f, std::size_t v) {
  if (f.is_zero()) throw InputError("regularity of the zero polynomial");
  Order o = order_in_var(f, v);
  if (!o.is_finite()) throw NotRegular(f.vars()[v]);
  return o.value();
}

inline unsigned regularity(const MPoly& f, std::string_view v) {
  return regularity(f, f.index_of(v));
}

/// Order along the v axis of a series; InsufficientPrecision when no pure power of v is
/// known (the series may still be regular at higher precision).
inline unsigned regularity(const TruncSeries& f, std::size_t v) {
  Order o = order_in_var(f, v);
  if (o.is_finite()) return o.value();
  if (o.is_infinite()) throw NotRegular(f.vars()[v]);
  throw InsufficientPrecision("regularity in " + f.vars()[v], f.precision());
}

namespace detail {

inline unsigned weight_of(const Monomial& m, std::size_t v, unsigned w) {
  return w * (m.degree() - m.exp[v]) + m.exp[v];
}

inline MPoly weight_truncated(const MPoly& p, std::size_t v, unsigned w, unsigned bound) {
  return p.filtered([&](const Monomial& m) { return weight_of(m, v, w) < bound; });
}

/// p / v^shift; every term must be divisible.
inline MPoly shift_down(const MPoly& p, std::size_t v, unsigned shift) {
  std::vector<MPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    if (m.exp[v] < shift) throw std::logic_error("Weierstrass lifting: inexact shift");
    Monomial nm = m;
    nm.exp[v] = static_cast<std::uint16_t>(nm.exp[v] - shift);
    out.emplace_back(nm, c);
  }
  return MPoly::from_terms(p.vars(), std::move(out));
}

inline unsigned ceil_div(unsigned a, unsigned b) { return (a + b - 1) / b; }

/// Fast path: f already monic of degree d in v with the lower coefficients vanishing at 0.
inline bool is_weierstrass_polynomial(const MPoly& f, std::size_t v, unsigned d) {
  if (f.degree_in(v) != d) return false;
  auto c = coefficients_in(f, v);
  if (!(c[d].is_constant() && c[d].constant_term() == 1)) return false;
  for (unsigned i = 0; i < d; ++i)
    if (c[i].constant_term() != 0) return false;
  return true;
}

/// Lifting on the terms of f of weight < kw.
inline Preparation weierstrass_lift(const MPoly& f, std::size_t v, unsigned d, unsigned w,
                                    unsigned kw) {
  const auto& vars = f.vars();
  const unsigned max_k = (kw - 1) / w;
  std::vector<std::vector<MPoly::Term>> layers(max_k + 1);
  for (const auto& [m, c] : f.terms()) {
    if (weight_of(m, v, w) >= kw) continue;
    layers[m.degree() - m.exp[v]].emplace_back(m, c);
  }
  std::vector<MPoly> F;
  F.reserve(layers.size());
  for (auto& l : layers) F.push_back(MPoly::from_terms(vars, std::move(l)));

  const MPoly q0 = shift_down(F[0], v, d);
  const MPoly t = invert_unit(TruncSeries(q0, d)).body();
  auto low_v = [&](const MPoly& p) {
    return p.filtered([&](const Monomial& m) { return m.exp[v] < d; });
  };

  std::vector<MPoly> W(max_k + 1, MPoly(vars));
  std::vector<MPoly> Q(max_k + 1, MPoly(vars));
  Q[0] = weight_truncated(q0, v, w, kw - d);
  // Within layer k (base degree k) weight < kw means total degree < kw - w k + k.
  for (unsigned k = 1; k <= max_k; ++k) {
    const unsigned bound = kw - w * k + k;
    MPoly r = F[k];
    for (unsigned i = 1; i < k; ++i) {
      if (W[i].is_zero() || Q[k - i].is_zero()) continue;
      r -= mul_truncated(W[i], Q[k - i], bound);
    }
    if (r.is_zero()) continue;
    W[k] = low_v(mul_truncated(t, low_v(r), std::min(bound, k + d)));
    MPoly rem = r - mul_truncated(q0, W[k], bound);
    Q[k] = weight_truncated(shift_down(rem, v, d), v, w, kw - d);
  }

  WPoly out;
  out.vars = vars;
  out.var = v;
  std::vector<std::vector<MPoly::Term>> coeff_terms(d);
  for (unsigned k = 1; k <= max_k; ++k)
    for (const auto& [m, c] : W[k].terms()) {
      Monomial nm = m;
      unsigned e = nm.exp[v];
      nm.exp[v] = 0;
      coeff_terms[d - 1 - e].emplace_back(nm, c);  // v^e multiplies a_{d-e}
    }
  for (unsigned i = 1; i <= d; ++i) {
    unsigned prec = ceil_div(kw - (d - i), w);
    out.a.emplace_back(MPoly::from_terms(vars, std::move(coeff_terms[i - 1])), prec);
  }
  MPoly u(vars);
  for (const auto& q : Q) u += q;
  return {std::move(out), TruncSeries(u, ceil_div(kw - d, w))};
}

inline Preparation weierstrass_impl(const MPoly& body, std::size_t v, unsigned d, unsigned kw,
                                    bool exact_input, unsigned n) {
  const bool same_mult = order_at_origin(body).value() == d;
  const unsigned w = same_mult ? 1 : d;
  if (exact_input) kw = w * n + d;
  return weierstrass_lift(body, v, d, w, kw);
}

}  // namespace detail

/// Weierstrass data of a polynomial; the a_i are correct modulo base degree >= N (their
/// recorded precision is at least N).
inline Preparation weierstrass(const MPoly& f, std::size_t v, unsigned n) {
  if (n == 0) throw std::invalid_argument("weierstrass: precision must be >= 1");
  const unsigned d = regularity(f, v);
  if (d == 0) throw InputError("weierstrass: unit input has degree 0");
  if (detail::is_weierstrass_polynomial(f, v, d)) {
    WPoly w;
    w.vars = f.vars();
    w.var = v;
    auto c = coefficients_in(f, v);
    for (unsigned i = 1; i <= d; ++i) w.a.push_back(TruncSeries::exact(c[d - i]));
    return {std::move(w), TruncSeries::constant(f.vars(), Rat(1))};
  }
  return detail::weierstrass_impl(f, v, d, 0, true, n);
}

inline Preparation weierstrass(const MPoly& f, std::string_view v, unsigned n) {
  return weierstrass(f, f.index_of(v), n);
}

/// Weierstrass data of a truncated series, using only its known terms.
inline Preparation weierstrass(const TruncSeries& f, std::size_t v) {
  if (f.is_exact()) {
    throw std::invalid_argument("weierstrass: exact series needs an explicit precision");
  }
  const unsigned d = regularity(f, v);
  if (d == 0) throw InputError("weierstrass: unit input has degree 0");
  if (f.precision() <= d) throw InsufficientPrecision("Weierstrass degree", f.precision());
  return detail::weierstrass_impl(f.body(), v, d, f.precision(), false, 0);
}

}  // namespace zeq
