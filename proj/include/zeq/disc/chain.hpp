#pragma once

// Generalized discriminants D^1..D^d of a monic polynomial W of degree d:
//     D^{d-j+1} = sum over j-element root subsets S of prod_{k<l in S} (xi_k - xi_l)^2,
// computed as D^i = (-1)^(j(j-1)/2) psc_{i-1}(W, W'), j = d - i + 1. D^1 is the
// discriminant and D^d = d.

#include <optional>
#include <string>
#include <vector>

#include "zeq/disc/resultant.hpp"
#include "zeq/weier/weierstrass.hpp"

namespace zeq {

struct DiscChain {
  unsigned degree = 0;
  std::vector<std::optional<TruncSeries>> entries;  // entries[i-1] = D^i when computed
  unsigned first_nonzero = 0;

  bool computed(unsigned i) const { return i >= 1 && i <= entries.size() && entries[i - 1].has_value(); }
  const TruncSeries& at(unsigned i) const {
    if (!computed(i)) throw std::logic_error("generalized discriminant D^" + std::to_string(i) + " not computed");
    return *entries[i - 1];
  }
};

namespace detail {

inline std::vector<TruncSeries> derivative_coefficients(const std::vector<TruncSeries>& c) {
  std::vector<TruncSeries> out;
  for (std::size_t k = 1; k < c.size(); ++k) out.push_back(c[k].scaled(Rat(static_cast<long>(k))));
  return out;
}

inline bool all_exact(const std::vector<TruncSeries>& c) {
  for (const auto& s : c)
    if (!s.is_exact()) return false;
  return true;
}

}  // namespace detail

/// D^i of a monic polynomial given by ascending coefficients c_0..c_d (c_d = 1).
inline TruncSeries generalized_discriminant(const std::vector<TruncSeries>& c,
                                            const std::vector<std::string>& vars, unsigned i) {
  const unsigned d = static_cast<unsigned>(c.size() - 1);
  if (d == 0) throw InputError("generalized discriminant of a degree-0 polynomial");
  if (i < 1 || i > d) throw std::out_of_range("generalized discriminant index");
  const unsigned j = d - i + 1;
  const bool negate = (j * (j - 1) / 2) % 2 == 1;
  auto dc = detail::derivative_coefficients(c);
  if (detail::all_exact(c)) {
    std::vector<MPoly> pc, qc;
    for (const auto& s : c) pc.push_back(s.body().with_vars(vars));
    for (const auto& s : dc) qc.push_back(s.body().with_vars(vars));
    MPoly det = detail::det_of(detail::subresultant_matrix(pc, qc, i - 1, MPoly(vars)), vars);
    return TruncSeries::exact(negate ? -det : det);
  }
  std::vector<TruncSeries> pc, qc;
  for (const auto& s : c) pc.push_back(s.with_vars(vars));
  for (const auto& s : dc) qc.push_back(s.with_vars(vars));
  TruncSeries zero = TruncSeries::constant(vars, Rat(0));
  TruncSeries det = detail::det_of(detail::subresultant_matrix(pc, qc, i - 1, zero), vars);
  return negate ? -det : det;
}

inline TruncSeries generalized_discriminant(const WPoly& w, unsigned i) {
  return generalized_discriminant(w.coefficients(), w.vars, i);
}

/// Classical discriminant of a Weierstrass polynomial (1 in degree 1).
inline TruncSeries discriminant(const WPoly& w) { return generalized_discriminant(w, 1); }

/// Scans D^1, D^2, ... and stops at the first entry with a known nonzero term. An entry
/// zero to its precision counts as identically zero: the scan always terminates because
/// D^d = d. (Entries above idiscr may vanish too, so the scan has to start at the bottom.)
///
/// A limit below d stops the scan there: when D^1..D^limit are all zero to precision the
/// result records first_nonzero = limit + 1 without computing that entry.
inline DiscChain first_nonvanishing(const std::vector<TruncSeries>& c,
                                    const std::vector<std::string>& vars, unsigned limit = 0) {
  DiscChain chain;
  chain.degree = static_cast<unsigned>(c.size() - 1);
  if (chain.degree == 0) throw InputError("generalized discriminant of a degree-0 polynomial");
  if (limit == 0 || limit > chain.degree) limit = chain.degree;
  chain.entries.resize(chain.degree);
  for (unsigned i = 1; i <= limit; ++i) {
    chain.entries[i - 1] = generalized_discriminant(c, vars, i);
    if (!chain.entries[i - 1]->is_zero_to_precision()) {
      chain.first_nonzero = i;
      return chain;
    }
  }
  if (limit == chain.degree) throw std::logic_error("generalized discriminant chain without a nonzero entry");
  chain.first_nonzero = limit + 1;
  return chain;
}

inline DiscChain first_nonvanishing(const WPoly& w, unsigned limit = 0) {
  return first_nonvanishing(w.coefficients(), w.vars, limit);
}

/// Every entry D^1..D^d.
inline DiscChain generalized_discriminants(const std::vector<TruncSeries>& c,
                                           const std::vector<std::string>& vars) {
  DiscChain chain;
  chain.degree = static_cast<unsigned>(c.size() - 1);
  for (unsigned i = 1; i <= chain.degree; ++i) {
    chain.entries.push_back(generalized_discriminant(c, vars, i));
    if (chain.first_nonzero == 0 && !chain.entries.back()->is_zero_to_precision())
      chain.first_nonzero = i;
  }
  return chain;
}

inline DiscChain generalized_discriminants(const WPoly& w) {
  return generalized_discriminants(w.coefficients(), w.vars);
}

/// Chain of a monic polynomial in v with exact coefficients.
inline DiscChain generalized_discriminants(const MPoly& p, std::string_view v) {
  std::size_t iv = p.index_of(v);
  auto c = coefficients_in(p, iv);
  if (c.size() < 2 || !(c.back().is_constant() && c.back().constant_term() == 1))
    throw InputError("generalized discriminants need a monic polynomial of degree >= 1");
  std::vector<TruncSeries> s;
  for (auto& m : c) s.push_back(TruncSeries::exact(m));
  return generalized_discriminants(s, p.vars());
}

inline unsigned idiscr(const DiscChain& chain) { return chain.first_nonzero; }

/// Direct evaluation of the root formula: result[i-1] = D^i.
inline std::vector<Rat> root_formula_oracle(const std::vector<Rat>& roots) {
  const std::size_t d = roots.size();
  if (d == 0 || d > 20) throw InputError("root formula needs 1..20 roots");
  std::vector<Rat> out(d, Rat(0));
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    const unsigned j = static_cast<unsigned>(__builtin_popcount(mask));
    Rat prod = 1;
    for (std::size_t k = 0; k < d && prod != 0; ++k) {
      if (!(mask >> k & 1u)) continue;
      for (std::size_t l = k + 1; l < d; ++l)
        if (mask >> l & 1u) {
          Rat diff = roots[k] - roots[l];
          prod *= diff * diff;
        }
    }
    out[d - j] += prod;
  }
  return out;
}

struct ClusterConstant {
  Rat constant;       // D^{d-s+1}(F) / Disc(F_red)
  bool positive = false;
  bool pattern_only = false;  // same constant after perturbing the roots
};

namespace detail {

inline MPoly poly_from_roots(const std::vector<Rat>& roots, const std::vector<unsigned>& mult,
                             const std::vector<std::string>& vars) {
  MPoly f = MPoly::constant(vars, Rat(1));
  MPoly y = MPoly::variable(vars, vars[0]);
  for (std::size_t i = 0; i < roots.size(); ++i)
    f *= pow(y - MPoly::constant(vars, roots[i]), mult[i]);
  return f;
}

inline Rat cluster_discriminant_ratio(const std::vector<Rat>& roots, const std::vector<unsigned>& mult) {
  const std::vector<std::string> vars{"y"};
  MPoly f = poly_from_roots(roots, mult, vars);
  MPoly fred = poly_from_roots(roots, std::vector<unsigned>(roots.size(), 1), vars);
  unsigned d = 0;
  for (auto m : mult) d += m;
  const unsigned s = static_cast<unsigned>(roots.size());
  DiscChain chain = generalized_discriminants(f, "y");
  Rat num = chain.at(d - s + 1).constant_term();
  Rat den = discriminant(fred, "y").constant_term();
  return num / den;
}

}  // namespace detail

/// C with D^{d-s+1}(F) = C Disc(F_red) for F = prod (y - xi_i)^{m_i} (distinct xi_i).
inline ClusterConstant cluster_discriminant_constant(const std::vector<Rat>& roots,
                                       const std::vector<unsigned>& mult) {
  if (roots.empty() || roots.size() != mult.size())
    throw InputError("the cluster constant needs matching roots and multiplicities");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (mult[i] == 0) throw InputError("multiplicities must be positive");
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) throw InputError("roots must be distinct");
  }
  ClusterConstant r;
  r.constant = detail::cluster_discriminant_ratio(roots, mult);
  r.positive = r.constant > 0;
  // Perturb the roots (keeping them distinct) and recompute.
  for (long scale = 5;; scale += 2) {
    std::vector<Rat> moved = roots;
    for (std::size_t i = 0; i < moved.size(); ++i)
      moved[i] = 2 * roots[i] + Rat(static_cast<long>(i * i)) / scale + 1;
    bool distinct = true;
    for (std::size_t i = 0; i < moved.size(); ++i)
      for (std::size_t j = i + 1; j < moved.size(); ++j) distinct = distinct && moved[i] != moved[j];
    if (!distinct) continue;
    r.pattern_only = detail::cluster_discriminant_ratio(moved, mult) == r.constant;
    break;
  }
  return r;
}

}  // namespace zeq
