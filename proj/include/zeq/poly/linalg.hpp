#pragma once

// Exact determinants: Gaussian elimination over Q, fraction-free Bareiss elimination for
// polynomial entries, and Berkowitz (division free) plus unit-pivot elimination for
// truncated-series entries.

#include <algorithm>
#include <limits>
#include <vector>

#include "zeq/poly/matrix.hpp"
#include "zeq/poly/mpoly.hpp"
#include "zeq/poly/series.hpp"

namespace zeq {

inline Rat determinant(Matrix<Rat> m) {
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

inline Matrix<Rat> inverse(const Matrix<Rat>& a) {
  const std::size_t n = a.rows();
  Matrix<Rat> m = a;
  Matrix<Rat> inv = Matrix<Rat>::identity(n, Rat(0), Rat(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw InputError("singular matrix");
    m.swap_rows(p, k);
    inv.swap_rows(p, k);
    Rat piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Fraction-free determinant over Q[vars]; every division is exact.
inline MPoly bareiss_determinant(Matrix<MPoly> m, const std::vector<std::string>& vars) {
  const std::size_t n = m.rows();
  if (n == 0) return MPoly::constant(vars, Rat(1));
  bool negate = false;
  MPoly prev = MPoly::constant(vars, Rat(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Pivot on the sparsest nonzero entry of column k.
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      if (best == n || m(i, k).size() < m(best, k).size()) best = i;
    }
    if (best == n) return MPoly(vars);
    if (best != k) {
      m.swap_rows(best, k);
      negate = !negate;
    }
    const MPoly& piv = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly num = m(i, j) * piv - m(i, k) * m(k, j);
        m(i, j) = prev.is_constant() ? num.scaled(1 / prev.constant_term()) : divide_exact(num, prev);
      }
      m(i, k) = MPoly(vars);
    }
    prev = m(k, k);
  }
  MPoly det = m(n - 1, n - 1).with_vars(vars);
  return negate ? -det : det;
}

/// Division-free (Berkowitz) determinant over any commutative ring.
template <class T>
T berkowitz_determinant(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.rows();
  if (n == 0) return one;
  std::vector<T> vec{one, -a(n - 1, n - 1)};
  for (std::size_t kk = n - 1; kk-- > 0;) {
    const std::size_t s = n - kk;
    std::vector<T> t(s + 1, zero);
    t[0] = one;
    t[1] = -a(kk, kk);
    std::vector<T> v(s - 1, zero);
    for (std::size_t i = 0; i + 1 < s; ++i) v[i] = a(kk + 1 + i, kk);
    for (std::size_t j = 0; j + 1 < s; ++j) {
      T acc = zero;
      for (std::size_t i = 0; i + 1 < s; ++i) acc += a(kk, kk + 1 + i) * v[i];
      t[j + 2] = -acc;
      if (j + 2 < s) {
        std::vector<T> nv(s - 1, zero);
        for (std::size_t r = 0; r + 1 < s; ++r) {
          T x = zero;
          for (std::size_t c = 0; c + 1 < s; ++c) x += a(kk + 1 + r, kk + 1 + c) * v[c];
          nv[r] = std::move(x);
        }
        v = std::move(nv);
      }
    }
    std::vector<T> nv(s + 1, zero);
    for (std::size_t i = 0; i <= s; ++i)
      for (std::size_t j = 0; j < s && j <= i; ++j) nv[i] += t[i - j] * vec[j];
    vec = std::move(nv);
  }
  return (n % 2 == 0) ? vec[n] : -vec[n];
}

/// Determinant of a matrix of truncated series: eliminate on unit pivots while any remain
/// (exact inverses in the local ring), then Berkowitz on the residual block whose entries
/// all vanish at the origin.
inline TruncSeries local_determinant(Matrix<TruncSeries> m, const std::vector<std::string>& vars) {
  const std::size_t n = m.rows();
  const TruncSeries zero = TruncSeries::constant(vars, Rat(0));
  const TruncSeries one = TruncSeries::constant(vars, Rat(1));
  TruncSeries factor = one;
  bool negate = false;
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t pr = n, pc = n;
    bool pick_constant = false;
    for (std::size_t r = k; r < n && !pick_constant; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        const TruncSeries& e = m(r, c);
        if (!e.is_unit()) continue;
        bool is_const = e.body().is_constant();
        if (e.is_exact() && !is_const) continue;
        if (pr == n || is_const) {
          pr = r;
          pc = c;
          if (is_const) {
            pick_constant = true;
            break;
          }
        }
      }
    }
    if (pr == n) break;
    if (pr != k) {
      m.swap_rows(pr, k);
      negate = !negate;
    }
    if (pc != k) {
      m.swap_cols(pc, k);
      negate = !negate;
    }
    const TruncSeries piv = m(k, k);
    const TruncSeries inv = invert_unit(piv);
    factor *= piv;
    for (std::size_t i = k + 1; i < n; ++i) {
      const TruncSeries& lead = m(i, k);
      if (lead.is_exact() && lead.is_zero_to_precision()) continue;
      TruncSeries f = lead * inv;
      for (std::size_t j = k + 1; j < n; ++j) {
        const TruncSeries& src = m(k, j);
        if (src.is_exact() && src.is_zero_to_precision()) continue;
        m(i, j) -= f * src;
      }
    }
  }
  const std::size_t rest = n - k;
  Matrix<TruncSeries> block(rest, rest, zero);
  for (std::size_t r = 0; r < rest; ++r)
    for (std::size_t c = 0; c < rest; ++c) block(r, c) = m(k + r, k + c);
  TruncSeries det = factor * berkowitz_determinant(block, zero, one);
  return negate ? -det : det;
}

/// p composed with the linear map old_i = sum_j m(i, j) * new_j on the listed geometric
/// variables; every other variable passes through unchanged.
inline MPoly substitute_linear(const MPoly& p, const Matrix<Rat>& m,
                               const std::vector<std::string>& geometric) {
  const std::size_t n = geometric.size();
  if (m.rows() != n || m.cols() != n) throw InputError("coordinate change has the wrong size");
  if (determinant(m) == 0) throw InputError("singular coordinate change");
  std::vector<std::string> vars = p.vars();
  for (const auto& g : geometric)
    if (std::find(vars.begin(), vars.end(), g) == vars.end()) vars.push_back(g);
  MPoly q = p.with_vars(vars);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = q.index_of(geometric[i]);

  std::vector<std::vector<MPoly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    MPoly form(vars);
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) form += MPoly::variable(vars, geometric[j]).scaled(m(i, j));
    powers[i].push_back(MPoly::constant(vars, Rat(1)));
    powers[i].push_back(form);
  }
  auto power = [&](std::size_t i, unsigned e) -> const MPoly& {
    while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][e];
  };

  MPoly out(vars);
  for (const auto& [mono, c] : q.terms()) {
    Monomial rest = mono;
    for (std::size_t i = 0; i < n; ++i) rest.exp[idx[i]] = 0;
    MPoly term = MPoly::monomial(vars, rest, c);
    for (std::size_t i = 0; i < n; ++i)
      if (mono.exp[idx[i]] > 0) term = term * power(i, mono.exp[idx[i]]);
    out += term;
  }
  return out;
}

}  // namespace zeq
