#pragma once

// Sylvester-type matrices and their determinants.
//
// Sign convention: the rows of the first polynomial come first and columns run from the
// highest degree down, so Res_z(z^2 - x, 2z) = -4x.

#include <string>
#include <vector>

#include "zeq/error.hpp"
#include "zeq/poly/linalg.hpp"
#include "zeq/poly/mpoly.hpp"
#include "zeq/poly/series.hpp"

namespace zeq {

namespace detail {

inline MPoly det_of(const Matrix<MPoly>& m, const std::vector<std::string>& vars) {
  return bareiss_determinant(m, vars);
}

inline TruncSeries det_of(const Matrix<TruncSeries>& m, const std::vector<std::string>& vars) {
  return local_determinant(m, vars);
}

/// Matrix whose determinant is the k-th principal subresultant coefficient of P, Q given
/// by ascending coefficient lists (p = deg P, q = deg Q). k = 0 is the Sylvester matrix.
template <class T>
Matrix<T> subresultant_matrix(const std::vector<T>& pc, const std::vector<T>& qc, unsigned k,
                              const T& zero) {
  const unsigned p = static_cast<unsigned>(pc.size() - 1);
  const unsigned q = static_cast<unsigned>(qc.size() - 1);
  const unsigned n = p + q - 2 * k;
  const unsigned top = p + q - k - 1;  // degree of column 0
  Matrix<T> m(n, n, zero);
  unsigned row = 0;
  auto place = [&](const std::vector<T>& c, unsigned shifts) {
    for (unsigned s = shifts; s-- > 0; ++row) {
      for (unsigned col = 0; col < n; ++col) {
        int e = static_cast<int>(top - col) - static_cast<int>(s);
        if (e >= 0 && e < static_cast<int>(c.size())) m(row, col) = c[e];
      }
    }
  };
  place(pc, q - k);
  place(qc, p - k);
  return m;
}

}  // namespace detail

/// Res_v(p, q) over Q[other variables].
inline MPoly resultant(const MPoly& p_in, const MPoly& q_in, std::string_view v) {
  auto vars = detail::union_vars(p_in.vars(), q_in.vars());
  MPoly p = p_in.with_vars(vars);
  MPoly q = q_in.with_vars(vars);
  if (p.is_zero() || q.is_zero()) throw InputError("resultant of a zero polynomial");
  std::size_t iv = p.index_of(v);
  auto pc = coefficients_in(p, iv);
  auto qc = coefficients_in(q, iv);
  if (pc.size() == 1 && qc.size() == 1) return MPoly::constant(vars, Rat(1));
  return detail::det_of(detail::subresultant_matrix(pc, qc, 0, MPoly(vars)), vars);
}

/// Res of two polynomials given by ascending coefficient lists of series.
inline TruncSeries resultant(const std::vector<TruncSeries>& pc, const std::vector<TruncSeries>& qc,
                             const std::vector<std::string>& vars) {
  TruncSeries zero = TruncSeries::constant(vars, Rat(0));
  return detail::det_of(detail::subresultant_matrix(pc, qc, 0, zero), vars);
}

/// Disc_v(p) = (-1)^(d(d-1)/2) Res(p, dp/dv) / lc; degree 1 gives 1. The leading
/// coefficient must be a nonzero constant (prepare germs first).
inline MPoly discriminant(const MPoly& p, std::string_view v) {
  std::size_t iv = p.index_of(v);
  auto c = coefficients_in(p, iv);
  const unsigned d = p.is_zero() ? 0 : static_cast<unsigned>(c.size() - 1);
  if (d == 0) throw InputError("discriminant of a polynomial of degree 0 in " + std::string(v));
  if (!c[d].is_constant())
    throw InputError("discriminant needs a constant leading coefficient; prepare the germ first");
  if (d == 1) return MPoly::constant(p.vars(), Rat(1));
  MPoly r = resultant(p, derivative(p, iv), v).scaled(1 / c[d].constant_term());
  return (d * (d - 1) / 2) % 2 ? -r : r;
}

}  // namespace zeq
