#pragma once

// Truncated power series: polynomial data plus a precision N. Terms of total degree >= N
// (over every ambient variable, parameters included) are unknown, not zero.

#include <algorithm>
#include <limits>
#include <vector>

#include "zeq/poly/mpoly.hpp"

namespace zeq {

class TruncSeries {
 public:
  /// Precision marker for data known exactly (a polynomial).
  static constexpr unsigned kExact = std::numeric_limits<unsigned>::max();

  TruncSeries() : precision_(kExact) {}

  TruncSeries(const MPoly& body, unsigned precision)
      : body_(precision == kExact ? body : body.truncated(precision)), precision_(precision) {
    if (precision_ == 0) throw std::invalid_argument("series precision must be >= 1");
  }

  static TruncSeries exact(const MPoly& p) { return TruncSeries(p, kExact); }

  static TruncSeries constant(const std::vector<std::string>& vars, const Rat& c,
                              unsigned precision = kExact) {
    return TruncSeries(MPoly::constant(vars, c), precision);
  }

  const MPoly& body() const noexcept { return body_; }
  unsigned precision() const noexcept { return precision_; }
  bool is_exact() const noexcept { return precision_ == kExact; }
  const std::vector<std::string>& vars() const noexcept { return body_.vars(); }

  /// No known nonzero term.
  bool is_zero_to_precision() const noexcept { return body_.is_zero(); }
  bool is_unit() const { return body_.constant_term() != 0; }
  Rat constant_term() const { return body_.constant_term(); }

  /// Minimal total degree of a known term, or ZeroToPrecision(N) / Infinite when none.
  Order order() const {
    if (!body_.is_zero()) return Order::finite(body_.terms().front().first.degree());
    return is_exact() ? Order::infinite() : Order::zero_to_precision(precision_);
  }

  TruncSeries with_precision(unsigned n) const {
    return TruncSeries(body_, std::min(n, precision_));
  }

  TruncSeries with_vars(const std::vector<std::string>& target) const {
    return TruncSeries(body_.with_vars(target), precision_);
  }

  TruncSeries operator-() const { return TruncSeries(-body_, precision_); }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    unsigned n = std::min(a.precision_, b.precision_);
    return TruncSeries(a.body_.truncated(n) + b.body_.truncated(n), n);
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    unsigned n = std::min(a.precision_, b.precision_);
    return TruncSeries(a.body_.truncated(n) - b.body_.truncated(n), n);
  }

  /// Product; its precision is min(Na + ord b, Nb + ord a), with ord the known order
  /// (or the precision, when zero to precision).
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    unsigned n = std::min(sat_add(a.precision_, b.order_floor()),
                          sat_add(b.precision_, a.order_floor()));
    const MPoly& x = a.body_;
    const MPoly& y = b.body_;
    if (x.vars() != y.vars()) {
      auto u = detail::union_vars(x.vars(), y.vars());
      return TruncSeries(x.with_vars(u), a.precision_) * TruncSeries(y.with_vars(u), b.precision_);
    }
    MPoly r = MPoly::from_sorted_terms(x.vars(), detail::mul_terms(x.terms(), y.terms(), n));
    TruncSeries out;
    out.body_ = std::move(r);
    out.precision_ = n;
    return out;
  }

  TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
  TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  TruncSeries scaled(const Rat& c) const { return TruncSeries(body_.scaled(c), precision_); }

  /// Equality of the known parts at the common precision.
  bool agrees_with(const TruncSeries& o) const {
    unsigned n = std::min(precision_, o.precision_);
    return body_.truncated(n) == o.body_.truncated(n);
  }

  std::string to_string() const {
    std::string s = body_.to_string();
    if (!is_exact()) s += " + O(" + std::to_string(precision_) + ")";
    return s;
  }

 private:
  static unsigned sat_add(unsigned a, unsigned b) noexcept {
    return (a == kExact || b == kExact || a > kExact - b) ? kExact : a + b;
  }

  unsigned order_floor() const noexcept {
    if (!body_.is_zero()) return body_.terms().front().first.degree();
    return precision_;
  }

  MPoly body_;
  unsigned precision_;
};

/// Inverse of a unit series to the same precision.
inline TruncSeries invert_unit(const TruncSeries& s) {
  Rat c0 = s.constant_term();
  if (c0 == 0) throw std::domain_error("series inverse of a non-unit");
  if (s.is_exact() && s.body().is_constant())
    return TruncSeries::constant(s.vars(), 1 / c0);
  if (s.is_exact())
    throw std::domain_error("inverse of a non-constant exact unit needs a precision");
  const unsigned n = s.precision();
  // Newton iteration t <- t (2 - s t), doubling the correct precision each round.
  TruncSeries t = TruncSeries::constant(s.vars(), 1 / c0, 1);
  unsigned have = 1;
  while (have < n) {
    have = std::min(2 * have, n);
    TruncSeries tt(t.body(), have);
    TruncSeries st = s.with_precision(have) * tt;
    TruncSeries two_minus = TruncSeries::constant(s.vars(), Rat(2), have) - st;
    t = TruncSeries((tt * two_minus).body(), have);
  }
  return t;
}

inline Order order_at_origin(const TruncSeries& s) { return s.order(); }

inline MPoly lowest_form(const TruncSeries& s) {
  if (s.is_zero_to_precision()) throw InputError("lowest form of a series zero to precision");
  return lowest_form(s.body());
}

/// Order along the `var` axis; ZeroToPrecision when no pure power of var is known.
inline Order order_in_var(const TruncSeries& s, std::size_t var) {
  Order o = order_in_var(s.body(), var);
  if (o.is_infinite() && !s.is_exact()) return Order::zero_to_precision(s.precision());
  return o;
}

inline TruncSeries set_zero(const TruncSeries& s, const std::vector<std::size_t>& vars) {
  return TruncSeries(set_zero(s.body(), vars), s.precision());
}

}  // namespace zeq
