#pragma once

// Exact multivariate polynomials over the rationals.
//
// Terms are kept sorted ascending in the graded lexicographic order (total degree first,
// ties broken lexicographically with the first variable most significant), with no zero
// coefficients. The leading term is therefore the last one.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zeq/error.hpp"
#include "zeq/poly/order.hpp"

namespace zeq {

using Rat = mpq_class;

/// Upper bound on the number of variables of one computation (x, y, z plus parameters).
inline constexpr std::size_t kMaxVars = 8;

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Parses "p" or "p/q" into a canonical rational.
inline Rat parse_rat(std::string_view text) {
  Rat r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  unsigned degree() const noexcept {
    unsigned s = 0;
    for (auto e : exp) s += e;
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(exp[i]) + o.exp[i];
      if (s > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
      r.exp[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }

  /// True when *this divides o.
  bool divides(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  /// Quotient o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(o.exp[i] - exp[i]);
    return r;
  }
};

inline bool graded_less(const Monomial& a, const Monomial& b) noexcept {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exp < b.exp;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t w[2];
    static_assert(sizeof(m.exp) == sizeof(w));
    std::memcpy(w, m.exp.data(), sizeof(w));
    std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ull ^ (w[1] + 0x7F4A7C159E3779B9ull + (w[0] << 6));
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
  }
};

class MPoly;

namespace detail {

using Term = std::pair<Monomial, Rat>;

inline void sort_terms(std::vector<Term>& t) {
  std::sort(t.begin(), t.end(),
            [](const Term& a, const Term& b) { return graded_less(a.first, b.first); });
}

/// Sorted merge of a + sign*b.
inline std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b,
                                   int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && graded_less(a[i].first, b[j].first))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || graded_less(b[j].first, a[i].first)) {
      out.emplace_back(b[j].first, sign > 0 ? b[j].second : Rat(-b[j].second));
      ++j;
    } else {
      Rat c = sign > 0 ? Rat(a[i].second + b[j].second) : Rat(a[i].second - b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Product of two sorted term lists, keeping only terms of total degree < bound.
inline std::vector<Term> mul_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                                   unsigned bound) {
  if (a.empty() || b.empty()) return {};
  const std::vector<Term>& outer = a.size() <= b.size() ? a : b;
  const std::vector<Term>& inner = a.size() <= b.size() ? b : a;

  // Integer arithmetic on numerators over common denominators; one division per output
  // term instead of a gcd per accumulation.
  auto integral = [](const std::vector<Term>& t, mpz_class& den) {
    den = 1;
    for (const auto& [m, c] : t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> out(t.size());
    mpz_class q;
    for (std::size_t k = 0; k < t.size(); ++k) {
      mpz_divexact(q.get_mpz_t(), den.get_mpz_t(), t[k].second.get_den_mpz_t());
      mpz_mul(out[k].get_mpz_t(), q.get_mpz_t(), t[k].second.get_num_mpz_t());
    }
    return out;
  };
  mpz_class da, db;
  const std::vector<mpz_class> ia = integral(outer, da), ib = integral(inner, db);
  mpz_class den = da * db;

  std::vector<std::pair<Monomial, mpz_class>> acc_terms;
  std::array<unsigned, kMaxVars> hi{};
  for (const auto* t : {&outer, &inner}) {
    std::array<unsigned, kMaxVars> mx{};
    for (const auto& [m, c] : *t)
      for (std::size_t v = 0; v < kMaxVars; ++v) mx[v] = std::max<unsigned>(mx[v], m.exp[v]);
    for (std::size_t v = 0; v < kMaxVars; ++v) hi[v] += mx[v];
  }
  std::array<std::uint64_t, kMaxVars> stride{};
  std::uint64_t box = 1;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    stride[v] = box;
    box *= hi[v] + 1;
    if (box > (1u << 22)) break;
  }

  const std::uint64_t pairs = static_cast<std::uint64_t>(outer.size()) * inner.size();
  if (box <= (1u << 22) && box <= std::max<std::uint64_t>(4096, 4 * pairs)) {
    auto index = [&](const Monomial& m) {
      std::uint64_t i = 0;
      for (std::size_t v = 0; v < kMaxVars; ++v) i += m.exp[v] * stride[v];
      return i;
    };
    std::vector<mpz_class> acc(box);
    std::vector<std::uint32_t> slot(box, 0);  // 1 + position in acc_terms
    std::vector<std::uint64_t> inner_index(inner.size());
    for (std::size_t j = 0; j < inner.size(); ++j) inner_index[j] = index(inner[j].first);
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const Monomial& ma = outer[i].first;
      const unsigned da_deg = ma.degree();
      if (da_deg >= bound) break;
      const std::uint64_t base = index(ma);
      for (std::size_t j = 0; j < inner.size(); ++j) {
        const Monomial& mb = inner[j].first;
        if (da_deg + mb.degree() >= bound) break;
        const std::uint64_t k = base + inner_index[j];
        if (slot[k] == 0) {
          acc_terms.emplace_back(ma * mb, mpz_class());
          slot[k] = static_cast<std::uint32_t>(acc_terms.size());
        }
        mpz_addmul(acc[k].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
      }
    }
    for (auto& [m, c] : acc_terms) mpz_swap(c.get_mpz_t(), acc[index(m)].get_mpz_t());
  } else {
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const Monomial& ma = outer[i].first;
      const unsigned da_deg = ma.degree();
      if (da_deg >= bound) break;
      for (std::size_t j = 0; j < inner.size(); ++j) {
        const Monomial& mb = inner[j].first;
        if (da_deg + mb.degree() >= bound) break;
        mpz_addmul(acc[ma * mb].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
      }
    }
    acc_terms.reserve(acc.size());
    for (auto& [m, c] : acc) acc_terms.emplace_back(m, std::move(c));
  }

  std::vector<Term> out;
  out.reserve(acc_terms.size());
  for (auto& [m, c] : acc_terms) {
    if (c == 0) continue;
    Rat r;
    mpz_swap(r.get_num_mpz_t(), c.get_mpz_t());
    mpz_set(r.get_den_mpz_t(), den.get_mpz_t());
    r.canonicalize();
    out.emplace_back(m, std::move(r));
  }
  sort_terms(out);
  return out;
}

inline std::vector<Term> canonical_terms(std::vector<Term> raw) {
  std::unordered_map<Monomial, Rat, MonomialHash> acc;
  for (auto& [m, c] : raw) acc[m] += c;
  std::vector<Term> out;
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, std::move(c));
  sort_terms(out);
  return out;
}

inline std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                           const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  if (out.size() > kMaxVars)
    throw InputError("too many variables (max " + std::to_string(kMaxVars) + ")");
  return out;
}

}  // namespace detail

class MPoly {
 public:
  using Term = detail::Term;

  MPoly() = default;

  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (vars_.size() > kMaxVars)
      throw InputError("too many variables (max " + std::to_string(kMaxVars) + ")");
  }

  /// Builds from arbitrary terms: duplicates merged, zeros dropped, sorted.
  static MPoly from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    MPoly p(std::move(vars));
    p.terms_ = detail::canonical_terms(std::move(terms));
    return p;
  }

  /// Builds from terms already sorted, distinct and nonzero.
  static MPoly from_sorted_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    MPoly p(std::move(vars));
    p.terms_ = std::move(terms);
    return p;
  }

  static MPoly constant(std::vector<std::string> vars, const Rat& c) {
    MPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }

  static MPoly variable(std::vector<std::string> vars, std::string_view name) {
    MPoly p(std::move(vars));
    Monomial m;
    m.exp[p.index_of(name)] = 1;
    p.terms_.emplace_back(m, Rat(1));
    return p;
  }

  static MPoly monomial(std::vector<std::string> vars, const Monomial& m, const Rat& c) {
    MPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
  }

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t nvars() const noexcept { return vars_.size(); }

  /// Index of a variable, or -1 when absent.
  int find_var(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  std::size_t index_of(std::string_view name) const {
    int i = find_var(name);
    if (i < 0) throw InputError("unknown variable '" + std::string(name) + "'");
    return static_cast<std::size_t>(i);
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0);
  }

  Rat constant_term() const {
    if (!terms_.empty() && terms_.front().first.degree() == 0) return terms_.front().second;
    return Rat(0);
  }

  unsigned total_degree() const noexcept {
    return terms_.empty() ? 0 : terms_.back().first.degree();
  }

  unsigned degree_in(std::size_t var) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.first.exp[var]);
    return d;
  }

  /// Largest total degree in the given subset of variables.
  unsigned degree_in(const std::vector<std::size_t>& vars) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) {
      unsigned s = 0;
      for (auto v : vars) s += t.first.exp[v];
      d = std::max(d, s);
    }
    return d;
  }

  bool depends_on(std::size_t var) const noexcept { return degree_in(var) > 0; }

  const Term& leading_term() const {
    if (terms_.empty()) throw InputError("leading term of zero polynomial");
    return terms_.back();
  }

  /// Same polynomial expressed over `target`, which must contain every used variable.
  MPoly with_vars(const std::vector<std::string>& target) const {
    if (target == vars_) return *this;
    std::array<int, kMaxVars> map{};
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(target.begin(), target.end(), vars_[i]);
      map[i] = it == target.end() ? -1 : static_cast<int>(it - target.begin());
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial nm;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (m.exp[i] == 0) continue;
        if (map[i] < 0) throw InputError("variable '" + vars_[i] + "' missing from target ring");
        nm.exp[static_cast<std::size_t>(map[i])] = m.exp[i];
      }
      out.emplace_back(nm, c);
    }
    MPoly p(target);
    p.terms_ = std::move(out);
    detail::sort_terms(p.terms_);
    return p;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  MPoly& operator+=(const MPoly& o) { return *this = add(*this, o, 1); }
  MPoly& operator-=(const MPoly& o) { return *this = add(*this, o, -1); }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return add(a, b, 1); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return add(a, b, -1); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) {
      auto u = detail::union_vars(a.vars_, b.vars_);
      return a.with_vars(u) * b.with_vars(u);
    }
    MPoly r(a.vars_);
    r.terms_ = detail::mul_terms(a.terms_, b.terms_, ~0u);
    return r;
  }

  /// a * b without the terms of total degree >= bound.
  friend MPoly mul_truncated(const MPoly& a, const MPoly& b, unsigned bound) {
    if (a.vars_ != b.vars_) {
      auto u = detail::union_vars(a.vars_, b.vars_);
      return mul_truncated(a.with_vars(u), b.with_vars(u), bound);
    }
    MPoly r(a.vars_);
    r.terms_ = detail::mul_terms(a.terms_, b.terms_, bound);
    return r;
  }

  MPoly scaled(const Rat& c) const {
    if (c == 0) return MPoly(vars_);
    MPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  /// Product by a single term c*m; order-preserving so no re-sort is needed.
  MPoly times_term(const Monomial& m, const Rat& c) const {
    if (c == 0) return MPoly(vars_);
    MPoly r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [tm, tc] : terms_) r.terms_.emplace_back(tm * m, tc * c);
    return r;
  }

  /// Keeps only terms satisfying pred(monomial).
  template <class Pred>
  MPoly filtered(Pred pred) const {
    MPoly r(vars_);
    for (const auto& t : terms_)
      if (pred(t.first)) r.terms_.push_back(t);
    return r;
  }

  /// Drops every term of total degree >= bound.
  MPoly truncated(unsigned bound) const {
    MPoly r(vars_);
    for (const auto& t : terms_) {
      if (t.first.degree() >= bound) break;
      r.terms_.push_back(t);
    }
    return r;
  }

  /// Equality of the polynomial functions (variable lists may differ).
  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rat mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool unit_monomial = m.degree() == 0;
      bool wrote = false;
      if (mag != 1 || unit_monomial) {
        os << mag.get_str();
        wrote = true;
      }
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (m.exp[i] == 0) continue;
        if (wrote) os << "*";
        os << vars_[i];
        if (m.exp[i] > 1) os << "^" << m.exp[i];
        wrote = true;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

 private:
  static MPoly add(const MPoly& a, const MPoly& b, int sign) {
    if (a.vars_ != b.vars_) {
      auto u = detail::union_vars(a.vars_, b.vars_);
      return add(a.with_vars(u), b.with_vars(u), sign);
    }
    MPoly r(a.vars_);
    r.terms_ = detail::merge_add(a.terms_, b.terms_, sign);
    return r;
  }

  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

inline MPoly pow(const MPoly& p, unsigned n) {
  MPoly result = MPoly::constant(p.vars(), Rat(1));
  MPoly base = p;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

inline MPoly derivative(const MPoly& p, std::size_t var) {
  std::vector<MPoly::Term> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.exp[var] == 0) continue;
    Monomial nm = m;
    nm.exp[var] -= 1;
    out.emplace_back(nm, c * m.exp[var]);
  }
  return MPoly::from_terms(p.vars(), std::move(out));
}

inline MPoly derivative(const MPoly& p, std::string_view var) {
  return derivative(p, p.index_of(var));
}

/// Substitutes var := value.
inline MPoly evaluate(const MPoly& p, std::size_t var, const Rat& value) {
  std::vector<MPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    unsigned e = nm.exp[var];
    nm.exp[var] = 0;
    if (e == 0) {
      out.emplace_back(nm, c);
    } else if (value != 0) {
      Rat pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e);
      out.emplace_back(nm, c * pw);
    }
  }
  return MPoly::from_terms(p.vars(), std::move(out));
}

/// Sets every listed variable to zero.
inline MPoly set_zero(const MPoly& p, const std::vector<std::size_t>& vars) {
  return p.filtered([&](const Monomial& m) {
    for (auto v : vars)
      if (m.exp[v] != 0) return false;
    return true;
  });
}

/// Substitutes var := q (q over any compatible variable list).
inline MPoly substitute(const MPoly& p, std::size_t var, const MPoly& q) {
  auto vars = detail::union_vars(p.vars(), q.vars());
  MPoly pp = p.with_vars(vars);
  MPoly qq = q.with_vars(vars);
  std::size_t v = pp.index_of(p.vars()[var]);
  std::vector<MPoly> powers{MPoly::constant(vars, Rat(1))};
  MPoly result(vars);
  std::vector<MPoly::Term> rest;
  for (const auto& [m, c] : pp.terms()) {
    unsigned e = m.exp[v];
    while (powers.size() <= e) powers.push_back(powers.back() * qq);
    Monomial nm = m;
    nm.exp[v] = 0;
    result += powers[e].times_term(nm, c);
  }
  return result;
}

/// Coefficients of p viewed as a polynomial in `var`; entry k multiplies var^k.
inline std::vector<MPoly> coefficients_in(const MPoly& p, std::size_t var) {
  std::vector<std::vector<MPoly::Term>> buckets(p.degree_in(var) + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    unsigned e = nm.exp[var];
    nm.exp[var] = 0;
    buckets[e].emplace_back(nm, c);
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MPoly::from_sorted_terms(p.vars(), std::move(b)));
  return out;
}

inline MPoly from_coefficients(const std::vector<MPoly>& coeffs, std::size_t var,
                               const std::vector<std::string>& vars) {
  std::vector<MPoly::Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    MPoly c = coeffs[k].with_vars(vars);
    for (const auto& [m, v] : c.terms()) {
      Monomial nm = m;
      nm.exp[var] = static_cast<std::uint16_t>(nm.exp[var] + k);
      out.emplace_back(nm, v);
    }
  }
  return MPoly::from_terms(vars, std::move(out));
}

/// Minimal total degree of a term; Infinite for the zero polynomial.
inline Order order_at_origin(const MPoly& p) {
  if (p.is_zero()) return Order::infinite();
  return Order::finite(p.terms().front().first.degree());
}

/// Sum of the terms of minimal total degree (the tangent-cone form).
inline MPoly lowest_form(const MPoly& p) {
  if (p.is_zero()) throw InputError("lowest form of zero");
  unsigned d = p.terms().front().first.degree();
  return p.truncated(d + 1);
}

/// Order of vanishing of p restricted to the `var` axis (all other variables zero).
inline Order order_in_var(const MPoly& p, std::size_t var) {
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == m.exp[var]) return Order::finite(m.exp[var]);
  }
  return Order::infinite();
}

/// Exact quotient p / q, or nullopt when q does not divide p.
inline std::optional<MPoly> try_divide(const MPoly& p, const MPoly& q) {
  if (q.is_zero()) throw std::domain_error("division by zero polynomial");
  auto vars = detail::union_vars(p.vars(), q.vars());
  MPoly r = p.with_vars(vars);
  MPoly d = q.with_vars(vars);
  const auto& [lm, lc] = d.leading_term();
  Rat inv_lc = 1 / lc;
  std::vector<MPoly::Term> quot;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    Monomial qm = lm.quotient_of(rm);
    Rat qc = rc * inv_lc;
    r -= d.times_term(qm, qc);
    quot.emplace_back(qm, std::move(qc));
  }
  return MPoly::from_terms(vars, std::move(quot));
}

inline MPoly divide_exact(const MPoly& p, const MPoly& q) {
  auto r = try_divide(p, q);
  if (!r) throw std::domain_error("inexact polynomial division: (" + p.to_string() + ") / (" +
                                  q.to_string() + ")");
  return *r;
}

/// Scales p so its leading coefficient is 1 (zero stays zero).
inline MPoly normalized(const MPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_term().second);
}

}  // namespace zeq
