#pragma once

// Surface germs f(x, y, z, t) and seeded linear coordinate changes.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zeq/error.hpp"
#include "zeq/poly/gcd.hpp"
#include "zeq/poly/linalg.hpp"
#include "zeq/poly/mpoly.hpp"

namespace zeq {

inline const std::vector<std::string>& geometric_vars() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}

inline constexpr std::size_t kX = 0, kY = 1, kZ = 2;

struct SurfaceGerm {
  MPoly f;         // over x, y, z, params (in that order)
  MPoly original;  // as given
  bool reduced = false;  // squarefree_part was applied
  std::vector<std::string> params;

  std::vector<std::string> vars() const {
    std::vector<std::string> v = geometric_vars();
    v.insert(v.end(), params.begin(), params.end());
    return v;
  }

  std::vector<std::size_t> param_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < params.size(); ++i) out.push_back(3 + i);
    return out;
  }

  /// The fiber over t = 0 (no parameters left).
  SurfaceGerm special_fiber() const;

  static SurfaceGerm make(const MPoly& f, std::vector<std::string> params = {}, bool reduce = true) {
    SurfaceGerm g;
    g.params = std::move(params);
    auto vars = g.vars();
    for (const auto& name : f.vars())
      if (std::find(vars.begin(), vars.end(), name) == vars.end())
        throw InputError("unknown variable '" + name + "' in germ");
    g.original = f.with_vars(vars);
    if (g.original.is_zero()) throw InputError("the zero polynomial does not define a surface germ");
    for (const auto& [m, c] : g.original.terms())
      if (m.exp[kX] == 0 && m.exp[kY] == 0 && m.exp[kZ] == 0)
        throw InputError("germ does not pass through the origin (term " +
                         MPoly::monomial(vars, m, c).to_string() + ")");
    g.f = reduce ? squarefree_part(g.original) : g.original;
    g.reduced = reduce;
    return g;
  }
};

inline SurfaceGerm SurfaceGerm::special_fiber() const {
  SurfaceGerm g;
  auto v = geometric_vars();
  g.f = set_zero(f, param_indices()).with_vars(v);
  g.original = set_zero(original, param_indices()).with_vars(v);
  if (g.f.is_zero()) throw InputError("the special fiber f(x, y, z, 0) is identically zero");
  g.f = squarefree_part(g.f);
  g.reduced = reduced;
  return g;
}

/// A 3x3 invertible rational matrix acting by old = M * new on (x, y, z).
struct CoordChange {
  Matrix<Rat> matrix = Matrix<Rat>::identity(3, Rat(0), Rat(1));
  std::uint64_t seed = 0;
  unsigned trial = 0;

  bool is_identity() const { return matrix == Matrix<Rat>::identity(3, Rat(0), Rat(1)); }
};

/// Trial 0 is the identity. Trial k >= 1 is the unipotent change
///   x = X + e Y + a Z,  y = Y + b Z,  z = Z
/// with e, a, b = +-n/q, n in 1..3, q in 1..k+1, drawn from mt19937_64 seeded by
/// (seed, trial). Its z axis (a, b, 1) and flag are generic, which is all the
/// nu-transversality conditions see.
inline CoordChange coordinate_change(std::uint64_t seed, unsigned trial) {
  CoordChange c;
  c.seed = seed;
  c.trial = trial;
  if (trial == 0) return c;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  auto draw = [&]() {
    long n = 1 + static_cast<long>(rng() % 3);
    long q = 1 + static_cast<long>(rng() % (trial + 1));
    if (rng() & 1u) n = -n;
    Rat r(n, q);
    r.canonicalize();
    return r;
  };
  c.matrix(0, 1) = draw();
  c.matrix(0, 2) = draw();
  c.matrix(1, 2) = draw();
  return c;
}

inline MPoly apply(const CoordChange& c, const MPoly& f) {
  if (c.is_identity()) return f;
  return substitute_linear(f, c.matrix, geometric_vars());
}

inline SurfaceGerm apply(const CoordChange& c, const SurfaceGerm& g) {
  SurfaceGerm out = g;
  out.f = apply(c, g.f);
  out.original = apply(c, g.original);
  return out;
}

/// Minimal total degree in the geometric variables among terms whose coefficient (a
/// polynomial in the parameters) is nonzero, and the same at parameters = 0.
struct Multiplicities {
  unsigned generic = 0;
  unsigned special = 0;
  bool equal() const { return generic == special; }
};

inline Multiplicities polynomial_multiplicities(const MPoly& f, const std::vector<std::size_t>& geometric,
                                                const std::vector<std::size_t>& params) {
  Multiplicities m{~0u, ~0u};
  for (const auto& [mono, c] : f.terms()) {
    unsigned g = 0, p = 0;
    for (auto i : geometric) g += mono.exp[i];
    for (auto i : params) p += mono.exp[i];
    m.generic = std::min(m.generic, g);
    if (p == 0) m.special = std::min(m.special, g);
  }
  return m;
}

}  // namespace zeq
