#pragma once

// The multiplicity sequence nu*(V) = (mult V, mult D_f, i0, mult D^{i0}) of a reduced
// surface germ, computed in nu-transverse coordinates.

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>

#include "zeq/equising/transverse.hpp"

namespace zeq {

struct MultiplicitySequence {
  std::array<unsigned, 4> v{};  // m_V, m_Delta, i0, m_D

  bool smooth_convention() const { return v[1] == 0; }
  unsigned operator[](std::size_t i) const { return v[i]; }

  friend auto operator<=>(const MultiplicitySequence&, const MultiplicitySequence&) = default;
  friend bool operator==(const MultiplicitySequence&, const MultiplicitySequence&) = default;

  std::string to_string() const {
    return "(" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + ", " + std::to_string(v[2]) +
           ", " + std::to_string(v[3]) + ")";
  }
};

/// Lazily evaluated nu* of one reduced germ: the coordinates are searched for conditions
/// 1 and 2 up front, condition 3 only once an entry past mult D_f is requested (a search
/// restarting after the failing trial if needed).
class LazyNuStar {
 public:
  LazyNuStar(MPoly f, SearchOptions opt) : f_(std::move(f)), opt_(opt) {
    opt_.need_cond3 = false;
    found_ = search_nu_transverse(f_, opt_);
  }

  unsigned entry(std::size_t i) {
    if (i >= 2) confirm_cond3();
    const FiberStageA& a = found_.analyzer->a();
    switch (i) {
      case 0:
        return a.m_V;
      case 1:
        return a.unit ? 0 : a.m_Delta;
      case 2:
        return a.unit ? 1 : found_.analyzer->b().i0;
      default:
        return a.unit ? 0 : found_.analyzer->b().m_D;
    }
  }

  MultiplicitySequence all() {
    MultiplicitySequence s;
    for (std::size_t i = 0; i < 4; ++i) s.v[i] = entry(i);
    return s;
  }

  const CoordChange& change() const { return found_.change; }
  const NuTransverseReport& report() const { return found_.report; }
  unsigned precision_used() const { return found_.analyzer->precision_used(); }

 private:
  void confirm_cond3() {
    if (cond3_done_) return;
    const FiberStageA& a = found_.analyzer->a();
    if (!a.unit && !found_.analyzer->c().decision) {
      // Rare: a trial passing conditions 1 and 2 but not 3. Continue the search.
      unsigned m_V = a.m_V, m_Delta = a.m_Delta;
      SearchOptions next = opt_;
      next.need_cond3 = true;
      next.first_trial = found_.change.trial + 1;
      next.max_trials = opt_.first_trial + opt_.max_trials - next.first_trial;
      found_ = search_nu_transverse(f_, next);
      const FiberStageA& b = found_.analyzer->a();
      if (b.m_V != m_V || (b.unit ? 0 : b.m_Delta) != m_Delta)
        throw Error("mult D_f changed between transverse coordinate systems");
    } else {
      found_.report = found_.analyzer->report(true);
    }
    cond3_done_ = true;
  }

  MPoly f_;
  SearchOptions opt_;
  TransverseCoordinates found_;
  bool cond3_done_ = false;
};

struct MultiplicitySequenceResult {
  MultiplicitySequence mu;
  CoordChange change;
  bool reduced = false;  // the input had repeated factors
  bool smooth = false;
  unsigned precision_used = 0;
  NuTransverseReport report;
};

/// nu*(V) of the germ f(x, y, z) = 0; f is replaced by its squarefree part first.
inline MultiplicitySequenceResult multiplicity_sequence(const MPoly& f, const SearchOptions& opt = {}) {
  MPoly g = f.with_vars(geometric_vars());
  if (g.is_zero()) throw InputError("the zero polynomial does not define a surface germ");
  MPoly r = squarefree_part(g);
  MultiplicitySequenceResult out;
  auto q = try_divide(g, r);
  out.reduced = !q || !q->is_constant();
  LazyNuStar lazy(r, opt);
  out.mu = lazy.all();
  out.change = lazy.change();
  out.report = lazy.report();
  out.smooth = out.mu.v[0] == 1;
  out.precision_used = lazy.precision_used();
  return out;
}

inline MultiplicitySequenceResult multiplicity_sequence(const SurfaceGerm& g, const SearchOptions& opt = {}) {
  if (!g.params.empty()) throw InputError("multiplicity_sequence takes a germ without parameters");
  return multiplicity_sequence(g.original, opt);
}

/// Lexicographic comparison of two lazily evaluated sequences, stopping at the first
/// differing entry. Returns the comparison and the number of entries evaluated.
inline std::pair<std::strong_ordering, unsigned> compare_lazy(LazyNuStar& a, LazyNuStar& b) {
  for (unsigned i = 0; i < 4; ++i) {
    unsigned x = a.entry(i), y = b.entry(i);
    if (x != y) return {x <=> y, i + 1};
  }
  return {std::strong_ordering::equal, 4};
}

}  // namespace zeq
