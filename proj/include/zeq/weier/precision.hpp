#pragma once

// Adaptive precision: rerun a germ computation with doubled precision whenever it reports
// that a quantity it must decide is zero to the current precision.

#include <algorithm>
#include <utility>

#include "zeq/error.hpp"
#include "zeq/poly/mpoly.hpp"

namespace zeq {

struct PrecisionBudget {
  unsigned current = 8;
  unsigned max = 64;
};

/// Starting precision 2 deg f + 2.
inline unsigned initial_precision(const MPoly& f) { return 2 * f.total_degree() + 2; }

/// Default ceiling 4 deg f (deg_v f)^2.
inline unsigned default_max_precision(const MPoly& f, std::size_t v) {
  unsigned dv = std::max(1u, f.degree_in(v));
  return std::max(initial_precision(f), 4 * std::max(1u, f.total_degree()) * dv * dv);
}

inline PrecisionBudget default_budget(const MPoly& f, std::size_t v, unsigned max_override = 0) {
  PrecisionBudget b{initial_precision(f), max_override ? max_override : default_max_precision(f, v)};
  b.current = std::min(b.current, b.max);
  return b;
}

template <class T>
struct Adequate {
  T value;
  unsigned precision;
};

/// Runs task(N) for N = current, 2 current, ... up to max. The task signals an undecided
/// quantity by throwing InsufficientPrecision; at the ceiling that becomes
/// PrecisionExhausted.
template <class Task>
auto with_adequate_precision(Task&& task, PrecisionBudget budget)
    -> Adequate<decltype(task(0u))> {
  if (budget.max == 0) throw std::invalid_argument("precision budget must be positive");
  unsigned n = std::max(1u, std::min(budget.current, budget.max));
  while (true) {
    try {
      return {task(n), n};
    } catch (const InsufficientPrecision& e) {
      if (n >= budget.max) throw PrecisionExhausted(e.quantity(), budget.max);
      n = std::min(2 * n, budget.max);
    }
  }
}

/// Reruns task at doubled precision until two consecutive results agree under `same`,
/// starting from an accepted result. At the ceiling the last result is returned.
template <class Task, class Same>
auto confirm_stable(Task&& task, Adequate<decltype(task(0u))> first, unsigned max, Same&& same)
    -> Adequate<decltype(task(0u))> {
  while (true) {
    unsigned next = std::min(2 * first.precision, max);
    if (next <= first.precision) return first;
    auto second = with_adequate_precision(task, PrecisionBudget{next, max});
    if (same(second.value, first.value)) return second;
    first = std::move(second);
  }
}

/// Like with_adequate_precision, but a result is accepted only once the next precision
/// step reproduces it.
template <class Task>
auto with_stable_precision(Task&& task, PrecisionBudget budget) -> Adequate<decltype(task(0u))> {
  auto first = with_adequate_precision(task, budget);
  return confirm_stable(task, std::move(first), budget.max,
                        [](const auto& a, const auto& b) { return a == b; });
}

}  // namespace zeq
