#pragma once

#include <ostream>
#include <string>

namespace zeq {

/// Result of an order query on a polynomial or truncated series.
///
/// `Finite(n)`: the order is exactly n.
/// `Infinite`: the exact object restricts to zero (only produced for exact data).
/// `ZeroToPrecision(N)`: nothing nonzero below total degree N is known; the order is >= N
/// or the object is zero.
class Order {
 public:
  enum class Kind { Finite, Infinite, ZeroToPrecision };

  Order() : Order(Kind::Finite, 0) {}

  static Order finite(unsigned n) { return Order(Kind::Finite, n); }
  static Order infinite() { return Order(Kind::Infinite, 0); }
  static Order zero_to_precision(unsigned precision) {
    return Order(Kind::ZeroToPrecision, precision);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_infinite() const noexcept { return kind_ == Kind::Infinite; }
  bool is_zero_to_precision() const noexcept { return kind_ == Kind::ZeroToPrecision; }

  /// The order itself; only meaningful when finite.
  unsigned value() const noexcept { return value_; }
  /// The precision N of a ZeroToPrecision marker.
  unsigned precision() const noexcept { return value_; }
  /// A lower bound valid in every case (0 for Infinite is never used as a bound).
  unsigned lower_bound() const noexcept { return value_; }

  friend bool operator==(const Order& a, const Order& b) {
    return a.kind_ == b.kind_ && (a.kind_ == Kind::Infinite || a.value_ == b.value_);
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Finite:
        return std::to_string(value_);
      case Kind::Infinite:
        return "Infinite";
      case Kind::ZeroToPrecision:
        return "ZeroToPrecision(" + std::to_string(value_) + ")";
    }
    return {};
  }

  friend std::ostream& operator<<(std::ostream& os, const Order& o) { return os << o.to_string(); }

 private:
  Order(Kind kind, unsigned value) : kind_(kind), value_(value) {}
  Kind kind_;
  unsigned value_;
};

}  // namespace zeq
