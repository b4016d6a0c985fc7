#pragma once

#include <string>

#include "skewring/error.hpp"

namespace skewring {

// Value of a discrete valuation. Besides honest integers and the value of
// zero (infinite), truncated objects can only certify a lower bound: an
// element that vanishes up to the working precision N reports ">= N",
// which is deliberately distinct from true infinity.
struct Valuation {
  enum class Kind { Finite, AtLeast, Infinite };

  Kind kind = Kind::Infinite;
  long long value = 0;

  static Valuation finite(long long n) { return {Kind::Finite, n}; }
  static Valuation at_least(long long n) { return {Kind::AtLeast, n}; }
  static Valuation infinite() { return {Kind::Infinite, 0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_infinite() const { return kind == Kind::Infinite; }

  long long finite_value() const {
    if (kind != Kind::Finite) fail("domain", "valuation is not a finite value");
    return value;
  }

  // Lower bound that is valid in every case (infinite has no finite bound,
  // callers must check first).
  long long lower_bound() const {
    if (kind == Kind::Infinite) fail("domain", "no finite lower bound for an infinite valuation");
    return value;
  }

  // True if this valuation is certainly >= n.
  bool at_least_n(long long n) const {
    if (kind == Kind::Infinite) return true;
    return value >= n;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Infinite) return true;
    return a.value == b.value;
  }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }

  std::string str() const {
    switch (kind) {
      case Kind::Finite: return std::to_string(value);
      case Kind::AtLeast: return ">=" + std::to_string(value);
      case Kind::Infinite: return "inf";
    }
    return "?";
  }
};

}  // namespace skewring
