#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "skewring/basefield.hpp"
#include "skewring/error.hpp"
#include "skewring/nilgroup.hpp"
#include "skewring/ore.hpp"
#include "skewring/qtorus.hpp"
#include "skewring/series.hpp"

namespace skewring {

// Evaluation adapters: one small value algebra per ambient, shaped for
// eval_expr (see expr.hpp). Each binds generator names to the objects of its
// ambient and routes arithmetic to the owning module, so every domain check
// (invertibility, precision, tower agreement) is the module's own.
//
// Exponents are uniformly bounded here: command-level input can request
// astronomically large powers, and the expansions behind series or group
// powers are loops, so every adapter rejects |e| > kEvalPowBound with a
// "domain" failure before any work happens.

inline constexpr long long kEvalPowBound = 10000;

inline void check_eval_exponent(long long e) {
  if (e > kEvalPowBound || e < -kEvalPowBound)
    fail("domain", "exponent " + std::to_string(e) + " exceeds the evaluation bound " +
                       std::to_string(kEvalPowBound));
}

[[noreturn]] inline void fail_unknown_generator(const std::string& name,
                                                const std::vector<std::string>& available) {
  std::string list;
  for (const auto& n : available) {
    if (!list.empty()) list += ", ";
    list += n;
  }
  fail("bind", "unknown generator '" + name + "'" +
                   (list.empty() ? "" : "; available: " + list));
}

// --- commutative tower values --------------------------------------------------

// Values in the rational-function tower itself; generators are the tower
// variables. Used for config coefficients and scalar expressions.
struct FieldEval {
  using Value = FieldElem;

  TowerPtr tower;

  Value rational(const mpq_class& q) const { return FieldElem::rational(tower, q); }
  Value generator(const std::string& n) const {
    int i = tower->var_index(n);
    if (i >= 0) return FieldElem::variable(tower, i);
    fail_unknown_generator(n, tower->vars());
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, long long e) const {
    check_eval_exponent(e);
    return a.pow(e);
  }
};

// --- skew polynomial values -----------------------------------------------------

// Values in an iterated Ore tower; generators are the skew variables plus
// the base tower variables (as constants). Negative powers exist only for
// nonzero base constants.
struct OreEval {
  using Value = OrePoly;

  OreTowerPtr tower;

  Value rational(const mpq_class& q) const {
    return OrePoly::constant(tower, FieldElem::rational(tower->base(), q));
  }
  Value generator(const std::string& n) const {
    for (int i = 0; i < tower->nvars(); ++i)
      if (tower->var_name(i) == n) return OrePoly::variable(tower, i);
    int bi = tower->base()->var_index(n);
    if (bi >= 0)
      return OrePoly::constant(tower, FieldElem::variable(tower->base(), bi));
    std::vector<std::string> avail;
    for (int i = 0; i < tower->nvars(); ++i) avail.push_back(tower->var_name(i));
    for (const auto& v : tower->base()->vars()) avail.push_back(v);
    fail_unknown_generator(n, avail);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, long long e) const {
    check_eval_exponent(e);
    if (e >= 0) return a.pow(e);
    if (a.is_constant() && !a.is_zero())
      return OrePoly::constant(tower, a.constant_coefficient().pow(e));
    return a.pow(e);  // the module states the precise "domain" failure
  }
};

// --- skew series values -----------------------------------------------------------

// Values in a skew Laurent series field over commutative coefficients;
// generators are the series variable plus the base tower variables. Any
// nonzero series inverts, at the context precision.
struct SeriesEval {
  using Value = FieldSeries;

  FieldSeriesContext ctx;

  Value rational(const mpq_class& q) const {
    return series_scalar(ctx, FieldElem::rational(ctx.ring.tower, q));
  }
  Value generator(const std::string& n) const {
    if (n == ctx.var) return series_monomial(ctx, 1, ctx.ring.one());
    int bi = ctx.ring.tower->var_index(n);
    if (bi >= 0) return series_scalar(ctx, FieldElem::variable(ctx.ring.tower, bi));
    std::vector<std::string> avail{ctx.var};
    for (const auto& v : ctx.ring.tower->vars()) avail.push_back(v);
    fail_unknown_generator(n, avail);
  }
  Value add(const Value& a, const Value& b) const { return series_add(ctx, a, b); }
  Value sub(const Value& a, const Value& b) const { return series_sub(ctx, a, b); }
  Value neg(const Value& a) const { return series_neg(ctx, a); }
  Value mul(const Value& a, const Value& b) const { return series_mul(ctx, a, b); }
  Value pow(const Value& a, long long e) const {
    check_eval_exponent(e);
    Value base = a;
    if (e < 0) {
      base = series_inv(ctx, a);
      e = -e;
    }
    Value acc = series_one(ctx);
    for (long long i = 0; i < e; ++i) acc = series_mul(ctx, acc, base);
    return acc;
  }
};

// --- quantum torus values -----------------------------------------------------------

// Values in a quantum torus; generators are the torus variables plus the
// base tower variables (as central scalars). Units are the single terms.
struct TorusEval {
  using Value = QTorusElem;

  QTorusRingPtr ring;

  Value rational(const mpq_class& q) const {
    return QTorusElem::scalar(ring, FieldElem::rational(ring->tower(), q));
  }
  Value generator(const std::string& n) const {
    for (int i = 0; i < ring->nvars(); ++i)
      if (ring->var_name(i) == n) return QTorusElem::variable(ring, i);
    int bi = ring->tower()->var_index(n);
    if (bi >= 0)
      return QTorusElem::scalar(ring, FieldElem::variable(ring->tower(), bi));
    std::vector<std::string> avail;
    for (int i = 0; i < ring->nvars(); ++i) avail.push_back(ring->var_name(i));
    for (const auto& v : ring->tower()->vars()) avail.push_back(v);
    fail_unknown_generator(n, avail);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, long long e) const {
    check_eval_exponent(e);
    return a.pow(e);
  }
};

// --- skew group ring values -----------------------------------------------------------

// Values in a skew group ring; generators are the group generators plus the
// base tower variables (as identity-supported scalars). Negative powers
// exist exactly for single terms c*g, inverted as sigma(g^{-1})(c^{-1}) *
// g^{-1}; everything else needs the box-truncated inversion command.
struct GroupEval {
  using Value = GroupRingElem;

  GroupRingPtr ring;

  Value rational(const mpq_class& q) const {
    return GroupRingElem::term(ring, FieldElem::rational(ring->tower(), q),
                               ring->identity());
  }
  Value generator(const std::string& n) const {
    int i = ring->gen_index(n);
    if (i >= 0) return GroupRingElem::generator(ring, i);
    int bi = ring->tower()->var_index(n);
    if (bi >= 0)
      return GroupRingElem::term(ring, FieldElem::variable(ring->tower(), bi),
                                 ring->identity());
    std::vector<std::string> avail;
    for (int i2 = 0; i2 < ring->rank(); ++i2) avail.push_back(ring->gen_name(i2));
    for (const auto& v : ring->tower()->vars()) avail.push_back(v);
    fail_unknown_generator(n, avail);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, long long e) const {
    check_eval_exponent(e);
    Value base = a;
    long long n = e;
    if (e < 0) {
      base = term_inverse(a);
      n = -e;
    }
    Value acc = GroupRingElem::one(ring);
    for (long long i = 0; i < n; ++i) acc = acc * base;
    return acc;
  }

 private:
  Value term_inverse(const Value& a) const {
    if (a.terms().size() != 1)
      fail("domain",
           "negative powers invert single terms c*g only; box-truncated "
           "inverses of general elements come from the invert command");
    const auto& [g, c] = *a.terms().begin();
    GroupElem gi = group_inv(*ring, g);
    Value out = GroupRingElem::term(ring, sigma_apply(*ring, gi, c.inverse()), gi);
    if (out * a != GroupRingElem::one(ring) || a * out != GroupRingElem::one(ring))
      fail("internal", "single-term inverse failed its check");
    return out;
  }
};

}  // namespace skewring
