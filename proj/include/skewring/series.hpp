#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "skewring/basefield.hpp"
#include "skewring/ore.hpp"
#include "skewring/qtorus.hpp"
#include "skewring/valuation.hpp"

namespace skewring {

// Skew Laurent series in one variable y over a coefficient ring K that
// carries an automorphism sigma (and, in one of the two flavours, a twisted
// derivation delta). Series are stored in left normal form
//
//   f = sum_{e >= r} c_e * y^e,   c_e in K,
//
// i.e. coefficients stand to the LEFT of the powers of y. Two commutation
// flavours are supported:
//
//  * PlainSigma:   a * y^n = y^n * sigma^n(a), equivalently
//                  y^n * a = sigma^{-n}(a) * y^n.      (delta must be zero)
//
//  * InverseDelta: y is the inverse of a variable x with a*x = x*sigma(a)
//                  + delta(a); pushing y left gives the expansion
//                  y * a = sum_{i >= 0} sigma(delta^i(a)) * y^{i+1},
//                  which terminates iff the delta-chain of a dies.
//
// Truncation is explicit: every inexact series knows the precision N below
// which its coefficients are reliable, and arithmetic propagates those
// bounds instead of silently inventing digits. A series with no nonzero
// known coefficient is either the exact zero or "zero to precision N" —
// two deliberately different answers.

enum class SeriesKind { PlainSigma, InverseDelta };

// --- coefficient-ring handles ------------------------------------------------

// Commutative rational-function coefficients.
struct FieldCoeffRing {
  using Elem = FieldElem;

  TowerPtr tower;
  FieldEndo twist_map;     // automorphism of the tower (inverse witness required)
  FieldDerivation deriv;   // twisted derivation paired with twist_map

  FieldCoeffRing(TowerPtr t, FieldEndo sigma, FieldDerivation delta);
  static FieldCoeffRing untwisted(TowerPtr t);

  Elem zero() const { return FieldElem::integer(tower, 0); }
  Elem one() const { return FieldElem::integer(tower, 1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool is_one(const Elem& a) const { return a.is_one(); }
  bool is_unit(const Elem& a) const { return !a.is_zero(); }
  Elem inv(const Elem& a) const { return a.inverse(); }
  Elem twist(const Elem& a, long long n) const { return twist_map.apply_power(a, n); }
  Elem d(const Elem& a) const { return deriv.apply(a); }
  bool delta_is_zero() const { return deriv.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.str(); }
};

// Quantum-torus coefficients; the units are exactly the single monomials,
// which is what makes leading coefficients invertible here.
struct TorusCoeffRing {
  using Elem = QTorusElem;

  QTorusRingPtr ring;
  TorusEndo twist_map;
  TorusDerivation deriv;

  TorusCoeffRing(QTorusRingPtr r, TorusEndo sigma, TorusDerivation delta);

  Elem zero() const { return QTorusElem::zero(ring); }
  Elem one() const { return QTorusElem::scalar(ring, FieldElem::integer(ring->tower(), 1)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool is_one(const Elem& a) const { return a.is_one(); }
  bool is_unit(const Elem& a) const { return a.is_unit(); }
  Elem inv(const Elem& a) const { return a.inverse(); }
  Elem twist(const Elem& a, long long n) const { return twist_map.apply_power(a, n); }
  Elem d(const Elem& a) const { return deriv.apply(a); }
  bool delta_is_zero() const { return deriv.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.str(); }
};

// --- context and series value ------------------------------------------------

template <class R>
struct SeriesContext {
  SeriesKind kind;
  R ring;
  long long prec;         // working precision for truncated expansions
  std::string var = "y";  // display name of the series variable
};

using FieldSeriesContext = SeriesContext<FieldCoeffRing>;
using TorusSeriesContext = SeriesContext<TorusCoeffRing>;

// Checks the structural requirements: twist invertible, derivation tied to
// the same twist, delta absent in the PlainSigma flavour, positive precision.
void validate_series_context(const FieldSeriesContext& ctx);
void validate_series_context(const TorusSeriesContext& ctx);

// Coefficients for exponents lead .. lead+coeffs.size()-1 (leading one
// nonzero, trailing zeros trimmed). `exact` asserts that every exponent
// beyond the stored range is truly zero; otherwise coefficients are known
// only below `prec`. The default-constructed value is the exact zero. A
// truncated series with no known nonzero coefficient stores lead == prec.
template <class R>
struct SkewSeries {
  long long lead = 0;
  std::vector<typename R::Elem> coeffs;
  long long prec = 0;
  bool exact = true;
};

using FieldSeries = SkewSeries<FieldCoeffRing>;
using TorusSeries = SkewSeries<TorusCoeffRing>;

// Effectively-infinite precision marker for exact series.
inline constexpr long long kSeriesInf = 1LL << 60;

inline long long series_sat_add(long long a, long long b) {
  if (a >= kSeriesInf || b >= kSeriesInf) return kSeriesInf;
  long long s = a + b;
  return s >= kSeriesInf ? kSeriesInf : s;
}

template <class R>
long long series_known_to(const SkewSeries<R>& f) {
  return f.exact ? kSeriesInf : f.prec;
}

// Normalizing constructor: drops coefficients at or beyond the precision,
// trims zero fringes, canonicalizes the two zero representations.
template <class R>
SkewSeries<R> make_series(const SeriesContext<R>& ctx, long long lead,
                          std::vector<typename R::Elem> cs, long long prec,
                          bool exact) {
  if (!exact) {
    if (prec <= lead)
      cs.clear();
    else if (static_cast<long long>(cs.size()) > prec - lead)
      cs.resize(static_cast<size_t>(prec - lead));
  }
  size_t lo = 0;
  while (lo < cs.size() && ctx.ring.is_zero(cs[lo])) ++lo;
  size_t hi = cs.size();
  while (hi > lo && ctx.ring.is_zero(cs[hi - 1])) --hi;

  SkewSeries<R> s;
  if (lo == hi) {
    if (exact) return s;  // exact zero
    s.exact = false;
    s.prec = prec;
    s.lead = prec;
    return s;  // zero to precision
  }
  s.lead = lead + static_cast<long long>(lo);
  s.coeffs.assign(std::make_move_iterator(cs.begin() + static_cast<long>(lo)),
                  std::make_move_iterator(cs.begin() + static_cast<long>(hi)));
  s.exact = exact;
  s.prec = exact ? s.lead + static_cast<long long>(s.coeffs.size()) : prec;
  return s;
}

template <class R>
SkewSeries<R> series_from_map(const SeriesContext<R>& ctx,
                              const std::map<long long, typename R::Elem>& m,
                              long long known, bool exact) {
  long long lo = 0, hi = 0;
  bool any = false;
  for (const auto& [e, c] : m) {
    if (e >= known || ctx.ring.is_zero(c)) continue;
    if (!any) lo = e;
    hi = e;
    any = true;
  }
  if (!any) {
    SkewSeries<R> s;
    if (exact) return s;
    s.exact = false;
    s.prec = known;
    s.lead = known;
    return s;
  }
  std::vector<typename R::Elem> cs(static_cast<size_t>(hi - lo + 1), ctx.ring.zero());
  for (const auto& [e, c] : m) {
    if (e < lo || e > hi) continue;
    cs[static_cast<size_t>(e - lo)] = c;
  }
  return make_series(ctx, lo, std::move(cs), exact ? 0 : known, exact);
}

// --- basic builders and accessors ---------------------------------------------

template <class R>
SkewSeries<R> series_monomial(const SeriesContext<R>& ctx, long long e,
                              typename R::Elem c) {
  std::vector<typename R::Elem> cs;
  cs.push_back(std::move(c));
  return make_series(ctx, e, std::move(cs), 0, true);
}

template <class R>
SkewSeries<R> series_scalar(const SeriesContext<R>& ctx, typename R::Elem c) {
  return series_monomial(ctx, 0, std::move(c));
}

template <class R>
SkewSeries<R> series_one(const SeriesContext<R>& ctx) {
  return series_scalar(ctx, ctx.ring.one());
}

template <class R>
SkewSeries<R> series_zero_to(const SeriesContext<R>& ctx, long long prec) {
  (void)ctx;
  SkewSeries<R> s;
  s.exact = false;
  s.prec = prec;
  s.lead = prec;
  return s;
}

// Coefficient at exponent e; zero for positions below the support or in the
// trimmed fringe, an error beyond the known precision.
template <class R>
typename R::Elem series_coeff(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                              long long e) {
  if (e >= series_known_to(f))
    fail("domain", "coefficient requested beyond the known precision");
  long long off = e - f.lead;
  if (f.coeffs.empty() || off < 0 || off >= static_cast<long long>(f.coeffs.size()))
    return ctx.ring.zero();
  return f.coeffs[static_cast<size_t>(off)];
}

template <class R>
Valuation series_val(const SkewSeries<R>& f) {
  if (!f.coeffs.empty()) return Valuation::finite(f.lead);
  return f.exact ? Valuation::infinite() : Valuation::at_least(f.prec);
}

// Restricts knowledge of f to exponents below n (the result is never marked
// exact: truncation is a statement about what remains known).
template <class R>
SkewSeries<R> series_truncate(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                              long long n) {
  if (n >= kSeriesInf) return f;
  return make_series(ctx, f.lead, f.coeffs, std::min(n, series_known_to(f)), false);
}

// --- linear arithmetic ---------------------------------------------------------

template <class R>
SkewSeries<R> series_neg(const SeriesContext<R>& ctx, const SkewSeries<R>& f) {
  SkewSeries<R> s = f;
  for (auto& c : s.coeffs) c = ctx.ring.neg(c);
  return s;
}

template <class R>
SkewSeries<R> series_add(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                         const SkewSeries<R>& g) {
  long long known = std::min(series_known_to(f), series_known_to(g));
  std::map<long long, typename R::Elem> acc;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    long long e = f.lead + static_cast<long long>(i);
    acc.emplace(e, f.coeffs[i]);
  }
  for (size_t i = 0; i < g.coeffs.size(); ++i) {
    long long e = g.lead + static_cast<long long>(i);
    auto [it, fresh] = acc.emplace(e, g.coeffs[i]);
    if (!fresh) it->second = ctx.ring.add(it->second, g.coeffs[i]);
  }
  return series_from_map(ctx, acc, known, f.exact && g.exact);
}

template <class R>
SkewSeries<R> series_sub(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                         const SkewSeries<R>& g) {
  return series_add(ctx, f, series_neg(ctx, g));
}

// True when f and g provably agree on every exponent below n.
template <class R>
bool series_agree(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                  const SkewSeries<R>& g, long long n) {
  return series_val(series_sub(ctx, f, g)).at_least_n(n);
}

// --- commutation ----------------------------------------------------------------

namespace series_detail {

// y * f in the InverseDelta flavour; expansions of live delta-chains stop at
// the context precision.
template <class R>
SkewSeries<R> y_times(const SeriesContext<R>& ctx, const SkewSeries<R>& f) {
  long long known = f.exact ? kSeriesInf : series_sat_add(f.prec, 1);
  bool exact = f.exact;
  std::map<long long, typename R::Elem> acc;
  for (size_t idx = 0; idx < f.coeffs.size(); ++idx) {
    if (ctx.ring.is_zero(f.coeffs[idx])) continue;
    long long k = f.lead + static_cast<long long>(idx);
    typename R::Elem b = f.coeffs[idx];
    for (long long i = 0;; ++i) {
      long long e = k + 1 + i;
      if (e >= ctx.prec) {  // chain still alive: everything beyond is unknown
        exact = false;
        known = std::min(known, ctx.prec);
        break;
      }
      auto [it, fresh] = acc.emplace(e, ctx.ring.twist(b, 1));
      if (!fresh) it->second = ctx.ring.add(it->second, ctx.ring.twist(b, 1));
      b = ctx.ring.d(b);
      if (ctx.ring.is_zero(b)) break;
    }
  }
  return series_from_map(ctx, acc, known, exact);
}

// y^{-1} * f in the InverseDelta flavour; this direction is an exact, finite
// rewrite: y^{-1} * c y^k = sigma^{-1}(c) y^{k-1} - delta(sigma^{-1}(c)) y^k.
template <class R>
SkewSeries<R> y_inverse_times(const SeriesContext<R>& ctx, const SkewSeries<R>& f) {
  long long known = f.exact ? kSeriesInf : series_sat_add(f.prec, -1);
  std::map<long long, typename R::Elem> acc;
  auto bump = [&](long long e, typename R::Elem v) {
    auto [it, fresh] = acc.emplace(e, v);
    if (!fresh) it->second = ctx.ring.add(it->second, v);
  };
  for (size_t idx = 0; idx < f.coeffs.size(); ++idx) {
    if (ctx.ring.is_zero(f.coeffs[idx])) continue;
    long long k = f.lead + static_cast<long long>(idx);
    typename R::Elem s = ctx.ring.twist(f.coeffs[idx], -1);
    bump(k - 1, s);
    bump(k, ctx.ring.neg(ctx.ring.d(s)));
  }
  return series_from_map(ctx, acc, known, f.exact);
}

}  // namespace series_detail

// Normal form of y^n * a. PlainSigma: the single exact term
// sigma^{-n}(a) * y^n. InverseDelta: exact for n <= 0; for n >= 1 the
// expansion is truncated at the context precision unless every delta-chain
// terminates, in which case the result is exact.
template <class R>
SkewSeries<R> commute_power(const SeriesContext<R>& ctx, long long n,
                            const typename R::Elem& a) {
  if (ctx.ring.is_zero(a)) return {};
  if (ctx.kind == SeriesKind::PlainSigma)
    return series_monomial(ctx, n, ctx.ring.twist(a, -n));
  SkewSeries<R> s = series_scalar(ctx, a);
  for (long long k = 0; k < n; ++k) s = series_detail::y_times(ctx, s);
  for (long long k = 0; k > n; --k) s = series_detail::y_inverse_times(ctx, s);
  return s;
}

// --- multiplication ---------------------------------------------------------------

// Product precision follows the ultrametric rule
//   known(f*g) >= min(lead(f) + known(g), known(f) + lead(g)),
// further capped by any truncated commutation expansion that contributes.
template <class R>
SkewSeries<R> series_mul(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                         const SkewSeries<R>& g) {
  if ((f.exact && f.coeffs.empty()) || (g.exact && g.coeffs.empty())) return {};
  long long known = std::min(series_sat_add(f.lead, series_known_to(g)),
                             series_sat_add(series_known_to(f), g.lead));
  bool exact = f.exact && g.exact;
  std::map<long long, typename R::Elem> acc;
  auto bump = [&](long long e, typename R::Elem v) {
    if (ctx.ring.is_zero(v)) return;
    auto [it, fresh] = acc.emplace(e, v);
    if (!fresh) it->second = ctx.ring.add(it->second, v);
  };

  for (size_t fi = 0; fi < f.coeffs.size(); ++fi) {
    if (ctx.ring.is_zero(f.coeffs[fi])) continue;
    long long i = f.lead + static_cast<long long>(fi);
    for (size_t gj = 0; gj < g.coeffs.size(); ++gj) {
      if (ctx.ring.is_zero(g.coeffs[gj])) continue;
      long long j = g.lead + static_cast<long long>(gj);
      if (ctx.kind == SeriesKind::PlainSigma) {
        long long e = i + j;
        if (e >= known) continue;
        bump(e, ctx.ring.mul(f.coeffs[fi], ctx.ring.twist(g.coeffs[gj], -i)));
      } else {
        SkewSeries<R> cp = commute_power(ctx, i, g.coeffs[gj]);
        if (!cp.exact) {
          exact = false;
          known = std::min(known, series_sat_add(cp.prec, j));
        }
        for (size_t ck = 0; ck < cp.coeffs.size(); ++ck) {
          long long e = cp.lead + static_cast<long long>(ck) + j;
          bump(e, ctx.ring.mul(f.coeffs[fi], cp.coeffs[ck]));
        }
      }
    }
  }
  return series_from_map(ctx, acc, known, exact);
}

// --- inversion --------------------------------------------------------------------

// Inverse of a series with an invertible leading coefficient, by residual
// back-substitution: repeatedly kill the lowest term c*y^m of 1 - f*g with a
// correction d*y^{m-r} chosen so that the leading term of f * d*y^{m-r}
// is exactly c*y^m. A truncated input of precision N and valuation r
// determines its inverse to precision N - 2r. Exact inputs whose inverse
// does not terminate need an explicit target precision; when the residual
// reaches exact zero the result is the complete inverse and is marked exact.
template <class R>
SkewSeries<R> series_inv(const SeriesContext<R>& ctx, const SkewSeries<R>& f,
                         std::optional<long long> target = std::nullopt) {
  if (f.exact && f.coeffs.empty()) fail("domain", "inverting the zero series");
  if (f.coeffs.empty())
    fail("domain",
         "series is zero to the working precision; its inverse is not determined");
  const typename R::Elem& a = f.coeffs.front();
  if (!ctx.ring.is_unit(a))
    fail("domain", "leading coefficient is not invertible in the coefficient ring: " +
                       ctx.ring.str(a));
  const long long r = f.lead;

  long long res_prec;
  if (f.exact) {
    if (f.coeffs.size() == 1) {
      SkewSeries<R> direct = commute_power(ctx, -r, ctx.ring.inv(a));
      if (direct.exact) return direct;
    }
    if (!target)
      fail("domain",
           "the inverse of this exact series is an infinite expansion; a target "
           "precision is required");
    res_prec = *target;
  } else {
    res_prec = f.prec - 2 * r;
    if (target && *target < res_prec) res_prec = *target;
  }

  // Internal commutation expansions must reach beyond the requested
  // precision whenever the valuation is negative, so widen the working
  // precision locally; the claimed precision of the result is unaffected.
  SeriesContext<R> wide = ctx;
  wide.prec = std::max(ctx.prec,
                       series_sat_add(res_prec, 2 * (r < 0 ? -r : r) + 1));

  SkewSeries<R> g =
      series_truncate(wide, commute_power(wide, -r, ctx.ring.inv(a)), res_prec);
  SkewSeries<R> one = series_one(wide);
  SkewSeries<R> res = series_sub(wide, one, series_mul(wide, f, g));
  while (!res.coeffs.empty()) {
    long long m = res.lead;
    if (m - r >= res_prec) break;
    typename R::Elem c = res.coeffs.front();
    long long tw = (ctx.kind == SeriesKind::PlainSigma) ? r : -r;
    typename R::Elem d = ctx.ring.twist(ctx.ring.mul(ctx.ring.inv(a), c), tw);
    SkewSeries<R> corr = series_monomial(wide, m - r, d);
    g = series_add(wide, g, corr);
    res = series_sub(wide, res, series_mul(wide, f, corr));
  }

  const bool complete = res.exact && res.coeffs.empty();
  if (complete) return make_series(ctx, g.lead, g.coeffs, 0, true);
  long long claimed = std::min(res_prec, series_sat_add(series_known_to(res), -r));
  return make_series(ctx, g.lead, g.coeffs, claimed, false);
}

// --- limits of Cauchy sequences ------------------------------------------------------

// Diagonal limit of a finite approximating sequence: the valuations of
// consecutive differences must be nondecreasing (their certified lower
// bounds, for truncated entries); the limit then agrees with the last entry
// below the last difference valuation, and that is exactly what is returned.
template <class R>
SkewSeries<R> cauchy_limit(const SeriesContext<R>& ctx,
                           const std::vector<SkewSeries<R>>& u) {
  if (u.empty()) fail("domain", "cannot take the limit of an empty sequence");
  long long prev = -kSeriesInf;
  long long last_gap = kSeriesInf;
  for (size_t k = 0; k + 1 < u.size(); ++k) {
    Valuation v = series_val(series_sub(ctx, u[k + 1], u[k]));
    long long d = v.is_infinite() ? kSeriesInf : v.lower_bound();
    if (d < prev)
      fail("domain", "non-Cauchy sequence: the difference valuation drops from " +
                         std::to_string(prev) + " to " + std::to_string(d) +
                         " at step " + std::to_string(k));
    prev = d;
    last_gap = d;
  }
  const SkewSeries<R>& last = u.back();
  long long known = std::min(last_gap, series_known_to(last));
  if (known >= kSeriesInf) return last;
  return series_truncate(ctx, last, known);
}

// --- display -----------------------------------------------------------------------

inline bool series_coeff_composite(const std::string& s) {
  if (s.empty()) return true;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == ' ' || c == '+' || c == '*' || c == '/' || c == '^') return true;
    if (c == '-' && i > 0) return true;
  }
  return false;
}

template <class R>
std::string series_str(const SeriesContext<R>& ctx, const SkewSeries<R>& f) {
  std::string out;
  auto power = [&](long long e) -> std::string {
    if (e == 0) return "";
    if (e == 1) return ctx.var;
    return ctx.var + "^" + std::to_string(e);
  };
  bool first = true;
  for (size_t i = 0; i < f.coeffs.size(); ++i) {
    if (ctx.ring.is_zero(f.coeffs[i])) continue;
    long long e = f.lead + static_cast<long long>(i);
    std::string cs = ctx.ring.str(f.coeffs[i]);
    bool negative = cs.size() > 1 && cs[0] == '-' &&
                    !series_coeff_composite(cs.substr(1));
    if (negative) cs = cs.substr(1);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string pw = power(e);
    if (pw.empty()) {
      out += series_coeff_composite(cs) && cs[0] != '(' ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      out += pw;
    } else {
      out += (series_coeff_composite(cs) ? "(" + cs + ")" : cs) + "*" + pw;
    }
  }
  if (!f.exact) {
    if (!first) out += " + ";
    out += "O(" + ctx.var + "^" + std::to_string(f.prec) + ")";
  } else if (first) {
    out = "0";
  }
  return out;
}

// --- embeddings of skew-polynomial fractions -----------------------------------------

// Interprets an iterated-tower polynomial as a series in (the inverse of)
// its outermost variable. The context coefficients must extend the source
// base tower by the names of the remaining inner variables, in order; for
// the torus flavour the generators must match the inner variables and the
// scalars must match the base tower.
FieldSeries embed_poly(const FieldSeriesContext& ctx, const OrePoly& p);
TorusSeries embed_poly(const TorusSeriesContext& ctx, const OrePoly& p);

// num * den^{-1}, expanded so that the result is known at least below prec
// (exactly, when the inversion terminates).
FieldSeries embed_fraction(const FieldSeriesContext& ctx, const OrePoly& num,
                           const OrePoly& den, long long prec);
TorusSeries embed_fraction(const TorusSeriesContext& ctx, const OrePoly& num,
                           const OrePoly& den, long long prec);

// --- presets -------------------------------------------------------------------------

struct SeriesFieldPreset {
  OrePreset ore;
  FieldSeriesContext ctx;
};
struct SeriesTorusPreset {
  OrePreset ore;
  TorusSeriesContext ctx;
};
using SeriesPreset = std::variant<SeriesFieldPreset, SeriesTorusPreset>;

// Builds the tower together with the matching series context:
//   weyl             y = x2^{-1} over Q(x1), sigma = id, delta = d/dx1
//   quantum_matrices y = d^{-1} over the a,b,c torus with its d-action
//   quantum_torus    y itself over Q(lambda)(x), sigma(x) = lambda*x
//   skew_poly        x itself over Q(q)(t), sigma(t) = q*t
SeriesPreset make_series_preset(const std::string& name,
                                const std::optional<mpq_class>& param,
                                long long prec);

}  // namespace skewring
