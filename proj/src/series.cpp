#include "skewring/series.hpp"

#include <utility>

namespace skewring {

// ---------------------------------------------------------------------------
// Coefficient-ring handles
// ---------------------------------------------------------------------------

namespace {

void check_same_endo(const FieldEndo& a, const FieldEndo& b) {
  const auto& ia = a.images();
  const auto& ib = b.images();
  if (ia.size() != ib.size()) fail("config", "derivation is paired with a different twist");
  for (size_t i = 0; i < ia.size(); ++i)
    if (!(ia[i] == ib[i])) fail("config", "derivation is paired with a different twist");
}

void check_same_endo(const TorusEndo& a, const TorusEndo& b) {
  if (!a.ring()->same(*b.ring()))
    fail("mismatch", "derivation twist acts on a different torus ring");
  check_same_endo(a.base(), b.base());
  const auto& ma = a.multipliers();
  const auto& mb = b.multipliers();
  for (size_t i = 0; i < ma.size(); ++i)
    if (!(ma[i] == mb[i])) fail("config", "derivation is paired with a different twist");
}

}  // namespace

FieldCoeffRing::FieldCoeffRing(TowerPtr t, FieldEndo sigma, FieldDerivation delta)
    : tower(std::move(t)), twist_map(std::move(sigma)), deriv(std::move(delta)) {
  if (!tower) fail("config", "series coefficients need a tower");
  if (!twist_map.tower()->same(*tower))
    fail("mismatch", "series twist acts on a different tower");
  // the zero derivation is compatible with every twist
  if (!deriv.is_zero()) check_same_endo(deriv.sigma(), twist_map);
}

FieldCoeffRing FieldCoeffRing::untwisted(TowerPtr t) {
  FieldEndo id = FieldEndo::identity(t);
  FieldDerivation dz = FieldDerivation::zero(t);
  return FieldCoeffRing(std::move(t), std::move(id), std::move(dz));
}

TorusCoeffRing::TorusCoeffRing(QTorusRingPtr r, TorusEndo sigma, TorusDerivation delta)
    : ring(std::move(r)), twist_map(std::move(sigma)), deriv(std::move(delta)) {
  if (!ring) fail("config", "series coefficients need a torus ring");
  if (!twist_map.ring()->same(*ring))
    fail("mismatch", "series twist acts on a different torus ring");
  if (!deriv.is_zero()) check_same_endo(deriv.sigma(), twist_map);
}

namespace {

template <class Ctx>
void validate_context_common(const Ctx& ctx, bool twist_invertible) {
  if (ctx.prec < 1) fail("config", "series precision must be at least 1");
  if (!twist_invertible)
    fail("config", "the series twist must be an automorphism (no inverse is known)");
  if (ctx.kind == SeriesKind::PlainSigma && !ctx.ring.delta_is_zero())
    fail("config", "the plain-twist flavour does not admit a derivation");
  if (ctx.var.empty()) fail("config", "the series variable needs a name");
}

}  // namespace

void validate_series_context(const FieldSeriesContext& ctx) {
  validate_context_common(ctx, ctx.ring.twist_map.has_inverse());
}

void validate_series_context(const TorusSeriesContext& ctx) {
  validate_context_common(ctx, ctx.ring.twist_map.has_inverse());
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

namespace {

// Shared shape checks: the polynomial is read as a series in (the inverse
// of) its outermost variable, so every inner variable must have a home in
// the coefficient ring.
const OreTowerPtr& checked_tower(const OrePoly& p) {
  if (!p.tower()) fail("internal", "uninitialized skew polynomial");
  return p.tower();
}

template <class R, class MakeCoeff>
SkewSeries<R> embed_terms(const SeriesContext<R>& ctx, const OrePoly& p,
                          int top, MakeCoeff make_coeff) {
  std::map<long long, typename R::Elem> acc;
  auto bump = [&](long long e, const typename R::Elem& v) {
    if (ctx.ring.is_zero(v)) return;
    auto [it, fresh] = acc.emplace(e, v);
    if (!fresh) it->second = ctx.ring.add(it->second, v);
  };
  for (const auto& [m, c] : p.terms()) {
    long long e = m[static_cast<size_t>(top)];
    typename R::Elem kappa = make_coeff(m, c);
    if (ctx.kind == SeriesKind::PlainSigma) {
      bump(e, ctx.ring.twist(kappa, -e));
    } else {
      SkewSeries<R> cp = commute_power(ctx, -e, kappa);  // exact: -e <= 0
      for (size_t k = 0; k < cp.coeffs.size(); ++k)
        bump(cp.lead + static_cast<long long>(k), cp.coeffs[k]);
    }
  }
  return series_from_map(ctx, acc, kSeriesInf, true);
}

template <class R>
SkewSeries<R> embed_fraction_impl(const SeriesContext<R>& ctx, const OrePoly& num,
                                  const OrePoly& den, long long prec) {
  if (den.is_zero()) fail("domain", "division by the zero polynomial");
  SkewSeries<R> en = embed_poly(ctx, num);
  if (en.exact && en.coeffs.empty()) return {};
  SkewSeries<R> ed = embed_poly(ctx, den);
  SkewSeries<R> gi = series_inv(ctx, ed, prec - en.lead);
  SkewSeries<R> out = series_mul(ctx, en, gi);
  if (!out.exact && series_known_to(out) > prec) out = series_truncate(ctx, out, prec);
  return out;
}

}  // namespace

FieldSeries embed_poly(const FieldSeriesContext& ctx, const OrePoly& p) {
  const OreTowerPtr& t = checked_tower(p);
  const TowerPtr& base = t->base();
  const TowerPtr& coeff = ctx.ring.tower;
  const int n = t->nvars();
  const int top = n - 1;
  if (coeff->height() != base->height() + (n - 1))
    fail("mismatch", "series coefficient tower does not match the polynomial's tower");
  for (int i = 0; i < base->height(); ++i)
    if (coeff->var_name(i) != base->var_name(i))
      fail("mismatch", "series coefficient tower does not extend the scalar tower");
  for (int j = 0; j + 1 < n; ++j)
    if (coeff->var_name(base->height() + j) != t->var_name(j))
      fail("mismatch", "series coefficient tower does not carry the inner variable '" +
                           t->var_name(j) + "'");

  return embed_terms(ctx, p, top, [&](const OreMono& m, const FieldElem& c) {
    FieldElem kappa = c.lifted(coeff);
    for (int j = 0; j + 1 < n; ++j)
      if (m[static_cast<size_t>(j)] != 0)
        kappa = kappa * FieldElem::variable(coeff, base->height() + j)
                            .pow(m[static_cast<size_t>(j)]);
    return kappa;
  });
}

TorusSeries embed_poly(const TorusSeriesContext& ctx, const OrePoly& p) {
  const OreTowerPtr& t = checked_tower(p);
  const TowerPtr& base = t->base();
  const QTorusRingPtr& ring = ctx.ring.ring;
  const int n = t->nvars();
  const int top = n - 1;
  if (ring->tower()->height() != base->height())
    fail("mismatch", "torus scalar tower does not match the polynomial's base tower");
  if (ring->nvars() != n - 1)
    fail("mismatch", "torus rank does not match the number of inner variables");
  for (int j = 0; j + 1 < n; ++j)
    if (ring->var_name(j) != t->var_name(j))
      fail("mismatch", "torus generator names do not match the inner variables");

  // The normal form lists later variables to the left, so the inner part of
  // a term is the descending-order product x_{n-2}^{m_{n-2}} ... x_0^{m_0} c;
  // rebuilding it by ring multiplication keeps the exact reordering q-powers.
  return embed_terms(ctx, p, top, [&](const OreMono& m, const FieldElem& c) {
    QTorusElem kappa = QTorusElem::scalar(ring, c.lifted(ring->tower()));
    for (int j = 0; j + 1 < n; ++j) {
      if (m[static_cast<size_t>(j)] == 0) continue;
      TorusMono mono(static_cast<size_t>(n - 1), 0);
      mono[static_cast<size_t>(j)] = m[static_cast<size_t>(j)];
      kappa = QTorusElem::monomial(ring, mono, FieldElem::integer(ring->tower(), 1)) * kappa;
    }
    return kappa;
  });
}

FieldSeries embed_fraction(const FieldSeriesContext& ctx, const OrePoly& num,
                           const OrePoly& den, long long prec) {
  return embed_fraction_impl(ctx, num, den, prec);
}

TorusSeries embed_fraction(const TorusSeriesContext& ctx, const OrePoly& num,
                           const OrePoly& den, long long prec) {
  return embed_fraction_impl(ctx, num, den, prec);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

SeriesPreset make_series_preset(const std::string& name,
                                const std::optional<mpq_class>& param,
                                long long prec) {
  if (name == "weyl") {
    OrePreset ore = make_ore_preset("weyl", param);
    TowerPtr coeff = FieldTower::make({"x1"});
    FieldEndo sigma = FieldEndo::identity(coeff);
    FieldDerivation ddx(sigma, {FieldElem::integer(coeff, 1)});
    FieldSeriesContext ctx{SeriesKind::InverseDelta,
                           FieldCoeffRing(coeff, std::move(sigma), std::move(ddx)),
                           prec, "y"};
    validate_series_context(ctx);
    return SeriesFieldPreset{std::move(ore), std::move(ctx)};
  }

  if (name == "quantum_matrices") {
    OrePreset ore = make_ore_preset("quantum_matrices", param);
    TorusContextData td = make_quantum_matrices_torus(param);
    TorusSeriesContext ctx{SeriesKind::InverseDelta,
                           TorusCoeffRing(td.ring, std::move(td.sigma), std::move(td.delta)),
                           prec, "y"};
    validate_series_context(ctx);
    return SeriesTorusPreset{std::move(ore), std::move(ctx)};
  }

  if (name == "quantum_torus") {
    OrePreset ore = make_ore_preset("quantum_torus", param);
    TowerPtr coeff = param ? FieldTower::make({"x"}) : FieldTower::make({"lambda", "x"});
    FieldEndo sigma = [&]() {
      if (param) {
        FieldElem lam = FieldElem::rational(coeff, *param);
        FieldElem x = FieldElem::variable(coeff, 0);
        return FieldEndo(coeff, {lam * x}, std::vector<FieldElem>{x / lam});
      }
      FieldElem lam = FieldElem::variable(coeff, 0);
      FieldElem x = FieldElem::variable(coeff, 1);
      return FieldEndo(coeff, {lam, lam * x}, std::vector<FieldElem>{lam, x / lam});
    }();
    FieldSeriesContext ctx{SeriesKind::PlainSigma,
                           FieldCoeffRing(coeff, std::move(sigma),
                                          FieldDerivation::zero(coeff)),
                           prec, "y"};
    validate_series_context(ctx);
    return SeriesFieldPreset{std::move(ore), std::move(ctx)};
  }

  if (name == "skew_poly") {
    OrePreset ore = make_ore_preset("skew_poly", param);
    TowerPtr coeff = param ? FieldTower::make({"t"}) : FieldTower::make({"q", "t"});
    FieldEndo sigma = [&]() {
      if (param) {
        FieldElem q = FieldElem::rational(coeff, *param);
        FieldElem tv = FieldElem::variable(coeff, 0);
        return FieldEndo(coeff, {q * tv}, std::vector<FieldElem>{tv / q});
      }
      FieldElem q = FieldElem::variable(coeff, 0);
      FieldElem tv = FieldElem::variable(coeff, 1);
      return FieldEndo(coeff, {q, q * tv}, std::vector<FieldElem>{q, tv / q});
    }();
    FieldSeriesContext ctx{SeriesKind::PlainSigma,
                           FieldCoeffRing(coeff, std::move(sigma),
                                          FieldDerivation::zero(coeff)),
                           prec, "x"};
    validate_series_context(ctx);
    return SeriesFieldPreset{std::move(ore), std::move(ctx)};
  }

  fail("config", "unknown series preset '" + name +
                     "' (expected weyl, quantum_matrices, quantum_torus, or skew_poly)");
}

}  // namespace skewring
