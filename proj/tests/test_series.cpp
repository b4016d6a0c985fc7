#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "skewring/series.hpp"

using namespace skewring;

namespace {

FieldElem num(const TowerPtr& tw, long v) { return FieldElem::integer(tw, v); }

// Random truncated series over the weyl coefficient field Q(x1): a few
// polynomial coefficients around a random lead exponent.
FieldSeries random_field_series(const FieldSeriesContext& ctx, std::mt19937& rng,
                                long long prec) {
  std::uniform_int_distribution<int> lead(-2, 2);
  std::uniform_int_distribution<int> nterms(1, 4);
  std::uniform_int_distribution<int> cdist(-3, 3);
  std::uniform_int_distribution<int> ddist(0, 2);
  FieldElem x1 = FieldElem::variable(ctx.ring.tower, ctx.ring.tower->height() - 1);
  long long r = lead(rng);
  std::vector<FieldElem> cs;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    FieldElem c = ctx.ring.zero();
    for (int d = ddist(rng); d >= 0; --d)
      c = c * x1 + num(ctx.ring.tower, cdist(rng));
    cs.push_back(c);
  }
  if (cs[0].is_zero()) cs[0] = num(ctx.ring.tower, 1);
  FieldSeries s = make_series(ctx, r, std::move(cs), 0, true);
  return series_truncate(ctx, s, prec);
}

}  // namespace

TEST_CASE("plain-twist expansion of a geometric fraction") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("skew_poly", std::nullopt, 12));
  const auto& ctx = sp.ctx;
  const auto& t = sp.ore.tower;
  CHECK(ctx.kind == SeriesKind::PlainSigma);
  CHECK(ctx.var == "x");

  OrePoly one_p = OrePoly::constant(t, num(t->base(), 1));
  OrePoly x = OrePoly::variable(t, 0);
  FieldSeries g = embed_fraction(ctx, one_p, one_p - x, 12);
  CHECK(series_val(g) == Valuation::finite(0));
  CHECK(!g.exact);
  CHECK(g.prec == 12);
  for (long long e = 0; e < 12; ++e)
    CHECK(series_coeff(ctx, g, e) == ctx.ring.one());

  FieldSeries low = embed_fraction(ctx, one_p, one_p - x, 4);
  CHECK(series_str(ctx, low) == "1 + x + x^2 + x^3 + O(x^4)");
}

TEST_CASE("plain-twist inversion picks up iterated twists of the coefficients") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("skew_poly", std::nullopt, 16));
  const auto& ctx = sp.ctx;
  const auto& t = sp.ore.tower;
  FieldElem q = FieldElem::variable(ctx.ring.tower, 0);
  FieldElem tv = FieldElem::variable(ctx.ring.tower, 1);

  // den = 1 - x*t; its inverse is sum_k (x*t)^k, whose coefficient-left
  // normal form at x^2 is t^2/q^3.
  OrePoly one_p = OrePoly::constant(t, num(t->base(), 1));
  OrePoly den = one_p - OrePoly::variable(t, 0) *
                            OrePoly::constant(t, FieldElem::variable(t->base(), 1));
  FieldSeries g = embed_fraction(ctx, one_p, den, 10);
  CHECK(series_coeff(ctx, g, 1) == tv / q);
  CHECK(series_coeff(ctx, g, 2) == tv * tv / q.pow(3));

  // re-multiplication closes from both sides
  FieldSeries ed = embed_poly(ctx, den);
  CHECK(series_sub(ctx, series_mul(ctx, ed, g), series_one(ctx)).coeffs.empty());
  CHECK(series_sub(ctx, series_mul(ctx, g, ed), series_one(ctx)).coeffs.empty());
}

TEST_CASE("inverse-variable commutation expands by the derivation chain") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("weyl", std::nullopt, 16));
  const auto& ctx = sp.ctx;
  FieldElem x1 = FieldElem::variable(ctx.ring.tower, 0);
  CHECK(ctx.kind == SeriesKind::InverseDelta);

  // y * x1 = x1*y + y^2 (the chain dies after one derivation)
  FieldSeries up = commute_power(ctx, 1, x1);
  CHECK(up.exact);
  CHECK(series_coeff(ctx, up, 1) == x1);
  CHECK(series_coeff(ctx, up, 2) == ctx.ring.one());
  CHECK(series_str(ctx, up) == "x1*y + y^2");

  // y^{-1} * x1 = x1*y^{-1} - 1, exactly
  FieldSeries down = commute_power(ctx, -1, x1);
  CHECK(down.exact);
  CHECK(series_coeff(ctx, down, -1) == x1);
  CHECK(series_coeff(ctx, down, 0) == -ctx.ring.one());

  // a coefficient with an infinite chain is truncated at the context precision
  FieldSeries live = commute_power(ctx, 1, x1.inverse());
  CHECK(!live.exact);
  CHECK(live.prec == 16);
  CHECK(series_coeff(ctx, live, 2) == -(x1 * x1).inverse());
}

TEST_CASE("embedded Weyl generators have commutator exactly one") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("weyl", std::nullopt, 16));
  const auto& ctx = sp.ctx;
  const auto& t = sp.ore.tower;
  FieldSeries e1 = embed_poly(ctx, OrePoly::variable(t, 0));
  FieldSeries e2 = embed_poly(ctx, OrePoly::variable(t, 1));

  FieldSeries comm = series_sub(ctx, series_mul(ctx, e1, e2), series_mul(ctx, e2, e1));
  CHECK(comm.exact);
  CHECK(series_val(series_sub(ctx, comm, series_one(ctx))).is_infinite());
}

TEST_CASE("series inversion closes from both sides at the certified precision") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("weyl", std::nullopt, 12));
  const auto& ctx = sp.ctx;

  // geometric check with an exact input and explicit target
  FieldSeries f = series_sub(ctx, series_one(ctx),
                             series_monomial(ctx, 1, ctx.ring.one()));
  FieldSeries g = series_inv(ctx, f, 12);
  for (long long e = 0; e < 12; ++e)
    CHECK(series_coeff(ctx, g, e) == ctx.ring.one());

  // y^{-1} + x1 mixes the inverse variable with a live coefficient
  FieldElem x1 = FieldElem::variable(ctx.ring.tower, 0);
  FieldSeries h = series_add(ctx, series_monomial(ctx, -1, ctx.ring.one()),
                             series_scalar(ctx, x1));
  FieldSeries hi = series_inv(ctx, h, 10);
  CHECK(series_sub(ctx, series_mul(ctx, h, hi), series_one(ctx)).coeffs.empty());
  CHECK(series_sub(ctx, series_mul(ctx, hi, h), series_one(ctx)).coeffs.empty());

  // random truncated units: f * f^{-1} = f^{-1} * f = 1 within knowledge
  std::mt19937 rng(99u);
  for (int it = 0; it < 10; ++it) {
    FieldSeries u = random_field_series(ctx, rng, 12);
    FieldSeries v = series_inv(ctx, u);
    CHECK(v.prec == 12 - 2 * u.lead);
    CHECK(series_sub(ctx, series_mul(ctx, u, v), series_one(ctx)).coeffs.empty());
    CHECK(series_sub(ctx, series_mul(ctx, v, u), series_one(ctx)).coeffs.empty());
  }
}

TEST_CASE("torus-coefficient series reproduce the quantum-matrix commutator") {
  auto sp = std::get<SeriesTorusPreset>(
      make_series_preset("quantum_matrices", std::nullopt, 12));
  const auto& ctx = sp.ctx;
  const auto& t = sp.ore.tower;
  const auto& ring = ctx.ring.ring;
  FieldElem q = ring->q();

  TorusSeries ea = embed_poly(ctx, OrePoly::variable(t, 0));
  TorusSeries ed = embed_poly(ctx, OrePoly::variable(t, 3));
  TorusSeries comm = series_sub(ctx, series_mul(ctx, ea, ed), series_mul(ctx, ed, ea));
  QTorusElem bc = QTorusElem::monomial(ring, {0, 1, 1}, q - q.inverse());
  CHECK(comm.exact);
  CHECK(series_val(series_sub(ctx, comm, series_scalar(ctx, bc))).is_infinite());

  // an invertible-monomial lead with a non-unit tail still inverts
  QTorusElem ab = QTorusElem::monomial(ring, {1, 1, 0}, FieldElem::integer(ring->tower(), 1));
  QTorusElem tail = QTorusElem::variable(ring, 0) + QTorusElem::variable(ring, 1);
  TorusSeries f = series_add(ctx, series_monomial(ctx, -1, ab),
                             series_scalar(ctx, tail));
  TorusSeries g = series_inv(ctx, f, 8);
  CHECK(series_sub(ctx, series_mul(ctx, f, g), series_one(ctx)).coeffs.empty());
  CHECK(series_sub(ctx, series_mul(ctx, g, f), series_one(ctx)).coeffs.empty());

  // a sum of distinct monomials is not a unit of the coefficient ring
  TorusSeries bad = series_scalar(ctx, tail);
  CHECK_THROWS_WITH_AS(series_inv(ctx, bad, 8), doctest::Contains("not invertible"),
                       Error);
}

TEST_CASE("embedding is multiplicative on random polynomials") {
  std::mt19937 rng(1234u);
  auto random_ore = [&](const OreTowerPtr& t) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> expd(0, 2);
    std::uniform_int_distribution<int> coeff(-3, 3);
    OrePoly p = OrePoly::zero(t);
    for (int i = nterms(rng); i > 0; --i) {
      OreMono m(static_cast<size_t>(t->nvars()), 0);
      for (auto& e : m) e = expd(rng);
      int c = coeff(rng);
      p = p + OrePoly::monomial(t, m, num(t->base(), c == 0 ? 1 : c));
    }
    return p;
  };

  {
    auto sp = std::get<SeriesFieldPreset>(make_series_preset("weyl", std::nullopt, 16));
    for (int it = 0; it < 8; ++it) {
      OrePoly f = random_ore(sp.ore.tower), g = random_ore(sp.ore.tower);
      FieldSeries lhs = embed_poly(sp.ctx, f * g);
      FieldSeries rhs = series_mul(sp.ctx, embed_poly(sp.ctx, f), embed_poly(sp.ctx, g));
      CHECK(series_agree(sp.ctx, lhs, rhs, 10));
    }
  }
  {
    auto sp = std::get<SeriesFieldPreset>(
        make_series_preset("quantum_torus", std::nullopt, 16));
    for (int it = 0; it < 8; ++it) {
      OrePoly f = random_ore(sp.ore.tower), g = random_ore(sp.ore.tower);
      FieldSeries lhs = embed_poly(sp.ctx, f * g);
      FieldSeries rhs = series_mul(sp.ctx, embed_poly(sp.ctx, f), embed_poly(sp.ctx, g));
      CHECK(lhs.exact);
      CHECK(rhs.exact);  // plain twist never truncates
      CHECK(series_val(series_sub(sp.ctx, lhs, rhs)).is_infinite());
    }
  }
  {
    auto sp = std::get<SeriesTorusPreset>(
        make_series_preset("quantum_matrices", std::nullopt, 16));
    for (int it = 0; it < 6; ++it) {
      OrePoly f = random_ore(sp.ore.tower), g = random_ore(sp.ore.tower);
      TorusSeries lhs = embed_poly(sp.ctx, f * g);
      TorusSeries rhs = series_mul(sp.ctx, embed_poly(sp.ctx, f), embed_poly(sp.ctx, g));
      CHECK(series_agree(sp.ctx, lhs, rhs, 10));
    }
  }
}

TEST_CASE("valuations distinguish exact zero from zero-to-precision") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("weyl", std::nullopt, 12));
  const auto& ctx = sp.ctx;
  FieldElem x1 = FieldElem::variable(ctx.ring.tower, 0);

  CHECK(series_val(FieldSeries{}) == Valuation::infinite());
  CHECK(series_val(series_monomial(ctx, -3, x1)) == Valuation::finite(-3));

  FieldSeries trunc = series_truncate(ctx, series_one(ctx), 5);
  FieldSeries diff = series_sub(ctx, trunc, series_one(ctx));
  CHECK(series_val(diff) == Valuation::at_least(5));
  CHECK(series_str(ctx, diff) == "O(y^5)");
  CHECK(series_val(diff).at_least_n(5));
  CHECK(!series_val(diff).at_least_n(6));
}

TEST_CASE("diagonal limits of Cauchy sequences") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("skew_poly", std::nullopt, 20));
  const auto& ctx = sp.ctx;
  const auto& t = sp.ore.tower;
  OrePoly one_p = OrePoly::constant(t, num(t->base(), 1));
  OrePoly x = OrePoly::variable(t, 0);

  // partial sums of the geometric series
  std::vector<FieldSeries> u;
  FieldSeries acc;
  for (long long k = 0; k <= 9; ++k) {
    acc = series_add(ctx, acc, series_monomial(ctx, k, ctx.ring.one()));
    u.push_back(acc);
  }
  FieldSeries lim = cauchy_limit(ctx, u);
  CHECK(!lim.exact);
  CHECK(lim.prec == 9);
  FieldSeries geo = embed_fraction(ctx, one_p, one_p - x, 9);
  CHECK(series_val(series_sub(ctx, lim, geo)).at_least_n(9));

  // a constant sequence converges to its value, exactness preserved
  FieldSeries c = series_add(ctx, series_one(ctx), series_monomial(ctx, 2, ctx.ring.one()));
  FieldSeries clim = cauchy_limit(ctx, {c, c, c});
  CHECK(clim.exact);
  CHECK(series_val(series_sub(ctx, clim, c)).is_infinite());

  // decreasing difference valuations are rejected
  FieldSeries u0 = series_one(ctx);
  FieldSeries u1 = series_add(ctx, u0, series_monomial(ctx, 2, ctx.ring.one()));
  FieldSeries u2 = series_add(ctx, u1, series_monomial(ctx, 1, ctx.ring.one()));
  CHECK_THROWS_WITH_AS(cauchy_limit(ctx, {u0, u1, u2}),
                       doctest::Contains("non-Cauchy"), Error);
}

TEST_CASE("series error paths carry stable codes") {
  auto sp = std::get<SeriesFieldPreset>(make_series_preset("weyl", std::nullopt, 12));
  const auto& ctx = sp.ctx;
  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return "";
  };

  CHECK(code_of([&] { series_inv(ctx, FieldSeries{}); }) == "domain");
  CHECK(code_of([&] { series_inv(ctx, series_zero_to(ctx, 12)); }) == "domain");
  // exact multi-term input without a target precision
  FieldSeries f = series_add(ctx, series_one(ctx), series_monomial(ctx, 1, ctx.ring.one()));
  CHECK(code_of([&] { series_inv(ctx, f); }) == "domain");
  // reading past the precision
  FieldSeries tr = series_truncate(ctx, series_one(ctx), 4);
  CHECK(code_of([&] { series_coeff(ctx, tr, 4); }) == "domain");
  CHECK(code_of([&] { make_series_preset("frobenius", std::nullopt, 8); }) == "config");

  // a plain-twist context refuses a nonzero derivation
  TowerPtr tw = FieldTower::make({"t"});
  FieldEndo id = FieldEndo::identity(tw);
  FieldDerivation ddt(id, {FieldElem::integer(tw, 1)});
  FieldSeriesContext bad{SeriesKind::PlainSigma, FieldCoeffRing(tw, id, ddt), 8, "y"};
  CHECK(code_of([&] { validate_series_context(bad); }) == "config");

  // a twist without an inverse witness is not an automorphism
  FieldElem t2 = FieldElem::variable(tw, 0) * FieldElem::variable(tw, 0);
  FieldEndo sq(tw, {t2}, std::nullopt);
  FieldSeriesContext noinv{SeriesKind::PlainSigma,
                           FieldCoeffRing(tw, sq, FieldDerivation::zero(tw)), 8, "y"};
  CHECK(code_of([&] { validate_series_context(noinv); }) == "config");

  // embedding into a context built for another preset
  auto other = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", std::nullopt, 12));
  OrePoly w = OrePoly::variable(sp.ore.tower, 0);
  CHECK(code_of([&] { embed_poly(other.ctx, w); }) == "mismatch");

  // division by the zero polynomial
  OrePoly z = OrePoly::zero(sp.ore.tower);
  OrePoly onep = OrePoly::constant(sp.ore.tower, num(sp.ore.tower->base(), 1));
  CHECK(code_of([&] { embed_fraction(sp.ctx, onep, z, 8); }) == "domain");
}
