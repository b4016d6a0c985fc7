#include <doctest.h>

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skewring/freeness.hpp"
#include "skewring/linalg.hpp"
#include "skewring/nilgroup.hpp"

using namespace skewring;

namespace {

FieldElem num(const TowerPtr& tw, long v) { return FieldElem::integer(tw, v); }

// Evaluator for (1 - x)^{-1} in the given series context.
std::function<FieldSeries(long long)> geom_evaluator(FieldSeriesContext base) {
  return [base](long long p) {
    FieldSeriesContext c = base;
    c.prec = p;
    FieldSeries f =
        series_sub(c, series_one(c), series_monomial(c, 1, c.ring.one()));
    return series_inv(c, f, p);
  };
}

// Evaluator for t * (1 - x)^{-1}.
std::function<FieldSeries(long long)> t_geom_evaluator(FieldSeriesContext base) {
  return [base](long long p) {
    FieldSeriesContext c = base;
    c.prec = p;
    FieldSeries f =
        series_sub(c, series_one(c), series_monomial(c, 1, c.ring.one()));
    FieldElem t = FieldElem::variable(c.ring.tower, c.ring.tower->height() - 1);
    return series_mul(c, series_scalar(c, t), series_inv(c, f, p));
  };
}

long long det3(const long long m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST_CASE("monomial words come in graded-lexicographic order with the closed-form count") {
  auto w21 = enum_monomials(2, 1);
  REQUIRE(w21.size() == 3);
  CHECK(w21[0] == Word{});
  CHECK(w21[1] == Word{0});
  CHECK(w21[2] == Word{1});

  auto w22 = enum_monomials(2, 2);
  REQUIRE(w22.size() == 7);
  CHECK(w22[3] == Word{0, 0});
  CHECK(w22[4] == Word{0, 1});
  CHECK(w22[5] == Word{1, 0});
  CHECK(w22[6] == Word{1, 1});

  CHECK(enum_monomials(3, 3).size() == 40);
  CHECK(enum_monomials(1, 4).size() == 5);
  CHECK(enum_monomials(5, 0).size() == 1);

  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
      return "";
    } catch (const Error& e) {
      return e.code();
    }
  };
  CHECK(code_of([&] { enum_monomials(0, 2); }) == "domain");
  CHECK(code_of([&] { enum_monomials(2, -1); }) == "domain");
  CHECK(code_of([&] { enum_monomials(10, 7); }) == "domain");

  OrePreset op = make_ore_preset("weyl", std::nullopt);
  CandidateSet cands{OreCandidates{op.tower,
                                   {OrePoly::variable(op.tower, 0),
                                    OrePoly::variable(op.tower, 1)}},
                     {"x1", "x2"},
                     ScalarField::Rationals};
  CHECK(word_str(cands, {}) == "1");
  CHECK(word_str(cands, {0, 1}) == "x1*x2");
  CHECK(word_str(cands, {1, 1, 0}) == "x2*x2*x1");
}

TEST_CASE("exact rank and nullspace over a rational function field") {
  TowerPtr tw = FieldTower::make({"t"});
  FieldElem t = FieldElem::variable(tw, 0);
  FieldElem one = num(tw, 1);

  FieldMatrix a = {{one, t}, {t, t * t}};
  CHECK(field_matrix_rank(a) == 1);
  FieldMatrix b = {{one, t}, {num(tw, 0), one}};
  CHECK(field_matrix_rank(b) == 2);
  CHECK(field_matrix_rank({}) == 0);

  auto ns = field_matrix_nullspace({{one, t}}, tw, 2);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -t);
  CHECK(ns[0][1] == one);

  auto full = field_matrix_nullspace({}, tw, 3);
  REQUIRE(full.size() == 3);
  CHECK(full[1][1] == one);
  CHECK(full[1][0].is_zero());

  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
      return "";
    } catch (const Error& e) {
      return e.code();
    }
  };
  CHECK(code_of([&] { field_matrix_rank({{one}, {one, t}}); }) == "mismatch");
  CHECK(code_of([&] { field_matrix_nullspace({{one, t}}, tw, 3); }) == "mismatch");
}

TEST_CASE("a commuting pair is free at degree one and dependent at degree two") {
  OrePreset op = make_ore_preset("skew_poly", mpq_class(2));
  const TowerPtr& tw = op.tower->base();
  FieldElem t = FieldElem::variable(tw, 0);
  CandidateSet cands{OreCandidates{op.tower,
                                   {OrePoly::constant(op.tower, t),
                                    OrePoly::constant(op.tower, t * t)}},
                     {"u", "v"},
                     ScalarField::Rationals};

  Certificate free1 = certify(cands, 1, 0);
  CHECK(free1.verdict == FreenessVerdict::FreeUpTo);
  CHECK(free1.degree == 1);
  CHECK(free1.precision_used == 0);
  CHECK(free1.relation.empty());

  Certificate rel2 = certify(cands, 2, 0);
  REQUIRE(rel2.verdict == FreenessVerdict::RelationFound);
  REQUIRE(rel2.relation.size() == 7);
  CHECK(rel2.words[2] == "v");
  CHECK(rel2.words[3] == "u*u");
  CHECK(rel2.relation[2] == num(tw, 1));
  CHECK(rel2.relation[3] == num(tw, -1));
  for (std::size_t j : {0, 1, 4, 5, 6}) CHECK(rel2.relation[j].is_zero());

  // determinism: byte-identical certificates on repeated runs
  Certificate again = certify(cands, 2, 0);
  CHECK(again.verdict == rel2.verdict);
  CHECK(again.reason == rel2.reason);
  CHECK(again.words == rel2.words);
  for (std::size_t j = 0; j < 7; ++j) CHECK(again.relation[j] == rel2.relation[j]);

  // specialization cannot confirm this relation exactly at one sample point,
  // so it reports the suspect vector as inconclusive instead of asserting it
  Certificate spec = certify(cands, 2, 0, FlattenStrategy::Specialize);
  CHECK(spec.verdict == FreenessVerdict::Inconclusive);
  CHECK(!spec.relation.empty());
  CHECK(spec.reason.find("sampled") != std::string::npos);
}

TEST_CASE("the weyl generators recover their defining relation at degree two") {
  OrePreset op = make_ore_preset("weyl", std::nullopt);
  const TowerPtr& tw = op.tower->base();
  CandidateSet cands{OreCandidates{op.tower,
                                   {OrePoly::variable(op.tower, 0),
                                    OrePoly::variable(op.tower, 1)}},
                     {"x1", "x2"},
                     ScalarField::Rationals};

  CHECK(certify(cands, 1, 0).verdict == FreenessVerdict::FreeUpTo);

  Certificate c = certify(cands, 2, 0);
  REQUIRE(c.verdict == FreenessVerdict::RelationFound);
  REQUIRE(c.relation.size() == 7);
  // 1 - x1*x2 + x2*x1 = 0, i.e. the normalized commutation relation
  CHECK(c.relation[0] == num(tw, 1));
  CHECK(c.relation[4] == num(tw, -1));
  CHECK(c.relation[5] == num(tw, 1));
  for (std::size_t j : {1, 2, 3, 6}) CHECK(c.relation[j].is_zero());
}

TEST_CASE("the q-commuting torus pair yields the defining relation") {
  QTorusRingPtr sym = make_quantum_torus_ring(std::nullopt);
  const TowerPtr& tw = sym->tower();
  FieldElem lam = FieldElem::variable(tw, 0);
  CandidateSet cands{TorusCandidates{sym,
                                     {QTorusElem::variable(sym, 0),
                                      QTorusElem::variable(sym, 1)}},
                     {"x", "y"},
                     ScalarField::CoefficientField};

  CHECK(certify(cands, 1, 0).verdict == FreenessVerdict::FreeUpTo);

  Certificate c = certify(cands, 2, 0);
  REQUIRE(c.verdict == FreenessVerdict::RelationFound);
  REQUIRE(c.relation.size() == 7);
  CHECK(c.words[4] == "x*y");
  CHECK(c.words[5] == "y*x");
  CHECK(c.relation[4] == num(tw, 1));
  CHECK(c.relation[5] == -lam);
  for (std::size_t j : {0, 1, 2, 3, 6}) CHECK(c.relation[j].is_zero());

  // independent re-evaluation of the reported combination
  QTorusElem x = QTorusElem::variable(sym, 0), y = QTorusElem::variable(sym, 1);
  CHECK((x * y + (y * x).scaled(-lam)).is_zero());

  // rational parameter: the same shape over plain rational scalars
  QTorusRingPtr rat = make_quantum_torus_ring(mpq_class(3));
  CandidateSet rcands{TorusCandidates{rat,
                                      {QTorusElem::variable(rat, 0),
                                       QTorusElem::variable(rat, 1)}},
                      {"x", "y"},
                      ScalarField::Rationals};
  Certificate rc = certify(rcands, 2, 0);
  REQUIRE(rc.verdict == FreenessVerdict::RelationFound);
  CHECK(rc.relation[4] == num(rat->tower(), 1));
  CHECK(rc.relation[5] == num(rat->tower(), -3));
}

TEST_CASE("group-ring candidates: free generators versus a planted power relation") {
  GroupRingPtr R = make_heisenberg_ring();
  GroupRingElem f1 = GroupRingElem::generator(R, 0);
  GroupRingElem f2 = GroupRingElem::generator(R, 1);

  CandidateSet free_pair{GroupCandidates{R, {f1, f2}},
                         {"f1", "f2"},
                         ScalarField::Rationals};
  CHECK(certify(free_pair, 2, 0).verdict == FreenessVerdict::FreeUpTo);

  CandidateSet planted{GroupCandidates{R, {f1, f1 * f1}},
                       {"u", "v"},
                       ScalarField::Rationals};
  Certificate c = certify(planted, 2, 0);
  REQUIRE(c.verdict == FreenessVerdict::RelationFound);
  CHECK(c.relation[2] == num(R->tower(), 1));
  CHECK(c.relation[3] == num(R->tower(), -1));
}

TEST_CASE("series candidates over a twisted base: the frozen expansion oracle") {
  auto sp = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", mpq_class(2), 30));
  const FieldSeriesContext& ctx = sp.ctx;
  const TowerPtr& tw = ctx.ring.tower;
  FieldElem t = FieldElem::variable(tw, 0);

  auto ueval = geom_evaluator(ctx);
  auto veval = t_geom_evaluator(ctx);
  FieldSeries U = ueval(10), V = veval(10);
  FieldSeries UU = series_mul(ctx, U, U), UV = series_mul(ctx, U, V);
  FieldSeries VU = series_mul(ctx, V, U), VV = series_mul(ctx, V, V);

  // closed forms for the coefficient of x^k in each degree-<=2 word, under
  // the convention b*x = x*sigma(b) (so x^i pulls sigma^{-i} through and
  // sigma(t) = 2t contributes halving factors):
  //   u: 1                  v: t           u*u: k+1
  //   u*v: (2 - 2^{-k})*t   v*u: (k+1)*t   v*v: (2 - 2^{-k})*t^2
  for (long k = 0; k < 8; ++k) {
    FieldElem geo = FieldElem::rational(
        tw, mpq_class((1L << (k + 1)) - 1, 1L << k));
    CHECK(series_coeff(ctx, U, k) == num(tw, 1));
    CHECK(series_coeff(ctx, V, k) == t);
    CHECK(series_coeff(ctx, UU, k) == num(tw, k + 1));
    CHECK(series_coeff(ctx, UV, k) == geo * t);
    CHECK(series_coeff(ctx, VU, k) == num(tw, k + 1) * t);
    CHECK(series_coeff(ctx, VV, k) == geo * t * t);
  }

  // The t-degree splits the flattened matrix into three blocks; each block is
  // already full-rank on the first three series coefficients (rows below are
  // the k = 0, 1, 2 rows scaled by 4 to clear denominators), so the frozen
  // verdict for the certifier below is freeness at degree 2.
  const long long b0[3][3] = {{1, 1, 1}, {0, 1, 2}, {0, 1, 3}};      // 1, u, u*u
  const long long b1[3][3] = {{4, 4, 4}, {4, 6, 8}, {4, 7, 12}};     // v, u*v, v*u
  CHECK(det3(b0) != 0);
  CHECK(det3(b1) != 0);
}

TEST_CASE("series candidates over a twisted base are certified free at degree two") {
  auto sp = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", mpq_class(2), 30));
  CandidateSet cands{SeriesCandidates{sp.ctx, {geom_evaluator(sp.ctx),
                                               t_geom_evaluator(sp.ctx)}},
                     {"u", "v"},
                     ScalarField::Rationals};

  Certificate c = certify(cands, 2, 30);
  CHECK(c.verdict == FreenessVerdict::FreeUpTo);
  CHECK(c.degree == 2);
  CHECK(c.precision_requested == 30);
  CHECK(c.precision_used == 30);
  CHECK(c.words.size() == 7);
  CHECK(c.relation.empty());

  // truncation-stability: the verdict persists when the precision doubles
  Certificate twice = certify(cands, 2, 60);
  CHECK(twice.verdict == FreenessVerdict::FreeUpTo);
  CHECK(twice.precision_used == 60);

  // the whole coefficient field is not central here: x*t = 2t*x
  CHECK_FALSE(commutant_check(
      CandidateSet{SeriesCandidates{sp.ctx, {geom_evaluator(sp.ctx)}},
                   {"u"},
                   ScalarField::CoefficientField},
      8));
  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
      return "";
    } catch (const Error& e) {
      return e.code();
    }
  };
  CandidateSet twisted{SeriesCandidates{sp.ctx, {geom_evaluator(sp.ctx)}},
                       {"u"},
                       ScalarField::CoefficientField};
  CHECK(code_of([&] { certify(twisted, 1, 8); }) == "domain");
}

TEST_CASE("a planted series relation is reported and never masked as freeness") {
  auto sp = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", mpq_class(2), 16));
  auto u = geom_evaluator(sp.ctx);
  // v = 2u: an exact rational relation of degree 1
  FieldSeriesContext base = sp.ctx;
  auto v = [base, u](long long p) {
    FieldSeriesContext c = base;
    c.prec = p;
    return series_mul(c, series_scalar(c, num(c.ring.tower, 2)), u(p));
  };
  CandidateSet cands{SeriesCandidates{sp.ctx, {u, v}},
                     {"u", "v"},
                     ScalarField::Rationals};
  Certificate c = certify(cands, 1, 16);
  REQUIRE(c.verdict == FreenessVerdict::RelationFound);
  REQUIRE(c.relation.size() == 3);
  CHECK(c.relation[0].is_zero());
  CHECK(c.relation[1] == num(sp.ctx.ring.tower, 1));
  CHECK(c.relation[2] == FieldElem::rational(sp.ctx.ring.tower, mpq_class(-1, 2)));
  CHECK(c.precision_used == 128);  // validated at every rung of the ladder
  CHECK(c.reason.find("precision") != std::string::npos);
}

TEST_CASE("an evaluator hidden below every window reads as a bounded-precision zero") {
  auto sp = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", mpq_class(2), 8));
  FieldSeriesContext base = sp.ctx;
  // the leading exponent always sits beyond the working precision, so the
  // candidate is indistinguishable from zero at every rung; the honest
  // verdict is the bounded-precision relation u = 0, never freeness
  auto buried = [base](long long p) {
    FieldSeriesContext c = base;
    c.prec = p;
    return series_monomial(c, 2 * p, c.ring.one());
  };
  CandidateSet cands{SeriesCandidates{sp.ctx, {buried}},
                     {"u"},
                     ScalarField::Rationals};
  Certificate c = certify(cands, 1, 8);
  REQUIRE(c.verdict == FreenessVerdict::RelationFound);
  CHECK(c.relation[0].is_zero());
  CHECK(c.relation[1] == num(sp.ctx.ring.tower, 1));
}

TEST_CASE("an unstable evaluator exhausts the ladder and stays inconclusive") {
  auto sp = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", mpq_class(2), 8));
  FieldSeriesContext base = sp.ctx;
  auto honest = [base](long long p) {
    FieldSeriesContext c = base;
    c.prec = p;
    return series_monomial(c, 1, c.ring.one());
  };
  // violates the evaluator contract at the final rung (precision 64), so the
  // suspected relation u = v survives three rungs and then breaks with no
  // precision left to settle the fresh suspect
  auto unstable = [base](long long p) {
    FieldSeriesContext c = base;
    c.prec = p;
    return series_monomial(c, 1, num(c.ring.tower, p >= 64 ? 2 : 1));
  };
  CandidateSet cands{SeriesCandidates{sp.ctx, {honest, unstable}},
                     {"u", "v"},
                     ScalarField::Rationals};
  Certificate c = certify(cands, 1, 8);
  REQUIRE(c.verdict == FreenessVerdict::Inconclusive);
  REQUIRE(c.relation.size() == 3);
  CHECK(c.relation[1] == num(sp.ctx.ring.tower, 1));
  CHECK(c.relation[2] == FieldElem::rational(sp.ctx.ring.tower, mpq_class(-1, 2)));
  CHECK(c.precision_used == 64);
  CHECK(c.reason.find("suspect") != std::string::npos);
}

TEST_CASE("commutant sampling accepts central scalars and rejects twisted ones") {
  // rationals are central in every ambient
  OrePreset weyl = make_ore_preset("weyl", std::nullopt);
  CandidateSet wc{OreCandidates{weyl.tower,
                                {OrePoly::variable(weyl.tower, 0),
                                 OrePoly::variable(weyl.tower, 1)}},
                  {"x1", "x2"},
                  ScalarField::Rationals};
  CHECK(commutant_check(wc, 1));

  // the coefficient t is not central once the tower variable twists: t*x != x*t
  OrePreset skew = make_ore_preset("skew_poly", std::nullopt);
  CandidateSet sc{OreCandidates{skew.tower, {OrePoly::variable(skew.tower, 0)}},
                  {"x"},
                  ScalarField::CoefficientField};
  CHECK_FALSE(commutant_check(sc, 1));
  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
      return "";
    } catch (const Error& e) {
      return e.code();
    }
  };
  CHECK(code_of([&] { certify(sc, 1, 0); }) == "domain");

  // group ring with a twisted coefficient action: sigma1 scales t by q
  TowerPtr tw = FieldTower::make({"q", "t"});
  FieldElem q = FieldElem::variable(tw, 0), t = FieldElem::variable(tw, 1);
  FieldEndo sigma1(tw, {q, q * t}, {{q, t * q.inverse()}});
  std::map<std::pair<int, int>, GroupElem> corr;
  corr[{1, 0}] = GroupElem{0, 0, -1};
  GroupRingPtr R = GroupRing::make(
      3, corr, tw,
      std::vector<FieldEndo>{sigma1, FieldEndo::identity(tw), FieldEndo::identity(tw)});
  CandidateSet gc{GroupCandidates{R, {GroupRingElem::generator(R, 0)}},
                  {"f1"},
                  ScalarField::CoefficientField};
  CHECK_FALSE(commutant_check(gc, 1));
  CandidateSet gr{GroupCandidates{R, {GroupRingElem::generator(R, 0)}},
                  {"f1"},
                  ScalarField::Rationals};
  CHECK(commutant_check(gr, 1));

  // the torus treats its whole coefficient tower as central
  QTorusRingPtr torus = make_quantum_torus_ring(std::nullopt);
  CandidateSet tc{TorusCandidates{torus, {QTorusElem::variable(torus, 0)}},
                  {"x"},
                  ScalarField::CoefficientField};
  CHECK(commutant_check(tc, 1));

  // an empty candidate list commutes vacuously
  CandidateSet empty{OreCandidates{weyl.tower, {}}, {}, ScalarField::Rationals};
  CHECK(commutant_check(empty, 1));
}

TEST_CASE("specialization certifies freeness over tall towers and stays honest") {
  OrePreset skew = make_ore_preset("skew_poly", std::nullopt);  // base Q(q, t)
  const TowerPtr& tw = skew.tower->base();
  FieldElem q = FieldElem::variable(tw, 0), t = FieldElem::variable(tw, 1);
  OrePoly x = OrePoly::variable(skew.tower, 0);
  CandidateSet cands{OreCandidates{skew.tower,
                                   {OrePoly::constant(skew.tower, q) * x,
                                    OrePoly::constant(skew.tower, t) * x * x}},
                     {"a", "b"},
                     ScalarField::Rationals};

  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
      return "";
    } catch (const Error& e) {
      return e.code();
    }
  };
  // exact flattening over a height-two tower is out of scope
  CHECK(code_of([&] { certify(cands, 1, 0); }) == "domain");

  Certificate c = certify(cands, 1, 0, FlattenStrategy::Specialize);
  CHECK(c.verdict == FreenessVerdict::FreeUpTo);
  Certificate other = certify(cands, 1, 0, FlattenStrategy::Specialize, 99);
  CHECK(other.verdict == FreenessVerdict::FreeUpTo);

  // a sample-point "relation" that fails exact re-evaluation is inconclusive
  CandidateSet qonly{OreCandidates{skew.tower, {OrePoly::constant(skew.tower, q)}},
                     {"u"},
                     ScalarField::Rationals};
  Certificate inc = certify(qonly, 1, 0, FlattenStrategy::Specialize);
  CHECK(inc.verdict == FreenessVerdict::Inconclusive);
  CHECK(inc.reason.find("sampled") != std::string::npos);
}

TEST_CASE("certification rejects ill-posed candidate sets") {
  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
      return "";
    } catch (const Error& e) {
      return e.code();
    }
  };
  OrePreset op = make_ore_preset("weyl", std::nullopt);
  OrePoly x1 = OrePoly::variable(op.tower, 0);

  CandidateSet empty{OreCandidates{op.tower, {}}, {}, ScalarField::Rationals};
  CHECK(code_of([&] { certify(empty, 1, 0); }) == "domain");

  CandidateSet unnamed{OreCandidates{op.tower, {x1}}, {}, ScalarField::Rationals};
  CHECK(code_of([&] { certify(unnamed, 1, 0); }) == "config");

  CandidateSet ok{OreCandidates{op.tower, {x1}}, {"x1"}, ScalarField::Rationals};
  CHECK(code_of([&] { certify(ok, -1, 0); }) == "domain");

  OrePreset other = make_ore_preset("weyl", std::nullopt);
  CandidateSet crossed{OreCandidates{other.tower, {x1}}, {"x1"},
                       ScalarField::Rationals};
  CHECK(code_of([&] { certify(crossed, 1, 0); }) == "mismatch");

  auto sp = std::get<SeriesFieldPreset>(
      make_series_preset("skew_poly", mpq_class(2), 8));
  CandidateSet noprec{SeriesCandidates{sp.ctx, {geom_evaluator(sp.ctx)}},
                      {"u"},
                      ScalarField::Rationals};
  CHECK(code_of([&] { certify(noprec, 1, 0); }) == "domain");

  CandidateSet hole{SeriesCandidates{sp.ctx, {std::function<FieldSeries(long long)>{}}},
                    {"u"},
                    ScalarField::Rationals};
  CHECK(code_of([&] { certify(hole, 1, 8); }) == "config");
}
