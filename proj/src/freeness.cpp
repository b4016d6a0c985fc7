#include "skewring/freeness.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <type_traits>
#include <utility>

#include "skewring/linalg.hpp"

namespace skewring {
namespace {

// Monomial columns beyond this count (or truncated matrices beyond this many
// cells) are refused rather than silently ground through.
constexpr std::size_t kWordBudget = 1'000'000;
constexpr long long kCellBudget = 2'000'000;
constexpr long long kPrecisionCap = 1LL << 20;
constexpr int kSpecializeAttempts = 12;

// ---------------------------------------------------------------------------
// candidate-set bookkeeping
// ---------------------------------------------------------------------------

const TowerPtr& tower_of(const CandidateSet& cands) {
  return std::visit(
      [](const auto& a) -> const TowerPtr& {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, SeriesCandidates>) {
          return a.ctx.ring.tower;
        } else if constexpr (std::is_same_v<A, OreCandidates>) {
          return a.tower->base();
        } else if constexpr (std::is_same_v<A, TorusCandidates>) {
          return a.ring->tower();
        } else {
          return a.ring->tower();
        }
      },
      cands.ambient);
}

void validate_candidates(const CandidateSet& cands) {
  const std::size_t k = candidate_count(cands);
  if (k == 0) fail("domain", "certification needs at least one candidate");
  if (cands.names.size() != k)
    fail("config", "candidate set needs one display name per candidate");
  std::visit(
      [](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, SeriesCandidates>) {
          validate_series_context(a.ctx);
          for (const auto& f : a.eval)
            if (!f) fail("config", "candidate set has a missing series evaluator");
        } else if constexpr (std::is_same_v<A, OreCandidates>) {
          if (!a.tower) fail("config", "candidate set has no ore tower");
          for (const auto& e : a.elems)
            if (!e.tower() || !e.tower()->same(*a.tower))
              fail("mismatch", "candidate does not live in the stated ore tower");
        } else if constexpr (std::is_same_v<A, TorusCandidates>) {
          if (!a.ring) fail("config", "candidate set has no torus ring");
          for (const auto& e : a.elems)
            if (!e.ring() || !e.ring()->same(*a.ring))
              fail("mismatch", "candidate does not live in the stated torus ring");
        } else {
          if (!a.ring) fail("config", "candidate set has no group ring");
          for (const auto& e : a.elems)
            if (!e.ring() || !e.ring()->same(*a.ring))
              fail("mismatch", "candidate does not live in the stated group ring");
        }
      },
      cands.ambient);
}

// Scalars sampled from the chosen subfield: a couple of rationals, plus every
// tower variable when the whole coefficient field is claimed central.
std::vector<FieldElem> scalar_samples(const TowerPtr& tower, ScalarField scalars) {
  std::vector<FieldElem> out;
  out.push_back(FieldElem::integer(tower, 2));
  out.push_back(FieldElem::rational(tower, mpq_class(-1, 3)));
  if (scalars == ScalarField::CoefficientField)
    for (int i = 0; i < tower->height(); ++i)
      out.push_back(FieldElem::variable(tower, i));
  return out;
}

// ---------------------------------------------------------------------------
// matrices from exact supports
// ---------------------------------------------------------------------------

// One column per evaluated word, one row per monomial in the union of the
// supports; the comparator of the term map fixes the row order, so the matrix
// is a deterministic function of the values.
template <typename TermMap>
FieldMatrix columns_from_terms(const std::vector<const TermMap*>& cols,
                               const TowerPtr& tower) {
  using Key = typename TermMap::key_type;
  using Cmp = typename TermMap::key_compare;
  std::map<Key, std::size_t, Cmp> row;
  for (const TermMap* t : cols)
    for (const auto& [key, coeff] : *t) row.emplace(key, 0);
  std::size_t r = 0;
  for (auto& kv : row) kv.second = r++;
  FieldMatrix m(row.size(),
                std::vector<FieldElem>(cols.size(), FieldElem::integer(tower, 0)));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [key, coeff] : *cols[c]) m[row.find(key)->second][c] = coeff;
  return m;
}

// ---------------------------------------------------------------------------
// rational flattening
// ---------------------------------------------------------------------------

using QPoly = std::vector<mpq_class>;  // ascending coefficients

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Numerator/denominator coefficient vectors of an element of a tower of
// height <= 1; a height-0 element is a constant polynomial.
void entry_fraction(const FieldElem& e, QPoly& num, QPoly& den) {
  const FieldElem::Node& n = e.node();
  num.clear();
  den.clear();
  if (n.depth == 0) {
    if (sgn(n.rat) != 0) num.push_back(n.rat);
    den.push_back(mpq_class(1));
    return;
  }
  for (const FieldElem::Node& c : n.num) num.push_back(c.rat);
  for (const FieldElem::Node& c : n.den) den.push_back(c.rat);
}

// Replace each tower-valued row by the family of rational rows obtained by
// clearing a per-row common denominator and reading off the coefficients of
// every variable power. Row scaling and coefficient splitting both preserve
// the solution set of "matrix times vector = 0" over the rationals, so
// nullspace vectors survive the translation unchanged.
FieldMatrix flatten_exact(const FieldMatrix& m, const TowerPtr& ambient,
                          const TowerPtr& rationals) {
  if (ambient->height() > 1)
    fail("domain",
         "exact rational flattening supports coefficient towers of height at "
         "most one; use the specialization strategy");
  FieldMatrix out;
  for (const auto& row : m) {
    std::vector<QPoly> nums(row.size()), dens(row.size());
    for (std::size_t w = 0; w < row.size(); ++w)
      entry_fraction(row[w], nums[w], dens[w]);
    // distinct denominators of this row, and which one each entry uses
    std::vector<QPoly> distinct;
    std::vector<std::size_t> which(row.size());
    for (std::size_t w = 0; w < row.size(); ++w) {
      std::size_t j = 0;
      while (j < distinct.size() && distinct[j] != dens[w]) ++j;
      if (j == distinct.size()) distinct.push_back(dens[w]);
      which[w] = j;
    }
    std::vector<QPoly> cleared(row.size());
    std::size_t maxlen = 0;
    for (std::size_t w = 0; w < row.size(); ++w) {
      QPoly p = nums[w];
      for (std::size_t j = 0; j < distinct.size(); ++j)
        if (j != which[w]) p = qp_mul(p, distinct[j]);
      maxlen = std::max(maxlen, p.size());
      cleared[w] = std::move(p);
    }
    for (std::size_t pow = 0; pow < maxlen; ++pow) {
      std::vector<FieldElem> flat;
      flat.reserve(row.size());
      for (std::size_t w = 0; w < row.size(); ++w)
        flat.push_back(FieldElem::rational(
            rationals, pow < cleared[w].size() ? cleared[w][pow] : mpq_class(0)));
      out.push_back(std::move(flat));
    }
  }
  return out;
}

// Evaluate every entry at one shared nonzero rational point per tower
// variable, drawing fresh points until none of the entries hits a pole.
FieldMatrix specialize_matrix(const FieldMatrix& m, const TowerPtr& ambient,
                              const TowerPtr& rationals, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num_dist(1, 80);
  std::uniform_int_distribution<int> den_dist(1, 9);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  for (int attempt = 0; attempt < kSpecializeAttempts; ++attempt) {
    std::vector<FieldElem> images;
    images.reserve(static_cast<std::size_t>(ambient->height()));
    for (int i = 0; i < ambient->height(); ++i) {
      mpq_class v(num_dist(rng), den_dist(rng));
      v.canonicalize();
      if (sign_dist(rng)) v = -v;
      images.push_back(FieldElem::rational(ambient, v));
    }
    FieldEndo point(ambient, std::move(images));
    try {
      FieldMatrix out;
      out.reserve(m.size());
      for (const auto& row : m) {
        std::vector<FieldElem> r;
        r.reserve(row.size());
        for (const FieldElem& e : row)
          r.push_back(FieldElem::rational(rationals, point.apply(e).to_rational()));
        out.push_back(std::move(r));
      }
      return out;
    } catch (const Error&) {
      // pole at this point; try another
    }
  }
  fail("domain",
       "no pole-free rational sample point found for specialization; the "
       "denominators are too constrained");
}

struct ScalarMatrix {
  FieldMatrix m;
  TowerPtr tower;        // field the entries live in
  bool specialized = false;  // entries were sampled, not flattened exactly
};

ScalarMatrix to_scalar_matrix(FieldMatrix m, const TowerPtr& ambient,
                              ScalarField scalars, FlattenStrategy strategy,
                              std::mt19937_64& rng) {
  if (scalars == ScalarField::CoefficientField) return {std::move(m), ambient, false};
  TowerPtr rationals = FieldTower::rationals();
  if (ambient->height() == 0) {
    for (auto& row : m)
      for (auto& e : row) e = FieldElem::rational(rationals, e.to_rational());
    return {std::move(m), std::move(rationals), false};
  }
  if (strategy == FlattenStrategy::Exact)
    return {flatten_exact(m, ambient, rationals), std::move(rationals), false};
  return {specialize_matrix(m, ambient, rationals, rng), std::move(rationals), true};
}

// Lift a nullspace vector back to the ambient tower and scale it so its
// first nonzero entry is 1.
std::vector<FieldElem> normalize_relation(const std::vector<FieldElem>& v,
                                          const TowerPtr& ambient) {
  std::vector<FieldElem> out;
  out.reserve(v.size());
  for (const FieldElem& e : v)
    out.push_back(e.tower()->same(*ambient)
                      ? e
                      : FieldElem::rational(ambient, e.to_rational()));
  std::size_t f = 0;
  while (f < out.size() && out[f].is_zero()) ++f;
  if (f == out.size()) fail("internal", "a nullspace vector is identically zero");
  FieldElem lead = out[f];
  for (FieldElem& e : out) e = e / lead;
  return out;
}

// ---------------------------------------------------------------------------
// word evaluation
// ---------------------------------------------------------------------------

std::vector<OrePoly> eval_words_ore(const OreCandidates& a,
                                    const std::vector<Word>& words) {
  std::vector<OrePoly> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    OrePoly v = OrePoly::constant(a.tower, FieldElem::integer(a.tower->base(), 1));
    for (int letter : w) v = v * a.elems.at(static_cast<std::size_t>(letter));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<QTorusElem> eval_words_torus(const TorusCandidates& a,
                                         const std::vector<Word>& words) {
  std::vector<QTorusElem> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    QTorusElem v = QTorusElem::scalar(a.ring, FieldElem::integer(a.ring->tower(), 1));
    for (int letter : w) v = v * a.elems.at(static_cast<std::size_t>(letter));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<GroupRingElem> eval_words_group(const GroupCandidates& a,
                                            const std::vector<Word>& words) {
  std::vector<GroupRingElem> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    GroupRingElem v = GroupRingElem::one(a.ring);
    for (int letter : w) v = v * a.elems.at(static_cast<std::size_t>(letter));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<FieldSeries> eval_words_series(const SeriesCandidates& a,
                                           const FieldSeriesContext& ctx,
                                           const std::vector<Word>& words) {
  std::vector<FieldSeries> letters;
  letters.reserve(a.eval.size());
  for (const auto& f : a.eval) letters.push_back(f(ctx.prec));
  std::vector<FieldSeries> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    FieldSeries v = series_one(ctx);
    for (int letter : w)
      v = series_mul(ctx, v, letters.at(static_cast<std::size_t>(letter)));
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// exact-ambient certification
// ---------------------------------------------------------------------------

// Sum of rel[w] * value_w, evaluated exactly; true iff it is the zero element.
bool combo_vanishes(const OreCandidates& a, const std::vector<OrePoly>& values,
                    const std::vector<FieldElem>& rel) {
  OrePoly acc = OrePoly::zero(a.tower);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (!rel[j].is_zero())
      acc = acc + OrePoly::constant(a.tower, rel[j]) * values[j];
  return acc.is_zero();
}

bool combo_vanishes(const TorusCandidates& a, const std::vector<QTorusElem>& values,
                    const std::vector<FieldElem>& rel) {
  QTorusElem acc = QTorusElem::zero(a.ring);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (!rel[j].is_zero()) acc = acc + values[j].scaled(rel[j]);
  return acc.is_zero();
}

bool combo_vanishes(const GroupCandidates& a,
                    const std::vector<GroupRingElem>& values,
                    const std::vector<FieldElem>& rel) {
  GroupRingElem acc = GroupRingElem::zero(a.ring);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (!rel[j].is_zero()) acc = acc + values[j].times_left(rel[j]);
  return acc.terms().empty();
}

template <typename Ambient, typename Value>
Certificate certify_exact(const Ambient& amb, const CandidateSet& cands,
                          const std::vector<Word>& words,
                          const std::vector<Value>& values, int degree,
                          FlattenStrategy strategy, unsigned long long seed) {
  const TowerPtr& tower = tower_of(cands);
  using TermMap = std::remove_cvref_t<decltype(values.front().terms())>;
  std::vector<const TermMap*> cols;
  cols.reserve(values.size());
  for (const Value& v : values) cols.push_back(&v.terms());
  FieldMatrix m = columns_from_terms(cols, tower);

  std::mt19937_64 rng(seed);
  ScalarMatrix sm = to_scalar_matrix(std::move(m), tower, cands.scalars, strategy, rng);

  Certificate cert;
  cert.degree = degree;
  cert.strategy = strategy;
  cert.words.reserve(words.size());
  for (const Word& w : words) cert.words.push_back(word_str(cands, w));

  const int ncols = static_cast<int>(words.size());
  if (field_matrix_rank(sm.m) == ncols) {
    cert.verdict = FreenessVerdict::FreeUpTo;
    cert.reason =
        "the evaluated monomials are linearly independent over the chosen "
        "scalars";
    return cert;
  }
  auto basis = field_matrix_nullspace(std::move(sm.m), sm.tower, ncols);
  std::vector<FieldElem> first;
  for (const auto& v : basis) {
    std::vector<FieldElem> rel = normalize_relation(v, tower);
    if (combo_vanishes(amb, values, rel)) {
      cert.verdict = FreenessVerdict::RelationFound;
      cert.relation = std::move(rel);
      cert.reason =
          "the listed combination of monomials evaluates to the exact zero "
          "element";
      return cert;
    }
    if (first.empty()) first = std::move(rel);
  }
  if (!sm.specialized)
    fail("internal", "a flattened relation failed exact re-evaluation");
  cert.verdict = FreenessVerdict::Inconclusive;
  cert.relation = std::move(first);
  cert.reason =
      "a relation holds at the sampled parameter point but fails over the "
      "full coefficient field; retry with the exact strategy";
  return cert;
}

// ---------------------------------------------------------------------------
// series-ambient certification
// ---------------------------------------------------------------------------

FieldElem series_entry(const FieldSeries& f, long long n, const FieldElem& zero) {
  if (n < f.lead) return zero;
  std::size_t idx = static_cast<std::size_t>(n - f.lead);
  return idx < f.coeffs.size() ? f.coeffs[idx] : zero;
}

// Sum of rel[w] * value_w at the given precision; true iff every known
// coefficient of the sum vanishes.
bool combo_vanishes_to_prec(const FieldSeriesContext& ctx,
                            const std::vector<FieldSeries>& values,
                            const std::vector<FieldElem>& rel) {
  FieldSeries acc = series_zero_to(ctx, ctx.prec);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (!rel[j].is_zero())
      acc = series_add(ctx, acc,
                       series_mul(ctx, series_scalar(ctx, rel[j]), values[j]));
  return acc.coeffs.empty();
}

Certificate certify_series(const SeriesCandidates& amb, const CandidateSet& cands,
                           const std::vector<Word>& words, int degree,
                           long long prec, FlattenStrategy strategy,
                           unsigned long long seed) {
  if (prec < 1) fail("domain", "series certification needs precision >= 1");
  if (prec > kPrecisionCap)
    fail("domain", "series certification precision exceeds the supported cap");
  const TowerPtr& tower = tower_of(cands);
  const FieldElem zero = FieldElem::integer(tower, 0);
  const int ncols = static_cast<int>(words.size());

  Certificate cert;
  cert.degree = degree;
  cert.precision_requested = prec;
  cert.strategy = strategy;
  cert.words.reserve(words.size());
  for (const Word& w : words) cert.words.push_back(word_str(cands, w));

  std::mt19937_64 rng(seed);
  const std::vector<long long> rungs = {prec, 2 * prec, 4 * prec, 8 * prec};
  std::vector<FieldElem> suspect;
  bool have_suspect = false;

  for (std::size_t ri = 0; ri < rungs.size(); ++ri) {
    const long long P = rungs[ri];
    const bool last = ri + 1 == rungs.size();
    FieldSeriesContext ctxP = amb.ctx;
    ctxP.prec = P;
    std::vector<FieldSeries> values = eval_words_series(amb, ctxP, words);

    if (have_suspect) {
      if (combo_vanishes_to_prec(ctxP, values, suspect)) {
        if (!last) continue;
        cert.verdict = FreenessVerdict::RelationFound;
        cert.relation = std::move(suspect);
        cert.precision_used = P;
        cert.reason =
            "the listed combination vanishes at every rung of the precision "
            "ladder; the relation is certified at bounded precision";
        return cert;
      }
      have_suspect = false;
    }

    // row range shared by every column: exponents known to all values
    long long lo = 0, hi = P;
    for (const FieldSeries& v : values) {
      if (!v.coeffs.empty()) lo = std::min(lo, v.lead);
      hi = std::min(hi, series_known_to(v));
    }
    if (hi < lo) hi = lo;
    if ((hi - lo) * static_cast<long long>(words.size()) > kCellBudget)
      fail("domain",
           "the truncated matrix exceeds the certification budget; lower the "
           "precision or the degree");
    FieldMatrix m;
    m.reserve(static_cast<std::size_t>(hi - lo));
    for (long long n = lo; n < hi; ++n) {
      std::vector<FieldElem> row;
      row.reserve(values.size());
      for (const FieldSeries& v : values) row.push_back(series_entry(v, n, zero));
      m.push_back(std::move(row));
    }
    ScalarMatrix sm = to_scalar_matrix(std::move(m), tower, cands.scalars, strategy, rng);

    if (field_matrix_rank(sm.m) == ncols) {
      cert.verdict = FreenessVerdict::FreeUpTo;
      cert.precision_used = P;
      cert.reason =
          "the truncated monomial expansions are linearly independent over "
          "the chosen scalars; truncation preserves exact relations, so none "
          "exists up to this degree";
      return cert;
    }
    auto basis = field_matrix_nullspace(std::move(sm.m), sm.tower, ncols);
    suspect = normalize_relation(basis.front(), tower);
    have_suspect = true;
    if (last) {
      cert.verdict = FreenessVerdict::Inconclusive;
      cert.relation = std::move(suspect);
      cert.precision_used = P;
      cert.reason =
          "precision exhausted before the candidate relation could be "
          "cross-validated at a higher rung; the attached coefficients are "
          "suspect";
      return cert;
    }
  }
  fail("internal", "the precision ladder ended without a verdict");
}

}  // namespace

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

std::size_t candidate_count(const CandidateSet& cands) {
  return std::visit(
      [](const auto& a) -> std::size_t {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, SeriesCandidates>) return a.eval.size();
        else return a.elems.size();
      },
      cands.ambient);
}

std::vector<Word> enum_monomials(int k, int d) {
  if (k < 1) fail("domain", "a candidate alphabet needs at least one letter");
  if (d < 0) fail("domain", "the word-length bound must be >= 0");
  std::size_t total = 0, layer = 1;
  for (int len = 0; len <= d; ++len) {
    total += layer;
    if (total > kWordBudget || layer > kWordBudget)
      fail("domain", "the monomial count exceeds the certification budget");
    layer *= static_cast<std::size_t>(k);
  }
  std::vector<Word> out;
  out.reserve(total);
  out.push_back({});
  for (int len = 1; len <= d; ++len) {
    Word w(static_cast<std::size_t>(len), 0);
    while (true) {
      out.push_back(w);
      int p = len - 1;
      while (p >= 0 && w[static_cast<std::size_t>(p)] == k - 1)
        w[static_cast<std::size_t>(p--)] = 0;
      if (p < 0) break;
      ++w[static_cast<std::size_t>(p)];
    }
  }
  return out;
}

std::string word_str(const CandidateSet& cands, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += cands.names.at(static_cast<std::size_t>(w[i]));
  }
  return out;
}

bool commutant_check(const CandidateSet& cands, long long prec) {
  const std::size_t k = candidate_count(cands);
  if (k == 0) return true;
  const TowerPtr& tower = tower_of(cands);
  std::vector<FieldElem> samples = scalar_samples(tower, cands.scalars);
  return std::visit(
      [&](const auto& a) -> bool {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, SeriesCandidates>) {
          if (prec < 1)
            fail("domain", "commutant sampling over a series ambient needs precision >= 1");
          FieldSeriesContext ctxP = a.ctx;
          ctxP.prec = prec;
          for (const auto& f : a.eval) {
            if (!f) fail("config", "candidate set has a missing series evaluator");
            FieldSeries v = f(prec);
            for (const FieldElem& s : samples) {
              FieldSeries sc = series_scalar(ctxP, s);
              FieldSeries diff = series_sub(ctxP, series_mul(ctxP, sc, v),
                                            series_mul(ctxP, v, sc));
              if (!diff.coeffs.empty()) return false;
            }
          }
          return true;
        } else if constexpr (std::is_same_v<A, OreCandidates>) {
          for (const OrePoly& e : a.elems)
            for (const FieldElem& s : samples) {
              OrePoly c = OrePoly::constant(a.tower, s);
              if (!(c * e == e * c)) return false;
            }
          return true;
        } else if constexpr (std::is_same_v<A, TorusCandidates>) {
          for (const QTorusElem& e : a.elems)
            for (const FieldElem& s : samples) {
              QTorusElem c = QTorusElem::scalar(a.ring, s);
              if (!(c * e == e * c)) return false;
            }
          return true;
        } else {
          for (const GroupRingElem& e : a.elems)
            for (const FieldElem& s : samples) {
              GroupRingElem c = GroupRingElem::term(a.ring, s, a.ring->identity());
              if (!(c * e == e * c)) return false;
            }
          return true;
        }
      },
      cands.ambient);
}

Certificate certify(const CandidateSet& cands, int degree, long long prec,
                    FlattenStrategy strategy, unsigned long long seed) {
  validate_candidates(cands);
  if (degree < 0) fail("domain", "the certification degree must be >= 0");
  const bool series = std::holds_alternative<SeriesCandidates>(cands.ambient);
  if (series && prec < 1)
    fail("domain", "series certification needs precision >= 1");
  if (!commutant_check(cands, series ? prec : 1))
    fail("domain",
         "the chosen scalar subfield does not commute with the candidates "
         "(sampled commutation check failed)");
  std::vector<Word> words =
      enum_monomials(static_cast<int>(candidate_count(cands)), degree);
  return std::visit(
      [&](const auto& a) -> Certificate {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, SeriesCandidates>) {
          return certify_series(a, cands, words, degree, prec, strategy, seed);
        } else if constexpr (std::is_same_v<A, OreCandidates>) {
          return certify_exact(a, cands, words, eval_words_ore(a, words), degree,
                               strategy, seed);
        } else if constexpr (std::is_same_v<A, TorusCandidates>) {
          return certify_exact(a, cands, words, eval_words_torus(a, words),
                               degree, strategy, seed);
        } else {
          return certify_exact(a, cands, words, eval_words_group(a, words),
                               degree, strategy, seed);
        }
      },
      cands.ambient);
}

}  // namespace skewring
