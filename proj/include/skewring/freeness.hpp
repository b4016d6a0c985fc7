#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "skewring/basefield.hpp"
#include "skewring/nilgroup.hpp"
#include "skewring/ore.hpp"
#include "skewring/qtorus.hpp"
#include "skewring/series.hpp"

namespace skewring {

// Which central scalars the independence question ranges over: the plain
// rationals sitting inside the coefficient tower, or the whole coefficient
// field. The choice must actually be central: certification refuses to run
// when sampled scalars fail to commute with the candidates.
enum class ScalarField { Rationals, CoefficientField };

// How tower-valued matrix entries become entries of an exact scalar matrix
// when the scalars are the rationals:
//   Exact       clear a per-row common denominator and split every entry
//               into its monomial coefficients (supported for towers of
//               height at most one);
//   Specialize  evaluate every entry at one shared pseudorandom rational
//               point per tower variable. Independence verdicts from a
//               specialized matrix are sound (substitution preserves exact
//               relations); candidate relations it finds are re-checked
//               against the unspecialized elements before being reported.
enum class FlattenStrategy { Exact, Specialize };

enum class FreenessVerdict { FreeUpTo, RelationFound, Inconclusive };

// Candidates living in a truncated skew series completion. Each evaluator
// must expand the same underlying element to any requested precision; the
// certifier raises the precision on its own when it needs to cross-check a
// tentative relation.
struct SeriesCandidates {
  FieldSeriesContext ctx;
  std::vector<std::function<FieldSeries(long long)>> eval;
};

// Candidates living in an iterated Ore extension (exact arithmetic).
struct OreCandidates {
  OreTowerPtr tower;
  std::vector<OrePoly> elems;
};

// Candidates living in a quantum torus (exact arithmetic).
struct TorusCandidates {
  QTorusRingPtr ring;
  std::vector<QTorusElem> elems;
};

// Candidates living in a polycyclic group ring (exact arithmetic).
struct GroupCandidates {
  GroupRingPtr ring;
  std::vector<GroupRingElem> elems;
};

struct CandidateSet {
  std::variant<SeriesCandidates, OreCandidates, TorusCandidates, GroupCandidates> ambient;
  std::vector<std::string> names;  // one display name per candidate
  ScalarField scalars = ScalarField::CoefficientField;
};

std::size_t candidate_count(const CandidateSet& cands);

// A word over the candidate alphabet; letters index into names/elems.
using Word = std::vector<int>;

// All words of length <= d over k letters in graded-lexicographic order:
// shorter words first, words of equal length ordered letter by letter. The
// list starts with the empty word and has (k^(d+1) - 1) / (k - 1) entries
// for k >= 2, d + 1 entries for k == 1.
std::vector<Word> enum_monomials(int k, int d);

// "1" for the empty word, otherwise the candidate names joined with '*'.
std::string word_str(const CandidateSet& cands, const Word& w);

// Outcome of a bounded-degree freeness test.
//
//   FreeUpTo       no scalar linear relation exists among the monomials in
//                  the candidates up to the stated degree. This direction is
//                  unconditional: truncation and specialization both map
//                  exact relations to relations, so a full-rank truncated or
//                  specialized matrix rules the relation out exactly.
//   RelationFound  `relation` holds the coefficients, aligned with `words`
//                  and scaled so the first nonzero entry is 1. In an exact
//                  ambient the combination re-evaluates to the exact zero
//                  element; in a series ambient it vanished at every rung of
//                  the precision ladder up to the cap.
//   Inconclusive   the precision ladder was exhausted while a candidate
//                  relation was still unconfirmed, or a specialized relation
//                  failed re-evaluation; the suspect coefficient vector, if
//                  any, is attached in `relation`.
struct Certificate {
  int degree = 0;
  long long precision_requested = 0;  // 0 for exact ambients
  long long precision_used = 0;       // 0 for exact ambients
  FlattenStrategy strategy = FlattenStrategy::Exact;
  FreenessVerdict verdict = FreenessVerdict::Inconclusive;
  std::vector<std::string> words;     // rendered monomials, matrix order
  std::vector<FieldElem> relation;    // empty unless described above
  std::string reason;                 // one-line explanation of the verdict
};

// Seed for the pseudorandom choices (specialization points); fixed so
// repeated runs agree byte for byte.
inline constexpr unsigned long long kFreenessDefaultSeed = 0x66726565ull;

// True iff every sampled scalar of the chosen subfield commutes with every
// candidate: exactly in polynomial and group-ring ambients, up to the given
// precision in series ambients. Sampling covers the rational constants and,
// for the full coefficient field, every tower variable.
bool commutant_check(const CandidateSet& cands, long long prec);

// Bounded-degree freeness certification. Evaluates every monomial word of
// degree <= degree in the candidates, flattens the results into one exact
// scalar matrix (one column per word), and reads the verdict off its rank;
// see Certificate for what each verdict guarantees. `prec` seeds the series
// precision ladder (prec, 2*prec, 4*prec, 8*prec) and is ignored by exact
// ambients. Refuses with code "domain" when the chosen scalars do not
// commute with the candidates.
Certificate certify(const CandidateSet& cands, int degree, long long prec,
                    FlattenStrategy strategy = FlattenStrategy::Exact,
                    unsigned long long seed = kFreenessDefaultSeed);

}  // namespace skewring
