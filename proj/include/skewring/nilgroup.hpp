#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewring/basefield.hpp"
#include "skewring/valuation.hpp"

namespace skewring {

// Finitely generated torsion-free nilpotent groups presented by a polycyclic
// generating sequence f_1, ..., f_r with infinite cyclic factors: every group
// element has the unique normal form
//
//   f_1^{a_1} * f_2^{a_2} * ... * f_r^{a_r},   a_i integers,
//
// and for every pair j > i the presentation stores the commutation word
//
//   f_j * f_i  =  f_i * f_j * f_{j+1}^{c_{j+1}} * ... * f_r^{c_r}.
//
// The correction exponents touch only generators beyond f_j, which is what
// makes collection into the normal form terminate. On top of the group sit a
// skew group ring (coefficients written to the LEFT of group elements, moved
// by the rule g * a = sigma(g)(a) * g) and box-truncated series with exact
// term maps.

class GroupRing;
using GroupRingPtr = std::shared_ptr<const GroupRing>;

// Exponent vector (a_1, ..., a_r) of the normal form, index 0 <-> f_1.
using GroupElem = std::vector<long long>;

// Total lexicographic order on normal forms: the first differing coordinate
// decides, so f_1-exponents dominate. Bi-invariant for the groups built here
// (sample-tested; see the unit and acceptance suites).
int lex_cmp(const GroupElem& g, const GroupElem& h);

struct GroupElemLess {
  bool operator()(const GroupElem& g, const GroupElem& h) const {
    return lex_cmp(g, h) < 0;
  }
};

using GroupTermMap = std::map<GroupElem, FieldElem, GroupElemLess>;

// Skew group ring K(G, sigma): the group data (rank and commutation table),
// the coefficient tower K, and an optional action assigning each generator an
// invertible endomorphism of K. Construction validates the table shape,
// sample-checks associativity of collection, and checks that the action maps
// commute pairwise and respect the commutation relations.
class GroupRing : public std::enable_shared_from_this<GroupRing> {
 public:
  // corrections maps (j, i) with j > i (0-based generator indices) to the
  // exponent vector of the correction word; missing pairs mean "commute".
  // Every stored vector must have length `rank` and support only at indices
  // greater than j.
  static GroupRingPtr make(
      int rank, std::map<std::pair<int, int>, GroupElem> corrections,
      TowerPtr tower,
      std::optional<std::vector<FieldEndo>> action = std::nullopt);

  int rank() const { return rank_; }
  const TowerPtr& tower() const { return tower_; }
  std::string gen_name(int i) const { return "f" + std::to_string(i + 1); }
  // Index of a generator name ("f1".."fr"), -1 when absent.
  int gen_index(const std::string& name) const;

  bool has_action() const { return action_.has_value(); }
  const FieldEndo& action(int i) const;

  // Correction word for f_j * f_i, j > i; the all-zero vector when they
  // commute.
  const GroupElem& correction(int j, int i) const;

  // True when every correction word uses only central generators (generators
  // that commute with the whole group). Box-truncated inversion is restricted
  // to such presentations because its pruning bounds rely on the exact
  // coordinate bookkeeping available in that case.
  bool central_corrections() const { return central_corrections_; }
  // True when generator i commutes with every other generator.
  bool generator_central(int i) const { return central_.at(i); }

  GroupElem identity() const { return GroupElem(rank_, 0); }

  bool same(const GroupRing& o) const;

 private:
  GroupRing() = default;
  void validate_action() const;
  void validate_associativity() const;

  int rank_ = 0;
  TowerPtr tower_;
  std::vector<std::vector<GroupElem>> corr_;  // corr_[j][i], j > i
  std::optional<std::vector<FieldEndo>> action_;
  std::vector<bool> central_;
  bool central_corrections_ = false;
};

// --- group operations (pure collection, independent of coefficients) --------

// Normal form of the product g * h.
GroupElem collect(const GroupRing& ring, const GroupElem& g, const GroupElem& h);
// Normal form of g^{-1}.
GroupElem group_inv(const GroupRing& ring, const GroupElem& g);
// Normal form of g^e (negative e inverts first).
GroupElem group_pow(const GroupRing& ring, const GroupElem& g, long long e);
// The action of g on a coefficient: composite of the generator endomorphism
// powers prescribed by the exponent vector (identity without an action).
FieldElem sigma_apply(const GroupRing& ring, const GroupElem& g, const FieldElem& a);
// Normal-form rendering, e.g. "f1^2*f2^-3"; "1" for the identity.
std::string group_elem_str(const GroupRing& ring, const GroupElem& g);

// --- skew group ring elements ------------------------------------------------

// Finite sum  a_1*g_1 + ... + a_k*g_k  with nonzero coefficients written to
// the left of normal-form group elements; products move coefficients with
// g * a = sigma(g)(a) * g.
class GroupRingElem {
 public:
  GroupRingElem() = default;
  static GroupRingElem zero(GroupRingPtr ring);
  static GroupRingElem one(GroupRingPtr ring);
  static GroupRingElem term(GroupRingPtr ring, const FieldElem& coeff, const GroupElem& g);
  static GroupRingElem generator(GroupRingPtr ring, int i);

  const GroupRingPtr& ring() const { return ring_; }
  const GroupTermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GroupRingElem operator-() const;
  GroupRingElem operator+(const GroupRingElem&) const;
  GroupRingElem operator-(const GroupRingElem&) const;
  GroupRingElem operator*(const GroupRingElem&) const;
  // Left multiplication by a coefficient (coefficient-wise, no twisting).
  GroupRingElem times_left(const FieldElem& c) const;

  bool operator==(const GroupRingElem& o) const;
  bool operator!=(const GroupRingElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  GroupRingPtr ring_;
  GroupTermMap terms_;
};

// Valuation counting the least f_1-exponent across the support; infinite on
// zero. Multiplicative on products and >= min on sums (both sample-tested).
Valuation mn_o_val(const GroupRingElem& u);

// --- box-truncated series ----------------------------------------------------

// A series over the group truncated to the symmetric exponent box
// [-box, box]^r. `complete` asserts that every true term of the represented
// element with all exponents inside the box is present in `terms`; terms
// outside the box are always unknown. A first-coordinate cut would not be
// finitely representable (infinitely many terms share any f_1-exponent), so
// the box is the truncation unit here.
struct MNSeries {
  GroupRingPtr ring;
  long long box = 0;
  GroupTermMap terms;
  bool complete = false;
};

// Restriction of a finite ring element to the box (complete by construction).
MNSeries mn_truncate(const GroupRingElem& u, long long box);
MNSeries mn_neg(const MNSeries& s);
// Termwise combination on the common box; complete when both inputs are.
MNSeries mn_add(const MNSeries& s, const MNSeries& t);
MNSeries mn_sub(const MNSeries& s, const MNSeries& t);

// Least f_1-exponent across the stored support; infinite when no terms are
// stored inside the box.
Valuation mn_o_val(const MNSeries& s);

// Exact product of a finite ring element with the stored terms of a series
// (left/right versions). The result's box grows to hold every product term;
// it is NOT marked complete, because terms of the true series outside the
// input box could contribute inside. Use mn_safe_box to find the region where
// such products are faithful.
MNSeries mn_mul_left(const GroupRingElem& u, const MNSeries& s);
MNSeries mn_mul_right(const MNSeries& s, const GroupRingElem& u);

// Largest n <= s.box such that for every z with all exponents in [-n, n] and
// every t in the support of u, t^{-1} * z stays inside [-s.box, s.box]^r; on
// that region every true term of (u * true-series) is a pairing of u with a
// stored term, so mn_mul_left(u, s) is faithful there. Returns -1 when even
// n = 0 fails.
long long mn_safe_box(const GroupRingElem& u, const MNSeries& s);

// Inverse of a nonzero ring element as a box-complete series: factor
// u = a*g0*(1 + m) with g0 the lex-least support element, expand
// (1 + m)^{-1} = sum (-m)^k, and keep exactly the terms that land in the box
// after the final shift by (a*g0)^{-1}. Power expansion terminates by
// envelope pruning: first coordinates never decrease under multiplication by
// the lex-positive support of m, and each later coordinate admits only a
// budget-bounded amount of decrease, so terms that leave the reachable
// envelope are discarded. Restricted to presentations whose correction words
// are central (see GroupRing::central_corrections); fails "domain" otherwise,
// on zero input, and on boxes whose envelope would be astronomically large.
MNSeries mn_inverse(const GroupRingElem& u, long long box);

// Valuation of the fraction f * g^{-1} computed as o(f) - o(g); infinite for
// zero f, "domain" failure for zero g. Agrees with mn_o_val of the expanded
// series whenever the box exhibits the leading term.
Valuation mn_fraction_val(const GroupRingElem& f, const GroupRingElem& g);

// Diagonal limit of a finite Cauchy run u_0, u_1, ..., u_L (same ring, boxes
// intersected): u_k and u_{k+1} must agree on all stored terms with first
// coordinate <= k, else a "domain" failure naming the non-Cauchy index. The
// limit takes its terms with first coordinate a <= 0 from u_0 and with
// 0 < a <= L from u_a; terms with first coordinate beyond L are not
// determined by the run and are dropped. The result is marked complete only
// when every input is complete and L covers the whole box.
MNSeries mn_cauchy_limit(const std::vector<MNSeries>& run);

// Rendering with terms in increasing lexicographic order and an explicit
// truncation marker, e.g. "1 + f3 + f3^2 + O(box 2)".
std::string mn_str(const MNSeries& s);

// --- preset ------------------------------------------------------------------

// Discrete Heisenberg group: rank 3, f2*f1 = f1*f2*f3^{-1}, f3 central,
// rational coefficients, trivial action.
GroupRingPtr make_heisenberg_ring();

}  // namespace skewring
