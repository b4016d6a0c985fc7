#include "skewring/nilgroup.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <random>

#include "skewring/error.hpp"

namespace skewring {

namespace {

// Magnitude guard for the envelope bookkeeping of mn_inverse; anything beyond
// this is far outside desk scale and would only burn memory.
constexpr long long kEnvMagnitude = 1'000'000'000'000LL;
// Cardinality guard for the set of terms an inverse expansion may visit.
constexpr long long kEnvCount = 2'000'000;

long long env_checked(long long v) {
  if (v > kEnvMagnitude || v < -kEnvMagnitude) {
    fail("domain",
         "the box envelope for series inversion is too large; choose a smaller box");
  }
  return v;
}

int first_nonzero(const GroupElem& g) {
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0) return static_cast<int>(i);
  }
  return static_cast<int>(g.size());
}

void check_vector(const GroupRing& ring, const GroupElem& g) {
  if (static_cast<int>(g.size()) != ring.rank()) {
    fail("mismatch", "exponent vector length does not match the presentation rank");
  }
}

GroupElem unit_vector(int rank, int i) {
  GroupElem g(rank, 0);
  g[i] = 1;
  return g;
}

// Same composite test the series renderer uses: a coefficient string needs
// parentheses when it is anything beyond a single signed atom.
bool coeff_composite(const std::string& s) {
  if (s.empty()) return true;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == ' ' || c == '+' || c == '*' || c == '/' || c == '^') return true;
    if (c == '-' && i > 0) return true;
  }
  return false;
}

GroupElem conj_elem(const GroupRing& ring, const GroupElem& x, int i, int s);

// Normal form of f_i^{-s} * f_k * f_i^{s} for s = +1 or -1, k > i. For +1
// this is the stored rewrite f_k * correction; for -1 the unique preimage
// f_k * z with z solving (conjugation by f_i)(z) = correction^{-1}, found by
// recursing into strictly later generators.
GroupElem conj_gen(const GroupRing& ring, int k, int i, int s) {
  const GroupElem& w = ring.correction(k, i);
  GroupElem out = unit_vector(ring.rank(), k);
  if (s > 0) {
    for (int j = k + 1; j < ring.rank(); ++j) out[j] = w[j];
    return out;
  }
  GroupElem tail = conj_elem(ring, group_inv(ring, w), i, -1);
  for (int j = k + 1; j < ring.rank(); ++j) out[j] = tail[j];
  return out;
}

// Conjugation of x (support strictly beyond i) by f_i^{s}, s = +1 or -1,
// letter by letter; conjugation is an automorphism, so it distributes over
// the normal-form factorization of x.
GroupElem conj_elem(const GroupRing& ring, const GroupElem& x, int i, int s) {
  GroupElem res = ring.identity();
  for (int k = i + 1; k < ring.rank(); ++k) {
    if (x[k] == 0) continue;
    res = collect(ring, res, group_pow(ring, conj_gen(ring, k, i, s), x[k]));
  }
  return res;
}

// f_i^{-e} * f_k * f_i^{e} for arbitrary e, by iterating the single step.
GroupElem conj_gen_iter(const GroupRing& ring, int k, int i, long long e) {
  GroupElem x = unit_vector(ring.rank(), k);
  int s = e > 0 ? 1 : -1;
  for (long long step = 0; step != e; step += s) x = conj_elem(ring, x, i, s);
  return x;
}

// t * f_i^{e}: split t at i, merge the exponent, and conjugate the tail past
// the new letter. Every nested call works strictly beyond i, so the mutual
// recursion with collect bottoms out after at most rank levels.
GroupElem rmul_power(const GroupRing& ring, const GroupElem& t, int i, long long e) {
  if (e == 0) return t;
  GroupElem res = t;
  res[i] += e;
  bool tail = false;
  for (int j = i + 1; j < ring.rank(); ++j) tail = tail || t[j] != 0;
  if (!tail) return res;
  GroupElem conj = ring.identity();
  for (int j = i + 1; j < ring.rank(); ++j) {
    if (t[j] == 0) continue;
    conj = collect(ring, conj, group_pow(ring, conj_gen_iter(ring, j, i, e), t[j]));
  }
  for (int j = i + 1; j < ring.rank(); ++j) res[j] = conj[j];
  return res;
}

}  // namespace

int lex_cmp(const GroupElem& g, const GroupElem& h) {
  size_t n = std::min(g.size(), h.size());
  for (size_t i = 0; i < n; ++i) {
    if (g[i] != h[i]) return g[i] < h[i] ? -1 : 1;
  }
  if (g.size() != h.size()) return g.size() < h.size() ? -1 : 1;
  return 0;
}

GroupElem collect(const GroupRing& ring, const GroupElem& g, const GroupElem& h) {
  check_vector(ring, g);
  check_vector(ring, h);
  GroupElem t = g;
  for (int i = 0; i < ring.rank(); ++i) {
    if (h[i] != 0) t = rmul_power(ring, t, i, h[i]);
  }
  return t;
}

GroupElem group_inv(const GroupRing& ring, const GroupElem& g) {
  check_vector(ring, g);
  GroupElem res = ring.identity();
  for (int i = ring.rank() - 1; i >= 0; --i) {
    if (g[i] != 0) res = rmul_power(ring, res, i, -g[i]);
  }
  return res;
}

GroupElem group_pow(const GroupRing& ring, const GroupElem& g, long long e) {
  if (e < 0) return group_pow(ring, group_inv(ring, g), -e);
  GroupElem res = ring.identity();
  GroupElem base = g;
  check_vector(ring, base);
  while (e > 0) {
    if (e & 1) res = collect(ring, res, base);
    e >>= 1;
    if (e > 0) base = collect(ring, base, base);
  }
  return res;
}

FieldElem sigma_apply(const GroupRing& ring, const GroupElem& g, const FieldElem& a) {
  check_vector(ring, g);
  if (!ring.has_action()) return a;
  FieldElem out = a;
  for (int i = 0; i < ring.rank(); ++i) {
    if (g[i] != 0) out = ring.action(i).apply_power(out, g[i]);
  }
  return out;
}

std::string group_elem_str(const GroupRing& ring, const GroupElem& g) {
  check_vector(ring, g);
  std::string out;
  for (int i = 0; i < ring.rank(); ++i) {
    if (g[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.gen_name(i);
    if (g[i] != 1) out += "^" + std::to_string(g[i]);
  }
  return out.empty() ? "1" : out;
}

// --- GroupRing ---------------------------------------------------------------

GroupRingPtr GroupRing::make(int rank,
                             std::map<std::pair<int, int>, GroupElem> corrections,
                             TowerPtr tower,
                             std::optional<std::vector<FieldEndo>> action) {
  if (rank < 1) fail("config", "presentation rank must be at least 1");
  if (!tower) fail("config", "a coefficient tower is required");
  auto ring = std::shared_ptr<GroupRing>(new GroupRing());
  ring->rank_ = rank;
  ring->tower_ = std::move(tower);
  ring->corr_.assign(rank, std::vector<GroupElem>());
  for (int j = 0; j < rank; ++j) ring->corr_[j].assign(j, GroupElem(rank, 0));
  for (const auto& [key, word] : corrections) {
    auto [j, i] = key;
    if (i < 0 || j >= rank || j <= i) {
      fail("config", "corrections must be indexed by generator pairs (j, i) with j > i");
    }
    if (static_cast<int>(word.size()) != rank) {
      fail("config", "correction word for (" + ring->gen_name(j) + ", " + ring->gen_name(i) +
                         ") must list one exponent per generator");
    }
    for (int k = 0; k <= j; ++k) {
      if (word[k] != 0) {
        fail("config", "correction word for (" + ring->gen_name(j) + ", " + ring->gen_name(i) +
                           ") may only use generators beyond " + ring->gen_name(j));
      }
    }
    ring->corr_[j][i] = word;
  }
  ring->central_.assign(rank, true);
  for (int j = 1; j < rank; ++j) {
    for (int i = 0; i < j; ++i) {
      if (first_nonzero(ring->corr_[j][i]) < rank) {
        ring->central_[j] = false;
        ring->central_[i] = false;
      }
    }
  }
  ring->central_corrections_ = true;
  for (int j = 1; j < rank; ++j) {
    for (int i = 0; i < j; ++i) {
      for (int k = 0; k < rank; ++k) {
        if (ring->corr_[j][i][k] != 0 && !ring->central_[k]) ring->central_corrections_ = false;
      }
    }
  }
  ring->action_ = std::move(action);
  ring->validate_action();
  ring->validate_associativity();
  return ring;
}

int GroupRing::gen_index(const std::string& name) const {
  for (int i = 0; i < rank_; ++i) {
    if (gen_name(i) == name) return i;
  }
  return -1;
}

const FieldEndo& GroupRing::action(int i) const {
  if (!action_) fail("internal", "the presentation carries no coefficient action");
  return action_->at(i);
}

const GroupElem& GroupRing::correction(int j, int i) const { return corr_.at(j).at(i); }

bool GroupRing::same(const GroupRing& o) const {
  if (this == &o) return true;
  if (rank_ != o.rank_ || !tower_->same(*o.tower_)) return false;
  for (int j = 1; j < rank_; ++j) {
    for (int i = 0; i < j; ++i) {
      if (corr_[j][i] != o.corr_[j][i]) return false;
    }
  }
  if (action_.has_value() != o.action_.has_value()) return false;
  if (action_) {
    for (int i = 0; i < rank_; ++i) {
      if ((*action_)[i].images() != (*o.action_)[i].images()) return false;
    }
  }
  return true;
}

void GroupRing::validate_action() const {
  if (!action_) return;
  if (static_cast<int>(action_->size()) != rank_) {
    fail("config", "the action must supply one endomorphism per generator");
  }
  for (int i = 0; i < rank_; ++i) {
    const FieldEndo& e = (*action_)[i];
    if (!e.tower()->same(*tower_)) {
      fail("config", "action endomorphisms must act on the coefficient tower");
    }
    if (!e.has_inverse()) {
      fail("config",
           "action endomorphisms must be invertible (supply inverse images); "
           "group exponents are signed");
    }
  }
  auto var = [&](int v) { return FieldElem::variable(tower_, v); };
  for (int a = 0; a < rank_; ++a) {
    for (int b = a + 1; b < rank_; ++b) {
      for (int v = 0; v < tower_->height(); ++v) {
        FieldElem ab = (*action_)[a].apply((*action_)[b].apply(var(v)));
        FieldElem ba = (*action_)[b].apply((*action_)[a].apply(var(v)));
        if (ab != ba) {
          fail("config", "the actions of " + gen_name(a) + " and " + gen_name(b) +
                             " do not commute");
        }
      }
    }
  }
  for (int j = 1; j < rank_; ++j) {
    for (int i = 0; i < j; ++i) {
      for (int v = 0; v < tower_->height(); ++v) {
        FieldElem lhs = (*action_)[j].apply((*action_)[i].apply(var(v)));
        FieldElem rhs = var(v);
        const GroupElem& w = corr_[j][i];
        for (int k = 0; k < rank_; ++k) {
          if (w[k] != 0) rhs = (*action_)[k].apply_power(rhs, w[k]);
        }
        rhs = (*action_)[j].apply(rhs);
        rhs = (*action_)[i].apply(rhs);
        if (lhs != rhs) {
          fail("config", "the action does not respect the commutation relation of (" +
                             gen_name(j) + ", " + gen_name(i) + ")");
        }
      }
    }
  }
}

void GroupRing::validate_associativity() const {
  std::vector<std::array<GroupElem, 3>> triples;
  if (rank_ <= 8) {
    for (int a = 0; a < rank_; ++a) {
      for (int b = 0; b < rank_; ++b) {
        for (int c = 0; c < rank_; ++c) {
          triples.push_back({unit_vector(rank_, a), unit_vector(rank_, b), unit_vector(rank_, c)});
        }
      }
    }
  }
  std::mt19937_64 rng(0x67726f7570ull);
  std::uniform_int_distribution<long long> pick(-3, 3);
  for (int n = 0; n < 48; ++n) {
    std::array<GroupElem, 3> t;
    for (auto& g : t) {
      g.assign(rank_, 0);
      for (auto& v : g) v = pick(rng);
    }
    triples.push_back(std::move(t));
  }
  for (const auto& [a, b, c] : triples) {
    GroupElem left = collect(*this, collect(*this, a, b), c);
    GroupElem right = collect(*this, a, collect(*this, b, c));
    if (left != right) {
      fail("config", "the commutation table fails the associativity consistency check");
    }
  }
}

// --- GroupRingElem -----------------------------------------------------------

namespace {

void check_same_ring(const GroupRingElem& u, const GroupRingElem& v) {
  if (!u.ring() || !v.ring() || (u.ring() != v.ring() && !u.ring()->same(*v.ring()))) {
    fail("mismatch", "group-ring elements belong to different ring constructions");
  }
}

}  // namespace

GroupRingElem GroupRingElem::zero(GroupRingPtr ring) {
  GroupRingElem e;
  e.ring_ = std::move(ring);
  return e;
}

GroupRingElem GroupRingElem::one(GroupRingPtr ring) {
  GroupElem id = ring->identity();
  FieldElem c = FieldElem::integer(ring->tower(), 1);
  return term(std::move(ring), c, id);
}

GroupRingElem GroupRingElem::term(GroupRingPtr ring, const FieldElem& coeff, const GroupElem& g) {
  check_vector(*ring, g);
  if (!coeff.tower()->same(*ring->tower())) {
    fail("mismatch", "coefficient belongs to a different tower than the group ring");
  }
  GroupRingElem e;
  e.ring_ = std::move(ring);
  if (!coeff.is_zero()) e.terms_.emplace(g, coeff);
  return e;
}

GroupRingElem GroupRingElem::generator(GroupRingPtr ring, int i) {
  if (i < 0 || i >= ring->rank()) fail("bind", "unknown group generator index");
  GroupElem g = unit_vector(ring->rank(), i);
  FieldElem c = FieldElem::integer(ring->tower(), 1);
  return term(std::move(ring), c, g);
}

GroupRingElem GroupRingElem::operator-() const {
  GroupRingElem e;
  e.ring_ = ring_;
  for (const auto& [g, c] : terms_) e.terms_.emplace(g, -c);
  return e;
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  check_same_ring(*this, o);
  GroupRingElem e;
  e.ring_ = ring_;
  e.terms_ = terms_;
  for (const auto& [g, c] : o.terms_) {
    auto [pos, fresh] = e.terms_.emplace(g, c);
    if (!fresh) {
      pos->second = pos->second + c;
      if (pos->second.is_zero()) e.terms_.erase(pos);
    }
  }
  return e;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const { return *this + (-o); }

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  check_same_ring(*this, o);
  GroupRingElem e;
  e.ring_ = ring_;
  for (const auto& [g, a] : terms_) {
    for (const auto& [h, b] : o.terms_) {
      GroupElem z = collect(*ring_, g, h);
      FieldElem c = a * sigma_apply(*ring_, g, b);
      auto [pos, fresh] = e.terms_.emplace(std::move(z), c);
      if (!fresh) pos->second = pos->second + c;
    }
  }
  for (auto it = e.terms_.begin(); it != e.terms_.end();) {
    it = it->second.is_zero() ? e.terms_.erase(it) : std::next(it);
  }
  return e;
}

GroupRingElem GroupRingElem::times_left(const FieldElem& c) const {
  if (!c.tower()->same(*ring_->tower())) {
    fail("mismatch", "coefficient belongs to a different tower than the group ring");
  }
  GroupRingElem e;
  e.ring_ = ring_;
  if (c.is_zero()) return e;
  for (const auto& [g, a] : terms_) e.terms_.emplace(g, c * a);
  return e;
}

bool GroupRingElem::operator==(const GroupRingElem& o) const {
  check_same_ring(*this, o);
  return terms_ == o.terms_;
}

std::string GroupRingElem::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    std::string cs = c.str();
    bool negative = cs.size() > 1 && cs[0] == '-' && !coeff_composite(cs.substr(1));
    if (negative) cs = cs.substr(1);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string gs = group_elem_str(*ring_, g);
    if (gs == "1") {
      out += coeff_composite(cs) && cs[0] != '(' ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      out += gs;
    } else {
      out += (coeff_composite(cs) ? "(" + cs + ")" : cs) + "*" + gs;
    }
  }
  return out;
}

Valuation mn_o_val(const GroupRingElem& u) {
  if (u.is_zero()) return Valuation::infinite();
  long long best = u.terms().begin()->first[0];
  for (const auto& [g, c] : u.terms()) best = std::min(best, g[0]);
  return Valuation::finite(best);
}

// --- box-truncated series ----------------------------------------------------

namespace {

bool inside_box(const GroupElem& g, long long box) {
  for (long long v : g) {
    if (v < -box || v > box) return false;
  }
  return true;
}

void check_same_ring(const MNSeries& s, const MNSeries& t) {
  if (!s.ring || !t.ring || (s.ring != t.ring && !s.ring->same(*t.ring))) {
    fail("mismatch", "group-ring elements belong to different ring constructions");
  }
}

}  // namespace

MNSeries mn_truncate(const GroupRingElem& u, long long box) {
  if (box < 0) fail("domain", "the box bound must be nonnegative");
  if (!u.ring()) fail("mismatch", "group-ring elements belong to different ring constructions");
  MNSeries s;
  s.ring = u.ring();
  s.box = box;
  s.complete = true;
  for (const auto& [g, c] : u.terms()) {
    if (inside_box(g, box)) s.terms.emplace(g, c);
  }
  return s;
}

MNSeries mn_neg(const MNSeries& s) {
  MNSeries t;
  t.ring = s.ring;
  t.box = s.box;
  t.complete = s.complete;
  for (const auto& [g, c] : s.terms) t.terms.emplace(g, -c);
  return t;
}

MNSeries mn_add(const MNSeries& s, const MNSeries& t) {
  check_same_ring(s, t);
  MNSeries out;
  out.ring = s.ring;
  out.box = std::min(s.box, t.box);
  out.complete = s.complete && t.complete;
  for (const auto& [g, c] : s.terms) {
    if (inside_box(g, out.box)) out.terms.emplace(g, c);
  }
  for (const auto& [g, c] : t.terms) {
    if (!inside_box(g, out.box)) continue;
    auto [pos, fresh] = out.terms.emplace(g, c);
    if (!fresh) {
      pos->second = pos->second + c;
      if (pos->second.is_zero()) out.terms.erase(pos);
    }
  }
  return out;
}

MNSeries mn_sub(const MNSeries& s, const MNSeries& t) { return mn_add(s, mn_neg(t)); }

Valuation mn_o_val(const MNSeries& s) {
  if (s.terms.empty()) return Valuation::infinite();
  long long best = s.terms.begin()->first[0];
  for (const auto& [g, c] : s.terms) best = std::min(best, g[0]);
  return Valuation::finite(best);
}

MNSeries mn_mul_left(const GroupRingElem& u, const MNSeries& s) {
  if (!u.ring() || !s.ring || (u.ring() != s.ring && !u.ring()->same(*s.ring))) {
    fail("mismatch", "group-ring elements belong to different ring constructions");
  }
  MNSeries out;
  out.ring = s.ring;
  out.box = s.box;
  out.complete = false;
  const GroupRing& ring = *s.ring;
  for (const auto& [g, a] : u.terms()) {
    for (const auto& [h, b] : s.terms) {
      GroupElem z = collect(ring, g, h);
      FieldElem c = a * sigma_apply(ring, g, b);
      auto [pos, fresh] = out.terms.emplace(std::move(z), c);
      if (!fresh) pos->second = pos->second + c;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  }
  for (const auto& [g, c] : out.terms) {
    for (long long v : g) out.box = std::max(out.box, std::llabs(v));
  }
  return out;
}

MNSeries mn_mul_right(const MNSeries& s, const GroupRingElem& u) {
  if (!u.ring() || !s.ring || (u.ring() != s.ring && !u.ring()->same(*s.ring))) {
    fail("mismatch", "group-ring elements belong to different ring constructions");
  }
  MNSeries out;
  out.ring = s.ring;
  out.box = s.box;
  out.complete = false;
  const GroupRing& ring = *s.ring;
  for (const auto& [h, b] : s.terms) {
    for (const auto& [g, a] : u.terms()) {
      GroupElem z = collect(ring, h, g);
      FieldElem c = b * sigma_apply(ring, h, a);
      auto [pos, fresh] = out.terms.emplace(std::move(z), c);
      if (!fresh) pos->second = pos->second + c;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  }
  for (const auto& [g, c] : out.terms) {
    for (long long v : g) out.box = std::max(out.box, std::llabs(v));
  }
  return out;
}

long long mn_safe_box(const GroupRingElem& u, const MNSeries& s) {
  if (!u.ring() || !s.ring || (u.ring() != s.ring && !u.ring()->same(*s.ring))) {
    fail("mismatch", "group-ring elements belong to different ring constructions");
  }
  if (u.is_zero()) return s.box;
  const GroupRing& ring = *s.ring;
  const int r = ring.rank();
  std::vector<GroupElem> invs;
  for (const auto& [g, c] : u.terms()) invs.push_back(group_inv(ring, g));
  for (long long n = s.box; n >= 0; --n) {
    long double cells = 1;
    for (int i = 0; i < r; ++i) cells *= static_cast<long double>(2 * n + 1);
    if (cells > 5e6L) {
      fail("domain", "the safe-box search region is too large for this rank and box");
    }
    bool ok = true;
    GroupElem z(r, -n);
    while (ok) {
      for (const GroupElem& ti : invs) {
        if (!inside_box(collect(ring, ti, z), s.box)) {
          ok = false;
          break;
        }
      }
      int p = 0;
      while (p < r && ++z[p] > n) z[p++] = -n;
      if (p == r) break;
    }
    if (ok) return n;
  }
  return -1;
}

namespace {

// Pruning envelope for the geometric expansion inside mn_inverse. hi[s] is
// the hull upper bound for coordinate s of terms that can still matter;
// dec[s][u] bounds how much one expansion step whose first nonzero exponent
// sits at u can decrease coordinate s. keep() threads the per-coordinate
// budgets: coordinate s may only decrease through steps that consume budget
// at some earlier coordinate, so once every budget is spent the term can
// never fall back under its hull bound.
struct InverseEnvelope {
  int rank = 0;
  std::vector<long long> hi;
  std::vector<std::vector<long long>> dec;

  bool keep(const GroupElem& t) const {
    std::vector<long long> budget(rank, 0);
    for (int s = 0; s < rank; ++s) {
      long long allow = 0;
      for (int u = 0; u < s; ++u) allow += budget[u] * dec[s][u];
      long long room = hi[s] + allow - t[s];
      if (room < 0) return false;
      budget[s] = room;
    }
    return true;
  }
};

InverseEnvelope build_envelope(const GroupRing& ring, const std::vector<GroupElem>& support,
                               const GroupElem& g0, long long box) {
  const int r = ring.rank();
  InverseEnvelope env;
  env.rank = r;
  env.hi.assign(r, 0);
  // Coordinatewise hull of {b * g0 : b in the box}: products add coordinates
  // up to bilinear correction contributions, which are exact for central
  // corrections.
  for (int s = 0; s < r; ++s) {
    long long spread = 0;
    for (int j = 1; j < r; ++j) {
      for (int i = 0; i < j; ++i) {
        long long w = ring.correction(j, i)[s];
        if (w != 0) spread = env_checked(spread + std::llabs(w) * box * std::llabs(g0[i]));
      }
    }
    env.hi[s] = env_checked(g0[s] + box + spread);
  }
  env.dec.assign(r, std::vector<long long>(r, 0));
  std::vector<long long> rmax(r, 0), decmax(r, 0), abs_bound(r, 0);
  for (int s = 0; s < r; ++s) {
    for (const GroupElem& h : support) {
      int u = first_nonzero(h);
      if (u >= s) continue;  // cannot decrease coordinate s
      long long drop = -h[s];
      for (int j = 1; j < s; ++j) {
        for (int i = 0; i < j; ++i) {
          long long w = ring.correction(j, i)[s];
          if (w != 0) drop = env_checked(drop + std::llabs(w) * abs_bound[j] * std::llabs(h[i]));
        }
      }
      if (drop > env.dec[s][u]) env.dec[s][u] = drop;
    }
    long long dm = 0;
    for (int u = 0; u < s; ++u) dm = env_checked(dm + rmax[u] * env.dec[s][u]);
    decmax[s] = dm;
    rmax[s] = std::max(0LL, env_checked(env.hi[s] + dm));
    abs_bound[s] = env_checked(std::llabs(env.hi[s]) + dm);
  }
  return env;
}

}  // namespace

MNSeries mn_inverse(const GroupRingElem& u, long long box) {
  if (!u.ring() || u.is_zero()) fail("domain", "cannot invert the zero group-ring element");
  if (box < 0) fail("domain", "the box bound must be nonnegative");
  const GroupRingPtr& rp = u.ring();
  const GroupRing& ring = *rp;
  if (!ring.central_corrections()) {
    fail("domain",
         "box-truncated inversion is only available for presentations whose "
         "commutation corrections are central generators");
  }
  // Factor u = a*g0*(1 + m) with g0 the lex-least support element; then
  // u^{-1} = (sum_k (-m)^k) * (a*g0)^{-1}.
  auto it0 = u.terms().begin();
  const GroupElem g0 = it0->first;
  const FieldElem a = it0->second;
  const GroupElem e0 = group_inv(ring, g0);
  const FieldElem c0 = sigma_apply(ring, e0, a.inverse());  // (a*g0)^{-1} = c0 * e0

  GroupTermMap mterms;  // support of -m, strictly lex-positive
  std::vector<GroupElem> msupp;
  for (auto it = std::next(it0); it != u.terms().end(); ++it) {
    GroupElem z = collect(ring, e0, it->first);
    int fn = first_nonzero(z);
    if (fn >= ring.rank() || z[fn] <= 0) {
      fail("internal", "inverse expansion produced a non-positive support element");
    }
    FieldElem c = -(c0 * sigma_apply(ring, e0, it->second));
    msupp.push_back(z);
    mterms.emplace(std::move(z), c);
  }
  InverseEnvelope env = build_envelope(ring, msupp, g0, box);

  GroupTermMap total, frontier;
  const FieldElem one = FieldElem::integer(ring.tower(), 1);
  GroupElem id = ring.identity();
  if (env.keep(id)) {
    total.emplace(id, one);
    frontier.emplace(id, one);
  }
  // The minimum of the frontier strictly increases lexicographically each
  // round and the envelope is finite, so the loop terminates; the visit
  // counter turns a blow-up in sheer size into a clean failure first.
  long long visited = 0;
  while (!frontier.empty()) {
    GroupTermMap next;
    for (const auto& [t, c] : frontier) {
      for (const auto& [h, d] : mterms) {
        GroupElem z = collect(ring, t, h);
        if (!env.keep(z)) continue;
        FieldElem val = c * sigma_apply(ring, t, d);
        auto [pos, fresh] = next.emplace(std::move(z), val);
        if (!fresh) pos->second = pos->second + val;
      }
    }
    visited += static_cast<long long>(next.size());
    if (visited > kEnvCount) {
      fail("domain",
           "the box envelope for series inversion is too large; choose a smaller box");
    }
    for (auto it = next.begin(); it != next.end();) {
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    }
    for (const auto& [t, c] : next) {
      auto [pos, fresh] = total.emplace(t, c);
      if (!fresh) pos->second = pos->second + c;
    }
    frontier = std::move(next);
  }

  MNSeries out;
  out.ring = rp;
  out.box = box;
  out.complete = true;
  for (const auto& [t, c] : total) {
    if (c.is_zero()) continue;
    GroupElem z = collect(ring, t, e0);
    if (!inside_box(z, box)) continue;
    FieldElem val = c * sigma_apply(ring, t, c0);
    if (val.is_zero()) continue;
    auto [pos, fresh] = out.terms.emplace(std::move(z), val);
    if (!fresh) pos->second = pos->second + val;
  }
  return out;
}

Valuation mn_fraction_val(const GroupRingElem& f, const GroupRingElem& g) {
  check_same_ring(f, g);
  if (g.is_zero()) fail("domain", "the denominator of a fraction valuation must be nonzero");
  if (f.is_zero()) return Valuation::infinite();
  return Valuation::finite(mn_o_val(f).finite_value() - mn_o_val(g).finite_value());
}

MNSeries mn_cauchy_limit(const std::vector<MNSeries>& run) {
  if (run.empty()) fail("domain", "cannot take the limit of an empty run");
  long long box = run.front().box;
  bool complete = true;
  for (const MNSeries& s : run) {
    check_same_ring(run.front(), s);
    box = std::min(box, s.box);
    complete = complete && s.complete;
  }
  const long long last = static_cast<long long>(run.size()) - 1;
  for (long long k = 0; k + 1 <= last; ++k) {
    MNSeries diff = mn_sub(run[k + 1], run[k]);
    // restrict the comparison to the common box of the whole run
    Valuation v = mn_o_val(mn_add(mn_truncate(GroupRingElem::zero(run.front().ring), box), diff));
    if (!v.at_least_n(k + 1)) {
      fail("domain", "the run is non-Cauchy: terms with first coordinate <= " +
                         std::to_string(k) + " changed between entries " + std::to_string(k) +
                         " and " + std::to_string(k + 1));
    }
  }
  MNSeries out;
  out.ring = run.front().ring;
  out.box = box;
  out.complete = complete && last >= box;
  for (long long k = 0; k <= last; ++k) {
    for (const auto& [g, c] : run[k].terms) {
      if (!inside_box(g, box)) continue;
      long long src = g[0] <= 0 ? 0 : g[0];
      if (src > last) continue;  // not determined by the run
      if (src == k) out.terms.emplace(g, c);
    }
  }
  return out;
}

std::string mn_str(const MNSeries& s) {
  std::string out;
  bool first = true;
  for (const auto& [g, c] : s.terms) {
    std::string cs = c.str();
    bool negative = cs.size() > 1 && cs[0] == '-' && !coeff_composite(cs.substr(1));
    if (negative) cs = cs.substr(1);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string gs = group_elem_str(*s.ring, g);
    if (gs == "1") {
      out += coeff_composite(cs) && cs[0] != '(' ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      out += gs;
    } else {
      out += (coeff_composite(cs) ? "(" + cs + ")" : cs) + "*" + gs;
    }
  }
  if (!first) out += " + ";
  out += "O(box " + std::to_string(s.box) + ")";
  return out;
}

GroupRingPtr make_heisenberg_ring() {
  std::map<std::pair<int, int>, GroupElem> corr;
  corr[{1, 0}] = GroupElem{0, 0, -1};
  return GroupRing::make(3, std::move(corr), FieldTower::rationals());
}

}  // namespace skewring
