#include "skewring/ore.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "skewring/error.hpp"

namespace skewring {

namespace {

OreMono zero_mono(int n) { return OreMono(static_cast<size_t>(n), 0); }

OreMono unit_mono(int n, int i) {
  OreMono m = zero_mono(n);
  m[static_cast<size_t>(i)] = 1;
  return m;
}

bool mono_uses_at_or_above(const OreMono& m, int i) {
  for (size_t k = static_cast<size_t>(i); k < m.size(); ++k)
    if (m[k] != 0) return true;
  return false;
}

void add_term(OreTermMap& dst, const OreMono& m, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = dst.find(m);
  if (it == dst.end()) {
    dst.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) dst.erase(it);
}

void add_all(OreTermMap& dst, const OreTermMap& src) {
  for (const auto& [m, c] : src) add_term(dst, m, c);
}

OreTermMap sub_maps(const OreTermMap& a, const OreTermMap& b) {
  OreTermMap out = a;
  for (const auto& [m, c] : b) add_term(out, m, -c);
  return out;
}

// Right multiplication by a coefficient from the base tower acts
// coefficient-wise: (x^m * a) * c = x^m * (a*c), because a and c live in the
// same commutative field.
OreTermMap scale_right(const OreTermMap& u, const FieldElem& c) {
  OreTermMap out;
  if (c.is_zero()) return out;
  for (const auto& [m, a] : u) {
    FieldElem p = a * c;
    if (!p.is_zero()) out.emplace(m, p);
  }
  return out;
}

bool maps_equal(const OreTermMap& a, const OreTermMap& b) {
  if (a.size() != b.size()) return false;
  auto ita = a.begin();
  auto itb = b.begin();
  for (; ita != a.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (!(ita->second == itb->second)) return false;
  }
  return true;
}

// True when the string needs parentheses to be reused as a factor in a
// product rendering.
bool needs_parens(const std::string& s) {
  if (s.empty()) return false;
  if (s[0] == '-' || s[0] == '(') return true;
  for (char ch : s)
    if (ch == ' ' || ch == '+' || ch == '*' || ch == '/' || ch == '^') return true;
  return s.find('-') != std::string::npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// OreTower
// ---------------------------------------------------------------------------

OreTowerPtr OreTower::make(TowerPtr base, std::vector<OreVarSpec> vars) {
  if (!base) fail("config", "skew tower requires a coefficient tower");
  auto t = std::shared_ptr<OreTower>(new OreTower());
  t->base_ = std::move(base);
  t->vars_ = std::move(vars);
  t->validate();
  return t;
}

int OreTower::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  fail("bind", "unknown skew variable '" + name + "'");
}

bool OreTower::same(const OreTower& o) const { return this == &o; }

bool OreTower::var_is_plain(int i) const {
  const OreVarSpec& v = vars_.at(static_cast<size_t>(i));
  return v.sigma_base.is_identity() && v.sigma_var_images.empty() &&
         v.delta_base_values.empty() && v.delta_var_values.empty();
}

void OreTower::validate() const {
  const int n = nvars();
  std::set<std::string> seen(base_->vars().begin(), base_->vars().end());
  for (const OreVarSpec& v : vars_) {
    if (v.name.empty()) fail("config", "skew variable with empty name");
    if (!seen.insert(v.name).second)
      fail("config", "duplicate variable name '" + v.name + "'");
  }

  auto check_map = [&](const OreTermMap& m, int i, const char* what) {
    for (const auto& [mono, c] : m) {
      if (static_cast<int>(mono.size()) != n)
        fail("config", std::string(what) + ": exponent vector has wrong length");
      for (int e : mono)
        if (e < 0) fail("config", std::string(what) + ": negative exponent");
      if (mono_uses_at_or_above(mono, i))
        fail("config",
             std::string(what) + " for variable '" + vars_[static_cast<size_t>(i)].name +
                 "' uses a variable that is not strictly earlier");
      if (!c.tower()->same(*base_))
        fail("mismatch", std::string(what) + ": coefficient from another tower");
      if (c.is_zero())
        fail("config", std::string(what) + ": zero coefficient stored");
    }
  };

  for (int i = 0; i < n; ++i) {
    const OreVarSpec& v = vars_[static_cast<size_t>(i)];
    if (!v.sigma_base.tower()->same(*base_))
      fail("mismatch", "twist endomorphism of '" + v.name + "' acts on another tower");
    for (const auto& [j, img] : v.sigma_var_images) {
      if (j < 0 || j >= i)
        fail("config", "twist image for '" + v.name + "' names a variable that is not strictly earlier");
      if (img.empty())
        fail("config", "twist endomorphism of '" + v.name + "' maps a variable to zero");
      check_map(img, i, "twist image");
    }
    for (const auto& [k, val] : v.delta_base_values) {
      if (k < 0 || k >= base_->height())
        fail("config", "derivation value for '" + v.name + "' names an unknown base variable");
      check_map(val, i, "derivation value");
    }
    for (const auto& [j, val] : v.delta_var_values) {
      if (j < 0 || j >= i)
        fail("config", "derivation value for '" + v.name + "' names a variable that is not strictly earlier");
      check_map(val, i, "derivation value");
    }
  }

  // Sampled coherence checks. Products of earlier generators are first put
  // into normal form (which may invoke lower-level rewrites), so these verify
  // that the declared twist/derivation data is compatible with the relations
  // already imposed below level i.
  for (int i = 0; i < n; ++i) {
    const OreVarSpec& v = vars_[static_cast<size_t>(i)];
    const bool sigma_trivial = v.sigma_base.is_identity() && v.sigma_var_images.empty();
    const bool delta_trivial = v.delta_base_values.empty() && v.delta_var_values.empty();
    if (sigma_trivial && delta_trivial) continue;

    std::vector<OreTermMap> samples;
    for (int j = 0; j < i; ++j)
      samples.push_back(OreTermMap{{unit_mono(n, j), FieldElem::rational(base_, 1)}});
    for (int k = 0; k < base_->height(); ++k)
      samples.push_back(OreTermMap{{zero_mono(n), FieldElem::variable(base_, k)}});

    for (const OreTermMap& u : samples) {
      for (const OreTermMap& w : samples) {
        OreTermMap prod = mul_terms(u, w, i);
        if (!sigma_trivial) {
          OreTermMap lhs = sigma_terms(prod, i);
          OreTermMap rhs = mul_terms(sigma_terms(u, i), sigma_terms(w, i), i);
          if (!maps_equal(lhs, rhs))
            fail("config", "twist data for '" + v.name + "' is not multiplicative on the lower ring");
        }
        if (!delta_trivial) {
          OreTermMap lhs = delta_terms(prod, i);
          OreTermMap rhs = mul_terms(delta_terms(u, i), sigma_terms(w, i), i);
          add_all(rhs, mul_terms(u, delta_terms(w, i), i));
          if (!maps_equal(lhs, rhs))
            fail("config", "derivation data for '" + v.name + "' violates the twisted product rule");
        }
      }
    }
  }
}

// u * x_i^l, with u supported on variables < i, expressed as a map from
// x_i-exponent to lower term maps. One application of the rewrite sends the
// bucket at exponent e to sigma_i(bucket) at e+1 plus delta_i(bucket) at e.
std::map<int, OreTermMap> OreTower::push_through(const OreTermMap& u, int i, int l) const {
  std::map<int, OreTermMap> cur{{0, u}};
  if (l == 0 || u.empty()) return cur;
  if (var_is_plain(i)) return {{l, u}};
  const OreVarSpec& v = vars_[static_cast<size_t>(i)];
  const bool delta_trivial = v.delta_base_values.empty() && v.delta_var_values.empty();
  for (int step = 0; step < l; ++step) {
    std::map<int, OreTermMap> next;
    for (const auto& [e, s] : cur) {
      if (s.empty()) continue;
      add_all(next[e + 1], sigma_terms(s, i));
      if (!delta_trivial) add_all(next[e], delta_terms(s, i));
    }
    cur = std::move(next);
  }
  return cur;
}

OreTermMap OreTower::mul_terms(const OreTermMap& p, const OreTermMap& r, int level) const {
  OreTermMap out;
  if (p.empty() || r.empty()) return out;
  if (level == 0) {
    const FieldElem prod = p.begin()->second * r.begin()->second;
    if (!prod.is_zero()) out.emplace(zero_mono(nvars()), prod);
    return out;
  }
  const int k = level - 1;

  // Decompose both factors by their exponent in the top variable of this
  // level; bucket keys keep the full-length monomial with that entry zeroed.
  auto bucket = [&](const OreTermMap& src) {
    std::map<int, OreTermMap> b;
    for (const auto& [m, c] : src) {
      OreMono lower = m;
      int e = lower[static_cast<size_t>(k)];
      lower[static_cast<size_t>(k)] = 0;
      b[e].emplace(std::move(lower), c);
    }
    return b;
  };
  const std::map<int, OreTermMap> pb = bucket(p);
  const std::map<int, OreTermMap> rb = bucket(r);

  for (const auto& [i, pi] : pb) {
    for (const auto& [j, rj] : rb) {
      // (x_k^i * pi) * (x_k^j * rj) = x_k^i * (pi * x_k^j) * rj
      std::map<int, OreTermMap> pushed = push_through(pi, k, j);
      for (const auto& [l, sl] : pushed) {
        OreTermMap prod = mul_terms(sl, rj, k);
        for (const auto& [m, c] : prod) {
          OreMono full = m;
          full[static_cast<size_t>(k)] = i + l;
          add_term(out, full, c);
        }
      }
    }
  }
  return out;
}

OreTermMap OreTower::sigma_mono(const OreMono& m, int i) const {
  const OreVarSpec& v = vars_[static_cast<size_t>(i)];
  bool any_nontrivial = false;
  for (int j = 0; j < i; ++j)
    if (m[static_cast<size_t>(j)] > 0 && v.sigma_var_images.count(j)) any_nontrivial = true;
  if (!any_nontrivial) return {{m, FieldElem::rational(base_, 1)}};

  OreTermMap acc{{zero_mono(nvars()), FieldElem::rational(base_, 1)}};
  for (int j = i - 1; j >= 0; --j) {
    const int e = m[static_cast<size_t>(j)];
    if (e == 0) continue;
    auto it = v.sigma_var_images.find(j);
    const OreTermMap img = (it != v.sigma_var_images.end())
                               ? it->second
                               : OreTermMap{{unit_mono(nvars(), j), FieldElem::rational(base_, 1)}};
    for (int t = 0; t < e; ++t) acc = mul_terms(acc, img, i);
  }
  return acc;
}

// sigma_i of a normal-form map supported on variables < i: apply the ring
// endomorphism to each monomial and twist the base coefficient.
OreTermMap OreTower::sigma_terms(const OreTermMap& u, int i) const {
  const OreVarSpec& v = vars_[static_cast<size_t>(i)];
  if (v.sigma_base.is_identity() && v.sigma_var_images.empty()) return u;
  OreTermMap out;
  for (const auto& [m, c] : u) {
    OreTermMap part = scale_right(sigma_mono(m, i), v.sigma_base.apply(c));
    add_all(out, part);
  }
  return out;
}

// delta_i of a pure monomial on variables < i, by the twisted product rule
// over its letters: delta(p*y) = delta(p)*sigma(y) + p*delta(y).
OreTermMap OreTower::delta_mono(const OreMono& m, int i) const {
  const OreVarSpec& v = vars_[static_cast<size_t>(i)];
  const FieldElem one = FieldElem::rational(base_, 1);
  OreTermMap prefix{{zero_mono(nvars()), one}};
  OreTermMap dpre;
  for (int j = i - 1; j >= 0; --j) {
    const int e = m[static_cast<size_t>(j)];
    if (e == 0) continue;
    auto img_it = v.sigma_var_images.find(j);
    const OreTermMap sig_y = (img_it != v.sigma_var_images.end())
                                 ? img_it->second
                                 : OreTermMap{{unit_mono(nvars(), j), one}};
    auto val_it = v.delta_var_values.find(j);
    const OreTermMap del_y = (val_it != v.delta_var_values.end()) ? val_it->second : OreTermMap{};
    const OreTermMap y{{unit_mono(nvars(), j), one}};
    for (int t = 0; t < e; ++t) {
      OreTermMap next = mul_terms(dpre, sig_y, i);
      if (!del_y.empty()) add_all(next, mul_terms(prefix, del_y, i));
      dpre = std::move(next);
      prefix = mul_terms(prefix, y, i);
    }
  }
  return dpre;
}

namespace {

// delta_i on the base field, extended from the declared values on base
// variables through the twisted product and quotient rules. Works level by
// level over the canonical fraction representation; polynomial values are
// rebuilt with plain field arithmetic so no lifting of partial-depth nodes
// is needed. Returns (value, delta(value)).
struct BaseDeriv {
  const OreTower& tower;
  int i;  // which skew variable's derivation

  std::pair<FieldElem, OreTermMap> node(const FieldElem::Node& nd) const {
    const TowerPtr& K = tower.base();
    if (nd.depth == 0) return {FieldElem::rational(K, nd.rat), {}};
    auto [pval, dp] = poly(nd.num, nd.depth - 1);
    if (nd.den.size() == 1 && nd.den[0].depth == nd.depth - 1) {
      auto [qval, dq] = poly(nd.den, nd.depth - 1);
      if (qval.is_one() && dq.empty()) return {pval, std::move(dp)};
      return quotient(pval, dp, qval, dq);
    }
    auto [qval, dq] = poly(nd.den, nd.depth - 1);
    return quotient(pval, dp, qval, dq);
  }

  std::pair<FieldElem, OreTermMap> quotient(const FieldElem& pval, const OreTermMap& dp,
                                            const FieldElem& qval, const OreTermMap& dq) const {
    const FieldEndo& sigma = tower.var_spec(i).sigma_base;
    FieldElem val = pval / qval;
    // delta(p/q) = (delta(p) - (p/q)*delta(q)) * sigma(q)^{-1}, from
    // 0 = delta(q * q^{-1}).
    OreTermMap num = dp;
    if (!dq.empty()) {
      OreTermMap shift = tower.mul_terms(
          OreTermMap{{zero_mono(tower.nvars()), val}}, dq, i);
      num = sub_maps(num, shift);
    }
    return {std::move(val), scale_right(num, sigma.apply(qval).inverse())};
  }

  // Sum of coeff[j] * v_k^j where the coefficients live one level down.
  std::pair<FieldElem, OreTermMap> poly(const std::vector<FieldElem::Node>& cs, int k) const {
    const TowerPtr& K = tower.base();
    const OreVarSpec& spec = tower.var_spec(i);
    const FieldElem v = FieldElem::variable(K, k);
    const FieldElem sv = spec.sigma_base.apply(v);
    auto dv_it = spec.delta_base_values.find(k);
    const OreTermMap* dv = (dv_it != spec.delta_base_values.end()) ? &dv_it->second : nullptr;

    FieldElem val = FieldElem::rational(K, 0);
    OreTermMap dmap;
    FieldElem vpow = FieldElem::rational(K, 1);
    FieldElem svpow = FieldElem::rational(K, 1);
    OreTermMap dvpow;  // delta(v^j), starting with j = 0
    for (size_t j = 0; j < cs.size(); ++j) {
      auto [cval, dc] = node(cs[j]);
      if (!cval.is_zero()) {
        val = val + cval * vpow;
        // delta(c * v^j) = delta(c)*sigma(v^j) + c*delta(v^j)
        add_all(dmap, scale_right(dc, svpow));
        if (!dvpow.empty())
          add_all(dmap, tower.mul_terms(
                            OreTermMap{{zero_mono(tower.nvars()), cval}}, dvpow, i));
      }
      if (j + 1 < cs.size()) {
        // delta(v^{j+1}) = delta(v^j)*sigma(v) + v^j*delta(v)
        OreTermMap next = scale_right(dvpow, sv);
        if (dv)
          add_all(next, tower.mul_terms(
                            OreTermMap{{zero_mono(tower.nvars()), vpow}}, *dv, i));
        dvpow = std::move(next);
        vpow = vpow * v;
        svpow = svpow * sv;
      }
    }
    return {std::move(val), std::move(dmap)};
  }
};

}  // namespace

OreTermMap OreTower::delta_base_elem(const FieldElem& a, int i) const {
  const OreVarSpec& v = vars_[static_cast<size_t>(i)];
  if (v.delta_base_values.empty() || a.is_rational()) return {};
  BaseDeriv bd{*this, i};
  return bd.node(a.node()).second;
}

// delta_i of a normal-form map supported on variables < i:
// delta(x^m * c) = delta(x^m)*sigma(c) + x^m*delta(c).
OreTermMap OreTower::delta_terms(const OreTermMap& u, int i) const {
  const OreVarSpec& v = vars_[static_cast<size_t>(i)];
  if (v.delta_base_values.empty() && v.delta_var_values.empty()) return {};
  OreTermMap out;
  for (const auto& [m, c] : u) {
    add_all(out, scale_right(delta_mono(m, i), v.sigma_base.apply(c)));
    OreTermMap dc = delta_base_elem(c, i);
    if (!dc.empty())
      add_all(out, mul_terms(OreTermMap{{m, FieldElem::rational(base_, 1)}}, dc, i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// OrePoly
// ---------------------------------------------------------------------------

OrePoly OrePoly::zero(OreTowerPtr t) {
  OrePoly p;
  p.tower_ = std::move(t);
  return p;
}

OrePoly OrePoly::constant(OreTowerPtr t, const FieldElem& c) {
  if (!c.tower()->same(*t->base()))
    fail("mismatch", "coefficient belongs to another tower");
  OrePoly p = zero(std::move(t));
  if (!c.is_zero()) p.terms_.emplace(zero_mono(p.tower_->nvars()), c);
  return p;
}

OrePoly OrePoly::variable(OreTowerPtr t, int i) {
  if (i < 0 || i >= t->nvars()) fail("bind", "skew variable index out of range");
  OrePoly p = zero(t);
  p.terms_.emplace(unit_mono(t->nvars(), i), FieldElem::rational(t->base(), 1));
  return p;
}

OrePoly OrePoly::monomial(OreTowerPtr t, const OreMono& m, const FieldElem& c) {
  if (static_cast<int>(m.size()) != t->nvars())
    fail("config", "exponent vector has wrong length");
  for (int e : m)
    if (e < 0) fail("domain", "skew polynomial exponents must be nonnegative");
  if (!c.tower()->same(*t->base()))
    fail("mismatch", "coefficient belongs to another tower");
  OrePoly p = zero(std::move(t));
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool OrePoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == zero_mono(tower_->nvars());
}

FieldElem OrePoly::constant_coefficient() const {
  auto it = terms_.find(zero_mono(tower_->nvars()));
  if (it == terms_.end()) return FieldElem::rational(tower_->base(), 0);
  return it->second;
}

static void check_same(const OrePoly& a, const OrePoly& b) {
  if (!a.tower() || !b.tower()) fail("internal", "uninitialized skew polynomial");
  if (!a.tower()->same(*b.tower()))
    fail("mismatch", "skew polynomials belong to different ring constructions");
}

OrePoly OrePoly::operator-() const {
  OrePoly out = zero(tower_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

OrePoly OrePoly::operator+(const OrePoly& o) const {
  check_same(*this, o);
  OrePoly out = *this;
  for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, c);
  return out;
}

OrePoly OrePoly::operator-(const OrePoly& o) const {
  check_same(*this, o);
  OrePoly out = *this;
  for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, -c);
  return out;
}

OrePoly OrePoly::operator*(const OrePoly& o) const {
  check_same(*this, o);
  OrePoly out = zero(tower_);
  out.terms_ = tower_->mul_terms(terms_, o.terms_, tower_->nvars());
  return out;
}

OrePoly OrePoly::times_base_right(const FieldElem& c) const {
  if (!c.tower()->same(*tower_->base()))
    fail("mismatch", "coefficient belongs to another tower");
  OrePoly out = zero(tower_);
  out.terms_ = scale_right(terms_, c);
  return out;
}

OrePoly OrePoly::pow(long long e) const {
  if (e < 0) fail("domain", "negative power of a skew polynomial (only series invert)");
  OrePoly acc = constant(tower_, FieldElem::rational(tower_->base(), 1));
  OrePoly b = *this;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = (e >>= 1) > 0 ? b * b : b;
  }
  return acc;
}

bool OrePoly::operator==(const OrePoly& o) const {
  check_same(*this, o);
  return maps_equal(terms_, o.terms_);
}

Valuation OrePoly::deg_val(int var) const {
  if (var < 0 || var >= tower_->nvars()) fail("bind", "unknown skew variable");
  if (terms_.empty()) return Valuation::infinite();
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int e = m[static_cast<size_t>(var)];
    if (first || e > best) best = e;
    first = false;
  }
  return Valuation::finite(-static_cast<long long>(best));
}

Valuation OrePoly::order(int var) const {
  if (var < 0 || var >= tower_->nvars()) fail("bind", "unknown skew variable");
  if (terms_.empty()) return Valuation::infinite();
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int e = m[static_cast<size_t>(var)];
    if (first || e < best) best = e;
    first = false;
  }
  return Valuation::finite(best);
}

std::string OrePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    FieldElem coeff = c;
    bool negative = false;
    if (coeff.is_rational() && coeff.to_rational() < 0) {
      negative = true;
      coeff = -coeff;
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::string mono_str;
    for (int j = tower_->nvars() - 1; j >= 0; --j) {
      int e = m[static_cast<size_t>(j)];
      if (e == 0) continue;
      if (!mono_str.empty()) mono_str += "*";
      mono_str += tower_->var_name(j);
      if (e > 1) mono_str += "^" + std::to_string(e);
    }

    std::string cs = coeff.str();
    if (mono_str.empty()) {
      if (needs_parens(cs) && cs[0] != '(') os << "(" << cs << ")";
      else os << cs;
    } else if (coeff.is_one()) {
      os << mono_str;
    } else {
      os << mono_str << "*";
      if (needs_parens(cs)) os << "(" << cs << ")";
      else os << cs;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

// Bounded guard: rejects 0 and any rational parameter q with q^m = 1 for
// some 1 <= m <= 64 (this includes q = 1 and q = -1). Not a proof for
// symbolic parameters, which are always safe as fresh transcendentals.
void check_preset_parameter(const mpq_class& p) {
  if (p == 0) fail("config", "preset parameter must be nonzero");
  mpq_class acc = 1;
  for (int m = 1; m <= 64; ++m) {
    acc *= p;
    if (acc == 1)
      fail("config", "preset parameter is a root of unity (order " + std::to_string(m) +
                         " <= 64); the construction needs a parameter of infinite multiplicative order");
  }
}

namespace {

std::string param_literal(const std::optional<mpq_class>& param, const std::string& name) {
  if (!param) return name;
  return "(" + param->get_str() + ")";
}

void check_relation(const OrePoly& p, const std::string& text) {
  if (!p.is_zero())
    fail("config", "defining relation did not normalize to zero: " + text +
                       " (got " + p.str() + ")");
}

}  // namespace

OrePreset make_ore_preset(const std::string& name, const std::optional<mpq_class>& param) {
  if (param) check_preset_parameter(*param);

  if (name == "weyl") {
    if (param) fail("config", "preset 'weyl' takes no parameter");
    TowerPtr base = FieldTower::rationals();
    std::vector<OreVarSpec> vars;
    vars.push_back({"x1", FieldEndo::identity(base), {}, {}, {}});
    OreVarSpec x2{"x2", FieldEndo::identity(base), {}, {}, {}};
    x2.delta_var_values[0] = OreTermMap{{zero_mono(2), FieldElem::rational(base, 1)}};
    vars.push_back(std::move(x2));
    OreTowerPtr t = OreTower::make(base, std::move(vars));

    OrePoly X1 = OrePoly::variable(t, 0), X2 = OrePoly::variable(t, 1);
    OrePoly one = OrePoly::constant(t, FieldElem::rational(base, 1));
    std::string rel = "x1*x2 - x2*x1 - 1";
    check_relation(X1 * X2 - X2 * X1 - one, rel);
    return {t, {rel}, ""};
  }

  if (name == "quantum_matrices") {
    TowerPtr base = param ? FieldTower::rationals() : FieldTower::make({"q"});
    FieldElem q = param ? FieldElem::rational(base, *param) : FieldElem::variable(base, 0);
    const std::string qs = param_literal(param, "q");

    std::vector<OreVarSpec> vars;
    vars.push_back({"a", FieldEndo::identity(base), {}, {}, {}});
    OreVarSpec b{"b", FieldEndo::identity(base), {}, {}, {}};
    b.sigma_var_images[0] = OreTermMap{{unit_mono(4, 0), q}};
    vars.push_back(std::move(b));
    OreVarSpec c{"c", FieldEndo::identity(base), {}, {}, {}};
    c.sigma_var_images[0] = OreTermMap{{unit_mono(4, 0), q}};
    vars.push_back(std::move(c));
    OreVarSpec d{"d", FieldEndo::identity(base), {}, {}, {}};
    d.sigma_var_images[1] = OreTermMap{{unit_mono(4, 1), q}};
    d.sigma_var_images[2] = OreTermMap{{unit_mono(4, 2), q}};
    OreMono cb = zero_mono(4);
    cb[1] = 1;
    cb[2] = 1;
    d.delta_var_values[0] = OreTermMap{{cb, q - q.inverse()}};
    vars.push_back(std::move(d));
    OreTowerPtr t = OreTower::make(base, std::move(vars));

    OrePoly A = OrePoly::variable(t, 0), B = OrePoly::variable(t, 1);
    OrePoly C = OrePoly::variable(t, 2), D = OrePoly::variable(t, 3);
    auto K = [&](const FieldElem& e) { return OrePoly::constant(t, e); };
    std::vector<std::string> rels = {
        "a*b - " + qs + "*b*a",
        "a*c - " + qs + "*c*a",
        "b*c - c*b",
        "b*d - " + qs + "*d*b",
        "c*d - " + qs + "*d*c",
        "a*d - d*a - (" + qs + " - " + qs + "^-1)*c*b",
    };
    check_relation(A * B - K(q) * B * A, rels[0]);
    check_relation(A * C - K(q) * C * A, rels[1]);
    check_relation(B * C - C * B, rels[2]);
    check_relation(B * D - K(q) * D * B, rels[3]);
    check_relation(C * D - K(q) * D * C, rels[4]);
    check_relation(A * D - D * A - K(q - q.inverse()) * C * B, rels[5]);
    return {t, rels, param ? "" : "q"};
  }

  if (name == "quantum_torus") {
    TowerPtr base = param ? FieldTower::rationals() : FieldTower::make({"lambda"});
    FieldElem lam = param ? FieldElem::rational(base, *param) : FieldElem::variable(base, 0);
    const std::string ls = param_literal(param, "lambda");

    std::vector<OreVarSpec> vars;
    vars.push_back({"x", FieldEndo::identity(base), {}, {}, {}});
    OreVarSpec y{"y", FieldEndo::identity(base), {}, {}, {}};
    y.sigma_var_images[0] = OreTermMap{{unit_mono(2, 0), lam}};
    vars.push_back(std::move(y));
    OreTowerPtr t = OreTower::make(base, std::move(vars));

    OrePoly X = OrePoly::variable(t, 0), Y = OrePoly::variable(t, 1);
    std::string rel = "x*y - " + ls + "*y*x";
    check_relation(X * Y - OrePoly::constant(t, lam) * Y * X, rel);
    return {t, {rel}, param ? "" : "lambda"};
  }

  if (name == "skew_poly") {
    // One twisted variable over rational functions in t: t*x = x*(q*t).
    TowerPtr base = param ? FieldTower::make({"t"}) : FieldTower::make({"q", "t"});
    FieldElem q, tv;
    FieldEndo sigma = [&]() {
      if (param) {
        q = FieldElem::rational(base, *param);
        tv = FieldElem::variable(base, 0);
        return FieldEndo(base, {q * tv}, std::vector<FieldElem>{tv / q});
      }
      q = FieldElem::variable(base, 0);
      tv = FieldElem::variable(base, 1);
      return FieldEndo(base, {q, q * tv}, std::vector<FieldElem>{q, tv / q});
    }();
    const std::string qs = param_literal(param, "q");

    std::vector<OreVarSpec> vars;
    vars.push_back({"x", std::move(sigma), {}, {}, {}});
    OreTowerPtr t = OreTower::make(base, std::move(vars));

    OrePoly X = OrePoly::variable(t, 0);
    OrePoly T = OrePoly::constant(t, tv);
    std::string rel = "t*x - " + qs + "*x*t";
    check_relation(T * X - OrePoly::constant(t, q) * X * T, rel);
    return {t, {rel}, param ? "" : "q"};
  }

  fail("config", "unknown preset '" + name +
                     "' (expected weyl, quantum_matrices, quantum_torus, or skew_poly)");
}

}  // namespace skewring
