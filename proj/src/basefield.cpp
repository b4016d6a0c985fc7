#include "skewring/basefield.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace skewring {

using Node = FieldElem::Node;
using Poly = std::vector<Node>;

// ---------------------------------------------------------------------------
// Node primitives
// ---------------------------------------------------------------------------

namespace {

Node n_zero(int depth);
Node n_one(int depth);
Node n_add(const Node& a, const Node& b);
Node n_sub(const Node& a, const Node& b);
Node n_mul(const Node& a, const Node& b);
Node n_neg(const Node& a);
Node n_inv(const Node& a);
Node n_from_fraction(Poly num, Poly den, int depth);

bool n_is_zero(const Node& a) {
  if (a.depth == 0) return sgn(a.rat) == 0;
  return a.num.empty();
}

bool n_is_one(const Node& a) {
  if (a.depth == 0) return a.rat == 1;
  return a.num.size() == 1 && a.den.size() == 1 && n_is_one(a.num[0]) && n_is_one(a.den[0]);
}

Node n_const(int depth, const mpq_class& q) {
  Node n;
  if (depth == 0) {
    n.rat = q;
    n.depth = 0;
    return n;
  }
  n.depth = depth;
  if (sgn(q) != 0) n.num.push_back(n_const(depth - 1, q));
  n.den.push_back(n_one(depth - 1));
  return n;
}

Node n_zero(int depth) { return n_const(depth, mpq_class(0)); }
Node n_one(int depth) { return n_const(depth, mpq_class(1)); }

// Variable with 0-based index idx, represented at the given depth (idx < depth).
Node n_var(int depth, int idx) {
  if (idx + 1 == depth) {
    Node n;
    n.depth = depth;
    n.num.push_back(n_zero(depth - 1));
    n.num.push_back(n_one(depth - 1));
    n.den.push_back(n_one(depth - 1));
    return n;
  }
  Node n;
  n.depth = depth;
  n.num.push_back(n_var(depth - 1, idx));
  n.den.push_back(n_one(depth - 1));
  return n;
}

// Wraps an element of a lower level as a constant at depth `depth`.
Node n_lift(Node a, int depth) {
  while (a.depth < depth) {
    Node up;
    up.depth = a.depth + 1;
    if (!n_is_zero(a)) up.num.push_back(std::move(a));
    up.den.push_back(n_one(up.depth - 1));
    a = std::move(up);
  }
  return a;
}

// --- dense polynomial helpers; coefficients are nodes one level down -------

void p_trim(Poly& p) {
  while (!p.empty() && n_is_zero(p.back())) p.pop_back();
}

Poly p_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size()) r[i] = n_add(a[i], b[i]);
    else if (i < a.size()) r[i] = a[i];
    else r[i] = b[i];
  }
  p_trim(r);
  return r;
}

Poly p_neg(const Poly& a) {
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = n_neg(a[i]);
  return r;
}

Poly p_sub(const Poly& a, const Poly& b) { return p_add(a, p_neg(b)); }

Poly p_mul(const Poly& a, const Poly& b, int coeff_depth) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, n_zero(coeff_depth));
  for (size_t i = 0; i < a.size(); ++i) {
    if (n_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (n_is_zero(b[j])) continue;
      r[i + j] = n_add(r[i + j], n_mul(a[i], b[j]));
    }
  }
  p_trim(r);
  return r;
}

Poly p_scale(const Poly& a, const Node& c) {
  if (n_is_zero(c)) return {};
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = n_mul(a[i], c);
  p_trim(r);
  return r;
}

// Long division over field coefficients: a = q*b + r with deg r < deg b.
void p_divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, int coeff_depth) {
  if (b.empty()) fail("domain", "polynomial division by zero");
  q.clear();
  r = a;
  const Node lead_inv = n_inv(b.back());
  while (r.size() >= b.size()) {
    Node c = n_mul(r.back(), lead_inv);
    size_t shift = r.size() - b.size();
    if (q.size() < shift + 1) q.resize(shift + 1, n_zero(coeff_depth));
    q[shift] = n_add(q[shift], c);
    for (size_t i = 0; i < b.size(); ++i) {
      r[shift + i] = n_sub(r[shift + i], n_mul(c, b[i]));
    }
    p_trim(r);
    if (r.size() + 1 <= b.size()) break;
    if (r.empty()) break;
  }
  p_trim(q);
  p_trim(r);
}

Poly p_div_exact(const Poly& a, const Poly& b, int coeff_depth) {
  Poly q, r;
  p_divrem(a, b, q, r, coeff_depth);
  if (!r.empty()) fail("internal", "inexact polynomial division during normalization");
  return q;
}

Poly p_monic(Poly a) {
  p_trim(a);
  if (a.empty()) return a;
  if (!n_is_one(a.back())) a = p_scale(a, n_inv(a.back()));
  return a;
}

Poly p_gcd(Poly a, Poly b, int coeff_depth) {
  p_trim(a);
  p_trim(b);
  while (!b.empty()) {
    Poly q, r;
    p_divrem(a, b, q, r, coeff_depth);
    a = std::move(b);
    b = p_monic(std::move(r));  // keep remainders monic to tame growth
  }
  return p_monic(std::move(a));
}

// Canonical fraction: den monic, gcd(num, den) = 1.
Node n_from_fraction(Poly num, Poly den, int depth) {
  p_trim(num);
  p_trim(den);
  if (den.empty()) fail("domain", "division by zero in coefficient field");
  Node out;
  out.depth = depth;
  if (num.empty()) {
    out.den.push_back(n_one(depth - 1));
    return out;
  }
  Poly g = p_gcd(num, den, depth - 1);
  if (g.size() > 1) {
    num = p_div_exact(num, g, depth - 1);
    den = p_div_exact(den, g, depth - 1);
  }
  if (!n_is_one(den.back())) {
    Node inv = n_inv(den.back());
    num = p_scale(num, inv);
    den = p_scale(den, inv);
  }
  out.num = std::move(num);
  out.den = std::move(den);
  return out;
}

Node n_add(const Node& a, const Node& b) {
  if (a.depth != b.depth) fail("internal", "field element depth mismatch");
  if (a.depth == 0) {
    Node r;
    r.rat = a.rat + b.rat;
    return r;
  }
  Poly num = p_add(p_mul(a.num, b.den, a.depth - 1), p_mul(b.num, a.den, a.depth - 1));
  Poly den = p_mul(a.den, b.den, a.depth - 1);
  return n_from_fraction(std::move(num), std::move(den), a.depth);
}

Node n_neg(const Node& a) {
  Node r = a;
  if (a.depth == 0) {
    r.rat = -a.rat;
    return r;
  }
  r.num = p_neg(a.num);
  return r;
}

Node n_sub(const Node& a, const Node& b) { return n_add(a, n_neg(b)); }

Node n_mul(const Node& a, const Node& b) {
  if (a.depth != b.depth) fail("internal", "field element depth mismatch");
  if (a.depth == 0) {
    Node r;
    r.rat = a.rat * b.rat;
    return r;
  }
  return n_from_fraction(p_mul(a.num, b.num, a.depth - 1), p_mul(a.den, b.den, a.depth - 1), a.depth);
}

Node n_inv(const Node& a) {
  if (n_is_zero(a)) fail("domain", "division by zero in coefficient field");
  if (a.depth == 0) {
    Node r;
    r.rat = 1 / a.rat;
    return r;
  }
  return n_from_fraction(a.den, a.num, a.depth);
}

Node n_div(const Node& a, const Node& b) { return n_mul(a, n_inv(b)); }

bool n_equal(const Node& a, const Node& b) {
  if (a.depth != b.depth) return false;
  if (a.depth == 0) return a.rat == b.rat;
  if (a.num.size() != b.num.size() || a.den.size() != b.den.size()) return false;
  for (size_t i = 0; i < a.num.size(); ++i)
    if (!n_equal(a.num[i], b.num[i])) return false;
  for (size_t i = 0; i < a.den.size(); ++i)
    if (!n_equal(a.den[i], b.den[i])) return false;
  return true;
}

// Evaluates f (depth k <= full) with every variable replaced by images[i],
// which live at depth `full`. All arithmetic happens at depth `full`.
Node n_eval(const Node& f, const std::vector<Node>& images, int full) {
  if (f.depth == 0) return n_const(full, f.rat);
  const Node& img = images[f.depth - 1];
  auto eval_poly = [&](const Poly& p) {
    Node acc = n_zero(full);
    for (size_t i = p.size(); i-- > 0;) {
      acc = n_mul(acc, img);
      acc = n_add(acc, n_eval(p[i], images, full));
    }
    return acc;
  };
  Node num = eval_poly(f.num);
  Node den = eval_poly(f.den);
  if (n_is_zero(den)) fail("domain", "endomorphism image makes a denominator vanish");
  return n_div(num, den);
}

bool n_is_rational(const Node& a) {
  if (a.depth == 0) return true;
  if (a.den.size() != 1 || !n_is_one(a.den[0])) return false;
  if (a.num.empty()) return true;
  return a.num.size() == 1 && n_is_rational(a.num[0]);
}

mpq_class n_to_rational(const Node& a) {
  if (a.depth == 0) return a.rat;
  if (a.num.empty()) return mpq_class(0);
  return n_to_rational(a.num[0]);
}

// --- printing ---------------------------------------------------------------

bool n_is_simple_atom(const Node& a);  // safe to print unparenthesized as a factor

std::string n_str(const Node& a, const std::vector<std::string>& vars);

std::string poly_str(const Poly& p, const std::vector<std::string>& vars, int depth) {
  if (p.empty()) return "0";
  const std::string& v = vars[depth - 1];
  std::ostringstream out;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (n_is_zero(p[i])) continue;
    std::string cs = n_str(p[i], vars);
    bool negated = false;
    if (!first && cs.size() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
      // pull a plain leading minus out of simple coefficients: "a - b" not "a + -b"
      negated = true;
      cs = cs.substr(1);
    }
    if (!first) out << (negated ? " - " : " + ");
    first = false;
    std::string var_part;
    if (i == 1) var_part = v;
    else if (i > 1) var_part = v + "^" + std::to_string(i);
    if (var_part.empty()) {
      out << cs;
    } else if (cs == "1") {
      out << var_part;
    } else if (cs == "-1" && first) {
      out << "-" << var_part;  // unreachable (first already consumed); kept for clarity
    } else {
      bool wrap = !n_is_simple_atom(p[i]);
      out << (wrap ? "(" : "") << cs << (wrap ? ")" : "") << "*" << var_part;
    }
  }
  return out.str();
}

bool n_is_simple_atom(const Node& a) {
  if (a.depth == 0) return sgn(a.rat) >= 0 && a.rat.get_den() == 1;
  if (a.den.size() != 1 || !n_is_one(a.den[0])) return false;
  size_t nonzero = 0;
  for (const auto& c : a.num)
    if (!n_is_zero(c)) ++nonzero;
  if (nonzero != 1) return false;
  for (const auto& c : a.num)
    if (!n_is_zero(c) && !n_is_simple_atom(c)) return false;
  return true;
}

std::string n_str(const Node& a, const std::vector<std::string>& vars) {
  if (a.depth == 0) return a.rat.get_str();
  bool den_is_one = a.den.size() == 1 && n_is_one(a.den[0]);
  std::string num = poly_str(a.num, vars, a.depth);
  if (den_is_one) return num;
  std::string den = poly_str(a.den, vars, a.depth);
  return "(" + num + ")/(" + den + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldTower
// ---------------------------------------------------------------------------

FieldTower::FieldTower(std::vector<std::string> vars) : vars_(std::move(vars)) {
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty()) fail("config", "tower variable name must be nonempty");
    if (!seen.insert(v).second) fail("config", "duplicate tower variable name: " + v);
  }
}

int FieldTower::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// FieldElem
// ---------------------------------------------------------------------------

namespace {
void check_same_tower(const FieldElem& a, const FieldElem& b) {
  if (a.tower() == b.tower()) return;
  if (a.tower() && b.tower() && a.tower()->same(*b.tower())) return;
  fail("mismatch", "field elements belong to different towers");
}
}  // namespace

FieldElem::FieldElem() : tower_(FieldTower::rationals()), node_(n_zero(0)) {}

FieldElem FieldElem::rational(TowerPtr tower, const mpq_class& q) {
  FieldElem e;
  e.node_ = n_const(tower->height(), q);
  e.tower_ = std::move(tower);
  return e;
}

FieldElem FieldElem::variable(TowerPtr tower, int index) {
  if (index < 0 || index >= tower->height()) fail("bind", "tower variable index out of range");
  FieldElem e;
  e.node_ = n_var(tower->height(), index);
  e.tower_ = std::move(tower);
  return e;
}

FieldElem FieldElem::from_node(TowerPtr tower, Node node) {
  if (node.depth != tower->height()) fail("internal", "node depth does not match tower height");
  FieldElem e;
  e.node_ = std::move(node);
  e.tower_ = std::move(tower);
  return e;
}

bool FieldElem::is_zero() const { return n_is_zero(node_); }
bool FieldElem::is_one() const { return n_is_one(node_); }
bool FieldElem::is_rational() const { return n_is_rational(node_); }

mpq_class FieldElem::to_rational() const {
  if (!is_rational()) fail("domain", "element is not a plain rational");
  return n_to_rational(node_);
}

FieldElem FieldElem::operator-() const { return from_node(tower_, n_neg(node_)); }

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same_tower(*this, o);
  return from_node(tower_, n_add(node_, o.node_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same_tower(*this, o);
  return from_node(tower_, n_sub(node_, o.node_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same_tower(*this, o);
  return from_node(tower_, n_mul(node_, o.node_));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  check_same_tower(*this, o);
  return from_node(tower_, n_div(node_, o.node_));
}

FieldElem FieldElem::inverse() const { return from_node(tower_, n_inv(node_)); }

FieldElem FieldElem::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem acc = rational(tower_, 1);
  FieldElem base = *this;
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

FieldElem FieldElem::lifted(TowerPtr taller) const {
  if (taller->height() < tower_->height())
    fail("mismatch", "cannot lift a field element into a shorter tower");
  for (int i = 0; i < tower_->height(); ++i)
    if (taller->var_name(i) != tower_->var_name(i))
      fail("mismatch", "target tower does not extend the element's tower");
  return from_node(taller, n_lift(node_, taller->height()));
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (!(tower_ == o.tower_ || (tower_ && o.tower_ && tower_->same(*o.tower_)))) return false;
  return n_equal(node_, o.node_);
}

std::string FieldElem::str() const { return n_str(node_, tower_->vars()); }

// ---------------------------------------------------------------------------
// FieldEndo
// ---------------------------------------------------------------------------

FieldEndo::FieldEndo(TowerPtr tower, std::vector<FieldElem> images,
                     std::optional<std::vector<FieldElem>> inverse_images)
    : tower_(std::move(tower)), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  if (static_cast<int>(images_.size()) != tower_->height())
    fail("config", "endomorphism needs one image per tower variable");
  for (const auto& im : images_) {
    if (!im.tower()->same(*tower_)) fail("mismatch", "endomorphism image lives in the wrong tower");
    if (im.is_zero()) fail("config", "endomorphism image of a variable must be nonzero");
  }
  if (inverse_images_) {
    if (static_cast<int>(inverse_images_->size()) != tower_->height())
      fail("config", "inverse witness needs one image per tower variable");
    for (const auto& im : *inverse_images_)
      if (!im.tower()->same(*tower_)) fail("mismatch", "inverse witness image lives in the wrong tower");
    // Verify the witness: both round trips must return each variable.
    for (int i = 0; i < tower_->height(); ++i) {
      FieldElem v = FieldElem::variable(tower_, i);
      FieldEndo inv(tower_, *inverse_images_);
      if (apply(inv.apply(v)) != v || inv.apply(apply(v)) != v)
        fail("config", "inverse witness does not invert the endomorphism on variable " + tower_->var_name(i));
    }
  }
}

FieldEndo FieldEndo::identity(TowerPtr tower) {
  std::vector<FieldElem> images, winv;
  for (int i = 0; i < tower->height(); ++i) {
    images.push_back(FieldElem::variable(tower, i));
    winv.push_back(FieldElem::variable(tower, i));
  }
  return FieldEndo(std::move(tower), std::move(images), std::move(winv));
}

bool FieldEndo::is_identity() const {
  for (int i = 0; i < tower_->height(); ++i)
    if (!(images_[i] == FieldElem::variable(tower_, i))) return false;
  return true;
}

FieldElem FieldEndo::apply(const FieldElem& a) const {
  if (!a.tower()->same(*tower_)) fail("mismatch", "endomorphism applied to element of another tower");
  if (tower_->height() == 0) return a;
  std::vector<FieldElem::Node> imgs;
  imgs.reserve(images_.size());
  for (const auto& im : images_) imgs.push_back(im.node());
  return FieldElem::from_node(tower_, n_eval(a.node(), imgs, tower_->height()));
}

FieldElem FieldEndo::apply_power(const FieldElem& a, long long n) const {
  if (n == 0) return a;
  if (n < 0) {
    FieldEndo inv = inverse();
    return inv.apply_power(a, -n);
  }
  FieldElem r = a;
  for (long long i = 0; i < n; ++i) r = apply(r);
  return r;
}

FieldEndo FieldEndo::inverse() const {
  if (!inverse_images_) fail("domain", "endomorphism has no inverse witness");
  return FieldEndo(tower_, *inverse_images_, images_);
}

FieldEndo FieldEndo::compose_after(const FieldEndo& g) const {
  if (!tower_->same(*g.tower_)) fail("mismatch", "composing endomorphisms of different towers");
  std::vector<FieldElem> images;
  images.reserve(images_.size());
  for (const auto& gi : g.images_) images.push_back(apply(gi));
  std::optional<std::vector<FieldElem>> winv;
  if (inverse_images_ && g.inverse_images_) {
    FieldEndo ginv = g.inverse();
    std::vector<FieldElem> w;
    for (const auto& ii : *inverse_images_) w.push_back(ginv.apply(ii));
    winv = std::move(w);
  }
  return FieldEndo(tower_, std::move(images), std::move(winv));
}

// ---------------------------------------------------------------------------
// FieldDerivation
// ---------------------------------------------------------------------------

FieldDerivation::FieldDerivation(FieldEndo sigma, std::vector<FieldElem> values)
    : sigma_(std::move(sigma)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != sigma_.tower()->height())
    fail("config", "derivation needs one value per tower variable");
  for (const auto& v : values_)
    if (!v.tower()->same(*sigma_.tower())) fail("mismatch", "derivation value lives in the wrong tower");
}

FieldDerivation FieldDerivation::zero(TowerPtr tower) {
  std::vector<FieldElem> values;
  for (int i = 0; i < tower->height(); ++i) values.push_back(FieldElem::rational(tower, 0));
  return FieldDerivation(FieldEndo::identity(std::move(tower)), std::move(values));
}

bool FieldDerivation::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

namespace {

// Derivation on the recursive representation. All results live at full tower
// height. The polynomial case walks d(c * v^i) = d(c)*s(v^i) + c*d(v^i) with
// d(v^i) = d(v)*s(v^{i-1}) + v*d(v^{i-1}); quotients use
// d(n/d) = (d(n) - (n/d)*d(d)) / s(d).
FieldElem deriv_node(const Node& f, const FieldDerivation& D, const TowerPtr& tower) {
  const int full = tower->height();
  if (f.depth == 0) return FieldElem::rational(tower, 0);

  const int vi = f.depth - 1;
  FieldElem v = FieldElem::variable(tower, vi);
  FieldElem sv = D.sigma().apply(v);
  const FieldElem& dv = D.values()[vi];

  auto lift_elem = [&](const Node& n) { return FieldElem::from_node(tower, n_lift(n, full)); };

  auto deriv_poly = [&](const Poly& p) {
    FieldElem acc = FieldElem::rational(tower, 0);
    FieldElem s_pow = FieldElem::rational(tower, 1);  // sigma(v^i)
    FieldElem d_pow = FieldElem::rational(tower, 0);  // d(v^i)
    FieldElem v_pow = FieldElem::rational(tower, 1);  // v^i
    for (size_t i = 0; i < p.size(); ++i) {
      if (!n_is_zero(p[i])) {
        FieldElem c = lift_elem(p[i]);
        FieldElem dc = deriv_node(p[i], D, tower);
        acc = acc + dc * s_pow + c * d_pow;
      }
      // advance the power bookkeeping to i+1
      d_pow = dv * s_pow + v * d_pow;
      s_pow = s_pow * sv;
      v_pow = v_pow * v;
    }
    return acc;
  };

  FieldElem dn = deriv_poly(f.num);
  FieldElem dd = deriv_poly(f.den);
  FieldElem num_e = lift_elem(Node{mpq_class(), f.num, {n_one(f.depth - 1)}, f.depth});
  FieldElem den_e = lift_elem(Node{mpq_class(), f.den, {n_one(f.depth - 1)}, f.depth});
  FieldElem self = num_e / den_e;
  FieldElem sden = D.sigma().apply(den_e);
  return (dn - self * dd) / sden;
}

}  // namespace

FieldElem FieldDerivation::apply(const FieldElem& a) const {
  if (!a.tower()->same(*sigma_.tower())) fail("mismatch", "derivation applied to element of another tower");
  return deriv_node(a.node(), *this, sigma_.tower());
}

bool fixed_point_test(const FieldEndo& sigma, const FieldDerivation* delta, const FieldElem& a) {
  if (!(sigma.apply(a) == a)) return false;
  if (delta && !delta->apply(a).is_zero()) return false;
  return true;
}

}  // namespace skewring
