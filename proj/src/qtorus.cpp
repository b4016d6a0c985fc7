#include "skewring/qtorus.hpp"

#include <set>
#include <sstream>

#include "skewring/error.hpp"
#include "skewring/ore.hpp"

namespace skewring {

namespace {

void add_term(QTorusElem::TermMap& dst, const TorusMono& m, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = dst.find(m);
  if (it == dst.end()) {
    dst.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) dst.erase(it);
}

void check_same_ring(const QTorusElem& a, const QTorusElem& b) {
  if (!a.ring() || !b.ring()) fail("internal", "uninitialized torus element");
  if (!a.ring()->same(*b.ring()))
    fail("mismatch", "torus elements belong to different ring constructions");
}

bool needs_parens(const std::string& s) {
  if (s.empty()) return false;
  if (s[0] == '-' || s[0] == '(') return true;
  for (char ch : s)
    if (ch == ' ' || ch == '+' || ch == '*' || ch == '/' || ch == '^') return true;
  return s.find('-') != std::string::npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// QTorusRing
// ---------------------------------------------------------------------------

QTorusRingPtr QTorusRing::make(TowerPtr tower, FieldElem qparam,
                               std::vector<std::string> names,
                               std::vector<std::vector<int>> commutation) {
  if (!tower) fail("config", "torus ring requires a coefficient tower");
  if (!qparam.tower()->same(*tower))
    fail("mismatch", "torus parameter belongs to another tower");
  if (qparam.is_zero()) fail("config", "torus parameter must be nonzero");
  if (qparam.is_rational()) check_preset_parameter(qparam.to_rational());

  const int n = static_cast<int>(names.size());
  if (n == 0) fail("config", "torus ring needs at least one generator");
  std::set<std::string> seen(tower->vars().begin(), tower->vars().end());
  for (const std::string& s : names) {
    if (s.empty()) fail("config", "torus generator with empty name");
    if (!seen.insert(s).second) fail("config", "duplicate torus generator name '" + s + "'");
  }
  if (static_cast<int>(commutation.size()) != n)
    fail("config", "commutation matrix size does not match generator count");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(commutation[i].size()) != n)
      fail("config", "commutation matrix is not square");
    for (int j = 0; j < n; ++j)
      if (commutation[i][j] != -commutation[j][i])
        fail("config", "commutation matrix must be skew-symmetric");
  }

  auto r = std::shared_ptr<QTorusRing>(new QTorusRing());
  r->tower_ = std::move(tower);
  r->q_ = std::move(qparam);
  r->names_ = std::move(names);
  r->e_ = std::move(commutation);
  return r;
}

int QTorusRing::var_index(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  fail("bind", "unknown torus generator '" + name + "'");
}

long long QTorusRing::reorder_exponent(const TorusMono& u, const TorusMono& v) const {
  long long s = 0;
  const int n = nvars();
  for (int i = 1; i < n; ++i) {
    if (u[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < i; ++j) {
      if (v[static_cast<size_t>(j)] == 0) continue;
      s += static_cast<long long>(e_[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
           u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// QTorusElem
// ---------------------------------------------------------------------------

QTorusElem QTorusElem::zero(QTorusRingPtr r) {
  QTorusElem e;
  e.ring_ = std::move(r);
  return e;
}

QTorusElem QTorusElem::scalar(QTorusRingPtr r, const FieldElem& c) {
  if (!r) fail("internal", "torus element without a ring");
  TorusMono m(static_cast<size_t>(r->nvars()), 0);
  return monomial(std::move(r), m, c);
}

QTorusElem QTorusElem::monomial(QTorusRingPtr r, const TorusMono& m, const FieldElem& c) {
  if (!r) fail("internal", "torus element without a ring");
  if (static_cast<int>(m.size()) != r->nvars())
    fail("config", "torus exponent vector has wrong length");
  if (!c.tower()->same(*r->tower()))
    fail("mismatch", "torus coefficient belongs to another tower");
  QTorusElem e = zero(std::move(r));
  if (!c.is_zero()) e.terms_.emplace(m, c);
  return e;
}

QTorusElem QTorusElem::variable(QTorusRingPtr r, int i) {
  if (i < 0 || i >= r->nvars()) fail("bind", "torus generator index out of range");
  TorusMono m(static_cast<size_t>(r->nvars()), 0);
  m[static_cast<size_t>(i)] = 1;
  FieldElem one = FieldElem::rational(r->tower(), 1);
  return monomial(std::move(r), m, one);
}

bool QTorusElem::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [m, c] = *terms_.begin();
  for (long long e : m)
    if (e != 0) return false;
  return c.is_one();
}

QTorusElem QTorusElem::operator-() const {
  QTorusElem out = zero(ring_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

QTorusElem QTorusElem::operator+(const QTorusElem& o) const {
  check_same_ring(*this, o);
  QTorusElem out = *this;
  for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, c);
  return out;
}

QTorusElem QTorusElem::operator-(const QTorusElem& o) const {
  check_same_ring(*this, o);
  QTorusElem out = *this;
  for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, -c);
  return out;
}

QTorusElem QTorusElem::operator*(const QTorusElem& o) const {
  check_same_ring(*this, o);
  QTorusElem out = zero(ring_);
  const FieldElem& q = ring_->q();
  for (const auto& [u, cu] : terms_) {
    for (const auto& [v, cv] : o.terms_) {
      TorusMono w(u.size());
      for (size_t k = 0; k < u.size(); ++k) w[k] = u[k] + v[k];
      const long long s = ring_->reorder_exponent(u, v);
      add_term(out.terms_, w, cu * cv * q.pow(s));
    }
  }
  return out;
}

QTorusElem QTorusElem::scaled(const FieldElem& c) const {
  if (!c.tower()->same(*ring_->tower()))
    fail("mismatch", "torus coefficient belongs to another tower");
  QTorusElem out = zero(ring_);
  if (c.is_zero()) return out;
  for (const auto& [m, a] : terms_) {
    FieldElem p = a * c;
    if (!p.is_zero()) out.terms_.emplace(m, p);
  }
  return out;
}

QTorusElem QTorusElem::inverse() const {
  if (terms_.empty()) fail("domain", "inverting the zero torus element");
  if (terms_.size() != 1)
    fail("domain", "only monomial elements of the torus ring are invertible");
  const auto& [u, c] = *terms_.begin();
  TorusMono w(u.size());
  for (size_t k = 0; k < u.size(); ++k) w[k] = -u[k];
  const long long s = ring_->reorder_exponent(u, w);
  return monomial(ring_, w, c.inverse() * ring_->q().pow(-s));
}

QTorusElem QTorusElem::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  QTorusElem acc = scalar(ring_, FieldElem::rational(ring_->tower(), 1));
  QTorusElem b = *this;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = (e >>= 1) > 0 ? b * b : b;
  }
  return acc;
}

bool QTorusElem::operator==(const QTorusElem& o) const {
  check_same_ring(*this, o);
  if (terms_.size() != o.terms_.size()) return false;
  auto ita = terms_.begin();
  auto itb = o.terms_.begin();
  for (; ita != terms_.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (!(ita->second == itb->second)) return false;
  }
  return true;
}

std::string QTorusElem::str() const {
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
    for (int i = 0; i < ring_->nvars(); ++i) {
      long long e = m[static_cast<size_t>(i)];
      if (e == 0) continue;
      if (!mono_str.empty()) mono_str += "*";
      mono_str += ring_->var_name(i);
      if (e != 1) mono_str += "^" + std::to_string(e);
    }

    std::string cs = coeff.str();
    if (mono_str.empty()) {
      if (needs_parens(cs) && cs[0] != '(') os << "(" << cs << ")";
      else os << cs;
    } else if (coeff.is_one()) {
      os << mono_str;
    } else {
      if (needs_parens(cs)) os << "(" << cs << ")";
      else os << cs;
      os << "*" << mono_str;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// TorusEndo
// ---------------------------------------------------------------------------

TorusEndo::TorusEndo(QTorusRingPtr ring, FieldEndo base, std::vector<FieldElem> multipliers)
    : ring_(std::move(ring)), base_(std::move(base)), multipliers_(std::move(multipliers)) {
  if (!ring_) fail("internal", "torus endomorphism without a ring");
  if (!base_.tower()->same(*ring_->tower()))
    fail("mismatch", "torus endomorphism base map acts on another tower");
  if (static_cast<int>(multipliers_.size()) != ring_->nvars())
    fail("config", "torus endomorphism needs one multiplier per generator");
  for (const FieldElem& m : multipliers_) {
    if (!m.tower()->same(*ring_->tower()))
      fail("mismatch", "torus multiplier belongs to another tower");
    if (m.is_zero()) fail("config", "torus endomorphism multiplier must be nonzero");
  }
  if (!(base_.apply(ring_->q()) == ring_->q()))
    fail("config", "torus endomorphism must fix the commutation parameter");
}

TorusEndo TorusEndo::identity(QTorusRingPtr ring) {
  FieldEndo base = FieldEndo::identity(ring->tower());
  std::vector<FieldElem> mult(static_cast<size_t>(ring->nvars()),
                              FieldElem::rational(ring->tower(), 1));
  return TorusEndo(std::move(ring), std::move(base), std::move(mult));
}

bool TorusEndo::is_identity() const {
  if (!base_.is_identity()) return false;
  for (const FieldElem& m : multipliers_)
    if (!m.is_one()) return false;
  return true;
}

QTorusElem TorusEndo::apply(const QTorusElem& a) const {
  if (!a.ring()->same(*ring_))
    fail("mismatch", "torus endomorphism applied to element of another ring");
  QTorusElem out = QTorusElem::zero(ring_);
  for (const auto& [m, c] : a.terms()) {
    FieldElem coeff = base_.apply(c);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) coeff = coeff * multipliers_[i].pow(m[i]);
    out = out + QTorusElem::monomial(ring_, m, coeff);
  }
  return out;
}

TorusEndo TorusEndo::inverse() const {
  FieldEndo ib = base_.inverse();
  std::vector<FieldElem> im;
  im.reserve(multipliers_.size());
  for (const FieldElem& m : multipliers_) im.push_back(ib.apply(m.inverse()));
  return TorusEndo(ring_, std::move(ib), std::move(im));
}

QTorusElem TorusEndo::apply_power(const QTorusElem& a, long long n) const {
  if (n == 0) return a;
  if (n < 0) return inverse().apply_power(a, -n);
  QTorusElem out = a;
  for (long long k = 0; k < n; ++k) out = apply(out);
  return out;
}

// ---------------------------------------------------------------------------
// TorusDerivation
// ---------------------------------------------------------------------------

TorusDerivation::TorusDerivation(TorusEndo sigma, std::map<int, QTorusElem> values)
    : sigma_(std::move(sigma)), values_(std::move(values)) {
  const QTorusRingPtr& r = sigma_.ring();
  for (auto it = values_.begin(); it != values_.end();) {
    if (it->first < 0 || it->first >= r->nvars())
      fail("config", "derivation value names an unknown torus generator");
    if (!it->second.ring()->same(*r))
      fail("mismatch", "derivation value belongs to another torus ring");
    if (it->second.is_zero()) it = values_.erase(it);
    else ++it;
  }
  if (values_.empty()) return;

  // Coherence with the commutation relations: extending by the twisted
  // product rule must give the same answer on both sides of
  // x_i x_j = q^{E[i][j]} x_j x_i.
  for (int i = 0; i < r->nvars(); ++i) {
    for (int j = 0; j < i; ++j) {
      QTorusElem xi = QTorusElem::variable(r, i), xj = QTorusElem::variable(r, j);
      QTorusElem lhs = d_letter(i, false) * sigma_.apply(xj) + xi * d_letter(j, false);
      QTorusElem rhs = (d_letter(j, false) * sigma_.apply(xi) + xj * d_letter(i, false))
                           .scaled(r->q().pow(r->commutation(i, j)));
      if (!(lhs == rhs))
        fail("config", "derivation values are incompatible with the commutation relation of '" +
                           r->var_name(i) + "' and '" + r->var_name(j) + "'");
    }
  }
}

TorusDerivation TorusDerivation::zero(QTorusRingPtr ring) {
  return TorusDerivation(TorusEndo::identity(std::move(ring)), {});
}

QTorusElem TorusDerivation::d_letter(int i, bool inverted) const {
  const QTorusRingPtr& r = sigma_.ring();
  auto it = values_.find(i);
  if (it == values_.end()) return QTorusElem::zero(r);
  if (!inverted) return it->second;
  // d(x^{-1}) = -x^{-1} * d(x) * sigma(x^{-1}), from 0 = d(x * x^{-1}).
  QTorusElem xinv = QTorusElem::variable(r, i).inverse();
  return -(xinv * it->second * sigma_.apply(xinv));
}

QTorusElem TorusDerivation::apply(const QTorusElem& a) const {
  const QTorusRingPtr& r = sigma_.ring();
  if (!a.ring()->same(*r))
    fail("mismatch", "torus derivation applied to element of another ring");
  QTorusElem out = QTorusElem::zero(r);
  if (values_.empty()) return out;
  for (const auto& [m, c] : a.terms()) {
    // d(c * x^m) = c * d(x^m): base coefficients are central constants.
    QTorusElem prefix = QTorusElem::scalar(r, FieldElem::rational(r->tower(), 1));
    QTorusElem dpre = QTorusElem::zero(r);
    for (int i = 0; i < r->nvars(); ++i) {
      long long e = m[static_cast<size_t>(i)];
      if (e == 0) continue;
      const bool inv = e < 0;
      QTorusElem letter = QTorusElem::variable(r, i);
      if (inv) letter = letter.inverse();
      const QTorusElem sletter = sigma_.apply(letter);
      const QTorusElem dletter = d_letter(i, inv);
      for (long long t = 0; t < (inv ? -e : e); ++t) {
        dpre = dpre * sletter + prefix * dletter;
        prefix = prefix * letter;
      }
    }
    out = out + dpre.scaled(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Preset torus constructions
// ---------------------------------------------------------------------------

TorusContextData make_quantum_matrices_torus(const std::optional<mpq_class>& param) {
  TowerPtr base = param ? FieldTower::rationals() : FieldTower::make({"q"});
  FieldElem q = param ? FieldElem::rational(base, *param) : FieldElem::variable(base, 0);
  // ab = q ba, ac = q ca, bc = cb  =>  E[1][0] = E[2][0] = -1, E[2][1] = 0.
  QTorusRingPtr ring = QTorusRing::make(base, q, {"a", "b", "c"},
                                        {{0, 1, 1}, {-1, 0, 0}, {-1, 0, 0}});
  TorusEndo sigma(ring, FieldEndo::identity(base),
                  {FieldElem::rational(base, 1), q, q});
  TorusMono bc{0, 1, 1};
  std::map<int, QTorusElem> values;
  values.emplace(0, QTorusElem::monomial(ring, bc, q - q.inverse()));
  TorusDerivation delta(sigma, std::move(values));
  return {ring, std::move(sigma), std::move(delta)};
}

QTorusRingPtr make_quantum_torus_ring(const std::optional<mpq_class>& param) {
  TowerPtr base = param ? FieldTower::rationals() : FieldTower::make({"lambda"});
  FieldElem lam = param ? FieldElem::rational(base, *param) : FieldElem::variable(base, 0);
  // x*y = lambda*y*x  =>  y*x = lambda^{-1}*x*y, i.e. E[1][0] = -1.
  return QTorusRing::make(base, lam, {"x", "y"}, {{0, 1}, {-1, 0}});
}

}  // namespace skewring
