#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewring/basefield.hpp"

namespace skewring {

// Quantum torus: Laurent monomials in q-commuting generators over a
// commutative coefficient tower that contains the parameter and is treated
// as central. Commutation is governed by a skew-symmetric integer matrix E:
//
//   x_i * x_j = q^{E[i][j]} * x_j * x_i
//
// so reordering any product into the canonical (increasing-index) monomial
// order multiplies the coefficient by an exact power of q. Because exponents
// may be negative, every nonzero monomial is a unit; this is what lets the
// series layer invert leading coefficients that are not plain field elements.

class QTorusRing;
using QTorusRingPtr = std::shared_ptr<const QTorusRing>;

// Integer exponent vector, one (possibly negative) entry per generator.
using TorusMono = std::vector<long long>;

class QTorusRing : public std::enable_shared_from_this<QTorusRing> {
 public:
  // Validates: distinct nonempty names, E skew-symmetric of matching size,
  // nonzero parameter (rational parameters additionally pass the bounded
  // root-of-unity window of check_preset_parameter).
  static QTorusRingPtr make(TowerPtr tower, FieldElem qparam,
                            std::vector<std::string> names,
                            std::vector<std::vector<int>> commutation);

  const TowerPtr& tower() const { return tower_; }
  const FieldElem& q() const { return q_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::string& var_name(int i) const { return names_.at(i); }
  int var_index(const std::string& name) const;
  int commutation(int i, int j) const { return e_.at(i).at(j); }

  bool same(const QTorusRing& o) const { return this == &o; }

  // s such that x^u * x^v = q^s * x^{u+v}.
  long long reorder_exponent(const TorusMono& u, const TorusMono& v) const;

 private:
  QTorusRing() = default;
  TowerPtr tower_;
  FieldElem q_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> e_;
};

class QTorusElem {
 public:
  using TermMap = std::map<TorusMono, FieldElem>;

  QTorusElem() = default;
  static QTorusElem zero(QTorusRingPtr r);
  static QTorusElem scalar(QTorusRingPtr r, const FieldElem& c);
  static QTorusElem monomial(QTorusRingPtr r, const TorusMono& m, const FieldElem& c);
  static QTorusElem variable(QTorusRingPtr r, int i);

  const QTorusRingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  // Units are exactly the single-term elements (nonzero monomial times a
  // nonzero coefficient).
  bool is_unit() const { return terms_.size() == 1; }

  QTorusElem operator-() const;
  QTorusElem operator+(const QTorusElem&) const;
  QTorusElem operator-(const QTorusElem&) const;
  QTorusElem operator*(const QTorusElem&) const;
  QTorusElem scaled(const FieldElem& c) const;  // central coefficient scale
  QTorusElem inverse() const;                   // single-term elements only
  QTorusElem pow(long long e) const;            // negative e requires a unit

  bool operator==(const QTorusElem& o) const;
  bool operator!=(const QTorusElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  QTorusRingPtr ring_;
  TermMap terms_;
};

// Diagonal ring endomorphism of a quantum torus: coefficients pass through a
// base-tower endomorphism that fixes the commutation parameter, and each
// generator is scaled by a fixed nonzero central multiplier. Diagonal maps
// always respect the q-commutation relations.
class TorusEndo {
 public:
  TorusEndo(QTorusRingPtr ring, FieldEndo base, std::vector<FieldElem> multipliers);
  static TorusEndo identity(QTorusRingPtr ring);

  const QTorusRingPtr& ring() const { return ring_; }
  const FieldEndo& base() const { return base_; }
  const std::vector<FieldElem>& multipliers() const { return multipliers_; }
  bool has_inverse() const { return base_.has_inverse(); }
  bool is_identity() const;

  QTorusElem apply(const QTorusElem& a) const;
  QTorusElem apply_power(const QTorusElem& a, long long n) const;  // n < 0 needs has_inverse
  TorusEndo inverse() const;

 private:
  QTorusRingPtr ring_;
  FieldEndo base_;
  std::vector<FieldElem> multipliers_;
};

// Twisted derivation of a quantum torus with prescribed values on
// generators, extended through d(uv) = d(u)*sigma(v) + u*d(v); base-tower
// coefficients are central constants killed by d, and negative powers use
// d(x^{-1}) = -x^{-1} * d(x) * sigma(x^{-1}). Construction verifies the
// extension is compatible with every commutation relation.
class TorusDerivation {
 public:
  TorusDerivation(TorusEndo sigma, std::map<int, QTorusElem> values);
  static TorusDerivation zero(QTorusRingPtr ring);

  const TorusEndo& sigma() const { return sigma_; }
  bool is_zero() const { return values_.empty(); }

  QTorusElem apply(const QTorusElem& a) const;

 private:
  QTorusElem d_letter(int i, bool inverted) const;
  TorusEndo sigma_;
  std::map<int, QTorusElem> values_;
};

// A torus together with one twisted action on it, as used for coefficient
// rings of skew series.
struct TorusContextData {
  QTorusRingPtr ring;
  TorusEndo sigma;
  TorusDerivation delta;
};

// The a,b,c block of the 2x2 quantum-matrix algebra, localized at its
// monomials (ab = q ba, ac = q ca, bc = cb), carrying the action of the
// fourth generator d: sigma = (a, qb, qc), delta(a) = (q - q^{-1})*b*c,
// delta(b) = delta(c) = 0.
TorusContextData make_quantum_matrices_torus(const std::optional<mpq_class>& param);

// Rank-2 torus with x*y = lambda*y*x.
QTorusRingPtr make_quantum_torus_ring(const std::optional<mpq_class>& param);

}  // namespace skewring
