#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewring/error.hpp"

namespace skewring {

// Commutative coefficient field: an iterated rational-function tower
// Q(t1)(t2)...(tn) over the rationals. Height zero is plain Q.
//
// Elements are kept in a unique canonical form so that equality is plain
// structural comparison: at every level the element is num/den with den
// monic in that level's variable, gcd(num, den) = 1, and all lower-level
// coefficients canonical recursively. Rational leaves are canonical GMP
// rationals.
class FieldTower {
 public:
  explicit FieldTower(std::vector<std::string> vars);

  static std::shared_ptr<const FieldTower> make(std::vector<std::string> vars) {
    return std::make_shared<const FieldTower>(std::move(vars));
  }
  static std::shared_ptr<const FieldTower> rationals() { return make({}); }

  int height() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(int i) const { return vars_.at(i); }
  // Index of a variable name, -1 when absent.
  int var_index(const std::string& name) const;

  bool same(const FieldTower& other) const { return vars_ == other.vars_; }

 private:
  std::vector<std::string> vars_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldElem {
 public:
  // Recursive representation. depth == 0 holds a rational; depth k > 0 holds
  // a fraction of polynomials in variable k whose coefficients are depth k-1
  // nodes. Zero numerator is the empty vector; denominators are never empty.
  struct Node {
    mpq_class rat;
    std::vector<Node> num, den;
    int depth = 0;
  };

  // Default-constructed element is rational zero over the empty tower; it is
  // mostly useful so containers work. Arithmetic enforces tower agreement.
  FieldElem();

  static FieldElem rational(TowerPtr tower, const mpq_class& q);
  static FieldElem integer(TowerPtr tower, long v) { return rational(std::move(tower), mpq_class(v)); }
  static FieldElem variable(TowerPtr tower, int index);
  static FieldElem from_node(TowerPtr tower, Node node);

  const TowerPtr& tower() const { return tower_; }
  const Node& node() const { return node_; }

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the prime field Q (all tower levels constant).
  bool is_rational() const;
  mpq_class to_rational() const;  // throws unless is_rational()

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem&) const;
  FieldElem operator-(const FieldElem&) const;
  FieldElem operator*(const FieldElem&) const;
  FieldElem operator/(const FieldElem&) const;  // throws on zero divisor
  FieldElem inverse() const;                    // throws on zero
  FieldElem pow(long long e) const;             // negative e inverts first

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  // Re-expresses this element in a taller tower whose variable list starts
  // with this element's tower (constant in the added variables).
  FieldElem lifted(TowerPtr taller) const;

  std::string str() const;

 private:
  TowerPtr tower_;
  Node node_;
};

// Field endomorphism of a tower, given by the images of the tower variables
// (rationals are always fixed). An inverse witness (images of the variables
// under the inverse map) upgrades it to an automorphism; the constructor
// verifies both round trips on every variable.
class FieldEndo {
 public:
  FieldEndo(TowerPtr tower, std::vector<FieldElem> images,
            std::optional<std::vector<FieldElem>> inverse_images = std::nullopt);

  static FieldEndo identity(TowerPtr tower);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<FieldElem>& images() const { return images_; }
  bool has_inverse() const { return inverse_images_.has_value(); }
  bool is_identity() const;

  FieldElem apply(const FieldElem& a) const;
  // Applies sigma^n; n < 0 requires the inverse witness.
  FieldElem apply_power(const FieldElem& a, long long n) const;
  FieldEndo inverse() const;  // swaps witness; throws without one
  // Composition: (this.compose_after(g))(a) == this(g(a)).
  FieldEndo compose_after(const FieldEndo& g) const;

 private:
  TowerPtr tower_;
  std::vector<FieldElem> images_;
  std::optional<std::vector<FieldElem>> inverse_images_;
};

// Twisted derivation on a tower: additive, vanishes on rationals, and obeys
// d(ab) = d(a) * sigma(b) + a * d(b) for the companion endomorphism sigma.
// Determined by its values on the tower variables; quotients extend by
// d(1/g) = -(1/g) * d(g) * sigma(g)^{-1}.
class FieldDerivation {
 public:
  FieldDerivation(FieldEndo sigma, std::vector<FieldElem> values);

  static FieldDerivation zero(TowerPtr tower);

  const FieldEndo& sigma() const { return sigma_; }
  const std::vector<FieldElem>& values() const { return values_; }
  bool is_zero() const;

  FieldElem apply(const FieldElem& a) const;

 private:
  FieldEndo sigma_;
  std::vector<FieldElem> values_;
};

// True when a is fixed by sigma and (if given) annihilated by delta.
bool fixed_point_test(const FieldEndo& sigma, const FieldDerivation* delta, const FieldElem& a);

}  // namespace skewring
