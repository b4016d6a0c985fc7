#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewring/basefield.hpp"
#include "skewring/valuation.hpp"

namespace skewring {

// Iterated skew polynomial tower over a commutative coefficient tower:
// each adjoined variable x_i carries an endomorphism sigma_i and a twisted
// derivation delta_i of the subring generated by the base field and the
// earlier variables, and multiplication is defined by the rewrite
//
//   a * x_i  ->  x_i * sigma_i(a) + delta_i(a)
//
// for a in that subring. Iterating the rewrite puts every product into the
// normal form: a sum of monomials x_n^{e_n} * ... * x_1^{e_1} (later
// variables to the left) with a nonzero coefficient from the base tower
// written to the right of the monomial.

class OreTower;
using OreTowerPtr = std::shared_ptr<const OreTower>;

// Exponent vector, one entry per skew variable, all entries >= 0.
using OreMono = std::vector<int>;

// Term order used for storage and display: compare exponents of the last
// (outermost) variable first, larger exponents first.
struct OreMonoCmp {
  bool operator()(const OreMono& a, const OreMono& b) const {
    for (size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
};

using OreTermMap = std::map<OreMono, FieldElem, OreMonoCmp>;

// Raw construction data for one adjoined variable. Images/values are term
// maps over the full variable count but may only use variables of smaller
// index. Missing entries mean "identity" for sigma and "zero" for delta.
struct OreVarSpec {
  std::string name;
  FieldEndo sigma_base;                       // action on the base tower
  std::map<int, OreTermMap> sigma_var_images; // j -> sigma_i(x_j), j < i
  std::map<int, OreTermMap> delta_base_values;// base var index -> delta_i(var)
  std::map<int, OreTermMap> delta_var_values; // j -> delta_i(x_j), j < i
};

class OrePoly;

class OreTower : public std::enable_shared_from_this<OreTower> {
 public:
  // Validates: distinct names, images/values supported on earlier variables
  // only, and (sampled) that each sigma_i extends to a ring map and each
  // delta_i obeys the twisted product rule on products of earlier generators.
  static OreTowerPtr make(TowerPtr base, std::vector<OreVarSpec> vars);

  const TowerPtr& base() const { return base_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::string& var_name(int i) const { return vars_.at(i).name; }
  int var_index(const std::string& name) const;
  const OreVarSpec& var_spec(int i) const { return vars_.at(i); }

  bool same(const OreTower& o) const;

  // True when variable i has identity sigma (base and earlier variables)
  // and zero delta.
  bool var_is_plain(int i) const;

  // --- internal arithmetic on raw term maps ---------------------------------
  OreTermMap mul_terms(const OreTermMap& p, const OreTermMap& r, int level) const;
  OreTermMap sigma_terms(const OreTermMap& u, int i) const;  // sigma_i on vars < i
  OreTermMap delta_terms(const OreTermMap& u, int i) const;  // delta_i on vars < i

 private:
  OreTower() = default;
  void validate() const;

  TowerPtr base_;
  std::vector<OreVarSpec> vars_;

  OreTermMap delta_base_elem(const FieldElem& a, int i) const;
  OreTermMap delta_mono(const OreMono& m, int i) const;
  OreTermMap sigma_mono(const OreMono& m, int i) const;
  // u * x_i^l as a map from x_i-exponent to lower term maps
  std::map<int, OreTermMap> push_through(const OreTermMap& u, int i, int l) const;
};

class OrePoly {
 public:
  OrePoly() = default;
  static OrePoly zero(OreTowerPtr t);
  static OrePoly constant(OreTowerPtr t, const FieldElem& c);
  static OrePoly variable(OreTowerPtr t, int i);
  static OrePoly monomial(OreTowerPtr t, const OreMono& m, const FieldElem& c);

  const OreTowerPtr& tower() const { return tower_; }
  const OreTermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElem constant_coefficient() const;  // coefficient of the empty monomial

  OrePoly operator-() const;
  OrePoly operator+(const OrePoly&) const;
  OrePoly operator-(const OrePoly&) const;
  OrePoly operator*(const OrePoly&) const;
  // Right multiplication by a base coefficient (coefficients live on the
  // right of monomials, so this is coefficient-wise).
  OrePoly times_base_right(const FieldElem& c) const;
  OrePoly pow(long long e) const;  // e >= 0

  bool operator==(const OrePoly& o) const;
  bool operator!=(const OrePoly& o) const { return !(*this == o); }

  // Largest / smallest exponent of the given variable over the support.
  // deg_val returns minus the largest exponent (infinite for zero);
  // order returns the smallest exponent (infinite for zero).
  Valuation deg_val(int var) const;
  Valuation order(int var) const;

  std::string str() const;

 private:
  OreTowerPtr tower_;
  OreTermMap terms_;
  friend class OreTower;
};

// --- presets ---------------------------------------------------------------

struct OrePreset {
  OreTowerPtr tower;
  // Defining relations, as expressions over the generator names; each must
  // normalize to zero. Used by relation checks and the CLI.
  std::vector<std::string> relations;
  // Name of the preset parameter ("q", "lambda"), empty when there is none.
  std::string param_name;
};

// name: "weyl" | "quantum_matrices" | "quantum_torus" | "skew_poly".
// param: optional exact rational value for the preset parameter; when absent
// the parameter stays symbolic as a base tower variable. Rational parameters
// are checked against the bounded root-of-unity window (q^m != 1 for
// 1 <= m <= 64) and q != 0.
OrePreset make_ore_preset(const std::string& name, const std::optional<mpq_class>& param);

// Shared guard for exact rational twist parameters: rejects 0 and any value
// whose multiplicative order is at most 64.
void check_preset_parameter(const mpq_class& p);

}  // namespace skewring
