#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "skewring/nilgroup.hpp"
#include "skewring/ore.hpp"
#include "skewring/qtorus.hpp"
#include "skewring/series.hpp"

namespace skewring {

// Resolved description of the algebra one command-line session works in.
// Building a config constructs the underlying objects, so every structural
// check of the owning module (endomorphism round trips, associativity
// samples, parameter windows, declared relations) has already run by the
// time a command sees the config.

// Skew polynomial algebra, optionally with a paired series expansion.
struct OreConfig {
  OrePreset preset;                // tower + declared relations + parameter name
  std::optional<mpq_class> param;  // value supplied for the parameter, if any
  // Key accepted by make_series_preset for the paired Laurent-series context
  // (used by the expansion/inversion commands); empty when the algebra was
  // declared in a document and no such pairing exists.
  std::string series_name;
};

// Skew Laurent series field over commutative coefficients. The ring data is
// precision-free; commands assemble a SeriesContext from it together with
// their mandatory --prec flag.
struct SeriesConfig {
  SeriesKind kind = SeriesKind::PlainSigma;
  FieldCoeffRing ring;
  std::string var;
};

// Quantum torus.
struct TorusConfig {
  QTorusRingPtr ring;
  std::vector<std::string> relations;  // q-commutation, one per generator pair
  std::string param_name;              // "" once the parameter is specialized
};

// Skew group ring over a polycyclic presentation.
struct GroupConfig {
  GroupRingPtr ring;
  std::vector<std::string> relations;  // generated from the commutation table
};

struct AlgebraConfig {
  std::variant<OreConfig, SeriesConfig, TorusConfig, GroupConfig> algebra;
};

// --- construction -------------------------------------------------------------

// Shortcut algebras: "weyl", "quantum_matrices", "skew_poly" (skew
// polynomial towers), "quantum_torus" (the exact torus), "heisenberg" (the
// rank-3 group ring). `param` specializes the preset parameter exactly;
// absent means symbolic. Unknown names and misplaced parameters fail
// "config".
AlgebraConfig preset_config(const std::string& name, const std::optional<mpq_class>& param);

// Name of the symbolic parameter a preset accepts ("" when it takes none);
// unknown preset names fail "config".
std::string preset_param_name(const std::string& name);

// Parses a JSON config document (see README for the schema) and validates it
// by construction. The document either names a preset:
//
//   {"preset": "skew_poly", "param": "2/3"}
//
// or declares a base tower plus exactly one algebra section ("ore",
// "series", "torus", or "group"); coefficient entries are expression strings
// over the base tower variables with exact rational literals. Declared
// relations are evaluated and must come out zero.
AlgebraConfig parse_config(const std::string& json_text);

// Reads the file at `path` and parses it; unreadable files fail "config".
AlgebraConfig load_config(const std::string& path);

// --- declared relations ---------------------------------------------------------

struct RelationCheck {
  std::string relation;  // source text of the declared relation
  bool zero = false;     // whether it evaluated to the zero element
  std::string residual;  // rendering of the evaluated value
};

// Re-evaluates every declared relation of the algebra (empty for series
// algebras, which declare none).
std::vector<RelationCheck> check_config_relations(const AlgebraConfig& cfg);

}  // namespace skewring
