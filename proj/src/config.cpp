#include "skewring/config.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "skewring/adapters.hpp"
#include "skewring/expr.hpp"

namespace skewring {

using nlohmann::json;

// --- small helpers ---------------------------------------------------------------

namespace {

// Exact rational spelled in the expression grammar ("-7", "2/3", ...).
mpq_class rational_literal(const std::string& text, const std::string& where) {
  try {
    struct Rationals {
      using Value = mpq_class;
      Value rational(const mpq_class& q) const { return q; }
      Value generator(const std::string& n) const {
        fail("bind", "'" + n + "' is not a rational literal");
      }
      Value add(const Value& a, const Value& b) const { return a + b; }
      Value sub(const Value& a, const Value& b) const { return a - b; }
      Value neg(const Value& a) const { return -a; }
      Value mul(const Value& a, const Value& b) const { return a * b; }
      Value pow(const Value& a, long long e) const {
        if (e < 0 && a == 0) fail("domain", "division by zero");
        mpq_class base = e < 0 ? mpq_class(1 / a) : a;
        long long n = e < 0 ? -e : e;
        if (n > 64) fail("domain", "literal exponent out of range");
        mpq_class out = 1;
        for (long long i = 0; i < n; ++i) out *= base;
        return out;
      }
    };
    return eval_expr(Rationals{}, parse_expr(text));
  } catch (const Error& e) {
    fail("config", where + ": not an exact rational literal: " + e.what());
  }
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// --- JSON access with config-flavoured errors --------------------------------------

const json& need(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("config", "missing config field '" + where + key + "'");
  return *it;
}

std::string need_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_string())
    fail("config", "config field '" + where + key + "' must be a string");
  return v.get<std::string>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object())
    fail("config", "config section '" + (where.empty() ? std::string("<top>") : where) +
                       "' must be an object");
  for (const auto& [k, v] : obj.items()) {
    (void)v;
    if (!allowed.count(k))
      fail("config", "unexpected config field '" + where + k + "'");
  }
}

// Coefficient entry: an expression over the base tower.
FieldElem coeff_expr(const TowerPtr& base, const json& v, const std::string& where) {
  if (!v.is_string())
    fail("config", "config field '" + where +
                       "' must be an expression string (exact rational literals only)");
  try {
    return eval_expr(FieldEval{base}, parse_expr(v.get<std::string>()));
  } catch (const Error& e) {
    fail("config", "config field '" + where + "': " + e.what());
  }
}

// {"name": "expr", ...} keyed by base variable, defaulting the rest.
std::vector<FieldElem> keyed_images(const TowerPtr& base, const json& obj,
                                    const std::string& where,
                                    const std::vector<FieldElem>& defaults) {
  check_keys(obj, std::set<std::string>(base->vars().begin(), base->vars().end()), where);
  std::vector<FieldElem> out = defaults;
  for (const auto& [k, v] : obj.items())
    out[static_cast<size_t>(base->var_index(k))] = coeff_expr(base, v, where + k);
  return out;
}

std::vector<FieldElem> identity_images(const TowerPtr& base) {
  std::vector<FieldElem> out;
  for (int i = 0; i < base->height(); ++i) out.push_back(FieldElem::variable(base, i));
  return out;
}

std::vector<FieldElem> zero_images(const TowerPtr& base) {
  std::vector<FieldElem> out;
  for (int i = 0; i < base->height(); ++i) out.push_back(FieldElem::integer(base, 0));
  return out;
}

// {"images": {...}, "inverse_images": {...}} -> endomorphism of the base.
FieldEndo endo_section(const TowerPtr& base, const json& obj, const std::string& where) {
  check_keys(obj, {"images", "inverse_images"}, where);
  std::vector<FieldElem> images =
      keyed_images(base, need(obj, "images", where), where + "images.", identity_images(base));
  std::optional<std::vector<FieldElem>> inverse;
  if (obj.contains("inverse_images"))
    inverse = keyed_images(base, obj["inverse_images"], where + "inverse_images.",
                           identity_images(base));
  return FieldEndo(base, std::move(images), std::move(inverse));
}

// [{"mono": [..], "coeff": "expr"}, ...] -> raw skew term map.
OreTermMap term_list(const TowerPtr& base, int nvars, const json& arr,
                     const std::string& where) {
  if (!arr.is_array())
    fail("config", "config field '" + where + "' must be an array of terms");
  OreTermMap out;
  for (const json& t : arr) {
    check_keys(t, {"mono", "coeff"}, where + ".");
    const json& mono = need(t, "mono", where + ".");
    if (!mono.is_array() || static_cast<int>(mono.size()) != nvars)
      fail("config", "config field '" + where + ".mono' must list one exponent per skew variable");
    OreMono m;
    for (const json& e : mono) {
      if (!e.is_number_integer())
        fail("config", "config field '" + where + ".mono' must hold integers");
      m.push_back(e.get<int>());
    }
    FieldElem c = coeff_expr(base, need(t, "coeff", where + "."), where + ".coeff");
    if (!out.emplace(std::move(m), std::move(c)).second)
      fail("config", "config field '" + where + "' repeats a monomial");
  }
  return out;
}

// --- generated relation strings ------------------------------------------------------

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::vector<std::string> torus_relation_strings(const QTorusRing& ring) {
  std::vector<std::string> out;
  const std::string qs = paren(ring.q().str());
  for (int i = 0; i < ring.nvars(); ++i) {
    for (int j = i + 1; j < ring.nvars(); ++j) {
      // x_i * x_j = q^{E[i][j]} * x_j * x_i
      out.push_back(ring.var_name(i) + "*" + ring.var_name(j) + " - " + qs + "^" +
                    std::to_string(ring.commutation(i, j)) + "*" + ring.var_name(j) + "*" +
                    ring.var_name(i));
    }
  }
  return out;
}

std::vector<std::string> group_relation_strings(const GroupRing& ring) {
  std::vector<std::string> out;
  for (int j = 1; j < ring.rank(); ++j) {
    for (int i = 0; i < j; ++i) {
      // f_j * f_i = f_i * f_j * correction
      std::string rhs = ring.gen_name(i) + "*" + ring.gen_name(j);
      const GroupElem& corr = ring.correction(j, i);
      if (corr != ring.identity()) rhs += "*" + group_elem_str(ring, corr);
      out.push_back(ring.gen_name(j) + "*" + ring.gen_name(i) + " - " + rhs);
    }
  }
  return out;
}

// --- declared algebra sections --------------------------------------------------------

AlgebraConfig ore_section(const TowerPtr& base, const json& sec) {
  check_keys(sec, {"variables", "relations"}, "ore.");
  const json& vars = need(sec, "variables", "ore.");
  if (!vars.is_array() || vars.empty())
    fail("config", "config field 'ore.variables' must be a nonempty array");
  const int nvars = static_cast<int>(vars.size());

  std::vector<OreVarSpec> specs;
  for (const json& v : vars) {
    const std::string where = "ore.variables[" + std::to_string(specs.size()) + "].";
    check_keys(v, {"name", "sigma_base", "sigma_vars", "delta_base", "delta_vars"}, where);
    OreVarSpec spec{need_string(v, "name", where), FieldEndo::identity(base), {}, {}, {}};
    if (!valid_name(spec.name))
      fail("config", "config field '" + where + "name' is not a usable identifier");
    if (v.contains("sigma_base"))
      spec.sigma_base = endo_section(base, v["sigma_base"], where + "sigma_base.");
    auto var_keyed = [&](const json& obj, const std::string& w) {
      std::map<int, OreTermMap> out;
      if (!obj.is_object()) fail("config", "config section '" + w + "' must be an object");
      for (const auto& [k, val] : obj.items()) {
        int idx = -1;
        for (int i = 0; i < nvars; ++i)
          if (vars[static_cast<size_t>(i)].contains("name") &&
              vars[static_cast<size_t>(i)]["name"] == k)
            idx = i;
        if (idx < 0) fail("config", "config field '" + w + k + "' names no skew variable");
        out.emplace(idx, term_list(base, nvars, val, w + k));
      }
      return out;
    };
    if (v.contains("sigma_vars")) spec.sigma_var_images = var_keyed(v["sigma_vars"], where + "sigma_vars.");
    if (v.contains("delta_vars")) spec.delta_var_values = var_keyed(v["delta_vars"], where + "delta_vars.");
    if (v.contains("delta_base")) {
      const json& db = v["delta_base"];
      check_keys(db, std::set<std::string>(base->vars().begin(), base->vars().end()),
                 where + "delta_base.");
      for (const auto& [k, val] : db.items())
        spec.delta_base_values.emplace(base->var_index(k),
                                       term_list(base, nvars, val, where + "delta_base." + k));
    }
    specs.push_back(std::move(spec));
  }

  OrePreset preset{OreTower::make(base, std::move(specs)), {}, ""};
  if (sec.contains("relations")) {
    if (!sec["relations"].is_array())
      fail("config", "config field 'ore.relations' must be an array of expression strings");
    for (const json& r : sec["relations"]) {
      if (!r.is_string())
        fail("config", "config field 'ore.relations' must hold expression strings");
      preset.relations.push_back(r.get<std::string>());
    }
  }
  return AlgebraConfig{OreConfig{std::move(preset), std::nullopt, ""}};
}

AlgebraConfig series_section(const TowerPtr& base, const json& sec) {
  check_keys(sec, {"kind", "variable", "sigma", "sigma_inverse", "delta"}, "series.");
  const std::string kind_s = need_string(sec, "kind", "series.");
  SeriesKind kind;
  if (kind_s == "plain_sigma")
    kind = SeriesKind::PlainSigma;
  else if (kind_s == "inverse_delta")
    kind = SeriesKind::InverseDelta;
  else
    fail("config", "config field 'series.kind' must be 'plain_sigma' or 'inverse_delta'");

  const std::string var = need_string(sec, "variable", "series.");
  if (!valid_name(var))
    fail("config", "config field 'series.variable' is not a usable identifier");
  if (base->var_index(var) >= 0)
    fail("config", "the series variable '" + var + "' collides with a base variable");

  std::vector<FieldElem> images = identity_images(base);
  std::optional<std::vector<FieldElem>> inverse;
  if (sec.contains("sigma"))
    images = keyed_images(base, sec["sigma"], "series.sigma.", identity_images(base));
  if (sec.contains("sigma_inverse"))
    inverse = keyed_images(base, sec["sigma_inverse"], "series.sigma_inverse.",
                           identity_images(base));
  FieldEndo sigma(base, std::move(images), std::move(inverse));

  std::vector<FieldElem> dvals = zero_images(base);
  if (sec.contains("delta"))
    dvals = keyed_images(base, sec["delta"], "series.delta.", zero_images(base));
  FieldDerivation delta(sigma, std::move(dvals));

  SeriesConfig out{kind, FieldCoeffRing(base, sigma, delta), var};
  // run the context checks once with a placeholder precision, so a bad
  // declaration fails at load time rather than at the first command
  validate_series_context(FieldSeriesContext{out.kind, out.ring, 1, out.var});
  return AlgebraConfig{std::move(out)};
}

AlgebraConfig torus_section(const TowerPtr& base, const json& sec) {
  check_keys(sec, {"names", "exponents", "q"}, "torus.");
  const json& names_j = need(sec, "names", "torus.");
  if (!names_j.is_array() || names_j.empty())
    fail("config", "config field 'torus.names' must be a nonempty array of names");
  std::vector<std::string> names;
  for (const json& n : names_j) {
    if (!n.is_string() || !valid_name(n.get<std::string>()))
      fail("config", "config field 'torus.names' must hold usable identifiers");
    names.push_back(n.get<std::string>());
  }
  const json& ej = need(sec, "exponents", "torus.");
  if (!ej.is_array() || ej.size() != names.size())
    fail("config", "config field 'torus.exponents' must be a square integer matrix");
  std::vector<std::vector<int>> em;
  for (const json& row : ej) {
    if (!row.is_array() || row.size() != names.size())
      fail("config", "config field 'torus.exponents' must be a square integer matrix");
    std::vector<int> r;
    for (const json& e : row) {
      if (!e.is_number_integer())
        fail("config", "config field 'torus.exponents' must hold integers");
      r.push_back(e.get<int>());
    }
    em.push_back(std::move(r));
  }
  FieldElem q = coeff_expr(base, need(sec, "q", "torus."), "torus.q");
  QTorusRingPtr ring = QTorusRing::make(base, std::move(q), std::move(names), std::move(em));
  std::vector<std::string> rels = torus_relation_strings(*ring);
  return AlgebraConfig{TorusConfig{std::move(ring), std::move(rels), ""}};
}

AlgebraConfig group_section(const TowerPtr& base, const json& sec) {
  check_keys(sec, {"rank", "corrections", "action"}, "group.");
  const json& rank_j = need(sec, "rank", "group.");
  if (!rank_j.is_number_integer() || rank_j.get<long long>() < 1)
    fail("config", "config field 'group.rank' must be a positive integer");
  const int rank = rank_j.get<int>();

  std::map<std::pair<int, int>, GroupElem> corrections;
  if (sec.contains("corrections")) {
    const json& cj = sec["corrections"];
    if (!cj.is_array())
      fail("config", "config field 'group.corrections' must be an array");
    for (const json& c : cj) {
      check_keys(c, {"j", "i", "word"}, "group.corrections.");
      const json& jj = need(c, "j", "group.corrections.");
      const json& ii = need(c, "i", "group.corrections.");
      if (!jj.is_number_integer() || !ii.is_number_integer())
        fail("config", "config fields 'group.corrections.j/i' must be integers");
      const json& wj = need(c, "word", "group.corrections.");
      if (!wj.is_array() || static_cast<int>(wj.size()) != rank)
        fail("config", "config field 'group.corrections.word' must list one exponent per generator");
      GroupElem word;
      for (const json& e : wj) {
        if (!e.is_number_integer())
          fail("config", "config field 'group.corrections.word' must hold integers");
        word.push_back(e.get<long long>());
      }
      if (!corrections.emplace(std::make_pair(jj.get<int>(), ii.get<int>()), std::move(word)).second)
        fail("config", "config field 'group.corrections' repeats a generator pair");
    }
  }

  std::optional<std::vector<FieldEndo>> action;
  if (sec.contains("action")) {
    const json& aj = sec["action"];
    if (!aj.is_array() || static_cast<int>(aj.size()) != rank)
      fail("config", "config field 'group.action' must list one endomorphism per generator");
    std::vector<FieldEndo> endos;
    for (size_t k = 0; k < aj.size(); ++k)
      endos.push_back(endo_section(base, aj[k], "group.action[" + std::to_string(k) + "]."));
    action = std::move(endos);
  }

  GroupRingPtr ring = GroupRing::make(rank, std::move(corrections), base, std::move(action));
  std::vector<std::string> rels = group_relation_strings(*ring);
  return AlgebraConfig{GroupConfig{std::move(ring), std::move(rels)}};
}

// Fails "config" naming the first declared relation that is not zero.
void require_zero_relations(const AlgebraConfig& cfg) {
  for (const RelationCheck& rc : check_config_relations(cfg)) {
    if (!rc.zero)
      fail("config", "declared relation '" + rc.relation +
                         "' does not evaluate to zero (got " + rc.residual + ")");
  }
}

}  // namespace

// --- presets ---------------------------------------------------------------------------

std::string preset_param_name(const std::string& name) {
  if (name == "weyl" || name == "heisenberg") return "";
  if (name == "quantum_matrices" || name == "skew_poly") return "q";
  if (name == "quantum_torus") return "lambda";
  fail("config", "unknown preset '" + name +
                     "' (expected weyl, quantum_matrices, quantum_torus, heisenberg, or skew_poly)");
}

AlgebraConfig preset_config(const std::string& name, const std::optional<mpq_class>& param) {
  if (param && preset_param_name(name).empty())
    fail("config", "preset '" + name + "' takes no parameter");
  (void)preset_param_name(name);  // rejects unknown names uniformly

  AlgebraConfig cfg = [&]() -> AlgebraConfig {
    if (name == "heisenberg") {
      GroupRingPtr ring = make_heisenberg_ring();
      std::vector<std::string> rels = group_relation_strings(*ring);
      return AlgebraConfig{GroupConfig{std::move(ring), std::move(rels)}};
    }
    if (name == "quantum_torus") {
      QTorusRingPtr ring = make_quantum_torus_ring(param);
      std::vector<std::string> rels = torus_relation_strings(*ring);
      return AlgebraConfig{TorusConfig{std::move(ring), std::move(rels), param ? "" : "lambda"}};
    }
    return AlgebraConfig{OreConfig{make_ore_preset(name, param), param, name}};
  }();
  require_zero_relations(cfg);
  return cfg;
}

// --- documents ----------------------------------------------------------------------------

AlgebraConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail("config", std::string("invalid config document: ") + e.what());
  }
  if (!doc.is_object()) fail("config", "config document must be a JSON object");

  if (doc.contains("preset")) {
    check_keys(doc, {"preset", "param"}, "");
    std::optional<mpq_class> param;
    if (doc.contains("param"))
      param = rational_literal(need_string(doc, "param", ""), "config field 'param'");
    return preset_config(need_string(doc, "preset", ""), param);
  }

  check_keys(doc, {"base", "ore", "series", "torus", "group"}, "");
  std::vector<std::string> base_vars;
  if (doc.contains("base")) {
    const json& bj = doc["base"];
    if (!bj.is_array()) fail("config", "config field 'base' must be an array of variable names");
    for (const json& v : bj) {
      if (!v.is_string() || !valid_name(v.get<std::string>()))
        fail("config", "config field 'base' must hold usable identifiers");
      base_vars.push_back(v.get<std::string>());
    }
  }
  TowerPtr base = FieldTower::make(std::move(base_vars));

  int sections = doc.contains("ore") + doc.contains("series") + doc.contains("torus") +
                 doc.contains("group");
  if (sections != 1)
    fail("config",
         "config document needs exactly one algebra section ('ore', 'series', 'torus', or 'group')");

  AlgebraConfig cfg = doc.contains("ore")      ? ore_section(base, doc["ore"])
                      : doc.contains("series") ? series_section(base, doc["series"])
                      : doc.contains("torus")  ? torus_section(base, doc["torus"])
                                               : group_section(base, doc["group"]);
  require_zero_relations(cfg);
  return cfg;
}

AlgebraConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("config", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// --- relation checks -------------------------------------------------------------------------

std::vector<RelationCheck> check_config_relations(const AlgebraConfig& cfg) {
  std::vector<RelationCheck> out;
  auto run = [&](const std::vector<std::string>& relations, const auto& adapter) {
    for (const std::string& r : relations) {
      auto value = eval_expr(adapter, parse_expr(r));
      out.push_back({r, value.is_zero(), value.str()});
    }
  };
  if (const auto* ore = std::get_if<OreConfig>(&cfg.algebra)) {
    run(ore->preset.relations, OreEval{ore->preset.tower});
  } else if (const auto* torus = std::get_if<TorusConfig>(&cfg.algebra)) {
    run(torus->relations, TorusEval{torus->ring});
  } else if (const auto* group = std::get_if<GroupConfig>(&cfg.algebra)) {
    run(group->relations, GroupEval{group->ring});
  }
  return out;
}

}  // namespace skewring
