#ifndef FORCING_IO_HPP
#define FORCING_IO_HPP

// JSON file formats. Requires nlohmann/json ("json.hpp") on the include path.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boolalg.hpp"
#include "cohen.hpp"
#include "errors.hpp"
#include "hfset.hpp"
#include "names.hpp"
#include "order.hpp"
#include "semantics.hpp"

namespace forcing::io {

using json = nlohmann::ordered_json;

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(origin + ": malformed JSON: " + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json(const std::string& path) { return parse_json(read_text(path), path); }

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw input_error(what + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw input_error(what + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw input_error(what + ": expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

inline std::size_t natural(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw input_error(what + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline std::vector<std::uint8_t> bits(const json& j, const std::string& what) {
  if (!j.is_array()) throw input_error(what + ": expected an array of bits");
  std::vector<std::uint8_t> out;
  for (const auto& b : j) {
    const auto v = natural(b, what);
    if (v > 1) throw input_error(what + ": bits must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

} // namespace detail

// ---- algebras -----------------------------------------------------------------------

/// Element literal: array of atom labels, e.g. ["a","c"].
inline BAElement element_from_json(const FinBoolAlg& alg, const json& j) {
  const auto labels = detail::string_list(j, "element literal");
  for (const auto& l : labels) {
    if (std::find(alg.atom_labels().begin(), alg.atom_labels().end(), l) == alg.atom_labels().end()) {
      throw input_error("element literal: unknown atom '" + l + "'");
    }
  }
  return alg.element_of(labels);
}

inline BAElement element_from_text(const FinBoolAlg& alg, const std::string& text) {
  return element_from_json(alg, parse_json(text, "element literal"));
}

inline json element_to_json(const BAElement& x) { return x.algebra().labels_of(x); }

/// A listed ideal of `base`; rejects sets that are not ideals.
inline SubsetPredicate ideal_from_json(const FinBoolAlg& base, const json& j) {
  if (!j.is_array()) throw input_error("ideal: expected an array of element literals");
  std::vector<BAElement> members;
  for (const auto& e : j) members.push_back(element_from_json(base, e));
  SubsetPredicate ideal(base, std::move(members));
  if (!is_ideal(ideal)) throw input_error("ideal: the listed elements do not form an ideal");
  return ideal;
}

/// {"atoms": [...]} or {"quotient_of": <algebra>, "ideal": [...]}. Quotients nest.
inline FinBoolAlg algebra_from_json(const json& j) {
  if (!j.is_object()) throw input_error("algebra: expected an object");
  if (j.contains("atoms")) {
    return FinBoolAlg(detail::string_list(j.at("atoms"), "algebra atoms"));
  }
  if (j.contains("quotient_of")) {
    const FinBoolAlg base = algebra_from_json(j.at("quotient_of"));
    return quotient(base, ideal_from_json(base, detail::field(j, "ideal", "quotient"))).algebra;
  }
  throw input_error("algebra: expected \"atoms\" or \"quotient_of\"");
}

// ---- posets -------------------------------------------------------------------------

/// {"elements": [...], "leq": [[a, b], ...]} with a ≤ b.
inline FinPoset poset_from_json(const json& j) {
  auto labels = detail::string_list(detail::field(j, "elements", "poset"), "poset elements");
  if (labels.empty()) throw input_error("poset: no elements");
  if (labels.size() > FinPoset::max_points) throw input_error("poset: too many elements");
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("leq")) {
    for (const auto& p : j.at("leq")) {
      auto ab = detail::string_list(p, "poset leq pair");
      if (ab.size() != 2) throw input_error("poset: leq entries are [lower, upper] pairs");
      pairs.emplace_back(ab[0], ab[1]);
    }
  }
  return FinPoset(std::move(labels), pairs);
}

// ---- names ---------------------------------------------------------------------------

/// {"names": {"id": [[child, element literal], ...]}, "check_of": {"id": "HF literal"}}
inline NameTable<BAElement> names_from_json(const FinBoolAlg& alg, const json& j) {
  if (!j.is_object()) throw input_error("names: expected an object");
  NameDeclarations<BAElement> decls;
  if (j.contains("names")) {
    if (!j.at("names").is_object()) throw input_error("names: \"names\" must be an object");
    for (const auto& [id, entries] : j.at("names").items()) {
      if (!entries.is_array()) throw input_error("name '" + id + "': expected a list of entries");
      std::vector<std::pair<std::string, BAElement>> out;
      for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string()) {
          throw input_error("name '" + id + "': entries are [child id, element literal]");
        }
        out.emplace_back(e[0].get<std::string>(), element_from_json(alg, e[1]));
      }
      decls.names.emplace_back(id, std::move(out));
    }
  }
  if (j.contains("check_of")) {
    if (!j.at("check_of").is_object()) throw input_error("names: \"check_of\" must be an object");
    for (const auto& [id, lit] : j.at("check_of").items()) {
      if (!lit.is_string()) throw input_error("check_of '" + id + "': expected an HF literal string");
      decls.check_of.emplace_back(id, parse_literal(lit.get<std::string>()));
    }
  }
  return build_name_table(decls, alg.one());
}

// ---- models ---------------------------------------------------------------------------

struct ModelFile {
  TransitiveModel model;
  std::map<std::string, HFSet> constants;
};

/// {"carrier": ["HF literal", ...]} or {"von_neumann": n}, optionally
/// with "constants": {"id": "HF literal"}.
inline ModelFile model_from_json(const json& j) {
  if (!j.is_object()) throw input_error("model: expected an object");
  std::optional<TransitiveModel> m;
  if (j.contains("carrier")) {
    std::vector<HFSet> carrier;
    for (const auto& s : detail::string_list(j.at("carrier"), "model carrier")) carrier.push_back(parse_literal(s));
    m.emplace(std::move(carrier));
  } else if (j.contains("von_neumann")) {
    const auto n = detail::natural(j.at("von_neumann"), "model von_neumann");
    if (n > 64) throw input_error("model: von_neumann bound too large");
    m.emplace(TransitiveModel::natural(n));
  } else {
    throw input_error("model: expected \"carrier\" or \"von_neumann\"");
  }
  ModelFile out{*m, {}};
  if (j.contains("constants")) {
    if (!j.at("constants").is_object()) throw input_error("model: \"constants\" must be an object");
    for (const auto& [id, lit] : j.at("constants").items()) {
      if (!lit.is_string()) throw input_error("constant '" + id + "': expected an HF literal string");
      out.constants.emplace(id, parse_literal(lit.get<std::string>()));
    }
  }
  return out;
}

// ---- Cohen demo ---------------------------------------------------------------------

/// {"kappa": 4, "columns": 8, "dense": ["total","distinct"],
///  "avoid": [{"row": 0, "prefix": [], "period": [0]}]}
inline CohenDemoConfig cohen_config_from_json(const json& j) {
  if (!j.is_object()) throw input_error("cohen config: expected an object");
  CohenDemoConfig cfg;
  if (j.contains("kappa")) cfg.kappa = detail::natural(j.at("kappa"), "kappa");
  if (j.contains("columns")) cfg.columns = detail::natural(j.at("columns"), "columns");
  if (cfg.kappa == 0) throw input_error("cohen config: kappa must be positive");
  if (cfg.kappa > 64 || cfg.columns > 4096) throw input_error("cohen config: kappa or columns too large");
  if (j.contains("dense")) {
    cfg.total = cfg.distinct = false;
    for (const auto& d : detail::string_list(j.at("dense"), "dense")) {
      if (d == "total") cfg.total = true;
      else if (d == "distinct") cfg.distinct = true;
      else throw input_error("cohen config: unknown dense family '" + d + "'");
    }
  }
  if (j.contains("avoid")) {
    if (!j.at("avoid").is_array()) throw input_error("cohen config: \"avoid\" must be an array");
    for (const auto& a : j.at("avoid")) {
      const auto row = detail::natural(detail::field(a, "row", "avoid"), "avoid row");
      if (row >= cfg.kappa) throw input_error("cohen config: avoid row out of range");
      std::vector<std::uint8_t> prefix;
      if (a.contains("prefix")) prefix = detail::bits(a.at("prefix"), "avoid prefix");
      auto period = detail::bits(detail::field(a, "period", "avoid"), "avoid period");
      cfg.avoid.push_back({row, GroundReal(std::move(prefix), std::move(period))});
    }
  }
  return cfg;
}

} // namespace forcing::io

#endif
