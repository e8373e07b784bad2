#pragma once

// JSON documents read and written by the refinemon tool. Objects are
// nlohmann::json, whose keys are kept sorted, so dump() is byte-stable.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "refinemon/cayley_monoid.hpp"
#include "refinemon/divisibility.hpp"
#include "refinemon/free_monoid.hpp"
#include "refinemon/tower.hpp"

namespace refinemon::io {

using nlohmann::json;

/// A monoid specification file after schema checks.
struct MonoidSpec {
  std::string kind;  ///< simplicial, naturals, cayley or semilattice
  std::size_t rank = 0;
  CayleyTable table;
  json canonical;  ///< the document as parsed, re-dumped for hashing

  bool finite() const { return kind == "cayley" || kind == "semilattice"; }
};

inline constexpr std::size_t kMaxSimplicialRank = 16;

/// Throws FormatError on anything but a well-formed spec.
MonoidSpec parse_spec(const json& doc);
MonoidSpec load_spec(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);
std::string dump(const json& doc);

/// "fnv1a64:" followed by 16 hex digits, over the canonical dump.
std::string oracle_hash(const MonoidSpec& spec);

using AnyOracle = std::variant<FreeMonoid, CayleyMonoid>;

/// Runs the axiom checks for finite kinds (DomainError if they fail).
AnyOracle make_oracle(const MonoidSpec& spec);

json to_json(const Natural& n);
Natural natural_from_json(const json& j);

json encode(const FreeMonoid& m, const Element& x);
json encode(const CayleyMonoid& m, ElementId x);
Element decode(const FreeMonoid& m, const json& j);
ElementId decode(const CayleyMonoid& m, const json& j);

/// Element given on the command line: a name or index for finite monoids,
/// comma-separated coordinates for free ones.
Element parse_element(const FreeMonoid& m, const std::string& text);
ElementId parse_element(const CayleyMonoid& m, const std::string& text);

json morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const json& j, std::size_t source_rank, std::size_t target_rank);

json axiom_report_to_json(const AxiomReport& rep);

template <class M>
json tower_to_json(const M& m, const std::vector<Stage<value_t<M>>>& stages, const MonoidSpec& spec,
                   std::size_t rank_budget, const TowerCheck& check) {
  json out;
  out["format"] = "refinemon-tower/1";
  out["oracle"] = {{"hash", oracle_hash(spec)}, {"kind", spec.kind}};
  out["depth"] = stages.size() - 1;
  out["rank_budget"] = rank_budget;
  json st = json::array();
  for (const auto& s : stages) {
    json e;
    e["rank"] = s.delta.rank;
    json alpha = json::array();
    for (const auto& a : s.alpha) alpha.push_back(encode(m, a));
    e["alpha"] = std::move(alpha);
    e["beta"] = s.beta ? morphism_to_json(*s.beta) : json(nullptr);
    st.push_back(std::move(e));
  }
  out["stages"] = std::move(st);
  out["manifest"] = {{"commutativity_checks", check.commutativity_checks},
                     {"coverage_checks", check.coverage_checks},
                     {"propagation_pairs", check.propagation_pairs},
                     {"verified", json::array({"commutativity", "coverage", "propagation", "rank_budget"})}};
  return out;
}

struct TowerDocument {
  std::string hash;
  std::size_t rank_budget = 0;
};

/// Structural parse of a tower document; FormatError on any shape problem.
template <class M>
std::vector<Stage<value_t<M>>> tower_from_json(const M& m, const json& doc, TowerDocument& meta);

template <class M>
json certificate_to_json(const M& m, const DivisibilityCertificate<value_t<M>>& c) {
  json parts = json::array();
  json targets = json::array();
  for (const auto& p : c.parts) parts.push_back(encode(m, p));
  for (const auto& n : c.targets) targets.push_back(to_json(n));
  return {{"x", encode(m, c.x)}, {"targets", targets}, {"parts", parts}, {"verified", c.validate(m)}};
}

}  // namespace refinemon::io
