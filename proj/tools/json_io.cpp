#include "json_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace refinemon::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

std::size_t get_size(const json& j, const std::string& what) {
  if (!j.is_number_unsigned()) bad(what + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

const json& field(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(ctx + ": missing field \"" + key + "\"");
  return *it;
}

}  // namespace

MonoidSpec parse_spec(const json& doc) {
  if (!doc.is_object()) bad("spec: top level must be an object");
  MonoidSpec spec;
  const json& kind = field(doc, "kind", "spec");
  if (!kind.is_string()) bad("spec: \"kind\" must be a string");
  spec.kind = kind.get<std::string>();
  std::set<std::string> allowed{"kind"};
  if (spec.kind == "simplicial") {
    allowed.insert("rank");
    spec.rank = get_size(field(doc, "rank", "spec"), "spec.rank");
    if (spec.rank < 1 || spec.rank > kMaxSimplicialRank)
      bad("spec.rank: must be between 1 and " + std::to_string(kMaxSimplicialRank));
  } else if (spec.kind == "naturals") {
    allowed.insert("rank");
    spec.rank = 1;
    if (doc.contains("rank") && get_size(doc["rank"], "spec.rank") != 1) bad("spec.rank: naturals have rank 1");
  } else if (spec.kind == "cayley" || spec.kind == "semilattice") {
    allowed.insert({"names", "table", "zero"});
    const json& names = field(doc, "names", "spec");
    if (!names.is_array()) bad("spec.names: expected an array");
    for (const auto& n : names) {
      if (!n.is_string()) bad("spec.names: entries must be strings");
      spec.table.names.push_back(n.get<std::string>());
    }
    const json& table = field(doc, "table", "spec");
    if (!table.is_array()) bad("spec.table: expected an array of rows");
    for (const auto& row : table) {
      if (!row.is_array()) bad("spec.table: rows must be arrays");
      auto& out = spec.table.table.emplace_back();
      for (const auto& e : row) out.push_back(get_size(e, "spec.table entry"));
    }
    spec.table.zero = get_size(field(doc, "zero", "spec"), "spec.zero");
    spec.rank = spec.table.names.size();
  } else {
    bad("spec: unknown kind \"" + spec.kind + "\"");
  }
  for (const auto& [key, value] : doc.items())
    if (!allowed.contains(key)) bad("spec: field \"" + key + "\" is not allowed for kind " + spec.kind);
  spec.canonical = doc;
  return spec;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

MonoidSpec load_spec(const std::filesystem::path& path) { return parse_spec(read_json(path)); }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string oracle_hash(const MonoidSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec.canonical.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + hex;
}

AnyOracle make_oracle(const MonoidSpec& spec) {
  if (spec.kind == "simplicial" || spec.kind == "naturals") return FreeMonoid(spec.rank);
  if (spec.kind == "semilattice") return CayleyMonoid(SemilatticeMonoid(spec.table));
  return CayleyMonoid(spec.table);
}

json to_json(const Natural& n) {
  if (auto v = n.to_u64()) return *v;
  return n.str();
}

Natural natural_from_json(const json& j) {
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return Natural::parse(j.get<std::string>());
    } catch (const DomainError& e) {
      bad(std::string("bad natural number: ") + e.what());
    }
  }
  bad("expected a natural number");
}

json encode(const FreeMonoid& m, const Element& x) {
  m.check(x);
  json out = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(to_json(x(i)));
  return out;
}

json encode(const CayleyMonoid& m, ElementId x) { return m.index_of(x); }

Element decode(const FreeMonoid& m, const json& j) {
  if (!j.is_array() || j.size() != m.rank()) bad("element: expected an array of " + std::to_string(m.rank()) + " naturals");
  Element x(static_cast<Eigen::Index>(m.rank()));
  for (std::size_t i = 0; i < m.rank(); ++i) x(static_cast<Eigen::Index>(i)) = natural_from_json(j[i]);
  return x;
}

ElementId decode(const CayleyMonoid& m, const json& j) {
  const std::size_t i = get_size(j, "element");
  if (i >= m.size()) bad("element: index " + std::to_string(i) + " out of range");
  return m.element(i);
}

Element parse_element(const FreeMonoid& m, const std::string& text) {
  std::vector<Natural> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      coords.push_back(Natural::parse(piece));
    } catch (const DomainError&) {
      bad("element \"" + text + "\": coordinates must be natural numbers");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (coords.size() != m.rank()) bad("element \"" + text + "\": expected " + std::to_string(m.rank()) + " coordinates");
  Element x(static_cast<Eigen::Index>(m.rank()));
  for (std::size_t i = 0; i < coords.size(); ++i) x(static_cast<Eigen::Index>(i)) = coords[i];
  return x;
}

ElementId parse_element(const CayleyMonoid& m, const std::string& text) {
  if (auto e = m.find(text)) return *e;
  std::size_t i = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (ec != std::errc{} || ptr != text.data() + text.size() || i >= m.size())
    bad("element \"" + text + "\": not a name or index of this monoid");
  return m.element(i);
}

json morphism_to_json(const Morphism& f) {
  json cols = json::array();
  for (std::size_t i = 0; i < f.source_rank(); ++i) {
    json c = json::array();
    const auto v = f.column(i);
    for (Eigen::Index k = 0; k < v.size(); ++k) c.push_back(to_json(v(k)));
    cols.push_back(std::move(c));
  }
  return {{"columns", cols}};
}

Morphism morphism_from_json(const json& j, std::size_t source_rank, std::size_t target_rank) {
  if (!j.is_object() || j.size() != 1 || !j.contains("columns") || !j["columns"].is_array())
    bad("beta: expected {\"columns\": [...]}");
  const json& cols = j["columns"];
  if (cols.size() != source_rank)
    bad("beta: " + std::to_string(cols.size()) + " columns for source rank " + std::to_string(source_rank));
  std::vector<Element> images;
  for (const auto& c : cols) {
    if (!c.is_array() || c.size() != target_rank)
      bad("beta: columns must have length " + std::to_string(target_rank));
    Element v(static_cast<Eigen::Index>(target_rank));
    for (std::size_t k = 0; k < target_rank; ++k) v(static_cast<Eigen::Index>(k)) = natural_from_json(c[k]);
    images.push_back(std::move(v));
  }
  return Morphism::from_columns(target_rank, images);
}

json axiom_report_to_json(const AxiomReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"axiom", to_string(x.axiom)}, {"message", x.message}});
  return {{"ok", rep.ok()},
          {"quadruples_examined", rep.quadruples_examined},
          {"refinement_instances", rep.refinement_instances},
          {"violations", v}};
}

template <class M>
std::vector<Stage<value_t<M>>> tower_from_json(const M& m, const json& doc, TowerDocument& meta) {
  if (!doc.is_object()) bad("tower: top level must be an object");
  const json& format = field(doc, "format", "tower");
  if (format != "refinemon-tower/1") bad("tower: unsupported format");
  const json& oracle = field(doc, "oracle", "tower");
  if (!oracle.is_object() || !oracle.contains("hash") || !oracle["hash"].is_string()) bad("tower: oracle.hash missing");
  meta.hash = oracle["hash"].get<std::string>();
  meta.rank_budget = get_size(field(doc, "rank_budget", "tower"), "tower.rank_budget");
  const std::size_t depth = get_size(field(doc, "depth", "tower"), "tower.depth");
  const json& st = field(doc, "stages", "tower");
  if (!st.is_array() || st.size() != depth + 1) bad("tower: expected depth + 1 stages");
  std::vector<std::size_t> ranks;
  for (const auto& s : st) {
    if (!s.is_object()) bad("tower: stages must be objects");
    ranks.push_back(get_size(field(s, "rank", "stage"), "stage.rank"));
  }
  std::vector<Stage<value_t<M>>> out;
  for (std::size_t j = 0; j < st.size(); ++j) {
    const json& s = st[j];
    const std::string ctx = "stage " + std::to_string(j);
    Stage<value_t<M>> stage{SimplicialMonoid{ranks[j]}, {}, std::nullopt};
    const json& alpha = field(s, "alpha", ctx);
    if (!alpha.is_array()) bad(ctx + ": alpha must be an array");
    for (const auto& a : alpha) stage.alpha.push_back(decode(m, a));
    const json& beta = field(s, "beta", ctx);
    if (j + 1 < st.size()) {
      if (beta.is_null()) bad(ctx + ": beta missing");
      stage.beta = morphism_from_json(beta, ranks[j], ranks[j + 1]);
    } else if (!beta.is_null()) {
      bad(ctx + ": newest stage must have a null beta");
    }
    out.push_back(std::move(stage));
  }
  return out;
}

template std::vector<Stage<Element>> tower_from_json(const FreeMonoid&, const json&, TowerDocument&);
template std::vector<Stage<ElementId>> tower_from_json(const CayleyMonoid&, const json&, TowerDocument&);

}  // namespace refinemon::io
