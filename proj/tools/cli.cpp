#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "refinemon/divisibility.hpp"
#include "refinemon/lattice.hpp"
#include "refinemon/tower.hpp"

namespace refinemon::cli {

namespace {

using io::json;
using namespace nlohmann::literals;

std::size_t rank_budget_from(std::optional<std::size_t> flag) {
  std::size_t budget = kDefaultRankBudget;
  if (flag) {
    budget = *flag;
  } else if (const char* env = std::getenv("REFINEMON_RANK_BUDGET")) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      budget = v;
    } catch (const std::exception&) {
      throw FormatError(std::string("REFINEMON_RANK_BUDGET: not a number: ") + env);
    }
  }
  if (budget < 1 || budget > kMaxRankBudget)
    throw FormatError("rank budget must be between 1 and " + std::to_string(kMaxRankBudget));
  return budget;
}

void write(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << io::dump(doc);
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("cannot write " + path);
  f << io::dump(doc);
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto spec = io::load_spec(path);
  json doc{{"kind", spec.kind}, {"oracle_hash", io::oracle_hash(spec)}};
  if (!spec.finite()) {
    doc["report"] = io::axiom_report_to_json(AxiomReport{});
    out << io::dump(doc);
    return kOk;
  }
  const auto rep = verify_axioms(spec.table, spec.kind == "semilattice");
  doc["report"] = io::axiom_report_to_json(rep);
  out << io::dump(doc);
  for (const auto& v : rep.violations) err << v.message << "\n";
  return rep.ok() ? kOk : kViolation;
}

int cmd_resolve(const std::string& path, std::size_t depth, std::size_t budget, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  const auto spec = io::load_spec(path);
  const auto oracle = io::make_oracle(spec);
  return std::visit(
      [&](const auto& m) {
        Tower t(m, budget);
        t.extend_to(depth);
        const auto check = verify_tower(m, t.stages(), budget);
        if (!check.ok()) {
          for (const auto& f : check.failures) err << f << "\n";
          return int{kInternal};
        }
        write(io::tower_to_json(m, t.stages(), spec, budget, check), out_path, out);
        return int{kOk};
      },
      oracle);
}

int cmd_verify_tower(const std::string& tower_path, const std::string& spec_path, std::ostream& out,
                     std::ostream& err) {
  const auto spec = io::load_spec(spec_path);
  const json doc = io::read_json(tower_path);
  const auto oracle = io::make_oracle(spec);
  return std::visit(
      [&](const auto& m) {
        const std::string built_for = doc.value("/oracle/hash"_json_pointer, std::string{});
        if (built_for != io::oracle_hash(spec)) {
          err << "oracle hash mismatch: tower was built for " << (built_for.empty() ? "?" : built_for)
              << ", spec hashes to " << io::oracle_hash(spec) << "\n";
          return int{kFormat};
        }
        io::TowerDocument meta;
        const auto stages = io::tower_from_json(m, doc, meta);
        const auto check = verify_tower(m, stages, meta.rank_budget);
        out << io::dump({{"ok", check.ok()},
                         {"failures", check.failures},
                         {"commutativity_checks", check.commutativity_checks},
                         {"coverage_checks", check.coverage_checks},
                         {"propagation_pairs", check.propagation_pairs}});
        for (const auto& f : check.failures) err << f << "\n";
        return check.ok() ? int{kOk} : int{kViolation};
      },
      oracle);
}

json semilattice_table(const CayleyMonoid& q) {
  const auto& t = q.table();
  return {{"names", t.names}, {"table", t.table}, {"zero", t.zero}};
}

int cmd_nabla(const std::string& path, std::ostream& out) {
  const auto spec = io::load_spec(path);
  const auto oracle = io::make_oracle(spec);
  json doc{{"kind", spec.kind}, {"oracle_hash", io::oracle_hash(spec)}};
  if (const auto* fm = std::get_if<FreeMonoid>(&oracle)) {
    const auto nb = nabla(*fm);
    json classes = json::array();
    for (auto mask : nb.supports) {
      const IndexSet support = IndexSet::from_mask(mask);
      classes.push_back({{"support", std::vector<std::size_t>(support.begin(), support.end())}});
    }
    doc["classes"] = std::move(classes);
    doc["quotient"] = semilattice_table(nb.quotient);
  } else {
    const auto& m = std::get<CayleyMonoid>(oracle);
    const auto nb = nabla(m);
    json classes = json::array();
    for (std::size_t c = 0; c < nb.representatives.size(); ++c) {
      json members = json::array();
      for (std::size_t a = 0; a < m.size(); ++a)
        if (nb.class_of[a] == c) members.push_back(a);
      classes.push_back({{"name", nb.quotient.name(element_id(c))}, {"members", members}});
    }
    doc["classes"] = std::move(classes);
    doc["quotient"] = semilattice_table(nb.quotient);
  }
  out << io::dump(doc);
  return kOk;
}

int cmd_ideals(const std::string& path, std::ostream& out) {
  const auto spec = io::load_spec(path);
  const auto oracle = io::make_oracle(spec);
  const IdealLattice L = std::visit([](const auto& m) { return enumerate_ideals(m); }, oracle);
  json ideals = json::array();
  for (const auto& I : L.ideals()) ideals.push_back(I.members);
  json doc{{"kind", spec.kind},
           {"oracle_hash", io::oracle_hash(spec)},
           {"members", spec.finite() ? "element_indices" : "basis_indices"},
           {"count", L.size()},
           {"ideals", std::move(ideals)}};
  if (L.size() <= 4096) {
    json edges = json::array();
    for (const auto& [a, b] : L.hasse()) edges.push_back({a, b});
    doc["hasse"] = std::move(edges);
  } else {
    doc["hasse"] = nullptr;
  }
  out << io::dump(doc);
  return kOk;
}

int cmd_divide(const std::string& path, const std::string& element, const std::vector<std::uint64_t>& targets,
               std::ostream& out, std::ostream& err) {
  const auto spec = io::load_spec(path);
  const auto oracle = io::make_oracle(spec);
  for (auto n : targets)
    if (n == 0) throw FormatError("targets must be positive");
  return std::visit(
      [&](const auto& m) {
        const auto x = io::parse_element(m, element);
        try {
          const auto cert = weak_divide(m, x, targets);
          const json doc = io::certificate_to_json(m, cert);
          out << io::dump(doc);
          return doc["verified"].template get<bool>() ? int{kOk} : int{kInternal};
        } catch (const NotWeaklyDivisibleError& e) {
          err << e.what() << "\n";
          return int{kViolation};
        }
      },
      oracle);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolve countable refinement monoids by towers of simplicial monoids", "refinemon"};
  app.require_subcommand(1);

  std::string spec_path, tower_path, out_path, element;
  std::size_t depth = 3;
  std::optional<std::size_t> budget;
  std::vector<std::uint64_t> targets;

  auto* check = app.add_subcommand("check", "Verify the monoid axioms of a spec file");
  check->add_option("spec", spec_path, "Monoid spec (JSON)")->required();

  auto* resolve = app.add_subcommand("resolve", "Build and verify a tower, write it as JSON");
  resolve->add_option("spec", spec_path, "Monoid spec (JSON)")->required();
  resolve->add_option("--depth", depth, "Number of extension steps")->capture_default_str();
  resolve->add_option("--rank-budget", budget, "Largest stage rank (default REFINEMON_RANK_BUDGET or 24)");
  resolve->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify-tower", "Re-check a tower document against its spec");
  verify->add_option("tower", tower_path, "Tower document")->required();
  verify->add_option("spec", spec_path, "Monoid spec (JSON)")->required();

  auto* nabla_cmd = app.add_subcommand("nabla", "Maximal semilattice quotient");
  nabla_cmd->add_option("spec", spec_path, "Monoid spec (JSON)")->required();

  auto* ideals = app.add_subcommand("ideals", "Lattice of order ideals");
  ideals->add_option("spec", spec_path, "Monoid spec (JSON)")->required();

  auto* divide = app.add_subcommand("divide", "Weak-divisibility certificate x = n_1 x_1 + ... + n_r x_r");
  divide->add_option("spec", spec_path, "Monoid spec (JSON)")->required();
  divide->add_option("--element", element, "Element: name or index, or comma-separated coordinates")->required();
  divide->add_option("--targets", targets, "Comma-separated n_1,...,n_r")->required()->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "refinemon: " << e.what() << "\n";
    return kFormat;
  }

  try {
    if (check->parsed()) return cmd_check(spec_path, out, err);
    if (resolve->parsed()) return cmd_resolve(spec_path, depth, rank_budget_from(budget), out_path, out, err);
    if (verify->parsed()) return cmd_verify_tower(tower_path, spec_path, out, err);
    if (nabla_cmd->parsed()) return cmd_nabla(spec_path, out);
    if (ideals->parsed()) return cmd_ideals(spec_path, out);
    if (divide->parsed()) return cmd_divide(spec_path, element, targets, out, err);
  } catch (const FormatError& e) {
    err << "refinemon: " << e.what() << "\n";
    return kFormat;
  } catch (const io::json::exception& e) {
    err << "refinemon: " << e.what() << "\n";
    return kFormat;
  } catch (const BudgetError& e) {
    err << "refinemon: " << e.what() << "\n";
    return kViolation;
  } catch (const DomainError& e) {
    err << "refinemon: " << e.what() << "\n";
    return kViolation;
  } catch (const InsufficientDepthError& e) {
    err << "refinemon: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "refinemon: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace refinemon::cli
