// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "json_io.hpp"
#include "refinemon/divisibility.hpp"
#include "refinemon/fixtures.hpp"
#include "refinemon/lattice.hpp"
#include "refinemon/numerical_semigroup.hpp"
#include "refinemon/resolution.hpp"
#include "refinemon/tower.hpp"
#include "support.hpp"

using namespace refinemon;
namespace fs = std::filesystem;
using testing::nat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0 for none
  std::function<Outcome()> body;
};

// Fixtures with at most 5 elements, built into towers once and shared by criteria 2 to 5.
struct BuiltTower {
  std::string name;
  bool semilattice;
  std::unique_ptr<CayleyMonoid> m;
  std::unique_ptr<Tower<CayleyMonoid>> t;
};

std::vector<BuiltTower>& towers() {
  static std::vector<BuiltTower> all = [] {
    std::vector<BuiltTower> out;
    for (const auto& f : fixtures::finite_fixtures()) {
      if (f.table.names.size() > 5) continue;
      BuiltTower b{f.name, f.semilattice, std::make_unique<CayleyMonoid>(f.table), nullptr};
      b.t = std::make_unique<Tower<CayleyMonoid>>(*b.m, kDefaultRankBudget);
      b.t->extend_to(b.m->size() - 1 + 2);
      out.push_back(std::move(b));
    }
    return out;
  }();
  return all;
}

Outcome rank_law() {
  std::mt19937 rng(1);
  const FreeMonoid z(1);
  std::vector<std::unique_ptr<CayleyMonoid>> lattices;
  for (const auto& f : fixtures::finite_fixtures())
    if (f.semilattice) lattices.push_back(std::make_unique<CayleyMonoid>(f.table));
  std::size_t instances = 0, bad = 0;
  auto run_one = [&](const auto& m, const auto& alpha, std::size_t pivot) {
    IndexSet rest;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (i != pivot) rest = rest | IndexSet{i};
    if (!oracle_propto(m, alpha[pivot], subset_image(m, alpha, rest))) return;
    ++instances;
    const Natural least = *m.decide_propto(alpha[pivot], subset_image(m, alpha, rest));
    const std::size_t n = least.is_zero() ? 1 : least.as_u64();
    const auto res = Resolver(m, kMaxRankBudget).basis_split(alpha, pivot, rest);
    bool ok = res.delta.rank == (n + 1) * (alpha.size() - 1);
    for (std::size_t i = 0; i < alpha.size(); ++i) ok = ok && m.equal(image(m, res.alpha, res.beta.column(i)), alpha[i]);
    if (!ok) ++bad;
  };
  while (instances < 200) {
    const std::size_t r = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    const std::size_t pivot = std::uniform_int_distribution<std::size_t>(0, r - 1)(rng);
    if (instances % 2 == 0) {
      std::vector<Element> alpha;
      for (std::size_t i = 0; i < r; ++i) alpha.push_back(nat(std::uniform_int_distribution<unsigned>(0, 6)(rng)));
      run_one(z, alpha, pivot);
    } else {
      const auto& m = *lattices[std::uniform_int_distribution<std::size_t>(0, lattices.size() - 1)(rng)];
      std::vector<ElementId> alpha;
      for (std::size_t i = 0; i < r; ++i)
        alpha.push_back(m.element(std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng)));
      run_one(m, alpha, pivot);
    }
  }
  return {bad == 0, std::to_string(instances) + " instances, " + std::to_string(bad) + " violations"};
}

Outcome propagation() {
  std::size_t pairs = 0, violations = 0, stages = 0;
  for (auto& b : towers()) {
    const auto& st = b.t->stages();
    for (std::size_t j = 0; j + 1 < st.size(); ++j) {
      ++stages;
      const std::size_t r = st[j].delta.rank;
      std::vector<ElementId> img(std::size_t{1} << r);
      std::vector<Element> bimg(std::size_t{1} << r);
      for (std::uint64_t S = 0; S < img.size(); ++S) {
        const IndexSet Ss = IndexSet::from_mask(S);
        img[S] = subset_image(*b.m, st[j].alpha, Ss);
        bimg[S] = (*st[j].beta)(basis_sum(st[j].delta, Ss));
      }
      for (std::uint64_t J = 0; J < img.size(); ++J)
        for (std::uint64_t I = 0; I < img.size(); ++I) {
          if (!oracle_propto(*b.m, img[J], img[I])) continue;
          ++pairs;
          if (!propto(bimg[J], bimg[I])) ++violations;
        }
    }
  }
  return {violations == 0, std::to_string(towers().size()) + " fixtures, " + std::to_string(stages) + " stages, " +
                               std::to_string(pairs) + " related pairs, " + std::to_string(violations) + " violations"};
}

Outcome colimit() {
  std::size_t pairs = 0, discrepancies = 0;
  for (auto& b : towers()) {
    const auto& st = b.t->stages();
    std::vector<ColimitElement> elems;
    for (std::size_t j = 0; j + 1 < st.size(); ++j)
      for (std::size_t i = 0; i < st[j].delta.rank; ++i) elems.push_back({j, basis_element(st[j].delta, i)});
    for (const auto& a : elems)
      for (const auto& c : elems) {
        if (pairs >= 10000 * towers().size()) break;
        ++pairs;
        const bool want = oracle_propto(*b.m, colimit_alpha(*b.t, a), colimit_alpha(*b.t, c));
        try {
          const auto got = colimit_propto(*b.t, a, c);
          bool ok = got.holds == want;
          if (ok && got.holds) {
            const Element x = push_forward(st, a, got.stage), y = push_forward(st, c, got.stage);
            ok = leq(x, Element(got.n * y));
          }
          if (!ok) ++discrepancies;
        } catch (const std::exception&) {
          ++discrepancies;
        }
      }
  }
  return {discrepancies == 0, std::to_string(pairs) + " colimit pairs, " + std::to_string(discrepancies) + " discrepancies"};
}

Outcome lattice_iso() {
  std::size_t ok = 0;
  std::string failures;
  for (auto& b : towers()) {
    const auto rep = check_lattice_iso_criterion(*b.t);
    if (rep.holds() && rep.lattice_checked && rep.preimage_bijective)
      ++ok;
    else
      failures += " " + b.name;
  }
  const FreeMonoid z(1);
  const auto neg = check_lattice_iso_criterion(z, std::vector<Element>{nat(1), nat(1)});
  const bool control = !neg.holds() && neg.source_ideals == 4 && neg.target_ideals == 2;
  std::string detail = std::to_string(ok) + "/" + std::to_string(towers().size()) + " fixtures verified";
  if (!failures.empty()) detail += " (failed:" + failures + ")";
  detail += control ? "; (a,b)->a+b control rejected" : "; (a,b)->a+b control NOT rejected";
  return {ok == towers().size() && control, detail};
}

Outcome nabla_transfer() {
  const auto nz = nabla(FreeMonoid(1));
  bool pass = nz.quotient.size() == 2;
  std::size_t semis = 0, iso = 0, transfers = 0;
  for (const auto& f : fixtures::finite_fixtures()) {
    if (!f.semilattice) continue;
    ++semis;
    const CayleyMonoid m(f.table);
    if (find_isomorphism(m, nabla(m).quotient)) ++iso;
  }
  for (auto& b : towers())
    if (check_nabla_transfer(*b.t, nabla(*b.m)).ok()) ++transfers;
  pass = pass && iso == semis && transfers == towers().size();
  return {pass, "nabla(Z+) has " + std::to_string(nz.quotient.size()) + " classes; " + std::to_string(iso) + "/" +
                    std::to_string(semis) + " semilattices fixed; " + std::to_string(transfers) + "/" +
                    std::to_string(towers().size()) + " tower maps are isomorphisms"};
}

Outcome weak_divisibility() {
  const FreeMonoid z(1);
  std::size_t agree = 0, incomplete = 0, wrong = 0, certificates = 0;
  for (const std::vector<std::uint64_t> targets :
       {std::vector<std::uint64_t>{2, 3}, {3, 4, 5}, {5, 7}, {4, 6}}) {
    std::uint64_t d = 0;
    for (auto t : targets) d = std::gcd(d, t);
    for (unsigned x = 0; x <= 100; ++x) {
      if (x % d != 0) continue;
      const bool exists = testing::brute_combination(x, targets);
      try {
        const auto c = weak_divide(z, nat(x), targets);
        ++certificates;
        if (c.validate(z) && exists)
          ++agree;
        else
          ++wrong;
      } catch (const NotWeaklyDivisibleError&) {
        if (exists)
          ++incomplete;
        else
          ++agree;
      } catch (const std::exception&) {
        ++wrong;
      }
    }
  }
  bool designated = false;
  try {
    weak_divide(z, nat(1), {2, 3});
  } catch (const NotWeaklyDivisibleError& e) {
    designated = e.element() == z.describe(nat(1));
  }
  std::size_t frob_bad = 0, frob_pairs = 0;
  for (std::uint64_t a = 2; a <= 12; ++a)
    for (std::uint64_t b = a + 1; b <= 12; ++b) {
      if (std::gcd(a, b) != 1) continue;
      ++frob_pairs;
      const auto f = frobenius_bound({a, b});
      if (f != testing::brute_frobenius({a, b}) || f != (a - 1) * (b - 1)) ++frob_bad;
    }
  return {wrong == 0 && designated && frob_bad == 0,
          std::to_string(agree) + " agree, " + std::to_string(incomplete) +
              " expected-incompleteness (degree-2 expansion hit 1), " + std::to_string(wrong) + " wrong; " +
              std::to_string(certificates) + " certificates re-validated; x=1 error " +
              (designated ? "raised" : "MISSING") + "; frobenius " + std::to_string(frob_pairs - frob_bad) + "/" +
              std::to_string(frob_pairs) + " pairs"};
}

Outcome promotion() {
  const FreeMonoid z(1);
  std::mt19937 rng(2);
  std::size_t done = 0, bad = 0;
  while (done < 100) {
    const unsigned y = std::uniform_int_distribution<unsigned>(0, 50)(rng);
    const unsigned x = std::uniform_int_distribution<unsigned>(y, 50)(rng);
    if (y == 0 && x != 0) continue;  // x ∝ 0 only for x = 0
    const unsigned n = std::uniform_int_distribution<unsigned>(1, 4)(rng);
    DivisibilityCertificate<Element> cert;
    try {
      cert = weak_divide(z, nat(y), {n, n + 1});
    } catch (const DomainError&) {
      continue;
    }
    ++done;
    try {
      const auto p = promote_divisibility(z, nat(x), nat(y), cert, Natural(1000));
      if (!p.validate(z) || !(p.min_target() >= Natural(n)) || !(p.x == nat(x))) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(done) + " instances, " + std::to_string(bad) + " failures"};
}

Outcome axioms() {
  const auto z2 = verify_axioms(fixtures::z2());
  bool pass = !z2.ok() && !z2.holds(Axiom::conicality);
  std::size_t accepted = 0, total = 0, quads = 0;
  for (const auto& f : fixtures::finite_fixtures()) {
    ++total;
    const auto rep = verify_axioms(f.table, f.semilattice);
    quads += rep.refinement_instances;
    if (!rep.ok()) continue;
    const CayleyMonoid m(f.table);
    bool witnesses = true;
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        for (std::size_t c = 0; c < m.size(); ++c)
          for (std::size_t d = 0; d < m.size(); ++d) {
            const auto x0 = m.element(a), x1 = m.element(b), y0 = m.element(c), y1 = m.element(d);
            if (!m.equal(m.add(x0, x1), m.add(y0, y1))) continue;
            try {
              check_refinement(m, x0, x1, y0, y1, m.refine(x0, x1, y0, y1));
            } catch (const std::exception&) {
              witnesses = false;
            }
          }
    if (witnesses) ++accepted;
  }
  pass = pass && accepted == total;
  return {pass, std::string("Z/2 ") + (z2.holds(Axiom::conicality) ? "accepted" : "rejected (conicality)") + "; " +
                    std::to_string(accepted) + "/" + std::to_string(total) + " fixtures pass, " +
                    std::to_string(quads) + " refinement instances"};
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// First beta entry whose increment changes alpha_{j+1}(beta_j(e_c)).
template <class M>
bool mutate(const M& m, io::json& doc) {
  io::TowerDocument meta;
  const auto stages = io::tower_from_json(m, doc, meta);
  for (std::size_t j = 0; j + 1 < stages.size(); ++j)
    for (std::size_t c = 0; c < stages[j].delta.rank; ++c)
      for (std::size_t r = 0; r < stages[j + 1].delta.rank; ++r) {
        const auto before = image(m, stages[j + 1].alpha, stages[j].beta->column(c));
        if (m.equal(m.add(before, stages[j + 1].alpha[r]), before)) continue;
        auto& entry = doc["stages"][j]["beta"]["columns"][c][r];
        entry = io::to_json(io::natural_from_json(entry) + Natural(1));
        return true;
      }
  return false;
}

Outcome determinism() {
  const fs::path specs = fs::path(REFINEMON_SOURCE_DIR) / "data" / "specs";
  const fs::path dir = fs::temp_directory_path() / "refinemon_acceptance";
  fs::create_directories(dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(specs)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::size_t checked = 0;
  std::string failures;
  for (const auto& spec : files) {
    const auto parsed = io::load_spec(spec);
    if (cli({"check", spec.string()}) != 0) continue;  // z2 is not a refinement monoid
    const auto oracle = io::make_oracle(parsed);
    const std::size_t depth = parsed.finite() ? std::get<CayleyMonoid>(oracle).size() + 1 : 3;
    const fs::path a = dir / (spec.stem().string() + ".a.json"), b = dir / (spec.stem().string() + ".b.json");
    const std::string d = std::to_string(depth);
    ++checked;
    const bool built = cli({"resolve", spec.string(), "--depth", d, "--out", a.string()}) == 0 &&
                       cli({"resolve", spec.string(), "--depth", d, "--out", b.string()}) == 0;
    const bool same = built && slurp(a) == slurp(b);
    const bool verified = built && cli({"verify-tower", a.string(), spec.string()}) == 0;
    io::json doc = io::read_json(a);
    const bool mutated = std::visit([&](const auto& m) { return mutate(m, doc); }, oracle);
    const fs::path bad = dir / (spec.stem().string() + ".mutated.json");
    std::ofstream(bad, std::ios::binary) << io::dump(doc);
    const bool caught = mutated && cli({"verify-tower", bad.string(), spec.string()}) == 1;
    if (!(same && verified && caught))
      failures += " " + spec.stem().string() + "(" + (same ? "" : "bytes ") + (verified ? "" : "verify ") +
                  (caught ? "" : "mutation") + ")";
  }
  return {failures.empty(), std::to_string(checked) + " spec files: identical bytes, verify exit 0, mutation exit 1" +
                                (failures.empty() ? "" : "; failed:" + failures)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rank law of basis_split", 10, rank_law},
      {2, "propagation on finite fixture towers", 60, propagation},
      {3, "colimit characterization of ∝", 0, colimit},
      {4, "ideal-lattice isomorphism criterion", 0, lattice_iso},
      {5, "∇ transfer", 0, nabla_transfer},
      {6, "weak divisibility and Frobenius bound", 10, weak_divisibility},
      {7, "promote_divisibility", 0, promotion},
      {8, "axiom verifier", 0, axioms},
      {9, "determinism and tower verification", 0, determinism},
  };
  int failed = 0;
  double tower_seconds = 0;
  {
    const auto t0 = std::chrono::steady_clock::now();
    towers();
    tower_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.id == 2) secs += tower_seconds;  // tower construction is part of this criterion's budget
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail << " ["
              << timing << "]\n";
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
