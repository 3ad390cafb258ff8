// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "fiberlab/cli.hpp"
#include "fiberlab/error.hpp"
#include "fiberlab/facts.hpp"
#include "fiberlab/io.hpp"
#include "fiberlab/suites.hpp"
#include "fiberlab/walks.hpp"

using namespace fiberlab;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects failures, keeping the first few messages.
struct Tally {
  std::size_t failures = 0;
  std::vector<std::string> notes;

  void fail(const std::string &note) {
    if (notes.size() < 3)
      notes.push_back(note);
    ++failures;
  }
  void expect(bool ok, const std::string &note) {
    if (!ok)
      fail(note);
  }
  Outcome outcome(std::string detail) const {
    if (failures) {
      detail += "; " + std::to_string(failures) + " failures";
      for (const auto &n : notes)
        detail += "; " + n;
    }
    return {failures == 0, detail};
  }
};

Carrier share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

std::string tree_name(const FiniteTree &t, const NodeSet &s) {
  std::string out = "T{";
  for (const auto &[child, parent] : t.parent_map())
    out += child + "<" + parent + " ";
  out += "} S{";
  for (const auto &id : t.node_ids(s))
    out += id + " ";
  return out + "}";
}

// ------------------------------------------------------------ criteria

Outcome oracle_equivalence() {
  Tally tally;
  const auto pairs = corpus::subtree_pairs();
  for (const auto &p : pairs) {
    const FiberOrder f = fiber_order_oracle(corpus::quotient(p), KPoint{});
    const RPoset r = build_R(p.s, p.tree);
    tally.expect(f.order.size() == r.poset.whole.size() &&
                     are_isomorphic(f.order, r.poset.whole, 64),
                 "not isomorphic for " + tree_name(p.tree, p.s));
  }
  tally.expect(pairs.size() >= 50, "corpus has fewer than 50 pairs");
  return tally.outcome(std::to_string(pairs.size()) + " subtree pairs");
}

Outcome case_laws() {
  Tally tally;
  std::size_t doubletons = 0, singletons = 0;
  for (const auto &p : corpus::subtree_pairs()) {
    const QuotientSetting q = corpus::quotient(p);
    for (const KPoint &y : k_points(p.tree.restrict(p.s), q.n).points) {
      if (y.empty())
        continue;
      const FiberOrder f = fiber_order_oracle(q, y);
      if (y.size() == 2) {
        ++doubletons;
        tally.expect(f.order.size() == 1, "doubleton fiber " + y.to_string() + " not trivial");
      } else {
        ++singletons;
        tally.expect(are_isomorphic(f.order, chain_poset(2)),
                     "singleton fiber " + y.to_string() + " not a 2-chain");
      }
    }
  }
  return tally.outcome(std::to_string(doubletons) + " doubleton and " +
                       std::to_string(singletons) + " singleton fibers");
}

Outcome linear_successors() {
  Tally tally;
  std::size_t posets = 0, diracs = 0, refuted = 0;
  for (const Poset &p : corpus::small_posets()) {
    if (p.size() > 8)
      continue;
    ++posets;
    const SuccessorSweep s = sweep_linear_successors(share(p), 8);
    diracs += s.dirac_checks;
    refuted += s.refuted_samples;
    for (const auto &note : s.failure_notes)
      tally.fail(note);
    tally.failures += s.failures - s.failure_notes.size();
  }
  tally.expect(refuted >= 1000, "fewer than 1000 refuted samples");
  return tally.outcome(std::to_string(posets) + " posets, " + std::to_string(diracs) +
                       " Dirac checks, " + std::to_string(refuted) + " refuted samples");
}

Outcome suprema() {
  Tally tally;
  std::size_t chains = 0, certified = 0, incomparable = 0, probes = 0;
  for (const Poset &p : corpus::small_posets()) {
    if (p.size() > 8)
      continue;
    const SupremumSweep s = sweep_suprema(share(p), 8);
    chains += s.chains;
    certified += s.certified;
    incomparable += s.with_incomparable_bounds;
    probes += s.probes_refuted;
    for (const auto &note : s.failure_notes)
      tally.fail(note);
    tally.failures += s.failures - s.failure_notes.size();
  }
  // Every finite chain has a largest element, so each one has a supremum.
  tally.expect(certified == chains, "uncertified supremum");
  tally.expect(probes == incomparable, "missing counter-witness");
  return tally.outcome(std::to_string(chains) + " chains certified, " +
                       std::to_string(probes) + " incomparable-bound probes refuted");
}

Outcome sandwich_and_axioms() {
  Tally tally;
  std::size_t pairs = 0, triples = 0;
  for (const Poset &p : {corpus::diamond(), corpus::pentagon(), corpus::crown(), corpus::fence(6),
                         corpus::boolean3(), corpus::m3()}) {
    const Carrier c = share(p);
    const auto ups = corpus::brute_upsets(p);
    const auto sample = sample_measures(c, 3, 4);
    const std::size_t n = std::min<std::size_t>(sample.size(), 150);
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ++pairs;
        const bool le = leq_upset(sample[i], sample[j]);
        leq[i][j] = le;
        tally.expect(le == corpus::brute_leq_upset(sample[i], sample[j], ups),
                     "upset order disagrees with the oracle");
        if (le)
          tally.expect(leq_principal(sample[i], sample[j]), "sandwich broken");
      }
    for (std::size_t i = 0; i < n; ++i) {
      tally.expect(leq[i][i], "not reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq[i][j] && leq[j][i])
          tally.fail("not antisymmetric");
        if (!leq[i][j])
          continue;
        for (std::size_t k = 0; k < n; ++k) {
          ++triples;
          if (leq[j][k] && !leq[i][k])
            tally.fail("not transitive");
        }
      }
    }
  }
  tally.expect(pairs >= 10000, "fewer than 10^4 pairs");
  return tally.outcome(std::to_string(pairs) + " pairs, " + std::to_string(triples) +
                       " chained triples");
}

Outcome irreducibility() {
  Tally tally;
  std::size_t posets = 0, reducible = 0;
  for (const Poset &p : corpus::factorization_posets()) {
    ++posets;
    const bool irreducible = is_irreducible(p).irreducible;
    reducible += !irreducible;
    tally.expect(irreducible == !corpus::brute_factorizes(p),
                 "disagreement on a poset with " + std::to_string(p.size()) + " elements");
  }
  tally.expect(!is_irreducible(corpus::diamond()).irreducible, "diamond reported irreducible");
  tally.expect(is_irreducible(chain_poset(4)).irreducible, "4-chain reported reducible");
  std::size_t instances = 0;
  for (const auto &p : corpus::subtree_pairs()) {
    const IngredientReport r = irreducibility_ingredients(build_R(p.s, p.tree), 8);
    ++instances;
    tally.expect(r.passed(), "ingredients fail for " + tree_name(p.tree, p.s) +
                                 (r.violations.empty() ? "" : ": " + r.violations.front()));
  }
  return tally.outcome(std::to_string(posets) + " posets (" + std::to_string(reducible) +
                       " reducible), ingredients on " + std::to_string(instances) + " bounded R");
}

struct Instance {
  std::set<int> indices;
  int delta;
  int unit;
  RPoset r;
};

// Every nonempty A ⊆ {1,2,3}, m in {2,3}, every threshold δ in A and every
// admissible subtree.
std::vector<Instance> family_instances() {
  std::vector<Instance> out;
  for (int mask = 1; mask < 8; ++mask) {
    std::set<int> a;
    for (int g = 1; g <= 3; ++g)
      if (mask & (1 << (g - 1)))
        a.insert(g);
    for (int unit : {2, 3}) {
      const FiniteTree f = make_upsilon_family(a, unit, Profile::Caterpillar);
      for (int delta : a)
        for (const NodeSet &s : admissible_subtrees(f, a, delta, unit))
          out.push_back({a, delta, unit, build_R(s, f)});
    }
  }
  return out;
}

Outcome r_structure(const std::vector<Instance> &instances) {
  Tally tally;
  for (const auto &in : instances) {
    const RStructureReport rep = check_R_structure(in.r, {in.indices, in.delta, in.unit});
    for (const auto &c : rep.clauses)
      if (!c.passed)
        tally.fail(c.clause + " on " + c.subject + " (m=" + std::to_string(in.unit) +
                   ", delta=" + std::to_string(in.delta) + "): " + c.detail);
  }
  return tally.outcome(std::to_string(instances.size()) + " instances");
}

Outcome meridian(const std::vector<Instance> &instances) {
  Tally tally;
  std::size_t walks = 0, sequences = 0;
  for (const auto &in : instances) {
    const Poset &p = in.r.poset.whole;
    for (std::size_t len = 1; len <= 6; ++len)
      for (const Walk &w : enumerate_discrete_walks(in.r.carrier, len)) {
        ++walks;
        const LiftedWalk lifted = lift_walk(w);
        tally.expect(lifted.certified, "lift not certified");
        tally.expect(project_diracs(lifted.measures) == w.steps, "projection differs");
      }
    // Dirac sequences from the minimum along strictly increasing pairs:
    // certified exactly when they are discrete walks.
    std::vector<Index> seq{*p.minimum()};
    std::function<void()> grow = [&] {
      std::vector<RationalMeasure> m;
      for (Index x : seq)
        m.push_back(RationalMeasure::dirac(in.r.carrier, x));
      ++sequences;
      const bool certified = certify_linear_walk(m);
      if (certified) {
        const auto back = project_diracs(m);
        tally.expect(back && is_discrete_walk(p, *back), "certified sequence is not a walk");
      }
      tally.expect(certified == is_discrete_walk(p, seq), "certificate disagrees with covers");
      if (seq.size() == 4)
        return;
      for (Index y = 0; y < p.size(); ++y)
        if (y != seq.back() && p.leq(seq.back(), y)) {
          seq.push_back(y);
          grow();
          seq.pop_back();
        }
    };
    grow();
  }
  return tally.outcome(std::to_string(walks) + " walks lifted, " + std::to_string(sequences) +
                       " Dirac sequences checked");
}

// Verdict recomputed from walks found by the cover-matrix oracle.
bool oracle_verdict(const RPoset &r, std::size_t l1, std::size_t l2, std::size_t &short_count,
                    std::size_t &long_count) {
  const auto shorts = corpus::brute_walks(r.poset.whole, l1);
  const auto longs = corpus::brute_walks(r.poset.whole, l2);
  short_count = shorts.size();
  long_count = longs.size();
  for (const auto &w : shorts) {
    if (w.size() < 3)
      continue;
    bool meets = false;
    for (const auto &v : longs)
      meets = meets || std::equal(w.begin(), w.begin() + 3, v.begin());
    if (!meets)
      return true;
  }
  return false;
}

Outcome distinguishing() {
  Tally tally;
  const DistinguishReport rep = distinguish({2}, {3}, 2, 6, Profile::Caterpillar);
  tally.expect(rep.a_holds, "A side not true everywhere");
  tally.expect(rep.b_holds, "B side not false where non-vacuous");
  std::size_t a_count = 0, b_count = 0, b_vacuous = 0;
  for (const auto &v : rep.results) {
    const auto &indices = v.side == "A" ? rep.a : rep.b;
    const FiniteTree t = make_upsilon_family(indices, rep.unit, rep.profile);
    NodeSet s = t.full_set();
    for (const auto &id : v.missing_nodes)
      s.reset(t.index_of(id));
    std::size_t shorts = 0, longs = 0;
    const bool verdict = oracle_verdict(build_R(s, t), v.short_length, v.long_length, shorts, longs);
    const std::string where = v.side + " " + v.subtree;
    tally.expect(verdict == v.verdict, where + ": verdict differs from the oracle");
    tally.expect(shorts == v.short_walks && longs == v.long_walks, where + ": walk counts differ");
    tally.expect(v.vacuous == (shorts == 0), where + ": vacuity differs");
    if (v.side == "A")
      ++a_count;
    else {
      ++b_count;
      b_vacuous += v.vacuous;
    }
  }
  // Frozen outcome of the exhaustive enumeration.
  tally.expect(a_count == 1 && b_count == 5 && b_vacuous == 1, "subtree counts changed");
  return tally.outcome("A: " + std::to_string(a_count) + " true; B: " +
                       std::to_string(b_count - b_vacuous) + " false, " +
                       std::to_string(b_vacuous) + " vacuous");
}

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str()};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  Tally tally;
  const fs::path dir = fs::temp_directory_path() / "fiberlab_acceptance";
  fs::create_directories(dir);
  auto file = [&](const std::string &name) { return (dir / name).string(); };
  auto save = [&](const std::string &name, const std::string &text) {
    std::ofstream(file(name)) << text;
    return file(name);
  };
  const std::vector<std::string> cmd{"distinguish", "--A", "2", "--B", "3", "--delta", "2", "--m", "6"};
  const CliRun first = cli(cmd), second = cli(cmd), third = cli(cmd);
  tally.expect(first.out == second.out && second.out == third.out, "distinguish output differs");
  const CliRun verified = cli({"distinguish", "--verify", save("report.json", first.out)});
  tally.expect(verified.status == kExitOk, "stored report not reproduced");

  // Each artifact read back and written again gives the same document.
  const CliRun tree = cli({"tree", "build", "--indices", "1,2", "--m", "2"});
  const Json tree_json = Json::parse(tree.out);
  tally.expect(to_json(tree_from_json(tree_json)) == tree_json, "tree round trip");
  const std::string tree_file = save("tree.json", tree.out);
  const CliRun r = cli({"r", "build", "--tree", tree_file, "--m", "2", "--delta", "1"});
  const Json r_json = Json::parse(r.out);
  Json stripped = r_json;
  stripped.erase("structure");
  tally.expect(to_json(rposet_from_json(r_json)) == stripped, "R round trip");
  tally.expect(cli({"r", "check", "--input", save("r.json", r.out), "--m", "2", "--delta", "1"})
                       .status == kExitOk,
               "r check rejects its own output");
  const Json poset_json = r_json.at("poset");
  tally.expect(to_json(poset_from_json(poset_json)) == poset_json, "poset round trip");
  const Carrier c = share(poset_from_json(poset_json));
  for (const auto &m : sample_measures(c, 2, 3))
    tally.expect(measure_from_json(to_json(m)).masses() == m.masses(), "measure round trip");
  const CliRun walks = cli({"walks", "enum", "--r", file("r.json"), "--length", "4"});
  const Json walks_json = Json::parse(walks.out);
  for (const auto &w : walks_json.at("walks")) {
    std::vector<Index> steps;
    for (const auto &id : w)
      steps.push_back(c->index_of(id.get<std::string>()));
    tally.expect(is_discrete_walk(*c, steps), "emitted walk is not a walk");
  }
  tally.expect(cli({"tree", "build", "--indices", "1,2", "--m", "2"}).out == tree.out,
               "tree build differs between runs");
  fs::remove_all(dir);
  return tally.outcome("3 identical distinguish runs, report reproduced, artifacts round trip");
}

struct Criterion {
  int number;
  const char *name;
  double limit_seconds;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  std::vector<Instance> instances;
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 60, oracle_equivalence},
      {2, "case laws", 10, case_laws},
      {3, "linear successors", 300, linear_successors},
      {4, "suprema of Dirac chains", 60, suprema},
      {5, "sandwich and order axioms", 120, sandwich_and_axioms},
      {6, "irreducibility", 300, irreducibility},
      {7, "R structure", 60,
       [&] {
         instances = family_instances();
         return r_structure(instances);
       }},
      {8, "walk correspondence", 120, [&] { return meridian(instances); }},
      {9, "distinguishing experiment", 300, distinguishing},
      {10, "CLI determinism", 60, cli_determinism},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = o.passed && in_time;
    failed += !ok;
    std::printf("[%s] %2d %-26s %8.2fs / %3.0fs  %s%s\n", ok ? "PASS" : "FAIL", c.number, c.name,
                secs, c.limit_seconds, o.detail.c_str(), in_time ? "" : "; over the time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
