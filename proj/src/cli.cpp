#include "fiberlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "fiberlab/error.hpp"
#include "fiberlab/io.hpp"
#include "fiberlab/suites.hpp"

namespace fiberlab {

namespace {

struct Options {
  std::string out_path;
  std::string format = "json";

  // sources
  std::string tree_path, poset_path, r_path, mu_path, nu_path, report_path;
  std::string subtree;
  std::string indices;
  int gamma = 0;
  int unit = 0;
  std::string profile = "caterpillar";
  std::optional<int> delta;

  // distinguish
  std::string a, b;

  // fiber oracle
  std::string colors_m = "c";
  std::string colors_n = "c";
  std::string point;

  // caps and sampling
  std::int64_t denominator = 8;
  std::size_t per_element = 0;
  std::size_t length = 0;
  std::size_t walk_cap = kDefaultWalkCap;
  std::size_t subtree_cap = 4096;
  std::size_t node_cap = kDefaultTreeCap;
  std::size_t iso_cap = kDefaultIsoCap;
  std::string suite = "all";
};

Json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::InvalidInput, "'" + path + "' is not JSON: " + e.what());
  }
}

class Runner {
public:
  Runner(const Options &o, std::ostream &out) : o_(o), out_(out) {}

  void emit(const Json &j) { emit_text(j.dump(2) + "\n"); }

  void emit_text(const std::string &text) {
    if (o_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(o_.out_path);
    if (!file)
      throw Error(ErrorCode::InvalidInput, "cannot write '" + o_.out_path + "'");
    file << text;
  }

  bool dot() const { return o_.format == "dot"; }

  FiniteTree tree() const {
    if (!o_.tree_path.empty())
      return tree_from_json(read_json(o_.tree_path));
    if (!o_.indices.empty() && o_.unit > 0)
      return make_upsilon_family(parse_index_set(o_.indices), o_.unit, parse_profile(o_.profile),
                                 o_.node_cap);
    throw Error(ErrorCode::InvalidInput, "give --tree, or --indices with --m");
  }

  NodeSet subtree(const FiniteTree &t) const {
    if (o_.subtree.empty())
      return t.full_set();
    const auto ids = split_ids(o_.subtree);
    for (const auto &id : ids)
      if (!t.find(id))
        throw Error(ErrorCode::UnknownElement, "--subtree names unknown node '" + id + "'");
    return t.node_set(ids);
  }

  std::set<int> family_indices(const FiniteTree &t) const {
    if (!o_.indices.empty())
      return parse_index_set(o_.indices);
    std::set<int> out;
    for (const auto &block : family_blocks(t))
      out.insert(block.index);
    return out;
  }

  int family_unit() const {
    if (o_.unit < 1)
      throw Error(ErrorCode::InvalidInput, "--m is required with --delta");
    return o_.unit;
  }

  Carrier carrier() const {
    if (!o_.poset_path.empty())
      return std::make_shared<const Poset>(poset_from_json(read_json(o_.poset_path)));
    if (!o_.r_path.empty())
      return rposet_from_json(read_json(o_.r_path)).carrier;
    throw Error(ErrorCode::InvalidInput, "give --poset or --r");
  }

  int tree_build() {
    FiniteTree t;
    if (!o_.indices.empty())
      t = make_upsilon_family(parse_index_set(o_.indices), o_.unit, parse_profile(o_.profile),
                              o_.node_cap);
    else
      t = make_upsilon({o_.unit, o_.gamma, parse_profile(o_.profile)}, o_.node_cap);
    if (dot())
      emit_text(tree_dot(t));
    else
      emit(to_json(t));
    return kExitOk;
  }

  int tree_check() {
    const FiniteTree t = tree();
    const TreeStats st = tree_stats(t);
    Json j{{"nodes", t.size()},
           {"height", st.height},
           {"max_branch_length", st.max_branch_length},
           {"ever_branching", st.ever_branching},
           {"level_sizes", st.level_sizes}};
    int status = kExitOk;
    if (!o_.subtree.empty() || o_.delta) {
      const NodeSet s = subtree(t);
      const bool rooted = t.is_subtree(s);
      j["subtree"] = {{"nodes", s.count()}, {"rooted", rooted}};
      if (!rooted)
        status = kExitViolation;
      if (rooted && o_.delta) {
        const auto v = is_in_family_F(s, t, family_indices(t), *o_.delta, family_unit());
        j["family"] = {{"member", v.member}, {"reasons", v.reasons}};
        if (!v.member)
          status = kExitViolation;
      }
    }
    emit(j);
    return status;
  }

  int r_report(const RPoset &r, Json j) {
    int status = kExitOk;
    if (o_.delta) {
      const FamilyContext ctx{family_indices(r.tree), *o_.delta, family_unit(),
                              parse_profile(o_.profile), std::max<std::size_t>(o_.iso_cap, 128)};
      const auto report = check_R_structure(r, ctx);
      j["structure"] = to_json(report);
      if (!report.passed())
        status = kExitViolation;
    }
    if (dot())
      emit_text(hasse_dot(r.poset.whole, {}, "R"));
    else
      emit(j);
    return status;
  }

  int r_build() {
    const FiniteTree t = tree();
    const RPoset r = build_R(subtree(t), t);
    return r_report(r, to_json(r));
  }

  int r_check() {
    const RPoset r = rposet_from_json(read_json(o_.r_path));
    return r_report(r, {{"consistent", true},
                        {"elements", r.poset.whole.size()},
                        {"inner_minimum", r.root_element()}});
  }

  int fiber_oracle() {
    const FiniteTree t = tree();
    QuotientSetting q{t, subtree(t), {split_ids(o_.colors_m), true}, {split_ids(o_.colors_n), true}};
    KPoint y;
    if (!o_.point.empty()) {
      std::vector<KPair> pairs;
      for (const auto &item : split_ids(o_.point)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw Error(ErrorCode::InvalidInput, "--point items are node:color, got '" + item + "'");
        pairs.push_back({item.substr(0, colon), item.substr(colon + 1)});
      }
      y = KPoint::make(std::move(pairs), t);
    }
    const FiberOrder f = fiber_order_oracle(q, y);
    Poset expected;
    std::string kind;
    if (y.empty()) {
      expected = build_R(q.s, t).poset.whole;
      kind = "bounded R";
    } else if (y.size() == 1) {
      expected = chain_poset(2);
      kind = "2-chain";
    } else {
      expected = chain_poset(1);
      kind = "single element";
    }
    const bool agrees = expected.size() == f.order.size() &&
                        are_isomorphic(f.order, expected, std::max(o_.iso_cap, f.order.size()));
    Json j{{"point", to_json(y)},
           {"oracle", to_json(f)},
           {"expected", {{"kind", kind}, {"order", to_json(expected)}}},
           {"isomorphic", agrees}};
    emit(j);
    return agrees ? kExitOk : kExitViolation;
  }

  int measure_order() {
    const Json mu_doc = read_json(o_.mu_path);
    const Json nu_doc = read_json(o_.nu_path);
    const RationalMeasure mu = measure_from_json(mu_doc);
    const RationalMeasure nu = measure_from_json(nu_doc, mu.carrier_ptr());
    if (!(poset_from_json(nu_doc.at("carrier")) == mu.carrier()))
      throw Error(ErrorCode::CarrierMismatch, "measures live on different posets");
    auto witness = [&](const RationalMeasure &x, const RationalMeasure &z) {
      const auto t = principal_witness(x, z);
      return t ? Json(mu.carrier().id(*t)) : Json(nullptr);
    };
    emit({{"mu_leq_nu", {{"upsets", leq_upset(mu, nu)}, {"principal", leq_principal(mu, nu)},
                         {"principal_witness", witness(mu, nu)}}},
          {"nu_leq_mu", {{"upsets", leq_upset(nu, mu)}, {"principal", leq_principal(nu, mu)},
                         {"principal_witness", witness(nu, mu)}}}});
    return kExitOk;
  }

  int facts_verify() {
    const Carrier p = carrier();
    const bool all = o_.suite == "all";
    Json j{{"elements", p->size()}, {"denominator", o_.denominator}};
    bool ok = true;
    if (all || o_.suite == "successor") {
      const auto s = sweep_linear_successors(p, o_.denominator, o_.per_element);
      j["successor"] = {{"dirac_checks", s.dirac_checks},
                        {"refuted_samples", s.refuted_samples},
                        {"failures", s.failures},
                        {"failure_notes", s.failure_notes}};
      ok = ok && s.failures == 0;
    }
    if (all || o_.suite == "supremum") {
      const auto s = sweep_suprema(p, o_.denominator);
      j["supremum"] = {{"chains", s.chains},
                       {"certified", s.certified},
                       {"with_incomparable_bounds", s.with_incomparable_bounds},
                       {"probes_refuted", s.probes_refuted},
                       {"failures", s.failures},
                       {"failure_notes", s.failure_notes}};
      ok = ok && s.failures == 0;
    }
    if (all || o_.suite == "ingredients") {
      const auto least = p->minimum();
      if (least && p->upper_covers(*least).size() == 1) {
        const auto r = irreducibility_ingredients(p, *least, o_.denominator);
        j["ingredients"] = to_json(r);
        ok = ok && r.passed();
      } else if (o_.suite == "ingredients") {
        throw Error(ErrorCode::ParameterViolation,
                    "ingredients need a minimum with exactly one cover");
      } else {
        j["ingredients"] = "skipped: no minimum with exactly one cover";
      }
    }
    j["passed"] = ok;
    emit(j);
    return ok ? kExitOk : kExitViolation;
  }

  int walks_enum() {
    const Carrier p = carrier();
    const auto walks = enumerate_discrete_walks(p, o_.length, o_.walk_cap);
    if (dot()) {
      emit_text(hasse_dot(*p, walks.empty() ? std::vector<Index>{} : walks.front().steps, "walks"));
      return kExitOk;
    }
    Json list = Json::array();
    for (const auto &w : walks)
      list.push_back(to_json(w));
    emit({{"length", o_.length},
          {"walk_length", "number of elements"},
          {"count", walks.size()},
          {"walks", list}});
    return kExitOk;
  }

  int distinguish_cmd() {
    DistinguishReport params;
    if (!o_.report_path.empty()) {
      params = distinguish_parameters_from_json(read_json(o_.report_path));
    } else {
      if (o_.a.empty() || o_.b.empty() || !o_.delta || o_.unit < 1)
        throw Error(ErrorCode::InvalidInput, "--A, --B, --delta and --m are required");
      params.a = parse_index_set(o_.a);
      params.b = parse_index_set(o_.b);
      params.delta = *o_.delta;
      params.unit = o_.unit;
      params.profile = parse_profile(o_.profile);
    }
    const DistinguishCaps caps{o_.subtree_cap, o_.walk_cap, o_.node_cap};
    const auto report =
        distinguish(params.a, params.b, params.delta, params.unit, params.profile, caps);
    const Json j = to_json(report);

    if (!o_.report_path.empty()) {
      const bool same = j == read_json(o_.report_path);
      emit({{"reproduced", same}});
      return same ? kExitOk : kExitViolation;
    }
    if (dot()) {
      auto it = std::find_if(report.results.begin(), report.results.end(),
                             [](const auto &v) { return !v.witness_walk.empty(); });
      if (it == report.results.end()) {
        emit_text("digraph \"R\" {\n}\n");
      } else {
        const auto &indices = it->side == "A" ? report.a : report.b;
        const FiniteTree t = make_upsilon_family(indices, report.unit, report.profile, caps.tree_nodes);
        NodeSet s = t.full_set();
        for (const auto &id : it->missing_nodes)
          s.reset(t.index_of(id));
        const RPoset r = build_R(s, t);
        std::vector<Index> path;
        for (const auto &id : it->witness_walk)
          path.push_back(r.poset.whole.index_of(id));
        emit_text(hasse_dot(r.poset.whole, path, it->side + " " + it->subtree));
      }
    } else {
      emit(j);
    }
    return report.a_holds && report.b_holds ? kExitOk : kExitViolation;
  }

  int poset_check() {
    const Json doc = read_json(o_.poset_path);
    const Poset p = poset_from_json(doc);
    Json j{{"elements", p.size()},
           {"covers", p.cover_count()},
           {"comparable_pairs", p.comparable_pairs()},
           {"round_trip", to_json(p) == doc}};
    j["minimum"] = p.minimum() ? Json(p.id(*p.minimum())) : Json(nullptr);
    j["maximum"] = p.maximum() ? Json(p.id(*p.maximum())) : Json(nullptr);
    if (p.size() <= o_.iso_cap) {
      const auto v = is_irreducible(p, o_.iso_cap);
      j["irreducible"] = v.irreducible;
      if (!v.irreducible)
        j["factors"] = {to_json(*v.left), to_json(*v.right)};
    }
    if (dot())
      emit_text(hasse_dot(p));
    else
      emit(j);
    return kExitOk;
  }

private:
  const Options &o_;
  std::ostream &out_;
};

void add_output(CLI::App *cmd, Options &o, bool dot) {
  cmd->add_option("--out", o.out_path, "Write the artifact here instead of stdout");
  if (dot)
    cmd->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
}

void add_tree_source(CLI::App *cmd, Options &o) {
  cmd->add_option("--tree", o.tree_path, "Tree JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--indices", o.indices, "Family indices, e.g. 1,2 (builds the family tree)");
  cmd->add_option("--m", o.unit, "Unit length")->check(CLI::PositiveNumber);
  cmd->add_option("--profile", o.profile, "caterpillar or complete-binary");
  cmd->add_option("--subtree", o.subtree, "Comma-separated nodes of S (default: all of T)");
}

void add_delta(CLI::App *cmd, Options &o, const std::string &what) {
  cmd->add_option_function<int>("--delta", [&o](int d) { o.delta = d; }, what);
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Finite fiber orders of compacta: constructions, checks and the walk experiment"};
  app.require_subcommand(1);

  auto *tree = app.add_subcommand("tree", "Family trees")->require_subcommand(1);
  auto *tree_build = tree->add_subcommand("build", "Build a tree, or a family tree with --indices");
  tree_build->add_option("--gamma", o.gamma, "Index of a single tree")->check(CLI::PositiveNumber);
  tree_build->add_option("--m", o.unit, "Unit length")->required()->check(CLI::PositiveNumber);
  tree_build->add_option("--profile", o.profile, "caterpillar or complete-binary");
  tree_build->add_option("--indices", o.indices, "Family indices, e.g. 1,2");
  tree_build->add_option("--node-cap", o.node_cap, "Refuse trees with more nodes");
  add_output(tree_build, o, true);
  auto *tree_check = tree->add_subcommand("check", "Statistics and family membership");
  add_tree_source(tree_check, o);
  add_delta(tree_check, o, "Check family membership of --subtree at this threshold");
  add_output(tree_check, o, false);

  auto *r = app.add_subcommand("r", "The poset of comparability sets")->require_subcommand(1);
  auto *r_build = r->add_subcommand("build", "Build R with bounds from T and S");
  add_tree_source(r_build, o);
  add_delta(r_build, o, "Also check the structure clauses at this threshold");
  r_build->add_option("--iso-cap", o.iso_cap, "Size cap for isomorphism tests");
  add_output(r_build, o, true);
  auto *r_check = r->add_subcommand("check", "Re-read an R file and verify it");
  r_check->add_option("--input", o.r_path, "R JSON file")->required()->check(CLI::ExistingFile);
  r_check->add_option("--indices", o.indices, "Family indices (default: read from the tree)");
  r_check->add_option("--m", o.unit, "Unit length")->check(CLI::PositiveNumber);
  r_check->add_option("--profile", o.profile, "caterpillar or complete-binary");
  add_delta(r_check, o, "Also check the structure clauses at this threshold");
  add_output(r_check, o, false);

  auto *fiber = app.add_subcommand("fiber", "Fiber orders of the quotient map")->require_subcommand(1);
  auto *fiber_oracle = fiber->add_subcommand("oracle", "Fiber order from neighborhoods vs R");
  add_tree_source(fiber_oracle, o);
  fiber_oracle->add_option("--colors-m", o.colors_m, "Named colors of M (more are implied)");
  fiber_oracle->add_option("--colors-n", o.colors_n, "Named colors of N (more are implied)");
  fiber_oracle->add_option("--point", o.point, "Point y of K[S,N] as node:color,... (default empty)");
  fiber_oracle->add_option("--iso-cap", o.iso_cap, "Size cap for isomorphism tests");
  add_output(fiber_oracle, o, false);

  auto *measure = app.add_subcommand("measure", "Measures on a poset")->require_subcommand(1);
  auto *measure_order = measure->add_subcommand("order", "Compare two measures");
  measure_order->add_option("--mu", o.mu_path, "Measure JSON")->required()->check(CLI::ExistingFile);
  measure_order->add_option("--nu", o.nu_path, "Measure JSON")->required()->check(CLI::ExistingFile);
  add_output(measure_order, o, false);

  auto *facts = app.add_subcommand("facts", "Successor and supremum certificates")->require_subcommand(1);
  auto *facts_verify = facts->add_subcommand("verify", "Run the certificate suites on a poset");
  facts_verify->add_option("--poset", o.poset_path, "Poset JSON file")->check(CLI::ExistingFile);
  facts_verify->add_option("--r", o.r_path, "R JSON file")->check(CLI::ExistingFile);
  facts_verify->add_option("--denominator", o.denominator, "Largest common denominator sampled")
      ->check(CLI::Range(1, 64));
  facts_verify->add_option("--per-element", o.per_element, "Sampled measures per element (0: all)");
  facts_verify->add_option("--suite", o.suite, "all, successor, supremum or ingredients")
      ->check(CLI::IsMember({"all", "successor", "supremum", "ingredients"}));
  add_output(facts_verify, o, false);

  auto *walks = app.add_subcommand("walks", "Discrete walks")->require_subcommand(1);
  auto *walks_enum = walks->add_subcommand("enum", "Enumerate walks with a given number of elements");
  walks_enum->add_option("--poset", o.poset_path, "Poset JSON file")->check(CLI::ExistingFile);
  walks_enum->add_option("--r", o.r_path, "R JSON file")->check(CLI::ExistingFile);
  walks_enum->add_option("--length", o.length, "Number of elements")->required()->check(CLI::PositiveNumber);
  walks_enum->add_option("--walk-cap", o.walk_cap, "Refuse beyond this many walks");
  add_output(walks_enum, o, true);

  auto *dist = app.add_subcommand("distinguish", "Walk experiment on two index sets");
  dist->add_option("--A", o.a, "Indices of the first family, e.g. 2");
  dist->add_option("--B", o.b, "Indices of the second family, e.g. 3");
  add_delta(dist, o, "Threshold, in A and not in B");
  dist->add_option("--m", o.unit, "Unit length (at least 6)");
  dist->add_option("--profile", o.profile, "caterpillar or complete-binary");
  dist->add_option("--subtree-cap", o.subtree_cap, "Refuse beyond this many admissible subtrees");
  dist->add_option("--walk-cap", o.walk_cap, "Refuse beyond this many walks");
  dist->add_option("--node-cap", o.node_cap, "Refuse trees with more nodes");
  dist->add_option("--verify", o.report_path, "Re-run a stored report and compare")
      ->check(CLI::ExistingFile);
  add_output(dist, o, true);

  auto *poset = app.add_subcommand("poset", "Finite posets")->require_subcommand(1);
  auto *poset_check = poset->add_subcommand("check", "Read a poset and summarize it");
  poset_check->add_option("--poset", o.poset_path, "Poset JSON file")->required()->check(CLI::ExistingFile);
  poset_check->add_option("--iso-cap", o.iso_cap, "Size cap for the factorization test");
  add_output(poset_check, o, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    std::ostringstream help;
    const int code = app.exit(e, help, err);
    out << help.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  Runner run(o, out);
  try {
    if (tree_build->parsed()) {
      if (o.indices.empty() && o.gamma < 1)
        throw Error(ErrorCode::InvalidInput, "--gamma or --indices is required");
      return run.tree_build();
    }
    if (tree_check->parsed())
      return run.tree_check();
    if (r_build->parsed())
      return run.r_build();
    if (r_check->parsed())
      return run.r_check();
    if (fiber_oracle->parsed())
      return run.fiber_oracle();
    if (measure_order->parsed())
      return run.measure_order();
    if (facts_verify->parsed())
      return run.facts_verify();
    if (walks_enum->parsed())
      return run.walks_enum();
    if (dist->parsed())
      return run.distinguish_cmd();
    if (poset_check->parsed())
      return run.poset_check();
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace fiberlab
