#include "fiberlab/io.hpp"

#include <algorithm>
#include <sstream>

#include "fiberlab/error.hpp"

namespace fiberlab {

namespace {

[[noreturn]] void bad(const std::string &what) { throw Error(ErrorCode::InvalidInput, what); }

const Json &field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T> T get(const Json &j, const char *what) {
  try {
    return j.get<T>();
  } catch (const Json::exception &) {
    bad(std::string("field '") + what + "' has the wrong type");
  }
}

std::map<std::string, std::string> labels_from(const Json &j) {
  if (!j.contains("labels"))
    return {};
  return get<std::map<std::string, std::string>>(j.at("labels"), "labels");
}

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace

Json to_json(const Poset &p) {
  Json covers = Json::array();
  for (const auto &[lo, hi] : p.covers())
    covers.push_back({p.id(lo), p.id(hi)});
  return {{"elements", p.ids()}, {"covers", covers}, {"labels", p.labels()}};
}

Poset poset_from_json(const Json &j) {
  auto elems = get<std::vector<std::string>>(field(j, "elements"), "elements");
  auto pairs = get<std::vector<std::pair<std::string, std::string>>>(field(j, "covers"), "covers");
  return Poset::build(std::move(elems), pairs, labels_from(j));
}

Json to_json(const FiniteTree &t) {
  return {{"root", t.root_id()},
          {"parent", t.parent_map()},
          {"labels", t.labels()},
          {"spine", t.spine()}};
}

FiniteTree tree_from_json(const Json &j) {
  auto root = get<std::string>(field(j, "root"), "root");
  auto parent = get<std::map<std::string, std::string>>(field(j, "parent"), "parent");
  std::vector<std::string> spine;
  if (j.contains("spine"))
    spine = get<std::vector<std::string>>(j.at("spine"), "spine");
  return FiniteTree::build(std::move(root), parent, labels_from(j), std::move(spine));
}

Json to_json(const KPoint &x) {
  Json pairs = Json::array();
  for (const auto &p : x.pairs())
    pairs.push_back({p.node, p.color});
  return {{"pairs", pairs}};
}

KPoint kpoint_from_json(const Json &j, const FiniteTree &t) {
  std::vector<KPair> pairs;
  for (const auto &[node, color] :
       get<std::vector<std::pair<std::string, std::string>>>(field(j, "pairs"), "pairs"))
    pairs.push_back({node, color});
  return KPoint::make(std::move(pairs), t);
}

Json to_json(const RationalMeasure &m) {
  Json mass = Json::object();
  for (Index x : m.support())
    mass[m.carrier().id(x)] = to_string(m.mass(x));
  return {{"carrier", to_json(m.carrier())}, {"mass", mass}};
}

RationalMeasure measure_from_json(const Json &j, const Carrier &carrier) {
  std::map<ElementId, Rational> mass;
  for (const auto &[id, text] :
       get<std::map<std::string, std::string>>(field(j, "mass"), "mass")) {
    if (!carrier->find(id))
      throw Error(ErrorCode::UnknownElement, "mass on unknown element '" + id + "'");
    mass.emplace(id, parse_rational(text));
  }
  return RationalMeasure::from_ids(carrier, mass);
}

RationalMeasure measure_from_json(const Json &j) {
  return measure_from_json(j, std::make_shared<const Poset>(poset_from_json(field(j, "carrier"))));
}

Json to_json(const RPoset &r) {
  Json sets = Json::object();
  for (const auto &[id, set] : r.sets)
    sets[id] = r.tree.node_ids(set);
  return {{"tree", to_json(r.tree)},
          {"subtree", r.tree.node_ids(r.subtree)},
          {"poset", to_json(r.poset.whole)},
          {"bottom", r.poset.bottom},
          {"top", r.poset.top},
          {"minimum_of_inner", r.root_element()},
          {"representatives", r.rep},
          {"sets", sets}};
}

RPoset rposet_from_json(const Json &j) {
  const FiniteTree tree = tree_from_json(field(j, "tree"));
  const auto subtree = get<std::vector<std::string>>(field(j, "subtree"), "subtree");
  for (const auto &id : subtree)
    if (!tree.find(id))
      bad("subtree names unknown node '" + id + "'");
  RPoset r = build_R(tree.node_set(subtree), tree);
  Json stored = j;
  stored.erase("structure");
  if (to_json(r) != stored)
    bad("stored poset does not match the one rebuilt from tree and subtree");
  return r;
}

Json to_json(const RStructureReport &r) {
  Json clauses = Json::array();
  for (const auto &c : r.clauses)
    clauses.push_back({{"clause", c.clause},
                       {"subject", c.subject},
                       {"passed", c.passed},
                       {"detail", c.detail},
                       {"witness", c.witness}});
  return {{"passed", r.passed()}, {"clauses", clauses}};
}

Json to_json(const SuccessorVerdict &v, const Poset &p) {
  Json j{{"kind", to_string(v.kind)}, {"linear_successor", v.yes()}, {"verified", v.verified}};
  if (v.successor)
    j["successor"] = p.id(*v.successor);
  if (v.witnesses)
    j["witnesses"] = {to_json(v.witnesses->first)["mass"], to_json(v.witnesses->second)["mass"]};
  if (v.dominator)
    j["dominator"] = to_json(*v.dominator)["mass"];
  return j;
}

namespace {

Json counter_json(const CounterWitness &c, const Poset &p) {
  return {{"claim", to_json(c.claim)["mass"]},
          {"mass_point", p.id(c.mass_point)},
          {"bound", p.id(c.bound)}};
}

} // namespace

Json to_json(const SupVerdict &v, const Poset &p) {
  Json j{{"certified", v.certified},
         {"upper_bounds_sampled", v.upper_bounds_sampled},
         {"counter_count", v.counter_count}};
  j["supremum"] = v.supremum ? Json(p.id(*v.supremum)) : Json(nullptr);
  Json cws = Json::array();
  for (const auto &c : v.counter_witnesses)
    cws.push_back(counter_json(c, p));
  j["counter_witnesses"] = cws;
  if (v.incomparable_bounds)
    j["incomparable_bounds"] = {p.id(v.incomparable_bounds->first),
                                p.id(v.incomparable_bounds->second)};
  if (v.incomparable_probe)
    j["incomparable_probe"] = counter_json(*v.incomparable_probe, p);
  return j;
}

Json to_json(const IngredientReport &r) {
  return {{"passed", r.passed()},
          {"sample_size", r.sample_size},
          {"below_top_segment", r.below_top_segment},
          {"segment_is_chain", r.segment_is_chain},
          {"dominates_segment", r.dominates_segment},
          {"violations", r.violations}};
}

Json to_json(const FiberOrder &f) {
  Json classes = Json::object();
  for (Index c = 0; c < f.classes.size(); ++c) {
    Json members = Json::array();
    for (const auto &x : f.classes[c])
      members.push_back(x.to_string());
    classes[f.order.id(c)] = members;
  }
  return {{"order", to_json(f.order)}, {"classes", classes}};
}

Json to_json(const Walk &w) { return w.ids(); }

Json to_json(const DistinguishReport &r) {
  Json results = Json::array();
  for (const auto &v : r.results)
    results.push_back({{"side", v.side},
                       {"subtree", v.subtree},
                       {"missing_nodes", v.missing_nodes},
                       {"L1", v.short_length},
                       {"L2", v.long_length},
                       {"L1_walks", v.short_walks},
                       {"L2_walks", v.long_walks},
                       {"witness_walk", v.witness_walk},
                       {"verdict", v.verdict},
                       {"vacuous", v.vacuous}});
  return {{"parameters",
           {{"A", r.a},
            {"B", r.b},
            {"delta", r.delta},
            {"m", r.unit},
            {"profile", to_string(r.profile)}}},
          {"walk_length", "number of elements"},
          {"results", results},
          {"aggregate",
           {{"A_side_true_everywhere", r.a_holds},
            {"B_side_false_where_nonvacuous", r.b_holds},
            {"B_side_vacuous", r.b_vacuous}}}};
}

DistinguishReport distinguish_parameters_from_json(const Json &j) {
  const Json &params = field(j, "parameters");
  DistinguishReport r;
  r.a = get<std::set<int>>(field(params, "A"), "A");
  r.b = get<std::set<int>>(field(params, "B"), "B");
  r.delta = get<int>(field(params, "delta"), "delta");
  r.unit = get<int>(field(params, "m"), "m");
  r.profile = parse_profile(get<std::string>(field(params, "profile"), "profile"));
  return r;
}

std::vector<NodeId> split_ids(const std::string &text) {
  std::vector<NodeId> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

std::set<int> parse_index_set(const std::string &text) {
  std::set<int> out;
  for (const auto &item : split_ids(text)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != item.size() || item.empty())
      bad("'" + item + "' is not an integer");
    out.insert(value);
  }
  return out;
}

std::string hasse_dot(const Poset &p, const std::vector<Index> &path, const std::string &name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Index x = 0; x < p.size(); ++x) {
    const bool on = std::find(path.begin(), path.end(), x) != path.end();
    out << "  " << quote(p.id(x)) << " [label=" << quote(p.label(x).empty() ? p.id(x) : p.label(x))
        << (on ? ", penwidth=3" : "") << "];\n";
  }
  for (const auto &[lo, hi] : p.covers()) {
    bool on = false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      on = on || (path[i] == lo && path[i + 1] == hi);
    out << "  " << quote(p.id(lo)) << " -> " << quote(p.id(hi)) << (on ? " [penwidth=3]" : "")
        << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string tree_dot(const FiniteTree &t, const std::string &name) {
  std::ostringstream out;
  const auto &spine = t.spine();
  auto on_spine = [&](const NodeId &id) {
    return std::find(spine.begin(), spine.end(), id) != spine.end();
  };
  out << "digraph " << quote(name) << " {\n";
  for (Index x = 0; x < t.size(); ++x) {
    const std::string label = t.label(x).empty() ? t.id(x) : t.id(x) + " [" + t.label(x) + "]";
    out << "  " << quote(t.id(x)) << " [label=" << quote(label)
        << (on_spine(t.id(x)) ? ", penwidth=3" : "") << "];\n";
  }
  for (Index x = 0; x < t.size(); ++x)
    for (Index c : t.children(x))
      out << "  " << quote(t.id(x)) << " -> " << quote(t.id(c))
          << (on_spine(t.id(x)) && on_spine(t.id(c)) ? " [penwidth=3]" : "") << ";\n";
  out << "}\n";
  return out.str();
}

} // namespace fiberlab
