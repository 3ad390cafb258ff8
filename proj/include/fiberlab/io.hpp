#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fiberlab/compactum.hpp"
#include "fiberlab/facts.hpp"
#include "fiberlab/measure.hpp"
#include "fiberlab/poset.hpp"
#include "fiberlab/rposet.hpp"
#include "fiberlab/tree.hpp"
#include "fiberlab/walks.hpp"

namespace fiberlab {

using Json = nlohmann::json;

// All readers throw Error(InvalidInput) on malformed documents. Object keys
// come out sorted, so equal values serialize to identical text.

/// {"elements": [...], "covers": [[lower, upper], ...], "labels": {...}}
Json to_json(const Poset &p);
Poset poset_from_json(const Json &j);

/// {"root": id, "parent": {child: parent}, "labels": {...}, "spine": [...]}
Json to_json(const FiniteTree &t);
FiniteTree tree_from_json(const Json &j);

/// {"pairs": [[node, color], ...]}
Json to_json(const KPoint &x);
KPoint kpoint_from_json(const Json &j, const FiniteTree &t);

/// {"carrier": poset, "mass": {element: "p/q"}}; zero masses are omitted.
Json to_json(const RationalMeasure &m);
RationalMeasure measure_from_json(const Json &j);
/// Reads masses against an existing carrier.
RationalMeasure measure_from_json(const Json &j, const Carrier &carrier);

/// Tree, subtree and the resulting bounded poset with representatives.
Json to_json(const RPoset &r);
/// Rebuilds from the stored tree and subtree and checks the stored poset,
/// representatives and sets agree with the rebuilt ones. An attached
/// "structure" report is ignored.
RPoset rposet_from_json(const Json &j);

Json to_json(const RStructureReport &r);
Json to_json(const SuccessorVerdict &v, const Poset &p);
Json to_json(const SupVerdict &v, const Poset &p);
Json to_json(const IngredientReport &r);
Json to_json(const FiberOrder &f);
Json to_json(const Walk &w);
Json to_json(const DistinguishReport &r);
/// Parameters of a stored report, for re-running it.
DistinguishReport distinguish_parameters_from_json(const Json &j);

std::vector<NodeId> split_ids(const std::string &text);
std::set<int> parse_index_set(const std::string &text);

/// Hasse diagram, bottom to top; `path` elements and the covers between
/// consecutive ones are drawn bold.
std::string hasse_dot(const Poset &p, const std::vector<Index> &path = {},
                      const std::string &name = "poset");
/// Tree drawn root first, spine bold.
std::string tree_dot(const FiniteTree &t, const std::string &name = "tree");

} // namespace fiberlab
