#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citeco/common.hpp"
#include "citeco/ingest.hpp"

namespace citeco::graph {

enum class NodeRole { Parent, Grandparent, Descendant, Exogenous };

const char* role_name(NodeRole role);
std::optional<NodeRole> role_from_name(const std::string& name);

// Undirected unordered pair, stored with first < second.
using EdgePair = std::pair<BlindId, BlindId>;

inline EdgePair make_edge(BlindId a, BlindId b) {
    return a < b ? EdgePair{a, b} : EdgePair{b, a};
}

// Two-hop ego network around one parent paper. Nodes are kept sorted and
// roles/years run parallel to them, which makes serialization reproducible.
struct ParentNetwork {
    BlindId parent = kInvalidId;
    std::vector<BlindId> nodes;                // sorted ascending, unique
    std::vector<EdgePair> edges;               // first < second, sorted, unique
    std::vector<NodeRole> roles;               // parallel to nodes
    std::vector<std::optional<int>> years;     // parallel to nodes
    std::vector<EdgePair> directed_edges;      // citing -> cited; optional view,
                                               // not serialized

    std::size_t size() const { return nodes.size(); }
    std::optional<std::size_t> index_of(BlindId id) const;
    NodeRole role_of(BlindId id) const;
    std::optional<int> year_of(BlindId id) const;
};

// Immutable directed citation graph over canonical records, shared read-only
// across parents.
class CitationStore {
public:
    CitationStore(const std::vector<ingest::CanonicalRecord>& records,
                  const std::vector<ingest::CitationEdge>& edges);

    bool has_record(BlindId id) const;
    std::optional<int> year_of(BlindId id) const;
    std::span<const BlindId> references_of(BlindId citing) const;  // out-neighbors
    std::span<const BlindId> citers_of(BlindId cited) const;       // in-neighbors
    std::size_t record_count() const { return years_.size(); }
    std::size_t edge_count() const { return out_targets_.size(); }

    // Highest known publication year in the corpus, if any.
    std::optional<int> max_year() const { return max_year_; }

private:
    std::vector<std::optional<int>> years_;  // indexed by blind id
    std::vector<bool> present_;
    std::vector<std::size_t> out_offsets_;
    std::vector<BlindId> out_targets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<BlindId> in_targets_;
    std::optional<int> max_year_;
};

// Three-pass sweep: the parent's references, then the parent's citers, then
// each citer's references. The network keeps every store edge between
// collected nodes, as undirected pairs. A parent with neither references nor
// citers yields a singleton network plus a warning; an unknown parent id
// throws.
ParentNetwork build_parent_network(BlindId parent, const CitationStore& store,
                                   std::vector<Issue>* issues = nullptr);

// Role per node: the focal paper is Parent; anything citing it is Descendant;
// anything it references and that is not a Descendant is Grandparent;
// everything else is Exogenous.
std::vector<NodeRole> classify_roles(const ParentNetwork& net, const CitationStore& store);

// Induced subnetwork on nodes with a known year <= the cut; the parent is
// always kept. Throws if the cut precedes the parent's publication year or
// the parent's year is unknown.
ParentNetwork snapshot(const ParentNetwork& net, int year);

struct RoleCounts {
    std::int64_t n = 0;  // all nodes
    std::int64_t c = 0;  // descendants
    std::int64_t g = 0;  // grandparents
    std::int64_t x = 0;  // exogenous
};

RoleCounts role_counts(const ParentNetwork& net);

// json object {parent, nodes:[{id, role, year}], edges:[[u,v]]} with stable
// ordering; year is null when unknown.
std::string to_network_json(const ParentNetwork& net);
ParentNetwork from_network_json(const std::string& text);

}  // namespace citeco::graph
