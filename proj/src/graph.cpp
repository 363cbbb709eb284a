#include "citeco/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace citeco::graph {

namespace {
using json = nlohmann::json;
}

const char* role_name(NodeRole role) {
    switch (role) {
        case NodeRole::Parent: return "parent";
        case NodeRole::Grandparent: return "grandparent";
        case NodeRole::Descendant: return "descendant";
        case NodeRole::Exogenous: return "exogenous";
    }
    return "unknown";
}

std::optional<NodeRole> role_from_name(const std::string& name) {
    if (name == "parent") return NodeRole::Parent;
    if (name == "grandparent") return NodeRole::Grandparent;
    if (name == "descendant") return NodeRole::Descendant;
    if (name == "exogenous") return NodeRole::Exogenous;
    return std::nullopt;
}

std::optional<std::size_t> ParentNetwork::index_of(BlindId id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

NodeRole ParentNetwork::role_of(BlindId id) const {
    auto idx = index_of(id);
    if (!idx) throw std::out_of_range("node not in network: " + std::to_string(id));
    return roles[*idx];
}

std::optional<int> ParentNetwork::year_of(BlindId id) const {
    auto idx = index_of(id);
    if (!idx) throw std::out_of_range("node not in network: " + std::to_string(id));
    return years[*idx];
}

CitationStore::CitationStore(const std::vector<ingest::CanonicalRecord>& records,
                             const std::vector<ingest::CitationEdge>& edges) {
    BlindId max_id = -1;
    for (const auto& r : records) max_id = std::max(max_id, r.blind_id);
    for (const auto& e : edges) max_id = std::max({max_id, e.citing, e.cited});
    std::size_t n = static_cast<std::size_t>(max_id + 1);

    years_.assign(n, std::nullopt);
    present_.assign(n, false);
    for (const auto& r : records) {
        if (r.blind_id < 0) throw std::invalid_argument("negative blind id in record store");
        present_[static_cast<std::size_t>(r.blind_id)] = true;
        years_[static_cast<std::size_t>(r.blind_id)] = r.year;
        if (r.year && (!max_year_ || *r.year > *max_year_)) max_year_ = r.year;
    }

    // CSR in both directions over the deduplicated directed edges.
    std::vector<ingest::CitationEdge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto& e : sorted) {
        ++out_offsets_[static_cast<std::size_t>(e.citing) + 1];
        ++in_offsets_[static_cast<std::size_t>(e.cited) + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) {
        out_offsets_[i] += out_offsets_[i - 1];
        in_offsets_[i] += in_offsets_[i - 1];
    }
    out_targets_.resize(sorted.size());
    in_targets_.resize(sorted.size());
    std::vector<std::size_t> out_fill = out_offsets_;
    std::vector<std::size_t> in_fill = in_offsets_;
    for (const auto& e : sorted) {
        out_targets_[out_fill[static_cast<std::size_t>(e.citing)]++] = e.cited;
        in_targets_[in_fill[static_cast<std::size_t>(e.cited)]++] = e.citing;
    }
}

bool CitationStore::has_record(BlindId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < present_.size() &&
           present_[static_cast<std::size_t>(id)];
}

std::optional<int> CitationStore::year_of(BlindId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= years_.size()) return std::nullopt;
    return years_[static_cast<std::size_t>(id)];
}

std::span<const BlindId> CitationStore::references_of(BlindId citing) const {
    if (citing < 0 || static_cast<std::size_t>(citing) + 1 >= out_offsets_.size()) return {};
    std::size_t begin = out_offsets_[static_cast<std::size_t>(citing)];
    std::size_t end = out_offsets_[static_cast<std::size_t>(citing) + 1];
    return {out_targets_.data() + begin, end - begin};
}

std::span<const BlindId> CitationStore::citers_of(BlindId cited) const {
    if (cited < 0 || static_cast<std::size_t>(cited) + 1 >= in_offsets_.size()) return {};
    std::size_t begin = in_offsets_[static_cast<std::size_t>(cited)];
    std::size_t end = in_offsets_[static_cast<std::size_t>(cited) + 1];
    return {in_targets_.data() + begin, end - begin};
}

ParentNetwork build_parent_network(BlindId parent, const CitationStore& store,
                                   std::vector<Issue>* issues) {
    if (!store.has_record(parent)) {
        throw std::invalid_argument("unknown parent id: " + std::to_string(parent));
    }

    std::unordered_set<BlindId> collected;
    collected.insert(parent);

    // Pass 1: the parent's references.
    for (BlindId gp : store.references_of(parent)) collected.insert(gp);
    // Pass 2: papers citing the parent.
    std::span<const BlindId> descendants = store.citers_of(parent);
    for (BlindId d : descendants) collected.insert(d);
    // Pass 3: each descendant's references.
    for (BlindId d : descendants) {
        for (BlindId ref : store.references_of(d)) collected.insert(ref);
    }

    ParentNetwork net;
    net.parent = parent;
    net.nodes.assign(collected.begin(), collected.end());
    std::sort(net.nodes.begin(), net.nodes.end());

    for (BlindId u : net.nodes) {
        for (BlindId v : store.references_of(u)) {
            if (v == u || !collected.contains(v)) continue;
            net.edges.push_back(make_edge(u, v));
            net.directed_edges.emplace_back(u, v);
        }
    }
    std::sort(net.edges.begin(), net.edges.end());
    net.edges.erase(std::unique(net.edges.begin(), net.edges.end()), net.edges.end());
    std::sort(net.directed_edges.begin(), net.directed_edges.end());

    net.roles = classify_roles(net, store);
    net.years.reserve(net.nodes.size());
    for (BlindId id : net.nodes) net.years.push_back(store.year_of(id));

    if (issues && net.nodes.size() == 1 && net.edges.empty()) {
        issues->push_back(Issue::warning("parent " + std::to_string(parent) +
                                         " has no references and no citations; singleton network"));
    }
    return net;
}

std::vector<NodeRole> classify_roles(const ParentNetwork& net, const CitationStore& store) {
    std::unordered_set<BlindId> descendant_ids;
    for (BlindId d : store.citers_of(net.parent)) descendant_ids.insert(d);
    std::unordered_set<BlindId> reference_ids;
    for (BlindId gp : store.references_of(net.parent)) reference_ids.insert(gp);

    std::vector<NodeRole> roles;
    roles.reserve(net.nodes.size());
    for (BlindId id : net.nodes) {
        if (id == net.parent) {
            roles.push_back(NodeRole::Parent);
        } else if (descendant_ids.contains(id)) {
            roles.push_back(NodeRole::Descendant);
        } else if (reference_ids.contains(id)) {
            roles.push_back(NodeRole::Grandparent);
        } else {
            roles.push_back(NodeRole::Exogenous);
        }
    }
    return roles;
}

ParentNetwork snapshot(const ParentNetwork& net, int year) {
    auto parent_idx = net.index_of(net.parent);
    if (!parent_idx) throw std::logic_error("network is missing its parent node");
    std::optional<int> parent_year = net.years[*parent_idx];
    if (!parent_year) {
        throw std::invalid_argument("parent " + std::to_string(net.parent) +
                                    " has no publication year; cannot snapshot");
    }
    if (year < *parent_year) {
        throw std::invalid_argument("snapshot year " + std::to_string(year) +
                                    " precedes parent publication year " +
                                    std::to_string(*parent_year));
    }

    ParentNetwork out;
    out.parent = net.parent;
    std::vector<bool> keep(net.nodes.size(), false);
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        if (net.nodes[i] == net.parent || (net.years[i] && *net.years[i] <= year)) {
            keep[i] = true;
            out.nodes.push_back(net.nodes[i]);
            out.roles.push_back(net.roles[i]);
            out.years.push_back(net.years[i]);
        }
    }
    auto kept = [&](BlindId id) {
        auto idx = net.index_of(id);
        return idx && keep[*idx];
    };
    for (const EdgePair& e : net.edges) {
        if (kept(e.first) && kept(e.second)) out.edges.push_back(e);
    }
    for (const EdgePair& e : net.directed_edges) {
        if (kept(e.first) && kept(e.second)) out.directed_edges.push_back(e);
    }
    return out;
}

RoleCounts role_counts(const ParentNetwork& net) {
    RoleCounts counts;
    counts.n = static_cast<std::int64_t>(net.nodes.size());
    for (NodeRole role : net.roles) {
        switch (role) {
            case NodeRole::Parent: break;
            case NodeRole::Descendant: ++counts.c; break;
            case NodeRole::Grandparent: ++counts.g; break;
            case NodeRole::Exogenous: ++counts.x; break;
        }
    }
    return counts;
}

std::string to_network_json(const ParentNetwork& net) {
    json nodes = json::array();
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        json node;
        node["id"] = net.nodes[i];
        node["role"] = role_name(net.roles[i]);
        if (net.years[i]) {
            node["year"] = *net.years[i];
        } else {
            node["year"] = nullptr;
        }
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const EdgePair& e : net.edges) {
        edges.push_back(json::array({e.first, e.second}));
    }
    json doc;
    doc["parent"] = net.parent;
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

ParentNetwork from_network_json(const std::string& text) {
    json doc = json::parse(text);
    ParentNetwork net;
    net.parent = doc.at("parent").get<BlindId>();
    struct NodeRow {
        BlindId id;
        NodeRole role;
        std::optional<int> year;
    };
    std::vector<NodeRow> rows;
    for (const auto& node : doc.at("nodes")) {
        NodeRow row;
        row.id = node.at("id").get<BlindId>();
        auto role = role_from_name(node.at("role").get<std::string>());
        if (!role) throw std::invalid_argument("unknown role in network json");
        row.role = *role;
        if (node.contains("year") && !node["year"].is_null()) {
            row.year = node["year"].get<int>();
        }
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const NodeRow& a, const NodeRow& b) { return a.id < b.id; });
    for (const NodeRow& row : rows) {
        net.nodes.push_back(row.id);
        net.roles.push_back(row.role);
        net.years.push_back(row.year);
    }
    for (const auto& e : doc.at("edges")) {
        net.edges.push_back(make_edge(e.at(0).get<BlindId>(), e.at(1).get<BlindId>()));
    }
    std::sort(net.edges.begin(), net.edges.end());
    net.edges.erase(std::unique(net.edges.begin(), net.edges.end()), net.edges.end());
    return net;
}

}  // namespace citeco::graph
