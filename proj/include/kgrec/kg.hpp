#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgrec/csv.hpp"
#include "kgrec/errors.hpp"
#include "kgrec/strutil.hpp"

// Property-graph store for the master (in-domain) and slave (cross-domain)
// knowledge graphs, plus composition of the target/exclude description texts.

namespace kgrec {

enum class NodeLabel { paper, author, venue, domain, motivation, challenge, technology, reference };
enum class Relation {
    has_author,
    published_in,
    in_domain,
    has_motivation,
    addresses_challenge,
    proposes_technology,
    cites,
};
enum class GraphRole { master, slave };

inline constexpr std::size_t kNodeLabelCount = 8;
inline constexpr std::size_t kRelationCount = 7;

inline std::string_view node_label_name(NodeLabel l) {
    switch (l) {
        case NodeLabel::paper: return "Paper";
        case NodeLabel::author: return "Author";
        case NodeLabel::venue: return "Venue";
        case NodeLabel::domain: return "Domain";
        case NodeLabel::motivation: return "Motivation";
        case NodeLabel::challenge: return "Challenge";
        case NodeLabel::technology: return "Technology";
        case NodeLabel::reference: return "Reference";
    }
    return "Paper";
}

inline std::string_view relation_name(Relation r) {
    switch (r) {
        case Relation::has_author: return "has_author";
        case Relation::published_in: return "published_in";
        case Relation::in_domain: return "in_domain";
        case Relation::has_motivation: return "has_motivation";
        case Relation::addresses_challenge: return "addresses_challenge";
        case Relation::proposes_technology: return "proposes_technology";
        case Relation::cites: return "cites";
    }
    return "cites";
}

inline std::string_view graph_role_name(GraphRole r) {
    return r == GraphRole::master ? "master" : "slave";
}

struct KgNode {
    std::string node_id;
    NodeLabel label = NodeLabel::paper;
    std::string name;
    std::string description;
    GraphRole graph_role = GraphRole::master;
    std::vector<std::string> aliases;
};

struct KgEdge {
    std::string src;
    std::string dst;
    Relation relation = Relation::cites;

    bool operator==(const KgEdge&) const = default;
};

struct CompositionResult {
    std::string text;
    std::vector<std::string> source_node_ids;
};

namespace detail {

constexpr const char* kKgModule = "kg";

inline std::optional<NodeLabel> parse_node_label(std::string_view s) {
    for (std::size_t i = 0; i < kNodeLabelCount; ++i)
        if (s == node_label_name(static_cast<NodeLabel>(i)))
            return static_cast<NodeLabel>(i);
    return std::nullopt;
}

inline std::optional<Relation> parse_relation(std::string_view s) {
    for (std::size_t i = 0; i < kRelationCount; ++i)
        if (s == relation_name(static_cast<Relation>(i)))
            return static_cast<Relation>(i);
    return std::nullopt;
}

// Ontology endpoint rules, one row per relation: allowed source labels -> target label.
inline bool endpoints_allowed(Relation rel, NodeLabel src, NodeLabel dst) {
    switch (rel) {
        case Relation::has_author:
            return src == NodeLabel::paper && dst == NodeLabel::author;
        case Relation::published_in:
            return src == NodeLabel::paper && dst == NodeLabel::venue;
        case Relation::in_domain:
            return src == NodeLabel::paper && dst == NodeLabel::domain;
        case Relation::has_motivation:
            return src == NodeLabel::paper && dst == NodeLabel::motivation;
        case Relation::addresses_challenge:
            return (src == NodeLabel::paper || src == NodeLabel::technology) &&
                   dst == NodeLabel::challenge;
        case Relation::proposes_technology:
            return src == NodeLabel::paper && dst == NodeLabel::technology;
        case Relation::cites:
            return src == NodeLabel::paper && dst == NodeLabel::reference;
    }
    return false;
}

}  // namespace detail

// Lowercase, strip punctuation, collapse runs of whitespace to single spaces.
inline std::string normalize_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (unsigned char c : name) {
        char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                            : static_cast<char>(c);
        bool keep = (lower >= 'a' && lower <= 'z') || (lower >= '0' && lower <= '9');
        if (keep) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(lower);
        } else {
            pending_space = true;
        }
    }
    return out;
}

class Graph {
  public:
    explicit Graph(GraphRole role = GraphRole::master) : role_(role) {}

    GraphRole role() const { return role_; }
    bool frozen() const { return frozen_; }
    void freeze() { frozen_ = true; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<KgNode>& nodes() const { return nodes_; }
    const std::vector<KgEdge>& edges() const { return edges_; }

    const KgNode* find_node(std::string_view node_id) const {
        auto it = index_.find(std::string(node_id));
        return it == index_.end() ? nullptr : &nodes_[it->second];
    }

    // Node whose absence is an error for the caller.
    const KgNode& node_or_throw(std::string_view node_id) const {
        const KgNode* node = find_node(node_id);
        if (!node)
            throw Error(detail::kKgModule, ErrorCategory::referential,
                        "node \"" + std::string(node_id) + "\" does not exist");
        return *node;
    }

    void add_node(KgNode node) {
        require_mutable();
        if (node.node_id.empty())
            throw Error(detail::kKgModule, ErrorCategory::schema, "empty node_id");
        if (!index_.emplace(node.node_id, nodes_.size()).second)
            throw Error(detail::kKgModule, ErrorCategory::duplicate_id,
                        "node \"" + node.node_id + "\" already exists");
        nodes_.push_back(std::move(node));
    }

    void add_edge(KgEdge edge) {
        require_mutable();
        const KgNode* src = find_node(edge.src);
        const KgNode* dst = find_node(edge.dst);
        if (!src || !dst)
            throw Error(detail::kKgModule, ErrorCategory::referential,
                        describe(edge) + " references missing node \"" +
                            (src ? edge.dst : edge.src) + "\"");
        if (!detail::endpoints_allowed(edge.relation, src->label, dst->label))
            throw Error(detail::kKgModule, ErrorCategory::ontology,
                        describe(edge) + " violates endpoint rule (" +
                            std::string(node_label_name(src->label)) + " -> " +
                            std::string(node_label_name(dst->label)) + ")");
        edges_.push_back(std::move(edge));
    }

    std::size_t degree(std::string_view node_id) const {
        std::size_t d = 0;
        for (const auto& e : edges_)
            if (e.src == node_id || e.dst == node_id) ++d;
        return d;
    }

  private:
    static std::string describe(const KgEdge& e) {
        return "edge " + std::string(relation_name(e.relation)) + "(" + e.src + ", " +
               e.dst + ")";
    }

    void require_mutable() const {
        if (frozen_)
            throw Error(detail::kKgModule, ErrorCategory::internal,
                        "graph is frozen and cannot be modified");
    }

    GraphRole role_;
    std::vector<KgNode> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<KgEdge> edges_;
    bool frozen_ = false;
};

// Nodes CSV: node_id,label,name,description,graph_role,aliases (`;`-separated).
// Edges CSV: src,dst,relation. All nodes come back tagged with `role`.
inline Graph import_graph(const std::filesystem::path& nodes_path,
                          const std::filesystem::path& edges_path, GraphRole role) {
    const std::string module = detail::kKgModule;
    Graph graph(role);

    csv::Table nodes = csv::read_file(nodes_path, module);
    const std::size_t n_id = csv::column(nodes, "node_id", module);
    const std::size_t n_label = csv::column(nodes, "label", module);
    const std::size_t n_name = csv::column(nodes, "name", module);
    const std::size_t n_desc = csv::column(nodes, "description", module);
    csv::column(nodes, "graph_role", module);  // present in the schema; `role` wins
    const std::size_t n_aliases = csv::column(nodes, "aliases", module);
    for (std::size_t r = 0; r < nodes.rows.size(); ++r) {
        const auto& row = nodes.rows[r];
        KgNode node;
        node.node_id = row[n_id];
        auto label = detail::parse_node_label(row[n_label]);
        if (!label)
            throw Error(module, ErrorCategory::schema,
                        "illegal label \"" + row[n_label] + "\" (line " +
                            std::to_string(nodes.row_lines[r]) + ")");
        node.label = *label;
        node.name = row[n_name];
        node.description = row[n_desc];
        node.graph_role = role;
        node.aliases = detail::split_list(row[n_aliases], ';');
        graph.add_node(std::move(node));
    }

    csv::Table edges = csv::read_file(edges_path, module);
    const std::size_t e_src = csv::column(edges, "src", module);
    const std::size_t e_dst = csv::column(edges, "dst", module);
    const std::size_t e_rel = csv::column(edges, "relation", module);
    for (std::size_t r = 0; r < edges.rows.size(); ++r) {
        const auto& row = edges.rows[r];
        auto rel = detail::parse_relation(row[e_rel]);
        if (!rel)
            throw Error(module, ErrorCategory::schema,
                        "illegal relation \"" + row[e_rel] + "\" (line " +
                            std::to_string(edges.row_lines[r]) + ")");
        graph.add_edge({row[e_src], row[e_dst], *rel});
    }
    return graph;
}

inline void export_graph(const Graph& graph, const std::filesystem::path& nodes_path,
                         const std::filesystem::path& edges_path) {
    std::vector<std::vector<std::string>> node_rows;
    node_rows.reserve(graph.node_count());
    for (const auto& node : graph.nodes()) {
        std::string aliases;
        for (std::size_t i = 0; i < node.aliases.size(); ++i) {
            if (i) aliases.push_back(';');
            aliases += node.aliases[i];
        }
        node_rows.push_back({node.node_id, std::string(node_label_name(node.label)),
                             node.name, node.description,
                             std::string(graph_role_name(node.graph_role)),
                             std::move(aliases)});
    }
    csv::write_file(nodes_path, {"node_id", "label", "name", "description", "graph_role", "aliases"},
                    node_rows, detail::kKgModule);

    std::vector<std::vector<std::string>> edge_rows;
    edge_rows.reserve(graph.edge_count());
    for (const auto& edge : graph.edges())
        edge_rows.push_back({edge.src, edge.dst, std::string(relation_name(edge.relation))});
    csv::write_file(edges_path, {"src", "dst", "relation"}, edge_rows, detail::kKgModule);
}

// Alias CSV: alias,canonical. Keys are normalized; one alias naming two
// different canonical forms is an ambiguity error.
using AliasMap = std::map<std::string, std::string>;

inline AliasMap load_alias_file(const std::filesystem::path& path) {
    const std::string module = detail::kKgModule;
    csv::Table table = csv::read_file(path, module);
    const std::size_t c_alias = csv::column(table, "alias", module);
    const std::size_t c_canonical = csv::column(table, "canonical", module);
    AliasMap map;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::string key = normalize_name(table.rows[r][c_alias]);
        const std::string& canonical = table.rows[r][c_canonical];
        auto [it, inserted] = map.emplace(key, canonical);
        if (!inserted && it->second != canonical)
            throw Error(module, ErrorCategory::ambiguity,
                        "alias \"" + table.rows[r][c_alias] + "\" maps to both \"" +
                            it->second + "\" and \"" + canonical + "\"");
    }
    return map;
}

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

// Merge same-label nodes whose normalized names or aliases coincide (aliases
// resolved through `alias_map`). Survivor: smallest node_id; longest
// description; alias union plus absorbed names. Edges are re-pointed and
// exact duplicates collapsed. Idempotent.
inline Graph align_entities(const Graph& graph, const AliasMap& alias_map = {}) {
    const auto& nodes = graph.nodes();
    detail::UnionFind groups(nodes.size());

    auto canonical_key = [&](std::string_view raw) {
        std::string key = normalize_name(raw);
        auto it = alias_map.find(key);
        if (it != alias_map.end()) key = normalize_name(it->second);
        return key;
    };

    std::map<std::pair<NodeLabel, std::string>, std::size_t> first_holder;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<std::string> keys;
        keys.push_back(canonical_key(nodes[i].name));
        for (const auto& alias : nodes[i].aliases) keys.push_back(canonical_key(alias));
        for (auto& key : keys) {
            if (key.empty()) continue;
            auto [it, inserted] =
                first_holder.emplace(std::make_pair(nodes[i].label, std::move(key)), i);
            if (!inserted) groups.unite(i, it->second);
        }
    }

    // Gather members per group, in insertion order of their first member.
    std::map<std::size_t, std::vector<std::size_t>> members;
    std::vector<std::size_t> group_order;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::size_t root = groups.find(i);
        auto [it, inserted] = members.emplace(root, std::vector<std::size_t>{});
        if (inserted) group_order.push_back(root);
        it->second.push_back(i);
    }
    std::sort(group_order.begin(), group_order.end(),
              [&](std::size_t a, std::size_t b) {
                  return members.at(a).front() < members.at(b).front();
              });

    Graph merged(graph.role());
    std::unordered_map<std::string, std::string> survivor_of;
    for (std::size_t root : group_order) {
        const auto& group = members.at(root);
        std::size_t survivor = group.front();
        for (std::size_t i : group)
            if (nodes[i].node_id < nodes[survivor].node_id) survivor = i;

        KgNode out = nodes[survivor];
        std::set<std::string> aliases(out.aliases.begin(), out.aliases.end());
        for (std::size_t i : group) {
            survivor_of[nodes[i].node_id] = out.node_id;
            aliases.insert(nodes[i].aliases.begin(), nodes[i].aliases.end());
            // Absorbed names survive as aliases (trimmed; `;` is the list delimiter).
            std::string name = detail::trim(nodes[i].name);
            if (name != out.name && !name.empty() && name.find(';') == std::string::npos)
                aliases.insert(std::move(name));
            const std::string& desc = nodes[i].description;
            if (desc.size() > out.description.size() ||
                (desc.size() == out.description.size() && desc < out.description))
                out.description = desc;
        }
        out.aliases.assign(aliases.begin(), aliases.end());
        merged.add_node(std::move(out));
    }

    std::set<std::tuple<std::string, std::string, int>> seen_edges;
    for (const auto& edge : graph.edges()) {
        KgEdge out{survivor_of.at(edge.src), survivor_of.at(edge.dst), edge.relation};
        if (seen_edges.emplace(out.src, out.dst, static_cast<int>(out.relation)).second)
            merged.add_edge(std::move(out));
    }
    return merged;
}

namespace detail {

inline const KgNode& composition_node(const Graph& graph, std::string_view node_id,
                                      NodeLabel expected) {
    const KgNode& node = graph.node_or_throw(node_id);
    if (node.label != expected)
        throw Error(kKgModule, ErrorCategory::ontology,
                    "node \"" + node.node_id + "\" is labeled " +
                        std::string(node_label_name(node.label)) + ", expected " +
                        std::string(node_label_name(expected)));
    if (node.description.empty())
        throw Error(kKgModule, ErrorCategory::empty_description,
                    "node \"" + node.node_id + "\" has no description");
    return node;
}

}  // namespace detail

// Challenge description first, then each technology description, space-joined.
inline CompositionResult compose_target_text(const Graph& graph,
                                             std::string_view challenge_id,
                                             std::span<const std::string> tech_ids) {
    CompositionResult result;
    const KgNode& challenge =
        detail::composition_node(graph, challenge_id, NodeLabel::challenge);
    result.text = challenge.description;
    result.source_node_ids.push_back(challenge.node_id);
    for (const auto& id : tech_ids) {
        const KgNode& tech = detail::composition_node(graph, id, NodeLabel::technology);
        result.text += ' ';
        result.text += tech.description;
        result.source_node_ids.push_back(tech.node_id);
    }
    return result;
}

inline CompositionResult compose_exclude_text(const Graph& graph,
                                              std::span<const std::string> tech_ids) {
    if (tech_ids.empty())
        throw Error(detail::kKgModule, ErrorCategory::empty_list,
                    "an exclude query must name at least one technology");
    CompositionResult result;
    for (const auto& id : tech_ids) {
        const KgNode& tech = detail::composition_node(graph, id, NodeLabel::technology);
        if (!result.text.empty()) result.text += ' ';
        result.text += tech.description;
        result.source_node_ids.push_back(tech.node_id);
    }
    return result;
}

// Transient composition view over both graphs; the stored graphs stay
// separate. Ids must not collide across graphs.
inline Graph merged_view(const Graph& master, const Graph& slave) {
    Graph view(GraphRole::master);
    for (const auto& node : master.nodes()) view.add_node(node);
    for (const auto& node : slave.nodes()) {
        if (view.find_node(node.node_id))
            throw Error(detail::kKgModule, ErrorCategory::duplicate_id,
                        "node \"" + node.node_id + "\" exists in both master and slave graphs");
        KgNode copy = node;
        view.add_node(std::move(copy));
    }
    for (const auto& edge : master.edges()) view.add_edge(edge);
    for (const auto& edge : slave.edges()) view.add_edge(edge);
    return view;
}

}  // namespace kgrec
