#pragma once

// Multigraphs with stable edge identities. Minors (deletion, contraction,
// induced subgraphs) return graphs whose surviving edges keep their original
// ids, so fractional points and laminar bounds indexed by edge id stay
// meaningful across the whole pipeline. Vertices are relabeled densely after
// every minor, with the mapping retained.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "errors.hpp"

namespace lamthin {

using VertexSet = std::vector<int>;  // sorted, unique
using IdSet = std::vector<int>;      // sorted, unique edge ids

inline IdSet make_sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool sorted_contains(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}

inline IdSet set_union_sorted(const IdSet& a, const IdSet& b) {
    IdSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IdSet set_intersection_sorted(const IdSet& a, const IdSet& b) {
    IdSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IdSet set_difference_sorted(const IdSet& a, const IdSet& b) {
    IdSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset_sorted(const IdSet& a, const IdSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct Edge {
    int id;
    int u;
    int v;
};

class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        require_input(n_ >= 0, "negative vertex count");
        std::set<int> seen;
        for (const Edge& e : edges_) {
            require_input(e.u >= 0 && e.u < n_ && e.v >= 0 && e.v < n_,
                          "edge endpoint out of range");
            require_input(e.u != e.v, "self-loops are not allowed");
            require_input(seen.insert(e.id).second, "duplicate edge id");
        }
        std::sort(edges_.begin(), edges_.end(),
                  [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < edges_.size(); ++i) index_[edges_[i].id] = i;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int id) const { return index_.count(id) > 0; }

    const Edge& edge(int id) const {
        auto it = index_.find(id);
        require_input(it != index_.end(), "unknown edge id " + std::to_string(id));
        return edges_[it->second];
    }

    IdSet edge_ids() const {
        IdSet ids;
        ids.reserve(edges_.size());
        for (const Edge& e : edges_) ids.push_back(e.id);
        return ids;  // edges_ sorted by id
    }

    Graph without_edge(int id) const {
        edge(id);  // existence check
        std::vector<Edge> kept;
        kept.reserve(edges_.size() - 1);
        for (const Edge& e : edges_)
            if (e.id != id) kept.push_back(e);
        return Graph(n_, std::move(kept));
    }

    /// Edge-induced subgraph on the same vertex set.
    Graph with_only_edges(const IdSet& ids) const {
        std::vector<Edge> kept;
        for (const Edge& e : edges_)
            if (sorted_contains(ids, e.id)) kept.push_back(e);
        return Graph(n_, std::move(kept));
    }

    int component_count() const {
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        int comps = n_;
        for (const Edge& e : edges_) comps -= unite(parent, e.u, e.v) ? 1 : 0;
        return comps;
    }

    bool connected() const { return n_ <= 1 || component_count() == 1; }

    /// Component label (0-based, by smallest contained vertex order) per vertex,
    /// using only the listed edges.
    std::vector<int> component_labels(const IdSet& using_edges) const {
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        for (const Edge& e : edges_)
            if (sorted_contains(using_edges, e.id)) unite(parent, e.u, e.v);
        std::vector<int> label(n_, -1);
        int next = 0;
        for (int v = 0; v < n_; ++v) {
            int r = find(parent, v);
            if (label[r] < 0) label[r] = next++;
            label[v] = label[r];
        }
        return label;
    }

    static int find(std::vector<int>& parent, int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    static bool unite(std::vector<int>& parent, int a, int b) {
        a = find(parent, a);
        b = find(parent, b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;            // sorted by id
    std::map<int, std::size_t> index_;   // id -> position
};

struct Partition {
    std::vector<VertexSet> blocks;
};

inline void validate_vertex_set(const Graph& g, const VertexSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        require_input(s[i] >= 0 && s[i] < g.vertex_count(),
                      "unknown vertex " + std::to_string(s[i]));
        require_input(i == 0 || s[i - 1] < s[i], "vertex set not sorted/unique");
    }
}

/// Blocks must be pairwise disjoint, nonempty, and contained in V(g).
inline void validate_blocks(const Graph& g, const std::vector<VertexSet>& blocks) {
    std::vector<char> seen(g.vertex_count(), 0);
    for (const VertexSet& b : blocks) {
        require_input(!b.empty(), "empty partition block");
        validate_vertex_set(g, b);
        for (int v : b) {
            require_input(!seen[v], "overlapping blocks at vertex " + std::to_string(v));
            seen[v] = 1;
        }
    }
}

/// delta(S): edges with exactly one endpoint in S.
inline IdSet cut_edges(const Graph& g, const VertexSet& s) {
    validate_vertex_set(g, s);
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : s) in[v] = 1;
    IdSet out;
    for (const Edge& e : g.edges())
        if (in[e.u] != in[e.v]) out.push_back(e.id);
    return out;
}

/// E(S): edges with both endpoints in S.
inline IdSet induced_edges(const Graph& g, const VertexSet& s) {
    validate_vertex_set(g, s);
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : s) in[v] = 1;
    IdSet out;
    for (const Edge& e : g.edges())
        if (in[e.u] && in[e.v]) out.push_back(e.id);
    return out;
}

/// delta(P): edges whose endpoints lie in two different blocks. Edges with an
/// endpoint outside the union of the blocks are ignored.
inline IdSet delta_partition(const Graph& g, const Partition& p) {
    validate_blocks(g, p.blocks);
    std::vector<int> block_of(g.vertex_count(), -1);
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (int v : p.blocks[i]) block_of[v] = static_cast<int>(i);
    IdSet out;
    for (const Edge& e : g.edges())
        if (block_of[e.u] >= 0 && block_of[e.v] >= 0 && block_of[e.u] != block_of[e.v])
            out.push_back(e.id);
    return out;
}

struct InducedGraph {
    Graph graph;
    std::vector<int> old_of_new;  // new vertex label -> original label
    std::vector<int> new_of_old;  // original label -> new label, -1 if absent
};

/// G[S] with vertices relabeled 0..|S|-1 in sorted order; edge ids preserved.
inline InducedGraph induced(const Graph& g, const VertexSet& s) {
    require_input(!s.empty(), "induced subgraph on empty vertex set");
    validate_vertex_set(g, s);
    InducedGraph out;
    out.old_of_new = s;
    out.new_of_old.assign(g.vertex_count(), -1);
    for (std::size_t i = 0; i < s.size(); ++i) out.new_of_old[s[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int u = out.new_of_old[e.u], v = out.new_of_old[e.v];
        if (u >= 0 && v >= 0) edges.push_back(Edge{e.id, u, v});
    }
    out.graph = Graph(static_cast<int>(s.size()), std::move(edges));
    return out;
}

struct ContractedGraph {
    Graph graph;
    std::vector<int> vertex_map;  // original label -> new label
};

/// Contracts each block to a single vertex. Intra-block edges disappear
/// (self-loops are dropped); everything else keeps its id, so parallel edges
/// arise naturally. New labels are assigned by first appearance in 0..n-1
/// order.
inline ContractedGraph contract_sets(const Graph& g, const std::vector<VertexSet>& blocks) {
    validate_blocks(g, blocks);
    const int n = g.vertex_count();
    std::vector<int> block_of(n, -1);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (int v : blocks[i]) block_of[v] = static_cast<int>(i);

    ContractedGraph out;
    out.vertex_map.assign(n, -1);
    std::vector<int> block_label(blocks.size(), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (block_of[v] < 0) {
            out.vertex_map[v] = next++;
        } else if (block_label[block_of[v]] < 0) {
            block_label[block_of[v]] = next++;
            out.vertex_map[v] = block_label[block_of[v]];
        } else {
            out.vertex_map[v] = block_label[block_of[v]];
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int u = out.vertex_map[e.u], v = out.vertex_map[e.v];
        if (u != v) edges.push_back(Edge{e.id, u, v});
    }
    out.graph = Graph(next, std::move(edges));
    return out;
}

/// Contraction by an edge set: contracts the connected components of (V, F).
inline ContractedGraph contract_edges(const Graph& g, const IdSet& f) {
    std::vector<int> label = g.component_labels(f);
    std::vector<VertexSet> blocks;
    std::map<int, VertexSet> by_label;
    for (int v = 0; v < g.vertex_count(); ++v) by_label[label[v]].push_back(v);
    for (auto& [_, b] : by_label)
        if (b.size() > 1) blocks.push_back(b);
    return contract_sets(g, blocks);
}

}  // namespace lamthin
