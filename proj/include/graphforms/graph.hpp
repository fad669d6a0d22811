#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "graphforms/error.hpp"

namespace graphforms {

/// A directed path of n >= 1 steps, stored as its vertex-index sequence
/// v0 -> v1 -> ... -> vn. Consecutive vertices are adjacent by construction.
using Path = std::vector<int>;

/// Finite bidirected graph: loop-free, multiplicity-free, and every directed
/// edge is paired with its reverse. Vertex order is the order given at
/// validation; edges are sorted by (source, target) index, which fixes the
/// basis order of the one-form space.
class BidiGraph {
public:
    static BidiGraph validate(std::vector<std::string> vertices,
                              const std::vector<std::pair<std::string, std::string>>& raw_edges) {
        BidiGraph g;
        g.vertices_ = std::move(vertices);
        for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
            if (g.index_.count(g.vertices_[i]))
                raise("DuplicateVertex", "vertex '" + g.vertices_[i] + "' listed twice");
            g.index_[g.vertices_[i]] = static_cast<int>(i);
        }
        std::vector<std::pair<int, int>> edges;
        for (const auto& [s, t] : raw_edges) {
            auto is = g.index_.find(s);
            auto it = g.index_.find(t);
            if (is == g.index_.end()) raise("UnknownVertex", "edge endpoint '" + s + "' not a vertex");
            if (it == g.index_.end()) raise("UnknownVertex", "edge endpoint '" + t + "' not a vertex");
            if (is->second == it->second) raise("LoopEdge", "loop at vertex '" + s + "'");
            edges.emplace_back(is->second, it->second);
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t k = 1; k < edges.size(); ++k)
            if (edges[k] == edges[k - 1])
                raise("DuplicateEdge", "duplicate edge " + g.edge_name(edges[k]));
        for (const auto& e : edges) {
            std::pair<int, int> rev{e.second, e.first};
            if (!std::binary_search(edges.begin(), edges.end(), rev))
                raise("MissingReverse", "edge " + g.edge_name(e) + " has no reverse");
        }
        g.edges_ = std::move(edges);
        for (std::size_t k = 0; k < g.edges_.size(); ++k) g.edge_index_[g.edges_[k]] = k;
        g.out_.assign(g.vertices_.size(), {});
        for (const auto& [s, t] : g.edges_) g.out_[s].push_back(t);
        return g;
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::string& label(int v) const { return vertices_[v]; }

    int vertex(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) raise("UnknownVertex", "no vertex '" + label + "'");
        return it->second;
    }

    std::size_t edge(int s, int t) const {
        auto it = edge_index_.find({s, t});
        if (it == edge_index_.end())
            raise("UnknownEdge", "no edge " + edge_name({s, t}));
        return it->second;
    }

    bool has_edge(int s, int t) const { return edge_index_.count({s, t}) != 0; }
    std::size_t reverse_edge(std::size_t e) const { return edge(edges_[e].second, edges_[e].first); }

    /// Out-neighbors in vertex-index order (already sorted by construction).
    const std::vector<int>& out_neighbors(int v) const { return out_[v]; }

    std::string edge_name(const std::pair<int, int>& e) const {
        return label(e.first) + "->" + label(e.second);
    }

    std::vector<std::string> path_labels(const Path& p) const {
        std::vector<std::string> out;
        out.reserve(p.size());
        for (int v : p) out.push_back(label(v));
        return out;
    }

    std::string path_name(const Path& p) const {
        std::string s;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) s += "->";
            s += label(p[k]);
        }
        return s;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::string, int> index_;
    std::map<std::pair<int, int>, std::size_t> edge_index_;
    std::vector<std::vector<int>> out_;
};

/// All n-step directed paths in lexicographic vertex-sequence order: the
/// canonical basis of the n-fold tensor power of the one-form space.
/// Deterministic; repeated calls give identical orderings.
inline std::vector<Path> enumerate_paths(const BidiGraph& g, int steps) {
    if (steps < 1) raise("DegreeOutOfRange", "path enumeration needs n >= 1");
    std::vector<Path> out;
    Path current;
    auto extend = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int next : g.out_neighbors(current.back())) {
            current.push_back(next);
            self(self, remaining - 1);
            current.pop_back();
        }
    };
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        current.assign(1, static_cast<int>(v));
        extend(extend, steps);
    }
    return out;
}

/// Basis bookkeeping for one tensor degree: the ordered path list plus the
/// reverse lookup used when assembling operator matrices.
class PathIndex {
public:
    PathIndex() = default;
    PathIndex(const BidiGraph& g, int steps) : steps_(steps), paths_(enumerate_paths(g, steps)) {
        for (std::size_t k = 0; k < paths_.size(); ++k) lookup_[paths_[k]] = k;
    }

    int steps() const { return steps_; }
    std::size_t size() const { return paths_.size(); }
    const std::vector<Path>& paths() const { return paths_; }
    const Path& path(std::size_t k) const { return paths_[k]; }

    std::size_t index(const Path& p) const {
        auto it = lookup_.find(p);
        if (it == lookup_.end()) raise("UnknownPath", "path not in basis");
        return it->second;
    }

    bool contains(const Path& p) const { return lookup_.count(p) != 0; }

private:
    int steps_ = 0;
    std::vector<Path> paths_;
    std::map<Path, std::size_t> lookup_;
};

}  // namespace graphforms
