#pragma once

#include <string>
#include <vector>

#include "graphforms/braiding.hpp"
#include "graphforms/cocycles.hpp"
#include "graphforms/complex_structure.hpp"
#include "graphforms/graph.hpp"

namespace graphforms {

/// The bidirected n-gon with the braiding that swaps the two return paths at
/// every vertex and the orientation whose holomorphic part is the forward
/// cycle. Vertices are labelled "1".."n" and arithmetic is modulo n, matching
/// the additive group Z_n with n as the identity.
struct PolygonModel {
    int n = 0;
    BidiGraph graph;
    SigmaSpec sigma_spec;
    JSpec j_spec;
};

inline PolygonModel make_polygon(int n) {
    if (n <= 2) raise("NTooSmall", "polygon needs n >= 3 (n = 2 duplicates edges)");
    PolygonModel model;
    model.n = n;
    std::vector<std::string> vertices;
    vertices.reserve(n);
    for (int k = 1; k <= n; ++k) vertices.push_back(std::to_string(k));
    std::vector<std::pair<std::string, std::string>> edges;
    for (int k = 0; k < n; ++k) {
        edges.emplace_back(vertices[k], vertices[(k + 1) % n]);
        edges.emplace_back(vertices[(k + 1) % n], vertices[k]);
    }
    model.graph = BidiGraph::validate(vertices, edges);
    model.sigma_spec = SigmaSpec::polygon_swap(model.graph);
    model.j_spec = JSpec::polygon_forward(model.graph);
    return model;
}

/// The expectation table every pipeline run over the n-gon must reproduce.
struct GoldenReport {
    int n = 0;
    std::size_t dim_omega1 = 0;       // 2n
    std::size_t dim_omega2 = 0;       // n
    std::size_t dim_omega3 = 0;       // 0
    int calculus_dimension = 2;
    std::size_t dim_pq_20 = 0;
    std::size_t dim_pq_02 = 0;
    std::size_t dim_pq_11 = 0;        // n
    std::size_t h_0_0 = 1;            // constants
    std::size_t h_1_0 = 1;
    std::size_t h_1_1 = 1;
    std::size_t h_0_1 = 1;            // engine-derived; excluded from the match predicate
    std::size_t h0_omega1 = 2;
    std::size_t h0_omega2 = 1;
    std::vector<std::size_t> ring_dims{1, 2, 1};
    bool gram_psd = true;
};

inline GoldenReport golden_report(int n) {
    if (n <= 2) raise("NTooSmall", "polygon needs n >= 3");
    GoldenReport g;
    g.n = n;
    g.dim_omega1 = 2 * static_cast<std::size_t>(n);
    g.dim_omega2 = static_cast<std::size_t>(n);
    g.dim_pq_11 = static_cast<std::size_t>(n);
    return g;
}

/// Candidate coboundary witness for tau: value 1 on delta_mu (x) delta_{mu+1},
/// cyclic completion -1 on the swapped tuples, 0 elsewhere. "mu+1" means the
/// holomorphic successor, so the cochain is defined whenever every vertex has
/// exactly one outgoing holomorphic edge (a directed cycle). Whether its
/// coboundary actually equals tau is decided by the engine, not assumed.
inline std::optional<Cochain> successor_candidate_cochain(const BidiGraph& g,
                                                          const ComplexStructure& cs) {
    std::size_t nv = g.vertex_count();
    std::vector<int> successor(nv, -1);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (!cs.is_holomorphic_edge(e)) continue;
        auto [s, t] = g.edges()[e];
        if (successor[s] != -1) return std::nullopt;  // more than one forward edge
        successor[s] = t;
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (successor[v] < 0) return std::nullopt;
    Cochain candidate(1, nv);
    for (std::size_t mu = 0; mu < nv; ++mu) {
        std::size_t next = static_cast<std::size_t>(successor[mu]);
        candidate.at({mu, next}) += Scalar(1);
        candidate.at({next, mu}) -= Scalar(1);
    }
    return candidate;
}

}  // namespace graphforms
