#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphforms/graph.hpp"
#include "graphforms/polygon.hpp"

using namespace graphforms;

namespace {

BidiGraph triangle() {
    return BidiGraph::validate({"1", "2", "3"}, {{"1", "2"},
                                                 {"2", "1"},
                                                 {"2", "3"},
                                                 {"3", "2"},
                                                 {"1", "3"},
                                                 {"3", "1"}});
}

// Number of n-step walks via powers of the 0/1 adjacency matrix; independent
// of the path enumerator.
std::size_t walk_count(const BidiGraph& g, int steps) {
    std::size_t nv = g.vertex_count();
    std::vector<std::vector<std::size_t>> a(nv, std::vector<std::size_t>(nv, 0));
    for (auto [s, t] : g.edges()) a[s][t] = 1;
    std::vector<std::vector<std::size_t>> acc = a;
    for (int k = 1; k < steps; ++k) {
        std::vector<std::vector<std::size_t>> next(nv, std::vector<std::size_t>(nv, 0));
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j)
                for (std::size_t l = 0; l < nv; ++l) next[i][j] += acc[i][l] * a[l][j];
        acc = std::move(next);
    }
    std::size_t total = 0;
    for (const auto& row : acc)
        for (auto v : row) total += v;
    return total;
}

}  // namespace

TEST_CASE("triangle with all six directed edges validates") {
    BidiGraph g = triangle();
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 6);
    CHECK(g.has_edge(0, 1));
    CHECK(g.reverse_edge(g.edge(0, 1)) == g.edge(1, 0));
}

TEST_CASE("validation rejects bad edge sets") {
    CHECK_THROWS_WITH_AS(BidiGraph::validate({"1", "2"}, {{"1", "2"}}),
                         "MissingReverse: edge 1->2 has no reverse", Error);
    CHECK_THROWS_AS(BidiGraph::validate({"1", "2"}, {{"1", "1"}}), Error);
    CHECK_THROWS_AS(
        BidiGraph::validate({"1", "2"}, {{"1", "2"}, {"1", "2"}, {"2", "1"}}), Error);
    CHECK_THROWS_AS(BidiGraph::validate({"1"}, {{"1", "7"}}), Error);
    CHECK_THROWS_AS(BidiGraph::validate({"1", "1"}, {}), Error);
}

TEST_CASE("7-gon has 14 edges") {
    auto model = make_polygon(7);
    CHECK(model.graph.vertex_count() == 7);
    CHECK(model.graph.edge_count() == 14);
}

TEST_CASE("path enumeration is lexicographic and deterministic") {
    BidiGraph g = triangle();
    auto paths = enumerate_paths(g, 2);
    auto again = enumerate_paths(g, 2);
    CHECK(paths == again);
    for (std::size_t k = 1; k < paths.size(); ++k) CHECK(paths[k - 1] < paths[k]);
    CHECK(paths.front() == Path{0, 1, 0});
    CHECK_THROWS_AS(enumerate_paths(g, 0), Error);
}

TEST_CASE("polygon path counts match the closed formulas") {
    for (int n : {3, 5, 8}) {
        auto model = make_polygon(n);
        CHECK(enumerate_paths(model.graph, 1).size() == 2 * static_cast<std::size_t>(n));
        CHECK(enumerate_paths(model.graph, 2).size() == 4 * static_cast<std::size_t>(n));
        CHECK(enumerate_paths(model.graph, 3).size() == 8 * static_cast<std::size_t>(n));
    }
}

TEST_CASE("path counts agree with adjacency matrix powers") {
    for (int steps : {1, 2, 3, 4}) {
        CHECK(enumerate_paths(triangle(), steps).size() == walk_count(triangle(), steps));
        auto model = make_polygon(5);
        CHECK(enumerate_paths(model.graph, steps).size() == walk_count(model.graph, steps));
    }
}

TEST_CASE("path index lookup") {
    BidiGraph g = triangle();
    PathIndex idx(g, 2);
    for (std::size_t k = 0; k < idx.size(); ++k) CHECK(idx.index(idx.path(k)) == k);
    CHECK_FALSE(idx.contains(Path{0, 0, 0}));
}
