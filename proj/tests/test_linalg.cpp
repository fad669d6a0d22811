#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "graphforms/matrix.hpp"
#include "graphforms/psd.hpp"

using namespace graphforms;

namespace {

struct Rng {
    unsigned long long state = 0x8a5cd789635d2dffULL;
    unsigned long long next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Scalar entry() { return GaussianRational(Rational(small(-4, 4)), Rational(small(-4, 4))); }
};

ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

// Independent elimination used as the oracle for ranks: plain row reduction
// with no shared code with rref().
std::size_t oracle_rank(ExactMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        for (std::size_t cc = 0; cc < m.cols(); ++cc) std::swap(m.at(p, cc), m.at(r, cc));
        for (std::size_t rr = r + 1; rr < m.rows(); ++rr) {
            if (m.at(rr, c).is_zero()) continue;
            Scalar f = m.at(rr, c) / m.at(r, c);
            for (std::size_t cc = c; cc < m.cols(); ++cc) m.at(rr, cc) -= f * m.at(r, cc);
        }
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("rref on identity and zero") {
    auto id = rref(ExactMatrix::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.pivot_columns == std::vector<std::size_t>{0, 1, 2});

    auto zero = rref(ExactMatrix(2, 5));
    CHECK(zero.rank == 0);
    CHECK(zero.pivot_columns.empty());
}

TEST_CASE("rref of the 4-gon degree-2 antisymmetrizer has rank 4") {
    // Build Id - sigma on the sixteen 2-paths of the 4-gon by hand: sigma
    // swaps the two return paths at each vertex and fixes the chains.
    // Path list: (x, y, z) with y adjacent to x, z adjacent to y, mod 4.
    std::vector<std::array<int, 3>> paths;
    auto adj = [](int a, int b) { return (a - b + 4) % 4 == 1 || (b - a + 4) % 4 == 1; };
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z)
                if (adj(x, y) && adj(y, z)) paths.push_back({x, y, z});
    REQUIRE(paths.size() == 16);
    auto find = [&](int x, int y, int z) {
        for (std::size_t k = 0; k < paths.size(); ++k)
            if (paths[k] == std::array<int, 3>{x, y, z}) return k;
        REQUIRE(false);
        return std::size_t(0);
    };
    ExactMatrix a2(16, 16);
    for (std::size_t k = 0; k < 16; ++k) {
        auto [x, y, z] = paths[k];
        a2.at(k, k) += Scalar(1);
        if (x == z) {
            int other = (y == (x + 1) % 4) ? (x + 3) % 4 : (x + 1) % 4;
            a2.at(find(x, other, z), k) -= Scalar(1);
        } else {
            a2.at(k, k) -= Scalar(1);
        }
    }
    CHECK(oracle_rank(a2) == 4);
    CHECK(rref(a2).rank == 4);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(ExactMatrix::identity(4)).empty());

    // [1, i] has kernel spanned by (-i, 1).
    ExactMatrix m(1, 2);
    m.at(0, 0) = Scalar(1);
    m.at(0, 1) = GaussianRational::i();
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    Scalar ratio = k[0][0] / k[0][1];
    CHECK(ratio == -GaussianRational::i());
}

TEST_CASE("kernel and rank properties on random matrices") {
    Rng rng;
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t rows = 1 + rng.small(0, 5);
        std::size_t cols = 1 + rng.small(0, 5);
        ExactMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng.small(0, 2)) m.at(r, c) = rng.entry();
        auto kb = kernel_basis(m);
        CHECK(rank(m) + kb.size() == cols);
        for (const auto& v : kb) CHECK(is_zero_vec(m * v));
    }
}

TEST_CASE("solve") {
    ExactMatrix a = from_rows({{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}});
    auto x = solve(a, {Scalar(5), Scalar(11)});
    REQUIRE(x.has_value());
    CHECK((a * *x) == Vec{Scalar(5), Scalar(11)});

    // Inconsistent system.
    ExactMatrix b = from_rows({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}});
    CHECK_FALSE(solve(b, {Scalar(0), Scalar(1)}).has_value());
}

TEST_CASE("psd certification basics") {
    ExactMatrix d(3, 3);
    d.at(0, 0) = Scalar(1);
    d.at(2, 2) = Scalar(2);
    auto rep = hermitian_psd(d);
    CHECK(rep.is_hermitian);
    CHECK(rep.is_psd);

    ExactMatrix neg(2, 2);
    neg.at(0, 0) = Scalar(1);
    neg.at(1, 1) = Scalar(-1);
    auto bad = hermitian_psd(neg);
    CHECK(bad.is_hermitian);
    CHECK_FALSE(bad.is_psd);
    REQUIRE(bad.witness.has_value());
    CHECK((*bad.witness)[0].is_zero());
    CHECK_FALSE((*bad.witness)[1].is_zero());
    CHECK(bad.witness_value->re().sign() < 0);

    ExactMatrix nh(2, 2);
    nh.at(0, 1) = Scalar(1);
    auto rep2 = hermitian_psd(nh);
    CHECK_FALSE(rep2.is_hermitian);
    CHECK(rep2.non_hermitian_entry.has_value());

    CHECK_THROWS_AS(hermitian_psd(ExactMatrix(2, 3)), Error);
}

TEST_CASE("psd zero diagonal with nonzero row is rejected with exact witness") {
    // [[0, 1], [1, 0]] is indefinite.
    ExactMatrix m(2, 2);
    m.at(0, 1) = Scalar(1);
    m.at(1, 0) = Scalar(1);
    auto rep = hermitian_psd(m);
    CHECK(rep.is_hermitian);
    CHECK_FALSE(rep.is_psd);
    REQUIRE(rep.witness.has_value());
    Scalar value = detail::quadratic_form(m, *rep.witness);
    CHECK(value.is_real());
    CHECK(value.re().sign() < 0);
}

TEST_CASE("psd accepts N* N for random N") {
    Rng rng;
    for (int trial = 0; trial < 25; ++trial) {
        ExactMatrix n(6, 6);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 6; ++c) n.at(r, c) = rng.entry();
        auto rep = hermitian_psd(n.conj_transpose() * n);
        CHECK(rep.is_hermitian);
        CHECK(rep.is_psd);
    }
}

TEST_CASE("psd witnesses on random indefinite Hermitian matrices verify exactly") {
    Rng rng;
    int refuted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t dim = 3 + rng.small(0, 3);
        ExactMatrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = r + 1; c < dim; ++c) {
                m.at(r, c) = rng.entry();
                m.at(c, r) = m.at(r, c).conj();
            }
            m.at(r, r) = Scalar(Rational(rng.small(-6, 6)));
        }
        auto rep = hermitian_psd(m);
        REQUIRE(rep.is_hermitian);
        if (!rep.is_psd) {
            ++refuted;
            REQUIRE(rep.witness.has_value());
            Scalar value = detail::quadratic_form(m, *rep.witness);
            CHECK(value.is_real());
            CHECK(value.re().sign() < 0);
        }
    }
    CHECK(refuted > 0);  // random indefinite matrices must show up
}
