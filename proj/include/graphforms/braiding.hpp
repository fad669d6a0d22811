#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <vector>

#include "graphforms/first_order.hpp"
#include "graphforms/graph.hpp"
#include "graphforms/matrix.hpp"

namespace graphforms {

/// Permutation-type braiding data: for each ordered vertex pair (x, z) that
/// admits at least one 2-path x -> y -> z, a bijection of the admissible
/// midpoints {y}. Path-reversal invariance (block (x,z) equals block (z,x)
/// for x != z) is what later makes sigma commute with the involution.
struct SigmaSpec {
    std::map<std::pair<int, int>, std::map<int, int>> blocks;

    /// The braiding used throughout the polygon study: swap the two return
    /// paths at every vertex, fix everything else.
    static SigmaSpec polygon_swap(const BidiGraph& g);

    /// Identity on every block; always braids.
    static SigmaSpec identity(const BidiGraph& g);
};

namespace detail {

inline std::map<std::pair<int, int>, std::vector<int>> midpoint_sets(const BidiGraph& g) {
    std::map<std::pair<int, int>, std::vector<int>> mids;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (int y : g.out_neighbors(static_cast<int>(v)))
            for (int z : g.out_neighbors(y)) mids[{static_cast<int>(v), z}].push_back(y);
    for (auto& [key, ys] : mids) std::sort(ys.begin(), ys.end());
    return mids;
}

}  // namespace detail

inline SigmaSpec SigmaSpec::identity(const BidiGraph& g) {
    SigmaSpec spec;
    for (auto& [key, ys] : detail::midpoint_sets(g))
        for (int y : ys) spec.blocks[key][y] = y;
    return spec;
}

inline SigmaSpec SigmaSpec::polygon_swap(const BidiGraph& g) {
    SigmaSpec spec = SigmaSpec::identity(g);
    for (auto& [key, block] : spec.blocks) {
        if (key.first != key.second) continue;
        // Return paths x -> y -> x; the polygon has exactly two, which get
        // swapped. (On generic graphs this helper still swaps only when the
        // midpoint set has size two.)
        if (block.size() == 2) {
            auto a = block.begin()->first;
            auto b = std::next(block.begin())->first;
            block[a] = b;
            block[b] = a;
        }
    }
    return spec;
}

class SigmaOperator;

ExactMatrix leg_operator(const SigmaOperator& sigma, int k, int n, const PathIndex& basis);

/// Validated braiding on the 2-path space. Construction checks, in order:
/// block coverage, permutation type, path-reversal invariance, the braid
/// relation on 3-paths, and commutation with the graded involution * on
/// 2-tensors (a consequence of reversal invariance, re-checked anyway).
class SigmaOperator {
public:
    static SigmaOperator build(const BidiGraph& g, const SigmaSpec& spec) {
        SigmaOperator op(g);
        auto mids = detail::midpoint_sets(g);
        for (const auto& [key, block] : spec.blocks)
            if (!mids.count(key))
                raise("UnexpectedPair",
                      "sigma block (" + g.label(key.first) + "," + g.label(key.second) +
                          ") has no 2-paths");
        for (const auto& [key, ys] : mids) {
            auto it = spec.blocks.find(key);
            if (it == spec.blocks.end())
                raise("MissingPair",
                      "sigma spec lacks block (" + g.label(key.first) + "," + g.label(key.second) +
                          ")");
            const auto& block = it->second;
            std::vector<int> image;
            for (int y : ys) {
                auto jt = block.find(y);
                if (jt == block.end())
                    raise("NotPermutation", "block (" + g.label(key.first) + "," +
                                                g.label(key.second) + ") misses midpoint " +
                                                g.label(y));
                image.push_back(jt->second);
            }
            if (block.size() != ys.size())
                raise("NotPermutation", "block (" + g.label(key.first) + "," +
                                            g.label(key.second) + ") has extra midpoints");
            auto sorted = image;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != ys)
                raise("NotPermutation", "block (" + g.label(key.first) + "," +
                                            g.label(key.second) + ") is not a bijection");
        }
        for (const auto& [key, block] : spec.blocks) {
            if (key.first >= key.second) continue;
            std::pair<int, int> rev{key.second, key.first};
            if (spec.blocks.at(rev) != block)
                raise("NotPathReversalInvariant",
                      "blocks (" + g.label(key.first) + "," + g.label(key.second) +
                          ") and reverse differ");
        }

        op.matrix_ = ExactMatrix(op.paths2_.size(), op.paths2_.size());
        for (std::size_t col = 0; col < op.paths2_.size(); ++col) {
            const Path& p = op.paths2_.path(col);
            int w = spec.blocks.at({p[0], p[2]}).at(p[1]);
            op.matrix_.at(op.paths2_.index({p[0], w, p[2]}), col) = Scalar(1);
        }

        op.check_braid();
        op.check_star_commutation();
        return op;
    }

    const BidiGraph& graph() const { return graph_; }
    const ExactMatrix& matrix() const { return matrix_; }
    const PathIndex& paths2() const { return paths2_; }
    const PathIndex& paths3() const { return paths3_; }

    /// sigma applied to a basis 2-path, as a sparse column.
    Vec apply_to_path(std::size_t col) const { return matrix_.col(col); }

private:
    explicit SigmaOperator(const BidiGraph& g) : graph_(g), paths2_(g, 2), paths3_(g, 3) {}

    void check_braid() const {
        ExactMatrix s12 = leg_operator(*this, 1, 3, paths3_);
        ExactMatrix s23 = leg_operator(*this, 2, 3, paths3_);
        ExactMatrix lhs = s12 * (s23 * s12);
        ExactMatrix rhs = s23 * (s12 * s23);
        if (lhs == rhs) return;
        for (std::size_t col = 0; col < paths3_.size(); ++col)
            for (std::size_t row = 0; row < paths3_.size(); ++row)
                if (lhs.at(row, col) != rhs.at(row, col))
                    raise("BraidFailure",
                          "braid relation fails on 3-path " + graph_.path_name(paths3_.path(col)));
    }

    // * on 2-tensors is (xi_{x->y} (x) xi_{y->z})* = -xi_{z->y} (x) xi_{y->x};
    // antilinearity is invisible here because sigma has 0/1 entries, but the
    // check conjugates anyway.
    void check_star_commutation() const {
        for (std::size_t col = 0; col < paths2_.size(); ++col) {
            Vec starred = star2(unit_vec(col));
            Vec lhs = matrix_ * starred;
            Vec rhs = star2(matrix_ * unit_vec(col));
            if (lhs != rhs)
                raise("StarCommutationFailure",
                      "sigma does not commute with * on 2-path " +
                          graph_.path_name(paths2_.path(col)));
        }
    }

    Vec unit_vec(std::size_t k) const {
        Vec v(paths2_.size());
        v[k] = Scalar(1);
        return v;
    }

    Vec star2(const Vec& v) const {
        Vec out(paths2_.size());
        for (std::size_t k = 0; k < paths2_.size(); ++k) {
            if (v[k].is_zero()) continue;
            const Path& p = paths2_.path(k);
            out[paths2_.index({p[2], p[1], p[0]})] -= v[k].conj();
        }
        return out;
    }

    BidiGraph graph_;
    PathIndex paths2_;
    PathIndex paths3_;
    ExactMatrix matrix_;
};

/// sigma_k on the n-fold tensor power: acts as sigma on tensor legs
/// (k, k+1), identity elsewhere. Requires 1 <= k <= n-1.
inline ExactMatrix leg_operator(const SigmaOperator& sigma, int k, int n, const PathIndex& basis) {
    if (k < 1 || k > n - 1) raise("PositionOutOfRange", "leg operator position out of range");
    if (basis.steps() != n) raise("ShapeMismatch", "basis degree mismatch in leg_operator");
    const PathIndex& p2 = sigma.paths2();
    ExactMatrix out(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const Path& p = basis.path(col);
        Path seg{p[k - 1], p[k], p[k + 1]};
        Vec image = sigma.apply_to_path(p2.index(seg));
        for (std::size_t t = 0; t < image.size(); ++t) {
            if (image[t].is_zero()) continue;
            Path q = p;
            q[k] = p2.path(t)[1];
            out.at(basis.index(q), col) += image[t];
        }
    }
    return out;
}

enum class WordStrategy { leftmost_descent, rightmost_descent };

/// A reduced word for the permutation (one-line, 0-based): positions k with
/// p = t_{w_last} ... t_{w_first}. Each recorded swap removes exactly one
/// inversion, so the word length equals the inversion count.
inline std::vector<int> reduced_word(std::vector<int> perm,
                                     WordStrategy strategy = WordStrategy::leftmost_descent) {
    std::vector<int> word;
    const int n = static_cast<int>(perm.size());
    for (;;) {
        int descent = -1;
        if (strategy == WordStrategy::leftmost_descent) {
            for (int k = 0; k + 1 < n; ++k)
                if (perm[k] > perm[k + 1]) {
                    descent = k;
                    break;
                }
        } else {
            for (int k = n - 2; k >= 0; --k)
                if (perm[k] > perm[k + 1]) {
                    descent = k;
                    break;
                }
        }
        if (descent < 0) break;
        std::swap(perm[descent], perm[descent + 1]);
        word.push_back(descent + 1);  // 1-based leg position
    }
    return word;
}

inline int inversion_count(const std::vector<int>& perm) {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv;
}

inline int perm_sign(const std::vector<int>& perm) {
    return inversion_count(perm) % 2 == 0 ? 1 : -1;
}

/// Pi_p = product of leg operators along a reduced word for p. The braid
/// relation makes the result independent of the chosen word; the two word
/// strategies above give the property test its independent route.
inline ExactMatrix pi_p(const SigmaOperator& sigma, const std::vector<int>& perm,
                        const PathIndex& basis,
                        WordStrategy strategy = WordStrategy::leftmost_descent) {
    ExactMatrix m = ExactMatrix::identity(basis.size());
    for (int k : reduced_word(perm, strategy))
        m = leg_operator(sigma, k, static_cast<int>(perm.size()), basis) * m;
    return m;
}

/// A_n = sum over S_n of sgn(p) Pi_p. Guarded against factorial blowup; the
/// polygon study only ever needs n <= 3.
inline ExactMatrix antisymmetrizer(const SigmaOperator& sigma, int n, const PathIndex& basis,
                                   int budget_degree = 6) {
    if (n < 2) raise("DegreeOutOfRange", "antisymmetrizer needs n >= 2");
    if (n > budget_degree)
        raise("DegreeTooLarge", "antisymmetrizer degree " + std::to_string(n) +
                                    " exceeds budget " + std::to_string(budget_degree));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    ExactMatrix acc(basis.size(), basis.size());
    do {
        ExactMatrix term = pi_p(sigma, perm, basis);
        if (perm_sign(perm) > 0)
            acc += term;
        else
            acc -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

/// sigma fixes theta (x) theta; true for any permutation-type braiding and a
/// hypothesis of the prolongation theorem, so it is re-checked explicitly.
inline bool fixes_theta_tensor_theta(const SigmaOperator& sigma) {
    const PathIndex& p2 = sigma.paths2();
    Vec theta2(p2.size());
    for (auto& c : theta2) c = Scalar(1);  // theta (x) theta = sum of all 2-paths
    return sigma.matrix() * theta2 == theta2;
}

}  // namespace graphforms
