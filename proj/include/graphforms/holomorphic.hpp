#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphforms/complex_structure.hpp"

namespace graphforms {

/// Composable-pair basis of an interior tensor product whose factors are
/// already presented on bases with well-defined source/target vertices.
struct TensorBasis {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup;

    std::size_t size() const { return pairs.size(); }
    std::size_t index(std::size_t left, std::size_t right) const {
        auto it = lookup.find({left, right});
        if (it == lookup.end()) raise("UnknownPath", "tensor pair not in basis");
        return it->second;
    }
    void push(std::size_t left, std::size_t right) {
        lookup[{left, right}] = pairs.size();
        pairs.emplace_back(left, right);
    }
};

struct RestrictionReport {
    bool forward_block_vanishes = false;   // (pi10 (x) id) sigma (id (x) pi01) = 0
    bool backward_block_vanishes = false;  // (pi01 (x) id) sigma (id (x) pi10) = 0
    bool intertwines = false;              // sigma (id (x) pi01) = (pi01 (x) id) sigma
    bool invertible = false;               // restricted block is a bijection
    std::optional<Path> witness;
    ExactMatrix sigma_bar;  // restricted to 2-paths with backward second leg
    std::vector<std::size_t> domain_paths;    // 2-path indices, backward second leg
    std::vector<std::size_t> codomain_paths;  // 2-path indices, backward first leg

    bool ok() const {
        return forward_block_vanishes && backward_block_vanishes && intertwines && invertible;
    }
};

struct UniquenessReport {
    std::size_t solution_dim = 0;  // dimension of bimodule maps A -> Omega^{0,1}
    bool holomorphic_part_connected = false;
};

/// Whether the delbar operator on Omega^1 is a holomorphic structure. When
/// Omega^{0,2} = 0 its curvature vanishes for free; otherwise the curvature
/// is computed exactly and the verdict reports what it found.
struct HolomorphicVerdict {
    bool omega02_is_zero = false;
    bool curvature_zero = false;
    bool holomorphic() const { return omega02_is_zero || curvature_zero; }
};

struct SectionRing {
    Vec unit;                              // basis of H^0(A), the constants
    std::vector<Vec> sections1;            // kernel of nabla_bar, edge coordinates
    std::vector<Vec> sections2;            // kernel of nabla_bar2, Omega^2 coordinates
    std::vector<std::size_t> graded_dims;  // (dim H^0(A), dim H^0(O^1), dim H^0(O^2))
    bool wedge_closed = false;             // products of sections stay sections
    bool squares_vanish = false;           // X_i ^ X_i = 0
    bool anticommute = false;              // X_1 ^ X_2 = -X_2 ^ X_1
    bool top_nonzero = false;              // X_1 ^ X_2 != 0
    bool exterior_algebra = false;         // graded dims match Lambda(C^2): (1,2,1)
    std::vector<std::vector<Vec>> products;  // wedge table of degree-1 sections
};

/// The connection layer over a fixed complex structure: the bimodule
/// connection nabla(w) = theta (x) w - sigma(w (x) theta) (+ alpha), its
/// curvature, the induced delbar operators on Omega^1 and Omega^2, the
/// holomorphic section spaces, and their ring.
///
/// Construction verifies every Leibniz rule, the restriction identities of
/// sigma, the tensor-square relation, and the descent condition; violations
/// throw with the offending basis witness. With sigma validated and alpha a
/// genuine bimodule map these all hold, so a throw flags bad input.
class HolomorphicLayer {
public:
    HolomorphicLayer(const Calculus& calc, const ComplexStructure& cs,
                     std::optional<ExactMatrix> alpha = std::nullopt)
        : calc_(calc), cs_(cs) {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        if (calc_.max_degree() < 2) raise("DegreeOutOfRange", "connection layer needs degree 2");

        if (alpha) {
            if (alpha->rows() != p2.size() || alpha->cols() != g.edge_count())
                raise("AlphaInvalid", "alpha must map edges to 2-path coordinates");
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                auto [x, y] = g.edges()[e];
                for (std::size_t r = 0; r < p2.size(); ++r) {
                    if (alpha->at(r, e).is_zero()) continue;
                    const Path& p = p2.path(r);
                    if (p.front() != x || p.back() != y)
                        raise("AlphaInvalid",
                              "alpha is not vertex-pair blocked at edge " + g.edge_name({x, y}));
                }
            }
            alpha_ = std::move(*alpha);
        }

        build_nabla();
        verify_leibniz();
        build_tensor_bases();
        build_restriction();
        // The delbar sub-layer exists only when sigma genuinely restricts to
        // Omega^1 (x) Omega^{0,1} -> Omega^{0,1} (x) Omega^1; the connection
        // and its curvature do not depend on that.
        if (restriction_.ok()) {
            build_nabla_bar();
            verify_delbar_law();
            build_tensor_square();
            build_nabla_bar2();
            delbar_ready_ = true;
        }
    }

    HolomorphicLayer(const HolomorphicLayer&) = delete;
    HolomorphicLayer& operator=(const HolomorphicLayer&) = delete;

    const ExactMatrix& nabla() const { return nabla_; }  // edges -> 2-paths
    const RestrictionReport& restriction() const { return restriction_; }
    bool delbar_available() const { return delbar_ready_; }

    const ExactMatrix& nabla_bar() const {  // edges -> 2-paths
        require_delbar();
        return nabla_bar_;
    }
    const ExactMatrix& nabla_bar_tensor2() const {  // 2-paths -> 3-paths
        require_delbar();
        return nabla_bar_t2_;
    }
    const ExactMatrix& nabla_bar2() const {  // Omega^2 -> pair basis
        require_delbar();
        return nabla_bar2_;
    }
    const TensorBasis& omega2_tensor_omega1() const { return b21_; }
    const TensorBasis& omega01_tensor_omega2() const { return b12_; }

    /// Curvature nabla^2: Omega^1 -> Omega^2 (x) Omega^1 via the standard
    /// extension nabla(w (x) e) = dw (x) e - w ^ nabla(e).
    const ExactMatrix& curvature() const {
        if (!curvature_) curvature_ = build_curvature();
        return *curvature_;
    }

    /// Exact kernel of the delbar operator on the requested module.
    std::vector<Vec> holomorphic_sections_a() const {
        std::size_t nv = calc_.dim(0);
        ExactMatrix m(calc_.graph().edge_count(), nv);
        for (std::size_t x = 0; x < nv; ++x) {
            Vec f(nv);
            f[x] = Scalar(1);
            m.set_col(x, cs_.delbar0(f));
        }
        return kernel_basis(m);
    }
    std::vector<Vec> holomorphic_sections_omega1() const {
        require_delbar();
        return kernel_basis(nabla_bar_);
    }
    std::vector<Vec> holomorphic_sections_omega2() const {
        require_delbar();
        return kernel_basis(nabla_bar2_);
    }

    SectionRing section_ring() const;
    UniquenessReport unique_bimodule_delbar_check() const;

    /// The holomorphic curvature nabla_bar^2: Omega^1 -> Omega^{0,2} (x) Omega^1
    /// via nabla_bar(w (x) e) = delbar(w) (x) e - w ^ nabla_bar(e), kept in
    /// the (0,2)-component. Zero for free when Omega^{0,2} vanishes.
    HolomorphicVerdict holomorphic_verdict() const {
        require_delbar();
        HolomorphicVerdict verdict;
        std::size_t dim02 = calc_.dim(2) == 0 ? 0 : cs_.pq(2).component_dim(0, 2);
        verdict.omega02_is_zero = dim02 == 0;
        if (verdict.omega02_is_zero) {
            verdict.curvature_zero = true;
            return verdict;
        }
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        const ExactMatrix& pi02 = cs_.pq(2).projector(0, 2);
        bool zero = true;
        for (std::size_t e = 0; e < g.edge_count() && zero; ++e) {
            Vec nb = nabla_bar_.col(e);
            // accumulate per tail edge: Omega^{0,2}-component (x) xi_tail
            std::map<std::size_t, Vec> acc;
            for (std::size_t k = 0; k < nb.size(); ++k) {
                if (nb[k].is_zero()) continue;
                const Path& p = p2.path(k);
                std::size_t w_edge = g.edge(p[0], p[1]);
                std::size_t e_edge = g.edge(p[1], p[2]);
                Vec w_unit(g.edge_count());
                w_unit[w_edge] = nb[k];
                // delbar(w) (x) e: (0,2)-component of d(w), tail composable
                Vec dw02 = pi02 * (calc_.d_matrix(1) * w_unit);
                for (std::size_t q = 0; q < dw02.size(); ++q) {
                    if (dw02[q].is_zero()) continue;
                    if (calc_.space(2).paths.path(calc_.space(2).quotient_paths[q]).back() !=
                        p[1])
                        continue;
                    auto& slot = acc.try_emplace(e_edge, Vec(calc_.dim(2))).first->second;
                    slot[q] += dw02[q];
                }
                // - w ^ nabla_bar(e)
                Vec ne = nabla_bar_.col(e_edge);
                for (std::size_t m = 0; m < ne.size(); ++m) {
                    if (ne[m].is_zero()) continue;
                    const Path& q = p2.path(m);
                    if (q.front() != p[1]) continue;
                    Vec cls = pi02 * calc_.class_of_path(2, {p[0], p[1], q[1]});
                    std::size_t tail = g.edge(q[1], q[2]);
                    for (std::size_t t = 0; t < cls.size(); ++t) {
                        if (cls[t].is_zero()) continue;
                        auto& slot = acc.try_emplace(tail, Vec(calc_.dim(2))).first->second;
                        slot[t] -= nb[k] * ne[m] * cls[t];
                    }
                }
            }
            for (const auto& [tail, component] : acc)
                if (!is_zero_vec(component)) zero = false;
        }
        verdict.curvature_zero = zero;
        return verdict;
    }

private:
    // theta (x) xi_e and xi_e (x) theta as 2-path vectors.
    Vec theta_tensor_edge(std::size_t e) const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        auto [x, y] = g.edges()[e];
        Vec v(p2.size());
        for (std::size_t f = 0; f < g.edge_count(); ++f) {
            auto [u, w] = g.edges()[f];
            if (w == x) v[p2.index({u, x, y})] += Scalar(1);
        }
        return v;
    }
    Vec edge_tensor_theta(std::size_t e) const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        auto [x, y] = g.edges()[e];
        Vec v(p2.size());
        for (int w : g.out_neighbors(y)) v[p2.index({x, y, w})] += Scalar(1);
        return v;
    }

    Vec act_on_paths(const PathIndex& basis, const Vec& v, int vertex, bool left) const {
        Vec out(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k].is_zero()) continue;
            const Path& p = basis.path(k);
            if ((left ? p.front() : p.back()) == vertex) out[k] = v[k];
        }
        return out;
    }

    // Diagonal filters (pi^{a,b} (x) id) and (id (x) pi^{a,b}) on 2-paths.
    Vec filter_leg(const PathIndex& p2, const Vec& v, int leg, bool keep_holomorphic) const {
        const BidiGraph& g = calc_.graph();
        Vec out(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k].is_zero()) continue;
            const Path& p = p2.path(k);
            std::size_t e = g.edge(p[leg], p[leg + 1]);
            if (cs_.is_holomorphic_edge(e) == keep_holomorphic) out[k] = v[k];
        }
        return out;
    }

    void build_nabla() {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        nabla_ = ExactMatrix(p2.size(), g.edge_count());
        const ExactMatrix& sigma = calc_.sigma().matrix();
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            Vec col = theta_tensor_edge(e) - sigma * edge_tensor_theta(e);
            if (alpha_.rows() > 0) col = col + alpha_.col(e);
            nabla_.set_col(e, col);
        }
    }

    void verify_leibniz() const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        const ExactMatrix& sigma = calc_.sigma().matrix();
        std::size_t nv = g.vertex_count();
        for (std::size_t x = 0; x < nv; ++x) {
            Vec f(nv);
            f[x] = Scalar(1);
            Vec df = calc_.d_matrix(0) * f;
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                auto [s, t] = g.edges()[e];
                // left: nabla(f.w) = df (x) w + f.nabla(w)
                Vec lhs = static_cast<int>(x) == s ? nabla_.col(e) : Vec(p2.size());
                Vec rhs = tensor_edge_left(df, e) +
                          act_on_paths(p2, nabla_.col(e), static_cast<int>(x), true);
                if (lhs != rhs)
                    raise("LeibnizFailure", "left Leibniz fails at (" + g.label(x) + ", " +
                                                g.edge_name({s, t}) + ")");
                // twisted right: nabla(w.f) = nabla(w).f + sigma(w (x) df)
                Vec lhs2 = static_cast<int>(x) == t ? nabla_.col(e) : Vec(p2.size());
                Vec rhs2 = act_on_paths(p2, nabla_.col(e), static_cast<int>(x), false) +
                           sigma * tensor_edge_right(e, df);
                if (lhs2 != rhs2)
                    raise("LeibnizFailure", "twisted right Leibniz fails at (" + g.label(x) +
                                                ", " + g.edge_name({s, t}) + ")");
            }
        }
    }

    // df (x) xi_e and xi_e (x) df as 2-path vectors.
    Vec tensor_edge_left(const Vec& one_form, std::size_t e) const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        auto [x, y] = g.edges()[e];
        Vec v(p2.size());
        for (std::size_t f = 0; f < g.edge_count(); ++f) {
            if (one_form[f].is_zero()) continue;
            auto [u, w] = g.edges()[f];
            if (w == x) v[p2.index({u, x, y})] += one_form[f];
        }
        return v;
    }
    Vec tensor_edge_right(std::size_t e, const Vec& one_form) const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        auto [x, y] = g.edges()[e];
        Vec v(p2.size());
        for (std::size_t f = 0; f < g.edge_count(); ++f) {
            if (one_form[f].is_zero()) continue;
            auto [u, w] = g.edges()[f];
            if (u == y) v[p2.index({x, y, w})] += one_form[f];
        }
        return v;
    }

    void build_restriction() {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        const ExactMatrix& sigma = calc_.sigma().matrix();
        RestrictionReport rep;
        rep.forward_block_vanishes = true;
        rep.backward_block_vanishes = true;
        rep.intertwines = true;
        for (std::size_t col = 0; col < p2.size(); ++col) {
            Vec unit(p2.size());
            unit[col] = Scalar(1);
            Vec s_p01 = sigma * filter_leg(p2, unit, 1, false);
            Vec s_p10 = sigma * filter_leg(p2, unit, 1, true);
            if (!is_zero_vec(filter_leg(p2, s_p01, 0, true))) {
                rep.forward_block_vanishes = false;
                if (!rep.witness) rep.witness = p2.path(col);
            }
            if (!is_zero_vec(filter_leg(p2, s_p10, 0, false))) {
                rep.backward_block_vanishes = false;
                if (!rep.witness) rep.witness = p2.path(col);
            }
            if (s_p01 != filter_leg(p2, sigma * unit, 0, false)) {
                rep.intertwines = false;
                if (!rep.witness) rep.witness = p2.path(col);
            }
        }
        for (std::size_t k = 0; k < p2.size(); ++k) {
            const Path& p = p2.path(k);
            if (!cs_.is_holomorphic_edge(g.edge(p[1], p[2]))) rep.domain_paths.push_back(k);
            if (!cs_.is_holomorphic_edge(g.edge(p[0], p[1]))) rep.codomain_paths.push_back(k);
        }
        rep.sigma_bar = ExactMatrix(rep.codomain_paths.size(), rep.domain_paths.size());
        for (std::size_t c = 0; c < rep.domain_paths.size(); ++c)
            for (std::size_t r = 0; r < rep.codomain_paths.size(); ++r)
                rep.sigma_bar.at(r, c) = sigma.at(rep.codomain_paths[r], rep.domain_paths[c]);
        rep.invertible = rep.sigma_bar.rows() == rep.sigma_bar.cols() &&
                         rank(rep.sigma_bar) == rep.sigma_bar.rows();
        restriction_ = std::move(rep);
    }

    void require_delbar() const {
        if (delbar_ready_) return;
        std::string where = restriction_.witness
                                ? " at 2-path " + calc_.graph().path_name(*restriction_.witness)
                                : " (rank defect)";
        raise("IdentityFailure", "sigma restriction identities fail" + where);
    }

    void build_nabla_bar() {
        const PathIndex& p2 = calc_.space(2).paths;
        nabla_bar_ = ExactMatrix(p2.size(), nabla_.cols());
        for (std::size_t e = 0; e < nabla_.cols(); ++e)
            nabla_bar_.set_col(e, filter_leg(p2, nabla_.col(e), 0, false));
    }

    // nabla_bar(w.f) = nabla_bar(w).f + sigma_bar(w (x) delbar f)
    void verify_delbar_law() const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        const ExactMatrix& sigma = calc_.sigma().matrix();
        std::size_t nv = g.vertex_count();
        for (std::size_t x = 0; x < nv; ++x) {
            Vec f(nv);
            f[x] = Scalar(1);
            Vec dbf = cs_.delbar0(f);
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                auto [s, t] = g.edges()[e];
                Vec lhs = static_cast<int>(x) == t ? nabla_bar_.col(e) : Vec(p2.size());
                Vec rhs = act_on_paths(p2, nabla_bar_.col(e), static_cast<int>(x), false) +
                          sigma * tensor_edge_right(e, dbf);
                if (lhs != rhs)
                    raise("LeibnizFailure", "delbar-operator law fails at (" + g.label(x) + ", " +
                                                g.edge_name({s, t}) + ")");
            }
        }
    }

    // T (x) 1 and sigma12 (1 (x) T) for T mapping edges to 2-paths, assembled
    // on 2-path columns; used for both nabla and nabla_bar tensor squares.
    ExactMatrix tensor_square_of(const ExactMatrix& t) const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        const PathIndex& p3 = calc_.space(3).paths;
        ExactMatrix first(p3.size(), p2.size());
        ExactMatrix second(p3.size(), p2.size());
        for (std::size_t col = 0; col < p2.size(); ++col) {
            const Path& p = p2.path(col);
            std::size_t e01 = g.edge(p[0], p[1]);
            std::size_t e12 = g.edge(p[1], p[2]);
            Vec left = t.col(e01);
            for (std::size_t k = 0; k < left.size(); ++k) {
                if (left[k].is_zero()) continue;
                const Path& q = p2.path(k);
                if (q.back() != p[1]) continue;
                first.at(p3.index({q[0], q[1], p[1], p[2]}), col) += left[k];
            }
            Vec right = t.col(e12);
            for (std::size_t k = 0; k < right.size(); ++k) {
                if (right[k].is_zero()) continue;
                const Path& q = p2.path(k);
                if (q.front() != p[1]) continue;
                second.at(p3.index({p[0], p[1], q[1], q[2]}), col) += right[k];
            }
        }
        ExactMatrix s12 = leg_operator(calc_.sigma(), 1, 3, p3);
        return first + s12 * second;
    }

    void build_tensor_square() {
        nabla_bar_t2_ = tensor_square_of(nabla_bar_);

        // Identity: nabla_bar^{(x2)} = (pi01 (x) id (x) id) o nabla^{(x2)}.
        const PathIndex& p3 = calc_.space(3).paths;
        const BidiGraph& g = calc_.graph();
        ExactMatrix full = tensor_square_of(nabla_);
        ExactMatrix filtered(full.rows(), full.cols());
        for (std::size_t c = 0; c < full.cols(); ++c) {
            Vec v = full.col(c);
            Vec kept(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (v[k].is_zero()) continue;
                const Path& p = p3.path(k);
                if (!cs_.is_holomorphic_edge(g.edge(p[0], p[1]))) kept[k] = v[k];
            }
            filtered.set_col(c, kept);
        }
        if (filtered != nabla_bar_t2_)
            raise("IdentityFailure",
                  "tensor-square relation (pi01 (x) id (x) id) o nabla2 != nabla_bar2");

        // Descent: on sigma-fixed vectors (the kernel of A_2), the image must
        // be sigma23-fixed so that (id (x) wedge) factors through Omega^2.
        const FormSpace& f2 = calc_.space(2);
        ExactMatrix s23 = leg_operator(calc_.sigma(), 2, 3, p3);
        for (const auto& k : kernel_basis(f2.antisym)) {
            Vec img = nabla_bar_t2_ * k;
            if (s23 * img != img)
                raise("DescentFailure", "tensor-square delbar fails descent on a sigma-fixed vector");
        }
    }

    void build_tensor_bases() {
        const BidiGraph& g = calc_.graph();
        const FormSpace& f2 = calc_.space(2);
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [x, y] = g.edges()[e];
            for (std::size_t q = 0; q < f2.dim; ++q)
                if (f2.paths.path(f2.quotient_paths[q]).front() == y) b12_.push(e, q);
        }
        for (std::size_t q = 0; q < f2.dim; ++q) {
            int tail = f2.paths.path(f2.quotient_paths[q]).back();
            for (std::size_t e = 0; e < g.edge_count(); ++e)
                if (g.edges()[e].first == tail) b21_.push(q, e);
        }
    }

    void build_nabla_bar2() {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p3 = calc_.space(3).paths;
        const FormSpace& f2 = calc_.space(2);
        nabla_bar2_ = ExactMatrix(b12_.size(), f2.dim);
        for (std::size_t q = 0; q < f2.dim; ++q) {
            Vec unit(f2.paths.size());
            unit[f2.quotient_paths[q]] = Scalar(1);
            Vec img = nabla_bar_t2_ * unit;  // (id (x) wedge) of the image
            Vec out(b12_.size());
            for (std::size_t k = 0; k < img.size(); ++k) {
                if (img[k].is_zero()) continue;
                const Path& p = p3.path(k);
                std::size_t e = g.edge(p[0], p[1]);
                Vec cls = calc_.class_of_path(2, {p[1], p[2], p[3]});
                for (std::size_t t = 0; t < cls.size(); ++t)
                    if (!cls[t].is_zero()) out[b12_.index(e, t)] += img[k] * cls[t];
            }
            nabla_bar2_.set_col(q, out);
        }
    }

    ExactMatrix build_curvature() const {
        const BidiGraph& g = calc_.graph();
        const PathIndex& p2 = calc_.space(2).paths;
        ExactMatrix out(b21_.size(), g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            Vec acc(b21_.size());
            Vec nab = nabla_.col(e);
            for (std::size_t k = 0; k < nab.size(); ++k) {
                if (nab[k].is_zero()) continue;
                const Path& p = p2.path(k);  // w (x) e' with w = p01 edge, e' = p12 edge
                std::size_t w_edge = g.edge(p[0], p[1]);
                std::size_t e_edge = g.edge(p[1], p[2]);
                // dw (x) e'
                Vec dw = calc_.d_matrix(1) * unit_vec(g.edge_count(), w_edge);
                for (std::size_t q = 0; q < dw.size(); ++q) {
                    if (dw[q].is_zero()) continue;
                    if (calc_.space(2).paths.path(calc_.space(2).quotient_paths[q]).back() != p[1])
                        continue;
                    acc[b21_.index(q, e_edge)] += nab[k] * dw[q];
                }
                // - w ^ nabla(e')
                Vec ne = nabla_.col(e_edge);
                for (std::size_t m = 0; m < ne.size(); ++m) {
                    if (ne[m].is_zero()) continue;
                    const Path& q = p2.path(m);
                    if (q.front() != p[1]) continue;
                    Vec cls = calc_.class_of_path(2, {p[0], p[1], q[1]});
                    std::size_t tail_edge = g.edge(q[1], q[2]);
                    for (std::size_t t = 0; t < cls.size(); ++t)
                        if (!cls[t].is_zero())
                            acc[b21_.index(t, tail_edge)] -= nab[k] * ne[m] * cls[t];
                }
            }
            out.set_col(e, acc);
        }
        return out;
    }

    static Vec unit_vec(std::size_t n, std::size_t k) {
        Vec v(n);
        v[k] = Scalar(1);
        return v;
    }

    const Calculus& calc_;
    const ComplexStructure& cs_;
    ExactMatrix alpha_;
    ExactMatrix nabla_;
    ExactMatrix nabla_bar_;
    RestrictionReport restriction_;
    ExactMatrix nabla_bar_t2_;
    ExactMatrix nabla_bar2_;
    TensorBasis b12_;  // Omega^1 (x) Omega^2 pairs; images live in the backward-edge half
    TensorBasis b21_;  // Omega^2 (x) Omega^1
    bool delbar_ready_ = false;
    mutable std::optional<ExactMatrix> curvature_;
};

inline SectionRing HolomorphicLayer::section_ring() const {
    require_delbar();
    SectionRing ring;
    auto s0 = holomorphic_sections_a();
    ring.sections1 = holomorphic_sections_omega1();
    ring.sections2 = holomorphic_sections_omega2();
    ring.graded_dims = {s0.size(), ring.sections1.size(), ring.sections2.size()};
    if (!s0.empty()) ring.unit = s0.front();

    // Wedge closure: products of degree-1 sections must lie in the span of
    // the degree-2 sections (a consequence of the Leibniz formula for the
    // descended operator).
    ExactMatrix span2(calc_.dim(2), ring.sections2.size());
    for (std::size_t c = 0; c < ring.sections2.size(); ++c) span2.set_col(c, ring.sections2[c]);
    ring.wedge_closed = true;
    ring.products.assign(ring.sections1.size(), std::vector<Vec>(ring.sections1.size()));
    for (std::size_t i = 0; i < ring.sections1.size(); ++i)
        for (std::size_t j = 0; j < ring.sections1.size(); ++j) {
            Vec w = calc_.wedge(1, ring.sections1[i], 1, ring.sections1[j]);
            ring.products[i][j] = w;
            if (!solve(span2, w).has_value()) ring.wedge_closed = false;
        }

    if (ring.sections1.size() == 2) {
        ring.squares_vanish =
            is_zero_vec(ring.products[0][0]) && is_zero_vec(ring.products[1][1]);
        ring.anticommute = is_zero_vec(ring.products[0][1] + ring.products[1][0]);
        ring.top_nonzero = !is_zero_vec(ring.products[0][1]);
    }
    ring.exterior_algebra = ring.graded_dims == std::vector<std::size_t>{1, 2, 1} &&
                            ring.squares_vanish && ring.anticommute && ring.top_nonzero;
    return ring;
}

inline UniquenessReport HolomorphicLayer::unique_bimodule_delbar_check() const {
    const BidiGraph& g = calc_.graph();
    UniquenessReport rep;

    // Unknowns: Phi(delta_y) for every vertex y, expressed on the backward
    // (anti-holomorphic) edge basis. Bimodule equivariance on delta pairs
    // gives the homogeneous system; loop-freeness forces the kernel to {0}.
    std::vector<std::size_t> backward;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!cs_.is_holomorphic_edge(e)) backward.push_back(e);
    std::size_t nv = g.vertex_count();
    std::size_t nb = backward.size();
    std::vector<Vec> rows;
    auto push_row = [&](Vec row) {
        if (!is_zero_vec(row)) rows.push_back(std::move(row));
    };
    for (std::size_t x = 0; x < nv; ++x)
        for (std::size_t y = 0; y < nv; ++y)
            for (std::size_t b = 0; b < nb; ++b) {
                auto [s, t] = g.edges()[backward[b]];
                // delta_x . Phi(delta_y) = [x == y] Phi(delta_y):
                // coefficient on edge b scales by [s == x].
                Vec row(nv * nb);
                Scalar lhs = (static_cast<int>(x) == s) ? Scalar(1) : Scalar(0);
                Scalar rhs = (x == y) ? Scalar(1) : Scalar(0);
                row[y * nb + b] = lhs - rhs;
                push_row(std::move(row));
                // Phi(delta_y) . delta_x: coefficient scales by [t == x].
                Vec row2(nv * nb);
                Scalar lhs2 = (static_cast<int>(x) == t) ? Scalar(1) : Scalar(0);
                row2[y * nb + b] = lhs2 - rhs;
                push_row(std::move(row2));
            }
    ExactMatrix sys(rows.size(), nv * nb);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < nv * nb; ++c) sys.at(r, c) = rows[r][c];
    rep.solution_dim = kernel_basis(sys).size();

    // Connectivity of the holomorphic part (underlying undirected graph):
    // hypothesis for H^0(A) = C.
    std::vector<int> comp(nv, -1);
    std::vector<std::size_t> stack;
    if (nv > 0) {
        comp[0] = 0;
        stack.push_back(0);
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                if (!cs_.is_holomorphic_edge(e)) continue;
                auto [s, t] = g.edges()[e];
                for (auto [a, bb] : {std::pair<int, int>{s, t}, std::pair<int, int>{t, s}})
                    if (a == static_cast<int>(v) && comp[bb] < 0) {
                        comp[bb] = 0;
                        stack.push_back(bb);
                    }
            }
        }
    }
    rep.holomorphic_part_connected = true;
    for (std::size_t v = 0; v < nv; ++v)
        if (comp[v] < 0) rep.holomorphic_part_connected = false;
    return rep;
}

}  // namespace graphforms
