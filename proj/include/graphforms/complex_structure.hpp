#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphforms/calculus.hpp"

namespace graphforms {

/// Edge orientation defining J: the chosen holomorphic half H of the edge
/// set. For every adjacent pair {x, y} exactly one of x->y, y->x lies in H;
/// J is then +i on H and -i on the reversed edges, which makes
/// *-compatibility automatic.
struct JSpec {
    std::vector<std::pair<std::string, std::string>> holomorphic_edges;

    static JSpec polygon_forward(const BidiGraph& g);
};

/// Validate the orientation against the graph alone: every listed edge must
/// exist and each adjacent pair must have exactly one holomorphic direction.
/// Returns the per-edge flags.
inline std::vector<bool> validate_j_spec(const BidiGraph& g, const JSpec& spec) {
    std::vector<bool> holomorphic(g.edge_count(), false);
    for (const auto& [s, t] : spec.holomorphic_edges) {
        int x = g.vertex(s);
        int y = g.vertex(t);
        if (!g.has_edge(x, y))
            raise("OrientationInvalid", "holomorphic edge " + s + "->" + t + " not in graph");
        holomorphic[g.edge(x, y)] = true;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::size_t rev = g.reverse_edge(e);
        if (holomorphic[e] == holomorphic[rev])
            raise("OrientationInvalid", "pair {" + g.edge_name(g.edges()[e]) +
                                            "} must contain exactly one holomorphic direction");
    }
    return holomorphic;
}

struct CommutationReport {
    bool ok = true;
    std::optional<Path> witness;  // first failing basis 2-path
};

struct IntegrabilityReport {
    bool del_squared_zero = false;       // del^2 = 0 on A
    bool delbar_squared_zero = false;    // delbar^2 = 0 on A
    bool d_omega10_contained = false;    // d(Omega^{1,0}) inside (2,0)+(1,1)
    bool d_omega01_contained = false;    // d(Omega^{0,1}) inside (1,1)+(0,2)
    bool all_pass() const {
        return del_squared_zero && delbar_squared_zero && d_omega10_contained &&
               d_omega01_contained;
    }
    bool agree() const {
        return del_squared_zero == delbar_squared_zero &&
               delbar_squared_zero == d_omega10_contained &&
               d_omega10_contained == d_omega01_contained;
    }
};

/// Eigenspace data of J on one degree: for each (p, q) with p + q = n the
/// subspace basis of Omega^{p,q} and its spectral projector. Projectors are
/// idempotent, mutually annihilating and sum to the identity; J itself is
/// sum of i(p-q) pi^{p,q}.
struct PQDecomposition {
    int degree = 0;
    std::vector<std::pair<int, int>> bidegrees;  // (p, q), p - q descending
    std::vector<ExactMatrix> bases;              // dim(Omega^n) x m_pq column bases
    std::vector<ExactMatrix> projectors;         // dim x dim

    std::size_t component_dim(int p, int q) const {
        for (std::size_t k = 0; k < bidegrees.size(); ++k)
            if (bidegrees[k] == std::make_pair(p, q)) return bases[k].cols();
        return 0;
    }
    const ExactMatrix& projector(int p, int q) const {
        for (std::size_t k = 0; k < bidegrees.size(); ++k)
            if (bidegrees[k] == std::make_pair(p, q)) return projectors[k];
        raise("DegreeOutOfRange", "no such bidegree component");
    }
    const ExactMatrix& basis(int p, int q) const {
        for (std::size_t k = 0; k < bidegrees.size(); ++k)
            if (bidegrees[k] == std::make_pair(p, q)) return bases[k];
        raise("DegreeOutOfRange", "no such bidegree component");
    }
};

struct DolbeaultEntry {
    int p = 0;
    int q = 0;
    std::size_t dim = 0;
    std::vector<Vec> representatives;  // in Omega^{p+q} quotient coordinates
};

/// The integrable almost complex structure induced by an edge orientation:
/// J as a derivation on all degrees, (p,q)-decomposition, del / delbar, the
/// integrability verdicts, and Dolbeault cohomology.
class ComplexStructure {
public:
    ComplexStructure(const Calculus& calc, const JSpec& spec)
        : calc_(calc),
          holomorphic_(validate_j_spec(calc.graph(), spec)),
          pq_cache_(calc.max_degree() + 1) {
        const BidiGraph& g = calc_.graph();
        j1_ = ExactMatrix(g.edge_count(), g.edge_count());
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            j1_.at(e, e) = holomorphic_[e] ? GaussianRational::i() : -GaussianRational::i();
    }

    // Holds a reference to the calculus; pin it in place.
    ComplexStructure(const ComplexStructure&) = delete;
    ComplexStructure& operator=(const ComplexStructure&) = delete;

    const Calculus& calculus() const { return calc_; }
    bool is_holomorphic_edge(std::size_t e) const { return holomorphic_[e]; }

    /// J on the one-form space: diagonal, +i on H, -i on reversed edges.
    const ExactMatrix& j1() const { return j1_; }

    /// The derivation extension on PathSpace(n): diagonal with entry
    /// sum of the edge eigenvalues along the path.
    ExactMatrix j_on_paths(int n) const {
        const PathIndex& basis = calc_.space(n).paths;
        const BidiGraph& g = calc_.graph();
        ExactMatrix m(basis.size(), basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Path& p = basis.path(k);
            long plus = 0;
            for (std::size_t s = 0; s + 1 < p.size(); ++s)
                plus += holomorphic_[g.edge(p[s], p[s + 1])] ? 1 : -1;
            m.at(k, k) = GaussianRational(Rational(0), Rational(plus));
        }
        return m;
    }

    /// (J (x) Id + Id (x) J) sigma = sigma (J (x) Id + Id (x) J) on 2-paths.
    CommutationReport check_sigma_commutation() const {
        CommutationReport rep;
        const SigmaOperator& sigma = calc_.sigma();
        ExactMatrix j2 = j_on_paths(2);
        ExactMatrix lhs = j2 * sigma.matrix();
        ExactMatrix rhs = sigma.matrix() * j2;
        if (lhs == rhs) return rep;
        rep.ok = false;
        for (std::size_t col = 0; col < sigma.paths2().size() && !rep.witness; ++col)
            for (std::size_t row = 0; row < sigma.paths2().size(); ++row)
                if (lhs.at(row, col) != rhs.at(row, col)) {
                    rep.witness = sigma.paths2().path(col);
                    break;
                }
        return rep;
    }

    /// J descended to Omega^n. Descent requires A_n J = J A_n on the path
    /// space, which follows from sigma-commutation; it is re-verified and a
    /// violation reports the witness path.
    ExactMatrix j_form(int n) const {
        if (n == 0) return ExactMatrix(calc_.dim(0), calc_.dim(0));
        const FormSpace& fs = calc_.space(n);
        ExactMatrix jp = j_on_paths(n);
        if (n >= 2 && fs.antisym.rows() > 0) {
            ExactMatrix lhs = fs.antisym * jp;
            ExactMatrix rhs = jp * fs.antisym;
            if (lhs != rhs)
                for (std::size_t col = 0; col < fs.paths.size(); ++col)
                    for (std::size_t row = 0; row < fs.paths.size(); ++row)
                        if (lhs.at(row, col) != rhs.at(row, col))
                            raise("DescentFailure", "J does not commute with the antisymmetrizer on " +
                                                        calc_.graph().path_name(fs.paths.path(col)));
        }
        return fs.projection * (jp * fs.lift);
    }

    /// Spectral decomposition of Omega^n into (p,q)-eigenspaces. Eigenvalues
    /// are known a priori: i(p-q) for p+q = n. Projectors come from Lagrange
    /// interpolation on J_n, eigenbases from exact kernels.
    PQDecomposition pq_decompose(int n) const {
        PQDecomposition out;
        out.degree = n;
        std::size_t dim = calc_.dim(n);
        ExactMatrix jn = j_form(n);
        std::vector<GaussianRational> eigenvalues;
        for (int p = n; p >= 0; --p) {
            int q = n - p;
            out.bidegrees.emplace_back(p, q);
            eigenvalues.push_back(GaussianRational(Rational(0), Rational(p - q)));
        }
        std::size_t total = 0;
        for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
            ExactMatrix shifted = jn;
            for (std::size_t d = 0; d < dim; ++d) shifted.at(d, d) -= eigenvalues[k];
            auto kb = kernel_basis(shifted);
            ExactMatrix basis(dim, kb.size());
            for (std::size_t c = 0; c < kb.size(); ++c) basis.set_col(c, kb[c]);
            out.bases.push_back(std::move(basis));
            total += kb.size();

            ExactMatrix proj = ExactMatrix::identity(dim);
            for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
                if (j == k) continue;
                ExactMatrix factor = jn;
                for (std::size_t d = 0; d < dim; ++d) factor.at(d, d) -= eigenvalues[j];
                Scalar denom = eigenvalues[k] - eigenvalues[j];
                proj = proj * factor;
                proj = (Scalar(1) / denom) * proj;
            }
            out.projectors.push_back(std::move(proj));
        }
        if (total != dim)
            raise("IncompleteDecomposition",
                  "eigenspace dimensions sum to " + std::to_string(total) + " of " +
                      std::to_string(dim) + " at degree " + std::to_string(n));
        return out;
    }

    const PQDecomposition& pq(int n) const {
        if (n < 0 || n > calc_.max_degree())
            raise("DegreeOutOfRange", "no (p,q)-decomposition at that degree");
        // Cache is sized once in the constructor; entries stay put so the
        // returned references remain valid.
        if (!pq_cache_[n]) pq_cache_[n] = pq_decompose(n);
        return *pq_cache_[n];
    }

    /// Projection of a one-form onto its (1,0) / (0,1) part: diagonal filters
    /// on the edge basis.
    Vec pi10(const Vec& one_form) const { return filter_edges(one_form, true); }
    Vec pi01(const Vec& one_form) const { return filter_edges(one_form, false); }

    /// del = pi^{p+1,q} o d and delbar = pi^{p,q+1} o d on the (p,q) part;
    /// mixed inputs split by bidegree and map componentwise.
    Vec del(int n, const Vec& form) const { return shifted_d(n, form, +1); }
    Vec delbar(int n, const Vec& form) const { return shifted_d(n, form, 0); }

    /// delbar on functions: pi^{0,1}(df), expressed on the edge basis.
    Vec delbar0(const Vec& f) const { return pi01(calc_.d_matrix(0) * f); }
    Vec del0(const Vec& f) const { return pi10(calc_.d_matrix(0) * f); }

    IntegrabilityReport check_integrability() const {
        IntegrabilityReport rep;
        std::size_t nv = calc_.dim(0);
        bool d2 = true, db2 = true;
        for (std::size_t x = 0; x < nv; ++x) {
            Vec f(nv);
            f[x] = Scalar(1);
            if (!is_zero_vec(del(1, del0(f)))) d2 = false;
            if (!is_zero_vec(delbar(1, delbar0(f)))) db2 = false;
        }
        rep.del_squared_zero = d2;
        rep.delbar_squared_zero = db2;

        const PQDecomposition& dec1 = pq(1);
        const PQDecomposition& dec2 = pq(2);
        bool c3 = true, c4 = true;
        const ExactMatrix& b10 = dec1.basis(1, 0);
        for (std::size_t c = 0; c < b10.cols(); ++c) {
            Vec img = calc_.d_matrix(1) * b10.col(c);
            if (!is_zero_vec(dec2.projector(0, 2) * img)) c3 = false;
        }
        const ExactMatrix& b01 = dec1.basis(0, 1);
        for (std::size_t c = 0; c < b01.cols(); ++c) {
            Vec img = calc_.d_matrix(1) * b01.col(c);
            if (!is_zero_vec(dec2.projector(2, 0) * img)) c4 = false;
        }
        rep.d_omega10_contained = c3;
        rep.d_omega01_contained = c4;
        return rep;
    }

    /// Dolbeault cohomology at fixed p: H^{p,q} = ker(delbar)/im(delbar) with
    /// exact representatives. The chain property delbar o delbar = 0 is
    /// asserted along the way.
    std::vector<DolbeaultEntry> dolbeault(int p) const {
        std::vector<DolbeaultEntry> table;
        int maxdeg = calc_.max_degree();
        for (int q = 0; p + q <= maxdeg; ++q) {
            DolbeaultEntry entry;
            entry.p = p;
            entry.q = q;
            int n = p + q;
            std::size_t comp_dim = calc_.dim(n) == 0 ? 0 : pq(n).component_dim(p, q);
            if (comp_dim == 0) {
                table.push_back(std::move(entry));
                continue;
            }
            const ExactMatrix& basis = pq(n).basis(p, q);
            // Outgoing delbar in subspace coordinates.
            std::vector<Vec> kernel_vectors;
            if (n == maxdeg || calc_.dim(n + 1) == 0) {
                for (std::size_t c = 0; c < basis.cols(); ++c) kernel_vectors.push_back(basis.col(c));
            } else {
                ExactMatrix out_map(calc_.dim(n + 1), basis.cols());
                for (std::size_t c = 0; c < basis.cols(); ++c)
                    out_map.set_col(c, delbar(n, basis.col(c)));
                for (const auto& coeffs : kernel_basis(out_map)) {
                    Vec v(calc_.dim(n));
                    for (std::size_t c = 0; c < basis.cols(); ++c)
                        if (!coeffs[c].is_zero()) v = v + coeffs[c] * basis.col(c);
                    kernel_vectors.push_back(std::move(v));
                }
            }
            // Incoming image from (p, q-1); each image must already be a
            // cocycle (delbar o delbar = 0 is asserted, not assumed).
            std::vector<Vec> image_vectors;
            if (q > 0 && calc_.dim(n - 1) > 0 && pq(n - 1).component_dim(p, q - 1) > 0) {
                const ExactMatrix& pbasis = pq(n - 1).basis(p, q - 1);
                for (std::size_t c = 0; c < pbasis.cols(); ++c) {
                    Vec img = delbar(n - 1, pbasis.col(c));
                    if (is_zero_vec(img)) continue;
                    if (n < maxdeg && calc_.dim(n + 1) > 0 && !is_zero_vec(delbar(n, img)))
                        raise("InternalError", "delbar chain property violated");
                    image_vectors.push_back(std::move(img));
                }
            }
            // Quotient: start from the echelonized image, keep each kernel
            // vector that raises the rank; those are exact representatives.
            std::size_t dim_n = calc_.dim(n);
            ExactMatrix grow(image_vectors.size(), dim_n);
            for (std::size_t r = 0; r < image_vectors.size(); ++r)
                for (std::size_t c = 0; c < dim_n; ++c) grow.at(r, c) = image_vectors[r][c];
            std::size_t current_rank = rank(grow);
            for (const auto& v : kernel_vectors) {
                ExactMatrix candidate(grow.rows() + 1, dim_n);
                for (std::size_t r = 0; r < grow.rows(); ++r)
                    for (std::size_t c = 0; c < dim_n; ++c) candidate.at(r, c) = grow.at(r, c);
                for (std::size_t c = 0; c < dim_n; ++c) candidate.at(grow.rows(), c) = v[c];
                std::size_t new_rank = rank(candidate);
                if (new_rank > current_rank) {
                    entry.representatives.push_back(v);
                    grow = std::move(candidate);
                    current_rank = new_rank;
                }
            }
            entry.dim = entry.representatives.size();
            table.push_back(std::move(entry));
        }
        return table;
    }

private:
    Vec filter_edges(const Vec& one_form, bool keep_holomorphic) const {
        Vec out(one_form.size());
        for (std::size_t e = 0; e < one_form.size(); ++e)
            if (holomorphic_[e] == keep_holomorphic) out[e] = one_form[e];
        return out;
    }

    // shift = +1 computes del, shift = 0 computes delbar: the image component
    // pi^{p+1,q} resp. pi^{p,q+1} of d applied to each bidegree piece.
    Vec shifted_d(int n, const Vec& form, int shift) const {
        if (n >= calc_.max_degree() || calc_.dim(n + 1) == 0) return Vec(calc_.dim(n + 1));
        Vec total(calc_.dim(n + 1));
        const PQDecomposition& dec = pq(n);
        const PQDecomposition& dec_up = pq(n + 1);
        for (std::size_t k = 0; k < dec.bidegrees.size(); ++k) {
            auto [p, q] = dec.bidegrees[k];
            if (dec.bases[k].cols() == 0) continue;
            Vec piece = dec.projectors[k] * form;
            if (is_zero_vec(piece)) continue;
            Vec img = calc_.d_matrix(n) * piece;
            int tp = p + (shift == 1 ? 1 : 0);
            int tq = q + (shift == 1 ? 0 : 1);
            if (tp + tq != n + 1 || tp > n + 1 || tq > n + 1) continue;
            if (dec_up.component_dim(tp, tq) == 0) continue;
            total = total + dec_up.projector(tp, tq) * img;
        }
        return total;
    }

    const Calculus& calc_;
    std::vector<bool> holomorphic_;
    ExactMatrix j1_;
    mutable std::vector<std::optional<PQDecomposition>> pq_cache_;
};

inline JSpec JSpec::polygon_forward(const BidiGraph& g) {
    JSpec spec;
    int n = static_cast<int>(g.vertex_count());
    for (int mu = 0; mu < n; ++mu)
        spec.holomorphic_edges.emplace_back(g.label(mu), g.label((mu + 1) % n));
    return spec;
}

}  // namespace graphforms
