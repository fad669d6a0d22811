#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graphforms/complex_structure.hpp"
#include "graphforms/psd.hpp"

namespace graphforms {

enum class OrientationChoice { standard, opposite };

/// (k+1)-multilinear functional on the function algebra, stored by its
/// values on all (k+1)-tuples of vertex indicator functions. Multilinearity
/// is structural; deltas multiply by delta_x delta_y = [x == y] delta_x,
/// which keeps every evaluation a finite exact table operation.
struct Cochain {
    int arity = 0;           // k: number of arguments minus one
    std::size_t points = 0;  // |V|
    Vec table;               // size points^(arity+1)

    Cochain() = default;
    Cochain(int k, std::size_t n) : arity(k), points(n), table(ipow(n, k + 1)) {}

    static std::size_t ipow(std::size_t base, int exp) {
        std::size_t out = 1;
        for (int i = 0; i < exp; ++i) out *= base;
        return out;
    }

    std::size_t index(const std::vector<std::size_t>& tuple) const {
        std::size_t idx = 0;
        for (std::size_t k = tuple.size(); k-- > 0;) idx = idx * points + tuple[k];
        return idx;
    }
    Scalar& at(const std::vector<std::size_t>& tuple) { return table[index(tuple)]; }
    const Scalar& at(const std::vector<std::size_t>& tuple) const { return table[index(tuple)]; }

    friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// Standard Hochschild coboundary on delta tuples:
/// (b c)(a_0,...,a_{k+1}) = sum_j (-1)^j c(..., a_j a_{j+1}, ...)
///                          + (-1)^{k+1} c(a_{k+1} a_0, a_1, ..., a_k).
inline Cochain hochschild_b(const Cochain& c) {
    Cochain out(c.arity + 1, c.points);
    std::vector<std::size_t> tuple(c.arity + 2, 0);
    std::vector<std::size_t> sub(c.arity + 1, 0);
    for (;;) {
        Scalar acc;
        for (int j = 0; j <= c.arity; ++j) {
            if (tuple[j] != tuple[j + 1]) continue;  // delta product vanishes
            std::size_t w = 0;
            for (int t = 0; t <= c.arity + 1; ++t)
                if (t != j + 1) sub[w++] = tuple[t];
            Scalar v = c.at(sub);
            acc += (j % 2 == 0) ? v : -v;
        }
        if (tuple[c.arity + 1] == tuple[0]) {
            std::size_t w = 0;
            for (int t = 0; t <= c.arity; ++t) sub[w++] = tuple[t];
            Scalar v = c.at(sub);
            acc += ((c.arity + 1) % 2 == 0) ? v : -v;
        }
        out.at(tuple) = acc;
        int pos = 0;
        while (pos <= c.arity + 1 && ++tuple[pos] == c.points) tuple[pos++] = 0;
        if (pos > c.arity + 1) break;
    }
    return out;
}

struct TraceReport {
    bool closed = false;            // integral of d(one-form) vanishes on the edge basis
    bool graded_symmetric = false;  // integral of (w1 ^ w2 + w2 ^ w1) vanishes
    bool actions_coincide = false;  // left and right actions agree on Omega^2
    bool orientation_bimodule = false;
    bool orientation_invertible = false;
    bool ok() const {
        return closed && graded_symmetric && actions_coincide && orientation_bimodule &&
               orientation_invertible;
    }
};

struct CocycleIdentities {
    bool b_phi_zero = false;
    bool b_tau_zero = false;
    bool tau_cyclic = false;
    bool tau_minus_phi_is_b_psi = false;
    bool ok() const { return b_phi_zero && b_tau_zero && tau_cyclic && tau_minus_phi_is_b_psi; }
};

struct TrivialityResult {
    bool solution_found = false;
    std::optional<Cochain> witness;               // cyclic 1-cochain X with bX = tau
    std::optional<bool> successor_candidate_matches;  // does b(candidate) == tau hold?
};

/// Orientation, state, closed graded trace and the Hochschild/cyclic layer
/// over a 2-dimensional calculus with a complex structure.
///
/// The standard orientation sends delta_x to the sum of return classes
/// through anti-holomorphic first legs (the positivity-friendly choice);
/// `opposite` uses the holomorphic first legs, which flips the sign of the
/// trace.
class CocycleLayer {
public:
    CocycleLayer(const Calculus& calc, const ComplexStructure& cs,
                 OrientationChoice orientation = OrientationChoice::standard)
        : calc_(calc), cs_(cs), orientation_(orientation) {
        if (calc_.max_degree() < 3)
            raise("DegreeOutOfRange", "cocycle layer needs degrees through 3");
        if (calc_.dim(2) == 0 || calc_.dim(3) != 0)
            raise("OrientationInvalid", "cocycle layer requires a calculus of dimension 2");
        build_orientation();
    }

    CocycleLayer(const CocycleLayer&) = delete;
    CocycleLayer& operator=(const CocycleLayer&) = delete;

    const ExactMatrix& phi_matrix() const { return phi_; }
    const ExactMatrix& phi_inverse() const { return phi_inv_; }
    const TraceReport& trace_report() const { return trace_report_; }
    OrientationChoice orientation() const { return orientation_; }

    /// Closed graded trace: integral(w) = tau(Phi^{-1} w) with the uniform
    /// state tau(f) = (1/|V|) sum f.
    Scalar graded_trace(const Vec& omega2) const {
        Vec f = phi_inv_ * omega2;
        Scalar acc;
        for (const auto& v : f) acc += v;
        return acc / Scalar(Rational(static_cast<long>(calc_.dim(0))));
    }

    /// tau(f0,f1,f2) = 1/2 integral f0 df1 ^ df2.
    Cochain cochain_tau() const { return build2([&](const Vec& f) { return calc_.d_matrix(0) * f; },
                                                [&](const Vec& f) { return calc_.d_matrix(0) * f; },
                                                Rational(1, 2)); }

    /// phi(f0,f1,f2) = integral f0 del(f1) ^ delbar(f2).
    Cochain cochain_phi() const { return build2([&](const Vec& f) { return cs_.del0(f); },
                                                [&](const Vec& f) { return cs_.delbar0(f); },
                                                Rational(1)); }

    /// psi(f0,f1) = 1/2 integral f0 del(delbar(f1)).
    Cochain cochain_psi() const {
        std::size_t nv = calc_.dim(0);
        Cochain psi(1, nv);
        std::vector<Vec> ddbar(nv);
        for (std::size_t y = 0; y < nv; ++y) {
            Vec f(nv);
            f[y] = Scalar(1);
            ddbar[y] = cs_.del(1, cs_.delbar0(f));
        }
        Scalar half(Rational(1, 2));
        for (std::size_t x = 0; x < nv; ++x)
            for (std::size_t y = 0; y < nv; ++y) {
                Vec restricted = restrict_to_source(ddbar[y], x);
                psi.at({x, y}) = half * graded_trace(restricted);
            }
        return psi;
    }

    CocycleIdentities verify_cocycle_identities() const {
        CocycleIdentities rep;
        Cochain tau = cochain_tau();
        Cochain phi = cochain_phi();
        Cochain psi = cochain_psi();
        rep.b_phi_zero = is_zero_vec(hochschild_b(phi).table);
        rep.b_tau_zero = is_zero_vec(hochschild_b(tau).table);
        rep.tau_cyclic = true;
        std::size_t nv = calc_.dim(0);
        for (std::size_t a = 0; a < nv && rep.tau_cyclic; ++a)
            for (std::size_t b = 0; b < nv && rep.tau_cyclic; ++b)
                for (std::size_t c = 0; c < nv; ++c)
                    if (tau.at({c, a, b}) != tau.at({a, b, c})) {
                        rep.tau_cyclic = false;
                        break;
                    }
        Cochain diff = tau;
        for (std::size_t k = 0; k < diff.table.size(); ++k) diff.table[k] -= phi.table[k];
        rep.tau_minus_phi_is_b_psi = diff.table == hochschild_b(psi).table;
        return rep;
    }

    /// Gram matrix of phi on the delta (x) delta basis:
    /// <a0 (x) a1, b0 (x) b1> = phi(b0* a0, a1, b1*).
    std::pair<ExactMatrix, PsdReport> positivity_gram() const {
        Cochain phi = cochain_phi();
        std::size_t nv = calc_.dim(0);
        ExactMatrix gram(nv * nv, nv * nv);
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = 0; b < nv; ++b)
                for (std::size_t c = 0; c < nv; ++c)
                    for (std::size_t d = 0; d < nv; ++d) {
                        if (a != c) continue;  // delta_c* delta_a = [a == c] delta_a
                        gram.at(a * nv + b, c * nv + d) = phi.at({a, b, d});
                    }
        return {gram, hermitian_psd(gram)};
    }

    /// Solve b X = tau over cyclic 1-cochains X (X(f1,f0) = -X(f0,f1)).
    /// NoSolution is a reportable outcome. When a candidate cochain is
    /// supplied (the successor cochain for polygon-like graphs), the result
    /// also states whether b(candidate) = tau holds exactly.
    TrivialityResult tau_triviality_witness(
        const std::optional<Cochain>& candidate = std::nullopt) const {
        TrivialityResult out;
        Cochain tau = cochain_tau();
        std::size_t nv = calc_.dim(0);
        // Unknowns: X(a,b) for a < b; X(b,a) = -X(a,b), X(a,a) = 0.
        std::vector<std::pair<std::size_t, std::size_t>> unknowns;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = a + 1; b < nv; ++b) {
                slot[{a, b}] = unknowns.size();
                unknowns.emplace_back(a, b);
            }
        auto add_value = [&](Vec& row, std::size_t a, std::size_t b, const Scalar& coeff) {
            if (a == b) return;
            if (a < b)
                row[slot.at({a, b})] += coeff;
            else
                row[slot.at({b, a})] -= coeff;
        };
        std::vector<Vec> rows;
        Vec rhs;
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = 0; b < nv; ++b)
                for (std::size_t c = 0; c < nv; ++c) {
                    Vec row(unknowns.size());
                    // bX(a,b,c) = X(ab, c) - X(a, bc) + X(ca, b)
                    if (a == b) add_value(row, a, c, Scalar(1));
                    if (b == c) add_value(row, a, b, -Scalar(1));
                    if (c == a) add_value(row, c, b, Scalar(1));
                    rows.push_back(std::move(row));
                    rhs.push_back(tau.at({a, b, c}));
                }
        ExactMatrix sys(rows.size(), unknowns.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < unknowns.size(); ++c) sys.at(r, c) = rows[r][c];
        auto solution = solve(sys, rhs);
        if (solution) {
            out.solution_found = true;
            Cochain x(1, nv);
            for (std::size_t k = 0; k < unknowns.size(); ++k) {
                auto [a, b] = unknowns[k];
                x.at({a, b}) = (*solution)[k];
                x.at({b, a}) = -(*solution)[k];
            }
            if (hochschild_b(x).table != tau.table)
                raise("InternalError", "triviality witness failed re-evaluation");
            out.witness = std::move(x);
        }
        if (candidate)
            out.successor_candidate_matches = (hochschild_b(*candidate).table == tau.table);
        return out;
    }

private:
    // Left action of delta_x on Omega^2 coordinates: representatives are
    // single paths and the quotient is block-preserving, so the action is
    // diagonal on quotient coordinates.
    Vec restrict_to_source(const Vec& omega2, std::size_t x) const {
        const FormSpace& f2 = calc_.space(2);
        Vec out(omega2.size());
        for (std::size_t q = 0; q < omega2.size(); ++q)
            if (f2.paths.path(f2.quotient_paths[q]).front() == static_cast<int>(x))
                out[q] = omega2[q];
        return out;
    }

    Cochain build2(const std::function<Vec(const Vec&)>& first,
                   const std::function<Vec(const Vec&)>& second, Rational scale) const {
        std::size_t nv = calc_.dim(0);
        Cochain out(2, nv);
        std::vector<Vec> lhs(nv), rhs(nv);
        for (std::size_t y = 0; y < nv; ++y) {
            Vec f(nv);
            f[y] = Scalar(1);
            lhs[y] = first(f);
            rhs[y] = second(f);
        }
        Scalar sc{scale};
        for (std::size_t y = 0; y < nv; ++y)
            for (std::size_t z = 0; z < nv; ++z) {
                Vec w = calc_.wedge(1, lhs[y], 1, rhs[z]);
                for (std::size_t x = 0; x < nv; ++x)
                    out.at({x, y, z}) = sc * graded_trace(restrict_to_source(w, x));
            }
        return out;
    }

    void build_orientation() {
        const BidiGraph& g = calc_.graph();
        const FormSpace& f2 = calc_.space(2);
        std::size_t nv = g.vertex_count();
        bool use_holomorphic = orientation_ == OrientationChoice::opposite;
        phi_ = ExactMatrix(f2.dim, nv);
        for (std::size_t x = 0; x < nv; ++x) {
            Vec acc(f2.dim);
            for (int y : g.out_neighbors(static_cast<int>(x))) {
                std::size_t e = g.edge(static_cast<int>(x), y);
                if (cs_.is_holomorphic_edge(e) != use_holomorphic) continue;
                acc = acc + calc_.class_of_path(2, {static_cast<int>(x), y, static_cast<int>(x)});
            }
            phi_.set_col(x, acc);
        }

        TraceReport rep;
        rep.orientation_invertible = f2.dim == nv && rank(phi_) == nv;
        if (!rep.orientation_invertible) {
            trace_report_ = rep;
            raise("OrientationInvalid", "orientation map is not a bijection onto Omega^2");
        }
        // Invert by solving Phi x = e_k column by column.
        phi_inv_ = ExactMatrix(nv, f2.dim);
        for (std::size_t k = 0; k < f2.dim; ++k) {
            Vec e(f2.dim);
            e[k] = Scalar(1);
            auto x = solve(phi_, e);
            if (!x) raise("InternalError", "orientation inversion failed");
            phi_inv_.set_col(k, *x);
        }

        // Left/right actions coincide on Omega^2 (both reduce to the source
        // vertex of the return-path representative).
        rep.actions_coincide = true;
        for (std::size_t q = 0; q < f2.dim && rep.actions_coincide; ++q) {
            const Path& p = f2.paths.path(f2.quotient_paths[q]);
            if (p.front() != p.back()) rep.actions_coincide = false;
        }
        // Phi is a bimodule map: delta-equivariant on both sides.
        rep.orientation_bimodule = true;
        for (std::size_t x = 0; x < nv && rep.orientation_bimodule; ++x) {
            Vec fx(nv);
            fx[x] = Scalar(1);
            for (std::size_t z = 0; z < nv; ++z) {
                Vec expected = (z == x) ? phi_.col(x) : Vec(f2.dim);
                if (restrict_to_source(phi_.col(z), x) != expected) {
                    rep.orientation_bimodule = false;
                    break;
                }
            }
        }
        // Closedness and graded symmetry of the trace on the edge basis.
        rep.closed = true;
        std::size_t ne = g.edge_count();
        for (std::size_t e = 0; e < ne && rep.closed; ++e) {
            Vec w(ne);
            w[e] = Scalar(1);
            if (!graded_trace(calc_.d_matrix(1) * w).is_zero()) rep.closed = false;
        }
        rep.graded_symmetric = true;
        for (std::size_t e1 = 0; e1 < ne && rep.graded_symmetric; ++e1)
            for (std::size_t e2 = 0; e2 < ne; ++e2) {
                Vec w1(ne), w2(ne);
                w1[e1] = Scalar(1);
                w2[e2] = Scalar(1);
                Vec sym = calc_.wedge(1, w1, 1, w2) + calc_.wedge(1, w2, 1, w1);
                if (!graded_trace(sym).is_zero()) {
                    rep.graded_symmetric = false;
                    break;
                }
            }
        trace_report_ = rep;
    }

    const Calculus& calc_;
    const ComplexStructure& cs_;
    OrientationChoice orientation_;
    ExactMatrix phi_;
    ExactMatrix phi_inv_;
    TraceReport trace_report_;
};

}  // namespace graphforms
