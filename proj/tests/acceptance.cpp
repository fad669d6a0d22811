// Acceptance suite: one pass/fail line per criterion. All checks are exact
// (tolerance zero) because all arithmetic is exact.

#include <cstdio>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "graphforms/graphforms.hpp"

using namespace graphforms;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, bool pass, const std::string& note = "") {
    std::printf("[%s] criterion %02d: %s%s%s\n", pass ? "PASS" : "FAIL", number, label.c_str(),
                note.empty() ? "" : " -- ", note.c_str());
    if (!pass) ++g_failures;
}

struct Rng {
    unsigned long long state;
    explicit Rng(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    Scalar entry(int span = 4) {
        return GaussianRational(Rational(static_cast<long>(next() % (2 * span + 1)) - span),
                                Rational(static_cast<long>(next() % (2 * span + 1)) - span));
    }
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        for (int k = n - 1; k > 0; --k) std::swap(p[k], p[next() % (k + 1)]);
        return p;
    }
};

struct Model {
    PolygonModel polygon;
    SigmaOperator sigma;
    Calculus calc;
    ComplexStructure cs;

    explicit Model(int n, int maxdeg = 3)
        : polygon(make_polygon(n)),
          sigma(SigmaOperator::build(polygon.graph, polygon.sigma_spec)),
          calc(polygon.graph, sigma, maxdeg),
          cs(calc, polygon.j_spec) {}
};

Vec edge_unit(const Calculus& calc, int x, int y) {
    Vec v(calc.dim(1));
    v[calc.graph().edge(x, y)] = Scalar(1);
    return v;
}

Vec path2_unit(const Calculus& calc, int a, int b, int c) {
    Vec v(calc.space(2).paths.size());
    v[calc.space(2).paths.index({a, b, c})] = Scalar(1);
    return v;
}

constexpr int kNLow = 3;
constexpr int kNHigh = 8;  // the spec pins 3..8 for positivity and triviality

}  // namespace

int main() {
    // ---- 1. polygon dimensions for n = 3..10 --------------------------------
    {
        bool ok = true;
        for (int n = 3; n <= 10; ++n) {
            Model m(n);
            ok = ok && m.calc.dim(1) == 2 * static_cast<std::size_t>(n) &&
                 m.calc.dim(2) == static_cast<std::size_t>(n) && m.calc.dim(3) == 0;
        }
        criterion(1, "polygon dimensions dim O^1 = 2n, dim O^2 = n, dim O^3 = 0 (n = 3..10)", ok);
    }

    // Shared models for the remaining criteria. ComplexStructure keeps a
    // reference to its sibling Calculus, so elements must never relocate:
    // deque constructs in place and leaves them put.
    std::deque<Model> models;
    for (int n = kNLow; n <= kNHigh; ++n) models.emplace_back(n);

    // ---- 2. braid relation ---------------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            const PathIndex& p3 = m.calc.space(3).paths;
            ok = ok && p3.size() == 8 * m.calc.dim(0);
            ExactMatrix s12 = leg_operator(m.sigma, 1, 3, p3);
            ExactMatrix s23 = leg_operator(m.sigma, 2, 3, p3);
            ok = ok && (s12 * (s23 * s12) == s23 * (s12 * s23));
        }
        criterion(2, "braid relation s12 s23 s12 = s23 s12 s23 on all 8n basis 3-paths", ok);
    }

    // ---- 3. involution compatibility -----------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            // sigma commutes with * on 2-tensors (antilinear star on the
            // path basis).
            const PathIndex& p2 = m.calc.space(2).paths;
            auto star2 = [&](const Vec& v) {
                Vec out(p2.size());
                for (std::size_t k = 0; k < v.size(); ++k) {
                    if (v[k].is_zero()) continue;
                    Path rev = p2.path(k);
                    std::reverse(rev.begin(), rev.end());
                    out[p2.index(rev)] -= v[k].conj();
                }
                return out;
            };
            for (std::size_t col = 0; col < p2.size() && ok; ++col) {
                Vec unit(p2.size());
                unit[col] = Scalar(1);
                ok = ok && (m.sigma.matrix() * star2(unit) == star2(m.sigma.matrix() * unit));
            }
            // A_n(eta*) = (A_n eta)* for n = 2, 3 on the full basis.
            for (int deg : {2, 3}) {
                const FormSpace& fs = m.calc.space(deg);
                ExactMatrix an =
                    deg == 2 ? fs.antisym : antisymmetrizer(m.sigma, 3, fs.paths);
                for (std::size_t col = 0; col < fs.paths.size() && ok; ++col) {
                    Vec unit(fs.paths.size());
                    unit[col] = Scalar(1);
                    Vec lhs = an * m.calc.star_on_paths(fs.paths, unit);
                    Vec rhs = m.calc.star_on_paths(fs.paths, conj(an * unit));
                    ok = ok && (lhs == rhs);
                }
            }
        }
        criterion(3, "sigma commutes with * on 2-tensors; A_n(eta*) = (A_n eta)* for n = 2, 3", ok);
    }

    // ---- 4. differential axioms ----------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            std::size_t nv = m.calc.dim(0), ne = m.calc.dim(1);
            ok = ok && (m.calc.d_matrix(1) * m.calc.d_matrix(0)).is_zero();
            ok = ok && (m.calc.d_matrix(2) * m.calc.d_matrix(1)).is_zero();
            for (std::size_t x = 0; x < nv && ok; ++x) {
                Vec f(nv);
                f[x] = GaussianRational(Rational(1), Rational(2));
                ok = ok && m.calc.d(0, m.calc.star(0, f)) == m.calc.star(1, m.calc.d(0, f));
                for (std::size_t y = 0; y < nv && ok; ++y) {
                    Vec g(nv);
                    g[y] = Scalar(1);
                    ok = ok && m.calc.d(0, m.calc.wedge(0, f, 0, g)) ==
                                   m.calc.wedge(0, f, 1, m.calc.d(0, g)) +
                                       m.calc.wedge(1, m.calc.d(0, f), 0, g);
                }
                for (std::size_t e = 0; e < ne && ok; ++e) {
                    Vec w(ne);
                    w[e] = Scalar(1);
                    ok = ok && m.calc.d(1, m.calc.wedge(0, f, 1, w)) ==
                                   m.calc.wedge(1, m.calc.d(0, f), 1, w) +
                                       m.calc.wedge(0, f, 2, m.calc.d(1, w));
                    ok = ok && m.calc.d(1, m.calc.wedge(1, w, 0, f)) ==
                                   m.calc.wedge(2, m.calc.d(1, w), 0, f) -
                                       m.calc.wedge(1, w, 1, m.calc.d(0, f));
                }
            }
            for (std::size_t e1 = 0; e1 < ne && ok; ++e1) {
                Vec a(ne);
                a[e1] = GaussianRational(Rational(0), Rational(1));
                ok = ok && m.calc.d(1, m.calc.star(1, a)) == m.calc.star(2, m.calc.d(1, a));
                for (std::size_t e2 = 0; e2 < ne && ok; ++e2) {
                    Vec b(ne);
                    b[e2] = Scalar(1);
                    ok = ok && m.calc.d(2, m.calc.wedge(1, a, 1, b)) ==
                                   m.calc.wedge(2, m.calc.d(1, a), 1, b) -
                                       m.calc.wedge(1, a, 2, m.calc.d(1, b));
                }
            }
        }
        criterion(4, "d^2 = 0 on A and O^1; graded Leibniz through degree 2; d(w*) = (dw)*", ok);
    }

    // ---- 5. complex structure -------------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            std::size_t ne = m.calc.dim(1);
            ok = ok && (m.cs.j1() * m.cs.j1() == Scalar(-1) * ExactMatrix::identity(ne));
            ok = ok && m.cs.check_sigma_commutation().ok;
            for (int deg : {2, 3}) {
                ExactMatrix jp = m.cs.j_on_paths(deg);
                ExactMatrix an = deg == 2 ? m.calc.space(2).antisym
                                          : antisymmetrizer(m.sigma, 3, m.calc.space(3).paths);
                ok = ok && (an * jp == jp * an);
            }
            auto integ = m.cs.check_integrability();
            ok = ok && integ.all_pass() && integ.agree();
        }
        criterion(5, "J^2 = -Id; J commutes with sigma and A_n; integrability conditions agree",
                  ok);
    }

    // ---- 6. (p,q) tables -------------------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            const PQDecomposition& dec2 = m.cs.pq(2);
            ok = ok && dec2.component_dim(2, 0) == 0 && dec2.component_dim(0, 2) == 0 &&
                 dec2.component_dim(1, 1) == m.calc.dim(2);
            for (int deg = 0; deg <= 3; ++deg) {
                if (m.calc.dim(deg) == 0) continue;
                std::size_t total = 0;
                const PQDecomposition& dec = m.cs.pq(deg);
                for (const auto& basis : dec.bases) total += basis.cols();
                ok = ok && total == m.calc.dim(deg);
            }
        }
        criterion(6, "O^{2,0} = O^{0,2} = 0, O^{1,1} = O^2; eigenspace dimensions fill each degree",
                  ok);
    }

    // ---- 7. Dolbeault cohomology ----------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            auto table0 = m.cs.dolbeault(0);
            auto table1 = m.cs.dolbeault(1);
            auto dim_at = [](const std::vector<DolbeaultEntry>& t, int q) -> std::size_t {
                for (const auto& e : t)
                    if (e.q == q) return e.dim;
                return 0;
            };
            ok = ok && dim_at(table0, 0) == 1 && dim_at(table1, 0) == 1 && dim_at(table1, 1) == 1;
            for (int q = 2; q <= 3; ++q) ok = ok && dim_at(table1, q) == 0;
            // representative of H^{1,0} spans sum of forward edges
            for (const auto& e : table1)
                if (e.q == 0 && e.dim == 1) {
                    Vec fwd(m.calc.dim(1));
                    for (std::size_t ed = 0; ed < fwd.size(); ++ed)
                        if (m.cs.is_holomorphic_edge(ed)) fwd[ed] = Scalar(1);
                    const Vec& rep = e.representatives[0];
                    Scalar ratio;
                    for (std::size_t k = 0; k < rep.size(); ++k)
                        if (!rep[k].is_zero()) {
                            ratio = rep[k] / fwd[k];
                            break;
                        }
                    ok = ok && !ratio.is_zero() && rep == ratio * fwd;
                }
        }
        criterion(7, "dim H^{1,0} = 1 spanned by the forward cycle; dim H^{1,1} = 1; "
                     "H^{1,q>=2} = 0; dim H^{0,0} = 1",
                  ok);
    }

    // ---- 8. connection layer ---------------------------------------------------
    {
        bool formulas_ok = true, relation_ok = true, descent_ok = true;
        bool curvature_matches_expected = true, curvature_nonzero = true;
        std::string curvature_note;
        for (const Model& m : models) {
            int n = static_cast<int>(m.calc.dim(0));
            HolomorphicLayer holo(m.calc, m.cs);
            const BidiGraph& g = m.calc.graph();
            for (int mu = 0; mu < n && formulas_ok; ++mu) {
                int next = (mu + 1) % n, prev = (mu + n - 1) % n;
                int nn = (mu + 2) % n, pp = (mu + n - 2) % n;
                Vec nf = path2_unit(m.calc, prev, mu, next) + path2_unit(m.calc, next, mu, next) -
                         path2_unit(m.calc, mu, prev, mu) - path2_unit(m.calc, mu, next, nn);
                Vec nb = path2_unit(m.calc, next, mu, prev) + path2_unit(m.calc, prev, mu, prev) -
                         path2_unit(m.calc, mu, prev, pp) - path2_unit(m.calc, mu, next, mu);
                formulas_ok = formulas_ok && holo.nabla().col(g.edge(mu, next)) == nf &&
                              holo.nabla().col(g.edge(mu, prev)) == nb;
                Vec nbf = path2_unit(m.calc, next, mu, next) - path2_unit(m.calc, mu, prev, mu);
                Vec nbb = path2_unit(m.calc, next, mu, prev) - path2_unit(m.calc, mu, prev, pp);
                formulas_ok = formulas_ok && holo.nabla_bar().col(g.edge(mu, next)) == nbf &&
                              holo.nabla_bar().col(g.edge(mu, prev)) == nbb;
            }
            // relation lemma and descent are verified at construction; the
            // relation is re-checked here as a matrix identity.
            const PathIndex& p3 = m.calc.space(3).paths;
            ExactMatrix filtered(p3.size(), m.calc.space(2).paths.size());
            {
                // rebuild (pi01 (x) id (x) id) o nabla^{(x2)} independently
                ExactMatrix s12 = leg_operator(m.sigma, 1, 3, p3);
                const PathIndex& p2 = m.calc.space(2).paths;
                ExactMatrix first(p3.size(), p2.size());
                ExactMatrix second(p3.size(), p2.size());
                for (std::size_t col = 0; col < p2.size(); ++col) {
                    const Path& p = p2.path(col);
                    Vec left = holo.nabla().col(g.edge(p[0], p[1]));
                    for (std::size_t k = 0; k < left.size(); ++k) {
                        if (left[k].is_zero()) continue;
                        const Path& q = p2.path(k);
                        if (q.back() != p[1]) continue;
                        first.at(p3.index({q[0], q[1], p[1], p[2]}), col) += left[k];
                    }
                    Vec right = holo.nabla().col(g.edge(p[1], p[2]));
                    for (std::size_t k = 0; k < right.size(); ++k) {
                        if (right[k].is_zero()) continue;
                        const Path& q = p2.path(k);
                        if (q.front() != p[1]) continue;
                        second.at(p3.index({p[0], p[1], q[1], q[2]}), col) += right[k];
                    }
                }
                ExactMatrix full = first + s12 * second;
                for (std::size_t c = 0; c < full.cols(); ++c)
                    for (std::size_t r = 0; r < full.rows(); ++r) {
                        if (full.at(r, c).is_zero()) continue;
                        const Path& p = p3.path(r);
                        if (!m.cs.is_holomorphic_edge(g.edge(p[0], p[1])))
                            filtered.at(r, c) = full.at(r, c);
                    }
            }
            relation_ok = relation_ok && filtered == holo.nabla_bar_tensor2();
            ExactMatrix s23 = leg_operator(m.sigma, 2, 3, p3);
            for (const auto& k : kernel_basis(m.calc.space(2).antisym)) {
                Vec img = holo.nabla_bar_tensor2() * k;
                descent_ok = descent_ok && (s23 * img == img);
            }

            // Documented curvature expectation (stated as nonzero):
            // nabla^2(xi_{mu->mu+1}) = xi_{mu-1->mu} ^ xi_{mu->mu-1} (x) xi_{mu-1->mu}
            //                        + xi_{mu+1->mu} ^ xi_{mu->mu+1} (x) xi_{mu+1->mu+2}
            const TensorBasis& b21 = holo.omega2_tensor_omega1();
            for (int mu = 0; mu < n; ++mu) {
                int next = (mu + 1) % n, prev = (mu + n - 1) % n, nn = (mu + 2) % n;
                Vec expected(b21.size());
                Vec cls1 = m.calc.class_of_path(2, {prev, mu, prev});
                for (std::size_t t = 0; t < cls1.size(); ++t)
                    if (!cls1[t].is_zero())
                        expected[b21.index(t, g.edge(prev, mu))] += cls1[t];
                Vec cls2 = m.calc.class_of_path(2, {next, mu, next});
                for (std::size_t t = 0; t < cls2.size(); ++t)
                    if (!cls2[t].is_zero())
                        expected[b21.index(t, g.edge(next, nn))] += cls2[t];
                Vec got = holo.curvature().col(g.edge(mu, next));
                if (got != expected) curvature_matches_expected = false;
                if (is_zero_vec(got)) curvature_nonzero = false;
            }
            if (holo.curvature().is_zero() && curvature_note.empty())
                curvature_note =
                    "engine computes nabla^2 = 0 exactly under the standard extension "
                    "nabla(w (x) e) = dw (x) e - w ^ nabla(e); the expected formula "
                    "reproduces only the theta ^ sigma(w (x) theta) term";
        }
        criterion(8, "nabla and nabla_bar reproduce the displayed formulas; tensor-square "
                     "relation and descent hold",
                  formulas_ok && relation_ok && descent_ok);
        criterion(8, "nabla^2 on forward edges equals the expected nonzero formula",
                  curvature_matches_expected && curvature_nonzero, curvature_note);
    }

    // ---- 9. sections and ring ---------------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            HolomorphicLayer holo(m.calc, m.cs);
            auto ring = holo.section_ring();
            ok = ok && ring.graded_dims == std::vector<std::size_t>{1, 2, 1};
            ok = ok && ring.squares_vanish && ring.anticommute && ring.top_nonzero &&
                 ring.wedge_closed && ring.exterior_algebra;
            // basis span check: {sum forward, sum backward}
            Vec fwd(m.calc.dim(1)), bwd(m.calc.dim(1));
            for (std::size_t e = 0; e < m.calc.dim(1); ++e)
                (m.cs.is_holomorphic_edge(e) ? fwd : bwd)[e] = Scalar(1);
            ExactMatrix span(m.calc.dim(1), ring.sections1.size());
            for (std::size_t c = 0; c < ring.sections1.size(); ++c)
                span.set_col(c, ring.sections1[c]);
            ok = ok && solve(span, fwd).has_value() && solve(span, bwd).has_value();
        }
        criterion(9, "dim H^0(O^1) = 2 spanned by the two cycles; dim H^0(O^2) = 1; "
                     "exterior-algebra ring relations (1,2,1)",
                  ok);
    }

    // ---- 10. trace and cocycle identities -----------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            CocycleLayer layer(m.calc, m.cs);
            ok = ok && layer.trace_report().closed && layer.trace_report().graded_symmetric;
            auto ids = layer.verify_cocycle_identities();
            ok = ok && ids.b_phi_zero && ids.b_tau_zero && ids.tau_cyclic &&
                 ids.tau_minus_phi_is_b_psi;
        }
        Model m3(3);
        CocycleLayer layer3(m3.calc, m3.cs);
        ok = ok && layer3.cochain_phi().at({0, 1, 1}) == Scalar(Rational(1, 3));
        criterion(10, "trace closed and graded symmetric; b phi = 0; tau cyclic; "
                      "tau - phi = b psi; phi(d1,d2,d2) = 1/3 at n = 3",
                  ok);
    }

    // ---- 11. positivity -------------------------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            CocycleLayer layer(m.calc, m.cs);
            auto [gram, psd] = layer.positivity_gram();
            std::size_t n = m.calc.dim(0);
            ok = ok && gram.rows() == n * n && psd.is_hermitian && psd.is_psd;

            CocycleLayer opposite(m.calc, m.cs, OrientationChoice::opposite);
            auto [gram_o, psd_o] = opposite.positivity_gram();
            ok = ok && psd_o.is_hermitian && !psd_o.is_psd && psd_o.witness.has_value();
            if (psd_o.witness) {
                Scalar value = detail::quadratic_form(gram_o, *psd_o.witness);
                ok = ok && value.is_real() && value.re().sign() < 0;
            }
        }
        criterion(11, "n^2 x n^2 Gram matrix Hermitian PSD (standard); opposite orientation "
                      "refuted with an exact witness (n = 3..8)",
                  ok);
    }

    // ---- 12. triviality ----------------------------------------------------------------
    {
        bool ok = true;
        bool candidate_stated = true;
        for (const Model& m : models) {
            CocycleLayer layer(m.calc, m.cs);
            auto candidate = successor_candidate_cochain(m.calc.graph(), m.cs);
            auto result = layer.tau_triviality_witness(candidate);
            ok = ok && result.solution_found && result.witness.has_value();
            if (result.witness) {
                Cochain bx = hochschild_b(*result.witness);
                ok = ok && bx.table == layer.cochain_tau().table;
            }
            candidate_stated = candidate_stated && result.successor_candidate_matches.has_value();
        }
        criterion(12, "cyclic 1-cochain X with bX = tau exists (n = 3..8); candidate tau' "
                      "verdict stated in the report",
                  ok && candidate_stated,
                  "engine verdict: the literal tau' (value 1 on successors) does not satisfy "
                  "b tau' = tau; the solved witness equals -tau'/(2n)");
    }

    // ---- 13. uniqueness -------------------------------------------------------------------
    {
        bool ok = true;
        for (const Model& m : models) {
            HolomorphicLayer holo(m.calc, m.cs);
            auto rep = holo.unique_bimodule_delbar_check();
            ok = ok && rep.solution_dim == 0 && rep.holomorphic_part_connected;
        }
        criterion(13, "bimodule-map solution space for Phi: A -> O^{0,1} is exactly {0}", ok);
    }

    // ---- 14. property suite ------------------------------------------------------------------
    {
        Rng rng(0x5eedc0de1234ULL);
        bool words_ok = true;
        {
            Model m(4, 4);
            PathIndex p4(m.calc.graph(), 4);
            for (int trial = 0; trial < 20; ++trial) {
                auto p = rng.permutation(4);
                words_ok = words_ok &&
                           pi_p(m.sigma, p, p4, WordStrategy::leftmost_descent) ==
                               pi_p(m.sigma, p, p4, WordStrategy::rightmost_descent);
            }
        }
        bool wedge_ok = true;
        {
            Model m(5);
            auto kernel = kernel_basis(m.calc.space(2).antisym);
            std::size_t ne = m.calc.dim(1);
            for (int trial = 0; trial < 10; ++trial) {
                Vec a(ne), b(ne);
                for (auto& c : a) c = rng.entry();
                for (auto& c : b) c = rng.entry();
                Vec w = m.calc.wedge(1, a, 1, b);
                Vec perturbed = m.calc.lift_form(2, w);
                for (const auto& k : kernel) perturbed = perturbed + rng.entry() * k;
                wedge_ok = wedge_ok && m.calc.project_form(2, perturbed) == w;
            }
        }
        bool bb_ok = true;
        {
            for (int arity : {0, 1, 2}) {
                Cochain c(arity, 5);
                for (auto& v : c.table) v = rng.entry();
                bb_ok = bb_ok && is_zero_vec(hochschild_b(hochschild_b(c)).table);
            }
        }
        bool psd_ok = true;
        for (int trial = 0; trial < 25; ++trial) {
            ExactMatrix nmat(6, 6);
            for (std::size_t r = 0; r < 6; ++r)
                for (std::size_t c = 0; c < 6; ++c) nmat.at(r, c) = rng.entry();
            auto rep = hermitian_psd(nmat.conj_transpose() * nmat);
            psd_ok = psd_ok && rep.is_hermitian && rep.is_psd;
        }
        criterion(14, "reduced-word independence (20 random S4); wedge lift-independence; "
                      "b^2 = 0; PSD certifier accepts N* N (25 random 6x6)",
                  words_ok && wedge_ok && bb_ok && psd_ok);
    }

    if (g_failures)
        std::printf("%d criterion check(s) failed\n", g_failures);
    else
        std::printf("all acceptance criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
