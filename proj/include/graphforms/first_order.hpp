#pragma once

#include <vector>

#include "graphforms/graph.hpp"
#include "graphforms/matrix.hpp"

namespace graphforms {

/// Element of the function algebra A = C(V): one value per vertex.
struct AlgebraElement {
    Vec values;

    static AlgebraElement zero(const BidiGraph& g) { return {Vec(g.vertex_count())}; }
    static AlgebraElement constant(const BidiGraph& g, Scalar c) {
        AlgebraElement f{Vec(g.vertex_count())};
        for (auto& v : f.values) v = c;
        return f;
    }
    /// Indicator function of a single vertex; deltas span A and serve as the
    /// canonical test basis for every bimodule identity.
    static AlgebraElement delta(const BidiGraph& g, int x) {
        AlgebraElement f{Vec(g.vertex_count())};
        f.values[x] = Scalar(1);
        return f;
    }

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

inline AlgebraElement operator*(const AlgebraElement& f, const AlgebraElement& g) {
    AlgebraElement out{Vec(f.values.size())};
    for (std::size_t k = 0; k < f.values.size(); ++k) out.values[k] = f.values[k] * g.values[k];
    return out;
}

inline AlgebraElement operator+(const AlgebraElement& f, const AlgebraElement& g) {
    return {f.values + g.values};
}

inline AlgebraElement conj(const AlgebraElement& f) { return {conj(f.values)}; }

/// One-form: coefficients on the directed-edge basis {xi_{x->y}}.
struct OneForm {
    Vec coeffs;

    static OneForm zero(const BidiGraph& g) { return {Vec(g.edge_count())}; }

    friend bool operator==(const OneForm&, const OneForm&) = default;
};

inline OneForm operator+(const OneForm& a, const OneForm& b) { return {a.coeffs + b.coeffs}; }
inline OneForm operator-(const OneForm& a, const OneForm& b) { return {a.coeffs - b.coeffs}; }
inline OneForm operator*(const Scalar& s, const OneForm& a) { return {s * a.coeffs}; }

/// df = sum over edges of (f(y) - f(x)) xi_{x->y}.
inline OneForm differential0(const BidiGraph& g, const AlgebraElement& f) {
    OneForm w = OneForm::zero(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [x, y] = g.edges()[e];
        w.coeffs[e] = f.values[y] - f.values[x];
    }
    return w;
}

enum class Side { left, right };

/// Bimodule action: f.xi_{x->y} = f(x) xi_{x->y} and xi_{x->y}.f = xi_{x->y} f(y).
inline OneForm act(const BidiGraph& g, const AlgebraElement& f, const OneForm& w, Side side) {
    OneForm out = OneForm::zero(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (w.coeffs[e].is_zero()) continue;
        auto [x, y] = g.edges()[e];
        out.coeffs[e] = w.coeffs[e] * f.values[side == Side::left ? x : y];
    }
    return out;
}

/// Antilinear involution on one-forms: (xi_{x->y})* = -xi_{y->x}.
inline OneForm star1(const BidiGraph& g, const OneForm& w) {
    OneForm out = OneForm::zero(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (w.coeffs[e].is_zero()) continue;
        out.coeffs[g.reverse_edge(e)] = -w.coeffs[e].conj();
    }
    return out;
}

/// theta = sum of all edge indicators; the calculus is inner with
/// df = theta.f - f.theta.
inline OneForm theta(const BidiGraph& g) {
    OneForm w = OneForm::zero(g);
    for (auto& c : w.coeffs) c = Scalar(1);
    return w;
}

}  // namespace graphforms
