#pragma once

#include <optional>
#include <vector>

#include "graphforms/braiding.hpp"
#include "graphforms/first_order.hpp"
#include "graphforms/graph.hpp"
#include "graphforms/matrix.hpp"

namespace graphforms {

/// Quotient presentation of the degree-n form space
/// Omega^n = PathSpace(n) / ker(A_n).
///
/// The quotient basis is the set of non-pivot path-basis columns of the
/// echelonized kernel, so every basis class is the class of a single path
/// and all reports are byte-reproducible. `projection` maps path
/// coordinates to quotient coordinates (annihilating the kernel exactly)
/// and `lift` sends a quotient basis element to its representative path;
/// projection o lift = identity.
struct FormSpace {
    int degree = 0;
    std::size_t dim = 0;
    PathIndex paths;                          // basis of PathSpace(degree), empty for degree 0
    std::vector<std::size_t> quotient_paths;  // representative path index per quotient basis element
    ExactMatrix projection;                   // dim x |paths|
    ExactMatrix lift;                         // |paths| x dim
    ExactMatrix antisym;                      // A_degree (degree >= 2 only)
};

struct CalculusDimension {
    std::optional<int> dimension;  // smallest n with Omega^n = 0, minus 1
    int cutoff = 0;
};

/// The graded *-differential calculus of a bidirected graph, built by
/// canonical prolongation with respect to a validated braiding. Degrees are
/// constructed up to `max_degree`; once some Omega^k = 0 every higher degree
/// is zero too, so construction short-circuits there.
class Calculus {
public:
    Calculus(const BidiGraph& g, const SigmaOperator& sigma, int max_degree,
             int budget_degree = 6)
        : graph_(g), sigma_(sigma), max_degree_(max_degree), budget_degree_(budget_degree) {
        if (max_degree < 1) raise("DegreeOutOfRange", "max degree must be >= 1");
        spaces_.reserve(max_degree + 1);
        for (int n = 0; n <= max_degree; ++n) spaces_.push_back(build_space(n));
        // Everything is immutable from here on; precomputing the
        // differentials keeps const access free of shared mutable state.
        d_cache_.reserve(max_degree);
        for (int n = 0; n < max_degree; ++n) {
            if (dim(n) == 0 || dim(n + 1) == 0)
                d_cache_.emplace_back(dim(n + 1), dim(n));
            else
                d_cache_.push_back(build_d(n));
        }
    }

    const BidiGraph& graph() const { return graph_; }
    const SigmaOperator& sigma() const { return sigma_; }
    int max_degree() const { return max_degree_; }
    const FormSpace& space(int n) const {
        if (n < 0 || n > max_degree_) raise("DegreeOutOfRange", "no form space of that degree");
        return spaces_[n];
    }
    std::size_t dim(int n) const { return space(n).dim; }

    /// Smallest n (2 <= n < cutoff) with dim Omega^n = 0, minus one;
    /// Unknown(cutoff) when no zero degree shows up below the cutoff.
    CalculusDimension dimension(int cutoff) const {
        CalculusDimension out;
        out.cutoff = cutoff;
        for (int n = 2; n < cutoff && n <= max_degree_; ++n)
            if (spaces_[n].dim == 0) {
                out.dimension = n - 1;
                return out;
            }
        return out;
    }

    // --- coordinate helpers -------------------------------------------------

    /// Class of a basis path in quotient coordinates.
    Vec class_of_path(int n, const Path& p) const {
        const FormSpace& fs = space(n);
        Vec v(fs.paths.size());
        v[fs.paths.index(p)] = Scalar(1);
        return fs.projection * v;
    }

    Vec class_of_edge(int x, int y) const { return class_of_path(1, Path{x, y}); }

    Vec lift_form(int n, const Vec& coords) const {
        if (n == 0) return coords;
        return space(n).lift * coords;
    }

    Vec project_form(int n, const Vec& path_coords) const {
        if (n == 0) return path_coords;
        return space(n).projection * path_coords;
    }

    // --- graded operations ---------------------------------------------------

    /// Product of quotient classes via lifted representatives; degree-0
    /// factors act by the module action. Independent of the choice of lifts.
    Vec wedge(int deg_a, const Vec& a, int deg_b, const Vec& b) const {
        if (deg_a == 0 && deg_b == 0) {
            Vec out(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
            return out;
        }
        if (deg_a == 0) return act_on_form(deg_b, a, b, Side::left);
        if (deg_b == 0) return act_on_form(deg_a, b, a, Side::right);
        int target = deg_a + deg_b;
        if (target > max_degree_)
            raise("DegreeOutOfRange", "wedge degree exceeds computed range");
        const FormSpace& ft = space(target);
        if (ft.dim == 0) return Vec();
        Vec la = lift_form(deg_a, a);
        Vec lb = lift_form(deg_b, b);
        const auto& pa = space(deg_a).paths;
        const auto& pb = space(deg_b).paths;
        Vec tensor(ft.paths.size());
        for (std::size_t i = 0; i < la.size(); ++i) {
            if (la[i].is_zero()) continue;
            const Path& p = pa.path(i);
            for (std::size_t j = 0; j < lb.size(); ++j) {
                if (lb[j].is_zero()) continue;
                const Path& q = pb.path(j);
                if (p.back() != q.front()) continue;
                Path pq = p;
                pq.insert(pq.end(), q.begin() + 1, q.end());
                tensor[ft.paths.index(pq)] += la[i] * lb[j];
            }
        }
        return ft.projection * tensor;
    }

    /// Left/right module action of a function on a degree-n class.
    Vec act_on_form(int n, const Vec& f, const Vec& form, Side side) const {
        if (n == 0) {
            Vec out(form.size());
            for (std::size_t k = 0; k < form.size(); ++k) out[k] = f[k] * form[k];
            return out;
        }
        const FormSpace& fs = space(n);
        Vec lifted = lift_form(n, form);
        for (std::size_t i = 0; i < lifted.size(); ++i) {
            if (lifted[i].is_zero()) continue;
            const Path& p = fs.paths.path(i);
            lifted[i] *= f[side == Side::left ? p.front() : p.back()];
        }
        return fs.projection * lifted;
    }

    /// d on Omega^n as the graded commutator [theta, .]. Extends the
    /// first-order derivation; d^2 = 0 by the prolongation theorem.
    const ExactMatrix& d_matrix(int n) const {
        if (n < 0 || n >= max_degree_) raise("DegreeOutOfRange", "no differential at that degree");
        return d_cache_[n];
    }

    Vec d(int n, const Vec& form) const { return d_matrix(n) * form; }

    /// Antilinear graded involution on quotient classes. For a basis path
    /// v0...vn the representative rule reverses the path with sign
    /// (-1)^{n(n-1)/2} (-1)^n; degree 0 conjugates values.
    Vec star(int n, const Vec& form) const {
        if (n == 0) return conj(form);
        const FormSpace& fs = space(n);
        Vec lifted = lift_form(n, conj(form));
        return fs.projection * star_on_paths(fs.paths, lifted);
    }

    /// The linear path-level involution part (conjugation excluded): used to
    /// verify A_n eta* = (A_n eta)* on the tensor power itself.
    Vec star_on_paths(const PathIndex& basis, const Vec& path_coords) const {
        int n = basis.steps();
        int exponent = (n * (n - 1)) / 2 + n;
        Scalar sign = (exponent % 2 == 0) ? Scalar(1) : Scalar(-1);
        Vec out(basis.size());
        for (std::size_t i = 0; i < path_coords.size(); ++i) {
            if (path_coords[i].is_zero()) continue;
            Path rev = basis.path(i);
            std::reverse(rev.begin(), rev.end());
            out[basis.index(rev)] += sign * path_coords[i];
        }
        return out;
    }

    Vec theta_class() const { return theta(graph_).coeffs; }

private:
    FormSpace build_space(int n) {
        FormSpace fs;
        fs.degree = n;
        if (n == 0) {
            fs.dim = graph_.vertex_count();
            fs.projection = ExactMatrix::identity(fs.dim);
            fs.lift = fs.projection;
            return fs;
        }
        fs.paths = PathIndex(graph_, n);
        if (n == 1) {
            fs.dim = fs.paths.size();
            fs.projection = ExactMatrix::identity(fs.dim);
            fs.lift = fs.projection;
            for (std::size_t k = 0; k < fs.dim; ++k) fs.quotient_paths.push_back(k);
            return fs;
        }
        // Once a lower degree vanishes, so does every higher one; skip the
        // factorial-size antisymmetrizer.
        for (int m = 2; m < n; ++m)
            if (spaces_[m].dim == 0) {
                fs.dim = 0;
                fs.projection = ExactMatrix(0, fs.paths.size());
                fs.lift = ExactMatrix(fs.paths.size(), 0);
                return fs;
            }
        fs.antisym = antisymmetrizer(sigma_, n, fs.paths, budget_degree_);
        auto kernel = kernel_basis(fs.antisym);
        ExactMatrix krows(kernel.size(), fs.paths.size());
        for (std::size_t r = 0; r < kernel.size(); ++r)
            for (std::size_t c = 0; c < fs.paths.size(); ++c) krows.at(r, c) = kernel[r][c];
        RrefResult echelon = rref(std::move(krows));
        std::vector<bool> is_pivot(fs.paths.size(), false);
        for (std::size_t p : echelon.pivot_columns) is_pivot[p] = true;
        for (std::size_t c = 0; c < fs.paths.size(); ++c)
            if (!is_pivot[c]) fs.quotient_paths.push_back(c);
        fs.dim = fs.quotient_paths.size();
        fs.projection = ExactMatrix(fs.dim, fs.paths.size());
        for (std::size_t q = 0; q < fs.dim; ++q) {
            fs.projection.at(q, fs.quotient_paths[q]) = Scalar(1);
            for (std::size_t r = 0; r < echelon.rank; ++r)
                fs.projection.at(q, echelon.pivot_columns[r]) -=
                    echelon.matrix.at(r, fs.quotient_paths[q]);
        }
        fs.lift = ExactMatrix(fs.paths.size(), fs.dim);
        for (std::size_t q = 0; q < fs.dim; ++q) fs.lift.at(fs.quotient_paths[q], q) = Scalar(1);
        return fs;
    }

    ExactMatrix build_d(int n) const {
        const FormSpace& src = space(n);
        const FormSpace& dst = space(n + 1);
        ExactMatrix m(dst.dim, src.dim);
        Vec th = theta_class();
        if (n == 0) {
            for (std::size_t x = 0; x < src.dim; ++x) {
                Vec f(src.dim);
                f[x] = Scalar(1);
                Vec theta_f = act_on_form(1, f, th, Side::right);
                Vec f_theta = act_on_form(1, f, th, Side::left);
                m.set_col(x, theta_f - f_theta);  // df = [theta, f]
            }
            return m;
        }
        Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
        for (std::size_t q = 0; q < src.dim; ++q) {
            Vec basis(src.dim);
            basis[q] = Scalar(1);
            Vec dq = wedge(1, th, n, basis) - sign * wedge(n, basis, 1, th);
            m.set_col(q, dq);
        }
        return m;
    }

    BidiGraph graph_;
    SigmaOperator sigma_;
    int max_degree_;
    int budget_degree_;
    std::vector<FormSpace> spaces_;
    std::vector<ExactMatrix> d_cache_;
};

}  // namespace graphforms
