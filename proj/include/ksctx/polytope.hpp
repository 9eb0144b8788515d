// Exact-rational polytope machinery: projections of the assignment table to
// correlation vertices, facet enumeration (vertex -> halfspace), and vertex
// enumeration (halfspace -> vertex) via the double description method.
//
// All coordinates of correlation vertices are +-1 integers, so every facet
// has an integral canonical form; there are no tolerances in this module.
#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ksctx/enumeration.hpp"
#include "ksctx/errors.hpp"
#include "ksctx/rational.hpp"
#include "ksctx/scenario.hpp"

namespace ksctx {

using RationalVector = std::vector<Rational>;

/// Halfspace normal . x <= offset, stored in canonical scaling: components
/// are coprime integers and the inequality direction is preserved (only
/// positive rescaling is ever applied).
struct HalfSpace {
    RationalVector normal;
    Rational offset;

    bool operator==(const HalfSpace& other) const {
        return normal == other.normal && offset == other.offset;
    }
};

namespace detail {

/// Rescales by a positive rational so components become coprime integers.
inline void make_primitive(RationalVector& v) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    Integer den = 1;
    for (const Rational& x : v) den = lcm(den, denominator(x));
    Integer g = 0;
    std::vector<Integer> ints;
    ints.reserve(v.size());
    for (const Rational& x : v) {
        Integer n = numerator(x) * (den / denominator(x));
        g = gcd(g, n);
        ints.push_back(n);
    }
    if (g == 0) return;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g);
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

inline bool lex_less(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Gaussian elimination rank; `rows` is consumed.
inline std::size_t matrix_rank(std::vector<RationalVector> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Indices of the first `dim` linearly independent rows, in input order.
/// Returns fewer than `dim` indices when the rank is deficient.
inline std::vector<std::size_t> greedy_row_basis(const std::vector<RationalVector>& rows,
                                                 std::size_t dim) {
    std::vector<std::size_t> picked;
    std::vector<RationalVector> echelon;
    for (std::size_t i = 0; i < rows.size() && picked.size() < dim; ++i) {
        RationalVector r = rows[i];
        for (const RationalVector& e : echelon) {
            std::size_t lead = 0;
            while (lead < e.size() && e[lead] == 0) ++lead;
            if (lead < e.size() && r[lead] != 0) {
                const Rational f = r[lead] / e[lead];
                for (std::size_t k = lead; k < r.size(); ++k) r[k] -= f * e[k];
            }
        }
        bool nonzero = false;
        for (const Rational& x : r)
            if (x != 0) {
                nonzero = true;
                break;
            }
        if (!nonzero) continue;
        // keep echelon rows sorted by leading column so reduction above works
        echelon.push_back(std::move(r));
        std::sort(echelon.begin(), echelon.end(), [](const RationalVector& a, const RationalVector& b) {
            std::size_t la = 0, lb = 0;
            while (la < a.size() && a[la] == 0) ++la;
            while (lb < b.size() && b[lb] == 0) ++lb;
            return la < lb;
        });
        picked.push_back(i);
    }
    return picked;
}

/// Columns of -M^{-1} for an invertible square matrix M (given as rows).
inline std::vector<RationalVector> negated_inverse_columns(std::vector<RationalVector> m) {
    const std::size_t n = m.size();
    // augment with identity
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, Rational(0));
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0) ++pivot;
        if (pivot == n) throw std::logic_error("matrix is singular");
        std::swap(m[c], m[pivot]);
        const Rational p = m[c][c];
        for (std::size_t k = 0; k < 2 * n; ++k) m[c][k] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Rational f = m[r][c];
            for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    std::vector<RationalVector> cols(n, RationalVector(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) cols[j][i] = -m[i][n + j];
    return cols;
}

struct Ray {
    RationalVector dir;       // primitive integer components
    std::vector<bool> tight;  // per input row, true where row . dir == 0
};

/// Extreme rays of the pointed cone { y : row . y <= 0 for every row }.
/// Rows are inserted in input order (after the initial simplicial basis of
/// the first dim independent rows). The caller must have checked that the
/// row rank equals dim; rays come back in lexicographic order.
inline std::vector<RationalVector> cone_extreme_rays(const std::vector<RationalVector>& rows,
                                                     std::size_t dim) {
    const std::vector<std::size_t> basis = greedy_row_basis(rows, dim);
    if (basis.size() != dim) throw std::logic_error("cone is not pointed");

    std::vector<RationalVector> basis_rows;
    basis_rows.reserve(dim);
    for (std::size_t idx : basis) basis_rows.push_back(rows[idx]);
    std::vector<RationalVector> initial = negated_inverse_columns(std::move(basis_rows));

    std::vector<Ray> rays;
    rays.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        Ray ray;
        ray.dir = std::move(initial[k]);
        make_primitive(ray.dir);
        ray.tight.assign(rows.size(), false);
        for (std::size_t j = 0; j < dim; ++j)
            if (j != k) ray.tight[basis[j]] = true;
        rays.push_back(std::move(ray));
    }

    std::vector<bool> in_basis(rows.size(), false);
    for (std::size_t idx : basis) in_basis[idx] = true;

    for (std::size_t c = 0; c < rows.size(); ++c) {
        if (in_basis[c]) continue;
        std::vector<Rational> side(rays.size());
        bool any_positive = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            side[i] = dot(rows[c], rays[i].dir);
            if (side[i] > 0) any_positive = true;
        }
        if (!any_positive) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (side[i] == 0) rays[i].tight[c] = true;
            continue;
        }

        auto adjacent = [&](std::size_t p, std::size_t q) {
            // combinatorial test: no third extreme ray is tight on the
            // whole common tight set of p and q
            for (std::size_t r = 0; r < rays.size(); ++r) {
                if (r == p || r == q) continue;
                bool superset = true;
                for (std::size_t bit = 0; bit < rows.size() && superset; ++bit)
                    if (rays[p].tight[bit] && rays[q].tight[bit] && !rays[r].tight[bit])
                        superset = false;
                if (superset) return false;
            }
            return true;
        };

        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (side[i] < 0) next.push_back(rays[i]);
            if (side[i] == 0) {
                next.push_back(rays[i]);
                next.back().tight[c] = true;
            }
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (side[p] >= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (side[q] <= 0 || !adjacent(p, q)) continue;
                Ray combined;
                combined.dir.resize(dim);
                for (std::size_t k = 0; k < dim; ++k)
                    combined.dir[k] = side[q] * rays[p].dir[k] - side[p] * rays[q].dir[k];
                make_primitive(combined.dir);
                combined.tight.assign(rows.size(), false);
                for (std::size_t bit = 0; bit < rows.size(); ++bit)
                    combined.tight[bit] = rays[p].tight[bit] && rays[q].tight[bit];
                combined.tight[c] = true;
                next.push_back(std::move(combined));
            }
        }
        rays = std::move(next);
    }

    std::vector<RationalVector> out;
    out.reserve(rays.size());
    for (Ray& r : rays) out.push_back(std::move(r.dir));
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

inline std::string component_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return rational_string(x);
}

}  // namespace detail

inline HalfSpace make_halfspace(RationalVector normal, Rational offset) {
    RationalVector combined = std::move(normal);
    combined.push_back(std::move(offset));
    detail::make_primitive(combined);
    HalfSpace h;
    h.offset = combined.back();
    combined.pop_back();
    h.normal = std::move(combined);
    bool nonzero = false;
    for (const Rational& x : h.normal)
        if (x != 0) nonzero = true;
    if (!nonzero) throw std::invalid_argument("halfspace normal must be nonzero");
    return h;
}

inline bool halfspace_less(const HalfSpace& a, const HalfSpace& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return detail::lex_less(a.normal, b.normal);
}

inline bool satisfies(const HalfSpace& h, const RationalVector& point) {
    return detail::dot(h.normal, point) <= h.offset;
}

inline bool tight(const HalfSpace& h, const RationalVector& point) {
    return detail::dot(h.normal, point) == h.offset;
}

/// Selects coordinates of an ExpectationRow: single-variable expectations by
/// canonical variable index or in-context joints by context index.
struct Coordinate {
    enum class Kind { Single, Joint };
    Kind kind;
    std::size_t index;
};

inline Coordinate single_coordinate(std::size_t variable) {
    return {Coordinate::Kind::Single, variable};
}

inline Coordinate joint_coordinate(std::size_t context) {
    return {Coordinate::Kind::Joint, context};
}

/// (E(x_y), E(y_x), E(x_y y_x)) for one context -- the coordinates in which
/// the single-context facets live.
inline std::vector<Coordinate> per_context_projection(const Scenario& s, std::size_t context) {
    if (context >= s.contexts().size()) throw std::invalid_argument("context index out of range");
    auto [lv, rv] = s.context_variables(context);
    return {single_coordinate(lv), single_coordinate(rv), joint_coordinate(context)};
}

/// All joint coordinates, in context declaration order.
inline std::vector<Coordinate> joints_projection(const Scenario& s) {
    std::vector<Coordinate> proj;
    for (std::size_t c = 0; c < s.contexts().size(); ++c) proj.push_back(joint_coordinate(c));
    return proj;
}

/// Distinct projected expectation rows over all assignments (or over the
/// noncontextual ones only), in lexicographic order.
inline std::vector<RationalVector> correlation_vertices(const Scenario& s,
                                                        const std::vector<Coordinate>& projection,
                                                        bool restrict_noncontextual = false) {
    for (const Coordinate& c : projection) {
        if (c.kind == Coordinate::Kind::Single && c.index >= s.variable_count())
            throw std::invalid_argument("projection names an unknown variable");
        if (c.kind == Coordinate::Kind::Joint && c.index >= s.contexts().size())
            throw std::invalid_argument("projection names an unknown context");
    }
    const std::uint64_t total = assignment_count(s);
    std::set<std::vector<int>> distinct;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Assignment a = assignment_from_index(s, i);
        if (restrict_noncontextual && !is_noncontextual(s, a)) continue;
        const ExpectationRow row = expectation_row(s, a);
        std::vector<int> point;
        point.reserve(projection.size());
        for (const Coordinate& c : projection)
            point.push_back(c.kind == Coordinate::Kind::Single ? row.singles[c.index]
                                                               : row.joints[c.index]);
        distinct.insert(std::move(point));
    }
    std::vector<RationalVector> out;
    out.reserve(distinct.size());
    for (const std::vector<int>& p : distinct) {
        RationalVector v;
        v.reserve(p.size());
        for (int x : p) v.emplace_back(x);
        out.push_back(std::move(v));
    }
    return out;
}

inline constexpr std::size_t kMaxFacetEnumerationDimension = 8;
inline constexpr std::size_t kMaxFacetEnumerationVertices = 64;

/// Complete irredundant facet list of conv(vertices), canonically scaled and
/// sorted by (offset, normal). The input must be full-dimensional.
inline std::vector<HalfSpace> facets_from_vertices(const std::vector<RationalVector>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("facet enumeration of an empty point set");
    const std::size_t dim = vertices[0].size();
    if (dim == 0 || dim > kMaxFacetEnumerationDimension)
        throw std::invalid_argument("facet enumeration supports dimensions 1 through 8");
    if (vertices.size() > kMaxFacetEnumerationVertices)
        throw std::invalid_argument("facet enumeration supports at most 64 points");
    for (const RationalVector& v : vertices)
        if (v.size() != dim) throw std::invalid_argument("points have inconsistent dimensions");

    // Valid inequalities a.x <= b form the cone { (a,b) : v.a - b <= 0 };
    // its extreme rays are exactly the facets when conv(vertices) is
    // full-dimensional and bounded.
    std::vector<RationalVector> rows;
    rows.reserve(vertices.size());
    for (const RationalVector& v : vertices) {
        RationalVector row = v;
        row.emplace_back(-1);
        rows.push_back(std::move(row));
    }
    const std::size_t rank = detail::matrix_rank(rows);
    if (rank < dim + 1)
        throw DegeneratePolytope(static_cast<long>(rank) - 1, static_cast<long>(dim));

    std::vector<RationalVector> rays = detail::cone_extreme_rays(rows, dim + 1);
    std::vector<HalfSpace> facets;
    facets.reserve(rays.size());
    for (RationalVector& ray : rays) {
        Rational offset = ray.back();
        ray.pop_back();
        facets.push_back(make_halfspace(std::move(ray), std::move(offset)));
    }
    std::sort(facets.begin(), facets.end(), halfspace_less);
    return facets;
}

/// Complete vertex list of the (bounded) intersection of the halfspaces,
/// sorted lexicographically. Throws UnboundedPolyhedron when the system
/// admits a recession direction or a line.
inline std::vector<RationalVector> vertices_from_facets(const std::vector<HalfSpace>& facets) {
    if (facets.empty()) throw std::invalid_argument("vertex enumeration of an empty system");
    const std::size_t dim = facets[0].normal.size();
    for (const HalfSpace& h : facets)
        if (h.normal.size() != dim) throw std::invalid_argument("halfspaces have inconsistent dimensions");

    // Homogenize: x in P  <->  (x, 1) in { (x,t) : n.x - o t <= 0, t >= 0 }.
    std::vector<RationalVector> rows;
    rows.reserve(facets.size() + 1);
    for (const HalfSpace& h : facets) {
        RationalVector row = h.normal;
        row.push_back(-h.offset);
        rows.push_back(std::move(row));
    }
    RationalVector t_row(dim + 1, Rational(0));
    t_row[dim] = -1;
    rows.push_back(std::move(t_row));

    if (detail::matrix_rank(rows) < dim + 1) throw UnboundedPolyhedron();

    std::vector<RationalVector> rays = detail::cone_extreme_rays(rows, dim + 1);
    std::vector<RationalVector> vertices;
    for (RationalVector& ray : rays) {
        const Rational t = ray.back();
        if (t == 0) throw UnboundedPolyhedron();
        RationalVector vertex(dim);
        for (std::size_t k = 0; k < dim; ++k) vertex[k] = ray[k] / t;
        vertices.push_back(std::move(vertex));
    }
    std::sort(vertices.begin(), vertices.end(), detail::lex_less);
    return vertices;
}

/// Vertex and halfspace representations of the same polytope.
struct Polytope {
    std::vector<RationalVector> vertices;
    std::vector<HalfSpace> facets;

    static Polytope from_vertices(std::vector<RationalVector> vertices) {
        Polytope p;
        p.facets = facets_from_vertices(vertices);
        p.vertices = std::move(vertices);
        std::sort(p.vertices.begin(), p.vertices.end(), detail::lex_less);
        return p;
    }

    static Polytope from_facets(std::vector<HalfSpace> facets) {
        Polytope p;
        p.vertices = vertices_from_facets(facets);
        p.facets = std::move(facets);
        std::sort(p.facets.begin(), p.facets.end(), halfspace_less);
        return p;
    }
};

/// Maximum of the functional over all assignments, or over the
/// noncontextual assignments only.
inline int maximize_functional(const Scenario& s, bool restrict_noncontextual) {
    const std::uint64_t total = assignment_count(s);
    bool found = false;
    int best = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Assignment a = assignment_from_index(s, i);
        if (restrict_noncontextual && !is_noncontextual(s, a)) continue;
        const int value = functional_value(s, a);
        if (!found || value > best) {
            best = value;
            found = true;
        }
    }
    if (!found) throw std::logic_error("no assignments to maximize over");
    return best;
}

/// Substitutes zero for every coordinate except `keep` in each facet and
/// returns the distinct nontrivial one-dimensional constraints that remain.
inline std::vector<HalfSpace> restrict_facets_to_coordinate(const std::vector<HalfSpace>& facets,
                                                            std::size_t keep) {
    std::vector<HalfSpace> reduced;
    for (const HalfSpace& h : facets) {
        if (h.normal[keep] == 0) continue;
        HalfSpace r = make_halfspace({h.normal[keep]}, h.offset);
        bool present = false;
        for (const HalfSpace& existing : reduced)
            if (existing == r) present = true;
        if (!present) reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), halfspace_less);
    return reduced;
}

/// H-representation text: a '#' header with dimension and count, then one
/// facet per line as "n_1 ... n_d offset" meaning n.x <= offset.
inline std::string h_repr_text(const std::vector<HalfSpace>& facets) {
    std::ostringstream out;
    const std::size_t dim = facets.empty() ? 0 : facets[0].normal.size();
    out << "# H-representation dim=" << dim << " count=" << facets.size() << "\n";
    for (const HalfSpace& h : facets) {
        for (const Rational& x : h.normal) out << detail::component_string(x) << " ";
        out << detail::component_string(h.offset) << "\n";
    }
    return out.str();
}

/// V-representation text: '#' header, then one vertex per line.
inline std::string v_repr_text(const std::vector<RationalVector>& vertices) {
    std::ostringstream out;
    const std::size_t dim = vertices.empty() ? 0 : vertices[0].size();
    out << "# V-representation dim=" << dim << " count=" << vertices.size() << "\n";
    for (const RationalVector& v : vertices) {
        for (std::size_t k = 0; k < v.size(); ++k)
            out << detail::component_string(v[k]) << (k + 1 == v.size() ? "" : " ");
        out << "\n";
    }
    return out.str();
}

}  // namespace ksctx
