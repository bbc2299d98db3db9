#pragma once

// Points of the integer lattice, c_u-adjacency, digital images as finite
// adjacency graphs, and the connectivity machinery built on them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace digitop {

/// A lattice point: an n-tuple of signed integer coordinates.
struct Point {
    std::vector<int> xs;

    Point() = default;
    Point(std::initializer_list<int> coords) : xs(coords) {}
    explicit Point(std::vector<int> coords) : xs(std::move(coords)) {}

    int dim() const { return static_cast<int>(xs.size()); }
    int operator[](int i) const { return xs[static_cast<std::size_t>(i)]; }

    friend auto operator<=>(const Point&, const Point&) = default;
};

inline std::string to_string(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < p.dim(); ++i) {
        if (i > 0) os << ',';
        os << p[i];
    }
    os << ')';
    return os.str();
}

/// Point sets are kept in canonical lexicographic order.
using PointSet = std::set<Point>;

inline std::string to_string(const PointSet& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const Point& p : s) {
        if (!first) os << ", ";
        os << to_string(p);
        first = false;
    }
    os << '}';
    return os.str();
}

/// The c_u-adjacency on Z^n: two distinct points are adjacent when every
/// coordinate differs by at most 1 and at most u coordinates differ.
class Adjacency {
public:
    Adjacency(int dimension, int u) : dim_(dimension), u_(u) {
        if (dimension < 1)
            throw std::invalid_argument("Adjacency: dimension must be positive");
        if (u < 1 || u > dimension)
            throw std::invalid_argument("Adjacency: u must satisfy 1 <= u <= dimension");
    }

    int dim() const { return dim_; }
    int u() const { return u_; }

    /// Number of lattice neighbors of a point: sum over k=1..u of C(n,k)*2^k.
    /// This is the conventional name of the adjacency (4, 8, 6, 18, 26, ...).
    int neighbor_count() const {
        int total = 0;
        long long binom = 1;  // C(n,k)
        long long pow2 = 1;
        for (int k = 1; k <= u_; ++k) {
            binom = binom * (dim_ - k + 1) / k;
            pow2 *= 2;
            total += static_cast<int>(binom * pow2);
        }
        return total;
    }

    /// Resolve a conventional name (2, 4, 8, 6, 18, 26) to its (n, u) pair.
    static Adjacency from_neighbor_count(int count) {
        switch (count) {
            case 2: return Adjacency(1, 1);
            case 4: return Adjacency(2, 1);
            case 8: return Adjacency(2, 2);
            case 6: return Adjacency(3, 1);
            case 18: return Adjacency(3, 2);
            case 26: return Adjacency(3, 3);
        }
        throw std::invalid_argument("Adjacency: unknown neighbor count " + std::to_string(count));
    }

    friend bool operator==(const Adjacency&, const Adjacency&) = default;

private:
    int dim_;
    int u_;
};

namespace detail {

inline void require_dim(const Point& p, const Adjacency& adj, const char* where) {
    if (p.dim() != adj.dim())
        throw std::invalid_argument(std::string(where) + ": point " + to_string(p) +
                                    " has dimension " + std::to_string(p.dim()) +
                                    ", adjacency expects " + std::to_string(adj.dim()));
}

}  // namespace detail

/// True iff p != q, every coordinate differs by at most 1, and at most u
/// coordinates differ.
inline bool are_adjacent(const Point& p, const Point& q, const Adjacency& adj) {
    detail::require_dim(p, adj, "are_adjacent");
    detail::require_dim(q, adj, "are_adjacent");
    int ones = 0;
    for (int i = 0; i < adj.dim(); ++i) {
        int d = p[i] - q[i];
        if (d < -1 || d > 1) return false;
        if (d != 0) ++ones;
    }
    return ones >= 1 && ones <= adj.u();
}

inline bool equal_or_adjacent(const Point& p, const Point& q, const Adjacency& adj) {
    return p == q || are_adjacent(p, q, adj);
}

/// N_kappa(p): every lattice point adjacent to p, in the ambient lattice
/// (not clipped to any image).
inline PointSet neighborhood(const Point& p, const Adjacency& adj) {
    detail::require_dim(p, adj, "neighborhood");
    const int n = adj.dim();
    PointSet out;
    std::vector<int> offset(static_cast<std::size_t>(n), -1);
    for (;;) {
        int ones = 0;
        for (int v : offset)
            if (v != 0) ++ones;
        if (ones >= 1 && ones <= adj.u()) {
            Point q = p;
            for (int i = 0; i < n; ++i) q.xs[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
            out.insert(std::move(q));
        }
        int i = n - 1;
        while (i >= 0 && offset[static_cast<std::size_t>(i)] == 1) offset[static_cast<std::size_t>(i--)] = -1;
        if (i < 0) break;
        ++offset[static_cast<std::size_t>(i)];
    }
    return out;
}

/// N*_kappa(p) = N_kappa(p) together with p itself.
inline PointSet closed_neighborhood(const Point& p, const Adjacency& adj) {
    PointSet out = neighborhood(p, adj);
    out.insert(p);
    return out;
}

/// A finite set of lattice points carrying its own adjacency relation.
class DigitalImage {
public:
    DigitalImage(Adjacency adj, PointSet points)
        : adj_(adj), points_(std::move(points)) {
        for (const Point& p : points_)
            if (p.dim() != adj_.dim())
                throw std::invalid_argument("DigitalImage: point " + to_string(p) +
                                            " does not match dimension " +
                                            std::to_string(adj_.dim()));
    }

    int dim() const { return adj_.dim(); }
    const Adjacency& adjacency() const { return adj_; }
    const PointSet& points() const { return points_; }
    bool contains(const Point& p) const { return points_.count(p) > 0; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    friend bool operator==(const DigitalImage&, const DigitalImage&) = default;

private:
    Adjacency adj_;
    PointSet points_;
};

/// delta_kappa(X): the points of X with at least one lattice neighbor
/// outside X.
inline PointSet boundary(const DigitalImage& X) {
    PointSet out;
    for (const Point& p : X.points()) {
        for (const Point& q : neighborhood(p, X.adjacency())) {
            if (!X.contains(q)) {
                out.insert(p);
                break;
            }
        }
    }
    return out;
}

/// True iff every pair of points in S is joined by a path of adjacent points
/// inside S. The empty set and singletons are connected.
inline bool is_connected(const PointSet& S, const Adjacency& adj) {
    if (S.size() <= 1) return true;
    PointSet seen;
    std::vector<Point> stack{*S.begin()};
    seen.insert(*S.begin());
    while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        for (const Point& q : neighborhood(p, adj)) {
            if (S.count(q) && !seen.count(q)) {
                seen.insert(q);
                stack.push_back(q);
            }
        }
    }
    return seen.size() == S.size();
}

/// Partition of S into maximal connected subsets, in lexicographic order of
/// each component's minimal element.
inline std::vector<PointSet> connected_components(const PointSet& S, const Adjacency& adj) {
    std::vector<PointSet> comps;
    PointSet seen;
    for (const Point& root : S) {
        if (seen.count(root)) continue;
        PointSet comp{root};
        seen.insert(root);
        std::vector<Point> stack{root};
        while (!stack.empty()) {
            Point p = stack.back();
            stack.pop_back();
            for (const Point& q : neighborhood(p, adj)) {
                if (S.count(q) && !seen.count(q)) {
                    seen.insert(q);
                    comp.insert(q);
                    stack.push_back(q);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

/// True iff some a in A and b in B are equal or adjacent. Sets with nonempty
/// intersection are automatically adjacent; an empty set is adjacent to
/// nothing.
inline bool sets_adjacent(const PointSet& A, const PointSet& B, const Adjacency& adj) {
    if (A.empty() || B.empty()) return false;
    // Walk the smaller set's closed neighborhoods against the larger set.
    const PointSet& small = A.size() <= B.size() ? A : B;
    const PointSet& large = A.size() <= B.size() ? B : A;
    for (const Point& a : small) {
        if (large.count(a)) return true;
        for (const Point& q : neighborhood(a, adj))
            if (large.count(q)) return true;
    }
    return false;
}

/// The points whose removal disconnects X. Requires X nonempty and connected.
inline PointSet cut_points(const DigitalImage& X) {
    if (X.empty())
        throw std::invalid_argument("cut_points: image is empty");
    if (!is_connected(X.points(), X.adjacency()))
        throw std::invalid_argument("cut_points: image is not connected");
    PointSet out;
    for (const Point& p : X.points()) {
        PointSet rest = X.points();
        rest.erase(p);
        if (!is_connected(rest, X.adjacency())) out.insert(p);
    }
    return out;
}

}  // namespace digitop
