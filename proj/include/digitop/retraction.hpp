#pragma once

// Connectivity preserving multivalued retractions, simple points of 2D
// images, the continuous-retract dichotomy, and shy maps.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "digitop/functions.hpp"
#include "digitop/lattice.hpp"

namespace digitop {

/// Raised when no connectivity preserving multivalued retraction onto the
/// requested subset exists.
struct NoSuchRetraction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// True iff F maps X into A and fixes every point of A with a singleton
/// image.
inline bool is_multivalued_retraction(const MultiFn& F, const DigitalImage& X,
                                      const PointSet& A) {
    if (F.domain().points() != X.points() || F.domain().adjacency() != X.adjacency())
        throw std::invalid_argument("is_multivalued_retraction: F is not a function on X");
    for (const Point& a : A)
        if (!X.contains(a))
            throw std::invalid_argument("is_multivalued_retraction: target point " + to_string(a) +
                                        " is outside X");
    for (const auto& [x, ys] : F.table())
        for (const Point& y : ys)
            if (!A.count(y)) return false;
    for (const Point& a : A)
        if (F(a) != PointSet{a}) return false;
    return true;
}

/// The canonical connectivity preserving retraction of a connected X onto a
/// connected nonempty A: identity on A, constantly A off it. Throws
/// NoSuchRetraction when A is disconnected, since no connectivity preserving
/// multivalued retraction onto a disconnected subset exists.
inline MultiFn build_cp_retraction(const DigitalImage& X, const PointSet& A) {
    if (A.empty()) throw std::invalid_argument("build_cp_retraction: target set is empty");
    for (const Point& a : A)
        if (!X.contains(a))
            throw std::invalid_argument("build_cp_retraction: target point " + to_string(a) +
                                        " is outside X");
    if (!is_connected(X.points(), X.adjacency()))
        throw std::invalid_argument("build_cp_retraction: X is not connected");
    if (!is_connected(A, X.adjacency()))
        throw NoSuchRetraction("no connectivity preserving retraction onto a disconnected target");
    DigitalImage target(X.adjacency(), A);
    std::map<Point, PointSet> table;
    for (const Point& x : X.points()) {
        if (A.count(x))
            table.emplace(x, PointSet{x});
        else
            table.emplace(x, A);
    }
    return MultiFn(X, std::move(target), std::move(table));
}

namespace detail {

inline void require_plane(const Point& p, const DigitalImage& X, int k, const char* where) {
    if (X.dim() != 2)
        throw std::invalid_argument(std::string(where) + ": image must live in Z^2");
    if (k != 4 && k != 8)
        throw std::invalid_argument(std::string(where) + ": k must be 4 or 8");
    if (!X.contains(p))
        throw std::invalid_argument(std::string(where) + ": " + to_string(p) + " is not in X");
}

}  // namespace detail

/// p is a k-boundary point of X iff its kbar-neighborhood leaves X, where
/// {k, kbar} = {4, 8}.
inline bool is_k_boundary_point(const Point& p, const DigitalImage& X, int k) {
    detail::require_plane(p, X, k, "is_k_boundary_point");
    Adjacency kbar = Adjacency::from_neighbor_count(12 - k);
    for (const Point& q : neighborhood(p, kbar))
        if (!X.contains(q)) return true;
    return false;
}

/// Rosenfeld's characterization: p is k-simple iff p is a k-boundary point
/// and exactly one k-component of N_8(p) inside X is k-adjacent to p.
inline bool is_simple_point(const Point& p, const DigitalImage& X, int k) {
    detail::require_plane(p, X, k, "is_simple_point");
    if (!is_k_boundary_point(p, X, k)) return false;
    Adjacency eight(2, 2);
    Adjacency adj_k = Adjacency::from_neighbor_count(k);
    PointSet ring;
    for (const Point& q : neighborhood(p, eight))
        if (X.contains(q)) ring.insert(q);
    int touching = 0;
    for (const PointSet& comp : connected_components(ring, adj_k))
        if (sets_adjacent(PointSet{p}, comp, adj_k)) ++touching;
    return touching == 1;
}

/// Verdict on retracting X onto X minus a point.
struct RetractVerdict {
    enum class Kind {
        CpRetract,                    // a cp multivalued retraction exists (witness attached)
        NoCpRetract,                  // no cp multivalued retraction exists
        ContinuousRetractPossible,    // the deleted point is simple
        ContinuousRetractImpossible,  // the deleted point is not simple
    };

    Kind kind;
    bool cp_retract = false;  // whether the target is a cp multivalued retract
    std::optional<MultiFn> witness;
    std::string reason;
};

/// For (X,8) in Z^2 and p in X: whether X\{p} can be a continuous
/// multivalued retract of X (iff p is a simple point), alongside whether it
/// is a connectivity preserving multivalued retract (iff X\{p} is
/// connected).
inline RetractVerdict continuous_retract_verdict(const DigitalImage& X, const Point& p) {
    if (X.dim() != 2 || X.adjacency().u() != 2)
        throw std::invalid_argument("continuous_retract_verdict: requires 8-adjacency in Z^2");
    if (!X.contains(p))
        throw std::invalid_argument("continuous_retract_verdict: " + to_string(p) +
                                    " is not in X");
    if (!is_connected(X.points(), X.adjacency()))
        throw std::invalid_argument("continuous_retract_verdict: X is not connected");
    if (X.size() < 2)
        throw std::invalid_argument("continuous_retract_verdict: no retract target left after "
                                    "deleting the only point");

    PointSet rest = X.points();
    rest.erase(p);
    RetractVerdict v;
    v.cp_retract = is_connected(rest, X.adjacency());
    if (v.cp_retract) v.witness = build_cp_retraction(X, rest);
    if (is_simple_point(p, X, 8)) {
        v.kind = RetractVerdict::Kind::ContinuousRetractPossible;
        v.reason = to_string(p) + " is a simple point of X";
    } else {
        v.kind = RetractVerdict::Kind::ContinuousRetractImpossible;
        v.reason = to_string(p) + " is not a simple point of X";
    }
    return v;
}

/// Raised by is_shy when the map fails its continuity precondition.
struct NotContinuousError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised by is_shy when the map fails its surjectivity precondition.
struct NotSurjectiveError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Shyness of a continuous surjection: every point-fiber is connected and
/// the fiber of every adjacent codomain pair is connected.
inline Verdict is_shy(const SingleFn& f) {
    if (Verdict c = is_continuous_single(f); !c)
        throw NotContinuousError("is_shy: map is not continuous: " + c.witness);
    std::map<Point, PointSet> fibers;
    for (const Point& y : f.codomain().points()) fibers.emplace(y, PointSet{});
    for (const auto& [x, y] : f.table()) fibers[y].insert(x);
    for (const auto& [y, xs] : fibers)
        if (xs.empty())
            throw NotSurjectiveError("is_shy: map is not surjective, fiber of " + to_string(y) +
                                     " is empty");

    const Adjacency& kap = f.domain().adjacency();
    for (const auto& [y, xs] : fibers)
        if (!is_connected(xs, kap))
            return Verdict::fail("fiber of " + to_string(y) + " is disconnected");
    Verdict v = Verdict::ok();
    detail::for_adjacent_pairs(f.codomain(), [&](const Point& y0, const Point& y1) {
        PointSet both = fibers.at(y0);
        const PointSet& other = fibers.at(y1);
        both.insert(other.begin(), other.end());
        if (!is_connected(both, kap)) {
            v = Verdict::fail("fiber of adjacent pair " + to_string(y0) + ", " + to_string(y1) +
                              " is disconnected");
            return false;
        }
        return true;
    });
    return v;
}

}  // namespace digitop
