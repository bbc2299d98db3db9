#pragma once

// Single- and multivalued functions between digital images, and the
// predicate suite: single-valued continuity, connectivity preservation
// (pairwise and brute-force), weak and strong continuity, composition.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "digitop/lattice.hpp"

namespace digitop {

/// Outcome of a predicate: the boolean is the contract, the witness names
/// the first violation found (empty when the property holds).
struct Verdict {
    bool holds = true;
    std::string witness;

    explicit operator bool() const { return holds; }

    static Verdict ok() { return {}; }
    static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

/// A total single-valued map between digital images.
class SingleFn {
public:
    SingleFn(DigitalImage domain, DigitalImage codomain, std::map<Point, Point> table)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
        if (table_.size() != domain_.size())
            throw std::invalid_argument("SingleFn: table is not total on the domain");
        for (const auto& [x, y] : table_) {
            if (!domain_.contains(x))
                throw std::invalid_argument("SingleFn: " + to_string(x) + " is not a domain point");
            if (!codomain_.contains(y))
                throw std::invalid_argument("SingleFn: value " + to_string(y) + " at " +
                                            to_string(x) + " is outside the codomain");
        }
    }

    const DigitalImage& domain() const { return domain_; }
    const DigitalImage& codomain() const { return codomain_; }
    const std::map<Point, Point>& table() const { return table_; }

    const Point& operator()(const Point& x) const {
        auto it = table_.find(x);
        if (it == table_.end())
            throw std::invalid_argument("SingleFn: " + to_string(x) + " is not a domain point");
        return it->second;
    }

    friend bool operator==(const SingleFn&, const SingleFn&) = default;

private:
    DigitalImage domain_;
    DigitalImage codomain_;
    std::map<Point, Point> table_;
};

/// A total map assigning each domain point a nonempty set of codomain points.
class MultiFn {
public:
    MultiFn(DigitalImage domain, DigitalImage codomain, std::map<Point, PointSet> table)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
        if (table_.size() != domain_.size())
            throw std::invalid_argument("MultiFn: table is not total on the domain");
        for (const auto& [x, ys] : table_) {
            if (!domain_.contains(x))
                throw std::invalid_argument("MultiFn: " + to_string(x) + " is not a domain point");
            if (ys.empty())
                throw std::invalid_argument("MultiFn: empty image at " + to_string(x));
            for (const Point& y : ys)
                if (!codomain_.contains(y))
                    throw std::invalid_argument("MultiFn: value " + to_string(y) + " at " +
                                                to_string(x) + " is outside the codomain");
        }
    }

    const DigitalImage& domain() const { return domain_; }
    const DigitalImage& codomain() const { return codomain_; }
    const std::map<Point, PointSet>& table() const { return table_; }

    const PointSet& operator()(const Point& x) const {
        auto it = table_.find(x);
        if (it == table_.end())
            throw std::invalid_argument("MultiFn: " + to_string(x) + " is not a domain point");
        return it->second;
    }

    friend bool operator==(const MultiFn&, const MultiFn&) = default;

private:
    DigitalImage domain_;
    DigitalImage codomain_;
    std::map<Point, PointSet> table_;
};

/// View a single-valued map as the multivalued map x -> {f(x)}.
inline MultiFn as_multifn(const SingleFn& f) {
    std::map<Point, PointSet> table;
    for (const auto& [x, y] : f.table()) table.emplace(x, PointSet{y});
    return MultiFn(f.domain(), f.codomain(), std::move(table));
}

/// Collapse a multivalued map whose point-images are all singletons.
inline SingleFn as_singlefn(const MultiFn& F) {
    std::map<Point, Point> table;
    for (const auto& [x, ys] : F.table()) {
        if (ys.size() != 1)
            throw std::invalid_argument("as_singlefn: image of " + to_string(x) +
                                        " is not a singleton");
        table.emplace(x, *ys.begin());
    }
    return SingleFn(F.domain(), F.codomain(), std::move(table));
}

/// F(A): the union of F(x) over x in A. Every point of A must lie in the
/// domain.
inline PointSet image_of_set(const MultiFn& F, const PointSet& A) {
    PointSet out;
    for (const Point& x : A) {
        const PointSet& ys = F(x);
        out.insert(ys.begin(), ys.end());
    }
    return out;
}

namespace detail {

// Calls fn(x, q) for every unordered adjacent pair {x, q} of X with x < q,
// in lexicographic order of (x, q). fn returns false to stop early.
template <typename Fn>
void for_adjacent_pairs(const DigitalImage& X, Fn fn) {
    for (const Point& x : X.points()) {
        for (const Point& q : neighborhood(x, X.adjacency())) {
            if (x < q && X.contains(q)) {
                if (!fn(x, q)) return;
            }
        }
    }
}

}  // namespace detail

/// Single-valued continuity: adjacent domain points map to equal or adjacent
/// codomain points.
inline Verdict is_continuous_single(const SingleFn& f) {
    Verdict v = Verdict::ok();
    detail::for_adjacent_pairs(f.domain(), [&](const Point& x, const Point& q) {
        if (!equal_or_adjacent(f(x), f(q), f.codomain().adjacency())) {
            v = Verdict::fail("images of adjacent pair " + to_string(x) + ", " + to_string(q) +
                              " are neither equal nor adjacent");
            return false;
        }
        return true;
    });
    return v;
}

/// Connectivity preservation, by the pairwise characterization: every
/// point-image is connected and images of adjacent points are adjacent sets.
inline Verdict is_connectivity_preserving(const MultiFn& F) {
    const Adjacency& lam = F.codomain().adjacency();
    for (const auto& [x, ys] : F.table()) {
        if (!is_connected(ys, lam))
            return Verdict::fail("point image at " + to_string(x) + " is disconnected");
    }
    Verdict v = Verdict::ok();
    detail::for_adjacent_pairs(F.domain(), [&](const Point& x, const Point& q) {
        if (!sets_adjacent(F(x), F(q), lam)) {
            v = Verdict::fail("images of adjacent pair " + to_string(x) + ", " + to_string(q) +
                              " are not adjacent sets");
            return false;
        }
        return true;
    });
    return v;
}

namespace detail {

// Enumerates every nonempty connected subset of X exactly once, as an index
// bitmask over the points in their canonical order. visit returns false to
// stop. Binary-partition scheme: each candidate is either taken into the
// growing set or excluded from the entire rest of the branch.
template <typename Visit>
bool for_connected_subsets(const std::vector<std::uint32_t>& nbr, Visit visit) {
    const int n = static_cast<int>(nbr.size());
    struct Rec {
        const std::vector<std::uint32_t>& nbr;
        Visit& visit;
        std::uint32_t above;
        bool go(std::uint32_t set, std::uint32_t cand, std::uint32_t excl) {
            if (!visit(set)) return false;
            while (cand) {
                std::uint32_t u = cand & (~cand + 1);  // lowest bit
                cand ^= u;
                int ui = std::countr_zero(u);
                std::uint32_t grown = cand | (nbr[static_cast<std::size_t>(ui)] & above & ~set & ~excl & ~cand);
                if (!go(set | u, grown, excl)) return false;
                excl |= u;
            }
            return true;
        }
    };
    for (int r = 0; r < n; ++r) {
        std::uint32_t root = 1u << r;
        std::uint32_t above = (r + 1 < 32) ? ~((root << 1) - 1) : 0u;
        Rec rec{nbr, visit, above};
        if (!rec.go(root, nbr[static_cast<std::size_t>(r)] & above, 0)) return false;
    }
    return true;
}

}  // namespace detail

/// Literal check of connectivity preservation: F(A) is connected for every
/// connected subset A of the domain, by explicit enumeration. Independent
/// oracle for is_connectivity_preserving; domains above max_domain points
/// are rejected.
inline bool is_cp_bruteforce(const MultiFn& F, std::size_t max_domain = 16) {
    if (F.domain().size() > max_domain)
        throw std::invalid_argument("is_cp_bruteforce: domain exceeds " +
                                    std::to_string(max_domain) + " points");
    std::vector<Point> pts(F.domain().points().begin(), F.domain().points().end());
    const int n = static_cast<int>(pts.size());
    std::vector<std::uint32_t> nbr(pts.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && are_adjacent(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)],
                                       F.domain().adjacency()))
                nbr[static_cast<std::size_t>(i)] |= 1u << j;

    bool all_connected = true;
    detail::for_connected_subsets(nbr, [&](std::uint32_t mask) {
        PointSet image;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                const PointSet& ys = F(pts[static_cast<std::size_t>(i)]);
                image.insert(ys.begin(), ys.end());
            }
        }
        if (!is_connected(image, F.codomain().adjacency())) {
            all_connected = false;
            return false;
        }
        return true;
    });
    return all_connected;
}

/// Weak continuity: images of adjacent points are adjacent sets.
inline Verdict has_weak_continuity(const MultiFn& F) {
    Verdict v = Verdict::ok();
    detail::for_adjacent_pairs(F.domain(), [&](const Point& x, const Point& q) {
        if (!sets_adjacent(F(x), F(q), F.codomain().adjacency())) {
            v = Verdict::fail("images of adjacent pair " + to_string(x) + ", " + to_string(q) +
                              " are not adjacent sets");
            return false;
        }
        return true;
    });
    return v;
}

/// Strong continuity: across every adjacent pair, each point of either image
/// is equal or adjacent to some point of the other image.
inline Verdict has_strong_continuity(const MultiFn& F) {
    const Adjacency& lam = F.codomain().adjacency();
    auto covered = [&](const PointSet& from, const PointSet& to) {
        for (const Point& y : from) {
            bool hit = false;
            for (const Point& z : to) {
                if (equal_or_adjacent(y, z, lam)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) return false;
        }
        return true;
    };
    Verdict v = Verdict::ok();
    detail::for_adjacent_pairs(F.domain(), [&](const Point& x, const Point& q) {
        if (!covered(F(x), F(q)) || !covered(F(q), F(x))) {
            v = Verdict::fail("adjacent pair " + to_string(x) + ", " + to_string(q) +
                              " violates two-sided coverage");
            return false;
        }
        return true;
    });
    return v;
}

/// (g o f)(x) = union of g(y) over y in f(x). f's codomain must sit inside
/// g's domain, with identical ambient dimension and adjacency.
inline MultiFn compose(const MultiFn& g, const MultiFn& f) {
    if (f.codomain().adjacency() != g.domain().adjacency())
        throw std::invalid_argument("compose: adjacency of f's codomain does not match g's domain");
    for (const Point& y : f.codomain().points())
        if (!g.domain().contains(y))
            throw std::invalid_argument("compose: f's codomain point " + to_string(y) +
                                        " is outside g's domain");
    std::map<Point, PointSet> table;
    for (const auto& [x, ys] : f.table()) {
        PointSet out;
        for (const Point& y : ys) {
            const PointSet& zs = g(y);
            out.insert(zs.begin(), zs.end());
        }
        table.emplace(x, std::move(out));
    }
    return MultiFn(f.domain(), g.codomain(), std::move(table));
}

/// The constant multivalued map F(x) = Y for every x.
inline MultiFn constant_multifn(const DigitalImage& X, const DigitalImage& Y) {
    if (Y.empty())
        throw std::invalid_argument("constant_multifn: codomain is empty");
    std::map<Point, PointSet> table;
    for (const Point& x : X.points()) table.emplace(x, Y.points());
    return MultiFn(X, Y, std::move(table));
}

/// The fiber map f^{-1}: Y -> X of a surjective single-valued map.
inline MultiFn inverse_multifn(const SingleFn& f) {
    std::map<Point, PointSet> fibers;
    for (const Point& y : f.codomain().points()) fibers.emplace(y, PointSet{});
    for (const auto& [x, y] : f.table()) fibers[y].insert(x);
    for (const auto& [y, xs] : fibers)
        if (xs.empty())
            throw std::invalid_argument("inverse_multifn: map is not surjective, fiber of " +
                                        to_string(y) + " is empty");
    return MultiFn(f.codomain(), f.domain(), std::move(fibers));
}

}  // namespace digitop
