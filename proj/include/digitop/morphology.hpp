#pragma once

// Morphological operators on digital images, both as set operators and as
// multivalued functions. Complement-based formulas are evaluated inside an
// explicit finite window standing in for Z^n.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "digitop/functions.hpp"
#include "digitop/lattice.hpp"

namespace digitop {

/// A finite point set containing the origin; its translates define a
/// generalized dilation.
class StructuringElement {
public:
    StructuringElement(int dimension, PointSet points)
        : dim_(dimension), points_(std::move(points)) {
        Point origin(std::vector<int>(static_cast<std::size_t>(dimension), 0));
        if (!points_.count(origin))
            throw std::invalid_argument("StructuringElement: origin not contained");
        for (const Point& p : points_)
            if (p.dim() != dimension)
                throw std::invalid_argument("StructuringElement: point " + to_string(p) +
                                            " does not match dimension " + std::to_string(dimension));
    }

    int dim() const { return dim_; }
    const PointSet& points() const { return points_; }

private:
    int dim_;
    PointSet points_;
};

/// An axis-aligned box [lo, hi] in Z^n, the finite stand-in for Z^n in
/// complement-based formulas.
class Window {
public:
    Window(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_.dim() != hi_.dim())
            throw std::invalid_argument("Window: corner dimensions differ");
        for (int i = 0; i < lo_.dim(); ++i)
            if (lo_[i] > hi_[i])
                throw std::invalid_argument("Window: lo exceeds hi in coordinate " +
                                            std::to_string(i));
    }

    int dim() const { return lo_.dim(); }
    const Point& lo() const { return lo_; }
    const Point& hi() const { return hi_; }

    bool contains(const Point& p) const {
        if (p.dim() != dim()) return false;
        for (int i = 0; i < dim(); ++i)
            if (p[i] < lo_[i] || p[i] > hi_[i]) return false;
        return true;
    }

    PointSet points() const {
        PointSet out;
        Point cur = lo_;
        for (;;) {
            out.insert(cur);
            int i = dim() - 1;
            while (i >= 0 && cur[i] == hi_[i]) {
                cur.xs[static_cast<std::size_t>(i)] = lo_[i];
                --i;
            }
            if (i < 0) break;
            ++cur.xs[static_cast<std::size_t>(i)];
        }
        return out;
    }

    Window inflated(int cells) const {
        Point lo = lo_, hi = hi_;
        for (int i = 0; i < dim(); ++i) {
            lo.xs[static_cast<std::size_t>(i)] -= cells;
            hi.xs[static_cast<std::size_t>(i)] += cells;
        }
        return Window(lo, hi);
    }

    /// Bounding box of X inflated by margin cells per axis. An empty image
    /// yields the margin-sized box around the origin.
    static Window bounding(const DigitalImage& X, int margin = 2) {
        const int n = X.dim();
        Point lo(std::vector<int>(static_cast<std::size_t>(n), 0));
        Point hi(std::vector<int>(static_cast<std::size_t>(n), 0));
        bool first = true;
        for (const Point& p : X.points()) {
            if (first) {
                lo = hi = p;
                first = false;
                continue;
            }
            for (int i = 0; i < n; ++i) {
                lo.xs[static_cast<std::size_t>(i)] = std::min(lo[i], p[i]);
                hi.xs[static_cast<std::size_t>(i)] = std::max(hi[i], p[i]);
            }
        }
        return Window(lo, hi).inflated(margin);
    }

private:
    Point lo_;
    Point hi_;
};

/// D_kappa(X): the union of closed neighborhoods of the points of X.
inline DigitalImage dilate(const DigitalImage& X) {
    PointSet out;
    for (const Point& p : X.points()) {
        PointSet star = closed_neighborhood(p, X.adjacency());
        out.insert(star.begin(), star.end());
    }
    return DigitalImage(X.adjacency(), std::move(out));
}

/// Dilation as a multivalued function: each point maps to its closed
/// neighborhood.
inline MultiFn dilate_multifn(const DigitalImage& X) {
    std::map<Point, PointSet> table;
    for (const Point& p : X.points()) table.emplace(p, closed_neighborhood(p, X.adjacency()));
    return MultiFn(X, dilate(X), std::move(table));
}

namespace detail {

inline Point translated(const Point& x, const Point& b) {
    Point out = x;
    for (int i = 0; i < x.dim(); ++i) out.xs[static_cast<std::size_t>(i)] += b[i];
    return out;
}

}  // namespace detail

/// D_B(X): the union of translates of B over the points of X.
inline DigitalImage dilate_by(const DigitalImage& X, const StructuringElement& B) {
    if (B.dim() != X.dim())
        throw std::invalid_argument("dilate_by: structuring element dimension mismatch");
    PointSet out;
    for (const Point& x : X.points())
        for (const Point& b : B.points()) out.insert(detail::translated(x, b));
    return DigitalImage(X.adjacency(), std::move(out));
}

/// Generalized dilation as a multivalued function: x maps to the translate
/// of B at x.
inline MultiFn dilate_by_multifn(const DigitalImage& X, const StructuringElement& B) {
    if (B.dim() != X.dim())
        throw std::invalid_argument("dilate_by_multifn: structuring element dimension mismatch");
    std::map<Point, PointSet> table;
    for (const Point& x : X.points()) {
        PointSet tx;
        for (const Point& b : B.points()) tx.insert(detail::translated(x, b));
        table.emplace(x, std::move(tx));
    }
    return MultiFn(X, dilate_by(X, B), std::move(table));
}

/// E_kappa(X): the points whose closed neighborhood lies inside X. This is
/// the finite equivalent of complementing the dilation of the complement;
/// the equality is a tested property.
inline DigitalImage erode(const DigitalImage& X) {
    PointSet out;
    for (const Point& p : X.points()) {
        bool inside = true;
        for (const Point& q : neighborhood(p, X.adjacency())) {
            if (!X.contains(q)) {
                inside = false;
                break;
            }
        }
        if (inside) out.insert(p);
    }
    return DigitalImage(X.adjacency(), std::move(out));
}

/// Erosion modeled on the white pixels: the multivalued function on W\X
/// sending each white point to its closed neighborhood. Its image is the
/// complement of the erosion.
inline MultiFn erosion_complement_multifn(const DigitalImage& X, const Window& W) {
    if (W.dim() != X.dim())
        throw std::invalid_argument("erosion_complement_multifn: window dimension mismatch");
    for (const Point& p : X.points())
        if (!W.contains(p))
            throw std::invalid_argument("erosion_complement_multifn: image point " + to_string(p) +
                                        " lies outside the window");
    PointSet white;
    for (const Point& p : W.points())
        if (!X.contains(p)) white.insert(p);
    DigitalImage whites(X.adjacency(), std::move(white));
    std::map<Point, PointSet> table;
    for (const Point& p : whites.points())
        table.emplace(p, closed_neighborhood(p, X.adjacency()));
    return MultiFn(whites, dilate(whites), std::move(table));
}

/// C_kappa(X): erosion of the dilation.
inline DigitalImage close(const DigitalImage& X) {
    return erode(dilate(X));
}

/// The closure operator as a multivalued function: interior points stay
/// fixed, boundary points map to their closed neighborhood clipped to the
/// closure.
inline MultiFn closure_multifn(const DigitalImage& X) {
    DigitalImage closed = close(X);
    PointSet delta = boundary(X);
    std::map<Point, PointSet> table;
    for (const Point& x : X.points()) {
        if (!delta.count(x)) {
            table.emplace(x, PointSet{x});
            continue;
        }
        PointSet vals;
        for (const Point& q : closed_neighborhood(x, X.adjacency()))
            if (closed.contains(q)) vals.insert(q);
        table.emplace(x, std::move(vals));
    }
    return MultiFn(X, closed, std::move(table));
}

/// The opening of X: the closure applied to the complement, evaluated inside
/// the window and clipped to it. Requires the dilation of X to fit in W with
/// a one-cell margin; equals dilate(erode(X)) (a tested identity).
inline DigitalImage open_image(const DigitalImage& X, const Window& W) {
    if (W.dim() != X.dim())
        throw std::invalid_argument("open_image: window dimension mismatch");
    DigitalImage dil = dilate(X);
    for (const Point& p : dil.points()) {
        bool deep = W.contains(p);
        if (deep)
            for (int i = 0; i < W.dim(); ++i)
                if (p[i] < W.lo()[i] + 1 || p[i] > W.hi()[i] - 1) deep = false;
        if (!deep)
            throw std::invalid_argument("open_image: window too small, dilation reaches " +
                                        to_string(p));
    }
    Window wide = W.inflated(1);
    PointSet white;
    for (const Point& p : wide.points())
        if (!X.contains(p)) white.insert(p);
    DigitalImage closed_white = close(DigitalImage(X.adjacency(), std::move(white)));
    PointSet out;
    for (const Point& p : W.points())
        if (!closed_white.contains(p)) out.insert(p);
    return DigitalImage(X.adjacency(), std::move(out));
}

/// The opening modeled on the white pixels: the closure multivalued function
/// of W\X. The white set must be nonempty.
inline MultiFn opening_complement_multifn(const DigitalImage& X, const Window& W) {
    if (W.dim() != X.dim())
        throw std::invalid_argument("opening_complement_multifn: window dimension mismatch");
    for (const Point& p : X.points())
        if (!W.contains(p))
            throw std::invalid_argument("opening_complement_multifn: image point " + to_string(p) +
                                        " lies outside the window");
    PointSet white;
    for (const Point& p : W.points())
        if (!X.contains(p)) white.insert(p);
    if (white.empty())
        throw std::invalid_argument("opening_complement_multifn: no white pixels in the window");
    return closure_multifn(DigitalImage(X.adjacency(), std::move(white)));
}

}  // namespace digitop
