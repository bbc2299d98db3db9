#pragma once

// Line-oriented text formats for digital images (.dimg) and multivalued
// maps (.dmap), with byte-exact round trips for canonically ordered input.

#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "digitop/functions.hpp"
#include "digitop/lattice.hpp"

namespace digitop {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_number, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
};

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline int parse_int(const std::string& tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    return value;
}

inline Point parse_coords(const std::vector<std::string>& toks, std::size_t first,
                          std::size_t count, int dim, int line) {
    if (count != static_cast<std::size_t>(dim))
        throw ParseError(line, "expected " + std::to_string(dim) + " coordinates, got " +
                                   std::to_string(count));
    std::vector<int> xs;
    xs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) xs.push_back(parse_int(toks[first + i], line));
    return Point(std::move(xs));
}

}  // namespace detail

/// Parses the dimg format: `dimg 1`, `dim <n>`, `adj <u>`, then one
/// `point <x1> ... <xn>` line per point.
inline DigitalImage parse_image(const std::string& text) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || detail::tokens(lines[0]) != std::vector<std::string>{"dimg", "1"})
        throw ParseError(1, "expected magic 'dimg 1'");
    if (lines.size() < 2) throw ParseError(2, "missing 'dim <n>' line");
    auto dim_toks = detail::tokens(lines[1]);
    if (dim_toks.size() != 2 || dim_toks[0] != "dim")
        throw ParseError(2, "expected 'dim <n>'");
    int n = detail::parse_int(dim_toks[1], 2);
    if (n < 1) throw ParseError(2, "dimension must be positive");
    if (lines.size() < 3) throw ParseError(3, "missing 'adj <u>' line");
    auto adj_toks = detail::tokens(lines[2]);
    if (adj_toks.size() != 2 || adj_toks[0] != "adj")
        throw ParseError(3, "expected 'adj <u>'");
    int u = detail::parse_int(adj_toks[1], 3);
    if (u < 1 || u > n)
        throw ParseError(3, "adjacency u=" + std::to_string(u) + " is out of range for dimension " +
                                std::to_string(n));

    PointSet pts;
    for (std::size_t k = 3; k < lines.size(); ++k) {
        int line = static_cast<int>(k) + 1;
        auto toks = detail::tokens(lines[k]);
        if (toks.empty()) continue;
        if (toks[0] != "point") throw ParseError(line, "expected a 'point' line");
        Point p = detail::parse_coords(toks, 1, toks.size() - 1, n, line);
        if (!pts.insert(p).second)
            throw ParseError(line, "duplicate point " + to_string(p));
    }
    return DigitalImage(Adjacency(n, u), std::move(pts));
}

/// Writes the canonical dimg form: points in lexicographic order.
inline std::string write_image(const DigitalImage& X) {
    std::ostringstream os;
    os << "dimg 1\n";
    os << "dim " << X.dim() << '\n';
    os << "adj " << X.adjacency().u() << '\n';
    for (const Point& p : X.points()) {
        os << "point";
        for (int i = 0; i < p.dim(); ++i) os << ' ' << p[i];
        os << '\n';
    }
    return os.str();
}

/// Parses the dmap format against already-parsed domain and codomain images:
/// `dmap 1`, then one `map <x...> -> <y...> ; <y...> ; ...` line per domain
/// point.
inline MultiFn parse_map(const std::string& text, const DigitalImage& dom,
                         const DigitalImage& cod) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || detail::tokens(lines[0]) != std::vector<std::string>{"dmap", "1"})
        throw ParseError(1, "expected magic 'dmap 1'");

    std::map<Point, PointSet> table;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        int line = static_cast<int>(k) + 1;
        auto toks = detail::tokens(lines[k]);
        if (toks.empty()) continue;
        if (toks[0] != "map") throw ParseError(line, "expected a 'map' line");
        std::size_t arrow = 0;
        for (std::size_t i = 1; i < toks.size(); ++i)
            if (toks[i] == "->") {
                arrow = i;
                break;
            }
        if (arrow == 0) throw ParseError(line, "missing '->'");
        Point x = detail::parse_coords(toks, 1, arrow - 1, dom.dim(), line);
        if (!dom.contains(x))
            throw ParseError(line, "stray point " + to_string(x) + " is not in the domain");
        if (table.count(x))
            throw ParseError(line, "duplicate map line for " + to_string(x));

        PointSet values;
        std::vector<std::string> group;
        auto flush = [&]() {
            if (group.empty()) throw ParseError(line, "empty value between separators");
            Point y = detail::parse_coords(group, 0, group.size(), cod.dim(), line);
            if (!cod.contains(y))
                throw ParseError(line, "value " + to_string(y) + " is outside the codomain");
            values.insert(std::move(y));
            group.clear();
        };
        for (std::size_t i = arrow + 1; i < toks.size(); ++i) {
            if (toks[i] == ";")
                flush();
            else
                group.push_back(toks[i]);
        }
        if (group.empty() && values.empty()) throw ParseError(line, "empty value list");
        if (!group.empty()) flush();
        table.emplace(std::move(x), std::move(values));
    }
    for (const Point& x : dom.points())
        if (!table.count(x))
            throw ParseError(static_cast<int>(lines.size()),
                             "map is not total: no line for " + to_string(x));
    return MultiFn(dom, cod, std::move(table));
}

/// Writes the canonical dmap form: domain points in lexicographic order,
/// value tuples in lexicographic order separated by ' ; '.
inline std::string write_map(const MultiFn& F) {
    std::ostringstream os;
    os << "dmap 1\n";
    for (const auto& [x, ys] : F.table()) {
        os << "map";
        for (int i = 0; i < x.dim(); ++i) os << ' ' << x[i];
        os << " ->";
        bool first = true;
        for (const Point& y : ys) {
            if (!first) os << " ;";
            for (int i = 0; i < y.dim(); ++i) os << ' ' << y[i];
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace digitop
