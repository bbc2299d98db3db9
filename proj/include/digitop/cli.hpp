#pragma once

// Command-line front end over the predicate suite, the morphological
// operators, subdivision, retraction, and the text formats. Exit codes:
// 0 = property holds / operation succeeded, 1 = property fails,
// 2 = usage or parse error, 3 = inconclusive continuity search.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "digitop/digitop.hpp"

namespace digitop::cli {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline DigitalImage load_image(const std::string& path) {
    try {
        return parse_image(read_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline MultiFn load_map(const std::string& path, const DigitalImage& dom,
                        const DigitalImage& cod) {
    try {
        return parse_map(read_file(path), dom, cod);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline ordered_json point_json(const Point& p) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
    return a;
}

inline ordered_json points_json(const PointSet& s) {
    ordered_json a = ordered_json::array();
    for (const Point& p : s) a.push_back(point_json(p));
    return a;
}

inline ordered_json map_json(const MultiFn& F) {
    ordered_json a = ordered_json::array();
    for (const auto& [x, ys] : F.table()) {
        ordered_json entry;
        entry["x"] = point_json(x);
        entry["ys"] = points_json(ys);
        a.push_back(std::move(entry));
    }
    return a;
}

inline Window window_from_flag(const std::vector<int>& flag, const DigitalImage& X) {
    if (flag.empty()) return Window::bounding(X, 2);
    if (flag.size() != 2 * static_cast<std::size_t>(X.dim()))
        throw std::invalid_argument("--window expects " + std::to_string(2 * X.dim()) +
                                    " comma-separated integers (lo..., hi...)");
    std::vector<int> lo(flag.begin(), flag.begin() + X.dim());
    std::vector<int> hi(flag.begin() + X.dim(), flag.end());
    return Window(Point(std::move(lo)), Point(std::move(hi)));
}

}  // namespace detail

/// Runs one CLI invocation (argv without the program name) against the
/// given output and error streams, returning the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"predicates and operators for digital images"};
    app.name("digitop");
    app.require_subcommand(1);

    struct {
        std::string kind, dom, cod, map;
        bool json = false;
    } check;
    CLI::App* check_cmd = app.add_subcommand("check", "evaluate a predicate on a map");
    check_cmd->add_option("kind", check.kind, "one of cp, weak, strong, cont-single, shy")
        ->required()
        ->check(CLI::IsMember({"cp", "weak", "strong", "cont-single", "shy"}));
    check_cmd->add_option("--dom", check.dom, "domain image (.dimg)")->required();
    check_cmd->add_option("--cod", check.cod, "codomain image (.dimg)")->required();
    check_cmd->add_option("--map", check.map, "map file (.dmap)")->required();
    check_cmd->add_flag("--json", check.json, "machine-readable verdict");

    struct {
        std::string dom, cod, map;
        int rmax = 4;
        bool json = false;
    } cont;
    CLI::App* cont_cmd = app.add_subcommand("continuity", "search for an inducing witness");
    cont_cmd->add_option("--dom", cont.dom)->required();
    cont_cmd->add_option("--cod", cont.cod)->required();
    cont_cmd->add_option("--map", cont.map)->required();
    cont_cmd->add_option("--rmax", cont.rmax, "largest subdivision depth to try")
        ->envname("DIGITOP_RMAX")
        ->check(CLI::PositiveNumber);
    cont_cmd->add_flag("--json", cont.json);

    struct {
        std::string op, in, selem;
        std::vector<int> window;
        bool json = false;
    } morph;
    CLI::App* morph_cmd = app.add_subcommand("morph", "apply a morphological operator");
    morph_cmd->add_option("op", morph.op, "one of dilate, erode, close, open, dilate-by")
        ->required()
        ->check(CLI::IsMember({"dilate", "erode", "close", "open", "dilate-by"}));
    morph_cmd->add_option("--in", morph.in, "input image (.dimg)")->required();
    morph_cmd->add_option("--selem", morph.selem, "structuring element (.dimg, dilate-by only)");
    morph_cmd->add_option("--window", morph.window, "window as lo...,hi... (open only)")
        ->delimiter(',');
    morph_cmd->add_flag("--json", morph.json);

    struct {
        std::string in;
        int r = 1;
        bool json = false;
    } subdiv;
    CLI::App* subdiv_cmd = app.add_subcommand("subdivide", "emit the r-th subdivision");
    subdiv_cmd->add_option("--in", subdiv.in)->required();
    subdiv_cmd->add_option("--r", subdiv.r)->required()->check(CLI::PositiveNumber);
    subdiv_cmd->add_flag("--json", subdiv.json);

    struct {
        std::string in;
        int k = 8;
        std::vector<int> p;
        bool json = false;
    } simple;
    CLI::App* simple_cmd = app.add_subcommand("simple-point", "test a point for simplicity");
    simple_cmd->add_option("--in", simple.in)->required();
    simple_cmd->add_option("--k", simple.k)->required()->check(CLI::IsMember({4, 8}));
    simple_cmd->add_option("--p", simple.p, "point as comma-separated coordinates")
        ->required()
        ->delimiter(',');
    simple_cmd->add_flag("--json", simple.json);

    struct {
        std::string in, target;
        bool json = false;
    } retract;
    CLI::App* retract_cmd = app.add_subcommand("retract", "build a cp multivalued retraction");
    retract_cmd->add_option("--in", retract.in)->required();
    retract_cmd->add_option("--target", retract.target, "target subset (.dimg)")->required();
    retract_cmd->add_flag("--json", retract.json);

    struct {
        std::string dom, mid, cod, f, g;
        bool json = false;
    } comp;
    CLI::App* comp_cmd = app.add_subcommand("compose", "compose two multivalued maps g after f");
    comp_cmd->add_option("--dom", comp.dom, "domain of f (.dimg)")->required();
    comp_cmd->add_option("--mid", comp.mid, "codomain of f = domain of g (.dimg)")->required();
    comp_cmd->add_option("--cod", comp.cod, "codomain of g (.dimg)")->required();
    comp_cmd->add_option("--f", comp.f, "inner map (.dmap)")->required();
    comp_cmd->add_option("--g", comp.g, "outer map (.dmap)")->required();
    comp_cmd->add_flag("--json", comp.json);

    struct {
        std::string in;
        bool json = false;
    } comps, cuts;
    CLI::App* comps_cmd = app.add_subcommand("components", "list connected components");
    comps_cmd->add_option("--in", comps.in)->required();
    comps_cmd->add_flag("--json", comps.json);
    CLI::App* cuts_cmd = app.add_subcommand("cut-points", "list points whose removal disconnects");
    cuts_cmd->add_option("--in", cuts.in)->required();
    cuts_cmd->add_flag("--json", cuts.json);

    struct {
        std::string a, b;
        bool json = false;
    } iso;
    CLI::App* iso_cmd = app.add_subcommand("isomorphic", "test two images for isomorphism");
    iso_cmd->add_option("--a", iso.a)->required();
    iso_cmd->add_option("--b", iso.b)->required();
    iso_cmd->add_flag("--json", iso.json);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "digitop: " << e.what() << '\n';
        return 2;
    }

    try {
        if (check_cmd->parsed()) {
            DigitalImage dom = detail::load_image(check.dom);
            DigitalImage cod = detail::load_image(check.cod);
            MultiFn F = detail::load_map(check.map, dom, cod);
            Verdict v;
            if (check.kind == "cp")
                v = is_connectivity_preserving(F);
            else if (check.kind == "weak")
                v = has_weak_continuity(F);
            else if (check.kind == "strong")
                v = has_strong_continuity(F);
            else if (check.kind == "cont-single")
                v = is_continuous_single(as_singlefn(F));
            else
                v = is_shy(as_singlefn(F));
            if (check.json) {
                ordered_json j;
                j["command"] = "check";
                j["property"] = check.kind;
                j["holds"] = v.holds;
                j["witness"] = v.witness;
                out << j.dump() << '\n';
            } else {
                out << "property: " << check.kind << '\n';
                out << "holds: " << (v.holds ? "true" : "false") << '\n';
                if (!v.holds) out << "witness: " << v.witness << '\n';
            }
            return v.holds ? 0 : 1;
        }

        if (cont_cmd->parsed()) {
            DigitalImage dom = detail::load_image(cont.dom);
            DigitalImage cod = detail::load_image(cont.cod);
            MultiFn F = detail::load_map(cont.map, dom, cod);
            ContinuityVerdict v = decide_continuity(F, cont.rmax);
            const char* name = v.kind == ContinuityVerdict::Kind::ContinuousAt
                                   ? "continuous_at"
                               : v.kind == ContinuityVerdict::Kind::DefinitelyNotContinuous
                                   ? "definitely_not_continuous"
                                   : "not_induced_up_to";
            if (cont.json) {
                ordered_json j;
                j["command"] = "continuity";
                j["verdict"] = name;
                j["r"] = v.kind == ContinuityVerdict::Kind::ContinuousAt ? v.r : 0;
                j["rmax"] = cont.rmax;
                j["reason"] = v.reason;
                out << j.dump() << '\n';
            } else if (v.kind == ContinuityVerdict::Kind::ContinuousAt) {
                out << "continuous_at: " << v.r << '\n';
            } else if (v.kind == ContinuityVerdict::Kind::DefinitelyNotContinuous) {
                out << "verdict: definitely_not_continuous\n";
                out << "reason: " << v.reason << '\n';
            } else {
                out << "verdict: not_induced_up_to\n";
                out << "rmax: " << cont.rmax << '\n';
            }
            switch (v.kind) {
                case ContinuityVerdict::Kind::ContinuousAt: return 0;
                case ContinuityVerdict::Kind::DefinitelyNotContinuous: return 1;
                case ContinuityVerdict::Kind::NotInducedUpTo: return 3;
            }
        }

        if (morph_cmd->parsed()) {
            DigitalImage X = detail::load_image(morph.in);
            std::optional<DigitalImage> result;
            if (morph.op == "dilate") {
                result = dilate(X);
            } else if (morph.op == "erode") {
                result = erode(X);
            } else if (morph.op == "close") {
                result = close(X);
            } else if (morph.op == "open") {
                result = open_image(X, detail::window_from_flag(morph.window, X));
            } else {
                if (morph.selem.empty())
                    throw std::invalid_argument("morph dilate-by requires --selem");
                DigitalImage B = detail::load_image(morph.selem);
                result = dilate_by(X, StructuringElement(B.dim(), B.points()));
            }
            if (morph.json) {
                ordered_json j;
                j["command"] = "morph";
                j["op"] = morph.op;
                j["size"] = result->size();
                j["points"] = detail::points_json(result->points());
                out << j.dump() << '\n';
            } else {
                out << write_image(*result);
            }
            return 0;
        }

        if (subdiv_cmd->parsed()) {
            DigitalImage X = detail::load_image(subdiv.in);
            SubdividedImage S = subdivide(X, subdiv.r);
            if (subdiv.json) {
                ordered_json j;
                j["command"] = "subdivide";
                j["r"] = subdiv.r;
                j["size"] = S.image().size();
                j["points"] = detail::points_json(S.image().points());
                out << j.dump() << '\n';
            } else {
                out << write_image(S.image());
            }
            return 0;
        }

        if (simple_cmd->parsed()) {
            DigitalImage X = detail::load_image(simple.in);
            Point p(simple.p);
            bool verdict = is_simple_point(p, X, simple.k);
            if (simple.json) {
                ordered_json j;
                j["command"] = "simple-point";
                j["k"] = simple.k;
                j["point"] = detail::point_json(p);
                j["simple"] = verdict;
                out << j.dump() << '\n';
            } else {
                out << "simple: " << (verdict ? "true" : "false") << '\n';
            }
            return verdict ? 0 : 1;
        }

        if (retract_cmd->parsed()) {
            DigitalImage X = detail::load_image(retract.in);
            DigitalImage A = detail::load_image(retract.target);
            RetractVerdict v;
            try {
                v.witness = build_cp_retraction(X, A.points());
                v.kind = RetractVerdict::Kind::CpRetract;
            } catch (const NoSuchRetraction& e) {
                v.kind = RetractVerdict::Kind::NoCpRetract;
                v.reason = e.what();
            }
            bool ok = v.kind == RetractVerdict::Kind::CpRetract;
            if (retract.json) {
                ordered_json j;
                j["command"] = "retract";
                j["kind"] = ok ? "cp_retract" : "no_cp_retract";
                j["reason"] = v.reason;
                j["map"] = v.witness ? detail::map_json(*v.witness) : ordered_json::array();
                out << j.dump() << '\n';
            } else if (ok) {
                out << "kind: cp_retract\n" << write_map(*v.witness);
            } else {
                out << "kind: no_cp_retract\n";
                out << "reason: " << v.reason << '\n';
            }
            return ok ? 0 : 1;
        }

        if (comp_cmd->parsed()) {
            DigitalImage dom = detail::load_image(comp.dom);
            DigitalImage mid = detail::load_image(comp.mid);
            DigitalImage cod = detail::load_image(comp.cod);
            MultiFn f = detail::load_map(comp.f, dom, mid);
            MultiFn g = detail::load_map(comp.g, mid, cod);
            MultiFn gf = compose(g, f);
            if (comp.json) {
                ordered_json j;
                j["command"] = "compose";
                j["map"] = detail::map_json(gf);
                out << j.dump() << '\n';
            } else {
                out << write_map(gf);
            }
            return 0;
        }

        if (comps_cmd->parsed()) {
            DigitalImage X = detail::load_image(comps.in);
            auto parts = connected_components(X.points(), X.adjacency());
            if (comps.json) {
                ordered_json j;
                j["command"] = "components";
                j["count"] = parts.size();
                ordered_json arr = ordered_json::array();
                for (const PointSet& c : parts) arr.push_back(detail::points_json(c));
                j["components"] = std::move(arr);
                out << j.dump() << '\n';
            } else {
                out << "count: " << parts.size() << '\n';
                for (std::size_t i = 0; i < parts.size(); ++i)
                    out << "component " << i << ": " << to_string(parts[i]) << '\n';
            }
            return 0;
        }

        if (cuts_cmd->parsed()) {
            DigitalImage X = detail::load_image(cuts.in);
            PointSet cp = cut_points(X);
            if (cuts.json) {
                ordered_json j;
                j["command"] = "cut-points";
                j["count"] = cp.size();
                j["points"] = detail::points_json(cp);
                out << j.dump() << '\n';
            } else {
                out << "count: " << cp.size() << '\n';
                for (const Point& p : cp) {
                    out << "point";
                    for (int i = 0; i < p.dim(); ++i) out << ' ' << p[i];
                    out << '\n';
                }
            }
            return 0;
        }

        if (iso_cmd->parsed()) {
            DigitalImage A = detail::load_image(iso.a);
            DigitalImage B = detail::load_image(iso.b);
            bool verdict = images_isomorphic(A, B);
            if (iso.json) {
                ordered_json j;
                j["command"] = "isomorphic";
                j["isomorphic"] = verdict;
                out << j.dump() << '\n';
            } else {
                out << "isomorphic: " << (verdict ? "true" : "false") << '\n';
            }
            return verdict ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "digitop: " << e.what() << '\n';
        return 2;
    }
    err << "digitop: no subcommand\n";
    return 2;
}

}  // namespace digitop::cli
