#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "digitop/cli.hpp"

using namespace digitop;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) {
    return std::string(DIGITOP_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("check verdicts agree with the library predicates") {
    DigitalImage dom = parse_image(cli::detail::read_file(fx("interval01.dimg")));
    DigitalImage cod = parse_image(cli::detail::read_file(fx("interval02.dimg")));
    for (const char* map : {"split.dmap", "stretch.dmap"}) {
        MultiFn F = parse_map(cli::detail::read_file(fx(map)), dom, cod);
        auto base = std::vector<std::string>{"--dom", fx("interval01.dimg"),
                                             "--cod", fx("interval02.dimg"), "--map", fx(map)};
        auto with = [&](const char* kind) {
            std::vector<std::string> args{"check", kind};
            args.insert(args.end(), base.begin(), base.end());
            return run_cli(args);
        };
        CHECK(with("cp").code == (is_connectivity_preserving(F) ? 0 : 1));
        CHECK(with("weak").code == (has_weak_continuity(F) ? 0 : 1));
        CHECK(with("strong").code == (has_strong_continuity(F) ? 0 : 1));
    }
}

TEST_CASE("single-valued checks run on singleton maps only") {
    CliResult ok = run_cli({"check", "cont-single", "--dom", fx("interval02.dimg"), "--cod",
                            fx("interval01.dimg"), "--map", fx("fold.dmap")});
    CHECK(ok.code == 0);
    CliResult shy = run_cli({"check", "shy", "--dom", fx("interval02.dimg"), "--cod",
                             fx("interval01.dimg"), "--map", fx("fold.dmap")});
    CHECK(shy.code == 0);
    // A genuinely multivalued map is a usage error for these checks.
    CliResult bad = run_cli({"check", "cont-single", "--dom", fx("interval01.dimg"), "--cod",
                             fx("interval02.dimg"), "--map", fx("split.dmap")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("singleton") != std::string::npos);
}

TEST_CASE("continuity exit codes separate the three verdicts") {
    std::vector<std::string> base{"--dom", fx("interval01.dimg"), "--cod", fx("interval02.dimg")};
    CliResult found = run_cli({"continuity", "--map", fx("stretch.dmap"), "--rmax", "2",
                               base[0], base[1], base[2], base[3]});
    CHECK(found.code == 0);
    CHECK(found.out == "continuous_at: 2\n");

    CliResult never = run_cli({"continuity", "--map", fx("split.dmap"),
                               base[0], base[1], base[2], base[3]});
    CHECK(never.code == 1);

    CliResult unknown = run_cli({"continuity", "--map", fx("retract_witness.dmap"), "--rmax", "2",
                                 "--dom", fx("square3.dimg"), "--cod", fx("punctured.dimg")});
    CHECK(unknown.code == 3);
    CHECK(unknown.out.find("not_induced_up_to") != std::string::npos);
}

TEST_CASE("morph subcommands emit canonical images") {
    CliResult empty = run_cli({"morph", "dilate", "--in", fx("empty2.dimg")});
    CHECK(empty.code == 0);
    CHECK(empty.out == "dimg 1\ndim 2\nadj 1\n");

    CliResult opened = run_cli({"morph", "open", "--in", fx("square3.dimg"),
                                "--window=-3,-3,3,3"});
    CHECK(opened.code == 0);
    DigitalImage X = parse_image(cli::detail::read_file(fx("square3.dimg")));
    CHECK(parse_image(opened.out) == open_image(X, Window({-3, -3}, {3, 3})));

    CliResult tiny = run_cli({"morph", "open", "--in", fx("square3.dimg"), "--window=-2,-2,2,2"});
    CHECK(tiny.code == 2);  // dilation touches the rim, no margin left
}

TEST_CASE("subdivide output matches the frozen fixtures") {
    CliResult sx = run_cli({"subdivide", "--r", "2", "--in", fx("fig1_x.dimg")});
    CHECK(sx.code == 0);
    CHECK(sx.out == cli::detail::read_file(fx("fig1_sx.dimg")));
    CliResult sy = run_cli({"subdivide", "--r", "2", "--in", fx("fig1_y.dimg")});
    CHECK(sy.out == cli::detail::read_file(fx("fig1_sy.dimg")));
}

TEST_CASE("retract reproduces the frozen witness map") {
    CliResult r = run_cli({"retract", "--in", fx("square3.dimg"), "--target", fx("punctured.dimg")});
    CHECK(r.code == 0);
    CHECK(r.out == "kind: cp_retract\n" + cli::detail::read_file(fx("retract_witness.dmap")));

    CliResult no = run_cli({"retract", "--in", fx("interval02.dimg"), "--target", fx("fig1_x.dimg")});
    CHECK(no.code == 2);  // target points are not even in X
}

TEST_CASE("simple-point, isomorphic, components, cut-points exit codes") {
    CHECK(run_cli({"simple-point", "--k", "8", "--p=0,0", "--in", fx("square3.dimg")}).code == 1);
    CHECK(run_cli({"simple-point", "--k", "8", "--p=1,1", "--in", fx("square3.dimg")}).code == 0);
    CHECK(run_cli({"isomorphic", "--a", fx("fig1_x.dimg"), "--b", fx("fig1_y.dimg")}).code == 0);
    CHECK(run_cli({"isomorphic", "--a", fx("fig1_sx.dimg"), "--b", fx("fig1_sy.dimg")}).code == 1);
    CHECK(run_cli({"components", "--in", fx("fig1_x.dimg")}).code == 0);
    CHECK(run_cli({"cut-points", "--in", fx("fig1_sx.dimg")}).out ==
          "count: 2\npoint 1 2\npoint 2 1\n");
}

TEST_CASE("compose pipes one map through another") {
    CliResult r = run_cli({"compose", "--dom", fx("interval01.dimg"), "--mid",
                           fx("interval02.dimg"), "--cod", fx("interval01.dimg"), "--f",
                           fx("stretch.dmap"), "--g", fx("fold.dmap")});
    CHECK(r.code == 0);
    CHECK(r.out == "dmap 1\nmap 0 -> 0 ; 1\nmap 1 -> 1\n");
}

TEST_CASE("usage and parse failures exit with 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"check", "cp"}).code == 2);  // missing required flags
    CHECK(run_cli({"check", "nope", "--dom", fx("interval01.dimg"), "--cod",
                   fx("interval02.dimg"), "--map", fx("split.dmap")}).code == 2);
    CHECK(run_cli({"simple-point", "--k", "5", "--p=0,0", "--in", fx("square3.dimg")}).code == 2);
    CHECK(run_cli({"cut-points", "--in", fx("interval01.dimg")}).code == 0);
    CHECK(run_cli({"morph", "dilate", "--in", "/nonexistent.dimg"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("json reports are byte-stable across runs") {
    std::vector<std::vector<std::string>> invocations{
        {"check", "cp", "--dom", fx("interval01.dimg"), "--cod", fx("interval02.dimg"), "--map",
         fx("split.dmap"), "--json"},
        {"continuity", "--dom", fx("interval01.dimg"), "--cod", fx("interval02.dimg"), "--map",
         fx("stretch.dmap"), "--rmax", "2", "--json"},
        {"cut-points", "--in", fx("fig1_sx.dimg"), "--json"},
        {"retract", "--in", fx("square3.dimg"), "--target", fx("punctured.dimg"), "--json"},
        {"simple-point", "--k", "8", "--p=0,0", "--in", fx("square3.dimg"), "--json"},
        {"isomorphic", "--a", fx("fig1_x.dimg"), "--b", fx("fig1_y.dimg"), "--json"},
        {"subdivide", "--r", "2", "--in", fx("fig1_y.dimg"), "--json"},
        {"components", "--in", fx("fig1_sx.dimg"), "--json"},
        {"morph", "close", "--in", fx("square3.dimg"), "--json"},
        {"compose", "--dom", fx("interval01.dimg"), "--mid", fx("interval02.dimg"), "--cod",
         fx("interval01.dimg"), "--f", fx("stretch.dmap"), "--g", fx("fold.dmap"), "--json"},
    };
    for (const auto& args : invocations) {
        CliResult first = run_cli(args);
        CliResult second = run_cli(args);
        CHECK(first.out == second.out);
        CHECK(first.code == second.code);
        CHECK(first.out.back() == '\n');
        CHECK(first.out.find('\n') == first.out.size() - 1);  // one json line
    }
}
