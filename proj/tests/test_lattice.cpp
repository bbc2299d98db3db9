#include <catch2/catch_amalgamated.hpp>

#include "digitop/lattice.hpp"
#include "support/gen.hpp"

using namespace digitop;

TEST_CASE("c_u adjacency on the plane") {
    Adjacency four(2, 1), eight(2, 2);
    CHECK_FALSE(are_adjacent({0, 0}, {1, 1}, four));
    CHECK(are_adjacent({0, 0}, {1, 1}, eight));
    CHECK(are_adjacent({0, 0}, {1, 0}, four));
    CHECK_FALSE(are_adjacent({0, 0}, {0, 0}, four));
    CHECK_FALSE(are_adjacent({0, 0}, {2, 0}, eight));
    CHECK_THROWS_AS(are_adjacent({0, 0}, {0, 0, 0}, four), std::invalid_argument);
}

TEST_CASE("adjacency construction and named aliases") {
    CHECK_THROWS_AS(Adjacency(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(Adjacency(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Adjacency(0, 1), std::invalid_argument);

    CHECK(Adjacency::from_neighbor_count(2) == Adjacency(1, 1));
    CHECK(Adjacency::from_neighbor_count(4) == Adjacency(2, 1));
    CHECK(Adjacency::from_neighbor_count(8) == Adjacency(2, 2));
    CHECK(Adjacency::from_neighbor_count(6) == Adjacency(3, 1));
    CHECK(Adjacency::from_neighbor_count(18) == Adjacency(3, 2));
    CHECK(Adjacency::from_neighbor_count(26) == Adjacency(3, 3));
    CHECK_THROWS_AS(Adjacency::from_neighbor_count(5), std::invalid_argument);
}

TEST_CASE("neighborhoods") {
    Adjacency four(2, 1), eight(2, 2);
    CHECK(neighborhood({0, 0}, four) == PointSet{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(neighborhood({0, 0}, eight).size() == 8);
    CHECK(neighborhood({0, 0, 0}, Adjacency(3, 2)).size() == 18);

    CHECK(closed_neighborhood({0, 0}, four).size() == 5);
    CHECK(closed_neighborhood({0, 0}, eight).size() == 9);
    CHECK(closed_neighborhood({5}, Adjacency(1, 1)) == PointSet{{4}, {5}, {6}});
}

TEST_CASE("neighborhood sizes match the c_u counting formula for n <= 3") {
    for (int n = 1; n <= 3; ++n) {
        for (int u = 1; u <= n; ++u) {
            Adjacency adj(n, u);
            Point origin(std::vector<int>(static_cast<std::size_t>(n), 0));
            int got = static_cast<int>(neighborhood(origin, adj).size());
            CHECK(got == adj.neighbor_count());
            if (u == 1) CHECK(got == 2 * n);
            if (u == n) {
                int full = 1;
                for (int i = 0; i < n; ++i) full *= 3;
                CHECK(got == full - 1);
            }
        }
    }
}

TEST_CASE("adjacency is symmetric and irreflexive") {
    gen::Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        Adjacency adj = gen::random_adjacency(rng);
        Point p = gen::random_point(rng, adj.dim(), -2, 2);
        Point q = gen::random_point(rng, adj.dim(), -2, 2);
        CHECK(are_adjacent(p, q, adj) == are_adjacent(q, p, adj));
        CHECK_FALSE(are_adjacent(p, p, adj));
    }
}

TEST_CASE("image construction rejects mismatched points") {
    CHECK_THROWS_AS(DigitalImage(Adjacency(2, 1), PointSet{{0, 0}, {1}}), std::invalid_argument);
    CHECK(DigitalImage(Adjacency(2, 1), {}).empty());
}

TEST_CASE("boundary of a filled square") {
    PointSet pts;
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y) pts.insert({x, y});
    DigitalImage X(Adjacency(2, 1), pts);
    PointSet expected = pts;
    expected.erase({1, 1});
    CHECK(boundary(X) == expected);

    CHECK(boundary(DigitalImage(Adjacency(2, 1), {})).empty());
    CHECK(boundary(DigitalImage(Adjacency(2, 1), {{0, 0}})) == PointSet{{0, 0}});
}

TEST_CASE("boundary is always a subset of the image") {
    gen::Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        DigitalImage X = gen::random_image(rng, gen::random_adjacency(rng), 10);
        for (const Point& p : boundary(X)) CHECK(X.contains(p));
    }
}

TEST_CASE("connectedness") {
    Adjacency four(2, 1), eight(2, 2), two(1, 1);
    CHECK_FALSE(is_connected({{0, 0}, {1, 1}}, four));
    CHECK(is_connected({{0, 0}, {1, 1}}, eight));
    CHECK_FALSE(is_connected({{0}, {2}}, two));
    CHECK(is_connected({}, four));
    CHECK(is_connected({{3, 3}}, four));
}

TEST_CASE("connected components come out in canonical order") {
    Adjacency two(1, 1), four(2, 1);
    CHECK(connected_components({{0}, {2}}, two) == std::vector<PointSet>{{{0}}, {{2}}});
    CHECK(connected_components({{0, 0}, {1, 0}, {5, 5}}, four) ==
          std::vector<PointSet>{{{0, 0}, {1, 0}}, {{5, 5}}});
    CHECK(connected_components({}, four).empty());
}

TEST_CASE("is_connected agrees with component count") {
    gen::Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        Adjacency adj = gen::random_adjacency(rng);
        DigitalImage X = gen::random_image(rng, adj, 9);
        CHECK(is_connected(X.points(), adj) ==
              (connected_components(X.points(), adj).size() <= 1));
    }
}

TEST_CASE("set adjacency") {
    Adjacency two(1, 1);
    CHECK(sets_adjacent({{0}, {2}}, {{1}}, two));
    CHECK_FALSE(sets_adjacent({{0}}, {{2}}, two));
    CHECK(sets_adjacent({{0}, {7}}, {{7}, {9}}, two));  // shared point
    CHECK_FALSE(sets_adjacent({}, {{1}}, two));
    CHECK_FALSE(sets_adjacent({{1}}, {}, two));
}

TEST_CASE("a union of adjacent connected sets is connected") {
    gen::Rng rng(909);
    for (int trial = 0; trial < 150; ++trial) {
        Adjacency adj = gen::random_adjacency(rng);
        DigitalImage ambient = gen::random_connected_image(rng, adj, 8);
        PointSet A = gen::random_connected_subset(rng, ambient, 4);
        PointSet B = gen::random_connected_subset(rng, ambient, 4);
        if (!sets_adjacent(A, B, adj)) continue;
        PointSet both = A;
        both.insert(B.begin(), B.end());
        CHECK(is_connected(both, adj));
    }
}

TEST_CASE("cut points") {
    Adjacency two(1, 1), four(2, 1);
    CHECK(cut_points(DigitalImage(two, {{0}, {1}, {2}})) == PointSet{{1}});
    CHECK(cut_points(DigitalImage(four, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})).empty());
    CHECK_THROWS_AS(cut_points(DigitalImage(two, {{0}, {2}})), std::invalid_argument);
    CHECK_THROWS_AS(cut_points(DigitalImage(two, {})), std::invalid_argument);
}

TEST_CASE("point formatting") {
    CHECK(to_string(Point{1, -2}) == "(1,-2)");
    CHECK(to_string(Point{5}) == "(5)");
    CHECK(to_string(PointSet{{0}, {2}}) == "{(0), (2)}");
}
