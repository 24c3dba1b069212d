#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "lamapf/geometry.hpp"

using namespace lamapf;

TEST_CASE("squared distance is exact and symmetric", "[geometry]") {
    CHECK(sq_dist({0, 0}, {3, 4}) == 25);
    CHECK(sq_dist({3, 4}, {0, 0}) == 25);
    CHECK(sq_dist({-2, -2}, {-2, -2}) == 0);
    CHECK(sq_dist({kCoordLimit, kCoordLimit}, {-kCoordLimit, -kCoordLimit}) ==
          Wide(8) * kCoordLimit * kCoordLimit);
}

TEST_CASE("point-segment distance: interior projection", "[geometry]") {
    Segment s{{0, 0}, {10, 0}};
    // p straight above the middle, distance exactly 5
    CHECK_FALSE(point_segment_closer_than({5, 5}, s, 5));  // strict: touching is allowed
    CHECK(point_segment_closer_than({5, 5}, s, 6));
    CHECK(point_segment_closer_than({5, 4}, s, 5));
    // below the segment behaves the same
    CHECK(point_segment_closer_than({5, -4}, s, 5));
}

TEST_CASE("point-segment distance: endpoint regimes", "[geometry]") {
    Segment s{{0, 0}, {10, 0}};
    // beyond the right end: nearest point is the endpoint, distance 5
    CHECK_FALSE(point_segment_closer_than({13, 4}, s, 5));
    CHECK(point_segment_closer_than({13, 4}, s, 6));
    // exactly level with an endpoint: projection parameter hits the boundary
    CHECK_FALSE(point_segment_closer_than({0, 5}, s, 5));
    CHECK(point_segment_closer_than({0, 5}, s, 6));
    CHECK(point_segment_closer_than({-3, -4}, s, 6));
}

TEST_CASE("point-segment distance: degenerate segment is a point", "[geometry]") {
    Segment s{{7, 7}, {7, 7}};
    CHECK(point_segment_closer_than({7, 8}, s, 2));
    CHECK_FALSE(point_segment_closer_than({7, 9}, s, 2));
    CHECK_FALSE(point_segment_closer_than({7, 7}, s, 0));  // zero threshold admits nothing
}

TEST_CASE("point-segment distance is orientation independent", "[geometry]") {
    Segment fwd{{2, 3}, {11, -5}};
    Segment rev{{11, -5}, {2, 3}};
    for (Coord x = -15; x <= 15; x += 3)
        for (Coord y = -15; y <= 15; y += 3)
            for (Coord t : {1, 4, 9})
                CHECK(point_segment_closer_than({x, y}, fwd, t) ==
                      point_segment_closer_than({x, y}, rev, t));
}

TEST_CASE("point-segment distance stays exact at the coordinate bound", "[geometry]") {
    // the perpendicular distance here is 1e9 / sqrt(2e18) = 1/sqrt(2)
    Segment s{{0, 0}, {kCoordLimit, kCoordLimit}};
    Point p{kCoordLimit - 1, kCoordLimit};
    CHECK(point_segment_closer_than(p, s, 1));
    // a far-away point at huge coordinates must not overflow into a false hit
    CHECK_FALSE(point_segment_closer_than({-kCoordLimit, kCoordLimit}, s, 1000));
}

TEST_CASE("point-segment predicate agrees with floating point off the boundary", "[geometry]") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<Coord> coord(-1000, 1000);
    std::uniform_int_distribution<Coord> thr(1, 50);
    int checked = 0;
    for (int iter = 0; iter < 20000; ++iter) {
        Point a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, p{coord(rng), coord(rng)};
        Coord t = thr(rng);
        double ax = double(a.x), ay = double(a.y), bx = double(b.x), by = double(b.y);
        double px = double(p.x), py = double(p.y);
        double dx = bx - ax, dy = by - ay;
        double len2 = dx * dx + dy * dy;
        double dist;
        if (len2 == 0) {
            dist = std::hypot(px - ax, py - ay);
        } else {
            double u = ((px - ax) * dx + (py - ay) * dy) / len2;
            u = std::clamp(u, 0.0, 1.0);
            dist = std::hypot(px - (ax + u * dx), py - (ay + u * dy));
        }
        if (std::abs(dist - double(t)) < 1e-6) continue;  // boundary: exact answer, fp can't referee
        ++checked;
        CHECK(point_segment_closer_than(p, Segment{a, b}, t) == (dist < double(t)));
    }
    CHECK(checked > 15000);
}

TEST_CASE("wide integers print correctly", "[geometry]") {
    CHECK(wide_to_string(0) == "0");
    CHECK(wide_to_string(42) == "42");
    CHECK(wide_to_string(-7) == "-7");
    Wide big = Wide(1'000'000'000'000'000'000) * 1'000'000'000;  // 1e27
    CHECK(wide_to_string(big) == "1000000000000000000000000000");
    CHECK(wide_to_string(-big) == "-1000000000000000000000000000");
}
