#pragma once

// Exact integer plane geometry for disk-agent conflict checks.
// Every predicate here is decided in integer arithmetic; no floating point
// is allowed anywhere on a decision path. Distances can hit a threshold
// exactly (touching disks), so comparisons must be exact to be trustworthy.

#include <cstdint>
#include <string>

namespace lamapf {

using Coord = std::int64_t;
using Wide = __int128;  // intermediates up to ~coord^4 need 128 bits

// Coordinates (and radii) are capped so that every intermediate value in the
// predicates below fits in a signed 128-bit integer with room to spare.
inline constexpr Coord kCoordLimit = 1'000'000'000;

struct Point {
    Coord x = 0;
    Coord y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
    Point a;
    Point b;  // a == b is allowed; treated as a point
};

inline Wide sq_dist(const Point& p, const Point& q) {
    Wide dx = Wide(p.x) - q.x;
    Wide dy = Wide(p.y) - q.y;
    return dx * dx + dy * dy;
}

// True iff the Euclidean distance from p to the closed segment s is
// strictly less than threshold. Case split on the projection of p onto
// the carrier line: inside [a,b] compare the perpendicular distance via
//   cross(b-a, p-a)^2 < threshold^2 * |b-a|^2,
// otherwise compare against the nearer endpoint. All exact.
inline bool point_segment_closer_than(const Point& p, const Segment& s, Coord threshold) {
    Wide t2 = Wide(threshold) * threshold;
    Wide dx = Wide(s.b.x) - s.a.x;
    Wide dy = Wide(s.b.y) - s.a.y;
    Wide len2 = dx * dx + dy * dy;
    if (len2 == 0) return sq_dist(p, s.a) < t2;

    Wide px = Wide(p.x) - s.a.x;
    Wide py = Wide(p.y) - s.a.y;
    Wide dot = px * dx + py * dy;
    if (dot <= 0) return sq_dist(p, s.a) < t2;
    if (dot >= len2) return sq_dist(p, s.b) < t2;

    Wide cross = dx * py - dy * px;
    return cross * cross < t2 * len2;
}

inline std::string wide_to_string(Wide v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string out;
    while (u > 0) {
        out.insert(out.begin(), char('0' + int(u % 10)));
        u /= 10;
    }
    return neg ? "-" + out : out;
}

}  // namespace lamapf
