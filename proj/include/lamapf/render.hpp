#pragma once

// Draws an instance as a standalone SVG: edges as lines, vertices as
// labeled dots, and each agent's start disk at true scale so blocking
// relationships are visible by eye. Output is deterministic for a given
// instance and options — same bytes every run — so rendered files can be
// compared in tests and diffs.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "lamapf/errors.hpp"
#include "lamapf/instance.hpp"

namespace lamapf {

struct RenderOptions {
    double scale = 10.0;  // SVG pixels per coordinate unit; geometry itself is untouched
    bool zones = false;   // shade a horizontal band per vertex-name family (A row, J column, ...)
};

struct RenderResult {
    std::string svg;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string svg_num(double v) {
    if (v > -0.0005 && v < 0) v = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

inline const char* agent_color(const std::string& label) {
    if (!label.empty()) {
        if (label[0] == 'v') return "#4a90d9";
        if (label[0] == 'c') return "#d9544a";
        if (label[0] == 'b') return "#58a55c";
    }
    return "#888888";
}

}  // namespace detail

inline RenderResult render_svg(const Instance& inst, const RenderOptions& opt = {}) {
    if (inst.vertices.empty()) throw Error("nothing to draw: instance has no vertices");
    if (opt.scale <= 0) throw Error("scale must be positive");

    Coord minx = inst.vertices[0].pos.x, maxx = minx;
    Coord miny = inst.vertices[0].pos.y, maxy = miny;
    for (const Vertex& v : inst.vertices) {
        minx = std::min(minx, v.pos.x);
        maxx = std::max(maxx, v.pos.x);
        miny = std::min(miny, v.pos.y);
        maxy = std::max(maxy, v.pos.y);
    }
    const double pad = std::max(2.0, double(2 * inst.radius) + 1.0);
    const double s = opt.scale;
    auto sx = [&](double x) { return (x - double(minx) + pad) * s; };
    auto sy = [&](double y) { return (double(maxy) - y + pad) * s; };
    const double width = (double(maxx - minx) + 2 * pad) * s;
    const double height = (double(maxy - miny) + 2 * pad) * s;

    using detail::svg_num;
    using detail::xml_escape;

    RenderResult res;
    std::string& out = res.svg;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + svg_num(width) +
           "\" height=\"" + svg_num(height) + "\" viewBox=\"0 0 " + svg_num(width) + " " +
           svg_num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    if (opt.zones) {
        // one band per leading-letter family, bottom-to-top by letter
        std::map<char, std::pair<Coord, Coord>> bands;  // letter -> y range
        for (const Vertex& v : inst.vertices) {
            if (v.label.empty()) continue;
            char c = v.label[0];
            if (c < 'A' || c > 'Z') continue;
            if (v.label.size() > 1 && v.label[1] != '_') continue;
            auto it = bands.find(c);
            if (it == bands.end())
                bands.emplace(c, std::make_pair(v.pos.y, v.pos.y));
            else {
                it->second.first = std::min(it->second.first, v.pos.y);
                it->second.second = std::max(it->second.second, v.pos.y);
            }
        }
        int idx = 0;
        for (const auto& [letter, range] : bands) {
            double y_top = sy(double(range.second) + 0.45);
            double y_bot = sy(double(range.first) - 0.45);
            const char* fill = (idx++ % 2 == 0) ? "#00000010" : "#00000008";
            out += "<rect class=\"zone\" x=\"0\" y=\"" + svg_num(y_top) + "\" width=\"" +
                   svg_num(width) + "\" height=\"" + svg_num(y_bot - y_top) + "\" fill=\"" + fill +
                   "\"/>\n";
            out += "<text class=\"zonelabel\" x=\"" + svg_num(0.15 * s) + "\" y=\"" +
                   svg_num((y_top + y_bot) / 2) + "\" font-size=\"" +
                   svg_num(std::max(0.7 * s, 9.0)) + "\" fill=\"#00000040\" font-family=\"monospace\">" +
                   letter + "</text>\n";
        }
    }

    const double edge_w = std::max(0.06 * s, 0.8);
    for (const auto& [a, b] : inst.edges) {
        const Point& p = inst.vertices[std::size_t(a)].pos;
        const Point& q = inst.vertices[std::size_t(b)].pos;
        out += "<line class=\"edge\" x1=\"" + svg_num(sx(double(p.x))) + "\" y1=\"" +
               svg_num(sy(double(p.y))) + "\" x2=\"" + svg_num(sx(double(q.x))) + "\" y2=\"" +
               svg_num(sy(double(q.y))) + "\" stroke=\"#555555\" stroke-width=\"" + svg_num(edge_w) +
               "\"/>\n";
    }

    for (const Agent& a : inst.agents) {
        const Point& p = inst.vertices[std::size_t(a.start)].pos;
        const char* color = detail::agent_color(a.label);
        out += "<circle class=\"agent\" cx=\"" + svg_num(sx(double(p.x))) + "\" cy=\"" +
               svg_num(sy(double(p.y))) + "\" r=\"" + svg_num(double(inst.radius) * s) + "\" fill=\"" +
               color + "\" fill-opacity=\"0.22\" stroke=\"" + color + "\" stroke-width=\"" +
               svg_num(std::max(0.04 * s, 0.6)) + "\"/>\n";
    }

    const double dot = std::max(0.18 * s, 2.0);
    const double font = std::max(0.55 * s, 8.0);
    for (const Vertex& v : inst.vertices) {
        double cx = sx(double(v.pos.x)), cy = sy(double(v.pos.y));
        out += "<circle class=\"vertex\" cx=\"" + svg_num(cx) + "\" cy=\"" + svg_num(cy) + "\" r=\"" +
               svg_num(dot) + "\" fill=\"#111111\"/>\n";
        out += "<text class=\"vlabel\" x=\"" + svg_num(cx + 0.3 * s) + "\" y=\"" +
               svg_num(cy - 0.25 * s) + "\" font-size=\"" + svg_num(font) +
               "\" fill=\"#333333\" font-family=\"monospace\">" + xml_escape(v.label) + "</text>\n";
    }
    out += "</svg>\n";

    // diagnostics only; the drawing is still produced
    const Wide thr2 = Wide(2 * inst.radius) * (2 * inst.radius);
    for (std::size_t i = 0; i < inst.agents.size(); ++i)
        for (std::size_t j = i + 1; j < inst.agents.size(); ++j) {
            const Point& p = inst.vertices[std::size_t(inst.agents[i].start)].pos;
            const Point& q = inst.vertices[std::size_t(inst.agents[j].start)].pos;
            if (sq_dist(p, q) < thr2)
                res.warnings.push_back("start disks of agents '" + inst.agents[i].label + "' and '" +
                                       inst.agents[j].label + "' overlap");
        }
    return res;
}

}  // namespace lamapf
