#pragma once

// SVG base diagrams. Each node gets an asterisk joined to its corner by a
// dashed branch cut.

#include <atoric/base.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <numbers>
#include <vector>

namespace atoric {

struct Layout {
    std::vector<Rational> lengths;             // affine edge lengths after closing
    std::vector<std::pair<Rational, Rational>> corners;  // corner i position
};

namespace svg_detail {

// Edge direction for a counterclockwise boundary with inward normal u.
inline LatticeVector direction(const LatticeVector& u) { return {u.y, -u.x}; }

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace svg_detail

/// Closes the boundary: starts from the given lengths (1 where absent) and
/// lengthens the two edges whose directions bracket the closing defect.
inline Layout layout(const DiskBase& base) {
    if (auto r = validate_disk(base); !r) throw Error(ErrorCode::Unrenderable, "cannot embed base: " + r.str());
    const std::size_t k = base.size();
    Layout out;
    for (const auto& e : base.edges) out.lengths.push_back(e.length.value_or(Rational(1)));

    Rational rx = 0, ry = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const LatticeVector d = svg_detail::direction(base.normal(i));
        rx += out.lengths[i] * Rational(d.x);
        ry += out.lengths[i] * Rational(d.y);
    }
    if (rx != 0 || ry != 0) {
        // need alpha d_a + beta d_b = -r with alpha, beta >= 0
        const Rational tx = -rx, ty = -ry;
        bool closed = false;
        for (std::size_t a = 0; a < k && !closed; ++a) {
            std::size_t b = (a + 1) % k;
            while (b != a && base.normal(b) == base.normal(a)) b = (b + 1) % k;
            const LatticeVector da = svg_detail::direction(base.normal(a));
            const LatticeVector db = svg_detail::direction(base.normal(b));
            const Rational det(cross(da, db));
            if (det <= 0) continue;
            const Rational alpha = (tx * Rational(db.y) - ty * Rational(db.x)) / det;
            const Rational beta = (Rational(da.x) * ty - Rational(da.y) * tx) / det;
            if (alpha < 0 || beta < 0) continue;
            out.lengths[a] += alpha;
            out.lengths[b] += beta;
            closed = true;
        }
        if (!closed)
            throw Error(ErrorCode::Unrenderable, "boundary cannot be closed; normals wind " +
                                                     std::to_string(winding_number(base)) + " times");
    }

    Rational x = 0, y = 0;
    for (std::size_t i = 0; i < k; ++i) {
        out.corners.emplace_back(x, y);
        const LatticeVector d = svg_detail::direction(base.normal(i));
        x += out.lengths[i] * Rational(d.x);
        y += out.lengths[i] * Rational(d.y);
    }
    return out;
}

inline std::string render_svg(const DiskBase& base) {
    using svg_detail::num;
    const Layout lay = layout(base);
    const std::size_t k = base.size();

    // Normalize exactly first: coordinates of large bases overflow a double.
    Rational min_x = lay.corners[0].first, max_x = min_x, min_y = lay.corners[0].second, max_y = min_y;
    for (const auto& [x, y] : lay.corners) {
        min_x = std::min(min_x, x), max_x = std::max(max_x, x);
        min_y = std::min(min_y, y), max_y = std::max(max_y, y);
    }
    Rational extent = std::max<Rational>(max_x - min_x, max_y - min_y);
    if (extent == 0) extent = 1;
    std::vector<double> px, py;
    for (const auto& [x, y] : lay.corners) {
        px.push_back(Rational((x - min_x) / extent).convert_to<double>());
        py.push_back(Rational((y - min_y) / extent).convert_to<double>());
    }
    std::vector<double> unit_len;
    for (const auto& l : lay.lengths) unit_len.push_back(Rational(l / extent).convert_to<double>());
    const double size = 400.0, margin = 40.0;
    const double scale = size - 2 * margin;
    auto sx = [&](double x) { return margin + x * scale; };
    auto sy = [&](double y) { return size - margin - y * scale; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"400\" height=\"400\" "
           "viewBox=\"0 0 400 400\">\n";
    out += "<g class=\"boundary\" stroke=\"black\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = (i + 1) % k;
        out += "<line class=\"edge\" x1=\"" + num(sx(px[i])) + "\" y1=\"" + num(sy(py[i])) + "\" x2=\"" +
               num(sx(px[j])) + "\" y2=\"" + num(sy(py[j])) + "\"/>\n";
    }
    out += "</g>\n";

    out += "<g class=\"nodes\">\n";
    for (std::size_t i = 0; i < k; ++i) {
        const auto* node = std::get_if<Node>(&base.corners[i]);
        if (!node) continue;
        // Eigenray into the polygon; along the inward normal when it is parallel to the boundary.
        const Integer n = cross(base.normal(i), node->eigen);
        const LatticeVector ray = n == 0 ? base.normal(i) : svg_detail::direction(node->eigen);
        const Integer big = std::max<Integer>(abs(ray.x), abs(ray.y));
        const double rx = Rational(ray.x, big).convert_to<double>(), ry = Rational(ray.y, big).convert_to<double>();
        const double norm = std::hypot(rx, ry);
        const double reach = 0.45 * std::min(unit_len[base.prev(i)], unit_len[i]);
        const double t = node->slide.convert_to<double>();
        const double nx = px[i] + t * reach * rx / norm, ny = py[i] + t * reach * ry / norm;
        const double cx = sx(nx), cy = sy(ny), r = 6.0;

        out += "<path class=\"branch\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"5 4\" fill=\"none\" d=\"M " +
               num(sx(px[i])) + " " + num(sy(py[i])) + " L " + num(cx) + " " + num(cy) + "\"/>\n";
        std::string d;
        for (int s = 0; s < 3; ++s) {
            const double a = std::numbers::pi * (0.5 + s / 3.0);
            d += (s ? " M " : "M ") + num(cx + r * std::cos(a)) + " " + num(cy - r * std::sin(a)) + " L " +
                 num(cx - r * std::cos(a)) + " " + num(cy + r * std::sin(a));
        }
        out += "<path class=\"asterisk\" stroke=\"black\" stroke-width=\"2\" d=\"" + d + "\"/>\n";
        if (node->multiplicity > 1)
            out += "<text class=\"multiplicity\" x=\"" + num(cx + 8) + "\" y=\"" + num(cy - 8) +
                   "\" font-size=\"12\">x" + node->multiplicity.str() + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace atoric
