#include "detproc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace detproc {
namespace io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_table(const std::string& preamble,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    if (!preamble.empty()) out += "# " + preamble + "\n";
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

namespace {

const char* domino_class(aztec::DominoType t) {
    switch (t) {
        case aztec::DominoType::LightGray: return "light-gray";
        case aztec::DominoType::MiddleGray: return "middle-gray";
        case aztec::DominoType::DarkGray: return "dark-gray";
        case aztec::DominoType::White: return "white";
    }
    return "?";
}

const char* domino_fill(aztec::DominoType t) {
    switch (t) {
        case aztec::DominoType::LightGray: return "#c8c8c8";
        case aztec::DominoType::MiddleGray: return "#8c8c8c";
        case aztec::DominoType::DarkGray: return "#4b4b4b";
        case aztec::DominoType::White: return "#f4f4f4";
    }
    return "#000";
}

} // namespace

std::string domino_svg(const aztec::DominoTiling& t, int unit) {
    const long n = t.order;
    // Unrotate: cell (a,b) -> (i,j) = ((a-b-1)/2, (a+b-1)/2); standard cells
    // span i,j in [-n, n-1].
    const long w = 2 * n * unit, h = 2 * n * unit;
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(w) + "\" height=\"" + std::to_string(h) +
                      "\" viewBox=\"0 0 " + std::to_string(w) + " " +
                      std::to_string(h) + "\">\n";
    for (const aztec::Domino& d : t.tiles) {
        const long i1 = (d.black[0] - d.black[1] - 1) / 2;
        const long j1 = (d.black[0] + d.black[1] - 1) / 2;
        const long i2 = (d.white[0] - d.white[1] - 1) / 2;
        const long j2 = (d.white[0] + d.white[1] - 1) / 2;
        const long i = std::min(i1, i2), j = std::min(j1, j2);
        const bool horizontal = (j1 == j2);
        const long x = (i + n) * unit;
        const long y = (n - 1 - j) * unit; // flip j so the diamond sits upright
        const long rw = (horizontal ? 2 : 1) * unit;
        const long rh = (horizontal ? 1 : 2) * unit;
        const long ry = horizontal ? y : y - unit;
        svg += "  <rect class=\"" + std::string(domino_class(d.type)) + "\" x=\"" +
               std::to_string(x) + "\" y=\"" + std::to_string(ry) + "\" width=\"" +
               std::to_string(rw) + "\" height=\"" + std::to_string(rh) +
               "\" fill=\"" + domino_fill(d.type) +
               "\" stroke=\"#222\" stroke-width=\"1\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

namespace {

const char* lozenge_class(growth::LozengeType t) {
    switch (t) {
        case growth::LozengeType::White: return "white";
        case growth::LozengeType::LightGray: return "light-gray";
        case growth::LozengeType::DarkGray: return "dark-gray";
    }
    return "?";
}

const char* lozenge_fill(growth::LozengeType t) {
    switch (t) {
        case growth::LozengeType::White: return "#f4f4f4";
        case growth::LozengeType::LightGray: return "#c0c0c0";
        case growth::LozengeType::DarkGray: return "#5a5a5a";
    }
    return "#000";
}

// Axonometric projection of the cube-stack surface point (x, n, h); screen
// y grows downward. All three unit faces project to area-4 parallelograms.
std::pair<long, long> project(long x, long n, long h) {
    return {2 * x - 2 * n, x + n - 2 * h};
}

} // namespace

std::string lozenge_svg(const growth::LozengeTiling& t, int unit) {
    long minx = 1 << 30, maxx = -(1L << 30), miny = 1 << 30, maxy = -(1L << 30);
    std::vector<std::array<std::pair<long, long>, 4>> quads;
    std::vector<growth::LozengeType> types;
    for (const growth::LozengeTile& tile : t.tiles) {
        const long x = tile.x;
        const long n = tile.n;
        const long h = tile.h;
        std::array<std::pair<long, long>, 4> q;
        switch (tile.type) {
            case growth::LozengeType::White:
                q = {project(x, n - 1, h), project(x + 1, n - 1, h),
                     project(x + 1, n, h), project(x, n, h)};
                break;
            case growth::LozengeType::LightGray:
                q = {project(x, n - 1, h), project(x, n - 1, h + 1),
                     project(x, n, h + 1), project(x, n, h)};
                break;
            case growth::LozengeType::DarkGray:
                q = {project(x, n - 1, h), project(x + 1, n - 1, h),
                     project(x + 1, n - 1, h + 1), project(x, n - 1, h + 1)};
                break;
        }
        for (const auto& p : q) {
            minx = std::min(minx, p.first);
            maxx = std::max(maxx, p.first);
            miny = std::min(miny, p.second);
            maxy = std::max(maxy, p.second);
        }
        quads.push_back(q);
        types.push_back(tile.type);
    }
    const auto ref = project(0, 0, 0); // marker anchor; shifted half-cell below
    minx = std::min(minx, ref.first - 2);
    maxx = std::max(maxx, ref.first + 2);
    miny = std::min(miny, ref.second - 2);
    maxy = std::max(maxy, ref.second + 2);

    const long w = (maxx - minx) * unit, h = (maxy - miny) * unit;
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(w) + "\" height=\"" + std::to_string(h) +
                      "\" viewBox=\"0 0 " + std::to_string(w) + " " +
                      std::to_string(h) + "\">\n";
    for (std::size_t i = 0; i < quads.size(); ++i) {
        svg += "  <polygon class=\"" + std::string(lozenge_class(types[i])) +
               "\" points=\"";
        for (std::size_t c = 0; c < 4; ++c) {
            if (c) svg += ' ';
            svg += std::to_string((quads[i][c].first - minx) * unit) + "," +
                   std::to_string((quads[i][c].second - miny) * unit);
        }
        svg += "\" fill=\"" + std::string(lozenge_fill(types[i])) +
               "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    }
    // Reference circle at (x, n, h) = (-1/2, 0, 0).
    const long cx = std::lround((2.0 * -0.5 - 0.0 - minx) * unit);
    const long cy = std::lround((-0.5 + 0.0 - 0.0 - miny) * unit);
    svg += "  <circle class=\"reference\" cx=\"" + std::to_string(cx) +
           "\" cy=\"" + std::to_string(cy) + "\" r=\"" +
           std::to_string(unit / 2) + "\" fill=\"none\" stroke=\"#000\"/>\n";
    svg += "</svg>\n";
    return svg;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_file: cannot open " + path);
    f << contents;
}

} // namespace io
} // namespace detproc
