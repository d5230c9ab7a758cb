#pragma once
// Artifact writers. All output is deterministic for a fixed input: no
// timestamps, integer-scaled SVG coordinates, %.17g doubles in CSV.

#include <string>
#include <vector>

#include "detproc/aztec.hpp"
#include "detproc/growth.hpp"

namespace detproc {
namespace io {

std::string format_double(double v);

// CSV with a '# key=value ...' preamble line carrying the seed, then a
// header row. Every cell is preformatted text.
std::string csv_table(const std::string& preamble,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Domino tiling in standard (unrotated) position, one rect per domino,
// class attribute per tile type.
std::string domino_svg(const aztec::DominoTiling& t, int unit = 16);

// Axonometric projection of the step surface; one polygon per tile, class
// per type, plus the reference marker circle at (x, n, h) = (-1/2, 0, 0).
std::string lozenge_svg(const growth::LozengeTiling& t, int unit = 8);

void write_file(const std::string& path, const std::string& contents);

} // namespace io
} // namespace detproc
