#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arcmusic/music.hpp"

namespace arcmusic {

inline constexpr const char* kVersionString = "arcmusic 1.0.0";

/// Writes bytes to path atomically (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& bytes);

/// "x,y,value" CSV, row-major over the grid, %.17g formatting (round-trip exact).
std::string map_to_csv(const ImagingMap& map);

/// 8-bit binary PGM (P5), values scaled linearly from [1, max] to [0, 255];
/// top image row corresponds to y_max. Returns {lo, hi} scaling bounds.
std::pair<double, double> map_to_pgm(const ImagingMap& map, std::string& bytes);

/// key = value manifest lines.
std::string manifest_text(const std::vector<std::pair<std::string, std::string>>& entries);

std::string format_double(double v);  // %.17g

}  // namespace arcmusic
