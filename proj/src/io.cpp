#include "arcmusic/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arcmusic/errors.hpp"

namespace arcmusic {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out << bytes;
        if (!out.good()) throw DataError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string map_to_csv(const ImagingMap& map) {
    std::ostringstream out;
    out << "x,y,value\n";
    for (int iy = 0; iy < map.grid.ny; ++iy) {
        for (int ix = 0; ix < map.grid.nx; ++ix) {
            out << format_double(map.grid.x_at(ix)) << ',' << format_double(map.grid.y_at(iy))
                << ',' << format_double(map.value(ix, iy)) << '\n';
        }
    }
    return out.str();
}

std::pair<double, double> map_to_pgm(const ImagingMap& map, std::string& bytes) {
    const double lo = 1.0;
    const double hi = map.max_value();
    std::ostringstream out;
    out << "P5\n" << map.grid.nx << ' ' << map.grid.ny << "\n255\n";
    std::string pixels;
    pixels.reserve(map.values.size());
    for (int iy = map.grid.ny - 1; iy >= 0; --iy) {  // top row = y_max
        for (int ix = 0; ix < map.grid.nx; ++ix) {
            double scaled = hi > lo ? 255.0 * (map.value(ix, iy) - lo) / (hi - lo) : 0.0;
            scaled = std::min(255.0, std::max(0.0, scaled));
            pixels.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(scaled))));
        }
    }
    out << pixels;
    bytes = out.str();
    return {lo, hi};
}

std::string manifest_text(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ostringstream out;
    for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
    return out.str();
}

}  // namespace arcmusic
