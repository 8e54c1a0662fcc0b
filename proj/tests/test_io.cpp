#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "arcmusic/io.hpp"

using namespace arcmusic;

namespace {

ImagingMap tiny_map() {
    ImagingMap map;
    map.grid = ImageGrid{0.0, 1.0, 0.0, 1.0, 3, 2};
    map.kind = MapKind::theory_j1;
    map.values = {1.0, 1.5, 2.0, 1.25, 3.0, 1.0};
    return map;
}

}  // namespace

TEST_CASE("map CSV layout") {
    const std::string csv = map_to_csv(tiny_map());
    CHECK(csv ==
          "x,y,value\n"
          "0,0,1\n"
          "0.5,0,1.5\n"
          "1,0,2\n"
          "0,1,1.25\n"
          "0.5,1,3\n"
          "1,1,1\n");
}

TEST_CASE("PGM scaling and orientation") {
    std::string bytes;
    const auto [lo, hi] = map_to_pgm(tiny_map(), bytes);
    CHECK(lo == 1.0);
    CHECK(hi == 3.0);
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(bytes.substr(0, header.size()) == header);
    const auto* px = reinterpret_cast<const unsigned char*>(bytes.data() + header.size());
    // Top row is y_max: values 1.25, 3.0, 1.0 scale to 32, 255, 0.
    CHECK(px[0] == 32);
    CHECK(px[1] == 255);
    CHECK(px[2] == 0);
    CHECK(px[3] == 0);
    CHECK(px[4] == 64);
    CHECK(px[5] == 128);

    // Constant map scales to all black.
    ImagingMap flat = tiny_map();
    flat.values.assign(flat.values.size(), 1.0);
    map_to_pgm(flat, bytes);
    for (std::size_t i = header.size(); i < bytes.size(); ++i) CHECK(bytes[i] == 0);
}

TEST_CASE("manifest formatting and atomic write") {
    const std::string text = manifest_text({{"alpha", "1"}, {"beta", "two"}});
    CHECK(text == "alpha = 1\nbeta = two\n");

    const char* path = "io_test_dir/out.txt";
    atomic_write(path, text);
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == text);
    CHECK_FALSE(std::filesystem::exists("io_test_dir/out.txt.tmp"));
    std::filesystem::remove_all("io_test_dir");
}

TEST_CASE("format_double round-trips") {
    for (const double v : {1.0 / 3.0, 1.7597, 1e-300, 12345.678901234567}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
