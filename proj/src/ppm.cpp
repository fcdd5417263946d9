#include "ffp/ppm.hpp"

#include <fstream>

namespace ffp {

namespace {

// Class 0 is blue and class 1 red, matching the spiral color convention;
// the rest are spaced for contrast.
constexpr unsigned char kPalette[kPaletteSize][3] = {
    {49, 106, 197},  // blue
    {211, 63, 51},   // red
    {70, 160, 73},   // green
    {240, 173, 38},  // amber
    {129, 83, 170},  // purple
    {84, 189, 195},  // teal
    {230, 119, 175}, // pink
    {140, 110, 70},  // brown
    {170, 200, 60},  // lime
    {90, 90, 90},    // gray
    {255, 140, 60},  // orange
    {60, 60, 150},   // navy
    {150, 220, 180}, // mint
    {190, 60, 120},  // magenta
    {120, 150, 200}, // steel
    {30, 30, 30},    // near-black
};

} // namespace

std::array<unsigned char, 3> palette_color(int class_index) {
    if (class_index < 0 || class_index >= kPaletteSize) {
        throw ValueError("palette_color: class index " +
                         std::to_string(class_index) + " outside palette (0.." +
                         std::to_string(kPaletteSize - 1) + ")");
    }
    const auto& c = kPalette[class_index];
    return {c[0], c[1], c[2]};
}

void write_map_image(const ClassMap& map, const std::string& path) {
    if (map.resolution < 1 ||
        map.labels.size() != static_cast<std::size_t>(map.resolution) *
                                 static_cast<std::size_t>(map.resolution)) {
        throw ValueError("write_map_image: malformed class map");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out << "P6\n" << map.resolution << ' ' << map.resolution << "\n255\n";
    std::string row;
    row.reserve(static_cast<std::size_t>(map.resolution) * 3u);
    for (int iy = 0; iy < map.resolution; ++iy) {
        row.clear();
        for (int ix = 0; ix < map.resolution; ++ix) {
            const auto rgb = palette_color(map.at(ix, iy));
            row.push_back(static_cast<char>(rgb[0]));
            row.push_back(static_cast<char>(rgb[1]));
            row.push_back(static_cast<char>(rgb[2]));
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace ffp
