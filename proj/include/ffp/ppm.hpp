#ifndef FFP_PPM_HPP
#define FFP_PPM_HPP

#include <array>
#include <string>

#include "ffp/train.hpp"

namespace ffp {

inline constexpr int kPaletteSize = 16;

// RGB color assigned to a class index in map images.
std::array<unsigned char, 3> palette_color(int class_index);

// Binary PPM (P6), one palette color per class, row-major, map-resolution
// sized. Class indices must fit the 16-entry palette.
void write_map_image(const ClassMap& map, const std::string& path);

} // namespace ffp

#endif
