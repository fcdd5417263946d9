#include "ffp/data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ffp {

LabelScheme LabelScheme::scalar(int num_classes) {
    if (num_classes < 2) {
        throw ValueError("LabelScheme::scalar: num_classes must be >= 2");
    }
    LabelScheme s;
    s.kind = Kind::Scalar;
    s.num_classes = num_classes;
    return s;
}

LabelScheme LabelScheme::one_hot(int num_classes, double hot_value) {
    if (num_classes < 2) {
        throw ValueError("LabelScheme::one_hot: num_classes must be >= 2");
    }
    if (hot_value == 0.0) {
        throw ValueError("LabelScheme::one_hot: hot_value must be nonzero");
    }
    LabelScheme s;
    s.kind = Kind::OneHot;
    s.num_classes = num_classes;
    s.hot_value = hot_value;
    return s;
}

void write_label_block(Vector& dst, std::size_t feature_len, int label,
                       const LabelScheme& scheme) {
    if (label < 0 || label >= scheme.num_classes) {
        throw ValueError("embed_label: label " + std::to_string(label) +
                         " out of range [0, " +
                         std::to_string(scheme.num_classes) + ")");
    }
    if (dst.size() != scheme.embedded_length(feature_len)) {
        throw DimensionError("write_label_block: destination length",
                             scheme.embedded_length(feature_len), dst.size());
    }
    if (scheme.kind == LabelScheme::Kind::Scalar) {
        dst[feature_len] = static_cast<double>(label);
    } else {
        for (int k = 0; k < scheme.num_classes; ++k) {
            dst[feature_len + static_cast<std::size_t>(k)] =
                k == label ? scheme.hot_value : 0.0;
        }
    }
}

Vector embed_label(const Vector& features, int label, const LabelScheme& scheme) {
    Vector out(scheme.embedded_length(features.size()), 0.0);
    std::copy(features.begin(), features.end(), out.begin());
    write_label_block(out, features.size(), label, scheme);
    return out;
}

std::vector<LabeledSample> generate_xor(int per_combination, double jitter_radius,
                                        std::uint64_t seed) {
    if (per_combination < 1) {
        throw ValueError("generate_xor: per_combination must be >= 1");
    }
    if (!(jitter_radius >= 0.0 && jitter_radius < 1.0)) {
        throw ValueError("generate_xor: jitter_radius must lie in [0, 1)");
    }
    static constexpr double corners[4][2] = {
        {-1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {1.0, -1.0}};

    Rng rng(seed);
    std::vector<LabeledSample> samples;
    samples.reserve(4u * static_cast<std::size_t>(per_combination));
    for (const auto& corner : corners) {
        const int label = corner[0] == corner[1] ? 0 : 1;
        for (int k = 0; k < per_combination; ++k) {
            LabeledSample s;
            s.features = {
                rng.uniform(corner[0] - jitter_radius, corner[0] + jitter_radius),
                rng.uniform(corner[1] - jitter_radius, corner[1] + jitter_radius)};
            s.label = label;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

std::array<double, 2> spiral_point(int cls, double t, double turns) {
    if (cls != 0 && cls != 1) {
        throw ValueError("spiral_point: class must be 0 or 1");
    }
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double phi = two_pi * turns * t;
    // Radius grows linearly to 1 at t = 1, so the noiseless curve stays
    // inside the unit square for any number of turns.
    const double x = t * std::cos(phi);
    const double y = t * std::sin(phi);
    return cls == 0 ? std::array<double, 2>{x, y}
                    : std::array<double, 2>{-x, -y};
}

std::vector<LabeledSample> generate_spirals(int points_per_class, double turns,
                                            double noise_sd, std::uint64_t seed) {
    if (points_per_class < 1) {
        throw ValueError("generate_spirals: points_per_class must be >= 1");
    }
    if (!(turns > 0.0)) {
        throw ValueError("generate_spirals: turns must be > 0");
    }
    if (noise_sd < 0.0) {
        throw ValueError("generate_spirals: noise_sd must be >= 0");
    }
    Rng rng(seed);
    std::vector<LabeledSample> samples;
    samples.reserve(2u * static_cast<std::size_t>(points_per_class));
    for (int cls = 0; cls < 2; ++cls) {
        for (int k = 0; k < points_per_class; ++k) {
            const double t = rng.uniform();
            const auto base = spiral_point(cls, t, turns);
            LabeledSample s;
            s.features = {base[0] + rng.gaussian(0.0, noise_sd),
                          base[1] + rng.gaussian(0.0, noise_sd)};
            s.label = cls;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

namespace {

constexpr std::uint32_t kImageMagic = 2051; // 0x00000803
constexpr std::uint32_t kLabelMagic = 2049; // 0x00000801

std::vector<unsigned char> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read from '" + path + "' failed");
    return bytes;
}

std::uint32_t read_u32_be(const std::vector<unsigned char>& bytes,
                          std::size_t offset, const std::string& path,
                          const std::string& field) {
    if (offset + 4 > bytes.size()) {
        throw FormatError("'" + path + "': truncated while reading " + field +
                          " (need 4 bytes, file has " +
                          std::to_string(bytes.size()) + ")",
                          offset);
    }
    return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
           static_cast<std::uint32_t>(bytes[offset + 3]);
}

} // namespace

std::vector<ImageGrid> load_mnist_images(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    const std::uint32_t magic = read_u32_be(bytes, 0, path, "magic");
    if (magic != kImageMagic) {
        throw FormatError("'" + path + "': bad magic " + std::to_string(magic) +
                          ", expected " + std::to_string(kImageMagic) +
                          " (IDX3 images)",
                          0);
    }
    const std::uint32_t count = read_u32_be(bytes, 4, path, "image count");
    const std::uint32_t rows = read_u32_be(bytes, 8, path, "row count");
    const std::uint32_t cols = read_u32_be(bytes, 12, path, "column count");
    if (rows != ImageGrid::kHeight) {
        throw FormatError("'" + path + "': row count " + std::to_string(rows) +
                          ", expected 28",
                          8);
    }
    if (cols != ImageGrid::kWidth) {
        throw FormatError("'" + path + "': column count " + std::to_string(cols) +
                          ", expected 28",
                          12);
    }
    const std::size_t expected = 16u + static_cast<std::size_t>(count) * ImageGrid::kPixels;
    if (bytes.size() < expected) {
        throw FormatError("'" + path + "': truncated pixel data, expected " +
                          std::to_string(expected) + " bytes, file has " +
                          std::to_string(bytes.size()),
                          bytes.size());
    }
    if (bytes.size() > expected) {
        throw FormatError("'" + path + "': " +
                          std::to_string(bytes.size() - expected) +
                          " unexpected trailing bytes",
                          expected);
    }

    std::vector<ImageGrid> images(count);
    std::size_t offset = 16;
    for (std::uint32_t n = 0; n < count; ++n) {
        for (int p = 0; p < ImageGrid::kPixels; ++p, ++offset) {
            images[n].pixels[static_cast<std::size_t>(p)] =
                static_cast<double>(bytes[offset]) / 255.0;
        }
    }
    return images;
}

std::vector<int> load_mnist_labels(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    const std::uint32_t magic = read_u32_be(bytes, 0, path, "magic");
    if (magic != kLabelMagic) {
        throw FormatError("'" + path + "': bad magic " + std::to_string(magic) +
                          ", expected " + std::to_string(kLabelMagic) +
                          " (IDX1 labels)",
                          0);
    }
    const std::uint32_t count = read_u32_be(bytes, 4, path, "label count");
    const std::size_t expected = 8u + count;
    if (bytes.size() < expected) {
        throw FormatError("'" + path + "': truncated label data, expected " +
                          std::to_string(expected) + " bytes, file has " +
                          std::to_string(bytes.size()),
                          bytes.size());
    }
    if (bytes.size() > expected) {
        throw FormatError("'" + path + "': " +
                          std::to_string(bytes.size() - expected) +
                          " unexpected trailing bytes",
                          expected);
    }

    std::vector<int> labels(count);
    for (std::uint32_t n = 0; n < count; ++n) {
        const unsigned char value = bytes[8u + n];
        if (value > 9) {
            throw FormatError("'" + path + "': label value " +
                              std::to_string(value) + " outside 0..9",
                              8u + n);
        }
        labels[n] = value;
    }
    return labels;
}

std::vector<LabeledSample> make_labeled(const std::vector<ImageGrid>& images,
                                        const std::vector<int>& labels) {
    if (images.size() != labels.size()) {
        throw DimensionError("make_labeled: image/label counts differ",
                             images.size(), labels.size());
    }
    std::vector<LabeledSample> samples(images.size());
    for (std::size_t n = 0; n < images.size(); ++n) {
        samples[n].features = images[n].pixels;
        samples[n].label = labels[n];
    }
    return samples;
}

Vector jitter_features(const Vector& pixels, int dx, int dy) {
    if (pixels.size() != ImageGrid::kPixels) {
        throw DimensionError("jitter: pixel vector must be 28x28",
                             ImageGrid::kPixels, pixels.size());
    }
    if (dx < -2 || dx > 2 || dy < -2 || dy > 2) {
        throw ValueError("jitter: shift (" + std::to_string(dx) + ", " +
                         std::to_string(dy) + ") exceeds +-2 pixels");
    }
    Vector out(ImageGrid::kPixels, 0.0);
    for (int y = 0; y < ImageGrid::kHeight; ++y) {
        const int sy = y - dy;
        if (sy < 0 || sy >= ImageGrid::kHeight) continue;
        for (int x = 0; x < ImageGrid::kWidth; ++x) {
            const int sx = x - dx;
            if (sx < 0 || sx >= ImageGrid::kWidth) continue;
            out[static_cast<std::size_t>(y) * ImageGrid::kWidth + x] =
                pixels[static_cast<std::size_t>(sy) * ImageGrid::kWidth + sx];
        }
    }
    return out;
}

ImageGrid jitter_image(const ImageGrid& img, int dx, int dy) {
    ImageGrid out;
    out.pixels = jitter_features(img.pixels, dx, dy);
    return out;
}

int sample_wrong_label(int true_label, int num_classes, Rng& rng) {
    if (num_classes < 2) {
        throw ValueError("sample_wrong_label: need at least 2 classes");
    }
    if (true_label < 0 || true_label >= num_classes) {
        throw ValueError("sample_wrong_label: true_label " +
                         std::to_string(true_label) + " out of range [0, " +
                         std::to_string(num_classes) + ")");
    }
    const auto r = static_cast<int>(rng.uniform_int(0, num_classes - 2));
    return r < true_label ? r : r + 1;
}

void write_samples_csv(const std::vector<LabeledSample>& samples,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "x1,x2,label\n";
    char buf[80];
    for (const auto& s : samples) {
        if (s.features.size() != 2) {
            throw ValueError("write_samples_csv: samples must be 2-d, got length " +
                             std::to_string(s.features.size()));
        }
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d\n", s.features[0],
                      s.features[1], s.label);
        out << buf;
    }
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace ffp
