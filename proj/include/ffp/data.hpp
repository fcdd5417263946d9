#ifndef FFP_DATA_HPP
#define FFP_DATA_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ffp/linalg.hpp"
#include "ffp/rng.hpp"

namespace ffp {

// Raw signal plus its class index, before any label embedding.
struct LabeledSample {
    Vector features;
    int label = 0;
};

// How the class label is appended to the feature vector.
//   Scalar: one extra input carrying the label value itself (2-class setups).
//   OneHot: one extra input per class, hot_value at the label's slot.
// num_classes is carried for both kinds; classification needs it either way.
struct LabelScheme {
    enum class Kind { Scalar, OneHot };

    Kind kind = Kind::Scalar;
    int num_classes = 2;
    double hot_value = 1.0;

    static LabelScheme scalar(int num_classes = 2);
    static LabelScheme one_hot(int num_classes, double hot_value = 1.0);

    std::size_t embedded_length(std::size_t feature_len) const {
        return feature_len +
               (kind == Kind::Scalar ? 1u : static_cast<std::size_t>(num_classes));
    }
};

// features ++ label block. The original features occupy a verbatim prefix.
Vector embed_label(const Vector& features, int label, const LabelScheme& scheme);

// In-place variant for hot loops: dst must already have embedded_length
// entries with the feature prefix in place; only the label block is written.
void write_label_block(Vector& dst, std::size_t feature_len, int label,
                       const LabelScheme& scheme);

// Four clusters around the corners (+-1, +-1); label 0 when the corner signs
// agree, 1 when they differ. jitter_radius 0 gives the exact corners.
std::vector<LabeledSample> generate_xor(int per_combination, double jitter_radius,
                                        std::uint64_t seed);

// Noiseless curve point for class 0 or 1 at parameter t in [0,1]:
// radius t, angle 2*pi*turns*t; class 1 is class 0 rotated by pi.
std::array<double, 2> spiral_point(int cls, double t, double turns);

// Two interleaved spirals with Gaussian coordinate noise; t is drawn
// uniformly per point. Labels: 0 (blue curve), 1 (red curve).
std::vector<LabeledSample> generate_spirals(int points_per_class, double turns,
                                            double noise_sd, std::uint64_t seed);

// 28x28 grayscale image, pixels in [0,1], row-major.
struct ImageGrid {
    static constexpr int kWidth = 28;
    static constexpr int kHeight = 28;
    static constexpr int kPixels = kWidth * kHeight;

    Vector pixels = Vector(kPixels, 0.0);

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * kWidth + x]; }
    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * kWidth + x]; }
};

// IDX3 (magic 2051, big-endian) loader; bytes scaled to [0,1] by /255.
std::vector<ImageGrid> load_mnist_images(const std::string& path);

// IDX1 (magic 2049) loader; every label must be in 0..9.
std::vector<int> load_mnist_labels(const std::string& path);

// Pair image and label files into samples; counts must agree.
std::vector<LabeledSample> make_labeled(const std::vector<ImageGrid>& images,
                                        const std::vector<int>& labels);

// Translate by (dx, dy), |dx| <= 2 and |dy| <= 2; pixels shifted past the
// border are discarded and vacated pixels become 0 (background).
ImageGrid jitter_image(const ImageGrid& img, int dx, int dy);

// Same translation applied to a flat 784-pixel feature vector.
Vector jitter_features(const Vector& pixels, int dx, int dy);

// Uniform over the num_classes-1 labels different from true_label.
int sample_wrong_label(int true_label, int num_classes, Rng& rng);

// Inspection export for 2-d synthetic datasets: header "x1,x2,label".
void write_samples_csv(const std::vector<LabeledSample>& samples,
                       const std::string& path);

} // namespace ffp

#endif
