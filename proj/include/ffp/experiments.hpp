#ifndef FFP_EXPERIMENTS_HPP
#define FFP_EXPERIMENTS_HPP

#include "ffp/train.hpp"

namespace ffp {

// Canonical configurations for the three experiments. The CLI starts from
// these and applies flag overrides; the acceptance suite runs them as-is.

struct XorSetup {
    int per_combination = 1;     // exact corners once each
    double jitter_radius = 0.0;
    double map_min = -1.5;
    double map_max = 1.5;
    TrainConfig train;
};

struct SpiralSetup {
    int points_per_class = 1000;
    double turns = 2.0;
    double noise_sd = 0.05;
    double map_min = -1.2;
    double map_max = 1.2;
    TrainConfig train;
};

struct MnistSetup {
    TrainConfig train;
};

XorSetup default_xor_setup();
SpiralSetup default_spiral_setup();
MnistSetup default_mnist_setup();

// Builds a model for the config's geometry (weights uniform in
// +-1/sqrt(fan_in) from seed stream 0, biases zero), a fresh Adam state,
// and runs the FF protocol.
struct RunOutput {
    PerceptronModel model;
    AdamState state;
    TrainResult result;
};

RunOutput run_training(const TrainConfig& cfg, std::size_t feature_len,
                       const std::vector<LabeledSample>& train_data,
                       const std::vector<LabeledSample>& test_data,
                       const EpochCallback& on_epoch = {});

} // namespace ffp

#endif
