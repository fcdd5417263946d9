#include "ffp/experiments.hpp"

namespace ffp {

XorSetup default_xor_setup() {
    XorSetup setup;
    setup.train.adam.learning_rate = 0.0003;
    setup.train.theta = 1.0;
    setup.train.goodness_mode = GoodnessMode::SumSquares;
    setup.train.batch_size = 4; // the four corner cases form one mini-batch
    setup.train.epochs = 20000;
    setup.train.label_scheme = LabelScheme::scalar(2);
    setup.train.seed = 1;
    setup.train.outputs = 4;
    setup.train.activation = Activation::leaky_relu(0.01);
    return setup;
}

SpiralSetup default_spiral_setup() {
    SpiralSetup setup;
    setup.train.adam.learning_rate = 0.0003;
    setup.train.theta = 1.0;
    setup.train.goodness_mode = GoodnessMode::SumSquares;
    setup.train.batch_size = 10;
    setup.train.epochs = 300;
    setup.train.label_scheme = LabelScheme::scalar(2);
    setup.train.seed = 1;
    setup.train.outputs = 32;
    setup.train.activation = Activation::leaky_relu(0.01);
    return setup;
}

MnistSetup default_mnist_setup() {
    MnistSetup setup;
    setup.train.adam.learning_rate = 0.0003;
    setup.train.theta = 10.0;
    setup.train.goodness_mode = GoodnessMode::MeanSquares;
    setup.train.batch_size = 10;
    setup.train.epochs = 80;
    setup.train.label_scheme = LabelScheme::one_hot(10, 1.0);
    setup.train.seed = 1;
    setup.train.outputs = 125;
    setup.train.activation = Activation::relu();
    return setup;
}

RunOutput run_training(const TrainConfig& cfg, std::size_t feature_len,
                       const std::vector<LabeledSample>& train_data,
                       const std::vector<LabeledSample>& test_data,
                       const EpochCallback& on_epoch) {
    RunOutput out;
    out.model = make_model(cfg.outputs, cfg.label_scheme.embedded_length(feature_len),
                           cfg.activation);
    Rng init_rng(cfg.seed, 0);
    init_uniform(out.model, init_rng);
    out.state = adam_init(out.model.outputs(), out.model.inputs());
    out.result = train(out.model, out.state, train_data, test_data, cfg, on_epoch);
    return out;
}

} // namespace ffp
