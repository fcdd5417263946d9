// ffp — a single multi-output perceptron trained with the Forward-Forward
// procedure: goodness is pushed above a threshold for correctly labelled
// inputs and below it for incorrectly labelled ones. Subcommands run the
// XOR, two-spirals and MNIST experiments, evaluate saved models, and render
// classification maps.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ffp/experiments.hpp"
#include "ffp/ppm.hpp"

namespace fs = std::filesystem;

namespace {

struct OutputFlags {
    std::string out_dir = ".";
    int checkpoint_every = 0; // 0 disables checkpoints
    int map_resolution = 256;
    int threads = 1;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags, bool with_map) {
    cmd->add_option("--out-dir", flags.out_dir,
                    "Directory for artifacts [default-choice]")
        ->capture_default_str();
    cmd->add_option("--checkpoint-every", flags.checkpoint_every,
                    "Save model+optimizer every N epochs, 0 = off [default-choice]")
        ->capture_default_str();
    if (with_map) {
        cmd->add_option("--map-resolution", flags.map_resolution,
                        "Classification map resolution per axis [default-choice]")
            ->capture_default_str();
    }
    cmd->add_option("--threads", flags.threads,
                    "Evaluation threads; results are identical for any count "
                    "[default-choice]")
        ->capture_default_str();
}

std::string activation_flag;
double slope_flag = 0.01;
std::string goodness_flag;

void add_model_flags(CLI::App* cmd, ffp::TrainConfig& cfg,
                     const std::string& outputs_tag,
                     const std::string& activation_default,
                     const std::string& activation_tag,
                     const std::string& goodness_default,
                     const std::string& goodness_tag) {
    cmd->add_option("--outputs", cfg.outputs,
                    "Number of output units " + outputs_tag)
        ->capture_default_str();
    activation_flag = activation_default;
    cmd->add_option("--activation", activation_flag,
                    "Activation: relu|leaky|tanh|identity " + activation_tag)
        ->capture_default_str();
    cmd->add_option("--slope", slope_flag,
                    "LeakyReLU negative slope [default-choice]")
        ->capture_default_str();
    goodness_flag = goodness_default;
    cmd->add_option("--goodness", goodness_flag,
                    "Goodness: sum|mean of squared outputs " + goodness_tag)
        ->capture_default_str();
}

void add_optim_flags(CLI::App* cmd, ffp::TrainConfig& cfg,
                     const std::string& theta_tag,
                     const std::string& batch_tag,
                     const std::string& epochs_tag) {
    cmd->add_option("--lr", cfg.adam.learning_rate, "Adam learning rate [paper]")
        ->capture_default_str();
    cmd->add_option("--theta", cfg.theta, "Goodness threshold " + theta_tag)
        ->capture_default_str();
    cmd->add_option("--batch-size", cfg.batch_size, "Mini-batch size " + batch_tag)
        ->capture_default_str();
    cmd->add_option("--epochs", cfg.epochs, "Training epochs " + epochs_tag)
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed,
                    "Seed for init, shuffling, wrong labels and jitter "
                    "[default-choice]")
        ->capture_default_str();
}

void finalize_config(ffp::TrainConfig& cfg, const OutputFlags& out) {
    cfg.activation = ffp::activation_from_name(activation_flag, slope_flag);
    cfg.goodness_mode = ffp::goodness_mode_from_name(goodness_flag);
    cfg.eval_threads = out.threads;
}

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ffp::IoError("cannot create output directory '" + out_dir +
                           "': " + ec.message());
    }
    return dir;
}

ffp::EpochCallback make_epoch_logger(const fs::path& dir,
                                     const std::string& prefix,
                                     int checkpoint_every, int total_epochs) {
    return [dir, prefix, checkpoint_every, total_epochs](
               const ffp::EpochMetrics& m, const ffp::PerceptronModel& model,
               const ffp::AdamState& state) {
        std::printf("epoch %d/%d  loss %.6f  train_acc %.4f  test_err %.4f\n",
                    m.epoch, total_epochs, m.mean_loss, m.train_accuracy,
                    m.test_error);
        std::fflush(stdout);
        if (checkpoint_every > 0 && m.epoch % checkpoint_every == 0) {
            char tag[32];
            std::snprintf(tag, sizeof(tag), "_epoch%05d.txt", m.epoch);
            ffp::save_model(model, (dir / (prefix + "_model" + tag)).string());
            ffp::save_adam_state(state, (dir / (prefix + "_adam" + tag)).string());
        }
    };
}

void write_run_artifacts(const fs::path& dir, const std::string& prefix,
                         const ffp::RunOutput& run) {
    ffp::save_model(run.model, (dir / (prefix + "_model.txt")).string());
    ffp::save_adam_state(run.state, (dir / (prefix + "_adam.txt")).string());
    ffp::write_metrics_csv(run.result.history,
                           (dir / (prefix + "_metrics.csv")).string());
}

void write_map_artifact(const fs::path& dir, const std::string& prefix,
                        const ffp::RunOutput& run, const ffp::TrainConfig& cfg,
                        double lo, double hi, int resolution) {
    const ffp::ClassMap map = ffp::render_classification_map(
        run.model, cfg.label_scheme.num_classes, cfg.label_scheme,
        cfg.goodness_mode, lo, hi, lo, hi, resolution);
    ffp::write_map_image(map, (dir / (prefix + "_map.ppm")).string());
}

int run_xor(ffp::XorSetup setup, const OutputFlags& out) {
    finalize_config(setup.train, out);
    const fs::path dir = prepare_out_dir(out.out_dir);

    const auto data = ffp::generate_xor(setup.per_combination,
                                        setup.jitter_radius, setup.train.seed);
    const auto corners = ffp::generate_xor(1, 0.0, setup.train.seed);
    ffp::write_samples_csv(data, (dir / "xor_train_data.csv").string());

    const auto logger = make_epoch_logger(dir, "xor", out.checkpoint_every,
                                          setup.train.epochs);
    const auto quiet = [&](const ffp::EpochMetrics& m,
                           const ffp::PerceptronModel& model,
                           const ffp::AdamState& state) {
        // One step per epoch makes per-epoch printing noise; log sparsely.
        if (m.epoch % 1000 == 0 || m.epoch == setup.train.epochs) {
            logger(m, model, state);
        } else if (out.checkpoint_every > 0 && m.epoch % out.checkpoint_every == 0) {
            logger(m, model, state);
        }
    };
    const auto run = ffp::run_training(setup.train, 2, data, corners, quiet);

    write_run_artifacts(dir, "xor", run);
    write_map_artifact(dir, "xor", run, setup.train, setup.map_min,
                       setup.map_max, out.map_resolution);

    int correct = 0;
    for (const auto& c : corners) {
        const auto cls = ffp::classify(run.model, c.features,
                                       setup.train.label_scheme.num_classes,
                                       setup.train.label_scheme,
                                       setup.train.goodness_mode);
        correct += cls.label == c.label ? 1 : 0;
    }
    std::printf("trainable parameters: %zu\n", run.model.parameter_count());
    std::printf("corner cases correct: %d/4\n", correct);
    std::printf("final train accuracy: %.4f\n",
                run.result.history.back().train_accuracy);
    return 0;
}

int run_spiral(ffp::SpiralSetup setup, const OutputFlags& out) {
    finalize_config(setup.train, out);
    const fs::path dir = prepare_out_dir(out.out_dir);

    const auto data = ffp::generate_spirals(setup.points_per_class, setup.turns,
                                            setup.noise_sd, setup.train.seed);
    // Held-out points are freshly generated from a shifted seed.
    const auto held_out = ffp::generate_spirals(setup.points_per_class, setup.turns,
                                                setup.noise_sd, setup.train.seed + 1);
    ffp::write_samples_csv(data, (dir / "spiral_train_data.csv").string());

    std::printf("trainable parameters: %zu\n",
                setup.train.outputs *
                        setup.train.label_scheme.embedded_length(2) +
                    setup.train.outputs);
    const auto run = ffp::run_training(
        setup.train, 2, data, held_out,
        make_epoch_logger(dir, "spiral", out.checkpoint_every, setup.train.epochs));

    write_run_artifacts(dir, "spiral", run);
    write_map_artifact(dir, "spiral", run, setup.train, setup.map_min,
                       setup.map_max, out.map_resolution);

    std::printf("held-out accuracy: %.4f\n",
                1.0 - run.result.history.back().test_error);
    return 0;
}

struct MnistPaths {
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;
};

std::string resolve_idx_path(const std::string& flag_value,
                             const char* standard_name) {
    if (!flag_value.empty()) return flag_value;
    if (const char* root = std::getenv("FFP_DATA_DIR")) {
        return (fs::path(root) / standard_name).string();
    }
    throw ffp::ValueError(std::string("no path given for ") + standard_name +
                          " and FFP_DATA_DIR is not set");
}

int run_mnist(ffp::MnistSetup setup, MnistPaths paths, const OutputFlags& out,
              double hot_value) {
    finalize_config(setup.train, out);
    setup.train.label_scheme = ffp::LabelScheme::one_hot(10, hot_value);
    const fs::path dir = prepare_out_dir(out.out_dir);

    const auto train_images = ffp::load_mnist_images(
        resolve_idx_path(paths.train_images, "train-images-idx3-ubyte"));
    const auto train_labels = ffp::load_mnist_labels(
        resolve_idx_path(paths.train_labels, "train-labels-idx1-ubyte"));
    const auto test_images = ffp::load_mnist_images(
        resolve_idx_path(paths.test_images, "t10k-images-idx3-ubyte"));
    const auto test_labels = ffp::load_mnist_labels(
        resolve_idx_path(paths.test_labels, "t10k-labels-idx1-ubyte"));

    const auto train_data = ffp::make_labeled(train_images, train_labels);
    const auto test_data = ffp::make_labeled(test_images, test_labels);
    std::printf("loaded %zu training and %zu test images\n", train_data.size(),
                test_data.size());
    std::printf("trainable parameters: %zu\n",
                setup.train.outputs *
                        setup.train.label_scheme.embedded_length(
                            ffp::ImageGrid::kPixels) +
                    setup.train.outputs);

    const auto run = ffp::run_training(
        setup.train, ffp::ImageGrid::kPixels, train_data, test_data,
        make_epoch_logger(dir, "mnist", out.checkpoint_every, setup.train.epochs));

    write_run_artifacts(dir, "mnist", run);
    std::printf("final test error: %.4f  best test error: %.4f\n",
                run.result.history.back().test_error,
                run.result.best_test_error());
    return 0;
}

int run_classify_map(const std::string& model_path, int classes,
                     const std::string& scheme_name, double hot_value,
                     const std::string& goodness_name, double x_min, double x_max,
                     double y_min, double y_max, int resolution,
                     const std::string& out_path) {
    const auto model = ffp::load_model(model_path);
    const auto scheme = scheme_name == "onehot"
                            ? ffp::LabelScheme::one_hot(classes, hot_value)
                            : ffp::LabelScheme::scalar(classes);
    const auto mode = ffp::goodness_mode_from_name(goodness_name);
    const auto map = ffp::render_classification_map(model, classes, scheme, mode,
                                                    x_min, x_max, y_min, y_max,
                                                    resolution);
    ffp::write_map_image(map, out_path);
    std::printf("wrote %dx%d map to %s\n", resolution, resolution,
                out_path.c_str());
    return 0;
}

void print_report(const ffp::EvalReport& report) {
    std::printf("samples:            %lld\n",
                static_cast<long long>(report.total));
    std::printf("accuracy:           %.6f\n", report.accuracy);
    std::printf("error rate:         %.6f\n", report.error_rate);
    std::printf("mean good goodness: %.6f\n", report.mean_good_goodness);
    std::printf("mean bad goodness:  %.6f\n", report.mean_bad_goodness);
    std::printf("confusion (rows = true, cols = predicted):\n");
    for (int t = 0; t < report.num_classes; ++t) {
        for (int p = 0; p < report.num_classes; ++p) {
            std::printf("%8lld", static_cast<long long>(report.confusion_at(t, p)));
        }
        std::printf("\n");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Forward-Forward single perceptron: goodness-based classification "
        "with a single matrix multiplication.\n"
        "Flag defaults marked [paper] follow the published experiments; "
        "[default-choice] marks values the paper leaves open."};
    app.require_subcommand(1);

    // --- xor ---
    auto xor_setup = ffp::default_xor_setup();
    OutputFlags xor_out;
    auto* xor_cmd = app.add_subcommand(
        "xor", "Train on the four XOR corner cases and render the map");
    add_model_flags(xor_cmd, xor_setup.train, "[default-choice]", "leaky",
                    "[default-choice]", "sum", "[paper]");
    add_optim_flags(xor_cmd, xor_setup.train, "[default-choice]",
                    "[default-choice]", "[default-choice]");
    xor_cmd->add_option("--per-combination", xor_setup.per_combination,
                        "Samples per corner [default-choice]")
        ->capture_default_str();
    xor_cmd->add_option("--jitter-radius", xor_setup.jitter_radius,
                        "Uniform jitter around each corner [default-choice]")
        ->capture_default_str();
    add_output_flags(xor_cmd, xor_out, true);

    // --- spiral ---
    auto spiral_setup = ffp::default_spiral_setup();
    OutputFlags spiral_out;
    auto* spiral_cmd = app.add_subcommand(
        "spiral", "Train on two noisy spirals and render the map");
    add_model_flags(spiral_cmd, spiral_setup.train, "[paper]", "leaky", "[paper]",
                    "sum", "[paper]");
    add_optim_flags(spiral_cmd, spiral_setup.train, "[default-choice]",
                    "[default-choice]", "[default-choice]");
    spiral_cmd->add_option("--points-per-class", spiral_setup.points_per_class,
                           "Training points per class [default-choice]")
        ->capture_default_str();
    spiral_cmd->add_option("--turns", spiral_setup.turns,
                           "Spiral turns [default-choice]")
        ->capture_default_str();
    spiral_cmd->add_option("--noise-sd", spiral_setup.noise_sd,
                           "Gaussian coordinate noise [default-choice]")
        ->capture_default_str();
    add_output_flags(spiral_cmd, spiral_out, true);

    // --- mnist ---
    auto mnist_setup = ffp::default_mnist_setup();
    OutputFlags mnist_out;
    MnistPaths mnist_paths;
    double hot_value = 1.0;
    auto* mnist_cmd = app.add_subcommand(
        "mnist", "Train a digit classifier from IDX files");
    add_model_flags(mnist_cmd, mnist_setup.train, "[paper]", "relu", "[paper]",
                    "mean", "[paper]");
    add_optim_flags(mnist_cmd, mnist_setup.train, "[paper]", "[paper]", "[paper]");
    mnist_cmd->add_flag("--augment", mnist_setup.train.augment,
                        "Jitter images up to 2 pixels per presentation [paper]");
    mnist_cmd->add_option("--hot-value", hot_value,
                          "One-hot label input magnitude [default-choice]")
        ->capture_default_str();
    mnist_cmd->add_option("--train-images", mnist_paths.train_images,
                          "IDX3 training images (default $FFP_DATA_DIR/train-images-idx3-ubyte)");
    mnist_cmd->add_option("--train-labels", mnist_paths.train_labels,
                          "IDX1 training labels (default $FFP_DATA_DIR/train-labels-idx1-ubyte)");
    mnist_cmd->add_option("--test-images", mnist_paths.test_images,
                          "IDX3 test images (default $FFP_DATA_DIR/t10k-images-idx3-ubyte)");
    mnist_cmd->add_option("--test-labels", mnist_paths.test_labels,
                          "IDX1 test labels (default $FFP_DATA_DIR/t10k-labels-idx1-ubyte)");
    add_output_flags(mnist_cmd, mnist_out, false);

    // --- classify-map ---
    std::string map_model, map_scheme = "scalar", map_goodness = "sum";
    std::string map_out = "map.ppm";
    int map_classes = 2;
    int map_resolution = 256;
    double map_hot = 1.0;
    double x_min = -1.5, x_max = 1.5, y_min = -1.5, y_max = 1.5;
    auto* map_cmd = app.add_subcommand(
        "classify-map", "Render a classification map from a saved model");
    map_cmd->add_option("--model", map_model, "Saved model file")->required();
    map_cmd->add_option("--classes", map_classes, "Number of classes")
        ->capture_default_str();
    map_cmd->add_option("--scheme", map_scheme, "Label scheme: scalar|onehot")
        ->capture_default_str();
    map_cmd->add_option("--hot-value", map_hot, "One-hot magnitude")
        ->capture_default_str();
    map_cmd->add_option("--goodness", map_goodness, "Goodness: sum|mean")
        ->capture_default_str();
    map_cmd->add_option("--x-min", x_min, "")->capture_default_str();
    map_cmd->add_option("--x-max", x_max, "")->capture_default_str();
    map_cmd->add_option("--y-min", y_min, "")->capture_default_str();
    map_cmd->add_option("--y-max", y_max, "")->capture_default_str();
    map_cmd->add_option("--map-resolution", map_resolution, "Grid points per axis")
        ->capture_default_str();
    map_cmd->add_option("--out", map_out, "Output PPM path")->capture_default_str();

    // --- eval ---
    std::string eval_model, eval_dataset, eval_scheme = "scalar";
    std::string eval_goodness = "sum";
    MnistPaths eval_paths;
    double eval_hot = 1.0;
    std::uint64_t eval_seed = 1;
    int eval_ppc = 1000;
    double eval_turns = 2.0, eval_noise = 0.05;
    int eval_threads = 1;
    auto* eval_cmd = app.add_subcommand(
        "eval", "Evaluate a saved model on MNIST test files or a synthetic set");
    eval_cmd->add_option("--model", eval_model, "Saved model file")->required();
    eval_cmd->add_option("--dataset", eval_dataset,
                         "Synthetic dataset: xor|spiral (omit when using IDX files)");
    eval_cmd->add_option("--scheme", eval_scheme, "Label scheme: scalar|onehot")
        ->capture_default_str();
    eval_cmd->add_option("--hot-value", eval_hot, "One-hot magnitude")
        ->capture_default_str();
    eval_cmd->add_option("--goodness", eval_goodness, "Goodness: sum|mean")
        ->capture_default_str();
    eval_cmd->add_option("--seed", eval_seed, "Synthetic dataset seed")
        ->capture_default_str();
    eval_cmd->add_option("--points-per-class", eval_ppc, "Spiral points per class")
        ->capture_default_str();
    eval_cmd->add_option("--turns", eval_turns, "Spiral turns")->capture_default_str();
    eval_cmd->add_option("--noise-sd", eval_noise, "Spiral noise")
        ->capture_default_str();
    eval_cmd->add_option("--test-images", eval_paths.test_images, "IDX3 test images");
    eval_cmd->add_option("--test-labels", eval_paths.test_labels, "IDX1 test labels");
    eval_cmd->add_option("--threads", eval_threads, "Evaluation threads")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (xor_cmd->parsed()) return run_xor(xor_setup, xor_out);
        if (spiral_cmd->parsed()) return run_spiral(spiral_setup, spiral_out);
        if (mnist_cmd->parsed()) {
            return run_mnist(mnist_setup, mnist_paths, mnist_out, hot_value);
        }
        if (map_cmd->parsed()) {
            return run_classify_map(map_model, map_classes, map_scheme, map_hot,
                                    map_goodness, x_min, x_max, y_min, y_max,
                                    map_resolution, map_out);
        }
        if (eval_cmd->parsed()) {
            const auto model = ffp::load_model(eval_model);
            const auto mode = ffp::goodness_mode_from_name(eval_goodness);
            if (eval_dataset == "xor") {
                const auto data = ffp::generate_xor(1, 0.0, eval_seed);
                print_report(ffp::evaluate(model, data, 2,
                                           ffp::LabelScheme::scalar(2), mode,
                                           eval_threads));
            } else if (eval_dataset == "spiral") {
                const auto data = ffp::generate_spirals(eval_ppc, eval_turns,
                                                        eval_noise, eval_seed);
                print_report(ffp::evaluate(model, data, 2,
                                           ffp::LabelScheme::scalar(2), mode,
                                           eval_threads));
            } else if (!eval_dataset.empty()) {
                throw ffp::ValueError("unknown --dataset '" + eval_dataset +
                                      "' (expected xor|spiral)");
            } else {
                const auto images = ffp::load_mnist_images(
                    resolve_idx_path(eval_paths.test_images, "t10k-images-idx3-ubyte"));
                const auto labels = ffp::load_mnist_labels(
                    resolve_idx_path(eval_paths.test_labels, "t10k-labels-idx1-ubyte"));
                const auto data = ffp::make_labeled(images, labels);
                const auto scheme = eval_scheme == "onehot"
                                        ? ffp::LabelScheme::one_hot(10, eval_hot)
                                        : ffp::LabelScheme::scalar(10);
                print_report(ffp::evaluate(model, data, 10, scheme, mode,
                                           eval_threads));
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
