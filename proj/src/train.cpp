#include "ffp/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <thread>

namespace ffp {

double TrainResult::best_test_error() const {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (const auto& m : history) {
        if (std::isnan(m.test_error)) continue;
        if (std::isnan(best) || m.test_error < best) best = m.test_error;
    }
    return best;
}

namespace {

void validate_train_inputs(const PerceptronModel& model,
                           const std::vector<LabeledSample>& train_data,
                           const TrainConfig& cfg) {
    if (cfg.batch_size < 1) throw ValueError("train: batch_size must be >= 1");
    if (cfg.epochs < 1) throw ValueError("train: epochs must be >= 1");
    if (!std::isfinite(cfg.theta)) throw ValueError("train: theta must be finite");
    if (train_data.empty()) throw ValueError("train: empty training set");
    validate(cfg.adam);

    const std::size_t feature_len = train_data.front().features.size();
    for (const auto& s : train_data) {
        if (s.features.size() != feature_len) {
            throw DimensionError("train: samples disagree on feature length",
                                 feature_len, s.features.size());
        }
        if (s.label < 0 || s.label >= cfg.label_scheme.num_classes) {
            throw ValueError("train: label " + std::to_string(s.label) +
                             " out of range [0, " +
                             std::to_string(cfg.label_scheme.num_classes) + ")");
        }
    }
    const std::size_t embedded = cfg.label_scheme.embedded_length(feature_len);
    if (embedded != model.inputs()) {
        throw DimensionError("train: embedded input length vs model inputs",
                             model.inputs(), embedded);
    }
    if (cfg.augment && feature_len != ImageGrid::kPixels) {
        throw ValueError("train: augmentation needs 28x28 image features, got length " +
                         std::to_string(feature_len));
    }
}

} // namespace

TrainResult train(PerceptronModel& model, AdamState& state,
                  const std::vector<LabeledSample>& train_data,
                  const std::vector<LabeledSample>& test_data,
                  const TrainConfig& cfg, const EpochCallback& on_epoch) {
    validate_train_inputs(model, train_data, cfg);

    const int num_classes = cfg.label_scheme.num_classes;
    const std::size_t n = train_data.size();
    const std::size_t feature_len = train_data.front().features.size();
    const std::size_t batch = static_cast<std::size_t>(cfg.batch_size);

    // Stream 1 keeps the training draws apart from the stream-0 draws the
    // caller used to initialize the weights from the same seed.
    Rng rng(cfg.seed, 1);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    Gradients acc = make_gradients(model);
    Vector embedded(model.inputs(), 0.0);
    std::vector<Vector> batch_features(batch);

    TrainResult result;
    result.history.reserve(static_cast<std::size_t>(cfg.epochs));

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        shuffle(order, rng);
        double loss_sum = 0.0;
        std::int64_t epoch_terms = 0;

        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t b = std::min(batch, n - start);
            const double terms = cfg.bad_pass_enabled
                                     ? 2.0 * static_cast<double>(b)
                                     : static_cast<double>(b);
            const double scale = 1.0 / terms;
            acc.zero();
            int good_terms = 0;
            int bad_terms = 0;

            // Good pass over the whole mini-batch first.
            for (std::size_t k = 0; k < b; ++k) {
                const LabeledSample& s = train_data[order[start + k]];
                if (cfg.augment) {
                    const int dx = static_cast<int>(rng.uniform_int(-2, 2));
                    const int dy = static_cast<int>(rng.uniform_int(-2, 2));
                    batch_features[k] = jitter_features(s.features, dx, dy);
                } else {
                    batch_features[k] = s.features;
                }
                std::copy(batch_features[k].begin(), batch_features[k].end(),
                          embedded.begin());
                write_label_block(embedded, feature_len, s.label, cfg.label_scheme);
                loss_sum += backward_accumulate(model, embedded, cfg.theta,
                                                cfg.goodness_mode, Polarity::Good,
                                                scale, acc);
                ++good_terms;
            }

            // Then the bad pass: same (jittered) images, fresh wrong labels.
            if (cfg.bad_pass_enabled) {
                for (std::size_t k = 0; k < b; ++k) {
                    const LabeledSample& s = train_data[order[start + k]];
                    const int wrong = sample_wrong_label(s.label, num_classes, rng);
                    std::copy(batch_features[k].begin(), batch_features[k].end(),
                              embedded.begin());
                    write_label_block(embedded, feature_len, wrong, cfg.label_scheme);
                    loss_sum += backward_accumulate(model, embedded, cfg.theta,
                                                    cfg.goodness_mode, Polarity::Bad,
                                                    scale, acc);
                    ++bad_terms;
                }
            }

            adam_step(model, acc, state, cfg.adam);
            result.optimizer_steps += 1;
            result.gradient_terms += good_terms + bad_terms;
            epoch_terms += good_terms + bad_terms;
            if (cfg.record_step_terms) {
                result.step_terms.emplace_back(good_terms, bad_terms);
            }
        }

        EpochMetrics metrics;
        metrics.epoch = epoch;
        metrics.mean_loss = loss_sum / static_cast<double>(epoch_terms);
        metrics.train_accuracy =
            evaluate(model, train_data, num_classes, cfg.label_scheme,
                     cfg.goodness_mode, cfg.eval_threads)
                .accuracy;
        if (!test_data.empty()) {
            const EvalReport test = evaluate(model, test_data, num_classes,
                                             cfg.label_scheme, cfg.goodness_mode,
                                             cfg.eval_threads);
            metrics.test_error = test.error_rate;
            metrics.mean_good_goodness = test.mean_good_goodness;
            metrics.mean_bad_goodness = test.mean_bad_goodness;
        } else {
            metrics.test_error = std::numeric_limits<double>::quiet_NaN();
            metrics.mean_good_goodness = std::numeric_limits<double>::quiet_NaN();
            metrics.mean_bad_goodness = std::numeric_limits<double>::quiet_NaN();
        }
        result.history.push_back(metrics);
        if (on_epoch) on_epoch(metrics, model, state);
    }
    return result;
}

Classification classify(const PerceptronModel& model, const Vector& features,
                        int num_classes, const LabelScheme& scheme,
                        GoodnessMode mode) {
    if (num_classes < 2) throw ValueError("classify: need at least 2 classes");
    if (num_classes != scheme.num_classes) {
        throw ValueError("classify: num_classes " + std::to_string(num_classes) +
                         " disagrees with label scheme (" +
                         std::to_string(scheme.num_classes) + ")");
    }
    const std::size_t embedded_len = scheme.embedded_length(features.size());
    if (embedded_len != model.inputs()) {
        throw DimensionError("classify: embedded input length vs model inputs",
                             model.inputs(), embedded_len);
    }

    Vector embedded(embedded_len, 0.0);
    std::copy(features.begin(), features.end(), embedded.begin());

    Classification out;
    out.goodness_per_label.resize(static_cast<std::size_t>(num_classes));
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < num_classes; ++k) {
        write_label_block(embedded, features.size(), k, scheme);
        const Vector y = forward(model, embedded);
        const double g = goodness(y, mode);
        out.goodness_per_label[static_cast<std::size_t>(k)] = g;
        if (g > best) { // strict: ties keep the smallest label index
            best = g;
            out.label = k;
        }
    }
    return out;
}

EvalReport evaluate(const PerceptronModel& model,
                    const std::vector<LabeledSample>& data, int num_classes,
                    const LabelScheme& scheme, GoodnessMode mode, int threads) {
    if (data.empty()) throw ValueError("evaluate: empty dataset");
    if (threads < 1) threads = 1;

    const std::size_t n = data.size();
    std::vector<int> predicted(n, 0);
    std::vector<double> good_goodness(n, 0.0);
    std::vector<double> bad_goodness(n, 0.0); // mean over wrong labels

    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Classification c =
                classify(model, data[i].features, num_classes, scheme, mode);
            predicted[i] = c.label;
            const auto true_label = static_cast<std::size_t>(data[i].label);
            good_goodness[i] = c.goodness_per_label[true_label];
            double wrong_sum = 0.0;
            for (std::size_t k = 0; k < c.goodness_per_label.size(); ++k) {
                if (k != true_label) wrong_sum += c.goodness_per_label[k];
            }
            bad_goodness[i] = wrong_sum / static_cast<double>(num_classes - 1);
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (workers <= 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    // Fixed-order reduction keeps the report identical for any thread count.
    EvalReport report;
    report.num_classes = num_classes;
    report.confusion.assign(
        static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(num_classes), 0);
    std::int64_t correct = 0;
    double good_sum = 0.0;
    double bad_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int true_label = data[i].label;
        if (true_label < 0 || true_label >= num_classes) {
            throw ValueError("evaluate: label " + std::to_string(true_label) +
                             " out of range [0, " + std::to_string(num_classes) + ")");
        }
        report.confusion[static_cast<std::size_t>(true_label) *
                             static_cast<std::size_t>(num_classes) +
                         static_cast<std::size_t>(predicted[i])] += 1;
        if (predicted[i] == true_label) ++correct;
        good_sum += good_goodness[i];
        bad_sum += bad_goodness[i];
    }
    report.total = static_cast<std::int64_t>(n);
    report.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    report.error_rate = 1.0 - report.accuracy;
    report.mean_good_goodness = good_sum / static_cast<double>(n);
    report.mean_bad_goodness = bad_sum / static_cast<double>(n);
    return report;
}

ClassMap render_classification_map(const PerceptronModel& model, int num_classes,
                                   const LabelScheme& scheme, GoodnessMode mode,
                                   double x_min, double x_max, double y_min,
                                   double y_max, int resolution) {
    if (resolution < 2) {
        throw ValueError("render_classification_map: resolution must be >= 2");
    }
    if (scheme.embedded_length(2) != model.inputs()) {
        throw DimensionError(
            "render_classification_map: model does not take a 2-d feature space",
            model.inputs(), scheme.embedded_length(2));
    }
    if (!(x_max > x_min) || !(y_max > y_min)) {
        throw ValueError("render_classification_map: empty coordinate range");
    }

    ClassMap map;
    map.resolution = resolution;
    map.labels.resize(static_cast<std::size_t>(resolution) *
                      static_cast<std::size_t>(resolution));
    const double dx = (x_max - x_min) / static_cast<double>(resolution - 1);
    const double dy = (y_max - y_min) / static_cast<double>(resolution - 1);
    Vector features(2, 0.0);
    for (int iy = 0; iy < resolution; ++iy) {
        features[1] = y_max - dy * iy; // row 0 is the top of the image
        for (int ix = 0; ix < resolution; ++ix) {
            features[0] = x_min + dx * ix;
            map.labels[static_cast<std::size_t>(iy) *
                           static_cast<std::size_t>(resolution) +
                       static_cast<std::size_t>(ix)] =
                classify(model, features, num_classes, scheme, mode).label;
        }
    }
    return map;
}

void write_metrics_csv(const std::vector<EpochMetrics>& history,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "epoch,mean_loss,train_accuracy,test_error,"
           "mean_good_goodness,mean_bad_goodness\n";
    char buf[256];
    for (const auto& m : history) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      m.epoch, m.mean_loss, m.train_accuracy, m.test_error,
                      m.mean_good_goodness, m.mean_bad_goodness);
        out << buf;
    }
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace ffp
