#ifndef FFP_TRAIN_HPP
#define FFP_TRAIN_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ffp/data.hpp"
#include "ffp/model.hpp"
#include "ffp/optim.hpp"

namespace ffp {

struct TrainConfig {
    AdamConfig adam;                // learning rate 0.0003 plus standard betas
    double theta = 1.0;             // goodness threshold
    GoodnessMode goodness_mode = GoodnessMode::SumSquares;
    int batch_size = 10;
    int epochs = 1;
    LabelScheme label_scheme;
    bool augment = false;           // +-2 pixel jitter, 28x28 features only
    std::uint64_t seed = 1;
    std::size_t outputs = 4;        // model geometry, used by the CLI to build
    Activation activation;          // the model this config trains

    int eval_threads = 1;           // per-epoch evaluation threads; results
                                    // are identical for any thread count

    bool bad_pass_enabled = true;   // diagnostic: false trains on good data only
    bool record_step_terms = false; // capture per-step (good, bad) term counts
};

struct EpochMetrics {
    int epoch = 0;            // 1-based
    double mean_loss = 0.0;   // mean FF loss over all gradient terms
    double train_accuracy = 0.0;
    double test_error = 0.0;
    double mean_good_goodness = 0.0; // test set, true labels
    double mean_bad_goodness = 0.0;  // test set, averaged over wrong labels
};

struct TrainResult {
    std::vector<EpochMetrics> history;
    std::int64_t optimizer_steps = 0;
    std::int64_t gradient_terms = 0;
    // (good terms, bad terms) per optimizer step, when record_step_terms is set.
    std::vector<std::pair<int, int>> step_terms;

    double best_test_error() const;
};

using EpochCallback = std::function<void(const EpochMetrics&,
                                         const PerceptronModel&,
                                         const AdamState&)>;

// The FF protocol. Per epoch: shuffle (seeded); per mini-batch, one Good
// pass over every sample with its true label, then one Bad pass over the
// same samples with freshly drawn wrong labels; gradients are averaged over
// the 2*batch terms and applied in exactly one adam_step. With augment set,
// each image is jittered once per presentation and that jittered image
// feeds both its good and its bad embedding.
TrainResult train(PerceptronModel& model, AdamState& state,
                  const std::vector<LabeledSample>& train_data,
                  const std::vector<LabeledSample>& test_data,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = {});

struct Classification {
    int label = 0;
    Vector goodness_per_label; // indexed by candidate label
};

// Tries every candidate label at the input and returns the one with the
// highest goodness; ties break toward the smallest label index.
Classification classify(const PerceptronModel& model, const Vector& features,
                        int num_classes, const LabelScheme& scheme,
                        GoodnessMode mode);

struct EvalReport {
    double accuracy = 0.0;
    double error_rate = 0.0;
    int num_classes = 0;
    std::vector<std::int64_t> confusion; // [true * num_classes + predicted]
    double mean_good_goodness = 0.0;     // goodness under the true label
    double mean_bad_goodness = 0.0;      // mean goodness over all wrong labels
    std::int64_t total = 0;

    std::int64_t confusion_at(int true_label, int predicted) const {
        return confusion[static_cast<std::size_t>(true_label) *
                             static_cast<std::size_t>(num_classes) +
                         static_cast<std::size_t>(predicted)];
    }
};

// threads > 1 splits the samples across workers; per-sample results land in
// preallocated slots and are reduced in index order, so the report is
// bit-identical for any thread count.
EvalReport evaluate(const PerceptronModel& model,
                    const std::vector<LabeledSample>& data, int num_classes,
                    const LabelScheme& scheme, GoodnessMode mode,
                    int threads = 1);

// Class-index grid over a 2-d feature box. Row 0 holds y_max (image
// convention); x grows left to right. Both axes span their range inclusive.
struct ClassMap {
    int resolution = 0;
    std::vector<int> labels; // row-major, resolution * resolution

    int at(int ix, int iy) const {
        return labels[static_cast<std::size_t>(iy) * static_cast<std::size_t>(resolution) + ix];
    }
};

ClassMap render_classification_map(const PerceptronModel& model, int num_classes,
                                   const LabelScheme& scheme, GoodnessMode mode,
                                   double x_min, double x_max, double y_min,
                                   double y_max, int resolution);

// Schema: epoch,mean_loss,train_accuracy,test_error,mean_good_goodness,mean_bad_goodness
void write_metrics_csv(const std::vector<EpochMetrics>& history,
                       const std::string& path);

} // namespace ffp

#endif
