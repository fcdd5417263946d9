#ifndef FFP_OPTIM_HPP
#define FFP_OPTIM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ffp/model.hpp"

namespace ffp {

struct AdamConfig {
    double learning_rate = 0.0003; // the paper's value; betas/epsilon are the
    double beta1 = 0.9;            // standard Adam defaults
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

void validate(const AdamConfig& cfg);

// Moment estimates over a flat parameter view: weights row-major, then
// biases. t counts completed steps.
struct AdamState {
    std::size_t outputs = 0;
    std::size_t inputs = 0;
    std::vector<double> m;
    std::vector<double> v;
    std::int64_t t = 0;

    std::size_t parameter_count() const { return outputs * inputs + outputs; }
};

AdamState adam_init(std::size_t outputs, std::size_t inputs);

// One bias-corrected update over weights and biases jointly:
//   t <- t+1; m <- b1*m + (1-b1)*g; v <- b2*v + (1-b2)*g^2
//   p <- p - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
void adam_step(PerceptronModel& model, const Gradients& grads, AdamState& state,
               const AdamConfig& cfg);

// Text format companion to the model file, for resumable training:
//   adam v1 <outputs> <inputs> <t>
//   <m v> one pair per line, parameters in flat-view order
void save_adam_state(const AdamState& state, std::ostream& out);
void save_adam_state(const AdamState& state, const std::string& path);
AdamState load_adam_state(std::istream& in);
AdamState load_adam_state(const std::string& path);

} // namespace ffp

#endif
