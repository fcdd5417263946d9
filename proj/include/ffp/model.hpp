#ifndef FFP_MODEL_HPP
#define FFP_MODEL_HPP

#include <iosfwd>
#include <string>

#include "ffp/linalg.hpp"
#include "ffp/rng.hpp"

namespace ffp {

enum class ActivationKind { Identity, ReLU, LeakyReLU, Tanh };

// Output nonlinearity applied elementwise to the pre-activations.
// `slope` only matters for LeakyReLU and must lie in (0, 1).
//
// Subgradient convention at the kink: ReLU'(0) = 0, LeakyReLU'(0) = slope.
// A fixed choice keeps gradient checks reproducible.
struct Activation {
    ActivationKind kind = ActivationKind::ReLU;
    double slope = 0.01;

    double apply(double z) const;
    double derivative(double z) const;

    static Activation identity() { return {ActivationKind::Identity, 0.0}; }
    static Activation relu() { return {ActivationKind::ReLU, 0.0}; }
    static Activation leaky_relu(double slope = 0.01);
    static Activation tanh() { return {ActivationKind::Tanh, 0.0}; }

    friend bool operator==(const Activation&, const Activation&) = default;
};

// Token used in CLI flags and model files: identity|relu|leaky|tanh.
std::string activation_name(const Activation& a);
Activation activation_from_name(const std::string& name, double slope = 0.01);

enum class GoodnessMode { SumSquares, MeanSquares };
enum class Polarity { Good, Bad };

std::string goodness_mode_name(GoodnessMode mode);
GoodnessMode goodness_mode_from_name(const std::string& name);

// The whole learnable system: y = activation(W x + b).
struct PerceptronModel {
    Matrix weights; // outputs x inputs
    Vector bias;    // outputs
    Activation activation;

    std::size_t outputs() const { return weights.rows; }
    std::size_t inputs() const { return weights.cols; }
    std::size_t parameter_count() const { return weights.data.size() + bias.size(); }
};

PerceptronModel make_model(std::size_t outputs, std::size_t inputs, Activation act);

// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero.
void init_uniform(PerceptronModel& model, Rng& rng);

struct Gradients {
    Matrix d_weights;
    Vector d_bias;

    void zero() {
        d_weights.fill(0.0);
        std::fill(d_bias.begin(), d_bias.end(), 0.0);
    }
};

Gradients make_gradients(const PerceptronModel& model);

// y[i] = activation(sum_j W[i,j] x[j] + b[i])
Vector forward(const PerceptronModel& model, const Vector& x);

// SumSquares: sum y[i]^2. MeanSquares: the same divided by len.
// Squares are added in ascending value order, so the result is invariant
// under any permutation of y down to the last bit.
double goodness(const Vector& y, GoodnessMode mode);

// Good: softplus(-(g - theta)); Bad: softplus(g - theta).
// Stable for |g - theta| up to at least 1e4.
double ff_loss(double g, double theta, Polarity polarity);

// sigma(g - theta): the probability the FF loss is built from.
double goodness_probability(double g, double theta);

struct BackwardResult {
    double loss = 0.0;
    Gradients grads;
};

// Loss plus exact analytic gradients for one (input, polarity) term:
//   dL/dz_i = s * sigma(s*(g - theta)) * c * 2 * y_i * act'(z_i)
// with s = -1 for Good, +1 for Bad and c = 1 (sum) or 1/len (mean);
//   dL/dW[i,j] = dL/dz_i * x[j],  dL/db[i] = dL/dz_i.
BackwardResult backward(const PerceptronModel& model, const Vector& x,
                        double theta, GoodnessMode mode, Polarity polarity);

// Same computation, but adds scale * gradient into `acc` (mini-batch
// reduction) and returns the unscaled loss.
double backward_accumulate(const PerceptronModel& model, const Vector& x,
                           double theta, GoodnessMode mode, Polarity polarity,
                           double scale, Gradients& acc);

// Numerically stable helpers shared across the library.
double stable_sigmoid(double t);
double stable_softplus(double t); // max(t,0) + log1p(exp(-|t|))

// Flat text format, round-trip exact for doubles:
//   ffp v1 <outputs> <inputs> <activation> <slope>
//   <bias values, one per line>
//   <weight rows, one per line>
void save_model(const PerceptronModel& model, std::ostream& out);
void save_model(const PerceptronModel& model, const std::string& path);
PerceptronModel load_model(std::istream& in);
PerceptronModel load_model(const std::string& path);

} // namespace ffp

#endif
