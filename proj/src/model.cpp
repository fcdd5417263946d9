#include "ffp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ffp {

double Activation::apply(double z) const {
    switch (kind) {
        case ActivationKind::Identity: return z;
        case ActivationKind::ReLU: return z > 0.0 ? z : 0.0;
        case ActivationKind::LeakyReLU: return z >= 0.0 ? z : slope * z;
        case ActivationKind::Tanh: return std::tanh(z);
    }
    return z;
}

double Activation::derivative(double z) const {
    switch (kind) {
        case ActivationKind::Identity: return 1.0;
        case ActivationKind::ReLU: return z > 0.0 ? 1.0 : 0.0;
        case ActivationKind::LeakyReLU: return z >= 0.0 ? 1.0 : slope;
        case ActivationKind::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
    }
    return 1.0;
}

Activation Activation::leaky_relu(double slope) {
    if (!(slope > 0.0 && slope < 1.0)) {
        throw ValueError("leaky_relu: slope must lie in (0, 1), got " +
                         std::to_string(slope));
    }
    return {ActivationKind::LeakyReLU, slope};
}

std::string activation_name(const Activation& a) {
    switch (a.kind) {
        case ActivationKind::Identity: return "identity";
        case ActivationKind::ReLU: return "relu";
        case ActivationKind::LeakyReLU: return "leaky";
        case ActivationKind::Tanh: return "tanh";
    }
    return "relu";
}

Activation activation_from_name(const std::string& name, double slope) {
    if (name == "identity") return Activation::identity();
    if (name == "relu") return Activation::relu();
    if (name == "leaky") return Activation::leaky_relu(slope);
    if (name == "tanh") return Activation::tanh();
    throw ValueError("unknown activation '" + name +
                     "' (expected identity|relu|leaky|tanh)");
}

std::string goodness_mode_name(GoodnessMode mode) {
    return mode == GoodnessMode::SumSquares ? "sum" : "mean";
}

GoodnessMode goodness_mode_from_name(const std::string& name) {
    if (name == "sum") return GoodnessMode::SumSquares;
    if (name == "mean") return GoodnessMode::MeanSquares;
    throw ValueError("unknown goodness mode '" + name + "' (expected sum|mean)");
}

PerceptronModel make_model(std::size_t outputs, std::size_t inputs, Activation act) {
    if (outputs < 1) throw ValueError("make_model: outputs must be >= 1");
    if (inputs < 1) throw ValueError("make_model: inputs must be >= 1");
    PerceptronModel m;
    m.weights = Matrix(outputs, inputs, 0.0);
    m.bias = Vector(outputs, 0.0);
    m.activation = act;
    return m;
}

void init_uniform(PerceptronModel& model, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(model.inputs()));
    for (double& w : model.weights.data) w = rng.uniform(-bound, bound);
    std::fill(model.bias.begin(), model.bias.end(), 0.0);
}

Gradients make_gradients(const PerceptronModel& model) {
    Gradients g;
    g.d_weights = Matrix(model.weights.rows, model.weights.cols, 0.0);
    g.d_bias = Vector(model.bias.size(), 0.0);
    return g;
}

Vector forward(const PerceptronModel& model, const Vector& x) {
    Vector y = matvec(model.weights, x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = model.activation.apply(y[i] + model.bias[i]);
    }
    return y;
}

double goodness(const Vector& y, GoodnessMode mode) {
    if (y.empty()) {
        throw DimensionError("goodness: output vector must be non-empty", 1, 0);
    }
    // Summing in ascending value order makes the result independent of the
    // order of y's elements, which classify's permutation invariance relies on.
    Vector squares(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) squares[i] = y[i] * y[i];
    std::sort(squares.begin(), squares.end());
    double sum = 0.0;
    for (double s : squares) sum += s;
    return mode == GoodnessMode::SumSquares
               ? sum
               : sum / static_cast<double>(y.size());
}

double stable_sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double stable_softplus(double t) {
    return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double ff_loss(double g, double theta, Polarity polarity) {
    const double s = polarity == Polarity::Good ? -1.0 : 1.0;
    return stable_softplus(s * (g - theta));
}

double goodness_probability(double g, double theta) {
    return stable_sigmoid(g - theta);
}

double backward_accumulate(const PerceptronModel& model, const Vector& x,
                           double theta, GoodnessMode mode, Polarity polarity,
                           double scale, Gradients& acc) {
    if (x.size() != model.inputs()) {
        throw DimensionError("backward: input length must match model inputs",
                             model.inputs(), x.size());
    }
    if (!acc.d_weights.same_shape(model.weights)) {
        throw DimensionError("backward: gradient matrix shape mismatch",
                             model.weights.data.size(), acc.d_weights.data.size());
    }
    if (acc.d_bias.size() != model.bias.size()) {
        throw DimensionError("backward: gradient bias length mismatch",
                             model.bias.size(), acc.d_bias.size());
    }

    const std::size_t n = model.outputs();
    Vector z = matvec(model.weights, x);
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] += model.bias[i];
        y[i] = model.activation.apply(z[i]);
    }

    const double g = goodness(y, mode);
    const double s = polarity == Polarity::Good ? -1.0 : 1.0;
    const double t = s * (g - theta);
    const double loss = stable_softplus(t);

    const double c = mode == GoodnessMode::MeanSquares
                         ? 1.0 / static_cast<double>(n)
                         : 1.0;
    const double common = s * stable_sigmoid(t) * 2.0 * c;

    Vector dz(n);
    for (std::size_t i = 0; i < n; ++i) {
        dz[i] = common * y[i] * model.activation.derivative(z[i]);
    }

    outer_accumulate(acc.d_weights, dz, x, scale);
    for (std::size_t i = 0; i < n; ++i) {
        acc.d_bias[i] += scale * dz[i];
    }
    return loss;
}

BackwardResult backward(const PerceptronModel& model, const Vector& x,
                        double theta, GoodnessMode mode, Polarity polarity) {
    BackwardResult result;
    result.grads = make_gradients(model);
    result.loss = backward_accumulate(model, x, theta, mode, polarity, 1.0,
                                      result.grads);
    return result;
}

namespace {

// %.17g is the shortest fixed precision that round-trips every double.
std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void malformed(const std::string& what, std::uint64_t line) {
    throw FormatError("model file: " + what, line);
}

} // namespace

void save_model(const PerceptronModel& model, std::ostream& out) {
    out << "ffp v1 " << model.outputs() << ' ' << model.inputs() << ' '
        << activation_name(model.activation) << ' '
        << format_double(model.activation.slope) << '\n';
    for (std::size_t i = 0; i < model.bias.size(); ++i) {
        out << format_double(model.bias[i]) << '\n';
    }
    for (std::size_t i = 0; i < model.weights.rows; ++i) {
        const double* row = model.weights.row(i);
        for (std::size_t j = 0; j < model.weights.cols; ++j) {
            if (j > 0) out << ' ';
            out << format_double(row[j]);
        }
        out << '\n';
    }
}

void save_model(const PerceptronModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_model(model, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

PerceptronModel load_model(std::istream& in) {
    std::string magic, version, act_name;
    std::size_t outputs = 0;
    std::size_t inputs = 0;
    double slope = 0.0;
    if (!(in >> magic >> version >> outputs >> inputs >> act_name >> slope)) {
        malformed("unreadable header (want 'ffp v1 <outputs> <inputs> <activation> <slope>')", 1);
    }
    if (magic != "ffp") malformed("bad magic '" + magic + "', expected 'ffp'", 1);
    if (version != "v1") malformed("unsupported version '" + version + "'", 1);
    if (outputs < 1 || inputs < 1) malformed("dimensions must be >= 1", 1);

    Activation act;
    if (act_name == "leaky") {
        act = Activation::leaky_relu(slope);
    } else {
        act = activation_from_name(act_name);
        act.slope = slope;
    }

    PerceptronModel model = make_model(outputs, inputs, act);
    std::uint64_t line = 2;
    for (std::size_t i = 0; i < outputs; ++i, ++line) {
        if (!(in >> model.bias[i])) malformed("missing bias value", line);
        if (!std::isfinite(model.bias[i])) malformed("non-finite bias value", line);
    }
    for (std::size_t i = 0; i < outputs; ++i, ++line) {
        for (std::size_t j = 0; j < inputs; ++j) {
            double& w = model.weights(i, j);
            if (!(in >> w)) malformed("missing weight value", line);
            if (!std::isfinite(w)) malformed("non-finite weight value", line);
        }
    }
    return model;
}

PerceptronModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_model(in);
}

} // namespace ffp
