#include "ffp/optim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ffp {

void validate(const AdamConfig& cfg) {
    if (!(cfg.learning_rate > 0.0)) {
        throw ValueError("adam: learning_rate must be > 0");
    }
    if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0)) {
        throw ValueError("adam: beta1 must lie in [0, 1)");
    }
    if (!(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) {
        throw ValueError("adam: beta2 must lie in [0, 1)");
    }
    if (!(cfg.epsilon > 0.0)) {
        throw ValueError("adam: epsilon must be > 0");
    }
}

AdamState adam_init(std::size_t outputs, std::size_t inputs) {
    if (outputs < 1 || inputs < 1) {
        throw ValueError("adam_init: shape dimensions must be >= 1");
    }
    AdamState state;
    state.outputs = outputs;
    state.inputs = inputs;
    state.m.assign(state.parameter_count(), 0.0);
    state.v.assign(state.parameter_count(), 0.0);
    state.t = 0;
    return state;
}

namespace {

void update_one(double& param, double g, double& m, double& v,
                const AdamConfig& cfg, double m_corr, double v_corr) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g * g;
    const double m_hat = m / m_corr;
    const double v_hat = v / v_corr;
    param -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
}

} // namespace

void adam_step(PerceptronModel& model, const Gradients& grads, AdamState& state,
               const AdamConfig& cfg) {
    validate(cfg);
    if (state.outputs != model.outputs() || state.inputs != model.inputs()) {
        throw DimensionError("adam_step: state shaped for a different model",
                             model.outputs() * model.inputs(),
                             state.outputs * state.inputs);
    }
    if (!grads.d_weights.same_shape(model.weights)) {
        throw DimensionError("adam_step: weight gradient shape mismatch",
                             model.weights.data.size(),
                             grads.d_weights.data.size());
    }
    if (grads.d_bias.size() != model.bias.size()) {
        throw DimensionError("adam_step: bias gradient length mismatch",
                             model.bias.size(), grads.d_bias.size());
    }

    state.t += 1;
    // Corrections come from pow(beta, t) rather than a running product so a
    // state reloaded from disk continues the exact same trajectory.
    const double m_corr = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double v_corr = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));

    const std::size_t n_w = model.weights.data.size();
    for (std::size_t k = 0; k < n_w; ++k) {
        update_one(model.weights.data[k], grads.d_weights.data[k],
                   state.m[k], state.v[k], cfg, m_corr, v_corr);
    }
    for (std::size_t i = 0; i < model.bias.size(); ++i) {
        update_one(model.bias[i], grads.d_bias[i],
                   state.m[n_w + i], state.v[n_w + i], cfg, m_corr, v_corr);
    }
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void malformed(const std::string& what, std::uint64_t line) {
    throw FormatError("adam state file: " + what, line);
}

} // namespace

void save_adam_state(const AdamState& state, std::ostream& out) {
    out << "adam v1 " << state.outputs << ' ' << state.inputs << ' '
        << state.t << '\n';
    for (std::size_t k = 0; k < state.m.size(); ++k) {
        out << format_double(state.m[k]) << ' ' << format_double(state.v[k])
            << '\n';
    }
}

void save_adam_state(const AdamState& state, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_adam_state(state, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

AdamState load_adam_state(std::istream& in) {
    std::string magic, version;
    std::size_t outputs = 0;
    std::size_t inputs = 0;
    std::int64_t t = 0;
    if (!(in >> magic >> version >> outputs >> inputs >> t)) {
        malformed("unreadable header (want 'adam v1 <outputs> <inputs> <t>')", 1);
    }
    if (magic != "adam") malformed("bad magic '" + magic + "', expected 'adam'", 1);
    if (version != "v1") malformed("unsupported version '" + version + "'", 1);
    if (t < 0) malformed("step counter must be >= 0", 1);

    AdamState state = adam_init(outputs, inputs);
    state.t = t;
    std::uint64_t line = 2;
    for (std::size_t k = 0; k < state.m.size(); ++k, ++line) {
        if (!(in >> state.m[k] >> state.v[k])) {
            malformed("missing moment pair", line);
        }
        if (state.v[k] < 0.0) malformed("second moment must be >= 0", line);
    }
    return state;
}

AdamState load_adam_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_adam_state(in);
}

} // namespace ffp
