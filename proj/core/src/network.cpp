#include "wpa/network.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "wpa/errors.hpp"

namespace wpa {

std::string to_string(Activation activation) {
    return activation == Activation::Tanh ? "tanh" : "linear";
}

Activation parse_activation(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "linear") {
        return Activation::Linear;
    }
    if (lower == "tanh") {
        return Activation::Tanh;
    }
    throw ConfigError("unknown activation '" + name + "' (expected linear or tanh)");
}

Network::Network(std::vector<std::size_t> layer_sizes, Activation hidden, double k)
    : layer_sizes_(std::move(layer_sizes)), hidden_(hidden), k_(k) {
    if (layer_sizes_.size() < 2) {
        throw DimensionError("a network needs at least an input and an output layer");
    }
    for (auto n : layer_sizes_) {
        if (n == 0) {
            throw DimensionError("layer sizes must be positive");
        }
    }
    if (!(k_ > 0.0) || !std::isfinite(k_)) {
        throw std::invalid_argument("transfer slope k must be positive and finite");
    }
    weights_.reserve(depth());
    for (std::size_t l = 1; l < layer_sizes_.size(); ++l) {
        weights_.push_back(Matrix::Zero(layer_sizes_[l], layer_sizes_[l - 1]));
    }
}

Network::Network(std::vector<std::size_t> layer_sizes, Activation hidden, double k,
                 std::vector<Matrix> weights)
    : Network(std::move(layer_sizes), hidden, k) {
    if (weights.size() != depth()) {
        throw DimensionError("expected " + std::to_string(depth()) + " weight matrices, got " +
                             std::to_string(weights.size()));
    }
    for (std::size_t l = 1; l <= depth(); ++l) {
        set_weights(l, std::move(weights[l - 1]));
    }
}

std::size_t Network::weight_count() const {
    std::size_t total = 0;
    for (const auto& w : weights_) {
        total += static_cast<std::size_t>(w.size());
    }
    return total;
}

const Matrix& Network::weights(std::size_t l) const {
    if (l == 0 || l > depth()) {
        throw DimensionError("weight layer " + std::to_string(l) + " out of range 1.." +
                             std::to_string(depth()));
    }
    return weights_[l - 1];
}

void Network::check_layer(std::size_t l, const Matrix& w) const {
    if (l == 0 || l > depth()) {
        throw DimensionError("weight layer " + std::to_string(l) + " out of range");
    }
    if (static_cast<std::size_t>(w.rows()) != layer_sizes_[l] ||
        static_cast<std::size_t>(w.cols()) != layer_sizes_[l - 1]) {
        throw DimensionError("layer " + std::to_string(l) + " weights must be " +
                             std::to_string(layer_sizes_[l]) + " x " +
                             std::to_string(layer_sizes_[l - 1]));
    }
    if (w.size() > 0 && !(w.cwiseAbs().maxCoeff() <= weight_bound)) {
        throw std::invalid_argument("layer " + std::to_string(l) + " has a weight outside [-1, 1]");
    }
}

void Network::set_weights(std::size_t l, Matrix w) {
    check_layer(l, w);
    weights_[l - 1] = std::move(w);
}

void Network::set_weight(std::size_t l, std::size_t row, std::size_t col, double value) {
    if (!(std::abs(value) <= weight_bound)) {
        throw std::invalid_argument("weight value outside [-1, 1]");
    }
    const auto& w = weights(l);
    if (row >= static_cast<std::size_t>(w.rows()) || col >= static_cast<std::size_t>(w.cols())) {
        throw DimensionError("weight index out of range");
    }
    weights_[l - 1](row, col) = value;
}

double Network::max_abs_weight() const {
    double m = 0.0;
    for (const auto& w : weights_) {
        m = std::max(m, w.cwiseAbs().maxCoeff());
    }
    return m;
}

bool Network::operator==(const Network& other) const {
    if (layer_sizes_ != other.layer_sizes_ || hidden_ != other.hidden_ || k_ != other.k_) {
        return false;
    }
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        if (weights_[l] != other.weights_[l]) {
            return false;
        }
    }
    return true;
}

LayerActivations forward(const Network& net, std::span<const double> input) {
    if (input.size() != net.input_size()) {
        throw DimensionError("input has length " + std::to_string(input.size()) + ", network expects " +
                             std::to_string(net.input_size()));
    }
    const std::size_t depth = net.depth();
    LayerActivations acts(depth);
    acts.output(0) = Eigen::Map<const Vector>(input.data(), static_cast<Eigen::Index>(input.size()));
    for (std::size_t l = 1; l <= depth; ++l) {
        acts.field(l) = net.weights(l) * acts.output(l - 1);
        if (l == depth) {
            acts.output(l) = acts.field(l);
        } else {
            acts.output(l) = acts.field(l).unaryExpr([&net](double h) { return net.transfer(h); });
        }
    }
    return acts;
}

LayerActivations forward(const Network& net, const Vector& input) {
    return forward(net, std::span<const double>(input.data(), static_cast<std::size_t>(input.size())));
}

Matrix layer_output_matrix(const Network& net, const Matrix& inputs, std::size_t l) {
    if (static_cast<std::size_t>(inputs.cols()) != net.input_size()) {
        throw DimensionError("input matrix has " + std::to_string(inputs.cols()) + " columns, network expects " +
                             std::to_string(net.input_size()));
    }
    if (l > net.depth()) {
        throw DimensionError("layer index out of range");
    }
    Matrix x = inputs;
    for (std::size_t layer = 1; layer <= l; ++layer) {
        Matrix h = x * net.weights(layer).transpose();
        if (layer == net.depth()) {
            x = std::move(h);
        } else {
            x = h.unaryExpr([&net](double v) { return net.transfer(v); });
        }
    }
    return x;
}

Matrix output_matrix(const Network& net, const Matrix& inputs) {
    return layer_output_matrix(net, inputs, net.depth());
}

static void check_compatible(const Network& net, const Dataset& data) {
    if (data.input_size() != net.input_size() || data.num_classes() != net.output_size()) {
        throw DimensionError("dataset (" + std::to_string(data.input_size()) + " inputs, " +
                             std::to_string(data.num_classes()) + " classes) does not match network (" +
                             std::to_string(net.input_size()) + " -> " + std::to_string(net.output_size()) + ")");
    }
}

double margin(const Network& net, const Dataset& data, std::size_t mu, std::size_t i) {
    check_compatible(net, data);
    if (mu >= data.size() || i >= net.output_size()) {
        throw DimensionError("margin index out of range");
    }
    const auto row = data.inputs().row(static_cast<Eigen::Index>(mu));
    Vector x = row.transpose();
    return forward(net, x).final_output()(static_cast<Eigen::Index>(i)) * data.target(mu, i);
}

Matrix margins(const Network& net, const Dataset& data) {
    check_compatible(net, data);
    return output_matrix(net, data.inputs()).cwiseProduct(data.targets());
}

double cost(const Network& net, const Dataset& data, double d) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("margin target d must be positive");
    }
    if (data.empty()) {
        throw std::invalid_argument("cost of an empty dataset");
    }
    Matrix m = margins(net, data);
    return (m.array() - d).square().mean();
}

std::size_t argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

std::size_t classify(const Network& net, std::span<const double> input) {
    const auto acts = forward(net, input);
    const auto& out = acts.final_output();
    return argmax_lowest(std::span<const double>(out.data(), static_cast<std::size_t>(out.size())));
}

double accuracy(const Network& net, const Dataset& data) {
    check_compatible(net, data);
    if (data.empty()) {
        return 0.0;
    }
    const Matrix out = output_matrix(net, data.inputs());
    std::size_t correct = 0;
    for (Eigen::Index mu = 0; mu < out.rows(); ++mu) {
        std::span<const double> row(out.data() + mu * out.cols(), static_cast<std::size_t>(out.cols()));
        if (argmax_lowest(row) == data.label(static_cast<std::size_t>(mu))) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

GoalFlags goal_flags(const Network& net, const Dataset& data, double d, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("goal tolerance must be positive");
    }
    const Matrix m = margins(net, data);
    GoalFlags flags;
    flags.classification_met = (m.array() > 0.0).all();
    flags.training_met = ((m.array() - d).abs() <= tol).all();
    return flags;
}

GoalFlags goal_flags(const Network& net, const Dataset& data, double d) {
    return goal_flags(net, data, d, 0.05 * d);
}

}
