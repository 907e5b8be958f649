#ifndef wpa_network_hpp
#define wpa_network_hpp

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpa/dataset.hpp"
#include "wpa/matrix.hpp"

namespace wpa {

enum class Activation { Linear, Tanh };

std::string to_string(Activation activation);
// accepts "linear" / "tanh" (case-insensitive); throws ConfigError otherwise
Activation parse_activation(const std::string& name);

// largest admissible |w|
inline constexpr double weight_bound = 1.0;

/*
 * Fully connected network without biases. Layers are numbered 0 (input)
 * through L (output); weights(l), 1 <= l <= L, has shape N_l x N_{l-1}.
 * Hidden layers apply f(k h) with f linear or tanh; the output layer is linear.
 */
class Network {
public:
    Network() = default;

    // all weights zero
    Network(std::vector<std::size_t> layer_sizes, Activation hidden, double k);

    // throws DimensionError on shape mismatch and std::invalid_argument if any |w| > 1
    Network(std::vector<std::size_t> layer_sizes, Activation hidden, double k,
            std::vector<Matrix> weights);

    // L
    std::size_t depth() const { return layer_sizes_.empty() ? 0 : layer_sizes_.size() - 1; }
    const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }
    std::size_t layer_size(std::size_t l) const { return layer_sizes_.at(l); }
    std::size_t input_size() const { return layer_sizes_.front(); }
    std::size_t output_size() const { return layer_sizes_.back(); }
    std::size_t weight_count() const;

    Activation hidden_activation() const { return hidden_; }
    double slope() const { return k_; }

    const Matrix& weights(std::size_t l) const;
    double weight(std::size_t l, std::size_t row, std::size_t col) const { return weights(l)(row, col); }
    // throws std::invalid_argument if |value| > 1
    void set_weight(std::size_t l, std::size_t row, std::size_t col, double value);
    // replaces a whole layer; same checks as the constructor
    void set_weights(std::size_t l, Matrix w);

    double max_abs_weight() const;

    // hidden-layer transfer f(k h)
    double transfer(double h) const {
        return hidden_ == Activation::Tanh ? std::tanh(k_ * h) : k_ * h;
    }

    bool operator==(const Network& other) const;

private:
    void check_layer(std::size_t l, const Matrix& w) const;

    std::vector<std::size_t> layer_sizes_;
    Activation hidden_ = Activation::Linear;
    double k_ = 1.0;
    std::vector<Matrix> weights_;
};

// h^(l) and x^(l) for l = 1..L; output(0) is the input itself
class LayerActivations {
public:
    LayerActivations() = default;
    explicit LayerActivations(std::size_t depth) : fields_(depth + 1), outputs_(depth + 1) {}

    std::size_t depth() const { return fields_.empty() ? 0 : fields_.size() - 1; }
    const Vector& field(std::size_t l) const { return fields_.at(l); }
    const Vector& output(std::size_t l) const { return outputs_.at(l); }
    Vector& field(std::size_t l) { return fields_.at(l); }
    Vector& output(std::size_t l) { return outputs_.at(l); }
    const Vector& final_output() const { return outputs_.back(); }

private:
    std::vector<Vector> fields_;
    std::vector<Vector> outputs_;
};

LayerActivations forward(const Network& net, std::span<const double> input);
LayerActivations forward(const Network& net, const Vector& input);

// x^(L) for every row of inputs, as a P x N_L matrix
Matrix output_matrix(const Network& net, const Matrix& inputs);
// x^(l) for every row of inputs, as a P x N_l matrix
Matrix layer_output_matrix(const Network& net, const Matrix& inputs, std::size_t l);

// x^(L)_i(mu) * y_i(mu)
double margin(const Network& net, const Dataset& data, std::size_t mu, std::size_t i);
// P x N_L matrix of margins
Matrix margins(const Network& net, const Dataset& data);

// S(d) = mean over (mu, i) of (x^(L)_i(mu) y_i(mu) - d)^2
double cost(const Network& net, const Dataset& data, double d);

// argmax of the output layer, ties to the lowest index
std::size_t classify(const Network& net, std::span<const double> input);
std::size_t argmax_lowest(std::span<const double> values);
double accuracy(const Network& net, const Dataset& data);

struct GoalFlags {
    bool classification_met = false;  // every margin > 0
    bool training_met = false;        // every |margin - d| <= tol
};

GoalFlags goal_flags(const Network& net, const Dataset& data, double d, double tol);
// tol = 0.05 d
GoalFlags goal_flags(const Network& net, const Dataset& data, double d);

}

#endif /* wpa_network_hpp */
