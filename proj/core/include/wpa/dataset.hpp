#ifndef wpa_dataset_hpp
#define wpa_dataset_hpp

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wpa/matrix.hpp"

namespace wpa {

// M x M (or rows x cols) pixel grid; pixel (alpha, beta) is input neuron
// alpha * cols + beta, with 0-based alpha (row) and beta (column)
struct GridGeometry {
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t size() const { return rows * cols; }
    std::size_t index(std::size_t alpha, std::size_t beta) const { return alpha * cols + beta; }
};

// a named set of input-neuron indices
struct Zone {
    std::string name;
    std::vector<std::size_t> pixels;
};

/*
 * A labelled training or test set. Row mu of inputs is x^(0)(mu); labels are
 * 0-based class indices; targets(mu, i) is +1 on the label neuron, -1 elsewhere.
 */
class Dataset {
public:
    Dataset() = default;
    Dataset(Matrix inputs, std::vector<std::size_t> labels, std::size_t num_classes);

    std::size_t size() const { return labels_.size(); }
    std::size_t input_size() const { return static_cast<std::size_t>(inputs_.cols()); }
    std::size_t num_classes() const { return num_classes_; }
    bool empty() const { return labels_.empty(); }

    const Matrix& inputs() const { return inputs_; }
    const Matrix& targets() const { return targets_; }
    const std::vector<std::size_t>& labels() const { return labels_; }
    std::size_t label(std::size_t mu) const { return labels_.at(mu); }
    double target(std::size_t mu, std::size_t i) const { return targets_(mu, i); }

    const std::optional<GridGeometry>& geometry() const { return geometry_; }
    void set_geometry(GridGeometry geometry);

    const std::vector<Zone>& zones() const { return zones_; }
    // throws DimensionError if a pixel lies outside the input vector
    void add_zone(Zone zone);
    const Zone* find_zone(const std::string& name) const;

    // the first n samples (file order) as a new dataset, keeping geometry and zones
    Dataset head(std::size_t n) const;

private:
    Matrix inputs_;
    Matrix targets_;
    std::vector<std::size_t> labels_;
    std::size_t num_classes_ = 0;
    std::optional<GridGeometry> geometry_;
    std::vector<Zone> zones_;
};

}

#endif /* wpa_dataset_hpp */
