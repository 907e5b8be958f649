#include "wpa/dataset.hpp"

#include <algorithm>

#include "wpa/errors.hpp"

namespace wpa {

Dataset::Dataset(Matrix inputs, std::vector<std::size_t> labels, std::size_t num_classes)
    : inputs_(std::move(inputs)), labels_(std::move(labels)), num_classes_(num_classes) {
    if (static_cast<std::size_t>(inputs_.rows()) != labels_.size()) {
        throw DimensionError("dataset has " + std::to_string(inputs_.rows()) + " inputs but " +
                             std::to_string(labels_.size()) + " labels");
    }
    if (num_classes_ == 0) {
        throw DimensionError("dataset needs at least one class");
    }
    targets_ = Matrix::Constant(static_cast<Eigen::Index>(labels_.size()),
                                static_cast<Eigen::Index>(num_classes_), -1.0);
    for (std::size_t mu = 0; mu < labels_.size(); ++mu) {
        if (labels_[mu] >= num_classes_) {
            throw DataError("sample " + std::to_string(mu) + " has class " + std::to_string(labels_[mu]) +
                            " outside [0, " + std::to_string(num_classes_) + ")");
        }
        targets_(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(labels_[mu])) = 1.0;
    }
}

void Dataset::set_geometry(GridGeometry geometry) {
    if (geometry.size() != input_size()) {
        throw DimensionError("grid " + std::to_string(geometry.rows) + "x" + std::to_string(geometry.cols) +
                             " does not match input size " + std::to_string(input_size()));
    }
    geometry_ = geometry;
}

void Dataset::add_zone(Zone zone) {
    for (auto p : zone.pixels) {
        if (p >= input_size()) {
            throw DimensionError("zone '" + zone.name + "' has pixel " + std::to_string(p) + " outside the grid");
        }
    }
    zones_.push_back(std::move(zone));
}

const Zone* Dataset::find_zone(const std::string& name) const {
    for (const auto& z : zones_) {
        if (z.name == name) {
            return &z;
        }
    }
    return nullptr;
}

Dataset Dataset::head(std::size_t n) const {
    n = std::min(n, size());
    Dataset out(inputs_.topRows(static_cast<Eigen::Index>(n)),
                std::vector<std::size_t>(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(n)),
                num_classes_);
    out.geometry_ = geometry_;
    out.zones_ = zones_;
    return out;
}

}
