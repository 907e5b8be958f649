#include "wpa/radiograph.hpp"

#include <cmath>
#include <fstream>

#include "wpa/errors.hpp"

namespace wpa {

using Eigen::Index;

Vector Radiograph::flatten() const {
    Vector v(grid.size());
    for (Index a = 0; a < grid.rows(); ++a) {
        for (Index b = 0; b < grid.cols(); ++b) {
            v(a * grid.cols() + b) = grid(a, b);
        }
    }
    return v;
}

Radiograph to_radiograph(const PenetrationField& field, const GridGeometry& geometry) {
    if (geometry.size() != static_cast<std::size_t>(field.coeffs.size())) {
        throw DimensionError("field of length " + std::to_string(field.coeffs.size()) + " does not fit a " +
                             std::to_string(geometry.rows) + " x " + std::to_string(geometry.cols) + " grid");
    }
    Radiograph r;
    r.grid.resize(static_cast<Index>(geometry.rows), static_cast<Index>(geometry.cols));
    for (std::size_t a = 0; a < geometry.rows; ++a) {
        for (std::size_t b = 0; b < geometry.cols; ++b) {
            r.grid(static_cast<Index>(a), static_cast<Index>(b)) = field.coeffs(static_cast<Index>(geometry.index(a, b)));
        }
    }
    r.node_layer = field.node_layer;
    r.node_label = field.neuron_subset ? "subset" : std::to_string(field.node_index + 1);
    r.output_index = field.output_index;
    return r;
}

Radiograph to_radiograph(const PenetrationField& field) {
    const auto n = static_cast<std::size_t>(field.coeffs.size());
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) {
        throw DimensionError("field of length " + std::to_string(n) + " is not a square grid");
    }
    return to_radiograph(field, GridGeometry{side, side});
}

Radiograph ensemble_average(std::span<const Radiograph> radiographs) {
    if (radiographs.empty()) {
        throw DimensionError("ensemble average of no radiographs");
    }
    const auto& first = radiographs.front();
    Radiograph out = first;
    out.replicas = 0;
    out.grid.setZero();
    for (const auto& r : radiographs) {
        if (r.grid.rows() != first.grid.rows() || r.grid.cols() != first.grid.cols()) {
            throw DimensionError("radiograph shapes differ");
        }
        if (r.node_layer != first.node_layer || r.node_label != first.node_label ||
            r.output_index != first.output_index) {
            throw DimensionError("radiographs describe different nodes");
        }
        out.grid += r.grid * static_cast<double>(r.replicas);
        out.replicas += r.replicas;
    }
    out.grid /= static_cast<double>(out.replicas);
    return out;
}

std::vector<std::uint8_t> render_ppm(const Radiograph& radiograph, std::size_t scale) {
    if (scale == 0) {
        throw std::invalid_argument("render scale must be positive");
    }
    const std::size_t rows = radiograph.rows() * scale;
    const std::size_t cols = radiograph.cols() * scale;
    const std::string header = "P6\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
    std::vector<std::uint8_t> img(header.begin(), header.end());
    img.reserve(header.size() + rows * cols * 3);
    const double norm = radiograph.normalization();
    for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t x = 0; x < cols; ++x) {
            const double v = radiograph.grid(static_cast<Index>(y / scale), static_cast<Index>(x / scale));
            const double t = norm > 0.0 ? std::abs(v) / norm : 0.0;
            const auto fade = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - t)));
            if (v > 0.0) {
                img.insert(img.end(), {255, fade, fade});
            } else if (v < 0.0) {
                img.insert(img.end(), {fade, fade, 255});
            } else {
                img.insert(img.end(), {255, 255, 255});
            }
        }
    }
    return img;
}

void render(const Radiograph& radiograph, const std::string& path, std::size_t scale) {
    const auto img = render_ppm(radiograph, scale);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    out.write(reinterpret_cast<const char*>(img.data()), static_cast<std::streamsize>(img.size()));
    if (!out) {
        throw DataError("write failed for " + path);
    }
}

std::vector<double> Histogram::edges() const {
    std::vector<double> e(counts.size() + 1);
    for (std::size_t i = 0; i <= counts.size(); ++i) {
        e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(counts.size());
    }
    return e;
}

std::size_t Histogram::total() const {
    std::size_t t = 0;
    for (auto c : counts) {
        t += c;
    }
    return t;
}

std::vector<double> Histogram::density() const {
    std::vector<double> d(counts.size(), 0.0);
    const auto t = total();
    if (t == 0) {
        return d;
    }
    const double denom = static_cast<double>(t) * width();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        d[i] = static_cast<double>(counts[i]) / denom;
    }
    return d;
}

std::size_t Histogram::bin_of(double value) const {
    if (!(value > lo)) {
        return 0;
    }
    const auto b = static_cast<std::size_t>((value - lo) / width());
    return b >= counts.size() ? counts.size() - 1 : b;
}

Histogram make_histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
    if (bins < 2) {
        throw std::invalid_argument("a histogram needs at least two bins");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("histogram range is empty");
    }
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    for (double v : values) {
        ++h.counts[h.bin_of(v)];
    }
    return h;
}

std::vector<double> hidden_outputs(const Network& net, const Dataset& data) {
    if (net.depth() < 2) {
        throw DimensionError("network has no hidden layer");
    }
    const Matrix x1 = layer_output_matrix(net, data.inputs(), 1);
    return std::vector<double>(x1.data(), x1.data() + x1.size());
}

Histogram hidden_output_histogram(const Network& net, const Dataset& data, std::size_t bins) {
    const auto values = hidden_outputs(net, data);
    return make_histogram(values, bins);
}

double saturated_fraction(std::span<const double> values, double threshold) {
    if (values.empty()) {
        return 0.0;
    }
    std::size_t n = 0;
    for (double v : values) {
        if (std::abs(v) > threshold) {
            ++n;
        }
    }
    return static_cast<double>(n) / static_cast<double>(values.size());
}

}
