#ifndef wpa_radiograph_hpp
#define wpa_radiograph_hpp

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpa/dataset.hpp"
#include "wpa/matrix.hpp"
#include "wpa/network.hpp"
#include "wpa/pathway.hpp"

namespace wpa {

// a penetration field laid out on the input grid: grid(alpha, beta) = c_{alpha * cols + beta}
struct Radiograph {
    Matrix grid;
    std::size_t node_layer = 0;
    std::string node_label;  // neuron index (1-based) or class name
    std::size_t output_index = 0;
    std::size_t replicas = 1;

    std::size_t rows() const { return static_cast<std::size_t>(grid.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(grid.cols()); }
    double normalization() const { return grid.size() == 0 ? 0.0 : grid.cwiseAbs().maxCoeff(); }
    // row-major flattening
    Vector flatten() const;
};

// throws DimensionError unless the field length equals the grid size
Radiograph to_radiograph(const PenetrationField& field, const GridGeometry& geometry);
// a square grid of side sqrt(N0); throws DimensionError for non-square lengths
Radiograph to_radiograph(const PenetrationField& field);

// entrywise mean; shapes and provenance must agree
Radiograph ensemble_average(std::span<const Radiograph> radiographs);

/*
 * Binary P6 image. v > 0 fades white to red, v < 0 white to blue, scaled by
 * the largest |v|; a zero grid is white. Each grid cell becomes a
 * scale x scale block of pixels.
 */
std::vector<std::uint8_t> render_ppm(const Radiograph& radiograph, std::size_t scale = 1);
void render(const Radiograph& radiograph, const std::string& path, std::size_t scale = 1);

// equal-width bins on [lo, hi]; values outside are counted in the edge bins
struct Histogram {
    double lo = -1.0;
    double hi = 1.0;
    std::vector<std::size_t> counts;

    std::size_t bins() const { return counts.size(); }
    double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    std::vector<double> edges() const;
    std::size_t total() const;
    // counts / (total * width), integrating to 1
    std::vector<double> density() const;
    std::size_t bin_of(double value) const;
};

inline constexpr std::size_t default_histogram_bins = 101;

Histogram make_histogram(std::span<const double> values, std::size_t bins = default_histogram_bins,
                         double lo = -1.0, double hi = 1.0);

// x^(1)_{i1}(mu) over every first-hidden-layer neuron and sample
std::vector<double> hidden_outputs(const Network& net, const Dataset& data);
Histogram hidden_output_histogram(const Network& net, const Dataset& data,
                                  std::size_t bins = default_histogram_bins);

// fraction of values with |x| > threshold
double saturated_fraction(std::span<const double> values, double threshold = 0.96);

}

#endif /* wpa_radiograph_hpp */
