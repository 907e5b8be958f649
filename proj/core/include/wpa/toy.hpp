#ifndef wpa_toy_hpp
#define wpa_toy_hpp

#include <array>
#include <cstddef>
#include <string>
#include <utility>

#include "wpa/dataset.hpp"

namespace wpa {

// the three circle training sets: disjoint, fully overlapping, and partially overlapping faces
enum class ToyVariant { Disjoint = 1, FullOverlap = 2, PartialOverlap = 3 };

std::string to_string(ToyVariant variant);
// "1"/"disjoint", "2"/"full", "3"/"partial"
ToyVariant parse_toy_variant(const std::string& name);

struct ToySpec {
    std::size_t grid = 100;
    double radius = 14.0;
    // (alpha, beta) = (row, column) of each circle center
    std::array<std::pair<double, double>, 3> centers{};
    std::array<double, 3> face_values{1.0, 2.0, 3.0};
    double ground_value = -1.0;
    ToyVariant variant = ToyVariant::Disjoint;

    static ToySpec defaults(ToyVariant variant);
};

/*
 * Three grid x grid samples; sample mu has value face_values[mu] inside its
 * circle and ground_value elsewhere, class mu. Zones always include "G"
 * (outside every face) and "F1".."F3" (each sample's face). FullOverlap adds
 * "F" and "center" (the common face); PartialOverlap adds the unit zones
 * "F0_1".."F0_3" (face pixels no other face covers) and "center" (the triple
 * overlap). Throws DataError if the geometry does not have the property the
 * variant names or a circle leaves the grid.
 */
Dataset make_toy(const ToySpec& spec);
Dataset make_toy(ToyVariant variant);

}

#endif /* wpa_toy_hpp */
