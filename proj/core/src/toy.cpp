#include "wpa/toy.hpp"

#include <algorithm>
#include <vector>

#include "wpa/errors.hpp"

namespace wpa {

std::string to_string(ToyVariant variant) {
    switch (variant) {
    case ToyVariant::Disjoint:
        return "disjoint";
    case ToyVariant::FullOverlap:
        return "full";
    case ToyVariant::PartialOverlap:
        return "partial";
    }
    return "unknown";
}

ToyVariant parse_toy_variant(const std::string& name) {
    if (name == "1" || name == "disjoint" || name == "toy1") {
        return ToyVariant::Disjoint;
    }
    if (name == "2" || name == "full" || name == "toy2") {
        return ToyVariant::FullOverlap;
    }
    if (name == "3" || name == "partial" || name == "toy3") {
        return ToyVariant::PartialOverlap;
    }
    throw ConfigError("unknown toy set '" + name + "' (expected 1, 2 or 3)");
}

ToySpec ToySpec::defaults(ToyVariant variant) {
    ToySpec spec;
    spec.variant = variant;
    switch (variant) {
    case ToyVariant::Disjoint:
        spec.centers = {{{20.0, 50.0}, {50.0, 50.0}, {80.0, 50.0}}};
        break;
    case ToyVariant::FullOverlap:
        spec.centers = {{{50.0, 50.0}, {50.0, 50.0}, {50.0, 50.0}}};
        break;
    case ToyVariant::PartialOverlap:
        spec.centers = {{{38.0, 50.0}, {50.0, 50.0}, {62.0, 50.0}}};
        break;
    }
    return spec;
}

namespace {

using Mask = std::vector<bool>;

std::vector<std::size_t> pixels_of(const Mask& mask) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < mask.size(); ++p) {
        if (mask[p]) {
            out.push_back(p);
        }
    }
    return out;
}

std::size_t count(const Mask& mask) {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

Mask both(const Mask& a, const Mask& b) {
    Mask out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) {
        out[p] = a[p] && b[p];
    }
    return out;
}

}

Dataset make_toy(const ToySpec& spec) {
    const std::size_t m = spec.grid;
    const double r = spec.radius;
    if (m == 0 || !(r > 0.0)) {
        throw DataError("toy grid and radius must be positive");
    }
    std::array<Mask, 3> faces;
    for (std::size_t s = 0; s < 3; ++s) {
        const auto [ca, cb] = spec.centers[s];
        if (ca - r < 0.0 || cb - r < 0.0 || ca + r > static_cast<double>(m - 1) ||
            cb + r > static_cast<double>(m - 1)) {
            throw DataError("circle " + std::to_string(s + 1) + " does not fit inside the grid");
        }
        faces[s].assign(m * m, false);
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                const double da = static_cast<double>(a) - ca;
                const double db = static_cast<double>(b) - cb;
                faces[s][a * m + b] = da * da + db * db <= r * r;
            }
        }
    }

    const Mask f12 = both(faces[0], faces[1]);
    const Mask f13 = both(faces[0], faces[2]);
    const Mask f23 = both(faces[1], faces[2]);
    const Mask triple = both(f12, faces[2]);
    Mask ground(m * m);
    std::array<Mask, 3> unit;
    for (auto& u : unit) {
        u.assign(m * m, false);
    }
    for (std::size_t p = 0; p < m * m; ++p) {
        ground[p] = !(faces[0][p] || faces[1][p] || faces[2][p]);
        unit[0][p] = faces[0][p] && !faces[1][p] && !faces[2][p];
        unit[1][p] = faces[1][p] && !faces[0][p] && !faces[2][p];
        unit[2][p] = faces[2][p] && !faces[0][p] && !faces[1][p];
    }

    switch (spec.variant) {
    case ToyVariant::Disjoint:
        if (count(f12) || count(f13) || count(f23)) {
            throw DataError("disjoint toy set has overlapping faces");
        }
        break;
    case ToyVariant::FullOverlap:
        if (faces[0] != faces[1] || faces[1] != faces[2]) {
            throw DataError("full-overlap toy set has differing faces");
        }
        break;
    case ToyVariant::PartialOverlap:
        if (!count(triple) || !count(unit[0]) || !count(unit[1]) || !count(unit[2])) {
            throw DataError("partial-overlap toy set needs a common center and a unit zone per face");
        }
        break;
    }

    Matrix inputs(3, static_cast<Eigen::Index>(m * m));
    for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t p = 0; p < m * m; ++p) {
            inputs(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p)) =
                faces[s][p] ? spec.face_values[s] : spec.ground_value;
        }
    }
    Dataset data(std::move(inputs), {0, 1, 2}, 3);
    data.set_geometry({m, m});
    data.add_zone({"G", pixels_of(ground)});
    for (std::size_t s = 0; s < 3; ++s) {
        data.add_zone({"F" + std::to_string(s + 1), pixels_of(faces[s])});
    }
    if (spec.variant == ToyVariant::FullOverlap) {
        data.add_zone({"F", pixels_of(faces[0])});
        data.add_zone({"center", pixels_of(faces[0])});
    }
    if (spec.variant == ToyVariant::PartialOverlap) {
        for (std::size_t s = 0; s < 3; ++s) {
            data.add_zone({"F0_" + std::to_string(s + 1), pixels_of(unit[s])});
        }
        data.add_zone({"center", pixels_of(triple)});
    }
    return data;
}

Dataset make_toy(ToyVariant variant) {
    return make_toy(ToySpec::defaults(variant));
}

}
