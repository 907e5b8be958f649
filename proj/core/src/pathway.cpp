#include "wpa/pathway.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wpa/errors.hpp"
#include "wpa/format.hpp"

namespace wpa {

using Eigen::Index;

CumulativeProducts::CumulativeProducts(const Network& net) {
    const std::size_t depth = net.depth();
    upstream_.reserve(depth);
    for (std::size_t l = 1; l <= depth; ++l) {
        if (l == 1) {
            upstream_.push_back(net.weights(1));
        } else {
            upstream_.push_back(net.weights(l) * upstream_.back());
        }
    }
    downstream_.resize(depth);
    const auto out = static_cast<Index>(net.output_size());
    downstream_[depth - 1] = Matrix::Identity(out, out);
    for (std::size_t l = depth - 1; l >= 1; --l) {
        downstream_[l - 1] = downstream_[l] * net.weights(l + 1);
    }
}

const Matrix& CumulativeProducts::upstream(std::size_t l) const {
    if (l == 0 || l > depth()) {
        throw DimensionError("layer " + std::to_string(l) + " out of range 1.." + std::to_string(depth()));
    }
    return upstream_[l - 1];
}

const Matrix& CumulativeProducts::downstream(std::size_t l) const {
    if (l == 0 || l > depth()) {
        throw DimensionError("layer " + std::to_string(l) + " out of range 1.." + std::to_string(depth()));
    }
    return downstream_[l - 1];
}

CumulativeProducts cumulative_products(const Network& net) {
    return CumulativeProducts(net);
}

PenetrationField penetration(const CumulativeProducts& products, std::size_t l, std::size_t i_l, std::size_t i_L) {
    const Matrix& up = products.upstream(l);
    const Matrix& down = products.downstream(l);
    if (i_l >= static_cast<std::size_t>(up.rows())) {
        throw DimensionError("node index " + std::to_string(i_l) + " out of range for layer " + std::to_string(l));
    }
    if (i_L >= static_cast<std::size_t>(down.rows())) {
        throw DimensionError("output index " + std::to_string(i_L) + " out of range");
    }
    PenetrationField f;
    f.node_layer = l;
    f.node_index = i_l;
    f.output_index = i_L;
    f.coeffs = up.row(static_cast<Index>(i_l)).transpose() * down(static_cast<Index>(i_L), static_cast<Index>(i_l));
    return f;
}

PenetrationField penetration(const Network& net, std::size_t l, std::size_t i_l, std::size_t i_L) {
    if (l == 0 || l > net.depth()) {
        throw DimensionError("layer " + std::to_string(l) + " out of range 1.." + std::to_string(net.depth()));
    }
    return penetration(CumulativeProducts(net), l, i_l, i_L);
}

PenetrationField class_restricted_penetration(const Network& net, std::span<const std::size_t> subset,
                                              std::size_t i_L) {
    if (i_L >= net.output_size()) {
        throw DimensionError("output index " + std::to_string(i_L) + " out of range");
    }
    const Matrix& w1 = net.weights(1);
    Vector down_row;
    if (net.depth() == 1) {
        down_row = Vector::Zero(static_cast<Index>(net.output_size()));
        down_row(static_cast<Index>(i_L)) = 1.0;
    } else {
        down_row = CumulativeProducts(net).downstream(1).row(static_cast<Index>(i_L)).transpose();
    }
    PenetrationField f;
    f.node_layer = 1;
    f.node_index = 0;
    f.output_index = i_L;
    f.coeffs = Vector::Zero(static_cast<Index>(net.input_size()));
    for (auto i1 : subset) {
        if (i1 >= net.layer_size(1)) {
            throw DimensionError("layer-1 neuron " + std::to_string(i1) + " out of range");
        }
        f.coeffs += w1.row(static_cast<Index>(i1)).transpose() * down_row(static_cast<Index>(i1));
    }
    f.neuron_subset = std::vector<std::size_t>(subset.begin(), subset.end());
    return f;
}

double characteristic_map(const PenetrationField& field, std::span<const double> input) {
    if (input.size() != static_cast<std::size_t>(field.coeffs.size())) {
        throw DimensionError("input length " + std::to_string(input.size()) + " does not match field length " +
                             std::to_string(field.coeffs.size()));
    }
    double h = 0.0;
    for (std::size_t i = 0; i < input.size(); ++i) {
        h += field.coeffs(static_cast<Index>(i)) * input[i];
    }
    return h;
}

double characteristic_map(const PenetrationField& field, const Dataset& data, std::size_t mu) {
    if (mu >= data.size()) {
        throw DimensionError("sample index out of range");
    }
    const auto& in = data.inputs();
    return characteristic_map(field, std::span<const double>(in.data() + static_cast<Index>(mu) * in.cols(),
                                                             static_cast<std::size_t>(in.cols())));
}

double zone_sum(const PenetrationField& field, const Zone& zone) {
    double s = 0.0;
    for (auto p : zone.pixels) {
        if (p >= static_cast<std::size_t>(field.coeffs.size())) {
            throw DimensionError("zone '" + zone.name + "' pixel " + std::to_string(p) + " outside the field");
        }
        s += field.coeffs(static_cast<Index>(p));
    }
    return s;
}

std::vector<ZoneCoefficient> zone_coefficients(const PenetrationField& field, std::span<const Zone> zones) {
    std::vector<ZoneCoefficient> out;
    out.reserve(zones.size());
    for (const auto& z : zones) {
        out.push_back({z.name, zone_sum(field, z)});
    }
    return out;
}

std::vector<std::size_t> LniTable::members(std::size_t mu, std::size_t i2) const {
    std::vector<std::size_t> out;
    const auto& a = assignment.at(i2);
    for (std::size_t i1 = 0; i1 < a.size(); ++i1) {
        if (a[i1] == mu) {
            out.push_back(i1);
        }
    }
    return out;
}

LniTable lni(const Network& net, const Dataset& data) {
    if (net.depth() < 2) {
        throw DimensionError("LNI needs at least one hidden layer");
    }
    if (data.input_size() != net.input_size()) {
        throw DimensionError("dataset does not match network input size");
    }
    const std::size_t classes = data.num_classes();
    const std::size_t hidden = net.layer_size(1);
    const std::size_t outputs = net.output_size();
    const Matrix x1 = layer_output_matrix(net, data.inputs(), 1);
    Matrix mean = Matrix::Zero(static_cast<Index>(classes), static_cast<Index>(hidden));
    std::vector<std::size_t> per_class(classes, 0);
    for (std::size_t mu = 0; mu < data.size(); ++mu) {
        mean.row(static_cast<Index>(data.label(mu))) += x1.row(static_cast<Index>(mu));
        ++per_class[data.label(mu)];
    }
    for (std::size_t c = 0; c < classes; ++c) {
        if (per_class[c] > 0) {
            mean.row(static_cast<Index>(c)) /= static_cast<double>(per_class[c]);
        }
    }
    const CumulativeProducts products(net);
    const Matrix& down = products.downstream(1);

    LniTable t;
    t.counts = Matrix::Zero(static_cast<Index>(classes), static_cast<Index>(outputs));
    t.assignment.assign(outputs, std::vector<std::size_t>(hidden, 0));
    for (std::size_t i2 = 0; i2 < outputs; ++i2) {
        for (std::size_t i1 = 0; i1 < hidden; ++i1) {
            const double w = down(static_cast<Index>(i2), static_cast<Index>(i1));
            std::size_t best = classes;
            double best_v = -std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < classes; ++c) {
                if (per_class[c] == 0) {
                    continue;
                }
                const double v = mean(static_cast<Index>(c), static_cast<Index>(i1)) * w;
                if (best == classes || v > best_v) {
                    best = c;
                    best_v = v;
                }
            }
            if (best == classes) {
                best = 0;
            }
            t.assignment[i2][i1] = best;
            t.counts(static_cast<Index>(best), static_cast<Index>(i2)) += 1.0;
        }
    }
    return t;
}

const std::array<Mode, mode_count>& all_modes() {
    static const std::array<Mode, mode_count> modes{
        Mode::MinusMinus1, Mode::MinusMinus2, Mode::MinusMinus3, Mode::MinusMinus4, Mode::MinusPlus,
        Mode::PlusMinus,   Mode::PlusPlus1,   Mode::PlusPlus2,   Mode::PlusPlus3,   Mode::PlusPlus4,
    };
    return modes;
}

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::MinusMinus1: return "(-,-)1";
    case Mode::MinusMinus2: return "(-,-)2";
    case Mode::MinusMinus3: return "(-,-)3";
    case Mode::MinusMinus4: return "(-,-)4";
    case Mode::MinusPlus: return "(-,+)";
    case Mode::PlusMinus: return "(+,-)";
    case Mode::PlusPlus1: return "(+,+)1";
    case Mode::PlusPlus2: return "(+,+)2";
    case Mode::PlusPlus3: return "(+,+)3";
    case Mode::PlusPlus4: return "(+,+)4";
    }
    return "?";
}

ModeLabel classify_mode(double c_g, double c_f, std::array<double, 3> ground, std::array<double, 3> face) {
    ModeLabel m;
    m.degenerate = std::abs(c_g) < mode_epsilon || std::abs(c_f) < mode_epsilon;
    m.sign_g = (std::abs(c_g) < mode_epsilon || c_g > 0.0) ? 1 : -1;
    m.sign_f = (std::abs(c_f) < mode_epsilon || c_f > 0.0) ? 1 : -1;
    int positive = 0;
    for (std::size_t mu = 0; mu < 3; ++mu) {
        m.h[mu] = c_g * ground[mu] + c_f * face[mu];
        if (m.h[mu] > 0.0) {
            ++positive;
        }
    }
    if (m.sign_g < 0 && m.sign_f > 0) {
        m.mode = Mode::MinusPlus;
    } else if (m.sign_g > 0 && m.sign_f < 0) {
        m.mode = Mode::PlusMinus;
    } else if (m.sign_g > 0) {
        // increasing in mu: branch counts how many trailing samples are positive
        m.branch = positive + 1;
        m.mode = static_cast<Mode>(static_cast<int>(Mode::PlusPlus1) + positive);
    } else {
        m.branch = 4 - positive;
        m.mode = static_cast<Mode>(static_cast<int>(Mode::MinusMinus1) + 3 - positive);
    }
    return m;
}

namespace {

struct ModeZones {
    const Zone* g;
    const Zone* f;
    std::array<double, 3> ground;
    std::array<double, 3> face;
};

ModeZones mode_zones(const Dataset& data) {
    const Zone* g = data.find_zone("G");
    const Zone* f = data.find_zone("F");
    if (g == nullptr || f == nullptr || g->pixels.empty() || f->pixels.empty()) {
        throw DataError("mode classification needs nonempty zones 'G' and 'F'");
    }
    if (data.size() != 3) {
        throw DataError("mode classification needs exactly three samples");
    }
    ModeZones z{g, f, {}, {}};
    for (std::size_t mu = 0; mu < 3; ++mu) {
        z.ground[mu] = data.inputs()(static_cast<Index>(mu), static_cast<Index>(g->pixels.front()));
        z.face[mu] = data.inputs()(static_cast<Index>(mu), static_cast<Index>(f->pixels.front()));
    }
    return z;
}

ModeLabel classify_with(const CumulativeProducts& products, std::size_t i1, const ModeZones& z, std::size_t i2) {
    const auto field = penetration(products, 1, i1, i2);
    return classify_mode(zone_sum(field, *z.g), zone_sum(field, *z.f), z.ground, z.face);
}

void check_mode_net(const Network& net, const Dataset& data) {
    if (net.depth() < 2) {
        throw DimensionError("mode classification needs a hidden layer");
    }
    if (data.input_size() != net.input_size()) {
        throw DimensionError("dataset does not match network input size");
    }
}

}

ModeLabel classify_mode(const Network& net, std::size_t i1, const Dataset& data, std::size_t i2) {
    check_mode_net(net, data);
    return classify_with(CumulativeProducts(net), i1, mode_zones(data), i2);
}

ModeCensus mode_census(const Network& net, const Dataset& data) {
    check_mode_net(net, data);
    const auto zones = mode_zones(data);
    const CumulativeProducts products(net);
    ModeCensus c;
    c.hidden = net.layer_size(1);
    c.counts.assign(net.output_size(), {});
    c.degenerate.assign(net.output_size(), 0);
    for (std::size_t i2 = 0; i2 < net.output_size(); ++i2) {
        for (std::size_t i1 = 0; i1 < c.hidden; ++i1) {
            const auto m = classify_with(products, i1, zones, i2);
            ++c.counts[i2][static_cast<std::size_t>(m.mode)];
            if (m.degenerate) {
                ++c.degenerate[i2];
            }
        }
    }
    return c;
}

void write_field(std::ostream& out, const PenetrationField& field, std::size_t side) {
    if (side * side != static_cast<std::size_t>(field.coeffs.size())) {
        throw DimensionError("field of length " + std::to_string(field.coeffs.size()) + " is not " +
                             std::to_string(side) + " x " + std::to_string(side));
    }
    out << "WPA-FIELD v1\n";
    out << "l: " << field.node_layer << '\n';
    out << "i_l: " << (field.neuron_subset ? 0 : field.node_index + 1) << '\n';
    out << "i_L: " << field.output_index + 1 << '\n';
    out << "M: " << side << '\n';
    std::string row;
    for (std::size_t a = 0; a < side; ++a) {
        row.clear();
        for (std::size_t b = 0; b < side; ++b) {
            if (b > 0) {
                row.push_back(' ');
            }
            row += format_real(field.coeffs(static_cast<Index>(a * side + b)));
        }
        row.push_back('\n');
        out << row;
    }
}

namespace {

std::size_t header_value(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("WPA-FIELD: missing '" + key + "' line");
    }
    std::istringstream ss(line);
    std::string k;
    long long v = -1;
    std::string extra;
    if (!(ss >> k >> v) || k != key + ":" || v < 0 || (ss >> extra)) {
        throw FormatError("WPA-FIELD: malformed '" + key + "' line");
    }
    return static_cast<std::size_t>(v);
}

}

PenetrationField read_field(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "WPA-FIELD v1") {
        throw FormatError("WPA-FIELD: missing 'WPA-FIELD v1' header");
    }
    PenetrationField f;
    f.node_layer = header_value(in, "l");
    const auto node = header_value(in, "i_l");
    const auto out = header_value(in, "i_L");
    const auto side = header_value(in, "M");
    if (f.node_layer == 0 || out == 0) {
        throw FormatError("WPA-FIELD: layer and output indices start at 1");
    }
    if (node == 0) {
        f.neuron_subset = std::vector<std::size_t>{};
    } else {
        f.node_index = node - 1;
    }
    f.output_index = out - 1;
    f.coeffs = Vector::Zero(static_cast<Index>(side * side));
    for (std::size_t a = 0; a < side; ++a) {
        if (!std::getline(in, line)) {
            throw FormatError("WPA-FIELD: truncated grid");
        }
        std::istringstream ss(line);
        std::string tok;
        std::size_t b = 0;
        while (ss >> tok) {
            if (b >= side) {
                throw FormatError("WPA-FIELD: row " + std::to_string(a + 1) + " is too long");
            }
            f.coeffs(static_cast<Index>(a * side + b++)) = parse_real(tok);
        }
        if (b != side) {
            throw FormatError("WPA-FIELD: row " + std::to_string(a + 1) + " is too short");
        }
    }
    return f;
}

void save_field(const std::string& path, const PenetrationField& field, std::size_t side) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    write_field(out, field, side);
}

PenetrationField load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    return read_field(in);
}

}
