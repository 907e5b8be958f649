#ifndef wpa_pathway_hpp
#define wpa_pathway_hpp

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpa/dataset.hpp"
#include "wpa/matrix.hpp"
#include "wpa/network.hpp"

namespace wpa {

/*
 * upstream(l) = W(l) ... W(1), shape N_l x N_0;
 * downstream(l) = W(L) ... W(l+1), shape N_L x N_l, identity for l = L.
 */
class CumulativeProducts {
public:
    explicit CumulativeProducts(const Network& net);

    std::size_t depth() const { return upstream_.size(); }
    const Matrix& upstream(std::size_t l) const;
    const Matrix& downstream(std::size_t l) const;

private:
    std::vector<Matrix> upstream_;    // index l - 1
    std::vector<Matrix> downstream_;  // index l - 1
};

CumulativeProducts cumulative_products(const Network& net);

/*
 * c_{i0} for pathways input i0 -> node (l, i_l) -> output i_L, summed over
 * every route. Indices are 0-based; 1 <= l <= L.
 */
struct PenetrationField {
    std::size_t node_layer = 0;
    std::size_t node_index = 0;
    std::size_t output_index = 0;
    Vector coeffs;
    // set for class-restricted fields: the layer-1 neurons included
    std::optional<std::vector<std::size_t>> neuron_subset;
};

PenetrationField penetration(const Network& net, std::size_t l, std::size_t i_l, std::size_t i_L);
PenetrationField penetration(const CumulativeProducts& products, std::size_t l, std::size_t i_l, std::size_t i_L);

// sum of penetration(net, 1, i1, i_L) over i1 in subset; an empty subset gives a zero field
PenetrationField class_restricted_penetration(const Network& net, std::span<const std::size_t> subset,
                                              std::size_t i_L);

// H = sum_i0 c_i0 x_i0
double characteristic_map(const PenetrationField& field, std::span<const double> input);
double characteristic_map(const PenetrationField& field, const Dataset& data, std::size_t mu);

struct ZoneCoefficient {
    std::string name;
    double value = 0.0;
};

// per zone, the sum of coeffs over its pixels
std::vector<ZoneCoefficient> zone_coefficients(const PenetrationField& field, std::span<const Zone> zones);
double zone_sum(const PenetrationField& field, const Zone& zone);

/*
 * Largest-contribution index. The contribution of hidden neuron i1 to output
 * i2 for class mu is the class-mean of x1_{i1}(mu) D(i2, i1), D = W(L)...W(2);
 * each (i2, i1) is assigned the class with the largest contribution (ties to
 * the lowest class) and counts(mu, i2) = Pi(mu | i2) tallies the assignments.
 * Every column of counts sums to N_1.
 */
struct LniTable {
    Matrix counts;  // classes x N_L
    // assignment[i2][i1] = class index
    std::vector<std::vector<std::size_t>> assignment;

    std::size_t classes() const { return static_cast<std::size_t>(counts.rows()); }
    std::size_t outputs() const { return static_cast<std::size_t>(counts.cols()); }
    double count(std::size_t mu, std::size_t i2) const { return counts(mu, i2); }
    // layer-1 neurons assigned class mu for output i2
    std::vector<std::size_t> members(std::size_t mu, std::size_t i2) const;
};

// throws DimensionError when L < 2
LniTable lni(const Network& net, const Dataset& data);

enum class Mode {
    MinusMinus1,
    MinusMinus2,
    MinusMinus3,
    MinusMinus4,
    MinusPlus,
    PlusMinus,
    PlusPlus1,
    PlusPlus2,
    PlusPlus3,
    PlusPlus4,
};

inline constexpr std::size_t mode_count = 10;
inline constexpr double mode_epsilon = 1e-12;

const std::array<Mode, mode_count>& all_modes();
// "(-,-)1" ... "(+,+)4"
std::string to_string(Mode mode);

struct ModeLabel {
    Mode mode = Mode::MinusPlus;
    int sign_g = 1;
    int sign_f = 1;
    int branch = 0;  // 1..4 for (+,+) and (-,-), 0 otherwise
    bool degenerate = false;
    std::array<double, 3> h{};

    std::string name() const { return to_string(mode); }
};

/*
 * Classifies from the zone sums with H(mu) = c(G) g(mu) + c(F) f(mu), where
 * g, f are the ground and face values of sample mu (defaults -1 and mu).
 * Signs of |c| < mode_epsilon count as + and set degenerate.
 */
ModeLabel classify_mode(double c_g, double c_f, std::array<double, 3> ground = {-1.0, -1.0, -1.0},
                        std::array<double, 3> face = {1.0, 2.0, 3.0});
// zones "G" and "F" are required (DataError otherwise); i1, i2 are 0-based
ModeLabel classify_mode(const Network& net, std::size_t i1, const Dataset& data, std::size_t i2);

struct ModeCensus {
    // counts[i2][mode]
    std::vector<std::array<std::size_t, mode_count>> counts;
    // hidden neurons with a degenerate coefficient, per output
    std::vector<std::size_t> degenerate;
    std::size_t hidden = 0;

    std::size_t count(std::size_t i2, Mode mode) const { return counts.at(i2)[static_cast<std::size_t>(mode)]; }
};

ModeCensus mode_census(const Network& net, const Dataset& data);

/*
 * WPA-FIELD v1 text grid:
 *
 *   WPA-FIELD v1
 *   l: <layer>
 *   i_l: <node>
 *   i_L: <output>
 *   M: <side>
 *   <M rows of M decimals>
 *
 * Neuron indices in the file are 1-based; i_l is 0 for a class-restricted field.
 */
void write_field(std::ostream& out, const PenetrationField& field, std::size_t side);
PenetrationField read_field(std::istream& in);
void save_field(const std::string& path, const PenetrationField& field, std::size_t side);
PenetrationField load_field(const std::string& path);

}

#endif /* wpa_pathway_hpp */
