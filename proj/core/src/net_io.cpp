#include "wpa/net_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wpa/errors.hpp"
#include "wpa/format.hpp"

namespace wpa {

namespace {

constexpr int weight_digits = 17;

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError(std::string("WPA-NET: unexpected end of file, expected ") + what);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

std::size_t parse_count(const std::string& tok) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        throw FormatError("WPA-NET: '" + tok + "' is not a count");
    }
    if (pos != tok.size() || tok.front() == '-') {
        throw FormatError("WPA-NET: '" + tok + "' is not a count");
    }
    return static_cast<std::size_t>(v);
}

}

void write_network(std::ostream& out, const Network& net) {
    out << "WPA-NET v1\n";
    out << "layers:";
    for (auto n : net.layer_sizes()) {
        out << ' ' << n;
    }
    out << "\nactivation: " << to_string(net.hidden_activation()) << '\n';
    out << "k: " << format_real(net.slope(), weight_digits) << '\n';
    std::string row;
    for (std::size_t l = 1; l <= net.depth(); ++l) {
        const auto& w = net.weights(l);
        out << 'W' << l << ' ' << w.rows() << ' ' << w.cols() << '\n';
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            row.clear();
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                if (c > 0) {
                    row.push_back(' ');
                }
                row += format_real(w(r, c), weight_digits);
            }
            row.push_back('\n');
            out << row;
        }
    }
}

Network read_network(std::istream& in) {
    if (next_line(in, "header") != "WPA-NET v1") {
        throw FormatError("WPA-NET: missing 'WPA-NET v1' header");
    }
    auto layers = split(next_line(in, "layers"));
    if (layers.empty() || layers.front() != "layers:" || layers.size() < 3) {
        throw FormatError("WPA-NET: malformed layers line");
    }
    std::vector<std::size_t> sizes;
    for (std::size_t i = 1; i < layers.size(); ++i) {
        sizes.push_back(parse_count(layers[i]));
    }
    auto act = split(next_line(in, "activation"));
    if (act.size() != 2 || act[0] != "activation:") {
        throw FormatError("WPA-NET: malformed activation line");
    }
    Activation activation;
    try {
        activation = parse_activation(act[1]);
    } catch (const ConfigError& e) {
        throw FormatError(std::string("WPA-NET: ") + e.what());
    }
    auto kline = split(next_line(in, "k"));
    if (kline.size() != 2 || kline[0] != "k:") {
        throw FormatError("WPA-NET: malformed k line");
    }
    const double k = parse_real(kline[1]);

    std::vector<Matrix> weights;
    for (std::size_t l = 1; l < sizes.size(); ++l) {
        auto head = split(next_line(in, "weight block header"));
        if (head.size() != 3 || head[0] != "W" + std::to_string(l)) {
            throw FormatError("WPA-NET: expected block header W" + std::to_string(l));
        }
        const auto rows = parse_count(head[1]);
        const auto cols = parse_count(head[2]);
        if (rows != sizes[l] || cols != sizes[l - 1]) {
            throw FormatError("WPA-NET: block W" + std::to_string(l) + " shape does not match layers line");
        }
        Matrix w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string line = next_line(in, "weight row");
            std::size_t pos = 0;
            std::size_t c = 0;
            while (true) {
                while (pos < line.size() && line[pos] == ' ') {
                    ++pos;
                }
                if (pos >= line.size()) {
                    break;
                }
                auto end = line.find(' ', pos);
                if (end == std::string::npos) {
                    end = line.size();
                }
                if (c >= cols) {
                    throw FormatError("WPA-NET: too many weights in a row of W" + std::to_string(l));
                }
                w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c++)) =
                    parse_real(std::string_view(line).substr(pos, end - pos));
                pos = end;
            }
            if (c != cols) {
                throw FormatError("WPA-NET: too few weights in a row of W" + std::to_string(l));
            }
        }
        weights.push_back(std::move(w));
    }
    try {
        return Network(std::move(sizes), activation, k, std::move(weights));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("WPA-NET: ") + e.what());
    }
}

void save_network(const std::string& path, const Network& net) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    write_network(out, net);
    if (!out) {
        throw DataError("write failed for " + path);
    }
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    return read_network(in);
}

}
