#include "wpa/export.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wpa/errors.hpp"
#include "wpa/format.hpp"

namespace wpa {

void write_trace_csv(std::ostream& out, const TrainTrace& trace) {
    out << "step,cost,mean_margin_all,mean_margin_label,accepted_total\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << trace.steps[i] << ',' << format_real(trace.costs[i]) << ',' << format_real(trace.mean_margin_all[i])
            << ',' << format_real(trace.mean_margin_label[i]) << ',' << trace.accepted_total[i] << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
    out << "bin,lo,hi,count,density\n";
    const auto edges = hist.edges();
    const auto dens = hist.density();
    for (std::size_t b = 0; b < hist.bins(); ++b) {
        out << b << ',' << format_real(edges[b]) << ',' << format_real(edges[b + 1]) << ',' << hist.counts[b] << ','
            << format_real(dens[b]) << '\n';
    }
}

Histogram read_histogram_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "bin,lo,hi,count,density") {
        throw FormatError("histogram CSV: unexpected header");
    }
    Histogram h;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 5) {
            throw FormatError("histogram CSV: expected 5 columns in '" + line + "'");
        }
        if (static_cast<std::size_t>(parse_real(cells[0])) != h.counts.size()) {
            throw FormatError("histogram CSV: bins out of order");
        }
        if (first) {
            h.lo = parse_real(cells[1]);
            first = false;
        }
        h.hi = parse_real(cells[2]);
        const double count = parse_real(cells[3]);
        if (count < 0) {
            throw FormatError("histogram CSV: negative count");
        }
        h.counts.push_back(static_cast<std::size_t>(count));
    }
    return h;
}

void write_census_csv(std::ostream& out, const ModeCensus& census) {
    out << "i2";
    for (auto m : all_modes()) {
        out << ',' << to_string(m);
    }
    out << ",degenerate,total\n";
    for (std::size_t i2 = 0; i2 < census.counts.size(); ++i2) {
        out << i2 + 1;
        std::size_t total = 0;
        for (auto c : census.counts[i2]) {
            out << ',' << c;
            total += c;
        }
        out << ',' << census.degenerate[i2] << ',' << total << '\n';
    }
}

void write_lni_csv(std::ostream& out, const LniTable& table) {
    out << "i2,mu,count\n";
    for (std::size_t i2 = 0; i2 < table.outputs(); ++i2) {
        for (std::size_t mu = 0; mu < table.classes(); ++mu) {
            out << i2 + 1 << ',' << mu + 1 << ',' << static_cast<long long>(table.count(mu, i2)) << '\n';
        }
    }
}

namespace {

template <typename T, typename Writer>
void to_file(const std::string& path, const T& value, Writer writer) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    writer(out, value);
    if (!out) {
        throw DataError("write failed for " + path);
    }
}

}

void export_csv(const std::string& path, const TrainTrace& trace) { to_file(path, trace, write_trace_csv); }
void export_csv(const std::string& path, const Histogram& hist) { to_file(path, hist, write_histogram_csv); }
void export_csv(const std::string& path, const ModeCensus& census) { to_file(path, census, write_census_csv); }
void export_csv(const std::string& path, const LniTable& table) { to_file(path, table, write_lni_csv); }

}
