#ifndef wpa_export_hpp
#define wpa_export_hpp

#include <iosfwd>
#include <string>

#include "wpa/pathway.hpp"
#include "wpa/radiograph.hpp"
#include "wpa/trainer.hpp"

namespace wpa {

/*
 * CSV schemas (comma separated, '.' decimal point, shortest round-trip reals):
 *
 *   trace:     step,cost,mean_margin_all,mean_margin_label,accepted_total
 *   histogram: bin,lo,hi,count,density
 *   census:    i2,<ten mode names>,degenerate,total
 *   lni:       i2,mu,count
 *
 * Neuron and class indices (i2, mu) are 1-based, bins 0-based.
 */
void write_trace_csv(std::ostream& out, const TrainTrace& trace);
void write_histogram_csv(std::ostream& out, const Histogram& hist);
Histogram read_histogram_csv(std::istream& in);
void write_census_csv(std::ostream& out, const ModeCensus& census);
void write_lni_csv(std::ostream& out, const LniTable& table);

void export_csv(const std::string& path, const TrainTrace& trace);
void export_csv(const std::string& path, const Histogram& hist);
void export_csv(const std::string& path, const ModeCensus& census);
void export_csv(const std::string& path, const LniTable& table);

}

#endif /* wpa_export_hpp */
