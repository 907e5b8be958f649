#ifndef wpa_net_io_hpp
#define wpa_net_io_hpp

#include <iosfwd>
#include <string>

#include "wpa/network.hpp"

namespace wpa {

/*
 * WPA-NET v1 text format:
 *
 *   WPA-NET v1
 *   layers: N0 N1 ... NL
 *   activation: linear|tanh
 *   k: <decimal>
 *   W1 <rows> <cols>
 *   <rows lines of cols weights>
 *   ...
 *
 * Weights carry 17 significant digits, so a write/read cycle is exact.
 */
void write_network(std::ostream& out, const Network& net);
// throws FormatError on any syntax or shape problem
Network read_network(std::istream& in);

void save_network(const std::string& path, const Network& net);
Network load_network(const std::string& path);

}

#endif /* wpa_net_io_hpp */
