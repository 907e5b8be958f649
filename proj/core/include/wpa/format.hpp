#ifndef wpa_format_hpp
#define wpa_format_hpp

#include <string>
#include <string_view>

namespace wpa {

// shortest decimal that round-trips exactly (locale independent)
std::string format_real(double value);
// fixed number of significant digits, scientific/fixed chosen automatically
std::string format_real(double value, int significant_digits);

// throws FormatError unless the whole token is a decimal number
double parse_real(std::string_view token);

}

#endif /* wpa_format_hpp */
