#include "wpa/format.hpp"

#include <array>
#include <charconv>

#include "wpa/errors.hpp"

namespace wpa {

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_real(double value, int significant_digits) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general,
                                   significant_digits);
    return std::string(buf.data(), ptr);
}

double parse_real(std::string_view token) {
    double out = 0.0;
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        throw FormatError("not a decimal number: '" + std::string(token) + "'");
    }
    return out;
}

}
