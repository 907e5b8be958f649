#ifndef wpa_errors_hpp
#define wpa_errors_hpp

#include <stdexcept>
#include <string>

namespace wpa {

// shapes or indices that do not agree with the network / dataset
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// malformed persisted files (WPA-NET, WPA-FIELD, CSV)
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// unreadable or inconsistent input data (IDX files, toy geometry)
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// bad configuration values or unparsable config files
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}

#endif /* wpa_errors_hpp */
