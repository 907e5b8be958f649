#ifndef wpa_mnist_hpp
#define wpa_mnist_hpp

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpa/dataset.hpp"

namespace wpa {

inline constexpr std::uint32_t idx_images_magic = 2051;
inline constexpr std::uint32_t idx_labels_magic = 2049;

struct IdxImages {
    std::size_t count = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols, row-major per image
};

// big-endian IDX readers; throw DataError on bad magic or truncation
IdxImages read_idx_images(const std::string& path);
std::vector<std::uint8_t> read_idx_labels(const std::string& path);

// IDX writers, used for fixtures
void write_idx_images(const std::string& path, const IdxImages& images);
void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels);

struct MnistSource {
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;
    // number of training samples to keep (after class filtering)
    std::size_t subset = 600;
    // digits 0 .. classes-1 are kept
    std::size_t classes = 10;
    // pixel value = byte * pixel_scale
    double pixel_scale = 1.0 / 255.0;
    // keep only the first sample of each digit (subset is then ignored)
    bool one_per_class = false;

    // the four standard file names inside dir
    static MnistSource from_directory(const std::string& dir);
};

struct MnistData {
    Dataset train;
    Dataset test;
};

/*
 * train: the first `subset` training-file samples (file order) whose digit is
 * below `classes`; test: every test-file sample with digit below `classes`.
 * Both carry a rows x cols geometry. Throws DataError on count mismatches.
 */
MnistData load_mnist(const MnistSource& src);

// per class, the pixels whose class-mean intensity exceeds threshold; zone names "digit<c>"
std::vector<Zone> digit_zone_masks(const Dataset& data, double threshold);

}

#endif /* wpa_mnist_hpp */
