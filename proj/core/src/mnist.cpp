#include "wpa/mnist.hpp"

#include <array>
#include <fstream>
#include <iterator>

#include "wpa/errors.hpp"

namespace wpa {

namespace {

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::uint32_t be32(const std::vector<std::uint8_t>& bytes, std::size_t offset, const std::string& path) {
    if (offset + 4 > bytes.size()) {
        throw DataError(path + ": truncated IDX header");
    }
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void put_be32(std::ofstream& out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                                static_cast<char>(v)};
    out.write(b.data(), 4);
}

}

IdxImages read_idx_images(const std::string& path) {
    const auto bytes = slurp(path);
    const auto magic = be32(bytes, 0, path);
    if (magic != idx_images_magic) {
        throw DataError(path + ": bad IDX image magic " + std::to_string(magic));
    }
    IdxImages img;
    img.count = be32(bytes, 4, path);
    img.rows = be32(bytes, 8, path);
    img.cols = be32(bytes, 12, path);
    const std::size_t payload = img.count * img.rows * img.cols;
    if (bytes.size() < 16 + payload) {
        throw DataError(path + ": truncated IDX image payload");
    }
    img.pixels.assign(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(payload));
    return img;
}

std::vector<std::uint8_t> read_idx_labels(const std::string& path) {
    const auto bytes = slurp(path);
    const auto magic = be32(bytes, 0, path);
    if (magic != idx_labels_magic) {
        throw DataError(path + ": bad IDX label magic " + std::to_string(magic));
    }
    const std::size_t count = be32(bytes, 4, path);
    if (bytes.size() < 8 + count) {
        throw DataError(path + ": truncated IDX label payload");
    }
    return std::vector<std::uint8_t>(bytes.begin() + 8, bytes.begin() + 8 + static_cast<std::ptrdiff_t>(count));
}

void write_idx_images(const std::string& path, const IdxImages& images) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    put_be32(out, idx_images_magic);
    put_be32(out, static_cast<std::uint32_t>(images.count));
    put_be32(out, static_cast<std::uint32_t>(images.rows));
    put_be32(out, static_cast<std::uint32_t>(images.cols));
    out.write(reinterpret_cast<const char*>(images.pixels.data()), static_cast<std::streamsize>(images.pixels.size()));
}

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    put_be32(out, idx_labels_magic);
    put_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
}

MnistSource MnistSource::from_directory(const std::string& dir) {
    MnistSource src;
    src.train_images = dir + "/train-images-idx3-ubyte";
    src.train_labels = dir + "/train-labels-idx1-ubyte";
    src.test_images = dir + "/t10k-images-idx3-ubyte";
    src.test_labels = dir + "/t10k-labels-idx1-ubyte";
    return src;
}

namespace {

Dataset select(const IdxImages& img, const std::vector<std::uint8_t>& labels, std::size_t classes,
               std::size_t limit, bool one_per_class, double scale) {
    if (img.count != labels.size()) {
        throw DataError("IDX image count " + std::to_string(img.count) + " does not match label count " +
                        std::to_string(labels.size()));
    }
    const std::size_t pixels = img.rows * img.cols;
    std::vector<std::size_t> picked;
    std::vector<bool> seen(classes, false);
    for (std::size_t s = 0; s < img.count && picked.size() < limit; ++s) {
        const std::size_t c = labels[s];
        if (c >= classes) {
            continue;
        }
        if (one_per_class) {
            if (seen[c]) {
                continue;
            }
            seen[c] = true;
        }
        picked.push_back(s);
    }
    if (one_per_class) {
        // order samples by digit so that sample mu is the label-mu example
        std::vector<std::size_t> by_class(classes, img.count);
        for (auto s : picked) {
            by_class[labels[s]] = s;
        }
        picked.clear();
        for (auto s : by_class) {
            if (s == img.count) {
                throw DataError("MNIST file lacks an example of some requested digit");
            }
            picked.push_back(s);
        }
    }
    Matrix inputs(static_cast<Eigen::Index>(picked.size()), static_cast<Eigen::Index>(pixels));
    std::vector<std::size_t> lab;
    lab.reserve(picked.size());
    for (std::size_t r = 0; r < picked.size(); ++r) {
        const std::uint8_t* src = img.pixels.data() + picked[r] * pixels;
        for (std::size_t p = 0; p < pixels; ++p) {
            inputs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p)) = src[p] * scale;
        }
        lab.push_back(labels[picked[r]]);
    }
    Dataset data(std::move(inputs), std::move(lab), classes);
    data.set_geometry({img.rows, img.cols});
    return data;
}

}

MnistData load_mnist(const MnistSource& src) {
    if (src.classes == 0 || src.classes > 10) {
        throw ConfigError("MNIST class count must be in 1..10");
    }
    const auto train_img = read_idx_images(src.train_images);
    const auto train_lab = read_idx_labels(src.train_labels);
    const auto test_img = read_idx_images(src.test_images);
    const auto test_lab = read_idx_labels(src.test_labels);
    const std::size_t limit = src.one_per_class ? src.classes : src.subset;
    MnistData out;
    out.train = select(train_img, train_lab, src.classes, limit, src.one_per_class, src.pixel_scale);
    out.test = select(test_img, test_lab, src.classes, test_img.count, false, src.pixel_scale);
    return out;
}

std::vector<Zone> digit_zone_masks(const Dataset& data, double threshold) {
    if (!data.geometry()) {
        throw DimensionError("digit zone masks need a pixel grid");
    }
    const std::size_t classes = data.num_classes();
    const std::size_t pixels = data.input_size();
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(classes), static_cast<Eigen::Index>(pixels));
    std::vector<std::size_t> counts(classes, 0);
    for (std::size_t mu = 0; mu < data.size(); ++mu) {
        sum.row(static_cast<Eigen::Index>(data.label(mu))) += data.inputs().row(static_cast<Eigen::Index>(mu));
        ++counts[data.label(mu)];
    }
    std::vector<Zone> zones;
    for (std::size_t c = 0; c < classes; ++c) {
        Zone z{"digit" + std::to_string(c), {}};
        if (counts[c] > 0) {
            for (std::size_t p = 0; p < pixels; ++p) {
                const double mean = sum(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(p)) /
                                    static_cast<double>(counts[c]);
                if (mean > threshold) {
                    z.pixels.push_back(p);
                }
            }
        }
        zones.push_back(std::move(z));
    }
    return zones;
}

}
