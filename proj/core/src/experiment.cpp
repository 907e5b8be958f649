#include "wpa/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include "wpa/errors.hpp"
#include "wpa/format.hpp"
#include "wpa/mnist.hpp"
#include "wpa/parallel.hpp"

namespace wpa {

namespace {

constexpr std::size_t toy_inputs = 100 * 100;
constexpr std::size_t toy_hidden = 200;
constexpr double toy_k = 0.002;
constexpr std::size_t mnist_inputs = 28 * 28;
constexpr std::size_t mnist_hidden = 600;

// MC budgets (steps) per preset family
constexpr std::uint64_t lnn20_steps = 20'000'000;
constexpr std::uint64_t nnn20_steps = 100'000'000;
constexpr std::uint64_t nnn200_steps = 200'000'000;
constexpr std::uint64_t digits_steps = 4'000'000;
constexpr std::uint64_t mnist600_steps = 80'000'000;
constexpr std::uint64_t mnist_small_steps = 20'000'000;

ExperimentPreset toy_preset(const std::string& family, Activation act, double d, std::uint64_t steps,
                            ToyVariant variant) {
    ExperimentPreset p;
    p.name = family + "-toy" + std::to_string(static_cast<int>(variant));
    p.description = family + " on circle set " + std::to_string(static_cast<int>(variant)) + ", 10000-200-3";
    p.dataset.kind = DatasetKind::Toy;
    p.dataset.toy = variant;
    p.network = {{toy_inputs, toy_hidden, 3}, act, toy_k};
    p.train.d = d;
    p.train.max_steps = steps;
    p.train.record_every = steps / 100;
    p.train.replicas = 16;
    p.outputs = {"radiograph", "lni"};
    if (variant == ToyVariant::FullOverlap) {
        p.outputs.push_back("modes");
    }
    return p;
}

ExperimentPreset mnist_preset(std::string name, std::string description, std::vector<std::size_t> layers,
                              Activation act, double k, double d, std::uint64_t steps, std::size_t subset,
                              bool one_per_class) {
    ExperimentPreset p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.dataset.kind = DatasetKind::Mnist;
    p.dataset.classes = layers.back();
    p.dataset.subset = subset;
    p.dataset.one_per_class = one_per_class;
    p.network = {std::move(layers), act, k};
    p.train.d = d;
    p.train.max_steps = steps;
    p.train.record_every = std::max<std::uint64_t>(1, steps / 30);
    p.train.replicas = 1;
    p.train.stop_cost = 0.01;
    p.outputs = one_per_class ? std::vector<std::string>{"radiograph", "lni"}
                              : std::vector<std::string>{"accuracy", "hist"};
    return p;
}

std::vector<ExperimentPreset> build_presets() {
    std::vector<ExperimentPreset> all;
    for (auto v : {ToyVariant::Disjoint, ToyVariant::FullOverlap, ToyVariant::PartialOverlap}) {
        all.push_back(toy_preset("LNN20", Activation::Linear, 20.0, lnn20_steps, v));
        all.push_back(toy_preset("NNN20", Activation::Tanh, 20.0, nnn20_steps, v));
        all.push_back(toy_preset("NNN200", Activation::Tanh, 200.0, nnn200_steps, v));
    }
    for (std::size_t classes : {3u, 5u, 10u}) {
        all.push_back(mnist_preset("NNN30-digits" + std::to_string(classes),
                                   "one sample of each of the first " + std::to_string(classes) + " digits",
                                   {mnist_inputs, mnist_hidden, classes}, Activation::Tanh, 0.15, 30.0, digits_steps,
                                   classes, true));
    }
    all.push_back(mnist_preset("NNN75-digits10", "one sample of each digit, d = 75",
                               {mnist_inputs, mnist_hidden, 10}, Activation::Tanh, 0.15, 75.0, digits_steps, 10,
                               true));
    all.push_back(mnist_preset("LNN-opt", "linear network on the first 600 MNIST samples",
                               {mnist_inputs, mnist_hidden, 10}, Activation::Linear, 0.013, 180.0, mnist600_steps,
                               600, false));
    all.push_back(mnist_preset("NNN-opt", "tanh network on the first 600 MNIST samples",
                               {mnist_inputs, mnist_hidden, 10}, Activation::Tanh, 0.15, 70.0, mnist600_steps, 600,
                               false));
    all.push_back(mnist_preset("LNN-opt-small", "linear 784-200-10 on the first 300 MNIST samples",
                               {mnist_inputs, 200, 10}, Activation::Linear, 0.013, 180.0, mnist_small_steps, 300,
                               false));
    all.push_back(mnist_preset("NNN-opt-small", "tanh 784-200-10 on the first 300 MNIST samples",
                               {mnist_inputs, 200, 10}, Activation::Tanh, 0.15, 70.0, mnist_small_steps, 300,
                               false));
    for (std::size_t width : {600u, 1200u, 1800u}) {
        all.push_back(mnist_preset("width-" + std::to_string(width), "NNN-opt with N1 = " + std::to_string(width),
                                   {mnist_inputs, width, 10}, Activation::Tanh, 0.15, 70.0, mnist600_steps, 600,
                                   false));
    }
    all.push_back(mnist_preset("depth-4", "NNN-opt as 784-600-600-10", {mnist_inputs, 600, 600, 10},
                               Activation::Tanh, 0.15, 70.0, mnist600_steps, 600, false));
    all.push_back(mnist_preset("depth-5", "NNN-opt as 784-600-600-600-10", {mnist_inputs, 600, 600, 600, 10},
                               Activation::Tanh, 0.15, 70.0, mnist600_steps, 600, false));
    return all;
}

}

const std::vector<ExperimentPreset>& presets() {
    static const std::vector<ExperimentPreset> all = build_presets();
    return all;
}

const ExperimentPreset& find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) {
            return p;
        }
    }
    std::string known;
    for (const auto& p : presets()) {
        known += (known.empty() ? "" : ", ") + p.name;
    }
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

LoadedData load_dataset(const DatasetSpec& spec, const std::string& mnist_dir) {
    if (spec.kind == DatasetKind::Toy) {
        return {make_toy(spec.toy), std::nullopt};
    }
    auto src = MnistSource::from_directory(mnist_dir);
    src.classes = spec.classes;
    src.subset = spec.subset;
    src.one_per_class = spec.one_per_class;
    auto md = load_mnist(src);
    return {std::move(md.train), std::move(md.test)};
}

RunResult run_experiment(const ExperimentPreset& preset, const LoadedData& data, std::uint64_t seed,
                         const TraceObserver& observer) {
    RunResult r;
    r.net = init_network(preset.network, seed);
    TrainConfig cfg = preset.train;
    cfg.seed = seed;
    cfg.replicas = 1;
    auto track = [&](const Network& net, const ActivationCache& cache, TrainTrace& trace) {
        if (data.test) {
            const double acc = accuracy(net, *data.test);
            r.test_accuracy.push_back(acc);
            r.best_test_accuracy = std::max(r.best_test_accuracy, acc);
        }
        if (observer) {
            observer(net, cache, trace);
        }
    };
    r.trace = train(r.net, data.train, cfg, track);
    r.train_accuracy = accuracy(r.net, data.train);
    if (!data.test) {
        r.best_test_accuracy = r.train_accuracy;
    }
    return r;
}

std::vector<RunResult> run_replicas(const ExperimentPreset& preset, const LoadedData& data, std::uint64_t seed,
                                    std::size_t replicas, std::size_t threads) {
    std::vector<RunResult> out(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) { out[r] = run_experiment(preset, data, seed + r); });
    return out;
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::D: return "d";
    case SweepAxis::K: return "k";
    case SweepAxis::Width: return "width";
    case SweepAxis::Depth: return "depth";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "d") {
        return SweepAxis::D;
    }
    if (lower == "k") {
        return SweepAxis::K;
    }
    if (lower == "width") {
        return SweepAxis::Width;
    }
    if (lower == "depth") {
        return SweepAxis::Depth;
    }
    throw ConfigError("unknown sweep axis '" + name + "' (expected d, k, width or depth)");
}

ExperimentPreset with_axis(const ExperimentPreset& preset, SweepAxis axis, double value) {
    ExperimentPreset p = preset;
    const auto count = [&](const char* what) {
        if (!(value >= 1.0) || value != std::floor(value)) {
            throw ConfigError(std::string(what) + " must be a positive integer");
        }
        return static_cast<std::size_t>(value);
    };
    auto& sizes = p.network.layer_sizes;
    switch (axis) {
    case SweepAxis::D:
        if (!(value > 0.0)) {
            throw ConfigError("d must be positive");
        }
        p.train.d = value;
        break;
    case SweepAxis::K:
        if (!(value > 0.0)) {
            throw ConfigError("k must be positive");
        }
        p.network.k = value;
        break;
    case SweepAxis::Width: {
        const auto w = count("width");
        for (std::size_t l = 1; l + 1 < sizes.size(); ++l) {
            sizes[l] = w;
        }
        break;
    }
    case SweepAxis::Depth: {
        const auto layers = count("depth");
        if (layers < 3) {
            throw ConfigError("depth must be at least 3 layers");
        }
        const std::size_t in = sizes.front();
        const std::size_t hidden = sizes[1];
        const std::size_t out = sizes.back();
        sizes.assign(layers, hidden);
        sizes.front() = in;
        sizes.back() = out;
        break;
    }
    }
    p.name = preset.name + "@" + to_string(axis) + "=" + format_real(value);
    return p;
}

std::vector<SweepRow> run_sweep(const ExperimentPreset& preset, const LoadedData& data, SweepAxis axis,
                                const std::vector<double>& values, std::uint64_t seed, std::size_t replicas,
                                bool with_lni, std::size_t threads) {
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
    if (replicas == 0) {
        throw ConfigError("sweep needs at least one replica");
    }
    std::vector<ExperimentPreset> variants;
    for (double v : values) {
        variants.push_back(with_axis(preset, axis, v));
    }
    std::vector<SweepRow> rows(values.size() * replicas);
    parallel_for(rows.size(), threads, [&](std::size_t job) {
        const std::size_t vi = job / replicas;
        const std::size_t r = job % replicas;
        const auto result = run_experiment(variants[vi], data, seed + r);
        SweepRow& row = rows[job];
        row.value = values[vi];
        row.replica = r;
        row.seed = seed + r;
        row.best_test_accuracy = result.best_test_accuracy;
        row.train_accuracy = result.train_accuracy;
        row.final_cost = cost(result.net, data.train, variants[vi].train.d);
        row.final_mean_margin_label = result.trace.empty() ? 0.0 : result.trace.mean_margin_label.back();
        if (with_lni && result.net.depth() >= 2) {
            row.lni = lni(result.net, data.train);
        }
    });
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,replica,seed,best_test_accuracy,train_accuracy,final_cost,final_mean_margin_label\n";
    for (const auto& r : rows) {
        out << format_real(r.value) << ',' << r.replica << ',' << r.seed << ',' << format_real(r.best_test_accuracy)
            << ',' << format_real(r.train_accuracy) << ',' << format_real(r.final_cost) << ','
            << format_real(r.final_mean_margin_label) << '\n';
    }
}

void write_sweep_lni_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,replica,i2,mu,count\n";
    for (const auto& r : rows) {
        if (!r.lni) {
            continue;
        }
        for (std::size_t i2 = 0; i2 < r.lni->outputs(); ++i2) {
            for (std::size_t mu = 0; mu < r.lni->classes(); ++mu) {
                out << format_real(r.value) << ',' << r.replica << ',' << i2 + 1 << ',' << mu + 1 << ','
                    << static_cast<long long>(r.lni->count(mu, i2)) << '\n';
            }
        }
    }
}

}
