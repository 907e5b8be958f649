#ifndef wpa_experiment_hpp
#define wpa_experiment_hpp

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wpa/dataset.hpp"
#include "wpa/network.hpp"
#include "wpa/pathway.hpp"
#include "wpa/toy.hpp"
#include "wpa/trainer.hpp"

namespace wpa {

enum class DatasetKind { Toy, Mnist };

struct DatasetSpec {
    DatasetKind kind = DatasetKind::Toy;
    ToyVariant toy = ToyVariant::Disjoint;
    // MNIST only
    std::size_t classes = 10;
    std::size_t subset = 600;
    bool one_per_class = false;
};

struct ExperimentPreset {
    std::string name;
    std::string description;
    DatasetSpec dataset;
    NetworkSpec network;
    // d, MC budget, record interval and replica count
    TrainConfig train;
    // analyses the CLI emits after training: "radiograph", "lni", "modes", "hist", "accuracy"
    std::vector<std::string> outputs;
};

const std::vector<ExperimentPreset>& presets();
// throws ConfigError for unknown names
const ExperimentPreset& find_preset(const std::string& name);

struct LoadedData {
    Dataset train;
    std::optional<Dataset> test;
};

// MNIST files are read from mnist_dir; throws DataError when they are missing
LoadedData load_dataset(const DatasetSpec& spec, const std::string& mnist_dir);

struct RunResult {
    Network net;
    TrainTrace trace;
    // per trace point; empty without a test set
    std::vector<double> test_accuracy;
    // best-so-far over trace points, or the final training accuracy without a test set
    double best_test_accuracy = 0.0;
    double train_accuracy = 0.0;
};

// initializes from init_network(preset.network, seed) and trains with seed
RunResult run_experiment(const ExperimentPreset& preset, const LoadedData& data, std::uint64_t seed,
                         const TraceObserver& observer = {});

// replica r uses seed + r; runs concurrently on up to `threads` threads (0 = hardware)
std::vector<RunResult> run_replicas(const ExperimentPreset& preset, const LoadedData& data, std::uint64_t seed,
                                    std::size_t replicas, std::size_t threads = 0);

enum class SweepAxis { D, K, Width, Depth };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

/*
 * The preset with one knob replaced. Width sets N_1 (and every later hidden
 * layer); depth is the total number of layers including input and output,
 * with every hidden layer as wide as the preset's first.
 */
ExperimentPreset with_axis(const ExperimentPreset& preset, SweepAxis axis, double value);

struct SweepRow {
    double value = 0.0;
    std::size_t replica = 0;
    std::uint64_t seed = 0;
    double best_test_accuracy = 0.0;
    double train_accuracy = 0.0;
    double final_cost = 0.0;
    double final_mean_margin_label = 0.0;
    std::optional<LniTable> lni;
};

// one row per (value, replica), in value order; with_lni attaches the final LNI table
std::vector<SweepRow> run_sweep(const ExperimentPreset& preset, const LoadedData& data, SweepAxis axis,
                                const std::vector<double>& values, std::uint64_t seed, std::size_t replicas,
                                bool with_lni = false, std::size_t threads = 0);

// value,replica,seed,best_test_accuracy,train_accuracy,final_cost,final_mean_margin_label
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// value,replica,i2,mu,count for rows that carry an LNI table
void write_sweep_lni_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}

#endif /* wpa_experiment_hpp */
