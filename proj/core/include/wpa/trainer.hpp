#ifndef wpa_trainer_hpp
#define wpa_trainer_hpp

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpa/dataset.hpp"
#include "wpa/matrix.hpp"
#include "wpa/network.hpp"
#include "wpa/rng.hpp"

namespace wpa {

struct TrainConfig {
    double d = 20.0;
    std::uint64_t max_steps = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t record_every = 10'000;
    // stop as soon as the cost is <= stop_cost; 0 disables early stopping
    double stop_cost = 0.0;
    std::size_t replicas = 1;

    // throws ConfigError when an invariant does not hold
    void validate() const;
};

// "key = value" lines, '#' comments; keys are the field names above
TrainConfig parse_config(std::istream& in, TrainConfig defaults = {});
TrainConfig load_config(const std::string& path, TrainConfig defaults = {});
void write_config(std::ostream& out, const TrainConfig& cfg);

// architecture of a freshly initialized network
struct NetworkSpec {
    std::vector<std::size_t> layer_sizes;
    Activation activation = Activation::Tanh;
    double k = 0.002;
};

// weights i.i.d. uniform on [-1, 1]
Network init_network(const NetworkSpec& spec, std::uint64_t seed);
Network init_network(std::vector<std::size_t> layer_sizes, Activation activation, double k, std::uint64_t seed);

struct Mutation {
    std::size_t layer = 1;  // 1..L
    std::size_t row = 0;    // i_l
    std::size_t col = 0;    // i_{l-1}
    double old_value = 0.0;
    double new_value = 0.0;
};

// a weight chosen uniformly over the whole network, redrawn uniformly on [-1, 1]
Mutation propose(Rng& rng, const Network& net);

/*
 * Per-sample local fields and outputs of every non-input layer, plus the
 * running cost. Storage is neuron-major so the samples touched by one weight
 * are contiguous. delta() only re-evaluates the neurons downstream of the
 * mutated weight.
 */
class ActivationCache {
public:
    ActivationCache(const Network& net, const Dataset& data, double d);

    double cost() const { return sq_sum_ * inv_count_; }
    // sum of squared deviations of sample mu over the output neurons
    double sample_loss(std::size_t mu) const { return row_sq_[mu]; }
    double d() const { return d_; }
    const Dataset& data() const { return *data_; }
    std::size_t samples() const { return samples_; }

    double field(std::size_t l, std::size_t i, std::size_t mu) const { return fields_[l](i, mu); }
    double output(std::size_t l, std::size_t i, std::size_t mu) const;

    // P x N_L matrix of x^(L) y from the cached output fields
    Matrix margins() const;

    // S(after) - S(before) for the mutation, without changing anything
    double delta(const Network& net, const Mutation& m);
    // applies the mutation to both net and cache; returns the cost change
    double commit(Network& net, const Mutation& m);

    // rebuilds all activations and the cost from scratch
    void rebuild(const Network& net);

    // largest |cached - recomputed| over every field and output
    double max_residual(const Network& net) const;

private:
    template <bool Apply>
    double evaluate(const Network& net, const Mutation& m);
    double row_loss(std::size_t mu) const;
    double total_loss() const;

    const Dataset* data_;
    double d_;
    std::size_t samples_;
    std::size_t outputs_n_;
    double inv_count_;
    // cost numerator: the in-order sum of row_sq_, recomputed on every proposal
    double sq_sum_ = 0.0;
    std::vector<double> row_sq_;
    std::vector<double> row_scratch_;
    std::vector<std::size_t> touched_;

    // transposed inputs (N_0 x P) and, per input neuron, the samples where it is nonzero
    Matrix input_t_;
    std::vector<std::vector<std::size_t>> nonzero_;
    // targets transposed (N_L x P)
    Matrix target_t_;

    // fields_[l], outputs_[l]: N_l x P for l = 1..L (index 0 unused)
    std::vector<Matrix> fields_;
    std::vector<Matrix> outputs_;

    // per-sample scratch for deeper networks
    std::vector<Vector> scratch_field_;
    std::vector<Vector> scratch_delta_;
};

double delta_cost(const Network& net, ActivationCache& cache, const Mutation& m);

// proposes one mutation, commits it iff it strictly lowers the cost
bool mc_step(Network& net, ActivationCache& cache, Rng& rng);

// optional LNI snapshot attached to a trace point; counts(mu, i) = Pi(mu | i)
struct LniSnapshot {
    std::uint64_t step = 0;
    Matrix counts;
};

struct TrainTrace {
    std::vector<std::uint64_t> steps;
    std::vector<double> costs;
    std::vector<double> mean_margin_all;
    std::vector<double> mean_margin_label;
    std::vector<std::uint64_t> accepted_total;
    // per recorded point, one entry per output neuron
    std::vector<std::vector<double>> output_margin_all;
    std::vector<std::vector<double>> output_margin_label;
    std::vector<LniSnapshot> lni;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

// called after each trace point is recorded
using TraceObserver = std::function<void(const Network&, const ActivationCache&, TrainTrace&)>;

// runs up to cfg.max_steps MC steps on net, recording every cfg.record_every steps
// and once more at the final step; the RNG stream is (cfg.seed, Rng::train_stream)
TrainTrace train(Network& net, const Dataset& data, const TrainConfig& cfg, const TraceObserver& observer = {});

// replica r starts from init_network(spec, cfg.seed + r) and trains with seed cfg.seed + r
std::vector<Network> train_replicas(const Dataset& data, const TrainConfig& cfg, const NetworkSpec& spec,
                                    std::vector<TrainTrace>* traces = nullptr, std::size_t threads = 0);

}

#endif /* wpa_trainer_hpp */
