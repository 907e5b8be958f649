#include <benchmark/benchmark.h>

#include "wpa/pathway.hpp"
#include "wpa/rng.hpp"
#include "wpa/toy.hpp"
#include "wpa/trainer.hpp"

namespace {

wpa::Dataset toy_data() {
    return wpa::make_toy(wpa::ToyVariant::FullOverlap);
}

void bm_mc_step_toy(benchmark::State& state) {
    const auto data = toy_data();
    const auto hidden = static_cast<std::size_t>(state.range(0));
    auto net = wpa::init_network({data.input_size(), hidden, 3}, wpa::Activation::Tanh, 0.002, 1);
    wpa::ActivationCache cache(net, data, 20.0);
    wpa::Rng rng(1, wpa::Rng::train_stream);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpa::mc_step(net, cache, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_mc_step_toy)->Arg(20)->Arg(200);

void bm_mc_step_dense(benchmark::State& state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    wpa::Rng gen(3, 0);
    wpa::Matrix inputs(static_cast<Eigen::Index>(samples), 784);
    for (Eigen::Index i = 0; i < inputs.size(); ++i) {
        inputs.data()[i] = gen.uniform(0.0, 1.0);
    }
    std::vector<std::size_t> labels(samples);
    for (std::size_t mu = 0; mu < samples; ++mu) {
        labels[mu] = mu % 10;
    }
    const wpa::Dataset data(inputs, labels, 10);
    auto net = wpa::init_network({784, 600, 10}, wpa::Activation::Tanh, 0.15, 1);
    wpa::ActivationCache cache(net, data, 70.0);
    wpa::Rng rng(1, wpa::Rng::train_stream);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpa::mc_step(net, cache, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_mc_step_dense)->Arg(10)->Arg(600);

void bm_penetration(benchmark::State& state) {
    const auto hidden = static_cast<std::size_t>(state.range(0));
    const auto net = wpa::init_network({10000, hidden, 3}, wpa::Activation::Tanh, 0.002, 1);
    for (auto _ : state) {
        const wpa::CumulativeProducts products(net);
        benchmark::DoNotOptimize(wpa::penetration(products, 2, 1, 1).coeffs.data());
    }
}
BENCHMARK(bm_penetration)->Arg(20)->Arg(200);

void bm_lni(benchmark::State& state) {
    const auto data = toy_data();
    const auto net = wpa::init_network({data.input_size(), 200, 3}, wpa::Activation::Tanh, 0.002, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpa::lni(net, data).counts.data());
    }
}
BENCHMARK(bm_lni);

}

BENCHMARK_MAIN();
