#include "wpa/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wpa/errors.hpp"
#include "wpa/parallel.hpp"

namespace wpa {

Network init_network(const NetworkSpec& spec, std::uint64_t seed) {
    Network net(spec.layer_sizes, spec.activation, spec.k);
    Rng rng(seed, Rng::init_stream);
    for (std::size_t l = 1; l <= net.depth(); ++l) {
        Matrix w(net.layer_size(l), net.layer_size(l - 1));
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                w(r, c) = rng.uniform(-weight_bound, weight_bound);
            }
        }
        net.set_weights(l, std::move(w));
    }
    return net;
}

Network init_network(std::vector<std::size_t> layer_sizes, Activation activation, double k, std::uint64_t seed) {
    return init_network(NetworkSpec{std::move(layer_sizes), activation, k}, seed);
}

Mutation propose(Rng& rng, const Network& net) {
    std::size_t index = rng.below(net.weight_count());
    Mutation m;
    for (std::size_t l = 1; l <= net.depth(); ++l) {
        const auto& w = net.weights(l);
        const auto n = static_cast<std::size_t>(w.size());
        if (index < n) {
            m.layer = l;
            m.row = index / static_cast<std::size_t>(w.cols());
            m.col = index % static_cast<std::size_t>(w.cols());
            break;
        }
        index -= n;
    }
    m.old_value = net.weight(m.layer, m.row, m.col);
    m.new_value = rng.uniform(-weight_bound, weight_bound);
    return m;
}

ActivationCache::ActivationCache(const Network& net, const Dataset& data, double d)
    : data_(&data), d_(d), samples_(data.size()), outputs_n_(net.output_size()) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("margin target d must be positive");
    }
    if (data.empty()) {
        throw std::invalid_argument("cannot train on an empty dataset");
    }
    if (data.input_size() != net.input_size() || data.num_classes() != net.output_size()) {
        throw DimensionError("dataset does not match the network's input/output sizes");
    }
    inv_count_ = 1.0 / (static_cast<double>(samples_) * static_cast<double>(outputs_n_));
    input_t_ = data.inputs().transpose();
    target_t_ = data.targets().transpose();
    nonzero_.resize(net.input_size());
    for (std::size_t j = 0; j < net.input_size(); ++j) {
        for (std::size_t mu = 0; mu < samples_; ++mu) {
            if (input_t_(j, mu) != 0.0) {
                nonzero_[j].push_back(mu);
            }
        }
    }
    fields_.resize(net.depth() + 1);
    outputs_.resize(net.depth() + 1);
    scratch_field_.resize(net.depth() + 1);
    scratch_delta_.resize(net.depth() + 1);
    for (std::size_t l = 1; l <= net.depth(); ++l) {
        scratch_field_[l].resize(net.layer_size(l));
        scratch_delta_[l].resize(net.layer_size(l));
    }
    rebuild(net);
}

void ActivationCache::rebuild(const Network& net) {
    const std::size_t depth = net.depth();
    Matrix x = data_->inputs();
    for (std::size_t l = 1; l <= depth; ++l) {
        Matrix h = x * net.weights(l).transpose();
        fields_[l] = h.transpose();
        if (l < depth) {
            x = h.unaryExpr([&net](double v) { return net.transfer(v); });
            outputs_[l] = x.transpose();
        }
    }
    row_sq_.resize(samples_);
    for (std::size_t mu = 0; mu < samples_; ++mu) {
        row_sq_[mu] = row_loss(mu);
    }
    row_scratch_ = row_sq_;
    sq_sum_ = total_loss();
}

double ActivationCache::row_loss(std::size_t mu) const {
    const Matrix& out = fields_.back();
    double sum = 0.0;
    for (std::size_t i = 0; i < outputs_n_; ++i) {
        const double dev = out(i, mu) * target_t_(i, mu) - d_;
        sum += dev * dev;
    }
    return sum;
}

double ActivationCache::total_loss() const {
    double sum = 0.0;
    for (auto v : row_scratch_) {
        sum += v;
    }
    return sum;
}

double ActivationCache::output(std::size_t l, std::size_t i, std::size_t mu) const {
    if (l + 1 == fields_.size()) {
        return fields_[l](i, mu);
    }
    return outputs_[l](i, mu);
}

Matrix ActivationCache::margins() const {
    return fields_.back().transpose().cwiseProduct(data_->targets());
}

template <bool Apply>
double ActivationCache::evaluate(const Network& net, const Mutation& m) {
    const std::size_t depth = net.depth();
    const std::size_t l = m.layer;
    const std::size_t i = m.row;
    const std::size_t j = m.col;
    const double dw = m.new_value - m.old_value;
    Vector& out_new = scratch_field_[depth];
    touched_.clear();

    // new loss of sample mu given its candidate output fields in out_new
    auto finish_sample = [&](std::size_t mu) {
        double sum = 0.0;
        for (std::size_t r = 0; r < outputs_n_; ++r) {
            const double dev = out_new(static_cast<Eigen::Index>(r)) * target_t_(r, mu) - d_;
            sum += dev * dev;
        }
        row_scratch_[mu] = sum;
        touched_.push_back(mu);
        if constexpr (Apply) {
            for (std::size_t r = 0; r < outputs_n_; ++r) {
                fields_[depth](r, mu) = out_new(static_cast<Eigen::Index>(r));
            }
        }
    };

    auto visit = [&](std::size_t mu, double x_in) {
        const Matrix& out = fields_[depth];
        const double h_new = fields_[l](i, mu) + dw * x_in;
        if (l == depth) {
            for (std::size_t r = 0; r < outputs_n_; ++r) {
                out_new(static_cast<Eigen::Index>(r)) = out(r, mu);
            }
            out_new(static_cast<Eigen::Index>(i)) = h_new;
            finish_sample(mu);
            return;
        }
        const double x_new = net.transfer(h_new);
        const double dx = x_new - outputs_[l](i, mu);
        if constexpr (Apply) {
            fields_[l](i, mu) = h_new;
            outputs_[l](i, mu) = x_new;
        }
        if (dx == 0.0) {
            return;
        }
        const Matrix& w_next = net.weights(l + 1);
        if (l + 1 == depth) {
            for (std::size_t r = 0; r < outputs_n_; ++r) {
                out_new(static_cast<Eigen::Index>(r)) = out(r, mu) + w_next(r, i) * dx;
            }
            finish_sample(mu);
            return;
        }
        // one changed neuron fans out to a whole hidden layer; propagate dense deltas from there
        Vector* delta = &scratch_delta_[l + 1];
        {
            const std::size_t n = net.layer_size(l + 1);
            for (std::size_t r = 0; r < n; ++r) {
                const double hn = fields_[l + 1](r, mu) + w_next(r, i) * dx;
                const double xn = net.transfer(hn);
                (*delta)(static_cast<Eigen::Index>(r)) = xn - outputs_[l + 1](r, mu);
                if constexpr (Apply) {
                    fields_[l + 1](r, mu) = hn;
                    outputs_[l + 1](r, mu) = xn;
                }
            }
        }
        for (std::size_t q = l + 2; q <= depth; ++q) {
            if (q == depth) {
                out_new.noalias() = net.weights(q) * (*delta);
                for (std::size_t r = 0; r < outputs_n_; ++r) {
                    out_new(static_cast<Eigen::Index>(r)) += out(r, mu);
                }
                finish_sample(mu);
            } else {
                Vector& dh = scratch_field_[q];
                dh.noalias() = net.weights(q) * (*delta);
                Vector& next = scratch_delta_[q];
                const std::size_t n = net.layer_size(q);
                for (std::size_t r = 0; r < n; ++r) {
                    const double hn = fields_[q](r, mu) + dh(static_cast<Eigen::Index>(r));
                    const double xn = net.transfer(hn);
                    next(static_cast<Eigen::Index>(r)) = xn - outputs_[q](r, mu);
                    if constexpr (Apply) {
                        fields_[q](r, mu) = hn;
                        outputs_[q](r, mu) = xn;
                    }
                }
                delta = &next;
            }
        }
    };

    if (dw != 0.0) {
        if (l == 1) {
            for (auto mu : nonzero_[j]) {
                visit(mu, input_t_(j, mu));
            }
        } else {
            const Matrix& below = outputs_[l - 1];
            for (std::size_t mu = 0; mu < samples_; ++mu) {
                const double x_in = below(j, mu);
                if (x_in != 0.0) {
                    visit(mu, x_in);
                }
            }
        }
    }
    if (touched_.empty()) {
        return 0.0;
    }
    const double new_sum = total_loss();
    const double dsq = new_sum - sq_sum_;
    if constexpr (Apply) {
        for (auto mu : touched_) {
            row_sq_[mu] = row_scratch_[mu];
        }
        sq_sum_ = new_sum;
    } else {
        for (auto mu : touched_) {
            row_scratch_[mu] = row_sq_[mu];
        }
    }
    return dsq;
}

double ActivationCache::delta(const Network& net, const Mutation& m) {
    if (m.layer == 0 || m.layer > net.depth() || m.row >= net.layer_size(m.layer) ||
        m.col >= net.layer_size(m.layer - 1)) {
        throw DimensionError("mutation index out of range");
    }
    return evaluate<false>(net, m) * inv_count_;
}

double ActivationCache::commit(Network& net, const Mutation& m) {
    if (m.layer == 0 || m.layer > net.depth() || m.row >= net.layer_size(m.layer) ||
        m.col >= net.layer_size(m.layer - 1)) {
        throw DimensionError("mutation index out of range");
    }
    if (!(std::abs(m.new_value) <= weight_bound)) {
        throw std::invalid_argument("mutation value outside [-1, 1]");
    }
    const double dsq = evaluate<true>(net, m);
    net.set_weight(m.layer, m.row, m.col, m.new_value);
    return dsq * inv_count_;
}

double ActivationCache::max_residual(const Network& net) const {
    const std::size_t depth = net.depth();
    double worst = 0.0;
    Matrix x = data_->inputs();
    for (std::size_t l = 1; l <= depth; ++l) {
        Matrix h = x * net.weights(l).transpose();
        worst = std::max(worst, (h.transpose() - fields_[l]).cwiseAbs().maxCoeff());
        if (l < depth) {
            x = h.unaryExpr([&net](double v) { return net.transfer(v); });
            worst = std::max(worst, (x.transpose() - outputs_[l]).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double delta_cost(const Network& net, ActivationCache& cache, const Mutation& m) {
    return cache.delta(net, m);
}

bool mc_step(Network& net, ActivationCache& cache, Rng& rng) {
    const Mutation m = propose(rng, net);
    if (cache.delta(net, m) < 0.0) {
        cache.commit(net, m);
        return true;
    }
    return false;
}

static void record_point(TrainTrace& trace, std::uint64_t step, std::uint64_t accepted, const ActivationCache& cache) {
    const Matrix m = cache.margins();
    const Dataset& data = cache.data();
    const auto outputs = static_cast<std::size_t>(m.cols());

    std::vector<double> per_all(outputs, 0.0);
    std::vector<double> per_label(outputs, 0.0);
    std::vector<std::size_t> label_count(outputs, 0);
    double label_sum = 0.0;
    for (std::size_t mu = 0; mu < data.size(); ++mu) {
        const std::size_t c = data.label(mu);
        label_sum += m(mu, c);
        per_label[c] += m(mu, c);
        ++label_count[c];
        for (std::size_t i = 0; i < outputs; ++i) {
            per_all[i] += m(mu, i);
        }
    }
    for (std::size_t i = 0; i < outputs; ++i) {
        per_all[i] /= static_cast<double>(data.size());
        per_label[i] = label_count[i] ? per_label[i] / static_cast<double>(label_count[i]) : 0.0;
    }
    trace.steps.push_back(step);
    trace.costs.push_back(cache.cost());
    trace.mean_margin_all.push_back(m.mean());
    trace.mean_margin_label.push_back(label_sum / static_cast<double>(data.size()));
    trace.accepted_total.push_back(accepted);
    trace.output_margin_all.push_back(std::move(per_all));
    trace.output_margin_label.push_back(std::move(per_label));
}

TrainTrace train(Network& net, const Dataset& data, const TrainConfig& cfg, const TraceObserver& observer) {
    cfg.validate();
    TrainTrace trace;
    if (cfg.max_steps == 0) {
        return trace;
    }
    Rng rng(cfg.seed, Rng::train_stream);
    ActivationCache cache(net, data, cfg.d);
    std::uint64_t accepted = 0;
    for (std::uint64_t step = 1; step <= cfg.max_steps; ++step) {
        bool stop = false;
        if (mc_step(net, cache, rng)) {
            ++accepted;
            stop = cfg.stop_cost > 0.0 && cache.cost() <= cfg.stop_cost;
        }
        if (stop || step % cfg.record_every == 0 || step == cfg.max_steps) {
            record_point(trace, step, accepted, cache);
            if (observer) {
                observer(net, cache, trace);
            }
        }
        if (stop) {
            break;
        }
    }
    return trace;
}

std::vector<Network> train_replicas(const Dataset& data, const TrainConfig& cfg, const NetworkSpec& spec,
                                    std::vector<TrainTrace>* traces, std::size_t threads) {
    cfg.validate();
    const std::size_t n = cfg.replicas;
    std::vector<Network> nets(n);
    std::vector<TrainTrace> local_traces(n);
    parallel_for(n, threads, [&](std::size_t r) {
        TrainConfig rc = cfg;
        rc.seed = cfg.seed + r;
        rc.replicas = 1;
        Network net = init_network(spec, rc.seed);
        local_traces[r] = train(net, data, rc);
        nets[r] = std::move(net);
    });
    if (traces) {
        *traces = std::move(local_traces);
    }
    return nets;
}

}
