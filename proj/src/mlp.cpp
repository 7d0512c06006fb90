#include "mmdd/mlp.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace mmdd {

Mlp::Mlp(std::vector<std::size_t> dims, Activation hidden_act)
    : dims_(std::move(dims)), act_(hidden_act) {
    if (dims_.size() < 2) {
        throw InvalidArgument("Mlp: need at least input and output dims");
    }
    for (std::size_t d : dims_) {
        if (d == 0) throw InvalidArgument("Mlp: zero-width layer");
    }
    layers_.resize(dims_.size() - 1);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        layers_[l].in = dims_[l];
        layers_[l].out = dims_[l + 1];
        layers_[l].w.assign(layers_[l].in * layers_[l].out, 0.0);
        layers_[l].b.assign(layers_[l].out, 0.0);
    }
}

void Mlp::init_params(Rng& rng, bool zero_final_layer) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        auto& layer = layers_[l];
        if (zero_final_layer && l + 1 == layers_.size()) {
            layer.w.assign(layer.w.size(), 0.0);
            layer.b.assign(layer.b.size(), 0.0);
            continue;
        }
        const double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        for (auto& w : layer.w) w = (2.0 * rng.uniform01() - 1.0) * bound;
        for (auto& b : layer.b) b = 0.0;
    }
}

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers_) n += layer.w.size() + layer.b.size();
    return n;
}

std::vector<double> Mlp::flatten_params() const {
    std::vector<double> flat;
    flat.reserve(param_count());
    for (const auto& layer : layers_) {
        flat.insert(flat.end(), layer.w.begin(), layer.w.end());
        flat.insert(flat.end(), layer.b.begin(), layer.b.end());
    }
    return flat;
}

void Mlp::set_params(const std::vector<double>& flat) {
    if (flat.size() != param_count()) {
        throw InvalidArgument("Mlp::set_params: expected " + std::to_string(param_count()) +
                              " values, got " + std::to_string(flat.size()));
    }
    std::size_t off = 0;
    for (auto& layer : layers_) {
        std::copy(flat.begin() + off, flat.begin() + off + layer.w.size(), layer.w.begin());
        off += layer.w.size();
        std::copy(flat.begin() + off, flat.begin() + off + layer.b.size(), layer.b.begin());
        off += layer.b.size();
    }
}

std::vector<double> Mlp::forward(const std::vector<double>& x, MlpCache* cache) const {
    if (x.size() != input_dim()) {
        throw InvalidArgument("Mlp::forward: input dim " + std::to_string(x.size()) +
                              " != expected " + std::to_string(input_dim()));
    }
    if (cache) {
        cache->h.clear();
        cache->h.push_back(x);
    }
    std::vector<double> cur = x;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& layer = layers_[l];
        std::vector<double> next(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double* wrow = layer.w.data() + o * layer.in;
            double acc = layer.b[o];
            for (std::size_t i = 0; i < layer.in; ++i) acc += wrow[i] * cur[i];
            next[o] = acc;
        }
        if (l + 1 < layers_.size()) {
            if (act_ == Activation::Tanh) {
                for (auto& v : next) v = std::tanh(v);
            } else {
                for (auto& v : next) v = v > 0.0 ? v : 0.0;
            }
        }
        if (cache) cache->h.push_back(next);
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> Mlp::backward(const MlpCache& cache, const std::vector<double>& d_out,
                                  std::vector<double>& grads_flat) const {
    if (cache.h.size() != layers_.size() + 1) {
        throw InvalidArgument("Mlp::backward: cache depth mismatch");
    }
    if (d_out.size() != output_dim()) {
        throw InvalidArgument("Mlp::backward: upstream dim " + std::to_string(d_out.size()) +
                              " != output dim " + std::to_string(output_dim()));
    }
    if (grads_flat.size() != param_count()) {
        throw InvalidArgument("Mlp::backward: gradient buffer size mismatch");
    }

    // Flat offsets of each layer's W block.
    std::vector<std::size_t> offsets(layers_.size());
    std::size_t off = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        offsets[l] = off;
        off += layers_[l].w.size() + layers_[l].b.size();
    }

    std::vector<double> delta = d_out;
    for (std::size_t li = layers_.size(); li-- > 0;) {
        const auto& layer = layers_[li];
        const auto& h_in = cache.h[li];

        double* gw = grads_flat.data() + offsets[li];
        double* gb = gw + layer.w.size();
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double d = delta[o];
            double* gwrow = gw + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) gwrow[i] += d * h_in[i];
            gb[o] += d;
        }

        std::vector<double> d_prev(layer.in, 0.0);
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double d = delta[o];
            const double* wrow = layer.w.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) d_prev[i] += wrow[i] * d;
        }

        if (li > 0) {
            // h_in is the post-activation output of layer li-1.
            if (act_ == Activation::Tanh) {
                for (std::size_t i = 0; i < layer.in; ++i) d_prev[i] *= 1.0 - h_in[i] * h_in[i];
            } else {
                for (std::size_t i = 0; i < layer.in; ++i) {
                    if (h_in[i] <= 0.0) d_prev[i] = 0.0;
                }
            }
        }
        delta = std::move(d_prev);
    }
    return delta;
}

} // namespace mmdd
