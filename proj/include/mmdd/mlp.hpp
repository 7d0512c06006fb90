#pragma once

#include <cstddef>
#include <vector>

#include "mmdd/rng.hpp"

namespace mmdd {

enum class Activation { Tanh, Relu };

struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> w; // out x in, row-major
    std::vector<double> b; // out
};

// Post-activation outputs per layer; h[0] is the network input.
struct MlpCache {
    std::vector<std::vector<double>> h;
};

// Plain fully connected net, hidden activation on all but the last layer,
// linear output. Parameters flatten layer by layer (W then b) for the
// optimizer and for finite-difference checks.
class Mlp {
public:
    Mlp() = default;
    Mlp(std::vector<std::size_t> dims, Activation hidden_act);

    // Glorot-uniform weights; optionally zero the final layer so a fresh
    // network is the constant-zero map.
    void init_params(Rng& rng, bool zero_final_layer);

    std::size_t param_count() const;
    std::vector<double> flatten_params() const;
    void set_params(const std::vector<double>& flat);

    std::vector<double> forward(const std::vector<double>& x, MlpCache* cache = nullptr) const;

    // Accumulates parameter gradients (+=) into grads_flat (param_count-sized)
    // and returns dL/dx. cache must come from a forward on the same params.
    std::vector<double> backward(const MlpCache& cache, const std::vector<double>& d_out,
                                 std::vector<double>& grads_flat) const;

    std::size_t input_dim() const { return dims_.empty() ? 0 : dims_.front(); }
    std::size_t output_dim() const { return dims_.empty() ? 0 : dims_.back(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<DenseLayer>& layers() const { return layers_; }
    Activation hidden_activation() const { return act_; }

private:
    std::vector<std::size_t> dims_;
    Activation act_ = Activation::Tanh;
    std::vector<DenseLayer> layers_;
};

} // namespace mmdd
