#pragma once

#include <cstddef>
#include <vector>

#include "mmdd/array.hpp"
#include "mmdd/rng.hpp"

namespace mmdd {

// Stand-in for the encoder/decoder pair around the diffusion latent space.
// Identity mode is an exact inverse pair; linear mode applies bias-free
// matrices whose encode/decode shapes are transposes of each other.
class LatentCodec {
public:
    enum class Mode { Identity, Linear };

    static LatentCodec identity(std::size_t dim);

    // enc is latent_dim x input_dim row-major, dec is input_dim x latent_dim.
    static LatentCodec linear(std::size_t input_dim, std::size_t latent_dim,
                              std::vector<double> enc, std::vector<double> dec);

    // Random orthonormal square codec (dec = enc^T), exact inverse up to
    // rounding. Handy for stress-testing the linear path.
    static LatentCodec linear_orthonormal(std::size_t dim, Rng& rng);

    DenseArray encode(const DenseArray& x) const;
    DenseArray decode(const DenseArray& z) const;

    Mode mode() const { return mode_; }
    std::size_t input_dim() const { return input_dim_; }
    std::size_t latent_dim() const { return latent_dim_; }

private:
    LatentCodec() = default;

    Mode mode_ = Mode::Identity;
    std::size_t input_dim_ = 0;
    std::size_t latent_dim_ = 0;
    std::vector<double> enc_;
    std::vector<double> dec_;
};

} // namespace mmdd
