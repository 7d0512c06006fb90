#include "mmdd/codec.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace {

std::vector<double> mat_vec(const std::vector<double>& m, std::size_t rows, std::size_t cols,
                            const std::vector<double>& v) {
    std::vector<double> out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = m.data() + r * cols;
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

} // namespace

namespace mmdd {

LatentCodec LatentCodec::identity(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("LatentCodec: dim must be >= 1");
    LatentCodec c;
    c.mode_ = Mode::Identity;
    c.input_dim_ = dim;
    c.latent_dim_ = dim;
    return c;
}

LatentCodec LatentCodec::linear(std::size_t input_dim, std::size_t latent_dim,
                                std::vector<double> enc, std::vector<double> dec) {
    if (input_dim == 0 || latent_dim == 0) {
        throw InvalidArgument("LatentCodec: dims must be >= 1");
    }
    if (enc.size() != latent_dim * input_dim) {
        throw InvalidArgument("LatentCodec: encode matrix size " + std::to_string(enc.size()) +
                              " != " + std::to_string(latent_dim * input_dim));
    }
    if (dec.size() != input_dim * latent_dim) {
        throw InvalidArgument("LatentCodec: decode matrix size " + std::to_string(dec.size()) +
                              " != " + std::to_string(input_dim * latent_dim));
    }
    LatentCodec c;
    c.mode_ = Mode::Linear;
    c.input_dim_ = input_dim;
    c.latent_dim_ = latent_dim;
    c.enc_ = std::move(enc);
    c.dec_ = std::move(dec);
    return c;
}

LatentCodec LatentCodec::linear_orthonormal(std::size_t dim, Rng& rng) {
    // Gram-Schmidt on a random Gaussian matrix; rows become orthonormal.
    std::vector<std::vector<double>> rows(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        rows[r] = rng.normal_vec(dim);
        for (std::size_t p = 0; p < r; ++p) {
            const double proj = dot(rows[r], rows[p]);
            for (std::size_t i = 0; i < dim; ++i) rows[r][i] -= proj * rows[p][i];
        }
        const double n = l2_norm(rows[r]);
        if (n < 1e-9) {
            // Degenerate draw; restart this row.
            --r;
            continue;
        }
        for (auto& v : rows[r]) v /= n;
    }
    std::vector<double> enc(dim * dim), dec(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            enc[r * dim + c] = rows[r][c];
            dec[c * dim + r] = rows[r][c]; // transpose
        }
    }
    return linear(dim, dim, std::move(enc), std::move(dec));
}

DenseArray LatentCodec::encode(const DenseArray& x) const {
    if (x.size() != input_dim_) {
        throw InvalidArgument("LatentCodec::encode: input dim " + std::to_string(x.size()) +
                              " != " + std::to_string(input_dim_));
    }
    if (mode_ == Mode::Identity) return x;
    return DenseArray::vector(mat_vec(enc_, latent_dim_, input_dim_, x.data));
}

DenseArray LatentCodec::decode(const DenseArray& z) const {
    if (z.size() != latent_dim_) {
        throw InvalidArgument("LatentCodec::decode: latent dim " + std::to_string(z.size()) +
                              " != " + std::to_string(latent_dim_));
    }
    if (mode_ == Mode::Identity) return z;
    return DenseArray::vector(mat_vec(dec_, input_dim_, latent_dim_, z.data));
}

} // namespace mmdd
