#pragma once

#include <cstddef>
#include <vector>

#include "mmdd/array.hpp"
#include "mmdd/feature_buffer.hpp"

namespace mmdd {

// a.b / (max(|a|, eps0) * max(|b|, eps0)), eps0 = 1e-12; range [-1, 1].
double cosine_similarity(const DenseArray& a, const DenseArray& b);

struct MinMaxTerm {
    double value = 0.0;              // signed value as summed into the loss
    std::vector<double> zhat_grad;   // d value / d zhat, nonzero only via the selected entry
    std::size_t index = 0;           // selected bucket position (insertion order)
};

// -min_m cos(zhat, z_m) over the class bucket of a real buffer; minimizing it
// raises the least similarity. Ties resolve to the lowest index. Throws
// BufferUnderflow when the bucket is empty.
MinMaxTerm representativeness_term(const FeatureBuffer& real_buffer, const DenseArray& zhat,
                                   std::size_t class_id);

// +max_d cos(zhat, z_d) over the class bucket of a synthesized buffer;
// minimizing it pushes the closest synthesized neighbor away.
MinMaxTerm diversity_term(const FeatureBuffer& synth_buffer, const DenseArray& zhat,
                          std::size_t class_id);

struct LossBreakdown {
    double l_diff = 0.0;
    double l_r = 0.0;
    double l_d = 0.0;
    double l_total = 0.0;
    double lambda_r = 0.0;
    double lambda_d = 0.0;
    // Per-sample selected bucket positions; -1 where the term was skipped
    // because the class bucket was still empty.
    std::vector<std::ptrdiff_t> r_index;
    std::vector<std::ptrdiff_t> d_index;
    std::size_t r_skipped = 0;
    std::size_t d_skipped = 0;
};

// Batch objective: l_diff is the batch mean of |eps - eps_hat|^2, l_r / l_d
// are batch means of the signed min-max terms (zeros where skipped), and
// l_total = w_diff*l_diff + lambda_r*l_r + lambda_d*l_d. When eps_hat_grads
// is non-null it receives, per sample, the full gradient of l_total with
// respect to eps_hat, with the min-max contribution routed through
// zhat = z_t - eps_hat. w_diff is 1 everywhere except gradient diagnostics.
LossBreakdown combined_loss(const std::vector<DenseArray>& eps,
                            const std::vector<DenseArray>& eps_hat,
                            const std::vector<DenseArray>& zhat,
                            const std::vector<std::size_t>& classes,
                            const FeatureBuffer& real_buffer, const FeatureBuffer& synth_buffer,
                            double lambda_r, double lambda_d,
                            std::vector<std::vector<double>>* eps_hat_grads = nullptr,
                            double w_diff = 1.0);

} // namespace mmdd
