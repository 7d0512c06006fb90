#include "mmdd/minmax.hpp"

#include <cmath>
#include <string>

#include "mmdd/errors.hpp"

namespace {

constexpr double kNormFloor = 1e-12;

// Gradient of cos(a, b) with respect to a, with the norm floor treated as a
// constant when active.
std::vector<double> cosine_grad_wrt_a(const std::vector<double>& a, const std::vector<double>& b) {
    const double na_raw = mmdd::l2_norm(a);
    const double nb_raw = mmdd::l2_norm(b);
    const double na = std::max(na_raw, kNormFloor);
    const double nb = std::max(nb_raw, kNormFloor);
    const double ab = mmdd::dot(a, b);
    std::vector<double> g(a.size());
    const double inv = 1.0 / (na * nb);
    if (na_raw > kNormFloor) {
        const double coeff = ab / (na * na);
        for (std::size_t i = 0; i < a.size(); ++i) g[i] = (b[i] - coeff * a[i]) * inv;
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) g[i] = b[i] * inv;
    }
    return g;
}

double cosine_raw(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = std::max(mmdd::l2_norm(a), kNormFloor);
    const double nb = std::max(mmdd::l2_norm(b), kNormFloor);
    return mmdd::dot(a, b) / (na * nb);
}

} // namespace

namespace mmdd {

double cosine_similarity(const DenseArray& a, const DenseArray& b) {
    require_same_shape(a, b, "cosine_similarity");
    if (a.size() == 0) throw InvalidArgument("cosine_similarity: empty input");
    return cosine_raw(a.data, b.data);
}

namespace {

enum class Pick { Min, Max };

MinMaxTerm select_extreme(const FeatureBuffer& buffer, const DenseArray& zhat,
                          std::size_t class_id, Pick pick, const char* op) {
    if (zhat.size() != buffer.dim()) {
        throw InvalidArgument(std::string(op) + ": zhat dim " + std::to_string(zhat.size()) +
                              " != buffer dim " + std::to_string(buffer.dim()));
    }
    const std::size_t n = buffer.count(class_id);
    if (n == 0) {
        throw BufferUnderflow(std::string(op) + ": empty bucket for class " +
                              std::to_string(class_id));
    }
    std::size_t best = 0;
    double best_sim = cosine_raw(zhat.data, buffer.entry(class_id, 0));
    for (std::size_t i = 1; i < n; ++i) {
        const double s = cosine_raw(zhat.data, buffer.entry(class_id, i));
        // Strict comparison keeps the lowest index on ties.
        if (pick == Pick::Min ? s < best_sim : s > best_sim) {
            best_sim = s;
            best = i;
        }
    }

    MinMaxTerm term;
    term.index = best;
    term.zhat_grad = cosine_grad_wrt_a(zhat.data, buffer.entry(class_id, best));
    if (pick == Pick::Min) {
        term.value = -best_sim;
        for (auto& g : term.zhat_grad) g = -g;
    } else {
        term.value = best_sim;
    }
    return term;
}

} // namespace

MinMaxTerm representativeness_term(const FeatureBuffer& real_buffer, const DenseArray& zhat,
                                   std::size_t class_id) {
    return select_extreme(real_buffer, zhat, class_id, Pick::Min, "representativeness_term");
}

MinMaxTerm diversity_term(const FeatureBuffer& synth_buffer, const DenseArray& zhat,
                          std::size_t class_id) {
    return select_extreme(synth_buffer, zhat, class_id, Pick::Max, "diversity_term");
}

LossBreakdown combined_loss(const std::vector<DenseArray>& eps,
                            const std::vector<DenseArray>& eps_hat,
                            const std::vector<DenseArray>& zhat,
                            const std::vector<std::size_t>& classes,
                            const FeatureBuffer& real_buffer, const FeatureBuffer& synth_buffer,
                            double lambda_r, double lambda_d,
                            std::vector<std::vector<double>>* eps_hat_grads, double w_diff) {
    const std::size_t batch = eps.size();
    if (batch == 0) throw InvalidArgument("combined_loss: empty batch");
    if (eps_hat.size() != batch || zhat.size() != batch || classes.size() != batch) {
        throw InvalidArgument("combined_loss: batch size mismatch");
    }
    if (lambda_r < 0.0 || lambda_d < 0.0) {
        throw InvalidArgument("combined_loss: lambda weights must be >= 0");
    }

    LossBreakdown out;
    out.lambda_r = lambda_r;
    out.lambda_d = lambda_d;
    out.r_index.assign(batch, -1);
    out.d_index.assign(batch, -1);
    if (eps_hat_grads) {
        eps_hat_grads->assign(batch, {});
    }

    const double inv_b = 1.0 / static_cast<double>(batch);
    for (std::size_t i = 0; i < batch; ++i) {
        require_same_shape(eps[i], eps_hat[i], "combined_loss");
        const std::size_t dim = eps[i].size();

        double sq = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = eps[i].data[k] - eps_hat[i].data[k];
            sq += d * d;
        }
        out.l_diff += sq * inv_b;

        std::vector<double> zgrad(dim, 0.0);
        if (real_buffer.count(classes[i]) > 0) {
            const auto term = representativeness_term(real_buffer, zhat[i], classes[i]);
            out.l_r += term.value * inv_b;
            out.r_index[i] = static_cast<std::ptrdiff_t>(term.index);
            for (std::size_t k = 0; k < dim; ++k) zgrad[k] += lambda_r * term.zhat_grad[k];
        } else {
            ++out.r_skipped;
        }
        if (synth_buffer.count(classes[i]) > 0) {
            const auto term = diversity_term(synth_buffer, zhat[i], classes[i]);
            out.l_d += term.value * inv_b;
            out.d_index[i] = static_cast<std::ptrdiff_t>(term.index);
            for (std::size_t k = 0; k < dim; ++k) zgrad[k] += lambda_d * term.zhat_grad[k];
        } else {
            ++out.d_skipped;
        }

        if (eps_hat_grads) {
            // d l_total / d eps_hat: the diff term directly, the min-max terms
            // through zhat = z_t - eps_hat.
            auto& g = (*eps_hat_grads)[i];
            g.assign(dim, 0.0);
            for (std::size_t k = 0; k < dim; ++k) {
                g[k] = w_diff * 2.0 * (eps_hat[i].data[k] - eps[i].data[k]) * inv_b -
                       zgrad[k] * inv_b;
            }
        }
    }

    out.l_total = w_diff * out.l_diff + lambda_r * out.l_r + lambda_d * out.l_d;
    return out;
}

} // namespace mmdd
