#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "mmdd/errors.hpp"

namespace mmdd {

// Dense row-major f64 array. Most latents in this codebase are rank-1.
struct DenseArray {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    DenseArray() = default;

    DenseArray(std::vector<std::size_t> shape_in, std::vector<double> data_in)
        : shape(std::move(shape_in)), data(std::move(data_in)) {
        if (element_count(shape) != data.size()) {
            throw InvalidArgument("DenseArray: shape product " +
                                  std::to_string(element_count(shape)) +
                                  " != data length " + std::to_string(data.size()));
        }
    }

    static DenseArray zeros(std::vector<std::size_t> shape_in) {
        const std::size_t n = element_count(shape_in);
        return DenseArray(std::move(shape_in), std::vector<double>(n, 0.0));
    }

    static DenseArray vector(std::vector<double> v) {
        const std::size_t n = v.size();
        return DenseArray({n}, std::move(v));
    }

    static std::size_t element_count(const std::vector<std::size_t>& shape) {
        std::size_t n = 1;
        for (std::size_t d : shape) n *= d;
        return shape.empty() ? 0 : n;
    }

    std::size_t size() const { return data.size(); }
    double operator[](std::size_t i) const { return data[i]; }
    double& operator[](std::size_t i) { return data[i]; }

    bool same_shape(const DenseArray& other) const { return shape == other.shape; }
};

inline std::string shape_string(const std::vector<std::size_t>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

inline void require_same_shape(const DenseArray& a, const DenseArray& b, const char* op) {
    if (!a.same_shape(b)) {
        throw InvalidArgument(std::string(op) + ": shape mismatch " +
                              shape_string(a.shape) + " vs " + shape_string(b.shape));
    }
}

inline void require_finite(const DenseArray& a, const char* what) {
    for (double v : a.data) {
        if (!std::isfinite(v)) {
            throw NumericError(std::string(what) + ": non-finite value");
        }
    }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double l2_norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace mmdd
