#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparqlqa::num {

// Dense row-major matrix of doubles. All model tensors use this type so the
// optimizer and the serializer can treat parameters uniformly.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(std::size_t r) { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const { return data_.data() + r * cols_; }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using Vec = std::vector<double>;

// Deterministic PRNG. std::mt19937_64 has a pinned algorithm, but the
// standard distributions do not, so the draws are implemented here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return state_(); }

    double uniform(double lo, double hi) {
        // 53 mantissa bits -> uniform in [0,1)
        double u = std::ldexp(static_cast<double>(state_() >> 11), -53);
        return lo + (hi - lo) * u;
    }

    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(state_()) * n) >> 64);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    struct SplitMix {
        // mt19937_64 seeded poorly from small ints correlates early draws;
        // splitmix is the usual fix and keeps seeding a single u64.
        std::uint64_t x;
        std::uint64_t operator()() {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }
    };
    SplitMix state_;
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double log_sum_exp(const double* xs, std::size_t n) {
    double m = xs[0];
    for (std::size_t i = 1; i < n; ++i)
        if (xs[i] > m) m = xs[i];
    if (!std::isfinite(m)) return m;  // all -inf stays -inf
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(xs[i] - m);
    return m + std::log(s);
}

inline double log_sum_exp(const Vec& xs) { return log_sum_exp(xs.data(), xs.size()); }

// y += M x  (M: r x c, x: c, y: r)
inline void matvec_add(const Matrix& m, const double* x, double* y) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* mr = m.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += mr[c] * x[c];
        y[r] += acc;
    }
}

// y += M^T x  (M: r x c, x: r, y: c)
inline void matvec_t_add(const Matrix& m, const double* x, double* y) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* mr = m.row(r);
        double xr = x[r];
        for (std::size_t c = 0; c < m.cols(); ++c) y[c] += mr[c] * xr;
    }
}

// G += a b^T  (a: rows of G, b: cols of G)
inline void outer_add(Matrix& g, const double* a, const double* b) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
        double ar = a[r];
        double* gr = g.row(r);
        for (std::size_t c = 0; c < g.cols(); ++c) gr[c] += ar * b[c];
    }
}

inline void softmax_inplace(Vec& xs) {
    double m = xs[0];
    for (double x : xs)
        if (x > m) m = x;
    double s = 0.0;
    for (double& x : xs) {
        x = std::exp(x - m);
        s += x;
    }
    for (double& x : xs) x /= s;
}

}  // namespace sparqlqa::num
