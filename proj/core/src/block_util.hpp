#pragma once

#include "synkernel/mf_module.hpp"

#include <functional>
#include <numeric>
#include <vector>

namespace synkernel::detail {

/// Block matrix with fixed row and column partitions.
class Blocks {
public:
    Blocks(std::vector<std::size_t> rows, std::vector<std::size_t> cols) : rows_(std::move(rows)), cols_(std::move(cols)) {
        m_ = Matrix(total(rows_), total(cols_));
    }
    void add(std::size_t i, std::size_t j, const Matrix& b) {
        if (rows_[i] == 0 || cols_[j] == 0) return;
        m_.add_block(offset(rows_, i), offset(cols_, j), b);
    }
    const Matrix& matrix() const { return m_; }

    static std::size_t total(const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

private:
    static std::size_t offset(const std::vector<std::size_t>& v, std::size_t k) {
        return std::accumulate(v.begin(), v.begin() + static_cast<long>(k), std::size_t{0});
    }
    std::vector<std::size_t> rows_, cols_;
    Matrix m_;
};

/// Filtration whose steps F^k for k in (klo, khi + 1] come from `step`; F^klo must be full.
inline Filtration filtration_from(std::size_t ambient, int klo, int khi, const std::function<Subspace(int)>& step) {
    std::vector<Subspace> steps;
    for (int k = klo + 1; k <= khi + 1; ++k) steps.push_back(step(k));
    return Filtration(ambient, klo + 1, std::move(steps));
}

inline Rational power_of(long p, int k) {
    Rational out(1);
    for (int i = 0; i < (k < 0 ? -k : k); ++i) out *= p;
    return k >= 0 ? out : Rational(1) / out;
}

}  // namespace synkernel::detail
