#pragma once

#include <cstddef>
#include <vector>

#include "qmedian/state_vector.hpp"

namespace qmedian {

inline constexpr int kDenseMaxBits = 6;

// Explicit 2^n x 2^n operator, row-major. Only used to cross-check the
// streaming transforms, so n is capped at kDenseMaxBits.
class DenseMatrix {
public:
    explicit DenseMatrix(int n);

    static DenseMatrix identity(int n);
    // Single-bit coin flip [[1, 1], [1, -1]] / sqrt(2).
    static DenseMatrix coin_flip();
    // F_pq = 2^(-n/2) (-1)^popcount(p & q).
    static DenseMatrix fourier(int n);
    // D_pq = 2/N off the diagonal, -1 + 2/N on it.
    static DenseMatrix diffusion(int n);
    // S_pq = (1 + i)/N off the diagonal, 1/N - i(N-1)/N on it.
    static DenseMatrix shift(int n);
    // diag(1, -1, ..., -1).
    static DenseMatrix reflect_zero(int n);
    // diag(1, -i, ..., -i).
    static DenseMatrix rotate_zero(int n);
    // diag with e^{i angle} on the masked indices and 1 elsewhere.
    static DenseMatrix phase(const BasisMask& mask, double angle);

    int bits() const noexcept { return bits_; }
    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return entries_[r * dim_ + c];
    }

    DenseMatrix operator*(const DenseMatrix& rhs) const;
    StateVector apply(const StateVector& state) const;
    DenseMatrix adjoint() const;

    double max_abs_diff(const DenseMatrix& other) const;

private:
    int bits_;
    std::size_t dim_;
    std::vector<Complex> entries_;
};

}  // namespace qmedian
