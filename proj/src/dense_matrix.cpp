#include "qmedian/dense_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qmedian/errors.hpp"

namespace qmedian {

DenseMatrix::DenseMatrix(int n) : bits_(n) {
    if (n < 1 || n > kDenseMaxBits) {
        throw SizeError("dense matrix size n=" + std::to_string(n) + " outside [1, " +
                        std::to_string(kDenseMaxBits) + "]");
    }
    dim_ = std::size_t{1} << n;
    entries_.assign(dim_ * dim_, Complex{});
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::coin_flip() {
    DenseMatrix m(1);
    const double r = std::sqrt(0.5);
    m(0, 0) = r;
    m(0, 1) = r;
    m(1, 0) = r;
    m(1, 1) = -r;
    return m;
}

DenseMatrix DenseMatrix::fourier(int n) {
    DenseMatrix m(n);
    const double scale = std::exp2(-0.5 * n);
    for (std::size_t p = 0; p < m.dim_; ++p) {
        for (std::size_t q = 0; q < m.dim_; ++q) {
            m(p, q) = (std::popcount(p & q) % 2 == 0) ? scale : -scale;
        }
    }
    return m;
}

DenseMatrix DenseMatrix::diffusion(int n) {
    DenseMatrix m(n);
    const double inv = 1.0 / static_cast<double>(m.dim_);
    for (std::size_t p = 0; p < m.dim_; ++p) {
        for (std::size_t q = 0; q < m.dim_; ++q) m(p, q) = 2.0 * inv;
        m(p, p) = -1.0 + 2.0 * inv;
    }
    return m;
}

DenseMatrix DenseMatrix::shift(int n) {
    DenseMatrix m(n);
    const double big_n = static_cast<double>(m.dim_);
    for (std::size_t p = 0; p < m.dim_; ++p) {
        for (std::size_t q = 0; q < m.dim_; ++q) m(p, q) = Complex{1.0 / big_n, 1.0 / big_n};
        m(p, p) = Complex{1.0 / big_n, -(big_n - 1.0) / big_n};
    }
    return m;
}

DenseMatrix DenseMatrix::reflect_zero(int n) {
    DenseMatrix m(n);
    m(0, 0) = 1.0;
    for (std::size_t p = 1; p < m.dim_; ++p) m(p, p) = -1.0;
    return m;
}

DenseMatrix DenseMatrix::rotate_zero(int n) {
    DenseMatrix m(n);
    m(0, 0) = 1.0;
    for (std::size_t p = 1; p < m.dim_; ++p) m(p, p) = Complex{0.0, -1.0};
    return m;
}

DenseMatrix DenseMatrix::phase(const BasisMask& mask, double angle) {
    if (mask.dim() < 2 || !std::has_single_bit(mask.dim())) {
        throw SizeError("mask dimension is not a power of two >= 2");
    }
    DenseMatrix m(std::countr_zero(mask.dim()));
    const Complex factor = std::polar(1.0, angle);
    for (std::size_t p = 0; p < m.dim_; ++p) m(p, p) = mask.test(p) ? factor : Complex{1.0, 0.0};
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw SizeError("dense matrix dimension mismatch");
    DenseMatrix out(bits_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

StateVector DenseMatrix::apply(const StateVector& state) const {
    if (state.dim() != dim_) throw SizeError("dense matrix / state dimension mismatch");
    std::vector<Complex> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * state[j];
        out[i] = acc;
    }
    return StateVector::from_amplitudes(std::move(out));
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix out(bits_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& other) const {
    if (other.dim_ != dim_) throw SizeError("dense matrix dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    }
    return worst;
}

}  // namespace qmedian
