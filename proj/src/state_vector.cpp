#include "qmedian/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qmedian/errors.hpp"

namespace qmedian {

namespace {

constexpr std::size_t kPairwiseBlock = 32;

void check_bits(int n, int max_bits) {
    if (n < 1 || n > max_bits) {
        throw SizeError("register size n=" + std::to_string(n) + " outside [1, " +
                        std::to_string(max_bits) + "]");
    }
}

Complex pairwise_sum(std::span<const Complex> a) noexcept {
    if (a.size() <= kPairwiseBlock) {
        Complex s{0.0, 0.0};
        for (const Complex& x : a) s += x;
        return s;
    }
    const std::size_t half = a.size() / 2;
    return pairwise_sum(a.first(half)) + pairwise_sum(a.subspan(half));
}

double pairwise_norm(std::span<const Complex> a) noexcept {
    if (a.size() <= kPairwiseBlock) {
        double s = 0.0;
        for (const Complex& x : a) s += std::norm(x);
        return s;
    }
    const std::size_t half = a.size() / 2;
    return pairwise_norm(a.first(half)) + pairwise_norm(a.subspan(half));
}

// e^{i angle} with exact components at multiples of pi/2.
Complex unit_phase(double angle) noexcept {
    double c = std::cos(angle);
    double s = std::sin(angle);
    constexpr double kSnap = 1e-15;
    if (std::abs(c) < kSnap) c = 0.0;
    if (std::abs(s) < kSnap) s = 0.0;
    if (c == 0.0) s = std::copysign(1.0, s);
    if (s == 0.0) c = std::copysign(1.0, c);
    return {c, s};
}

}  // namespace

BasisMask::BasisMask(std::size_t dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

BasisMask BasisMask::from_indices(std::size_t dim, std::span<const BasisIndex> indices) {
    BasisMask m(dim);
    for (BasisIndex p : indices) {
        if (p >= dim) {
            throw IndexError("basis index " + std::to_string(p) + " outside [0, " +
                             std::to_string(dim) + ")");
        }
        m.set(p);
    }
    return m;
}

std::size_t BasisMask::count() const noexcept {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

BasisMask BasisMask::complement() const {
    BasisMask m(dim_);
    for (std::size_t i = 0; i < words_.size(); ++i) m.words_[i] = ~words_[i];
    if (const std::size_t tail = dim_ & 63; tail != 0) {
        m.words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
    return m;
}

std::vector<BasisIndex> BasisMask::indices() const {
    std::vector<BasisIndex> out;
    out.reserve(count());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w != 0) {
            const int b = std::countr_zero(w);
            out.push_back(i * 64 + static_cast<BasisIndex>(b));
            w &= w - 1;
        }
    }
    return out;
}

StateVector StateVector::zero(int n, int max_bits) {
    check_bits(n, max_bits);
    return StateVector(n, std::vector<Complex>(std::size_t{1} << n));
}

StateVector StateVector::basis(int n, BasisIndex p, int max_bits) {
    StateVector s = zero(n, max_bits);
    if (p >= s.dim()) {
        throw IndexError("basis index " + std::to_string(p) + " outside register of " +
                         std::to_string(s.dim()));
    }
    s.amps_[p] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
    if (amps.size() < 2 || !std::has_single_bit(amps.size())) {
        throw SizeError("amplitude count " + std::to_string(amps.size()) +
                        " is not a power of two >= 2");
    }
    const int n = std::countr_zero(amps.size());
    return StateVector(n, std::move(amps));
}

double StateVector::norm_squared() const noexcept { return pairwise_norm(amps_); }

StateVector uniform_state(int n, int max_bits) {
    StateVector s = StateVector::zero(n, max_bits);
    const double a = std::exp2(-0.5 * n);
    std::fill(s.amplitudes().begin(), s.amplitudes().end(), Complex{a, 0.0});
    return s;
}

void walsh_hadamard(StateVector& state) {
    const std::span<Complex> a = state.amplitudes();
    const std::size_t dim = a.size();
    const double r = std::sqrt(0.5);
    for (std::size_t step = 1; step < dim; step <<= 1) {
        for (std::size_t base = 0; base < dim; base += step << 1) {
            for (std::size_t i0 = base; i0 < base + step; ++i0) {
                const Complex x = a[i0];
                const Complex y = a[i0 + step];
                a[i0] = r * (x + y);
                a[i0 + step] = r * (x - y);
            }
        }
    }
}

void conditional_phase(StateVector& state, const BasisMask& mask, double angle) {
    if (mask.dim() != state.dim()) {
        throw IndexError("mask dimension " + std::to_string(mask.dim()) +
                         " does not match register dimension " + std::to_string(state.dim()));
    }
    const Complex factor = unit_phase(angle);
    if (factor == Complex{1.0, 0.0}) return;
    const std::span<Complex> a = state.amplitudes();
    const std::span<const std::uint64_t> words = mask.words();
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::uint64_t w = words[i];
        while (w != 0) {
            const std::size_t p = i * 64 + static_cast<std::size_t>(std::countr_zero(w));
            a[p] *= factor;
            w &= w - 1;
        }
    }
}

void conditional_phase(StateVector& state, std::span<const BasisIndex> indices, double angle) {
    conditional_phase(state, BasisMask::from_indices(state.dim(), indices), angle);
}

Complex mean_amplitude(std::span<const Complex> amps) noexcept {
    return pairwise_sum(amps) / static_cast<double>(amps.size());
}

void diffusion(StateVector& state) {
    const std::span<Complex> a = state.amplitudes();
    const Complex twice_mean = 2.0 * mean_amplitude(a);
    for (Complex& x : a) x = twice_mean - x;
}

void shift(StateVector& state) {
    const std::span<Complex> a = state.amplitudes();
    const Complex m = mean_amplitude(a);
    const Complex offset{m.real() - m.imag(), m.real() + m.imag()};  // (1 + i) m
    for (Complex& x : a) x = offset + Complex{x.imag(), -x.real()};  // - i x
}

double probability_of(const StateVector& state, const BasisMask& mask) {
    if (mask.dim() != state.dim()) {
        throw IndexError("mask dimension " + std::to_string(mask.dim()) +
                         " does not match register dimension " + std::to_string(state.dim()));
    }
    const std::span<const Complex> a = state.amplitudes();
    const std::span<const std::uint64_t> words = mask.words();
    double p = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::uint64_t w = words[i];
        while (w != 0) {
            p += std::norm(a[i * 64 + static_cast<std::size_t>(std::countr_zero(w))]);
            w &= w - 1;
        }
    }
    return p;
}

CdfTable::CdfTable(const StateVector& state) : cumulative_(state.dim()) {
    double acc = 0.0;
    const std::span<const Complex> a = state.amplitudes();
    for (std::size_t p = 0; p < a.size(); ++p) {
        const double w = std::norm(a[p]);
        if (w > 0.0) last_nonzero_ = p;
        acc += w;
        cumulative_[p] = acc;
    }
    if (!(acc > 0.0) || !std::isfinite(acc)) {
        throw NumericalError("cannot sample from a state with zero total probability");
    }
}

BasisIndex CdfTable::draw(double u) const noexcept {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) return last_nonzero_;
    return static_cast<BasisIndex>(it - cumulative_.begin());
}

BasisIndex sample(const StateVector& state, SplitMix64& rng) {
    return CdfTable(state).draw(rng.uniform());
}

}  // namespace qmedian
