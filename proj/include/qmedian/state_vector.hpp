#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qmedian/random.hpp"

namespace qmedian {

using Complex = std::complex<double>;

// Position in the 2^n-dimensional register; bit j of the index is bit j of the
// basis string.
using BasisIndex = std::uint64_t;

inline constexpr int kDefaultMaxBits = 24;

// Packed set of basis indices over a fixed dimension.
class BasisMask {
public:
    BasisMask() = default;
    explicit BasisMask(std::size_t dim);

    // Throws IndexError if any index is >= dim.
    static BasisMask from_indices(std::size_t dim, std::span<const BasisIndex> indices);

    std::size_t dim() const noexcept { return dim_; }
    bool test(BasisIndex p) const noexcept { return (words_[p >> 6] >> (p & 63)) & 1U; }
    void set(BasisIndex p) noexcept { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
    void reset(BasisIndex p) noexcept { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }

    std::size_t count() const noexcept;
    BasisMask complement() const;
    std::vector<BasisIndex> indices() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const BasisMask&, const BasisMask&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> words_;
};

// Amplitudes of an n-bit register, unit-normalized.
class StateVector {
public:
    // Throws SizeError unless 1 <= n <= max_bits.
    static StateVector zero(int n, int max_bits = kDefaultMaxBits);
    static StateVector basis(int n, BasisIndex p, int max_bits = kDefaultMaxBits);
    // Length must be a power of two >= 2. No normalization is applied.
    static StateVector from_amplitudes(std::vector<Complex> amps);

    int bits() const noexcept { return bits_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    const Complex& operator[](std::size_t p) const noexcept { return amps_[p]; }
    Complex& operator[](std::size_t p) noexcept { return amps_[p]; }

    double norm_squared() const noexcept;

private:
    StateVector(int bits, std::vector<Complex> amps) : bits_(bits), amps_(std::move(amps)) {}

    int bits_ = 0;
    std::vector<Complex> amps_;
};

// Every amplitude equal to 2^(-n/2).
StateVector uniform_state(int n, int max_bits = kDefaultMaxBits);

// In-place F = H^{(x)n}: one butterfly pass of the single-bit matrix per bit,
// ascending bit order.
void walsh_hadamard(StateVector& state);

// Multiplies the amplitudes selected by `mask` by e^{i angle}. Quarter turns are
// applied exactly (pi flips the sign, pi/2 multiplies by i).
void conditional_phase(StateVector& state, const BasisMask& mask, double angle);
void conditional_phase(StateVector& state, std::span<const BasisIndex> indices, double angle);

// a'_p = 2 mean(a) - a_p.
void diffusion(StateVector& state);

// a'_p = (1 + i) mean(a) - i a_p.
void shift(StateVector& state);

// Mean amplitude, reduced pairwise in a fixed order so results are reproducible.
Complex mean_amplitude(std::span<const Complex> amps) noexcept;

double probability_of(const StateVector& state, const BasisMask& mask);

// Cumulative |a_p|^2 table for repeated inverse-CDF draws. A draw u returns the
// first p whose cumulative sum strictly exceeds u; if rounding leaves u above
// the total, the last index with nonzero mass absorbs it.
class CdfTable {
public:
    // Throws NumericalError for an all-zero state.
    explicit CdfTable(const StateVector& state);

    BasisIndex draw(double u) const noexcept;
    double total() const noexcept { return cumulative_.back(); }

private:
    std::vector<double> cumulative_;
    BasisIndex last_nonzero_ = 0;
};

// One measurement in the computational basis using a single uniform draw.
BasisIndex sample(const StateVector& state, SplitMix64& rng);

}  // namespace qmedian
