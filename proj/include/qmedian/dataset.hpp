#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qmedian/state_vector.hpp"

namespace qmedian {

// One finite value per basis state; the count is always 2^n.
class Dataset {
public:
    // Throws SizeError unless values.size() is a power of two >= 2 (and within
    // the register cap), ParseError if a value is not finite.
    explicit Dataset(std::vector<double> values, int max_bits = kDefaultMaxBits);

    int bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t p) const noexcept { return values_[p]; }

private:
    int bits_ = 0;
    std::vector<double> values_;
};

// Newline-delimited decimals. A trailing newline is allowed; empty lines
// elsewhere are parse errors.
Dataset load_dataset(std::string_view text, int max_bits = kDefaultMaxBits);
Dataset load_dataset_file(const std::string& path, int max_bits = kDefaultMaxBits);
// One value per line formatted with 17 significant digits.
std::string format_dataset(const Dataset& d);

// Partition of the basis states by a threshold. Values equal to the threshold
// count as above.
class ThresholdOracle {
public:
    ThresholdOracle(int bits, double threshold, BasisMask below);

    int bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return below_.dim(); }
    double threshold() const noexcept { return threshold_; }
    const BasisMask& below_mask() const noexcept { return below_; }
    const BasisMask& above_mask() const noexcept { return above_; }
    std::size_t below_count() const noexcept { return below_count_; }
    std::size_t above_count() const noexcept { return size() - below_count_; }
    // (N_below - N_above) / N.
    double imbalance() const noexcept;

private:
    int bits_;
    double threshold_;
    BasisMask below_;
    BasisMask above_;
    std::size_t below_count_;
};

ThresholdOracle make_oracle(const Dataset& d, double threshold);

// Count of values strictly below the threshold.
std::size_t rank_below(const Dataset& d, double threshold) noexcept;

struct SyntheticDataset {
    Dataset data;
    double achieved_imbalance;
    std::size_t below_count;
};

// round(N (1 + target) / 2) values drawn from (mu - 1, mu), the rest from
// [mu, mu + 1), positions shuffled. Throws ParameterError if |target| > 1.
SyntheticDataset synth_dataset(int n, double target_imbalance, double threshold,
                               std::uint64_t seed, int max_bits = kDefaultMaxBits);

}  // namespace qmedian
