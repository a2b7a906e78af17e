#include "qmedian/dataset.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "qmedian/errors.hpp"
#include "qmedian/random.hpp"

namespace qmedian {

Dataset::Dataset(std::vector<double> values, int max_bits) : values_(std::move(values)) {
    const std::size_t count = values_.size();
    if (count < 2 || !std::has_single_bit(count)) {
        throw SizeError("dataset has " + std::to_string(count) +
                        " values; need a power of two >= 2");
    }
    bits_ = std::countr_zero(count);
    if (bits_ > max_bits) {
        throw SizeError("dataset of 2^" + std::to_string(bits_) + " values exceeds cap 2^" +
                        std::to_string(max_bits));
    }
    for (std::size_t p = 0; p < count; ++p) {
        if (!std::isfinite(values_[p])) {
            throw ParseError("value " + std::to_string(p) + " is not finite");
        }
    }
}

Dataset load_dataset(std::string_view text, int max_bits) {
    std::vector<double> values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = (eol == std::string_view::npos) ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const char* first = line.data();
        const char* last = line.data() + line.size();
        if (first != last && *first == '+') ++first;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (line.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
            throw ParseError("line " + std::to_string(line_no) + ": not a finite decimal: '" +
                             std::string(line) + "'");
        }
        values.push_back(v);
    }
    return Dataset(std::move(values), max_bits);
}

Dataset load_dataset_file(const std::string& path, int max_bits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading dataset file '" + path + "'");
    return load_dataset(text, max_bits);
}

std::string format_dataset(const Dataset& d) {
    std::string out;
    out.reserve(d.size() * 24);
    char buf[64];
    for (double v : d.values()) {
        const auto [ptr, ec] =
            std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        out.append(buf, ptr);
        out.push_back('\n');
    }
    return out;
}

ThresholdOracle::ThresholdOracle(int bits, double threshold, BasisMask below)
    : bits_(bits), threshold_(threshold), below_(std::move(below)) {
    if (below_.dim() != (std::size_t{1} << bits_)) {
        throw SizeError("below mask dimension does not match 2^" + std::to_string(bits_));
    }
    above_ = below_.complement();
    below_count_ = below_.count();
}

double ThresholdOracle::imbalance() const noexcept {
    const auto nb = static_cast<double>(below_count_);
    return 2.0 * nb / static_cast<double>(size()) - 1.0;
}

ThresholdOracle make_oracle(const Dataset& d, double threshold) {
    BasisMask below(d.size());
    for (std::size_t p = 0; p < d.size(); ++p) {
        if (d[p] < threshold) below.set(p);
    }
    return ThresholdOracle(d.bits(), threshold, std::move(below));
}

std::size_t rank_below(const Dataset& d, double threshold) noexcept {
    std::size_t count = 0;
    for (double v : d.values()) count += (v < threshold) ? 1 : 0;
    return count;
}

SyntheticDataset synth_dataset(int n, double target_imbalance, double threshold,
                               std::uint64_t seed, int max_bits) {
    if (!(std::abs(target_imbalance) <= 1.0)) {
        throw ParameterError("target imbalance must lie in [-1, 1]");
    }
    if (!std::isfinite(threshold)) throw ParameterError("threshold must be finite");
    if (n < 1 || n > max_bits) {
        throw SizeError("register size n=" + std::to_string(n) + " outside [1, " +
                        std::to_string(max_bits) + "]");
    }
    const std::size_t count = std::size_t{1} << n;
    const auto below = static_cast<std::size_t>(
        std::llround(static_cast<double>(count) * (1.0 + target_imbalance) / 2.0));

    SplitMix64 rng(seed);
    std::vector<double> values(count);
    for (std::size_t p = 0; p < count; ++p) {
        const double u = rng.uniform();
        if (p < below) {
            double v = threshold - (1.0 - u);
            if (!(v < threshold)) v = std::nextafter(threshold, -std::numeric_limits<double>::infinity());
            values[p] = v;
        } else {
            values[p] = threshold + u;
        }
    }
    for (std::size_t i = count - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
        std::swap(values[i], values[j]);
    }
    const double achieved = 2.0 * static_cast<double>(below) / static_cast<double>(count) - 1.0;
    return SyntheticDataset{Dataset(std::move(values), max_bits), achieved, below};
}

}  // namespace qmedian
