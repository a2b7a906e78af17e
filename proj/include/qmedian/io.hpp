#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmedian/appendix.hpp"
#include "qmedian/baseline.hpp"
#include "qmedian/estimator.hpp"
#include "qmedian/state_vector.hpp"

namespace qmedian::io {

// Writes to a sibling temporary file and renames it over `path`.
// Throws IoError on failure.
void write_atomic(const std::string& path, const std::string& content);

// 17 significant digits.
std::string format_double(double v);

nlohmann::json to_json(const EstimateRecord& rec);
nlohmann::json to_json(const MedianResult& res, std::size_t rank_below);
nlohmann::json to_json(const ClassicalEstimate& est);

// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

struct SweepRow {
    long r = 0;
    Complex k;
    double approx = 0.0;      // 2 sqrt(2) r |eps|
    double p_analytic = 0.0;  // (1/2)(1 + eps)|k_r|^2
    std::optional<double> p_exact;
    // |sqrt(N) k_sim - k_r| when a register is simulated (probability error if
    // no state is below the threshold).
    std::optional<double> abs_err;
};

struct Sweep {
    double eps = 0.0;  // imbalance actually used (grid-snapped when simulating)
    std::optional<int> n;
    std::vector<SweepRow> rows;
};

// Rows r = 0..beta_max of the closed-form trajectory, plus the simulated
// register when `n` is given.
Sweep run_sweep(double eps, long beta_max, std::optional<int> n, std::uint64_t seed);

inline constexpr const char* kSweepHeader =
    "r,k_re,k_im,k_abs,approx_2sqrt2,p_below_analytic,p_below_exact,abs_err";

std::string format_sweep_csv(const Sweep& sweep);

}  // namespace qmedian::io
