#include "qmedian/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "qmedian/analytic.hpp"
#include "qmedian/dataset.hpp"
#include "qmedian/dense_matrix.hpp"
#include "qmedian/driver.hpp"
#include "qmedian/errors.hpp"
#include "qmedian/random.hpp"

namespace qmedian {

namespace {

constexpr int kDenseCheckBits = 5;
constexpr long kClosedFormLoops = 100;
constexpr long kRecurrenceLoops = 200;

double gaussian(SplitMix64& rng) {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u = 1.0 - rng.uniform();
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t p = 0; p < a.dim(); ++p) worst = std::max(worst, std::abs(a[p] - b[p]));
    return worst;
}

ThresholdOracle oracle_near(int n, double eps, std::uint64_t seed) {
    const SyntheticDataset s = synth_dataset(n, eps, 0.0, seed, n);
    return make_oracle(s.data, 0.0);
}

// Imbalance grid 2j/N - 1 with |eps| <= 0.25, thinned to at most `limit` points.
std::vector<std::size_t> below_counts(int n, std::size_t limit) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::size_t> all;
    for (std::size_t nb = 0; nb <= size; ++nb) {
        const double eps = 2.0 * static_cast<double>(nb) / static_cast<double>(size) - 1.0;
        if (std::abs(eps) <= 0.25) all.push_back(nb);
    }
    if (all.size() <= limit) return all;
    std::vector<std::size_t> thinned;
    const double stride = static_cast<double>(all.size() - 1) / static_cast<double>(limit - 1);
    for (std::size_t i = 0; i < limit; ++i) {
        thinned.push_back(all[static_cast<std::size_t>(std::llround(stride * static_cast<double>(i)))]);
    }
    return thinned;
}

// Largest deviation of the masked amplitudes from `expected`.
double masked_error(const StateVector& s, const BasisMask& mask, Complex expected) {
    double worst = 0.0;
    for (BasisIndex p : mask.indices()) worst = std::max(worst, std::abs(s[p] - expected));
    return worst;
}

Complex first_amplitude(const StateVector& s, const BasisMask& mask, double scale) {
    const std::vector<BasisIndex> idx = mask.indices();
    return idx.empty() ? Complex{} : s[idx.front()] * scale;
}

StateVector two_level(const ThresholdOracle& o, Complex k, Complex l) {
    StateVector s = StateVector::zero(o.bits(), o.bits());
    for (std::size_t p = 0; p < s.dim(); ++p) s[p] = o.below_mask().test(p) ? k : l;
    return s;
}

}  // namespace

StateVector random_unit_state(int n, std::uint64_t seed) {
    StateVector s = StateVector::zero(n, std::max(n, kDefaultMaxBits));
    SplitMix64 rng(seed);
    for (Complex& a : s.amplitudes()) a = Complex{gaussian(rng), gaussian(rng)};
    const double scale = 1.0 / std::sqrt(s.norm_squared());
    for (Complex& a : s.amplitudes()) a *= scale;
    return s;
}

bool all_within(std::span<const CheckOutcome> outcomes, double tol) noexcept {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [tol](const CheckOutcome& c) { return c.max_error < tol; });
}

std::vector<CheckOutcome> run_identity_checks(int n, std::uint64_t seed, int max_bits) {
    if (n < 1 || n > max_bits) {
        throw SizeError("register size n=" + std::to_string(n) + " outside [1, " +
                        std::to_string(max_bits) + "]");
    }
    std::vector<CheckOutcome> out;
    const std::size_t size = std::size_t{1} << n;
    const double root_n = std::sqrt(static_cast<double>(size));
    const int random_states = n <= 16 ? 20 : 4;

    // Unitarity and involution on random states.
    {
        double f = 0, d = 0, s = 0, ph = 0, inv = 0;
        SplitMix64 mask_rng(derive_seed(seed, 1));
        for (int i = 0; i < random_states; ++i) {
            const StateVector x = random_unit_state(n, derive_seed(seed, 100 + i));
            BasisMask mask(size);
            for (std::size_t p = 0; p < size; ++p) {
                if (mask_rng.uniform() < 0.5) mask.set(p);
            }
            const double angle = 2.0 * std::numbers::pi * mask_rng.uniform();
            StateVector y = x;
            walsh_hadamard(y);
            f = std::max(f, std::abs(y.norm_squared() - 1.0));
            walsh_hadamard(y);
            inv = std::max(inv, max_abs_diff(x, y));
            y = x;
            diffusion(y);
            d = std::max(d, std::abs(y.norm_squared() - 1.0));
            y = x;
            shift(y);
            s = std::max(s, std::abs(y.norm_squared() - 1.0));
            y = x;
            conditional_phase(y, mask, angle);
            ph = std::max(ph, std::abs(y.norm_squared() - 1.0));
        }
        out.push_back({"unitarity_F", "F preserves the norm", f});
        out.push_back({"unitarity_D", "D preserves the norm", d});
        out.push_back({"unitarity_S", "S preserves the norm", s});
        out.push_back({"unitarity_phase", "selective phase rotation preserves the norm", ph});
        out.push_back({"involution_F", "F F = I", inv});
    }

    // Dense factorizations.
    {
        double ftf = 0, frf = 0, stream = 0;
        for (int m = 1; m <= std::min(n, kDenseCheckBits); ++m) {
            const DenseMatrix f = DenseMatrix::fourier(m);
            ftf = std::max(ftf, (f * DenseMatrix::reflect_zero(m) * f).max_abs_diff(DenseMatrix::diffusion(m)));
            frf = std::max(frf, (f * DenseMatrix::rotate_zero(m) * f).max_abs_diff(DenseMatrix::shift(m)));
            const StateVector x = random_unit_state(m, derive_seed(seed, 200 + m));
            StateVector y = x;
            walsh_hadamard(y);
            stream = std::max(stream, max_abs_diff(y, f.apply(x)));
            y = x;
            diffusion(y);
            stream = std::max(stream, max_abs_diff(y, DenseMatrix::diffusion(m).apply(x)));
            y = x;
            shift(y);
            stream = std::max(stream, max_abs_diff(y, DenseMatrix::shift(m).apply(x)));
        }
        out.push_back({"factorization_D", "F T F = D (dense)", ftf});
        out.push_back({"factorization_S", "F R F = S (dense)", frf});
        out.push_back({"streaming_vs_dense", "one-pass F, D, S match their matrices", stream});
    }

    // Preparation: below amplitudes eps/sqrt(N), above ((1 + eps) + i)/sqrt(N).
    {
        double err = 0;
        for (std::size_t nb : below_counts(n, 65)) {
            const double eps = 2.0 * static_cast<double>(nb) / static_cast<double>(size) - 1.0;
            const ThresholdOracle o = oracle_near(n, eps, derive_seed(seed, 300 + nb));
            const StateVector s = prepare(o);
            err = std::max(err, masked_error(s, o.below_mask(), Complex{eps, 0.0} / root_n));
            err = std::max(err, masked_error(s, o.above_mask(), Complex{1.0 + eps, 1.0} / root_n));
        }
        out.push_back({"preparation", "prepared amplitudes are (eps, (1+eps)+i)/sqrt(N)", err});
    }

    const ThresholdOracle o = oracle_near(n, 0.125, derive_seed(seed, 400));
    const double eps = o.imbalance();

    // Two-level diffusion from (1, 0) and (0, 1).
    {
        double err = 0;
        for (const auto& [k, l] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
            StateVector s = two_level(o, k, l);
            diffusion(s);
            const analytic::TwoAmpState want = analytic::diffusion_pair({k, l, eps});
            err = std::max(err, masked_error(s, o.below_mask(), want.k));
            err = std::max(err, masked_error(s, o.above_mask(), want.l));
        }
        out.push_back({"diffusion_pair", "D maps (1,0) to (eps,1+eps) and (0,1) to (1-eps,-eps)", err});
    }

    // One loop pass from (1, 0) and (0, 1).
    {
        double err = 0;
        for (const auto& [k, l] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
            StateVector s = two_level(o, k, l);
            amplification_loop(s, o, 1);
            const analytic::TwoAmpState want = analytic::loop_step({k, l, eps});
            err = std::max(err, masked_error(s, o.below_mask(), want.k));
            err = std::max(err, masked_error(s, o.above_mask(), want.l));
        }
        out.push_back({"loop_step", "one loop pass applies the 2x2 transfer matrix", err});
    }

    // Simulator trajectory against conservation and the closed form.
    {
        const long loops = n <= 16 ? kClosedFormLoops : 10;
        StateVector s = prepare(o);
        double drift = 0, closed = 0;
        for (long r = 0; r <= loops; ++r) {
            if (r > 0) amplification_loop(s, o, 1);
            const Complex k = first_amplitude(s, o.below_mask(), root_n);
            const Complex l = first_amplitude(s, o.above_mask(), root_n);
            drift = std::max(drift, std::abs(analytic::conserved_quantity({k, l, eps}) - 2.0));
            if (o.below_count() > 0) {
                closed = std::max(closed, std::abs(k - analytic::k_closed_form(eps, r)));
            }
            if (o.above_count() > 0) {
                closed = std::max(closed, std::abs(l - analytic::l_closed_form(eps, r)));
            }
        }
        out.push_back({"conservation", "(1+eps)|k|^2 + (1-eps)|l|^2 stays 2", drift});
        out.push_back({"closed_form_simulator", "simulated k_r, l_r match the closed form", closed});
    }

    // Closed form against the recurrence on a grid of imbalances.
    {
        double err = 0;
        for (int j = 1; j <= 51; ++j) {
            for (double sgn : {1.0, -1.0}) {
                const double e = sgn * 2.0 * j / 1024.0;
                analytic::TwoAmpState st = analytic::post_shift(e);
                for (long r = 0; r <= kRecurrenceLoops; ++r) {
                    if (r > 0) st = analytic::loop_step(st);
                    err = std::max(err, std::abs(st.k - analytic::k_closed_form(e, r)));
                    err = std::max(err, std::abs(st.l - analytic::l_closed_form(e, r)));
                }
            }
        }
        out.push_back({"closed_form_recurrence", "closed form equals the iterated recurrence", err});
    }
    return out;
}

}  // namespace qmedian
