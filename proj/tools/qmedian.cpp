// qmedian: simulator and estimators for threshold-imbalance and median
// estimation by amplitude amplification.
//
// Exit codes: 0 success, 1 usage, 2 data or I/O, 3 numerical or check failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qmedian/appendix.hpp"
#include "qmedian/baseline.hpp"
#include "qmedian/checks.hpp"
#include "qmedian/dataset.hpp"
#include "qmedian/driver.hpp"
#include "qmedian/errors.hpp"
#include "qmedian/estimator.hpp"
#include "qmedian/io.hpp"

namespace {

using namespace qmedian;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

constexpr const char* kTieRule =
    "Values equal to the threshold count as above it; eps = (N_below - N_above) / N.";

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content << std::flush;
    } else {
        io::write_atomic(out_path, content);
    }
}

struct Common {
    std::uint64_t seed = 0;
    std::string mode = "exact";
};

void add_seed(CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "RNG seed (also read from QMEDIAN_SEED; argv wins)")
        ->envname("QMEDIAN_SEED")
        ->capture_default_str();
}

void add_mode(CLI::App* cmd, std::string& mode) {
    cmd->add_option("--mode", mode, "exact: read probabilities off the register; sample: measure")
        ->check(CLI::IsMember({"exact", "sample"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amplitude-amplification imbalance and median estimation simulator.\n" +
                 std::string(kTieRule)};
    app.require_subcommand(1);

    // gen
    int gen_n = 0;
    double gen_eps = 0.0;
    double gen_mu = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "Write a synthetic dataset with a prescribed imbalance");
    gen->add_option("--n", gen_n, "bit count; the dataset has 2^n values")
        ->required()
        ->check(CLI::Range(1, kDefaultMaxBits));
    gen->add_option("--eps", gen_eps, "target imbalance in [-1, 1]")->required()->check(CLI::Range(-1.0, 1.0));
    gen->add_option("--mu", gen_mu, "threshold")->capture_default_str();
    add_seed(gen, gen_seed);
    gen->add_option("--out", gen_out, "output path")->required();

    // estimate
    std::string est_data;
    std::string est_out;
    double est_mu = 0.0;
    EstimateOptions est_opt;
    std::string est_mode = "exact";
    std::optional<long> est_alpha;
    std::optional<long> est_beta;
    CLI::App* est = app.add_subcommand("estimate", "Estimate the signed imbalance at a threshold");
    est->add_option("--data", est_data, "dataset file, one decimal per line")->required();
    est->add_option("--mu", est_mu, "threshold")->required();
    est->add_option("--eps0", est_opt.eps0, "prior bound on |eps|, in (0, 0.1]")->capture_default_str();
    est->add_option("--theta", est_opt.theta, "relative precision target")->capture_default_str();
    est->add_option("--kappa", est_opt.kappa, "confidence multiplier")->capture_default_str();
    add_mode(est, est_mode);
    add_seed(est, est_opt.seed);
    est->add_option("--alpha", est_alpha, "measurements per experiment (default ceil(1/theta^2))");
    est->add_option("--beta", est_beta, "loop iterations (default max(1, floor(1/(20 eps0))))");
    est->add_flag("--resimulate", est_opt.resimulate, "re-prepare the register for every measurement");
    est->add_option("--out", est_out, "write JSON here instead of stdout");
    est->footer(kTieRule);

    // median
    std::string med_data;
    std::string med_out;
    std::optional<double> med_min;
    std::optional<double> med_max;
    std::optional<double> med_resolution;
    AdaptiveOptions med_opt;
    std::string med_mode = "exact";
    CLI::App* med = app.add_subcommand("median", "Binary-search the median threshold");
    med->add_option("--data", med_data, "dataset file, one decimal per line")->required();
    med->add_option("--min", med_min, "lower end of the search range (default: data minimum)");
    med->add_option("--max", med_max, "upper end of the search range (default: data maximum)");
    med->add_option("--resolution", med_resolution, "stop once the bracket is this narrow (default range/2^20)");
    med->add_option("--eps-min", med_opt.eps_min, "smallest prior bound tried, in (0, 0.1)")->capture_default_str();
    med->add_option("--theta", med_opt.theta, "relative precision target")->capture_default_str();
    med->add_option("--kappa", med_opt.kappa, "confidence multiplier")->capture_default_str();
    add_mode(med, med_mode);
    add_seed(med, med_opt.seed);
    med->add_flag("--literal-update", med_opt.literal_update,
                  "shrink the prior as eps0 <- |est|/2 instead of eps0 <- eps0/2");
    med->add_option("--out", med_out, "write JSON here instead of stdout");
    med->footer(kTieRule);

    // sweep
    double sw_eps = 0.0;
    long sw_beta_max = 0;
    std::optional<int> sw_n;
    std::uint64_t sw_seed = 0;
    std::string sw_csv;
    CLI::App* sw = app.add_subcommand("sweep", "Tabulate the loop trajectory as CSV");
    sw->add_option("--eps", sw_eps, "imbalance")->required()->check(CLI::Range(-1.0, 1.0));
    sw->add_option("--beta-max", sw_beta_max, "last loop count")->required()->check(CLI::NonNegativeNumber);
    sw->add_option("--n", sw_n, "also simulate a 2^n register (eps snapped to the grid)")
        ->check(CLI::Range(1, kDefaultMaxBits));
    add_seed(sw, sw_seed);
    sw->add_option("--csv", sw_csv, "output path (default stdout)");

    // check
    int chk_n = 4;
    double chk_tol = 1e-10;
    std::uint64_t chk_seed = 0;
    CLI::App* chk = app.add_subcommand("check", "Verify the transform and loop identities numerically");
    chk->add_option("--n", chk_n, "register bits")->capture_default_str()->check(CLI::Range(1, kDefaultMaxBits));
    chk->add_option("--tol", chk_tol, "pass iff every max error is below this")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    add_seed(chk, chk_seed);

    // baseline
    std::string bl_data;
    double bl_mu = 0.0;
    long bl_samples = 0;
    std::uint64_t bl_seed = 0;
    CLI::App* bl = app.add_subcommand("baseline", "Classical sampling estimate of the imbalance");
    bl->add_option("--data", bl_data, "dataset file, one decimal per line")->required();
    bl->add_option("--mu", bl_mu, "threshold")->required();
    bl->add_option("--samples", bl_samples, "uniform draws")->required()->check(CLI::PositiveNumber);
    add_seed(bl, bl_seed);
    bl->footer(kTieRule);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            const SyntheticDataset s = synth_dataset(gen_n, gen_eps, gen_mu, gen_seed);
            io::write_atomic(gen_out, format_dataset(s.data));
            std::cout << "achieved_eps=" << io::format_double(s.achieved_imbalance) << "\n"
                      << "n_below=" << s.below_count << "\n"
                      << "n=" << gen_n << "\n";
        } else if (*est) {
            est_opt.mode = parse_mode(est_mode);
            est_opt.alpha = est_alpha;
            est_opt.beta = est_beta;
            const Dataset d = load_dataset_file(est_data);
            emit(io::dump(io::to_json(eps_est(d, est_mu, est_opt))), est_out);
        } else if (*med) {
            med_opt.mode = parse_mode(med_mode);
            const Dataset d = load_dataset_file(med_data);
            const auto [lo_it, hi_it] = std::minmax_element(d.values().begin(), d.values().end());
            const double lo = med_min.value_or(*lo_it);
            const double hi = med_max.value_or(*hi_it);
            const double resolution = med_resolution.value_or((hi - lo) / 1048576.0);
            std::cerr << "note: prior bounds assumed below 0.1 (eps0 starts at 0.1, eps_min = "
                      << med_opt.eps_min << ")\n";
            const MedianResult res = median_search(d, lo, hi, resolution, med_opt);
            emit(io::dump(io::to_json(res, rank_below(d, res.mu_hat))), med_out);
        } else if (*sw) {
            const io::Sweep s = io::run_sweep(sw_eps, sw_beta_max, sw_n, sw_seed);
            if (sw_n && s.eps != sw_eps) {
                std::cerr << "note: eps snapped to grid value " << io::format_double(s.eps) << "\n";
            }
            emit(io::format_sweep_csv(s), sw_csv);
        } else if (*chk) {
            const auto outcomes = run_identity_checks(chk_n, chk_seed);
            std::printf("%-24s %-12s %s\n", "check", "max_error", "status");
            for (const CheckOutcome& c : outcomes) {
                std::printf("%-24s %-12.3e %s  # %s\n", c.name.c_str(), c.max_error,
                            c.max_error < chk_tol ? "ok" : "FAIL", c.claim.c_str());
            }
            const bool pass = all_within(outcomes, chk_tol);
            std::printf("%s (n=%d, tol=%.3g)\n", pass ? "all checks passed" : "checks failed", chk_n,
                        chk_tol);
            return pass ? 0 : kExitNumerical;
        } else if (*bl) {
            const Dataset d = load_dataset_file(bl_data);
            const ClassicalEstimate c = classical_estimate(make_oracle(d, bl_mu), bl_samples, bl_seed);
            std::cout << io::dump(io::to_json(c));
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
