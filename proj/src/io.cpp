#include "qmedian/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "qmedian/analytic.hpp"
#include "qmedian/dataset.hpp"
#include "qmedian/driver.hpp"
#include "qmedian/errors.hpp"

namespace qmedian::io {

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw IoError("error writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw IoError("cannot rename onto '" + path + "': " + ec.message());
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

namespace {

nlohmann::json sign_json(Sign s) {
    switch (s) {
        case Sign::positive: return 1;
        case Sign::negative: return -1;
        case Sign::unknown: break;
    }
    return "unknown";
}

}  // namespace

nlohmann::json to_json(const EstimateRecord& rec) {
    nlohmann::json j;
    j["eps_hat"] = rec.eps_hat;
    j["eps_abs"] = rec.magnitude;
    j["sign"] = sign_json(rec.sign);
    j["ci_lo"] = rec.ci_lo;
    j["ci_hi"] = rec.ci_hi ? nlohmann::json(*rec.ci_hi) : nlohmann::json(nullptr);
    j["confidence"] = rec.confidence;
    j["verdict"] = std::string(to_string(rec.verdict));
    j["f_hat"] = rec.f_hat;
    j["exact_p"] = rec.exact_p;
    j["mu"] = rec.mu;
    j["alpha"] = rec.alpha;
    j["beta"] = rec.beta;
    j["theta"] = rec.theta;
    j["kappa"] = rec.kappa;
    j["eps0"] = rec.eps0;
    j["mode"] = std::string(to_string(rec.mode));
    j["seed"] = rec.seed;
    j["n"] = rec.n;
    return j;
}

nlohmann::json to_json(const MedianResult& res, std::size_t rank_below) {
    nlohmann::json j;
    j["mu_hat"] = res.mu_hat;
    j["rank_below"] = rank_below;
    j["steps"] = res.steps;
    j["calls"] = res.calls;
    nlohmann::json trace = nlohmann::json::array();
    for (const MedianStep& s : res.trace) {
        trace.push_back({{"mu", s.mu}, {"eps_hat", s.eps_hat}, {"sign", sign_json(s.sign)},
                         {"calls", s.calls}});
    }
    j["trace"] = std::move(trace);
    return j;
}

nlohmann::json to_json(const ClassicalEstimate& est) {
    return {{"f_hat", est.f_hat},
            {"eps_hat", est.eps_hat},
            {"m", est.samples},
            {"stderr_model", est.stderr_model}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Sweep run_sweep(double eps, long beta_max, std::optional<int> n, std::uint64_t seed) {
    if (beta_max < 0) throw ParameterError("beta-max must be >= 0");
    if (!(std::abs(eps) <= 1.0)) throw ParameterError("eps must lie in [-1, 1]");
    Sweep sweep;
    sweep.n = n;
    sweep.eps = eps;

    std::optional<ThresholdOracle> oracle;
    std::optional<StateVector> state;
    double root_n = 1.0;
    if (n) {
        const SyntheticDataset s = synth_dataset(*n, eps, 0.0, seed);
        oracle.emplace(make_oracle(s.data, 0.0));
        sweep.eps = oracle->imbalance();
        state.emplace(prepare(*oracle));
        root_n = std::sqrt(static_cast<double>(oracle->size()));
    }

    std::optional<BasisIndex> probe;
    if (oracle && oracle->below_count() > 0) probe = oracle->below_mask().indices().front();

    for (long r = 0; r <= beta_max; ++r) {
        SweepRow row;
        row.r = r;
        row.k = analytic::k_closed_form(sweep.eps, r);
        row.approx = analytic::k_small_eps_approx(std::abs(sweep.eps), r);
        row.p_analytic = 0.5 * (1.0 + sweep.eps) * std::norm(row.k);
        if (state) {
            if (r > 0) amplification_loop(*state, *oracle, 1);
            row.p_exact = probability_of(*state, oracle->below_mask());
            row.abs_err = probe ? std::abs((*state)[*probe] * root_n - row.k)
                                : std::abs(*row.p_exact - row.p_analytic);
        }
        sweep.rows.push_back(row);
    }
    return sweep;
}

std::string format_sweep_csv(const Sweep& sweep) {
    std::string out = kSweepHeader;
    out += '\n';
    for (const SweepRow& row : sweep.rows) {
        out += std::to_string(row.r);
        for (double v : {row.k.real(), row.k.imag(), std::abs(row.k), row.approx, row.p_analytic}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        if (row.p_exact) out += format_double(*row.p_exact);
        out += ',';
        if (row.abs_err) out += format_double(*row.abs_err);
        out += '\n';
    }
    return out;
}

}  // namespace qmedian::io
