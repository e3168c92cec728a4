#include "hdbound/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "hdbound/errors.hpp"
#include "hdbound/parallel.hpp"
#include "hdbound/rng.hpp"

namespace hdbound {

std::vector<double> default_lambda_coefs() {
    return {0.1, 0.25, 0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
}

void SimCell::validate() const {
    if (n < 2) throw DimensionError("SimCell: need n >= 2");
    if (p < 3) throw DimensionError("SimCell: need p >= 3 for log(log(p))");
    if (s0 < 1 || s0 > p) throw DimensionError("SimCell: need 1 <= s0 <= p");
    if (reps < 1) throw DimensionError("SimCell: need reps >= 1");
    if (lambda_coefs.empty()) throw NumericError("SimCell: empty lambda grid");
    for (double c : lambda_coefs)
        if (!(c > 0.0)) throw NumericError("SimCell: lambda coefficients must be > 0");
}

Dataset dgp_sample(int n, int p, int s0, std::uint64_t seed) {
    if (n < 2 || p < 1 || s0 < 0 || s0 > p)
        throw DimensionError("dgp_sample: invalid (n, p, s0)");
    SplitMix64 rng(seed);
    Dataset data;
    data.X.resize(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) data.X(i, j) = rng.next_normal();
    Eigen::VectorXd beta0 = Eigen::VectorXd::Zero(p);
    beta0.head(s0).setOnes();
    const double err_sd = std::sqrt(static_cast<double>(s0));
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = err_sd * rng.next_normal();
    data.y = data.X * beta0 + u;
    data.beta_true = beta0;
    return data;
}

LambdaSelection select_lambda_ic(const Dataset& data,
                                 const std::vector<double>& lambda_coefs,
                                 const LassoOptions& opts) {
    data.validate();
    const double n = static_cast<double>(data.n());
    const double p = static_cast<double>(data.p());
    if (p < 3.0) throw DimensionError("select_lambda_ic: need p >= 3 for log(log(p))");
    if (lambda_coefs.empty()) throw NumericError("select_lambda_ic: empty grid");
    for (double c : lambda_coefs)
        if (!(c > 0.0)) throw NumericError("select_lambda_ic: coefficients must be > 0");

    std::vector<double> coefs = lambda_coefs;
    std::sort(coefs.begin(), coefs.end(), std::greater<double>());
    const double scale = std::sqrt(std::log(p) / n);
    const double penalty_unit = std::log(n) * std::log(std::log(p)) / n;

    LambdaSelection sel;
    LassoGram solver(data); // shares the Gram matrix across the grid,
                            // warm-starting each fit from the previous one
    int best = -1;
    double best_ic = 0.0;
    for (std::size_t k = 0; k < coefs.size(); ++k) {
        double lambda = coefs[k] * scale;
        Estimate est = solver.fit(lambda, std::nullopt, opts);

        LambdaDiagnostics diag;
        diag.lambda = lambda;
        diag.coef = coefs[k];
        diag.sigma2 = est.sigma2;
        diag.support_size = static_cast<int>(est.support.size());
        diag.sigma2_floored = est.sigma2 < 1e-12;
        double sigma2 = std::max(est.sigma2, 1e-12);
        diag.ic = std::log(sigma2) + diag.support_size * penalty_unit;
        sel.grid.push_back(diag);

        // Descending grid: on an exact tie the later (smaller) lambda wins.
        if (best < 0 || diag.ic < best_ic ||
            (diag.ic == best_ic && lambda < sel.lambda_star)) {
            best = static_cast<int>(k);
            best_ic = diag.ic;
            sel.lambda_star = lambda;
            sel.coef_star = coefs[k];
            sel.estimate = est;
        }
    }
    return sel;
}

std::optional<double> ratio_statistic(const Eigen::VectorXd& beta_hat,
                                      const Eigen::VectorXd& beta0, int s0,
                                      bool sqrt_s0_factor) {
    if (beta_hat.size() != beta0.size())
        throw DimensionError("ratio_statistic: estimate and truth differ in length");
    if (s0 < 1 || s0 > beta_hat.size())
        throw DimensionError("ratio_statistic: invalid s0");

    // Shared prefix accumulation: the full sum extends the head sum by
    // nonnegative terms, so head2 <= full2 holds exactly in floating point
    // and the returned ratio can never dip below the factor.
    double head2 = 0.0;
    for (int j = 0; j < s0; ++j) {
        double d = beta_hat[j] - beta0[j];
        head2 += d * d;
    }
    double full2 = head2;
    for (Eigen::Index j = s0; j < beta_hat.size(); ++j) {
        double d = beta_hat[j] - beta0[j];
        full2 += d * d;
    }
    if (head2 == 0.0) return std::nullopt;
    double factor = sqrt_s0_factor ? std::sqrt(static_cast<double>(s0))
                                   : static_cast<double>(s0);
    return factor * (std::sqrt(full2) / std::sqrt(head2));
}

SimResult run_cell(const SimCell& cell, const SimOptions& opts) {
    cell.validate();
    const int reps = cell.reps;
    std::vector<double> ratios(reps, 0.0);
    std::vector<char> ok(reps, 0);
    std::vector<double> selected_c(reps, 0.0);
    std::vector<char> floored(reps, 0);

    parallel_for(static_cast<std::size_t>(reps), opts.threads, [&](std::size_t r) {
        std::uint64_t seed_rep = mix_seed(cell.seed, static_cast<std::uint64_t>(r));
        Dataset data = dgp_sample(cell.n, cell.p, cell.s0, seed_rep);
        LambdaSelection sel = select_lambda_ic(data, cell.lambda_coefs);
        selected_c[r] = sel.coef_star;
        for (const auto& d : sel.grid)
            if (d.sigma2_floored) floored[r] = 1;
        auto ratio = ratio_statistic(sel.estimate.beta, *data.beta_true, cell.s0,
                                     opts.sqrt_s0_factor);
        if (ratio) {
            ratios[r] = *ratio;
            ok[r] = 1;
        }
    });

    SimResult res;
    res.cell = cell;
    double sum = 0.0, sum_c = 0.0;
    int used = 0;
    for (int r = 0; r < reps; ++r) {
        sum_c += selected_c[r];
        if (floored[r]) ++res.sigma2_floored_reps;
        if (!ok[r]) {
            ++res.excluded;
            continue;
        }
        double v = ratios[r];
        if (used == 0) {
            res.ratio_min = res.ratio_max = v;
        } else {
            res.ratio_min = std::min(res.ratio_min, v);
            res.ratio_max = std::max(res.ratio_max, v);
        }
        sum += v;
        ++used;
        if (opts.keep_per_rep) res.per_rep_ratios.push_back(v);
    }
    if (used == 0) throw NumericError("run_cell: every replication was excluded");
    res.mean_ratio = sum / used;
    res.mean_selected_c = sum_c / reps;
    return res;
}

SimTable run_table(const std::vector<SimCell>& cells, const SimOptions& opts) {
    SimTable table;
    table.results.reserve(cells.size());
    for (const auto& cell : cells) table.results.push_back(run_cell(cell, opts));
    return table;
}

std::string SimTable::to_csv() const {
    std::set<int> ps;
    std::set<std::pair<int, int>> rows; // (s0, n)
    std::map<std::tuple<int, int, int>, double> values;
    for (const auto& res : results) {
        ps.insert(res.cell.p);
        rows.insert({res.cell.s0, res.cell.n});
        values[{res.cell.s0, res.cell.n, res.cell.p}] = res.mean_ratio;
    }
    std::string out = "n,s0";
    for (int p : ps) out += ",p=" + std::to_string(p);
    out += "\n";
    char buf[64];
    for (const auto& [s0, n] : rows) {
        out += std::to_string(n) + "," + std::to_string(s0);
        for (int p : ps) {
            out += ",";
            auto it = values.find({s0, n, p});
            if (it != values.end()) {
                std::snprintf(buf, sizeof(buf), "%.6f", it->second);
                out += buf;
            }
        }
        out += "\n";
    }
    return out;
}

} // namespace hdbound
