#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdbound/estimators.hpp"

namespace hdbound {

std::vector<double> default_lambda_coefs(); // {0.1, 0.25, 0.5, 1, 2, ..., 10}

struct SimCell {
    int n = 0;
    int p = 0;
    int s0 = 0;
    int reps = 1;
    std::uint64_t seed = 0;
    std::vector<double> lambda_coefs = default_lambda_coefs();

    void validate() const;
};

/// Design with iid standard-normal entries, errors with variance s0, and
/// coefficient vector (1, ..., 1, 0, ..., 0) carrying s0 ones. The same
/// seed reproduces the dataset bit for bit.
Dataset dgp_sample(int n, int p, int s0, std::uint64_t seed);

struct LambdaDiagnostics {
    double lambda = 0.0;
    double coef = 0.0;   // grid coefficient c with lambda = c sqrt(log p / n)
    double sigma2 = 0.0; // mean squared residuals (before flooring)
    double ic = 0.0;
    int support_size = 0;
    bool sigma2_floored = false;
};

struct LambdaSelection {
    double lambda_star = 0.0;
    double coef_star = 0.0;
    Estimate estimate; // fit at the winning lambda
    std::vector<LambdaDiagnostics> grid; // ordered by descending lambda
};

/// Fits the lasso along the grid lambda = c sqrt(log p / n) with warm starts
/// from larger to smaller penalties and minimizes
///   IC(lambda) = log sigma2(lambda) + (s(lambda)/n) log(n) log(log(p)).
/// sigma2 is floored at 1e-12 before the log (flagged in the diagnostics);
/// ties go to the smaller lambda. Requires p >= 3 so log(log(p)) > 0.
LambdaSelection select_lambda_ic(const Dataset& data,
                                 const std::vector<double>& lambda_coefs,
                                 const LassoOptions& opts = {});

/// The tightness diagnostic factor * ||beta_hat - beta0||_2 / ||head||_2
/// where head is the first s0 coordinates of the difference and factor is
/// s0 (or sqrt(s0) with the flag). Both norms accumulate the same prefix
/// sums, so the value is >= factor exactly, never just within tolerance.
/// A zero denominator yields nullopt: the replication must be excluded.
std::optional<double> ratio_statistic(const Eigen::VectorXd& beta_hat,
                                      const Eigen::VectorXd& beta0, int s0,
                                      bool sqrt_s0_factor = false);

struct SimResult {
    SimCell cell;
    double mean_ratio = 0.0;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double mean_selected_c = 0.0;
    int excluded = 0;            // zero-denominator replications
    int sigma2_floored_reps = 0; // replications where any grid point floored
    std::vector<double> per_rep_ratios; // kept when requested
};

struct SimOptions {
    int threads = 1;         // 0 resolves to hardware concurrency
    bool keep_per_rep = false;
    bool sqrt_s0_factor = false;
};

struct SimTable {
    std::vector<SimResult> results;

    /// Rows are (n, s0) pairs ordered by s0 then n; columns one per p.
    /// Byte-identical for identical inputs regardless of thread count.
    std::string to_csv() const;
};

/// Replication r of a cell draws its data from seed mix_seed(cell.seed, r),
/// so schedules and thread counts cannot change any number.
SimResult run_cell(const SimCell& cell, const SimOptions& opts = {});

SimTable run_table(const std::vector<SimCell>& cells, const SimOptions& opts = {});

} // namespace hdbound
