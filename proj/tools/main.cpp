#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Dense>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "hdbound/bound.hpp"
#include "hdbound/errors.hpp"
#include "hdbound/estimators.hpp"
#include "hdbound/io.hpp"
#include "hdbound/json.hpp"
#include "hdbound/montecarlo.hpp"
#include "hdbound/norms.hpp"
#include "hdbound/parallel.hpp"
#include "hdbound/portfolio.hpp"
#include "hdbound/rng.hpp"
#include "hdbound/series.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << std::endl;
    else
        hdbound::write_text_file(out_path, j.dump(2) + "\n");
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("HD_DELTA_SEED");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    std::uint64_t seed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0')
        throw hdbound::ParseError("HD_DELTA_SEED is not an unsigned integer");
    return seed;
}

std::string path_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config;
    std::string out;
    std::string diag;
    int threads = 0;
};

std::vector<int> int_list(const json& j, const char* key) {
    std::vector<int> out;
    for (const auto& v : j.at(key)) out.push_back(v.get<int>());
    if (out.empty()) throw hdbound::ParseError(std::string("config: empty '") + key + "' list");
    return out;
}

void run_simulate(const SimulateArgs& args) {
    json cfg;
    try {
        cfg = json::parse(hdbound::read_text_file(args.config));
    } catch (const json::exception& e) {
        throw hdbound::ParseError("config '" + args.config + "': " + e.what());
    }

    int reps = cfg.value("reps", 1000);
    std::uint64_t seed;
    if (cfg.contains("seed"))
        seed = cfg.at("seed").get<std::uint64_t>();
    else if (auto s = env_seed())
        seed = *s;
    else
        seed = 1;
    std::vector<double> coefs = hdbound::default_lambda_coefs();
    if (cfg.contains("lambda_coefs")) coefs = cfg.at("lambda_coefs").get<std::vector<double>>();

    std::vector<hdbound::SimCell> cells;
    try {
        if (cfg.contains("cells")) {
            for (const auto& c : cfg.at("cells")) {
                hdbound::SimCell cell;
                cell.n = c.at("n").get<int>();
                cell.p = c.at("p").get<int>();
                cell.s0 = c.at("s0").get<int>();
                cell.reps = c.value("reps", reps);
                cell.seed = c.contains("seed") ? c.at("seed").get<std::uint64_t>() : seed;
                cell.lambda_coefs = coefs;
                cells.push_back(cell);
            }
        } else if (cfg.contains("grid")) {
            const json& g = cfg.at("grid");
            for (int s0 : int_list(g, "s0"))
                for (int n : int_list(g, "n"))
                    for (int p : int_list(g, "p")) {
                        hdbound::SimCell cell;
                        cell.n = n;
                        cell.p = p;
                        cell.s0 = s0;
                        cell.reps = reps;
                        cell.seed = seed;
                        cell.lambda_coefs = coefs;
                        cells.push_back(cell);
                    }
        } else {
            throw hdbound::ParseError("config: expected 'cells' or 'grid'");
        }
    } catch (const json::exception& e) {
        throw hdbound::ParseError("config '" + args.config + "': " + e.what());
    }

    hdbound::SimOptions opts;
    opts.threads = args.threads;
    opts.sqrt_s0_factor = cfg.value("sqrt_s0_ratio", false);
    opts.keep_per_rep = cfg.value("keep_per_rep", false);

    hdbound::SimTable table = hdbound::run_table(cells, opts);

    std::string stem = path_stem(args.config);
    std::string out_csv = args.out.empty() ? stem + ".csv" : args.out;
    std::string out_diag = args.diag.empty() ? stem + "_diagnostics.json" : args.diag;
    hdbound::write_text_file(out_csv, table.to_csv());
    json diag = {{"seed", seed},
                 {"reps", reps},
                 {"lambda_coefs", coefs},
                 {"sqrt_s0_ratio", opts.sqrt_s0_factor},
                 {"cells", table}};
    hdbound::write_text_file(out_diag, diag.dump(2) + "\n");
    std::cout << "wrote " << out_csv << " and " << out_diag << std::endl;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string data;
    std::string method = "lasso";
    std::string lambda = "auto";
    double lambda_stage1 = -1.0;
    double lambda_node = -1.0;
    bool standardize = false;
    std::string out;
};

void run_estimate(const EstimateArgs& args) {
    hdbound::Dataset data = hdbound::read_dataset_csv(args.data);
    json report;
    report["method"] = args.method;

    auto pick_lambda = [&](json& rep) -> double {
        if (args.lambda == "auto") {
            auto sel = hdbound::select_lambda_ic(data, hdbound::default_lambda_coefs());
            rep["lambda_selection"] = {{"lambda", sel.lambda_star},
                                       {"coef", sel.coef_star},
                                       {"grid", sel.grid}};
            return sel.lambda_star;
        }
        try {
            return std::stod(args.lambda);
        } catch (const std::exception&) {
            throw hdbound::ParseError("--lambda expects 'auto' or a number, got '" +
                                      args.lambda + "'");
        }
    };

    if (args.method == "ols") {
        report["estimate"] = hdbound::ols(data);
    } else if (args.method == "lasso") {
        double lambda = pick_lambda(report);
        hdbound::LassoOptions opts;
        opts.standardize = args.standardize;
        report["estimate"] = hdbound::lasso_cd(data, lambda, std::nullopt, opts);
    } else if (args.method == "cl" || args.method == "dcl") {
        double lambda = pick_lambda(report);
        std::optional<double> stage1;
        if (args.lambda_stage1 >= 0.0) stage1 = args.lambda_stage1;
        hdbound::LassoOptions opts;
        opts.standardize = args.standardize;
        hdbound::Estimate cl = hdbound::conservative_lasso(data, lambda, opts, stage1);
        if (args.method == "cl") {
            report["estimate"] = cl;
        } else {
            double lam_node = args.lambda_node >= 0.0
                                  ? args.lambda_node
                                  : hdbound::default_lambda_node(data.n(), data.p());
            auto prec = hdbound::nodewise_precision(data.X, lam_node);
            report["estimate"] = hdbound::debias_dcl(data, cl, prec);
            report["conservative_lasso"] = cl;
            report["lambda_node"] = lam_node;
            report["tau2_min"] = prec.tau2.minCoeff();
        }
    } else {
        throw hdbound::ParseError("unknown method '" + args.method +
                                  "' (expected ols, lasso, cl or dcl)");
    }
    emit(report, args.out);
}

// ------------------------------------------------------------------- bound

struct BoundArgs {
    std::string f;
    std::string D, S, hvec;
    std::string beta_hat, beta0;
    std::string norm = "2";
    double C = 0.0;
    double k_n = 1.0;
    double d_n = 1.0;
    double regime_tol = 0.05;
    double r_n = 0.0;
    std::string out;
};

void run_bound(const BoundArgs& args) {
    Eigen::VectorXd bh = hdbound::read_vector_csv(args.beta_hat);
    Eigen::VectorXd b0 = hdbound::read_vector_csv(args.beta0);

    hdbound::FunctionSpec f = [&]() -> hdbound::FunctionSpec {
        if (args.f == "linear") {
            if (args.D.empty()) throw hdbound::ParseError("--f linear requires --D");
            return hdbound::LinearFn{hdbound::read_matrix_csv(args.D)};
        }
        if (args.f == "quadratic") {
            if (args.S.empty()) throw hdbound::ParseError("--f quadratic requires --S");
            Eigen::MatrixXd S = hdbound::read_matrix_csv(args.S);
            if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10)
                throw hdbound::NumericError("quadratic spec: S is not symmetric");
            return hdbound::QuadraticFn{std::move(S)};
        }
        if (args.f == "basis") {
            if (args.hvec.empty()) throw hdbound::ParseError("--f basis requires --hvec");
            return hdbound::BasisPointFn{hdbound::read_vector_csv(args.hvec)};
        }
        throw hdbound::ParseError("unknown function family '" + args.f +
                                  "' (expected linear, quadratic or basis)");
    }();

    hdbound::VectorNorm q = hdbound::vector_norm_from_string(args.norm);
    hdbound::BoundReport rep = hdbound::pathwise_check(f, bh, b0, q);
    if (args.C > 0.0) {
        rep.regime = hdbound::classify_regime(rep.fd_norm, args.C, args.k_n, args.d_n,
                                              args.regime_tol);
        if (args.r_n > 0.0) {
            hdbound::RateSpec rate;
            rate.family = hdbound::RateFamily::Custom;
            rate.custom_rn = args.r_n;
            rep.rate_value = hdbound::rate_bound(rate, *rep.regime);
        }
    }
    emit(json(rep), args.out);
}

// --------------------------------------------------------------- portfolio

struct PortfolioArgs {
    std::string returns;
    std::string sigma, w, w_hat;
    bool no_demean = false;
    double lambda_node = -1.0;
    std::string norm = "1";
    int threads = 1;
    std::string out;
};

json bound_pair(const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w,
                const Eigen::MatrixXd& Sigma, const std::string& norm) {
    return {{"theorem", json(hdbound::variance_error_bound_theorem(w_hat, w, Sigma))},
            {"direct", json(hdbound::variance_error_bound_direct(w_hat, w, Sigma))},
            {"pathwise",
             json(hdbound::pathwise_check(hdbound::QuadraticFn{Sigma}, w_hat, w,
                                          hdbound::vector_norm_from_string(norm)))}};
}

void run_portfolio(const PortfolioArgs& args) {
    json report;
    if (!args.returns.empty()) {
        Eigen::MatrixXd R = hdbound::read_matrix_csv(args.returns);
        const Eigen::Index n = R.rows();
        const Eigen::Index p = R.cols();
        Eigen::MatrixXd X = R;
        if (!args.no_demean) X.rowwise() -= R.colwise().mean();
        Eigen::MatrixXd Sigma = X.transpose() * X / static_cast<double>(n);

        double lam_node = args.lambda_node >= 0.0 ? args.lambda_node
                                                  : hdbound::default_lambda_node(n, p);
        auto prec = hdbound::nodewise_precision(X, lam_node, hdbound::nodewise_default_options(),
                                                args.threads);
        Eigen::VectorXd w_hat = hdbound::gmv_weights(prec.Theta);

        int max_support = 0;
        for (Eigen::Index j = 0; j < p; ++j) {
            int nnz = 0;
            for (Eigen::Index k = 0; k < p; ++k)
                if (k != j && prec.Theta(j, k) != 0.0) ++nnz;
            max_support = std::max(max_support, nnz);
        }

        report["n"] = n;
        report["p"] = p;
        report["lambda_node"] = lam_node;
        report["weights"] = std::vector<double>(w_hat.begin(), w_hat.end());
        report["gross_exposure"] = w_hat.cwiseAbs().sum();
        report["max_nodewise_support"] = max_support;
        report["variance_nodewise"] = hdbound::oos_variance(w_hat, Sigma);
        report["div"] = hdbound::div_measure(Sigma);
        auto chain = hdbound::vech_fd_norm(w_hat);
        report["vech_fd_norm"] = {{"value", chain.value},
                                  {"bound_l2", chain.bound_l2},
                                  {"bound_l1", chain.bound_l1}};

        if (p < n) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Sigma);
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                Eigen::MatrixXd Theta_exact =
                    ldlt.solve(Eigen::MatrixXd::Identity(p, p));
                Eigen::VectorXd w_ref = hdbound::gmv_weights(Theta_exact);
                report["reference_weights"] =
                    std::vector<double>(w_ref.begin(), w_ref.end());
                report["variance_reference"] = hdbound::oos_variance(w_ref, Sigma);
                report["bounds"] = bound_pair(w_hat, w_ref, Sigma, args.norm);
            }
        }
    } else {
        if (args.sigma.empty() || args.w.empty() || args.w_hat.empty())
            throw hdbound::ParseError(
                "portfolio: pass --returns, or all of --sigma, --w and --w-hat");
        Eigen::MatrixXd Sigma = hdbound::read_matrix_csv(args.sigma);
        Eigen::VectorXd w = hdbound::read_vector_csv(args.w);
        Eigen::VectorXd w_hat = hdbound::read_vector_csv(args.w_hat);
        report["p"] = Sigma.rows();
        report["variance_true"] = hdbound::oos_variance(w, Sigma);
        report["variance_estimated"] = hdbound::oos_variance(w_hat, Sigma);
        report["gross_exposure"] = w_hat.cwiseAbs().sum();
        report["div"] = hdbound::div_measure(Sigma);
        report["bounds"] = bound_pair(w_hat, w, Sigma, args.norm);
    }
    emit(report, args.out);
}

// ------------------------------------------------------------------ series

struct SeriesArgs {
    std::string function = "sin2x";
    int n = 2000;
    int p = 8;
    double noise_sd = 0.1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int grid = 1001;
    double a = -1.0;
    double b = 1.0;
    int n_oracle = 100000;
    std::string out;
};

std::function<double(double)> named_function(const std::string& name) {
    if (name == "linear") return [](double x) { return 0.5 + 2.0 * x; };
    if (name == "poly3") return [](double x) { return x * x * x - x; };
    if (name == "sin2x") return [](double x) { return std::sin(2.0 * x); };
    if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
    if (name == "expx") return [](double x) { return std::exp(x); };
    throw hdbound::ParseError("unknown test function '" + name +
                              "' (expected linear, poly3, sin2x, runge or expx)");
}

void run_series(const SeriesArgs& args) {
    auto g = named_function(args.function);
    hdbound::BasisSpec spec;
    spec.p = args.p;
    spec.a = args.a;
    spec.b = args.b;
    spec.validate();

    std::uint64_t seed = args.seed;
    if (!args.seed_given) {
        if (auto s = env_seed()) seed = *s;
    }
    hdbound::SplitMix64 rng(seed);
    Eigen::VectorXd x(args.n), y(args.n);
    for (int i = 0; i < args.n; ++i) {
        x[i] = spec.a + (spec.b - spec.a) * rng.next_uniform();
        y[i] = g(x[i]) + args.noise_sd * rng.next_normal();
    }

    hdbound::Estimate fit = hdbound::fit_series(x, y, spec);
    Eigen::VectorXd beta_pseudo = hdbound::pseudo_true_coefficients(spec, g, args.n_oracle);

    double z = hdbound::zeta(spec, args.grid);
    double sup_fit_err = 0.0, sup_pointwise = 0.0, approx_gap = 0.0;
    bool holds = true;
    for (int i = 0; i < args.grid; ++i) {
        double x0 = spec.a + (spec.b - spec.a) * static_cast<double>(i) /
                                 static_cast<double>(args.grid - 1);
        Eigen::VectorXd h = hdbound::basis_eval(spec, x0);
        double fitted = h.dot(fit.beta);
        sup_fit_err = std::max(sup_fit_err, std::abs(fitted - g(x0)));
        approx_gap = std::max(approx_gap, std::abs(h.dot(beta_pseudo) - g(x0)));
        auto sb = hdbound::predict_error_bound(spec, fit, beta_pseudo, x0, args.grid);
        sup_pointwise = std::max(sup_pointwise, sb.pointwise);
        holds = holds && sb.holds;
    }
    double bound = z * (fit.beta - beta_pseudo).norm();

    json report = {{"function", args.function},
                   {"n", args.n},
                   {"p", args.p},
                   {"noise_sd", args.noise_sd},
                   {"seed", seed},
                   {"domain", {spec.a, spec.b}},
                   {"zeta", z},
                   {"sigma2", fit.sigma2},
                   {"sup_fit_error", sup_fit_err},
                   {"sup_pointwise_vs_pseudo", sup_pointwise},
                   {"bound", bound},
                   {"pointwise_holds", holds},
                   {"pseudo_true_sup_gap", approx_gap},
                   {"coefficients", std::vector<double>(fit.beta.begin(), fit.beta.end())}};
    emit(report, args.out);
}

// ------------------------------------------------------------------- norms

struct NormsArgs {
    std::string A, x;
    std::string q = "2";
    int random = 0;
    int rows = 8;
    int cols = 6;
    std::uint64_t seed = 1;
    std::string out;
};

void run_norms_check(const NormsArgs& args) {
    json report;
    if (args.random > 0) {
        hdbound::SplitMix64 rng(args.seed);
        json reports = json::array();
        bool all_hold = true;
        for (int t = 0; t < args.random; ++t) {
            Eigen::MatrixXd A(args.rows, args.cols);
            Eigen::VectorXd x(args.cols);
            for (int i = 0; i < args.rows; ++i)
                for (int j = 0; j < args.cols; ++j) A(i, j) = rng.next_normal();
            for (int j = 0; j < args.cols; ++j) x[j] = rng.next_normal();
            for (auto q : {hdbound::VectorNorm::L1, hdbound::VectorNorm::L2,
                           hdbound::VectorNorm::LInf}) {
                auto rep = hdbound::check_compatibility(A, x, q);
                all_hold = all_hold && rep.holds;
                json jr(rep);
                jr["norm"] = hdbound::to_string(q);
                reports.push_back(jr);
            }
        }
        report = {{"trials", args.random}, {"all_hold", all_hold}, {"reports", reports}};
    } else {
        if (args.A.empty() || args.x.empty())
            throw hdbound::ParseError("norms check: pass --A and --x, or --random N");
        Eigen::MatrixXd A = hdbound::read_matrix_csv(args.A);
        Eigen::VectorXd x = hdbound::read_vector_csv(args.x);
        auto rep = hdbound::check_compatibility(A, x,
                                                hdbound::vector_norm_from_string(args.q));
        report = json(rep);
        report["norm"] = args.q;
    }
    emit(report, args.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Upper bounds for functions of high-dimensional estimators"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the seeded Monte Carlo table");
    sim_cmd->add_option("--config", sim.config, "JSON config with cells or a grid")->required();
    sim_cmd->add_option("--threads", sim.threads, "worker threads (0 = hardware, 1 = sequential)");
    sim_cmd->add_option("--out", sim.out, "output CSV path");
    sim_cmd->add_option("--diag", sim.diag, "diagnostics JSON path");

    EstimateArgs est;
    auto* est_cmd = app.add_subcommand("estimate", "Fit a regression estimator to a dataset CSV");
    est_cmd->add_option("--data", est.data, "CSV with y in the first column")->required();
    est_cmd->add_option("--method", est.method, "ols | lasso | cl | dcl");
    est_cmd->add_option("--lambda", est.lambda, "'auto' or a penalty value");
    est_cmd->add_option("--lambda-stage1", est.lambda_stage1, "stage-one penalty override");
    est_cmd->add_option("--lambda-node", est.lambda_node, "nodewise penalty (dcl)");
    est_cmd->add_flag("--standardize", est.standardize, "rescale columns to unit RMS for the fit");
    est_cmd->add_option("--out", est.out, "output JSON path (stdout if omitted)");

    BoundArgs bnd;
    auto* bnd_cmd = app.add_subcommand("bound", "Pathwise upper-bound report for a function spec");
    bnd_cmd->add_option("--f", bnd.f, "linear | quadratic | basis")->required();
    bnd_cmd->add_option("--D", bnd.D, "matrix CSV for the linear map");
    bnd_cmd->add_option("--S", bnd.S, "symmetric matrix CSV for the quadratic form");
    bnd_cmd->add_option("--hvec", bnd.hvec, "vector CSV for the basis point");
    bnd_cmd->add_option("--beta-hat", bnd.beta_hat, "estimate CSV")->required();
    bnd_cmd->add_option("--beta0", bnd.beta0, "truth CSV")->required();
    bnd_cmd->add_option("--norm", bnd.norm, "1 | 2 | inf");
    bnd_cmd->add_option("--C", bnd.C, "regime constant (enables classification)");
    bnd_cmd->add_option("--kn", bnd.k_n, "growing sequence value");
    bnd_cmd->add_option("--dn", bnd.d_n, "shrinking sequence value");
    bnd_cmd->add_option("--regime-tol", bnd.regime_tol, "classification tolerance");
    bnd_cmd->add_option("--rn", bnd.r_n, "estimator rate value for the bound order");
    bnd_cmd->add_option("--out", bnd.out, "output JSON path (stdout if omitted)");

    PortfolioArgs pf;
    auto* pf_cmd = app.add_subcommand("portfolio", "Minimum-variance weights and variance bounds");
    pf_cmd->add_option("--returns", pf.returns, "returns CSV (n rows, one column per asset)");
    pf_cmd->add_option("--sigma", pf.sigma, "covariance CSV (direct mode)");
    pf_cmd->add_option("--w", pf.w, "reference weights CSV (direct mode)");
    pf_cmd->add_option("--w-hat", pf.w_hat, "estimated weights CSV (direct mode)");
    pf_cmd->add_flag("--no-demean", pf.no_demean, "treat returns as already centered");
    pf_cmd->add_option("--lambda-node", pf.lambda_node, "nodewise penalty");
    pf_cmd->add_option("--norm", pf.norm, "norm for the generic pathwise report (1 | 2 | inf)");
    pf_cmd->add_option("--threads", pf.threads, "nodewise worker threads");
    pf_cmd->add_option("--out", pf.out, "output JSON path (stdout if omitted)");

    SeriesArgs ser;
    auto* ser_cmd = app.add_subcommand("series", "Basis regression with the pointwise bound");
    ser_cmd->add_option("--function", ser.function, "linear | poly3 | sin2x | runge | expx");
    ser_cmd->add_option("--n", ser.n, "sample size");
    ser_cmd->add_option("--p", ser.p, "number of basis functions");
    ser_cmd->add_option("--noise-sd", ser.noise_sd, "error standard deviation");
    auto* seed_opt = ser_cmd->add_option("--seed", ser.seed, "RNG seed");
    ser_cmd->add_option("--grid", ser.grid, "evaluation grid size");
    ser_cmd->add_option("--a", ser.a, "domain lower end");
    ser_cmd->add_option("--b", ser.b, "domain upper end");
    ser_cmd->add_option("--n-oracle", ser.n_oracle, "noiseless sample for the reference fit");
    ser_cmd->add_option("--out", ser.out, "output JSON path (stdout if omitted)");

    NormsArgs nrm;
    auto* nrm_cmd = app.add_subcommand("norms", "Norm utilities");
    auto* chk_cmd = nrm_cmd->add_subcommand("check", "Compatibility inequality report");
    chk_cmd->add_option("--A", nrm.A, "matrix CSV");
    chk_cmd->add_option("--x", nrm.x, "vector CSV");
    chk_cmd->add_option("--q", nrm.q, "1 | 2 | inf");
    chk_cmd->add_option("--random", nrm.random, "instead check N random instances");
    chk_cmd->add_option("--rows", nrm.rows, "random instance rows");
    chk_cmd->add_option("--cols", nrm.cols, "random instance cols");
    chk_cmd->add_option("--seed", nrm.seed, "RNG seed");
    chk_cmd->add_option("--out", nrm.out, "output JSON path (stdout if omitted)");
    nrm_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
        ser.seed_given = seed_opt->count() > 0;
        if (sim_cmd->parsed()) run_simulate(sim);
        if (est_cmd->parsed()) run_estimate(est);
        if (bnd_cmd->parsed()) run_bound(bnd);
        if (pf_cmd->parsed()) run_portfolio(pf);
        if (ser_cmd->parsed()) run_series(ser);
        if (nrm_cmd->parsed() && chk_cmd->parsed()) run_norms_check(nrm);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 2;
    } catch (const hdbound::ParseError& e) {
        std::cerr << json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 2;
    } catch (const hdbound::IoError& e) {
        std::cerr << json{{"error", {{"kind", "io"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 4;
    } catch (const hdbound::NumericError& e) {
        std::cerr << json{{"error", {{"kind", "numeric"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 1;
    }
}
