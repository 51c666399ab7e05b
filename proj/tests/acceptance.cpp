// Acceptance gate: each criterion prints one PASS/FAIL line; the binary exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "prolong/experiments.hpp"
#include "prolong/interpolation.hpp"
#include "prolong/kernels.hpp"
#include "prolong/modelred.hpp"
#include "prolong/oracles.hpp"

using namespace prolong;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Smooth map of a Gaussian draw into the open unit ball, radius < 0.8.
CVector ball_point(oracles::Rng& rng, int d) {
    CVector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.normal_complex();
    return 0.8 / (1.0 + v.norm()) * v;
}

modelred::PowerSymbol random_rational_symbol(oracles::Rng& rng, int n_poles, double max_mod,
                                             int length = 120) {
    std::vector<Complex> poles(n_poles), residues(n_poles);
    double worst = 0.0;
    for (int k = 0; k < n_poles; ++k) {
        const double r = 0.15 + (max_mod - 0.15) * rng.uniform();
        const double th = 2.0 * M_PI * rng.uniform();
        poles[k] = Complex(r * std::cos(th), r * std::sin(th));
        residues[k] = rng.normal_complex();
        worst = std::max(worst, r);
    }
    CVector coeffs = CVector::Zero(length);
    for (int n = 1; n <= length; ++n)
        for (int k = 0; k < n_poles; ++k) coeffs[n - 1] += residues[k] * std::pow(poles[k], n);
    return modelred::PowerSymbol::from_coeffs(coeffs, std::min(worst + 0.05, 0.95));
}

// Criterion 1: randomized interpolation reproduces its targets.
bool criterion_node_reproduction(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = kernels::KernelSpec::make(kernels::KernelId::omega);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        oracles::Rng rng(oracles::derive_seed(301, trial));
        const int d = 1 + static_cast<int>(rng.uniform() * 4.0);
        // Node count grows with dimension: crowding a one-dimensional disk
        // pushes the Gram condition number past working precision.
        const int n = 4 + static_cast<int>(rng.uniform() * (d == 1 ? 4.0 : 3.0 + 4.0 * d));
        CMatrix nodes(d, n);
        for (int j = 0; j < n; ++j) {
            // Rejection-sample for pairwise separation; near-coincident nodes
            // make the Gram singular at working precision.
            for (int tries = 0; tries < 100; ++tries) {
                nodes.col(j) = ball_point(rng, d);
                double sep = 1e9;
                for (int i = 0; i < j; ++i)
                    sep = std::min(sep, (nodes.col(i) - nodes.col(j)).norm());
                if (sep > 0.1) break;
            }
        }
        CVector values(n);
        for (int j = 0; j < n; ++j) values[j] = rng.normal_complex();
        const auto net = interp::fit(spec, nodes, values).first;
        const CVector pred = interp::evaluate_batch(net, nodes);
        worst = std::max(worst, (pred - values).norm() / values.norm());
    }
    const double secs = seconds_since(t0);
    detail = "max relative node residual " + fmt(worst) + " over 200 fits, " +
             fmt(secs) + " s";
    return worst <= 1e-8 && secs < 10.0;
}

// Criterion 2: the interpolant is a stationary point of the norm among
// interpolants, so perturbations vanishing at the nodes never reduce it.
bool criterion_min_norm(std::string& detail) {
    const auto spec = kernels::KernelSpec::make(kernels::KernelId::omega);
    double worst_drop = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        oracles::Rng rng(oracles::derive_seed(317, trial));
        const int d = 1 + static_cast<int>(rng.uniform() * 2.0);
        const int n = 4 + static_cast<int>(rng.uniform() * (d == 1 ? 4.0 : 7.0));
        // Separated nodes keep the extended Gram well conditioned so the
        // quadratic forms below are free of cancellation noise.
        CMatrix extended(d, n + 1);
        for (int j = 0; j <= n; ++j) {
            if (d == 1) {
                const double theta = 2.0 * M_PI * (j + 0.3 * rng.uniform()) / (n + 1);
                extended(0, j) = std::polar(0.3 + 0.4 * rng.uniform(), theta);
            } else {
                for (int tries = 0; tries < 100; ++tries) {
                    extended.col(j) = ball_point(rng, d);
                    double sep = 1e9;
                    for (int i = 0; i < j; ++i)
                        sep = std::min(sep, (extended.col(i) - extended.col(j)).norm());
                    if (sep > 0.1) break;
                }
            }
        }
        const CMatrix nodes = extended.leftCols(n);
        CVector values(n);
        for (int j = 0; j < n; ++j) values[j] = rng.normal_complex();
        const CMatrix pe = interp::gram(spec, extended);
        const CMatrix p = pe.topLeftCorner(n, n);
        const Eigen::LDLT<CMatrix> ldlt(p);
        CVector alpha_small = ldlt.solve(values);
        for (int it = 0; it < 2; ++it) alpha_small += ldlt.solve(values - p * alpha_small);
        // g = k_w - sum_j c_j k_{x_j} interpolates zero at every node.
        const CVector kw = pe.topRightCorner(n, 1);
        CVector c = ldlt.solve(kw);
        for (int it = 0; it < 2; ++it) c += ldlt.solve(kw - p * c);

        CVector alpha = CVector::Zero(n + 1), gamma(n + 1);
        alpha.head(n) = alpha_small;
        gamma.head(n) = -c;
        gamma[n] = Complex(1.0, 0.0);

        const double base = ((alpha.adjoint() * pe * alpha)(0, 0)).real();
        for (double t : {-1.0, -0.1, 0.1, 1.0}) {
            const CVector mix = alpha + t * gamma;
            const double perturbed = ((mix.adjoint() * pe * mix)(0, 0)).real();
            worst_drop = std::min(worst_drop, perturbed - base);
        }
    }
    detail = "worst norm-square drop " + fmt(worst_drop) + " over 100 cases";
    return worst_drop >= -1e-10;
}

// Criterion 3: elliptic integral regression accuracy.
bool criterion_elliptic(std::string& detail) {
    experiments::ExperimentConfig cfg;
    cfg.id = "elliptic";
    cfg.seed = 11;
    const auto report = experiments::run_experiment(cfg);
    const double mse = report.metric("test_mse");
    const double secs = report.metric("wall_seconds");
    detail = "holdout mse " + fmt(mse) + ", " + fmt(secs) + " s";
    return mse <= 1e-9 && secs < 5.0;
}

// Criterion 4: chirp fit under the Sobolev kernel, with midpoint linearity.
bool criterion_chirp(std::string& detail) {
    experiments::ExperimentConfig cfg;
    cfg.id = "chirp_sobolev";
    cfg.seed = 11;
    const auto report = experiments::run_experiment(cfg);
    const double resid = report.metric("node_residual_rel");
    const double lin = report.metric("linearity_dev");
    const double secs = report.metric("fit_seconds");
    detail = "node residual " + fmt(resid) + ", linearity deviation " +
             fmt(lin) + ", fit " + fmt(secs) + " s";
    return resid <= 1e-8 && lin <= 1e-9 && secs < 10.0;
}

// Criterion 5: the rank-m reduction error equals the (m+1)-th Schmidt number.
bool criterion_aak_optimality(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int done = 0, attempts = 0;
    while (done < 50 && attempts < 200) {
        oracles::Rng rng(oracles::derive_seed(331, attempts++));
        const int n_poles = 2 + static_cast<int>(rng.uniform() * 5.0);
        const auto symbol = random_rational_symbol(rng, n_poles, 0.7);
        const int m = static_cast<int>(rng.uniform() * 5.0);
        try {
            const auto reduced = modelred::aak_reduce_1d(symbol, m);
            const Eigen::VectorXd s = modelred::schmidt_numbers(symbol, m + 2);
            const double target = s[m];
            worst = std::max(worst, std::abs(reduced.achieved_error - target) / target);
            ++done;
        } catch (const SingularValueCluster&) {
            continue;
        }
    }
    const double secs = seconds_since(t0);
    detail = "max |achieved - s_{m+1}| / s_{m+1} = " + fmt(worst) + " over " +
             std::to_string(done) + " reductions, " + fmt(secs) + " s";
    return done == 50 && worst <= 1e-6 && secs < 60.0;
}

// Criterion 6: the Hankel norm sits between the l2 and sup norms of the symbol.
bool criterion_norm_bracket(std::string& detail) {
    double worst_lo = 0.0, worst_hi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        oracles::Rng rng(oracles::derive_seed(337, trial));
        const double rho = 0.3 + 0.5 * rng.uniform();
        const int len = 40;
        CVector coeffs(len);
        for (int n = 0; n < len; ++n) coeffs[n] = rng.normal_complex() * std::pow(rho, n + 1);
        const auto symbol = modelred::PowerSymbol::from_coeffs(coeffs, std::min(rho + 0.05, 0.95));
        const double lo = modelred::l2_norm(symbol);
        const double gamma = modelred::hankel_norm(symbol);
        const double hi = modelred::linf_norm(symbol, 1 << 16);
        worst_lo = std::max(worst_lo, lo - gamma);
        worst_hi = std::max(worst_hi, gamma - hi);
    }
    detail = "worst l2 excess " + fmt(worst_lo) + ", worst sup excess " +
             fmt(worst_hi) + " over 100 symbols";
    // The sup norm is sampled on a fine grid, allow its discretization error.
    return worst_lo <= 1e-8 && worst_hi <= 1e-5;
}

// Criterion 7: the network fitted to the reduction residual has norm within
// the product Schmidt bound.
bool criterion_pnn_bound(std::string& detail) {
    const auto spec = kernels::KernelSpec::make(kernels::KernelId::omega);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        oracles::Rng rng(oracles::derive_seed(347, trial));
        const int d = 2 + static_cast<int>(rng.uniform() * 2.0);
        modelred::ProductSymbol product;
        std::vector<int> orders;
        for (int j = 0; j < d; ++j) {
            product.factors.push_back(
                random_rational_symbol(rng, 3 + static_cast<int>(rng.uniform() * 3.0), 0.6));
            orders.push_back(2 + static_cast<int>(rng.uniform() * 2.0));
        }
        const auto reduction = modelred::marginal_aak(product, orders);
        std::vector<modelred::PowerSymbol> residuals;
        for (int j = 0; j < d; ++j)
            residuals.push_back(
                modelred::residual_symbol(product.factors[j], reduction.factors[j]));

        const int n = 12;
        CMatrix nodes(d, n);
        CVector values(n);
        for (int i = 0; i < n; ++i) {
            nodes.col(i) = ball_point(rng, d);
            Complex v(1.0, 0.0);
            for (int j = 0; j < d; ++j)
                v *= modelred::eval_disk(residuals[j].coeffs, nodes(j, i));
            values[i] = v;
        }
        interp::FitOptions opts;
        opts.require_residual = false;
        const auto net = interp::fit(spec, nodes, values, opts).first;
        worst = std::max(worst, interp::rkhs_norm(net) - reduction.bound_product);
    }
    detail = "worst norm excess over product bound " + fmt(worst) + " in 25 products";
    return worst <= 1e-6;
}

// Criterion 8: kernel choice separates stable from unstable weight growth.
bool criterion_instability(std::string& detail) {
    experiments::ExperimentConfig cfg;
    cfg.id = "instability";
    cfg.seed = 11;
    const auto report = experiments::run_experiment(cfg);
    const double ratio = report.metric("weight_ratio");
    detail = "unstable/stable max-weight ratio " + fmt(ratio);
    return ratio >= 1e3;
}

// Criterion 9: the deep feature map collapses the unit sphere, so a depth-3
// network takes one value on all of it.
bool criterion_deep_collapse(std::string& detail) {
    const auto spec = kernels::KernelSpec::make(kernels::KernelId::omega);
    const int n = 12;
    CMatrix nodes(1, n);
    CVector values(n);
    for (int i = 0; i < n; ++i) {
        const double x = -0.9 + 1.8 * i / (n - 1.0);
        nodes(0, i) = Complex(x, 0.0);
        values[i] = Complex(std::sin(3.0 * x), 0.0);
    }
    const auto net = interp::fit_deep(spec, nodes, values, 3);
    CVector plus(1), minus(1);
    plus[0] = Complex(1.0, 0.0);
    minus[0] = Complex(-1.0, 0.0);
    const double gap = std::abs(interp::evaluate(net, plus) - interp::evaluate(net, minus));
    detail = "|F(+1) - F(-1)| = " + fmt(gap);
    return gap <= 1e-10;
}

// Criterion 10: the reduced surface network beats the raw noisy fit.
bool criterion_surface(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    experiments::ExperimentConfig cfg;
    cfg.id = "surface_pnn";
    cfg.seed = 11;
    const auto report = experiments::run_experiment(cfg);
    const double pnn = report.metric("pnn_mse");
    const double raw = report.metric("raw_mse");
    const double secs = seconds_since(t0);
    detail = "pnn mse " + fmt(pnn) + " vs raw mse " + fmt(raw) + ", " +
             fmt(secs) + " s";
    return pnn < raw && secs < 60.0;
}

// Criterion 11: shrinkage study completes with finite errors and the
// James-Stein Monte Carlo dominance holds at every dimension.
bool criterion_shrinkage(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    experiments::ExperimentConfig cfg;
    cfg.id = "shrinkage";
    cfg.seed = 11;
    const auto report = experiments::run_experiment(cfg);
    const bool finite = report.metric("all_finite") == 1.0;
    const bool dom = report.metric("mc_dominance") == 1.0;
    const double secs = seconds_since(t0);
    detail = std::string("all_finite=") + (finite ? "1" : "0") + " mc_dominance=" +
             (dom ? "1" : "0") + ", " + fmt(secs) + " s";
    return finite && dom && secs < 120.0;
}

// Criterion 12: permanent regression beats the predict-the-mean baseline.
bool criterion_permanent(std::string& detail) {
    experiments::ExperimentConfig cfg;
    cfg.id = "permanent";
    cfg.seed = 11;
    const auto report = experiments::run_experiment(cfg);
    const double resid = report.metric("node_residual_rel");
    const double mse = report.metric("test_mse");
    const double base = report.metric("baseline_mse");
    detail = "node residual " + fmt(resid) + ", test mse " + fmt(mse) +
             " vs baseline " + fmt(base);
    return resid <= 1e-8 && 10.0 * mse <= base;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"randomized node reproduction", criterion_node_reproduction},
        {"minimum-norm stationarity", criterion_min_norm},
        {"elliptic integral regression", criterion_elliptic},
        {"chirp Sobolev interpolation", criterion_chirp},
        {"rank-m reduction optimality", criterion_aak_optimality},
        {"Hankel norm bracketing", criterion_norm_bracket},
        {"residual network norm bound", criterion_pnn_bound},
        {"kernel instability separation", criterion_instability},
        {"deep sphere collapse", criterion_deep_collapse},
        {"surface denoising by reduction", criterion_surface},
        {"shrinkage study", criterion_shrinkage},
        {"permanent regression", criterion_permanent},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%2zu/12] %s %-32s (%s)\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
