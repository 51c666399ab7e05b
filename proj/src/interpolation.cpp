#include "prolong/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace prolong {
namespace interp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_nodes(const KernelSpec& spec, const CMatrix& nodes) {
    const Eigen::Index n = nodes.cols();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!kernels::in_domain(spec, nodes.col(j)))
            throw DomainViolation("node " + std::to_string(j) + " outside kernel domain");
        for (Eigen::Index i = 0; i < j; ++i)
            if ((nodes.col(i) - nodes.col(j)).norm() < 1e-12)
                throw DuplicateNodes("nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                     " coincide");
    }
}

CMatrix assemble_gram(const KernelSpec& spec, const CMatrix& nodes, bool parallel) {
    const Eigen::Index n = nodes.cols();
    CMatrix p(n, n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            p(i, j) = kernels::eval_kernel(spec, nodes.col(i), nodes.col(j));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) p(i, j) = std::conj(p(j, i));
    return p;
}

double condition_estimate(const CMatrix& p) {
    Eigen::JacobiSVD<CMatrix> svd(p);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

} // namespace

CMatrix gram(const KernelSpec& spec, const CMatrix& nodes) {
    check_nodes(spec, nodes);
    return assemble_gram(spec, nodes, true);
}

CMatrix gram_serial(const KernelSpec& spec, const CMatrix& nodes) {
    check_nodes(spec, nodes);
    return assemble_gram(spec, nodes, false);
}

std::pair<InterpNetwork, GramSolveReport> fit(const KernelSpec& spec, const CMatrix& nodes,
                                              const CMatrix& values, const FitOptions& opts) {
    if (values.rows() != nodes.cols())
        throw DimensionMismatch("value count " + std::to_string(values.rows()) +
                                " does not match node count " + std::to_string(nodes.cols()));
    const CMatrix p = gram(spec, nodes);
    const Eigen::Index n = p.rows();
    const double lambda_norm = values.norm();
    const double trace = std::abs(p.trace());

    GramSolveReport report;
    CMatrix alpha;
    bool solved = false;

    const double accept = opts.residual_tol * std::max(lambda_norm, 1e-300);
    // Iterative refinement against the unmodified Gram matrix; keeps the best
    // iterate so a divergent step on a singular system cannot make it worse.
    auto refine = [&](const std::function<CMatrix(const CMatrix&)>& solve) {
        CMatrix best = alpha;
        double best_resid = (p * alpha - values).norm();
        for (int it = 0; it < 3 && best_resid > accept; ++it) {
            alpha += solve(values - p * alpha);
            const double resid = (p * alpha - values).norm();
            if (resid < best_resid) {
                best = alpha;
                best_resid = resid;
            }
        }
        alpha = best;
        report.residual_norm = best_resid;
    };

    auto attempt = [&](const CMatrix& m, const char* path) {
        if (std::string(path) == "hermitian") {
            Eigen::LDLT<CMatrix> ldlt(m);
            if (ldlt.info() != Eigen::Success) return false;
            alpha = ldlt.solve(values);
            refine([&](const CMatrix& r) { return ldlt.solve(r); });
        } else {
            const auto qr = m.colPivHouseholderQr();
            alpha = qr.solve(values);
            refine([&](const CMatrix& r) { return qr.solve(r); });
        }
        report.solver_path = path;
        return report.residual_norm <= accept;
    };

    solved = attempt(p, "hermitian");
    if (!solved && opts.allow_jitter && n > 0) {
        for (double scale = 1e-12; scale <= 1e-6 * 1.0000001 && !solved; scale *= 10.0) {
            report.jitter = scale * trace / static_cast<double>(n);
            CMatrix m = p + report.jitter * CMatrix::Identity(n, n);
            solved = attempt(m, "hermitian");
        }
        if (!solved) report.jitter = 0.0;
    }
    if (!solved) solved = attempt(p, "pivoted");
    if (!solved && opts.require_residual)
        throw SingularGram("Gram solve residual " + std::to_string(report.residual_norm) +
                           " exceeds tolerance");

    if (opts.estimate_condition && n <= 1024) report.cond_estimate = condition_estimate(p);

    InterpNetwork net;
    net.spec = spec;
    net.nodes = nodes;
    net.weights = alpha;
    net.depth = 2;
    net.cond_estimate = report.cond_estimate;
    return {net, report};
}

CVector evaluate_multi(const InterpNetwork& net, const CVector& z) {
    CVector arg = z;
    for (const CMatrix& anchors : net.inner_layers) arg = deep_feature_map(anchors, arg);
    const Eigen::Index n = net.nodes.cols();
    CVector k(n);
    for (Eigen::Index j = 0; j < n; ++j)
        k[j] = kernels::eval_kernel(net.spec, arg, net.nodes.col(j));
    return net.weights.transpose() * k;
}

Complex evaluate(const InterpNetwork& net, const CVector& z) {
    return evaluate_multi(net, z)[0];
}

namespace {
CVector batch_eval(const InterpNetwork& net, const CMatrix& points, bool parallel) {
    const Eigen::Index m = points.cols();
    CVector out(m);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (Eigen::Index i = 0; i < m; ++i) {
        try {
            out[i] = evaluate(net, points.col(i));
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}
} // namespace

CVector evaluate_batch(const InterpNetwork& net, const CMatrix& points) {
    return batch_eval(net, points, true);
}

CVector evaluate_batch_serial(const InterpNetwork& net, const CMatrix& points) {
    return batch_eval(net, points, false);
}

double rkhs_norm(const InterpNetwork& net) {
    if (!kernels::is_psd_kernel(net.spec))
        throw KreinSpec("mixed-sign kernel spec has no RKHS norm; use krein_form");
    const CMatrix p = gram_serial(net.spec, net.nodes);
    const CVector a = net.weights.col(0);
    const double sq = std::real(a.dot(p * a));
    return std::sqrt(std::max(sq, 0.0));
}

double krein_form(const InterpNetwork& net) {
    const CMatrix p = gram_serial(net.spec, net.nodes);
    const CVector a = net.weights.col(0);
    return std::real(a.dot(p * a));
}

CVector deep_feature_map(const CMatrix& anchor_nodes, const CVector& x) {
    const double xn = x.norm();
    if (xn > 1.0 + 1e-12) throw DomainViolation("deep layer input norm exceeds 1");
    const Eigen::Index n = anchor_nodes.cols();
    const double root_n = std::sqrt(static_cast<double>(n));
    CVector out(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double yn = anchor_nodes.col(j).norm();
        if (yn >= 1.0) throw DomainViolation("deep anchor norm must be < 1");
        const Complex denom = 1.0 - anchor_nodes.col(j).dot(x);
        out[j] = (1.0 - yn) * (1.0 - xn) / (root_n * denom);
    }
    return out;
}

InterpNetwork fit_deep(const KernelSpec& spec, const CMatrix& nodes, const CMatrix& values,
                       int depth, const FitOptions& opts) {
    if (depth < 2) throw Error("depth must be >= 2");
    if (depth == 2) return fit(spec, nodes, values, opts).first;

    std::vector<CMatrix> inner;
    CMatrix current = nodes;
    for (int stage = 0; stage < depth - 2; ++stage) {
        // Anchors must be strictly interior; unit-norm inputs are still legal
        // arguments of the feature map (they collapse to the zero vector).
        std::vector<Eigen::Index> interior;
        for (Eigen::Index j = 0; j < current.cols(); ++j)
            if (current.col(j).norm() < 1.0 - 1e-12) interior.push_back(j);
        if (interior.empty()) throw Error("no strictly interior anchors for the deep layer");
        CMatrix anchors(current.rows(), static_cast<Eigen::Index>(interior.size()));
        for (size_t k = 0; k < interior.size(); ++k) anchors.col(k) = current.col(interior[k]);
        CMatrix mapped(anchors.cols(), current.cols());
        for (Eigen::Index j = 0; j < current.cols(); ++j)
            mapped.col(j) = deep_feature_map(anchors, current.col(j));
        for (Eigen::Index j = 0; j < mapped.cols(); ++j)
            for (Eigen::Index i = 0; i < j; ++i)
                if ((mapped.col(i) - mapped.col(j)).norm() < 1e-10)
                    throw CollapsedNodes("inputs " + std::to_string(i) + " and " +
                                         std::to_string(j) + " map to the same deep feature");
        inner.push_back(anchors);
        current = mapped;
    }
    auto [net, report] = fit(spec, current, values, opts);
    (void)report;
    net.depth = depth;
    net.inner_layers = inner;
    return net;
}

Eigen::VectorXd chebyshev_nodes(int n, double a, double b) {
    if (n < 1) throw Error("chebyshev_nodes: n must be >= 1");
    if (!(a < b)) throw Error("chebyshev_nodes: need a < b");
    Eigen::VectorXd x(n);
    for (int k = 1; k <= n; ++k) {
        const double t = std::cos((2.0 * k - 1.0) * kPi / (2.0 * n));
        x[n - k] = 0.5 * (a + b) + 0.5 * (b - a) * t;
    }
    std::sort(x.begin(), x.end());
    return x;
}

} // namespace interp
} // namespace prolong
