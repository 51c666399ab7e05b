#include "prolong/modelred.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prolong {
namespace modelred {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

void fft_inplace(std::vector<Complex>& a) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / len;
        const Complex wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

Complex coefficient(const PowerSymbol& s, int n) {
    // 1-based index into f_1 .. f_M, zero beyond the stored tail.
    if (n < 1 || n > s.coeffs.size()) return Complex(0.0, 0.0);
    return s.coeffs[n - 1];
}

CVector trim_tail(const CVector& c, double rel_tol) {
    const double peak = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    Eigen::Index keep = c.size();
    while (keep > 0 && std::abs(c[keep - 1]) < rel_tol * std::max(peak, 1e-300)) --keep;
    return c.head(keep);
}

double estimate_decay(const CVector& c) {
    const double peak = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    if (peak == 0.0) return 0.5;
    double rho = 0.1;
    for (Eigen::Index n = 1; n < c.size(); ++n) {
        const double a = std::abs(c[n]) / peak;
        if (a <= 0.0) continue;
        rho = std::max(rho, std::pow(a, 1.0 / static_cast<double>(n)));
    }
    return std::min(rho, 0.999);
}

Complex root_1_over_d(Complex lambda, int d) {
    if (std::abs(lambda) == 0.0) return Complex(0.0, 0.0);
    return std::pow(lambda, 1.0 / static_cast<double>(d));
}

} // namespace

PowerSymbol PowerSymbol::from_coeffs(const CVector& coeffs, double rho) {
    if (!(rho > 0.0) || rho >= 1.0) throw Error("decay bound must lie in (0, 1)");
    PowerSymbol s;
    s.coeffs = coeffs;
    s.decay_bound = rho;
    double scale = 0.0;
    for (Eigen::Index n = 0; n < coeffs.size(); ++n)
        scale = std::max(scale, std::abs(coeffs[n]) / std::pow(rho, static_cast<double>(n + 1)));
    s.decay_scale = scale;
    return s;
}

int truncation_size(const PowerSymbol& symbol, double tol) {
    const int stored = static_cast<int>(symbol.coeffs.size());
    if (stored > 4096)
        throw TruncationTooSmall("symbol needs more than 4096 Hankel rows");
    int n = std::max(32, stored);
    // Certify the neglected analytic tail under the decay envelope.
    const double rho = symbol.decay_bound;
    const double c = symbol.decay_scale;
    while (n < 4096 && c * std::pow(rho, n) / (1.0 - rho) >= tol) n = std::min(2 * n, 4096);
    if (c * std::pow(rho, n) / (1.0 - rho) >= tol && stored < n)
        throw TruncationTooSmall("decay envelope too slow for a certified truncation");
    return n;
}

CMatrix hankel_matrix(const PowerSymbol& symbol, int size) {
    if (size < 1) throw Error("hankel_matrix: size must be >= 1");
    CMatrix h(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) h(i, j) = coefficient(symbol, i + j + 1);
    return h;
}

Eigen::VectorXd schmidt_numbers(const PowerSymbol& symbol, int size, int count) {
    const CMatrix h = hankel_matrix(symbol, size);
    Eigen::BDCSVD<CMatrix> svd(h);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(count);
    const int avail = std::min<int>(count, svd.singularValues().size());
    out.head(avail) = svd.singularValues().head(avail);
    return out;
}

Eigen::VectorXd schmidt_numbers(const PowerSymbol& symbol, int count) {
    return schmidt_numbers(symbol, truncation_size(symbol), count);
}

double hankel_norm(const PowerSymbol& symbol, int size) {
    return schmidt_numbers(symbol, size, 1)(0);
}

double hankel_norm(const PowerSymbol& symbol) {
    return hankel_norm(symbol, truncation_size(symbol));
}

double l2_norm(const PowerSymbol& symbol) {
    return symbol.coeffs.norm();
}

double linf_norm(const PowerSymbol& symbol, int grid) {
    double sup = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double t = 2.0 * kPi * k / grid;
        sup = std::max(sup, std::abs(eval_boundary(symbol, Complex(std::cos(t), std::sin(t)))));
    }
    return sup;
}

Complex eval_boundary(const PowerSymbol& symbol, Complex z) {
    return eval_disk(symbol.coeffs, 1.0 / z);
}

Complex eval_disk(const CVector& coeffs, Complex w) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index n = coeffs.size(); n-- > 0;) acc = (acc + coeffs[n]) * w;
    return acc;
}

PowerSymbol subtract(const PowerSymbol& a, const CVector& b_coeffs) {
    const Eigen::Index len = std::max(a.coeffs.size(), b_coeffs.size());
    CVector diff = CVector::Zero(len);
    diff.head(a.coeffs.size()) = a.coeffs;
    diff.head(b_coeffs.size()) -= b_coeffs;
    diff = trim_tail(diff, 1e-15);
    const double rho = std::max(a.decay_bound, estimate_decay(diff));
    return PowerSymbol::from_coeffs(diff, std::min(rho, 0.999));
}

PowerSymbol strictly_proper_part(const CVector& boundary_samples) {
    const int g = static_cast<int>(boundary_samples.size());
    if (!is_power_of_two(g) || g < 256)
        throw Error("strictly_proper_part: grid size must be a power of two >= 256");
    std::vector<Complex> bins(boundary_samples.data(), boundary_samples.data() + g);
    fft_inplace(bins);
    CVector coeffs(g / 2);
    for (int n = 1; n <= g / 2; ++n) coeffs[n - 1] = bins[(g - n) % g] / static_cast<double>(g);
    // Trim against the sample scale, so an analytic input with pure roundoff
    // in its negative-power bins collapses to the empty symbol.
    const double scale = std::max(boundary_samples.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::Index keep = coeffs.size();
    while (keep > 0 && std::abs(coeffs[keep - 1]) < 1e-13 * scale) --keep;
    coeffs = coeffs.head(keep).eval();
    return PowerSymbol::from_coeffs(coeffs, estimate_decay(coeffs));
}

std::vector<Complex> polynomial_roots(const CVector& coeffs) {
    CVector c = coeffs;
    const double peak = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    Eigen::Index deg = c.size() - 1;
    while (deg > 0 && std::abs(c[deg]) < 1e-13 * std::max(peak, 1e-300)) --deg;
    if (deg < 1) return {};
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
    Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
    return roots;
}

namespace {

// Denominator from poles, numerator from matching the strictly proper series.
void rational_from_poles(const std::vector<Complex>& poles, const CVector& series,
                         RationalApproximant& out) {
    const int m = static_cast<int>(poles.size());
    CVector q = CVector::Zero(m + 1);
    q[0] = 1.0;
    for (int k = 0; k < m; ++k) {
        CVector next = CVector::Zero(m + 1);
        for (int j = 0; j <= k; ++j) {
            next[j + 1] += q[j];
            next[j] -= poles[k] * q[j];
        }
        q = next;
    }
    // q now holds ascending coefficients of prod (z - pole_k), monic.
    CVector p = CVector::Zero(std::max(m, 1));
    for (int k = 0; k < m; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = k + 1; j <= m; ++j) {
            const Complex r = (j - k <= series.size()) ? series[j - k - 1] : Complex(0.0, 0.0);
            acc += q[j] * r;
        }
        p[k] = acc;
    }
    out.numerator = (m > 0) ? p.head(m).eval() : CVector();
    out.denominator = q;
    out.order = m;
    out.poles = poles;
}

// Least-squares linear recurrence (Prony) for a symbol of numerical rank r.
std::vector<Complex> prony_poles(const PowerSymbol& symbol, int rank) {
    const int m = std::max<int>(static_cast<int>(symbol.coeffs.size()), 2 * rank + 8);
    const int rows = m - rank;
    CMatrix a(rows, rank);
    CVector b(rows);
    for (int n = 0; n < rows; ++n) {
        for (int j = 0; j < rank; ++j) a(n, j) = coefficient(symbol, n + j + 1);
        b[n] = -coefficient(symbol, n + rank + 1);
    }
    const CVector c = a.colPivHouseholderQr().solve(b);
    CVector q(rank + 1);
    q.head(rank) = c;
    q[rank] = 1.0;
    auto roots = polynomial_roots(q);
    std::vector<Complex> inside;
    for (const Complex& r : roots)
        if (std::abs(r) < 1.0) inside.push_back(r);
    return inside;
}

} // namespace

RationalApproximant aak_reduce_1d(const PowerSymbol& symbol, int order, int grid_size) {
    if (order < 0) throw Error("aak_reduce_1d: order must be >= 0");
    if (!is_power_of_two(grid_size) || grid_size < 256)
        throw Error("aak_reduce_1d: grid size must be a power of two >= 256");
    const int n = truncation_size(symbol);
    const CMatrix h = hankel_matrix(symbol, n);
    Eigen::BDCSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double s1 = s(0);

    RationalApproximant out;
    if (s1 <= 0.0) {
        out.denominator = CVector::Ones(1);
        return out;
    }

    if (order >= n || s(order) <= 1e-12 * s1) {
        // The symbol already has rank <= order: it is its own best approximant.
        int rank = 0;
        while (rank < n && s(rank) > 1e-10 * s1) ++rank;
        const auto poles = prony_poles(symbol, rank);
        rational_from_poles(poles, symbol.coeffs, out);
        out.series = symbol.coeffs;
        out.achieved_error = (order < n) ? s(order) : 0.0;
        return out;
    }

    if (order + 1 < n && s(order) - s(order + 1) < 1e-10 * s1)
        throw SingularValueCluster("singular values " + std::to_string(order + 1) + " and " +
                                   std::to_string(order + 2) + " are numerically coincident");

    const CVector u = svd.matrixU().col(order);
    const CVector v = svd.matrixV().col(order);
    const double sm = s(order);

    CVector samples(grid_size);
    for (int k = 0; k < grid_size; ++k) {
        const double t = 2.0 * kPi * k / grid_size;
        const Complex z(std::cos(t), std::sin(t));
        const Complex v_plus = eval_disk(v, z) / z;        // sum v_j z^{j-1}
        const Complex u_minus = eval_disk(u, 1.0 / z);     // sum u_j z^{-j}
        samples[k] = eval_boundary(symbol, z) - sm * u_minus / v_plus;
    }
    const PowerSymbol proper = strictly_proper_part(samples);

    std::vector<Complex> inside;
    for (const Complex& r : polynomial_roots(v)) {
        if (std::abs(std::abs(r) - 1.0) < 1e-8)
            throw PoleOnCircle("denominator zero with modulus " + std::to_string(std::abs(r)));
        if (std::abs(r) < 1.0) inside.push_back(r);
    }
    std::sort(inside.begin(), inside.end(),
              [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
    if (static_cast<int>(inside.size()) > order) inside.resize(order);

    rational_from_poles(inside, proper.coeffs, out);
    out.series = proper.coeffs;
    // The residual may decay slowly (poles of u_-/v_+ can sit near the
    // circle), so its Hankel norm is taken at an explicit truncation; the
    // dropped tail perturbs the norm by far less than the 1e-3 certification.
    PowerSymbol resid = subtract(symbol, out.series);
    resid.coeffs = trim_tail(resid.coeffs, 1e-9);
    const int rows = std::clamp<int>(static_cast<int>(resid.coeffs.size()), 32, 1024);
    out.achieved_error = hankel_norm(resid, rows);
    if (std::abs(out.achieved_error - sm) > 1e-3 * sm)
        throw Error("AAK certification failed: achieved " + std::to_string(out.achieved_error) +
                    " vs Schmidt number " + std::to_string(sm));
    return out;
}

PowerSymbol residual_symbol(const PowerSymbol& symbol, const RationalApproximant& reduced) {
    PowerSymbol r = subtract(symbol, reduced.series);
    double rho = symbol.decay_bound;
    for (const Complex& p : reduced.poles) rho = std::max(rho, std::abs(p));
    return PowerSymbol::from_coeffs(r.coeffs, std::min(std::max(rho, r.decay_bound), 0.999));
}

MarginalReduction marginal_aak(const ProductSymbol& product, const std::vector<int>& orders) {
    const size_t d = product.factors.size();
    if (orders.size() != d) throw DimensionMismatch("one order per dimension required");
    MarginalReduction red;
    red.bound_product = 1.0;
    for (size_t j = 0; j < d; ++j) {
        if (orders[j] < 1) throw Error("marginal orders are 1-based Schmidt indices");
        const PowerSymbol& factor = product.factors[j];
        red.factors.push_back(aak_reduce_1d(factor, orders[j] - 1));
        const double s_nj = schmidt_numbers(factor, orders[j])(orders[j] - 1);
        red.schmidt_values.push_back(s_nj);
        red.bound_product *= s_nj;
    }
    red.bound_sqrt_d = std::sqrt(static_cast<double>(d)) * red.bound_product;
    return red;
}

SampleTable build_prolongation(const std::vector<RationalApproximant>& factors,
                               const std::vector<Eigen::VectorXd>& grid) {
    const size_t d = factors.size();
    if (grid.size() != d) throw DimensionMismatch("one grid axis per factor required");
    Eigen::Index total = 1;
    for (const auto& axis : grid) total *= axis.size();

    SampleTable table;
    table.points = CMatrix(d, total);
    table.values = CVector(total);
    std::vector<Eigen::Index> idx(d, 0);
    for (Eigen::Index flat = 0; flat < total; ++flat) {
        Complex value(1.0, 0.0);
        for (size_t j = 0; j < d; ++j) {
            const Complex z(grid[j][idx[j]], 0.0);
            for (const Complex& pole : factors[j].poles)
                if (std::abs(1.0 - pole * z) < 1e-8)
                    throw PoleOnGrid("grid point within 1e-8 of a factor pole");
            table.points(j, flat) = z;
            value *= eval_disk(factors[j].series, z);
        }
        table.values[flat] = value;
        for (size_t j = d; j-- > 0;) {
            if (++idx[j] < grid[j].size()) break;
            idx[j] = 0;
        }
    }
    return table;
}

PnnNetwork fit_pnn(const SampleTable& samples, const kernels::KernelSpec& spec,
                   const std::vector<int>& orders, double bound, const interp::FitOptions& opts) {
    PnnNetwork pnn;
    pnn.net = interp::fit(spec, samples.points, samples.values, opts).first;
    pnn.orders = orders;
    pnn.bound = bound;
    return pnn;
}

PickSystem pick_matrices(const CMatrix& points, const CVector& targets, int d) {
    if (points.rows() != d) throw DimensionMismatch("points must have d coordinate rows");
    const Eigen::Index n = points.cols();
    if (targets.size() != n) throw DimensionMismatch("one target per point required");
    for (Eigen::Index j = 0; j < n; ++j)
        for (int k = 0; k < d; ++k)
            if (std::abs(points(k, j)) >= 1.0)
                throw DomainViolation("point " + std::to_string(j) +
                                      " outside the open polydisk");
    CVector mu(n);
    for (Eigen::Index j = 0; j < n; ++j) mu[j] = root_1_over_d(targets[j], d);

    PickSystem sys;
    sys.points = points;
    sys.targets = targets;
    sys.feasible = true;
    for (int k = 0; k < d; ++k) {
        CMatrix pick(n, n);
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = 0; q < n; ++q)
                pick(p, q) = (1.0 - mu[p] * std::conj(mu[q])) /
                             (1.0 - points(k, p) * std::conj(points(k, q)));
        pick = 0.5 * (pick + pick.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(pick, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        const double trace = pick.real().trace();
        sys.matrices.push_back(pick);
        sys.min_eigenvalues.push_back(min_eig);
        if (min_eig < -1e-10 * std::max(std::abs(trace), 1.0)) sys.feasible = false;
    }
    return sys;
}

Complex SchurInterpolant::operator()(Complex z) const {
    Complex f = tail;
    for (size_t t = nodes.size(); t-- > 0;) {
        const Complex b = (z - nodes[t]) / (1.0 - std::conj(nodes[t]) * z);
        const Complex bf = b * f;
        f = (bf + parameters[t]) / (1.0 + std::conj(parameters[t]) * bf);
    }
    return f;
}

double SchurInterpolant::sup_circle(int grid) const {
    double sup = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double t = 2.0 * kPi * k / grid;
        sup = std::max(sup, std::abs((*this)(Complex(std::cos(t), std::sin(t)))));
    }
    return sup;
}

SchurInterpolant nevanlinna_pick_1d(const CVector& points, const CVector& targets) {
    const Eigen::Index n = points.size();
    if (targets.size() != n) throw DimensionMismatch("one target per point required");
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < j; ++i)
            if (std::abs(points[i] - points[j]) < 1e-12)
                throw DuplicatePoints("interpolation points coincide");
    CMatrix pts(1, n);
    pts.row(0) = points.transpose();
    const PickSystem sys = pick_matrices(pts, targets, 1);
    if (!sys.feasible)
        throw Infeasible("Pick matrix has minimum eigenvalue " +
                         std::to_string(sys.min_eigenvalues[0]));

    SchurInterpolant f;
    std::vector<Complex> z(points.data(), points.data() + n);
    std::vector<Complex> w(targets.data(), targets.data() + n);
    while (!z.empty()) {
        const Complex z0 = z.front();
        const Complex w0 = w.front();
        if (std::abs(w0) >= 1.0 - 1e-12) {
            // Degenerate Pick data: a unimodular value forces a constant.
            for (size_t j = 1; j < z.size(); ++j)
                if (std::abs(w[j] - w0) > 1e-8)
                    throw Infeasible("unimodular target forces a constant interpolant");
            f.tail = w0;
            return f;
        }
        std::vector<Complex> z_next, w_next;
        for (size_t j = 1; j < z.size(); ++j) {
            const Complex moved = (w[j] - w0) / (1.0 - std::conj(w0) * w[j]);
            const Complex b = (z[j] - z0) / (1.0 - std::conj(z0) * z[j]);
            z_next.push_back(z[j]);
            w_next.push_back(moved / b);
        }
        f.nodes.push_back(z0);
        f.parameters.push_back(w0);
        z = std::move(z_next);
        w = std::move(w_next);
    }
    return f;
}

Complex ProductPickInterpolant::operator()(const CVector& z) const {
    if (static_cast<size_t>(z.size()) != factors.size())
        throw DimensionMismatch("evaluation point dimension mismatch");
    Complex value(1.0, 0.0);
    for (size_t k = 0; k < factors.size(); ++k) value *= factors[k](z[k]);
    return value;
}

ProductPickInterpolant pick_product_interpolant(const CMatrix& points, const CVector& targets,
                                                int d) {
    const PickSystem sys = pick_matrices(points, targets, d);
    for (int k = 0; k < d; ++k) {
        const double trace = sys.matrices[k].real().trace();
        if (sys.min_eigenvalues[k] < -1e-10 * std::max(std::abs(trace), 1.0))
            throw Infeasible("Pick matrix for coordinate " + std::to_string(k + 1) +
                             " is not nonnegative semidefinite");
    }
    CVector mu(targets.size());
    for (Eigen::Index j = 0; j < targets.size(); ++j) mu[j] = root_1_over_d(targets[j], d);
    ProductPickInterpolant out;
    for (int k = 0; k < d; ++k)
        out.factors.push_back(nevanlinna_pick_1d(points.row(k).transpose(), mu));
    return out;
}

} // namespace modelred
} // namespace prolong
