#include "prolong/kernels.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace prolong {
namespace kernels {

namespace {

constexpr double kPi = 3.14159265358979323846;

double zeta_even(int two_n) {
    // Riemann zeta at even integers >= 2: partial sum plus an Euler-Maclaurin
    // tail, accurate to ~1e-15 (direct summation loses ~1/N).
    const double s = static_cast<double>(two_n);
    const double big_n = 100.0;
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) sum += std::pow(static_cast<double>(k), -s);
    sum += std::pow(big_n, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(big_n, -s);
    sum += s * std::pow(big_n, -s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * std::pow(big_n, -s - 3.0) / 720.0;
    return sum;
}

// Coefficient of z^(2n-1) in tanh(z): (-1)^(n-1) * 2 * (4^n - 1) * zeta(2n) / pi^(2n).
double tanh_odd_coefficient(int n) {
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    const double magnitude =
        2.0 * std::pow(2.0 / kPi, 2 * n) * (1.0 - std::pow(4.0, -n)) * zeta_even(2 * n);
    return sign * magnitude;
}

std::vector<double> tanh_series(int count) {
    std::vector<double> a(count, 0.0);
    for (int m = 1; m < count; m += 2) a[m] = tanh_odd_coefficient((m + 1) / 2);
    return a;
}

// softplus: a_0 = log 2, a_1 = 1/2, a_{2k} = t_{2k-1} / (4^k * 2k) with
// t the tanh coefficients; odd terms beyond degree 1 vanish.
std::vector<double> softplus_series(int count) {
    std::vector<double> a(count, 0.0);
    if (count > 0) a[0] = std::log(2.0);
    if (count > 1) a[1] = 0.5;
    for (int m = 2; m < count; m += 2) {
        const int k = m / 2;
        a[m] = tanh_odd_coefficient(k) / (std::pow(4.0, k) * 2.0 * k);
    }
    return a;
}

bool near_real_unit_box(const CVector& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(x[i].imag()) > 1e-12) return false;
        const double r = x[i].real();
        if (r < -1e-12 || r > 1.0 + 1e-12) return false;
    }
    return true;
}

void check_dims(const CVector& x, const CVector& y) {
    if (x.size() != y.size())
        throw DimensionMismatch("kernel arguments have dimensions " + std::to_string(x.size()) +
                                " and " + std::to_string(y.size()));
}

} // namespace

std::string to_string(KernelId id) {
    switch (id) {
    case KernelId::omega: return "omega";
    case KernelId::segal_bargmann: return "segal_bargmann";
    case KernelId::tanh_k: return "tanh";
    case KernelId::softplus: return "softplus";
    case KernelId::tan_assoc: return "tan_assoc";
    case KernelId::softplus_assoc: return "softplus_assoc";
    case KernelId::sobolev_K: return "sobolev_K";
    case KernelId::custom_series: return "custom_series";
    }
    return "unknown";
}

KernelId parse_id(const std::string& name) {
    static const std::map<std::string, KernelId> table = {
        {"omega", KernelId::omega},
        {"segal_bargmann", KernelId::segal_bargmann},
        {"tanh", KernelId::tanh_k},
        {"softplus", KernelId::softplus},
        {"tan_assoc", KernelId::tan_assoc},
        {"softplus_assoc", KernelId::softplus_assoc},
        {"sobolev_K", KernelId::sobolev_K},
        {"custom_series", KernelId::custom_series},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw UnsupportedId("unknown kernel id: " + name);
    return it->second;
}

Complex pairing(const CVector& x, const CVector& y) {
    check_dims(x, y);
    return y.dot(x); // Eigen's dot conjugates the first argument
}

bool has_series(KernelId id) {
    return id != KernelId::sobolev_K;
}

double default_radius(KernelId id) {
    switch (id) {
    case KernelId::omega: return 1.0;
    case KernelId::segal_bargmann: return std::numeric_limits<double>::infinity();
    case KernelId::tanh_k:
    case KernelId::tan_assoc: return kPi / 2.0;
    case KernelId::softplus:
    case KernelId::softplus_assoc: return kPi; // log(1+e^z) singular at z = i*pi
    case KernelId::sobolev_K: return 1.0;      // [0,1]^d box, not a pairing radius
    case KernelId::custom_series: return 1.0;
    }
    return 1.0;
}

KernelSpec KernelSpec::make(KernelId id, int series_terms) {
    KernelSpec spec;
    spec.id = id;
    spec.radius = default_radius(id);
    if (series_terms > 0) spec.coeffs = series_coefficients(id, series_terms);
    return spec;
}

bool is_psd_kernel(const KernelSpec& spec) {
    if (spec.id == KernelId::sobolev_K) return true;
    const std::vector<double> a =
        spec.coeffs.empty() ? series_coefficients(spec.id, 32) : spec.coeffs;
    for (double c : a)
        if (c < 0.0) return false;
    return true;
}

std::vector<double> series_coefficients(KernelId id, int count) {
    if (count < 1) throw Error("series_coefficients: count must be >= 1");
    switch (id) {
    case KernelId::omega: return std::vector<double>(count, 1.0);
    case KernelId::segal_bargmann: {
        std::vector<double> a(count);
        double f = 1.0;
        for (int j = 0; j < count; ++j) {
            a[j] = f;
            f /= (j + 1);
        }
        return a;
    }
    case KernelId::tanh_k: return tanh_series(count);
    case KernelId::tan_assoc: {
        auto a = tanh_series(count);
        for (double& c : a) c = std::abs(c);
        return a;
    }
    case KernelId::softplus: return softplus_series(count);
    case KernelId::softplus_assoc: {
        auto a = softplus_series(count);
        for (double& c : a) c = std::abs(c);
        return a;
    }
    case KernelId::sobolev_K:
    case KernelId::custom_series:
        throw UnsupportedId("no analytic power series for " + to_string(id));
    }
    throw UnsupportedId("unknown id");
}

int series_length_for(KernelId id, double eval_radius, double tol) {
    int n = 16;
    while (n <= 4096) {
        const auto a = series_coefficients(id, n);
        // Geometric tail estimate from the last few generated terms.
        double tail = 0.0;
        for (int j = n - 4; j < n; ++j) tail += std::abs(a[j]) * std::pow(eval_radius, j);
        const double ratio = eval_radius / default_radius(id);
        if (ratio < 1.0) tail /= (1.0 - ratio);
        if (tail < tol) return n;
        n *= 2;
    }
    return 4096;
}

bool in_domain(const KernelSpec& spec, const CVector& x) {
    if (spec.id == KernelId::sobolev_K) return near_real_unit_box(x);
    return std::abs(x.squaredNorm()) < spec.radius;
}

Complex eval_kernel(const KernelSpec& spec, const CVector& x, const CVector& y) {
    check_dims(x, y);
    if (spec.id == KernelId::sobolev_K) {
        if (!near_real_unit_box(x) || !near_real_unit_box(y))
            throw DomainViolation("sobolev_K arguments must lie in [0,1]^d");
        const double ex = x.real().sum();
        const double ey = y.real().sum();
        return Complex(std::min(ex, ey) - y.real().dot(x.real()), 0.0);
    }
    if (!in_domain(spec, x) || !in_domain(spec, y))
        throw DomainViolation("kernel argument outside domain");
    const Complex w = pairing(x, y);
    if (std::abs(w) >= spec.radius)
        throw DomainViolation("pairing magnitude " + std::to_string(std::abs(w)) +
                              " outside kernel radius " + std::to_string(spec.radius));
    switch (spec.id) {
    case KernelId::omega: return 1.0 / (1.0 - w);
    case KernelId::segal_bargmann: return std::exp(w);
    case KernelId::tanh_k: return std::tanh(w);
    case KernelId::softplus: return std::log(1.0 + std::exp(w));
    case KernelId::tan_assoc: return std::tan(w);
    case KernelId::softplus_assoc: {
        const Complex i(0.0, 1.0);
        return -std::log(1.0 + std::exp(i * w)) + std::log(4.0) + 0.5 * (1.0 + i) * w;
    }
    case KernelId::custom_series: {
        Complex acc(0.0, 0.0);
        for (auto it = spec.coeffs.rbegin(); it != spec.coeffs.rend(); ++it) acc = acc * w + *it;
        return acc;
    }
    default: break;
    }
    throw UnsupportedId("unknown id");
}

KernelSpec associated_hilbert(const KernelSpec& spec) {
    if (!has_series(spec.id)) throw UnsupportedId("sobolev_K has no power series in y^*x");
    KernelSpec out = spec;
    if (out.coeffs.empty()) out.coeffs = series_coefficients(spec.id, 24);
    for (double& c : out.coeffs) c = std::abs(c);
    if (spec.id == KernelId::tanh_k) out.id = KernelId::tan_assoc;
    else if (spec.id == KernelId::softplus) out.id = KernelId::softplus_assoc;
    return out;
}

KernelSpec fill_gaps(const KernelSpec& spec, double fill_value, int max_degree) {
    if (!has_series(spec.id)) throw UnsupportedId("sobolev_K has no power series to fill");
    if (!(fill_value > 0.0) || fill_value > 1.0)
        throw InvalidFill("fill_value must lie in (0, 1]");
    KernelSpec out = spec;
    if (out.coeffs.empty()) out.coeffs = series_coefficients(spec.id, max_degree + 1);
    if (static_cast<int>(out.coeffs.size()) <= max_degree) out.coeffs.resize(max_degree + 1, 0.0);
    for (int j = 0; j <= max_degree; ++j)
        if (out.coeffs[j] == 0.0) out.coeffs[j] = fill_value;
    out.id = KernelId::custom_series;
    // Unit-coefficient terms restrict convergence to the unit pairing disk.
    out.radius = std::min(out.radius, 1.0);
    out.fill_value = fill_value;
    return out;
}

KreinSplit krein_split(const KernelSpec& spec) {
    const std::vector<double> a =
        spec.coeffs.empty() && has_series(spec.id) ? series_coefficients(spec.id, 24) : spec.coeffs;
    KreinSplit split;
    split.plus.id = KernelId::custom_series;
    split.minus.id = KernelId::custom_series;
    split.plus.radius = split.minus.radius = spec.radius;
    split.plus.coeffs.assign(a.size(), 0.0);
    split.minus.coeffs.assign(a.size(), 0.0);
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] >= 0.0) split.plus.coeffs[j] = a[j];
        else split.minus.coeffs[j] = -a[j];
    }
    while (!split.minus.coeffs.empty() && split.minus.coeffs.back() == 0.0)
        split.minus.coeffs.pop_back();
    return split;
}

MembershipCertificate membership_certificate(const KernelSpec& spec,
                                             const std::vector<CVector>& sample_points,
                                             const CVector& sample_values, double c) {
    const int n = static_cast<int>(sample_points.size());
    if (n != sample_values.size())
        throw DimensionMismatch("point/value counts differ");
    for (int i = 0; i < n; ++i) {
        if (!in_domain(spec, sample_points[i]))
            throw DomainViolation("sample point " + std::to_string(i) + " outside kernel domain");
        for (int j = 0; j < i; ++j)
            if ((sample_points[i] - sample_points[j]).norm() < 1e-12)
                throw DuplicatePoints("sample points " + std::to_string(j) + " and " +
                                      std::to_string(i) + " coincide");
    }
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = c * c * eval_kernel(spec, sample_points[i], sample_points[j]) -
                      sample_values[i] * std::conj(sample_values[j]);
    m = 0.5 * (m + m.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    MembershipCertificate cert;
    cert.min_eigenvalue = es.eigenvalues().minCoeff();
    const double trace = m.real().trace();
    cert.psd = cert.min_eigenvalue >= -1e-10 * std::max(std::abs(trace), 1.0);
    return cert;
}

} // namespace kernels
} // namespace prolong
