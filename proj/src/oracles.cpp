#include "prolong/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prolong {
namespace oracles {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_square_small(const CMatrix& a, int limit) {
    if (a.rows() != a.cols()) throw DimensionMismatch("matrix must be square");
    if (a.rows() > limit) throw TooLarge("matrix order exceeds " + std::to_string(limit));
}
} // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ (index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    return splitmix64(state);
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

Complex Rng::normal_complex() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
}

Complex permanent_ryser(const CMatrix& a) {
    check_square_small(a, 12);
    const int n = static_cast<int>(a.rows());
    if (n == 0) return Complex(1.0, 0.0);
    Complex total(0.0, 0.0);
    const std::uint32_t full = 1u << n;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        Complex product(1.0, 0.0);
        const int popcount = __builtin_popcount(mask);
        for (int i = 0; i < n; ++i) {
            Complex row_sum(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (mask & (1u << j)) row_sum += a(i, j);
            product *= row_sum;
        }
        const double sign = ((n - popcount) % 2 == 0) ? 1.0 : -1.0;
        total += sign * product;
    }
    return total;
}

namespace {
Complex permutation_sum(const CMatrix& a, bool signed_sum) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return Complex(1.0, 0.0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> counter(n, 0);
    Complex total(0.0, 0.0);
    double sign = 1.0;
    auto add = [&] {
        Complex product(1.0, 0.0);
        for (int i = 0; i < n; ++i) product *= a(i, perm[i]);
        total += signed_sum ? sign * product : product;
    };
    add();
    // Heap's algorithm: every transition is a single transposition.
    for (int i = 1; i < n;) {
        if (counter[i] < i) {
            std::swap(perm[(i % 2 == 0) ? 0 : counter[i]], perm[i]);
            sign = -sign;
            add();
            ++counter[i];
            i = 1;
        } else {
            counter[i] = 0;
            ++i;
        }
    }
    return total;
}
} // namespace

Complex permanent_leibniz(const CMatrix& a) {
    check_square_small(a, 12);
    return permutation_sum(a, false);
}

Complex permanent(const CMatrix& a) {
    return permanent_ryser(a);
}

Complex determinant_leibniz(const CMatrix& a) {
    check_square_small(a, 12);
    return permutation_sum(a, true);
}

Complex determinant(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("matrix must be square");
    if (a.rows() == 0) return Complex(1.0, 0.0);
    return a.fullPivLu().determinant();
}

double elliptic_e(double k) {
    if (!(k >= 0.0) || k > 1.0) throw DomainViolation("eccentricity must lie in [0, 1]");
    if (k == 1.0) return 1.0;
    double a = 1.0;
    double b = std::sqrt(1.0 - k * k);
    double c = k;
    double sum = 0.5 * c * c;
    double pow2 = 1.0;
    for (int i = 0; i < 64 && c > 1e-17; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        sum += 0.5 * pow2 * c * c;
    }
    const double big_k = kPi / (2.0 * a);
    return big_k * (1.0 - sum);
}

double elliptic_e_series(double k, int terms) {
    if (!(k >= 0.0) || k > 1.0) throw DomainViolation("eccentricity must lie in [0, 1]");
    double sum = 1.0;
    double coeff = 1.0;  // ((2n)! / (2^2n (n!)^2))^2 at n = 0
    double k2n = 1.0;
    for (int n = 1; n < terms; ++n) {
        const double ratio = (2.0 * n - 1.0) / (2.0 * n);
        coeff *= ratio * ratio;
        k2n *= k * k;
        sum -= coeff * k2n / (2.0 * n - 1.0);
    }
    return 0.5 * kPi * sum;
}

namespace {
double mollifier(double t) {
    if (t <= 1e-300) return 0.0;
    return std::exp(-1.0 / t);
}
} // namespace

double homotopy_phi(double x) {
    const double num = mollifier(x - 1.0 / 3.0);
    const double den = num + mollifier(2.0 / 3.0 - x);
    if (den == 0.0) return x >= 0.5 ? 1.0 : 0.0;
    return num / den;
}

double chirp(double x) {
    return std::sin(10.0 * x + 7.0 * std::cos(2.0 * kPi * x));
}

std::vector<GueSample> sample_gue(int n, int count, std::uint64_t seed, double scale,
                                  double max_norm) {
    if (!(scale > 0.0)) throw DomainViolation("scale must be positive");
    std::vector<GueSample> out;
    out.reserve(count);
    for (int t = 0; t < count; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        CMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.normal_complex();
        GueSample sample;
        sample.matrix = 0.5 * (a + a.adjoint().eval());
        sample.scale = scale;
        sample.matrix *= scale;
        const double flat_norm = sample.matrix.norm();
        if (flat_norm > max_norm) {
            const double shrink = max_norm / flat_norm;
            sample.matrix *= shrink;
            sample.scale *= shrink;
        }
        out.push_back(std::move(sample));
    }
    return out;
}

Eigen::VectorXd james_stein(const Eigen::VectorXd& obs, bool positive_part) {
    const Eigen::Index d = obs.size();
    if (d < 3) throw DomainViolation("James-Stein needs dimension >= 3");
    const double norm_sq = obs.squaredNorm();
    if (!(norm_sq > 0.0)) throw DomainViolation("observation must be nonzero");
    double factor = 1.0 - static_cast<double>(d - 2) / norm_sq;
    if (positive_part) factor = std::max(factor, 0.0);
    return factor * obs;
}

WalkData random_walk_means(int n_steps, int d, std::uint64_t seed) {
    if (n_steps < 1 || d < 1) throw DomainViolation("need n_steps >= 1 and d >= 1");
    Rng rng(seed);
    WalkData data;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int j = 1; j <= n_steps; ++j) {
        const double step_std = std::pow(1.05, j);
        for (int i = 0; i < d; ++i) mean[i] += step_std * rng.normal();
        data.means.push_back(mean);
        Eigen::VectorXd obs = mean;
        for (int i = 0; i < d; ++i) obs[i] += rng.normal();
        data.observations.push_back(std::move(obs));
    }
    return data;
}

NoisySurface surface_xy2(const Eigen::MatrixXd& points, double noise_std, std::uint64_t seed) {
    if (points.rows() != 2) throw DimensionMismatch("surface points must be 2-dimensional");
    Rng rng(seed);
    NoisySurface table;
    table.points = points;
    table.noise_std = noise_std;
    table.seed = seed;
    table.values.resize(points.cols());
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        const double x = points(0, j);
        const double y = points(1, j);
        table.values[j] = x * y * y + noise_std * rng.normal();
    }
    return table;
}

} // namespace oracles
} // namespace prolong
