#pragma once

#include <cstdint>
#include <vector>

#include "prolong/kernels.hpp"

namespace prolong {
namespace oracles {

/// splitmix64 step; also used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic generator: splitmix64 stream with Box-Muller normals, so the
/// same seed yields bit-identical samples on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }
    double uniform();            // [0, 1)
    double normal();             // N(0, 1)
    Complex normal_complex();    // independent N(0,1) real and imaginary parts

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Permanent by Ryser's inclusion-exclusion formula, n <= 12.
Complex permanent(const CMatrix& a);
/// Direct sum over all n! permutations; the cross-check route, n <= 12.
Complex permanent_leibniz(const CMatrix& a);
Complex permanent_ryser(const CMatrix& a);

Complex determinant(const CMatrix& a);          // LU factorization, any n
Complex determinant_leibniz(const CMatrix& a);  // signed permutation sum, n <= 12

/// Complete elliptic integral of the second kind, AGM iteration.
double elliptic_e(double k);
/// Maclaurin-series route used as the independent oracle.
double elliptic_e_series(double k, int terms = 200);

/// Smooth non-analytic transition: 0 for x <= 1/3, 1 for x >= 2/3.
double homotopy_phi(double x);

double chirp(double x);

struct GueSample {
    CMatrix matrix;      // Hermitian, already scaled
    double scale = 1.0;  // total factor applied to the raw (A + A*)/2
};

/// Hermitian GUE draws, rescaled so each flattened matrix has norm <= max_norm.
std::vector<GueSample> sample_gue(int n, int count, std::uint64_t seed, double scale = 1.0,
                                  double max_norm = 0.9);

Eigen::VectorXd james_stein(const Eigen::VectorXd& obs, bool positive_part = false);

struct WalkData {
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::VectorXd> observations;  // means + standard Gaussian noise
};

/// Random walk whose j-th Gaussian step has per-coordinate std 1.05^j.
WalkData random_walk_means(int n_steps, int d, std::uint64_t seed);

struct NoisySurface {
    Eigen::MatrixXd points;  // 2 x n
    Eigen::VectorXd values;  // x * y^2 + noise
    double noise_std = 0.1;
    std::uint64_t seed = 0;
};

NoisySurface surface_xy2(const Eigen::MatrixXd& points, double noise_std, std::uint64_t seed);

} // namespace oracles
} // namespace prolong
