#pragma once

#include <vector>

#include "prolong/interpolation.hpp"
#include "prolong/kernels.hpp"

namespace prolong {
namespace modelred {

/// One-sided coefficient sequence f_1, f_2, ... of a strictly proper symbol
/// f(z) = sum_{n>=1} f_n z^-n, with a certified geometric decay envelope.
struct PowerSymbol {
    CVector coeffs;            // f_1 .. f_M
    double decay_bound = 0.5;  // rho with |f_n| <= decay_scale * rho^n
    double decay_scale = 0.0;

    static PowerSymbol from_coeffs(const CVector& coeffs, double rho);
};

struct ProductSymbol {
    std::vector<PowerSymbol> factors;
};

/// Strictly proper rational with all poles in the open unit disk.
struct RationalApproximant {
    CVector numerator;    // p_0 .. p_{m-1}, degree < m
    CVector denominator;  // q_0 .. q_m, monic
    int order = 0;
    double achieved_error = 0.0;
    CVector series;       // strictly proper expansion r_1, r_2, ... of the rational
    std::vector<Complex> poles;
};

struct PickSystem {
    CMatrix points;   // d x n, columns in the open polydisk
    CVector targets;
    std::vector<CMatrix> matrices;
    std::vector<double> min_eigenvalues;
    bool feasible = false;
};

/// Schur-recursion interpolant of unit-ball Nevanlinna-Pick data.
struct SchurInterpolant {
    std::vector<Complex> nodes;
    std::vector<Complex> parameters;
    Complex tail = Complex(0.0, 0.0);

    Complex operator()(Complex z) const;
    double sup_circle(int grid = 4096) const;
};

struct ProductPickInterpolant {
    std::vector<SchurInterpolant> factors;
    Complex operator()(const CVector& z) const;
};

struct MarginalReduction {
    std::vector<RationalApproximant> factors;
    std::vector<double> schmidt_values;  // s_{n_j} per factor
    double bound_sqrt_d = 0.0;           // sqrt(d) * prod s_{n_j}
    double bound_product = 0.0;          // prod s_{n_j}
};

struct SampleTable {
    CMatrix points;  // d x n
    CVector values;
};

struct PnnNetwork {
    interp::InterpNetwork net;
    std::vector<int> orders;
    double bound = 0.0;
};

/// Certified Hankel truncation size for the symbol, clamped to [32, 4096].
int truncation_size(const PowerSymbol& symbol, double tol = 1e-12);

CMatrix hankel_matrix(const PowerSymbol& symbol, int size);

Eigen::VectorXd schmidt_numbers(const PowerSymbol& symbol, int size, int count);
Eigen::VectorXd schmidt_numbers(const PowerSymbol& symbol, int count);

double hankel_norm(const PowerSymbol& symbol, int size);
double hankel_norm(const PowerSymbol& symbol);

double l2_norm(const PowerSymbol& symbol);
double linf_norm(const PowerSymbol& symbol, int grid = 4096);

/// Boundary evaluation sum f_n z^-n at |z| = 1.
Complex eval_boundary(const PowerSymbol& symbol, Complex z);
/// Disk-model evaluation sum f_n w^n, |w| < 1/decay_bound.
Complex eval_disk(const CVector& coeffs, Complex w);

PowerSymbol subtract(const PowerSymbol& a, const CVector& b_coeffs);

PowerSymbol strictly_proper_part(const CVector& boundary_samples);

RationalApproximant aak_reduce_1d(const PowerSymbol& symbol, int order, int grid_size = 2048);

/// Strictly proper residual f - r of a reduction, with updated decay data.
PowerSymbol residual_symbol(const PowerSymbol& symbol, const RationalApproximant& reduced);

/// Per-dimension AAK with Schmidt-index orders n_j: each factor is reduced to
/// rational order n_j - 1, so its Hankel error is the n_j-th Schmidt number.
MarginalReduction marginal_aak(const ProductSymbol& product, const std::vector<int>& orders);

SampleTable build_prolongation(const std::vector<RationalApproximant>& factors,
                               const std::vector<Eigen::VectorXd>& grid);

PnnNetwork fit_pnn(const SampleTable& samples, const kernels::KernelSpec& spec,
                   const std::vector<int>& orders = {}, double bound = 0.0,
                   const interp::FitOptions& opts = {});

PickSystem pick_matrices(const CMatrix& points, const CVector& targets, int d);

SchurInterpolant nevanlinna_pick_1d(const CVector& points, const CVector& targets);

ProductPickInterpolant pick_product_interpolant(const CMatrix& points, const CVector& targets,
                                                int d);

/// Roots of c_0 + c_1 z + ... + c_deg z^deg via the companion matrix.
std::vector<Complex> polynomial_roots(const CVector& coeffs);

} // namespace modelred
} // namespace prolong
