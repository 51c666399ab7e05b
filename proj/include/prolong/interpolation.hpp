#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prolong/kernels.hpp"

namespace prolong {
namespace interp {

using kernels::KernelSpec;

struct GramSolveReport {
    double cond_estimate = 0.0;
    double residual_norm = 0.0;
    double jitter = 0.0;
    std::string solver_path; // "hermitian" or "pivoted"
};

struct FitOptions {
    bool allow_jitter = true;
    /// Relative residual accepted as a successful solve.
    double residual_tol = 1e-8;
    /// When false, a large residual is reported instead of thrown; used to
    /// study deliberately ill-conditioned interpolation problems.
    bool require_residual = true;
    bool estimate_condition = true;
};

/// Trained interpolating network: nodes are the first weight matrix A1
/// (columns are training points), weights the second one, alpha = P^-1 lambda.
struct InterpNetwork {
    KernelSpec spec;
    CMatrix nodes;             // d x n
    CMatrix weights;           // n x p (p target columns)
    int depth = 2;
    std::vector<CMatrix> inner_layers; // anchor matrices of the deep stages
    double cond_estimate = 0.0;
};

/// Gram matrix P_ij = K(x_i, x_j); Hermitian by symmetrization.
CMatrix gram(const KernelSpec& spec, const CMatrix& nodes);
/// Serial reference for the OpenMP assembly above.
CMatrix gram_serial(const KernelSpec& spec, const CMatrix& nodes);

std::pair<InterpNetwork, GramSolveReport> fit(const KernelSpec& spec, const CMatrix& nodes,
                                              const CMatrix& values, const FitOptions& opts = {});

CVector evaluate_multi(const InterpNetwork& net, const CVector& z);
Complex evaluate(const InterpNetwork& net, const CVector& z);

/// First-output evaluation over many points, parallel over points.
CVector evaluate_batch(const InterpNetwork& net, const CMatrix& points);
CVector evaluate_batch_serial(const InterpNetwork& net, const CMatrix& points);

double rkhs_norm(const InterpNetwork& net);
double krein_form(const InterpNetwork& net);

/// One deep layer: component j = (1-||y_j||)(1-||x||) / (sqrt(N)(1 - y_j^* x)).
CVector deep_feature_map(const CMatrix& anchor_nodes, const CVector& x);

InterpNetwork fit_deep(const KernelSpec& spec, const CMatrix& nodes, const CMatrix& values,
                       int depth, const FitOptions& opts = {});

/// Chebyshev points of the first kind mapped affinely to [a, b], ascending.
Eigen::VectorXd chebyshev_nodes(int n, double a, double b);

} // namespace interp
} // namespace prolong
