#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prolong/errors.hpp"

namespace prolong {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace kernels {

enum class KernelId {
    omega,
    segal_bargmann,
    tanh_k,
    softplus,
    tan_assoc,
    softplus_assoc,
    sobolev_K,
    custom_series,
};

std::string to_string(KernelId id);
KernelId parse_id(const std::string& name);

/// A kernel identity: closed-form evaluator id plus a one-sided power-series
/// coefficient sequence in the pairing y^*x, with a domain radius of validity.
struct KernelSpec {
    KernelId id = KernelId::omega;
    std::vector<double> coeffs;  // a_0 .. a_M; empty for closed-form-only ids
    double radius = 1.0;
    std::optional<double> fill_value;

    /// Canonical spec for a named id, with `series_terms` analytic
    /// coefficients attached (0 keeps the coefficient list empty).
    static KernelSpec make(KernelId id, int series_terms = 0);
};

struct KreinSplit {
    KernelSpec plus;   // nonnegative coefficients K_+
    KernelSpec minus;  // nonnegative coefficients of -K_-
};

struct MembershipCertificate {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// Hermitian pairing y^*x, conjugate-linear in y.
Complex pairing(const CVector& x, const CVector& y);

bool has_series(KernelId id);

/// Domain radius of validity for |y^*x| of a named id.
double default_radius(KernelId id);

/// True when the spec induces a genuine RKHS (all-nonnegative series, or the
/// Sobolev kernel).
bool is_psd_kernel(const KernelSpec& spec);

/// Number of series terms needed so the geometric tail at |w| = eval_radius
/// is below `tol`.
int series_length_for(KernelId id, double eval_radius, double tol = 1e-14);

bool in_domain(const KernelSpec& spec, const CVector& x);

std::vector<double> series_coefficients(KernelId id, int count);

Complex eval_kernel(const KernelSpec& spec, const CVector& x, const CVector& y);

KernelSpec associated_hilbert(const KernelSpec& spec);

KernelSpec fill_gaps(const KernelSpec& spec, double fill_value, int max_degree);

KreinSplit krein_split(const KernelSpec& spec);

MembershipCertificate membership_certificate(const KernelSpec& spec,
                                             const std::vector<CVector>& sample_points,
                                             const CVector& sample_values, double c);

} // namespace kernels
} // namespace prolong
