#include <doctest.h>

#include <cmath>

#include "prolong/modelred.hpp"
#include "prolong/oracles.hpp"

using namespace prolong;
using namespace prolong::modelred;

namespace {

PowerSymbol geometric_symbol(double p, int terms = 120) {
    CVector c(terms);
    double pn = 1.0;
    for (int n = 0; n < terms; ++n) {
        pn *= p;
        c[n] = Complex(pn, 0.0);
    }
    return PowerSymbol::from_coeffs(c, std::min(std::abs(p) + 0.05, 0.95));
}

PowerSymbol random_rational_symbol(oracles::Rng& rng, int n_poles, double max_modulus,
                                   int terms = 120) {
    std::vector<Complex> poles, residues;
    for (int i = 0; i < n_poles; ++i) {
        const double r = max_modulus * std::sqrt(rng.uniform());
        const double t = 2.0 * 3.14159265358979323846 * rng.uniform();
        poles.push_back(Complex(r * std::cos(t), r * std::sin(t)));
        residues.push_back(rng.normal_complex());
    }
    CVector c(terms);
    for (int n = 1; n <= terms; ++n) {
        Complex s(0.0, 0.0);
        for (int i = 0; i < n_poles; ++i) s += residues[i] * std::pow(poles[i], n - 1);
        c[n - 1] = s;
    }
    return PowerSymbol::from_coeffs(c, std::min(max_modulus + 0.1, 0.95));
}

} // namespace

TEST_CASE("Hankel matrix layout") {
    CVector one(1);
    one[0] = Complex(3.0, 0.0);
    const auto a = PowerSymbol::from_coeffs(one, 0.5);
    const CMatrix h = hankel_matrix(a, 2);
    CHECK(h(0, 0) == Complex(3.0, 0.0));
    CHECK(h(0, 1) == Complex(0.0, 0.0));
    CHECK(h(1, 0) == Complex(0.0, 0.0));
    CHECK(h(1, 1) == Complex(0.0, 0.0));

    const auto g = geometric_symbol(0.5);
    const CMatrix h3 = hankel_matrix(g, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(h3(i, j).real() == doctest::Approx(std::pow(0.5, i + j + 1)).epsilon(1e-14));

    const auto zero = PowerSymbol::from_coeffs(CVector::Zero(4), 0.5);
    CHECK(hankel_matrix(zero, 5).norm() == 0.0);
}

TEST_CASE("Schmidt numbers and Kronecker rank") {
    const auto g = geometric_symbol(0.5);
    const auto s = schmidt_numbers(g, 40, 3);
    CHECK(s[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(s[1] <= 1e-10);

    const auto zero = PowerSymbol::from_coeffs(CVector::Zero(4), 0.5);
    const auto zs = schmidt_numbers(zero, 32, 4);
    CHECK(zs.norm() == 0.0);

    // Two geometric terms with distinct poles: exactly rank 2.
    CVector c(120);
    for (int n = 1; n <= 120; ++n)
        c[n - 1] = Complex(std::pow(0.3, n) + std::pow(0.6, n), 0.0);
    const auto two = PowerSymbol::from_coeffs(c, 0.7);
    const auto ts = schmidt_numbers(two, 6);
    CHECK(ts[1] > 1e-8 * ts[0]);
    CHECK(ts[2] <= 1e-8 * ts[0]);

    // General Kronecker check on random pole counts.
    oracles::Rng rng(41);
    for (int r = 1; r <= 5; ++r) {
        const auto sym = random_rational_symbol(rng, r, 0.6);
        const auto sv = schmidt_numbers(sym, r + 3);
        CHECK(sv[r - 1] > 1e-8 * sv[0]);
        CHECK(sv[r] <= 1e-8 * sv[0]);
    }
}

TEST_CASE("Hankel norm and the Nehari sandwich on the geometric symbol") {
    const auto g = geometric_symbol(0.5);
    const double gamma = hankel_norm(g, 40);
    CHECK(gamma == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(hankel_norm(PowerSymbol::from_coeffs(CVector::Zero(3), 0.5), 32) == 0.0);

    // f(z) = 1/(2z-1): L2 = sqrt(1/3), sup on the circle = 1.
    CHECK(l2_norm(g) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-10));
    CHECK(linf_norm(g) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(l2_norm(g) <= gamma + 1e-8);
    CHECK(gamma <= linf_norm(g) + 1e-8);
}

TEST_CASE("strictly proper part by Fourier analysis") {
    const int g = 512;
    CVector analytic(g), inv(g), geom(g);
    for (int k = 0; k < g; ++k) {
        const double t = 2.0 * 3.14159265358979323846 * k / g;
        const Complex z(std::cos(t), std::sin(t));
        analytic[k] = z;
        inv[k] = 1.0 / z;
        geom[k] = 1.0 / (2.0 * z - 1.0);
    }
    CHECK(strictly_proper_part(analytic).coeffs.size() == 0);

    const auto one_pole = strictly_proper_part(inv);
    REQUIRE(one_pole.coeffs.size() >= 1);
    CHECK(std::abs(one_pole.coeffs[0] - Complex(1.0, 0.0)) <= 1e-10);
    for (Eigen::Index n = 1; n < one_pole.coeffs.size(); ++n)
        CHECK(std::abs(one_pole.coeffs[n]) <= 1e-10);

    const auto geo = strictly_proper_part(geom);
    for (int n = 1; n <= 12; ++n)
        CHECK(std::abs(geo.coeffs[n - 1] - Complex(std::pow(0.5, n), 0.0)) <= 1e-10);

    CHECK_THROWS_AS(strictly_proper_part(CVector::Ones(100)), Error);
}

TEST_CASE("AAK reduction of the rank-1 symbol") {
    const auto g = geometric_symbol(0.5);

    // Order 1 reproduces the symbol exactly.
    const auto exact = aak_reduce_1d(g, 1);
    CHECK(exact.achieved_error <= 1e-8);
    REQUIRE(exact.series.size() >= 6);
    for (int n = 1; n <= 6; ++n)
        CHECK(std::abs(exact.series[n - 1] - g.coeffs[n - 1]) <= 1e-8);
    REQUIRE(exact.poles.size() == 1);
    CHECK(std::abs(exact.poles[0] - Complex(0.5, 0.0)) <= 1e-8);
    CHECK(std::abs(exact.denominator[0] + Complex(0.5, 0.0)) <= 1e-8);
    CHECK(std::abs(exact.numerator[0] - Complex(0.5, 0.0)) <= 1e-8);

    // Order 0: the zero approximant, error s1 = 2/3.
    const auto zero = aak_reduce_1d(g, 0);
    CHECK(zero.order == 0);
    CHECK(zero.achieved_error == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("AAK optimality equals the next Schmidt number") {
    oracles::Rng rng(43);
    const auto sym = random_rational_symbol(rng, 5, 0.7);
    const auto s = schmidt_numbers(sym, 6);
    const auto red = aak_reduce_1d(sym, 3);
    CHECK(std::abs(red.achieved_error - s[3]) <= 1e-6 * s[3]);
    for (const Complex& p : red.poles) CHECK(std::abs(p) < 1.0);
    CHECK(red.denominator.size() == red.order + 1);
    CHECK(std::abs(red.denominator[red.order] - Complex(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("singular value clusters are rejected") {
    // f(z) = z^-2 has Hankel singular values {1, 1}.
    CVector c(2);
    c << Complex(0.0, 0.0), Complex(1.0, 0.0);
    const auto sym = PowerSymbol::from_coeffs(c, 0.5);
    CHECK_THROWS_AS(aak_reduce_1d(sym, 0), SingularValueCluster);
}

TEST_CASE("oversized symbols are rejected") {
    CHECK_THROWS_AS(PowerSymbol::from_coeffs(CVector::Ones(5000), 1.2), Error);
    CVector slow = CVector::Ones(5000) * 1e-3;
    CHECK_THROWS_AS(truncation_size(PowerSymbol::from_coeffs(slow, 0.5)), TruncationTooSmall);
}

TEST_CASE("marginal AAK") {
    const auto g3 = geometric_symbol(0.3);
    const auto g6 = geometric_symbol(0.6);

    // One dimension: same as aak_reduce_1d with bound s_n.
    ProductSymbol p1;
    p1.factors = {g6};
    const auto m1 = marginal_aak(p1, {1});
    const auto s1 = schmidt_numbers(g6, 1);
    CHECK(m1.bound_product == doctest::Approx(s1[0]).epsilon(1e-10));
    CHECK(m1.bound_sqrt_d == doctest::Approx(s1[0]).epsilon(1e-10));
    CHECK(m1.factors[0].achieved_error == doctest::Approx(s1[0]).epsilon(1e-6));

    // Rank-1 factors reduced past their rank: both errors and bound vanish.
    ProductSymbol p2;
    p2.factors = {g3, g6};
    const auto m2 = marginal_aak(p2, {2, 2});
    CHECK(m2.factors[0].achieved_error <= 1e-8);
    CHECK(m2.factors[1].achieved_error <= 1e-8);
    CHECK(m2.bound_product <= 1e-8);
    CHECK(m2.bound_sqrt_d == doctest::Approx(std::sqrt(2.0) * m2.bound_product).epsilon(1e-12));

    // Mixed orders: bound is the product of the selected Schmidt numbers.
    oracles::Rng rng(47);
    ProductSymbol p3;
    p3.factors = {random_rational_symbol(rng, 4, 0.6), random_rational_symbol(rng, 4, 0.6)};
    const auto m3 = marginal_aak(p3, {2, 3});
    const auto sa = schmidt_numbers(p3.factors[0], 2);
    const auto sb = schmidt_numbers(p3.factors[1], 3);
    CHECK(m3.bound_product == doctest::Approx(sa[1] * sb[2]).epsilon(1e-10));
    CHECK(m3.bound_sqrt_d == doctest::Approx(std::sqrt(2.0) * sa[1] * sb[2]).epsilon(1e-10));

    CHECK_THROWS_AS(marginal_aak(p3, {2}), DimensionMismatch);
}

TEST_CASE("prolongation sampling") {
    const auto g = geometric_symbol(0.5);
    const auto exact = aak_reduce_1d(g, 1);

    // Disk-model evaluation vanishes at 0 (no constant term).
    Eigen::VectorXd axis0(1);
    axis0 << 0.0;
    const auto at_zero = build_prolongation({exact}, {axis0});
    CHECK(std::abs(at_zero.values[0]) <= 1e-12);

    Eigen::VectorXd axis = interp::chebyshev_nodes(25, 0.1, 0.6);
    const auto table = build_prolongation({exact, exact}, {axis, axis});
    CHECK(table.points.cols() == 625);
    CHECK(table.values.size() == 625);
    // Values are the product of the factor series.
    const Complex x = table.points(0, 100);
    const Complex y = table.points(1, 100);
    const Complex expected = eval_disk(exact.series, x) * eval_disk(exact.series, y);
    CHECK(std::abs(table.values[100] - expected) <= 1e-12);

    // Zero factors give zero samples.
    RationalApproximant zero;
    zero.denominator = CVector::Ones(1);
    const auto zt = build_prolongation({zero}, {axis});
    CHECK(zt.values.norm() == 0.0);
}

TEST_CASE("PNN fit on prolongation samples") {
    const auto g = geometric_symbol(0.5);
    const auto exact = aak_reduce_1d(g, 1);
    Eigen::VectorXd axis = interp::chebyshev_nodes(8, 0.1, 0.6);
    const auto table = build_prolongation({exact, exact}, {axis, axis});
    const auto pnn = fit_pnn(table, kernels::KernelSpec::make(kernels::KernelId::omega), {1, 1},
                             0.123);
    CHECK(pnn.orders == std::vector<int>{1, 1});
    CHECK(pnn.bound == 0.123);
    const CVector reproduced = interp::evaluate_batch_serial(pnn.net, table.points);
    CHECK((reproduced - table.values).norm() <= 1e-8 * std::max(table.values.norm(), 1e-300));

    RationalApproximant zero;
    zero.denominator = CVector::Ones(1);
    const auto zt = build_prolongation({zero}, {axis});
    const auto zp = fit_pnn(zt, kernels::KernelSpec::make(kernels::KernelId::omega));
    CHECK(zp.net.weights.norm() <= 1e-12);
}

TEST_CASE("Pick matrices") {
    CMatrix one_point(1, 1);
    one_point(0, 0) = Complex(0.4, 0.0);
    CVector target(1);
    target[0] = Complex(0.5, 0.0);
    const auto sys = pick_matrices(one_point, target, 1);
    CHECK(sys.feasible);
    CHECK(sys.matrices[0](0, 0).real() ==
          doctest::Approx((1.0 - 0.25) / (1.0 - 0.16)).epsilon(1e-12));

    target[0] = Complex(1.5, 0.0);
    const auto bad = pick_matrices(one_point, target, 1);
    CHECK_FALSE(bad.feasible);

    // d = 2, zero targets: the Pick matrices are omega-kernel Grams.
    oracles::Rng rng(53);
    CMatrix pts(2, 2);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            const Complex v = rng.normal_complex();
            pts(i, j) = 0.6 * v / (1.0 + std::abs(v));
        }
    const auto zero_sys = pick_matrices(pts, CVector::Zero(2), 2);
    CHECK(zero_sys.feasible);

    // Feasibility is invariant under point relabeling.
    CMatrix swapped(2, 2);
    swapped.col(0) = pts.col(1);
    swapped.col(1) = pts.col(0);
    CHECK(pick_matrices(swapped, CVector::Zero(2), 2).feasible == zero_sys.feasible);

    CMatrix outside(1, 1);
    outside(0, 0) = Complex(1.2, 0.0);
    CHECK_THROWS_AS(pick_matrices(outside, CVector::Zero(1), 1), DomainViolation);
}

TEST_CASE("Nevanlinna-Pick interpolation") {
    // Single point: a constant works and the sup equals |target|.
    CVector z1(1), w1(1);
    z1[0] = Complex(0.3, 0.1);
    w1[0] = Complex(0.4, -0.2);
    const auto f1 = nevanlinna_pick_1d(z1, w1);
    CHECK(std::abs(f1(z1[0]) - w1[0]) <= 1e-10);
    CHECK(f1.sup_circle() <= 1.0 + 1e-8);

    // All-zero targets.
    CVector z2(3), w2 = CVector::Zero(3);
    z2 << Complex(0.0, 0.0), Complex(0.4, 0.0), Complex(-0.2, 0.3);
    const auto f2 = nevanlinna_pick_1d(z2, w2);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(f2(z2[j])) <= 1e-10);
    CHECK(f2.sup_circle() <= 1.0 + 1e-8);

    // The classical (0,0), (1/2,1/2) data, solvable by F(z) = z.
    CVector z3(2), w3(2);
    z3 << Complex(0.0, 0.0), Complex(0.5, 0.0);
    w3 << Complex(0.0, 0.0), Complex(0.5, 0.0);
    const auto f3 = nevanlinna_pick_1d(z3, w3);
    CHECK(std::abs(f3(z3[0]) - w3[0]) <= 1e-10);
    CHECK(std::abs(f3(z3[1]) - w3[1]) <= 1e-10);
    CHECK(f3.sup_circle() <= 1.0 + 1e-8);

    // Infeasible data.
    CVector w_bad(2);
    w_bad << Complex(0.0, 0.0), Complex(0.99, 0.0);
    CHECK_THROWS_AS(nevanlinna_pick_1d(z3, w_bad), Infeasible);

    CVector z_dup(2), w_ok = CVector::Zero(2);
    z_dup << Complex(0.1, 0.0), Complex(0.1, 0.0);
    CHECK_THROWS_AS(nevanlinna_pick_1d(z_dup, w_ok), DuplicatePoints);
}

TEST_CASE("product Pick interpolant") {
    // d = 2, one point: branch consistency of the square roots.
    CMatrix pt(2, 1);
    pt(0, 0) = Complex(0.2, 0.0);
    pt(1, 0) = Complex(-0.1, 0.2);
    CVector lambda(1);
    lambda[0] = Complex(0.3, 0.4);
    const auto prod = pick_product_interpolant(pt, lambda, 2);
    CHECK(std::abs(prod(pt.col(0)) - lambda[0]) <= 1e-10);

    // Zero targets give the zero product.
    const auto zero_prod = pick_product_interpolant(pt, CVector::Zero(1), 2);
    CHECK(std::abs(zero_prod(pt.col(0))) <= 1e-12);

    // Random feasible data: interpolation plus polydisk sup control per factor.
    oracles::Rng rng(59);
    CMatrix pts(2, 3);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i) {
            const Complex v = rng.normal_complex();
            pts(i, j) = 0.5 * v / (1.0 + std::abs(v));
        }
    CVector targets(3);
    for (int j = 0; j < 3; ++j) targets[j] = 0.05 * rng.normal_complex();
    const auto sys = pick_matrices(pts, targets, 2);
    if (sys.feasible) {
        const auto f = pick_product_interpolant(pts, targets, 2);
        for (int j = 0; j < 3; ++j) CHECK(std::abs(f(pts.col(j)) - targets[j]) <= 1e-8);
        for (const auto& factor : f.factors) CHECK(factor.sup_circle() <= 1.0 + 1e-8);
    }
}

TEST_CASE("polynomial roots") {
    CVector c(3);
    c << Complex(0.06, 0.0), Complex(-0.5, 0.0), Complex(1.0, 0.0);  // (z-0.2)(z-0.3)
    auto roots = polynomial_roots(c);
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(),
              [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] - Complex(0.2, 0.0)) <= 1e-10);
    CHECK(std::abs(roots[1] - Complex(0.3, 0.0)) <= 1e-10);
    CHECK(polynomial_roots(CVector::Ones(1)).empty());
}
