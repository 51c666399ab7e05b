// Timing comparison of the OpenMP Gram assembly and batch evaluation against
// their serial reference implementations.

#include <chrono>
#include <cstdio>
#include <functional>

#include "prolong/interpolation.hpp"
#include "prolong/oracles.hpp"

using namespace prolong;

namespace {

double time_seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    const int d = 6;
    const int n = 600;
    const int n_eval = 4000;

    oracles::Rng rng(42);
    CMatrix nodes(d, n);
    CVector values(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < d; ++i) nodes(i, j) = 0.3 * rng.normal_complex() / std::sqrt(2.0 * d);
        values[j] = rng.normal_complex();
    }
    const auto spec = kernels::KernelSpec::make(kernels::KernelId::omega);

    CMatrix p_serial, p_parallel;
    const double t_gram_serial = time_seconds([&] { p_serial = interp::gram_serial(spec, nodes); });
    const double t_gram_parallel = time_seconds([&] { p_parallel = interp::gram(spec, nodes); });
    const double gram_diff = (p_serial - p_parallel).norm();

    interp::FitOptions opts;
    opts.estimate_condition = false;
    opts.require_residual = false;
    const auto net = interp::fit(spec, nodes, values, opts).first;

    CMatrix eval_points(d, n_eval);
    for (int j = 0; j < n_eval; ++j)
        for (int i = 0; i < d; ++i)
            eval_points(i, j) = 0.3 * rng.normal_complex() / std::sqrt(2.0 * d);

    CVector out_serial, out_parallel;
    const double t_eval_serial =
        time_seconds([&] { out_serial = interp::evaluate_batch_serial(net, eval_points); });
    const double t_eval_parallel =
        time_seconds([&] { out_parallel = interp::evaluate_batch(net, eval_points); });
    const double eval_diff = (out_serial - out_parallel).norm();

    std::printf("gram assembly   %4d nodes: serial %8.4fs  parallel %8.4fs  speedup %5.2fx  diff %.3e\n",
                n, t_gram_serial, t_gram_parallel, t_gram_serial / t_gram_parallel, gram_diff);
    std::printf("batch evaluate  %4d pts : serial %8.4fs  parallel %8.4fs  speedup %5.2fx  diff %.3e\n",
                n_eval, t_eval_serial, t_eval_parallel, t_eval_serial / t_eval_parallel, eval_diff);
    return (gram_diff < 1e-10 && eval_diff < 1e-10) ? 0 : 1;
}
