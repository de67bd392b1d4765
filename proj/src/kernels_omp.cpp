// OpenMP kernels: the per-(z, channel) updates are independent, so the z loop
// is partitioned across threads. Every element is written exactly once with
// no reductions, which keeps results bit-identical to the serial reference
// for any thread count.

#include "rmb/detail/kernels.hpp"

namespace rmb::detail {

namespace {

void rhs_omp(const NondimCoeffs& c, const NondimState& s,
             const std::vector<Complex>& e, NondimState& k) {
    for (int v = 0; v < c.n_channels; ++v) {
        const auto& n = s.n[v];
        const auto& p = s.p[v];
        auto& kn = k.n[v];
        auto& kp = k.p[v];
        const double detune = c.detune[v];
        const double lam_n = c.lam_n[v];
        const double lam_p = c.lam_p[v];
#pragma omp parallel for schedule(static)
        for (int j = 0; j < c.n_z; ++j) {
            kn[j] = rhs_n(n[j], p[j], e[j], c.inv_t1, lam_n);
            kp[j] = rhs_p(n[j], p[j], e[j], detune, c.inv_t2, lam_p);
        }
    }
}

void axpy_omp(const NondimCoeffs& c, const NondimState& base, double h,
              const NondimState& k, NondimState& out) {
    for (int v = 0; v < c.n_channels; ++v) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < c.n_z; ++j) {
            out.n[v][j] = base.n[v][j] + h * k.n[v][j];
            out.p[v][j] = base.p[v][j] + h * k.p[v][j];
        }
    }
}

void combine_omp(const NondimCoeffs& c, NondimState& s, const NondimState& k1,
                 const NondimState& k2, const NondimState& k3,
                 const NondimState& k4) {
    const double w = c.dtau / 6.0;
    for (int v = 0; v < c.n_channels; ++v) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < c.n_z; ++j) {
            s.n[v][j] += w * (k1.n[v][j] + 2.0 * k2.n[v][j] + 2.0 * k3.n[v][j] +
                              k4.n[v][j]);
            s.p[v][j] += w * (k1.p[v][j] + 2.0 * k2.p[v][j] + 2.0 * k3.p[v][j] +
                              k4.p[v][j]);
        }
    }
}

}  // namespace

Kernels openmp_kernels() {
#ifdef RMB_HAVE_OPENMP
    return Kernels{rhs_omp, axpy_omp, combine_omp};
#else
    return serial_kernels();
#endif
}

}  // namespace rmb::detail
