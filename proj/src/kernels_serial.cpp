#include "rmb/detail/kernels.hpp"

namespace rmb::detail {

void compute_field(const NondimCoeffs& c, const NondimState& s,
                   std::vector<Complex>& e) {
    e.resize(c.n_z);
    const Complex half_step{0.0, 0.5 * c.kappa * c.dz};  // i * kappa * dz / 2
    Complex src_prev{0.0, 0.0};
    for (int v = 0; v < c.n_channels; ++v) src_prev += std::conj(s.p[v][0]);
    e[0] = c.boundary;
    for (int j = 1; j < c.n_z; ++j) {
        Complex src{0.0, 0.0};
        for (int v = 0; v < c.n_channels; ++v) src += std::conj(s.p[v][j]);
        e[j] = e[j - 1] + half_step * (src_prev + src);
        src_prev = src;
    }
}

namespace {

void rhs_serial(const NondimCoeffs& c, const NondimState& s,
                const std::vector<Complex>& e, NondimState& k) {
    for (int v = 0; v < c.n_channels; ++v) {
        const auto& n = s.n[v];
        const auto& p = s.p[v];
        auto& kn = k.n[v];
        auto& kp = k.p[v];
        const double detune = c.detune[v];
        const double lam_n = c.lam_n[v];
        const double lam_p = c.lam_p[v];
        for (int j = 0; j < c.n_z; ++j) {
            kn[j] = rhs_n(n[j], p[j], e[j], c.inv_t1, lam_n);
            kp[j] = rhs_p(n[j], p[j], e[j], detune, c.inv_t2, lam_p);
        }
    }
}

void axpy_serial(const NondimCoeffs& c, const NondimState& base, double h,
                 const NondimState& k, NondimState& out) {
    for (int v = 0; v < c.n_channels; ++v) {
        for (int j = 0; j < c.n_z; ++j) {
            out.n[v][j] = base.n[v][j] + h * k.n[v][j];
            out.p[v][j] = base.p[v][j] + h * k.p[v][j];
        }
    }
}

void combine_serial(const NondimCoeffs& c, NondimState& s, const NondimState& k1,
                    const NondimState& k2, const NondimState& k3,
                    const NondimState& k4) {
    const double w = c.dtau / 6.0;
    for (int v = 0; v < c.n_channels; ++v) {
        for (int j = 0; j < c.n_z; ++j) {
            s.n[v][j] += w * (k1.n[v][j] + 2.0 * k2.n[v][j] + 2.0 * k3.n[v][j] +
                              k4.n[v][j]);
            s.p[v][j] += w * (k1.p[v][j] + 2.0 * k2.p[v][j] + 2.0 * k3.p[v][j] +
                              k4.p[v][j]);
        }
    }
}

}  // namespace

Kernels serial_kernels() {
    return Kernels{rhs_serial, axpy_serial, combine_serial};
}

}  // namespace rmb::detail
