// detail/kernels.hpp - nondimensional state, coefficients, and the hot-loop
// kernels. Two implementations share these declarations: a plain serial
// reference (kernels_serial.cpp) and an OpenMP version (kernels_omp.cpp)
// parallelized over z. Both must produce bit-identical results; the field
// quadrature is a sequential prefix scan in either case.

#pragma once

#include <complex>
#include <vector>

namespace rmb::detail {

using Complex = std::complex<double>;

struct NondimCoeffs {
    int n_z = 0;
    int n_channels = 0;
    double dz = 0.0;      // 1/(n_z - 1)
    double dtau = 0.0;    // step in units of T_R
    double inv_t1 = 0.0;  // T_R / T1
    double inv_t2 = 0.0;  // T_R / T2
    double kappa = 0.0;
    Complex boundary;               // nondim e at z = 0 (constant in tau)
    std::vector<double> detune;     // per channel, units of 1/T_R
    std::vector<double> lam_n;      // per channel nondim inversion pump
    std::vector<double> lam_p;      // per channel nondim polarization pump
};

// Bloch variables on the grid, [channel][z].
struct NondimState {
    std::vector<std::vector<double>> n;
    std::vector<std::vector<Complex>> p;

    void resize(int n_channels, int n_z) {
        n.assign(n_channels, std::vector<double>(n_z, 0.0));
        p.assign(n_channels, std::vector<Complex>(n_z, Complex{0.0, 0.0}));
    }
};

// Per-point right-hand side (shared by both kernels).
inline double rhs_n(double n, const Complex& p, const Complex& e,
                    double inv_t1, double lam_n) {
    return -(p.real() * e.imag() + p.imag() * e.real()) - n * inv_t1 + lam_n;
}

inline Complex rhs_p(double n, const Complex& p, const Complex& e,
                     double detune, double inv_t2, double lam_p) {
    const Complex i{0.0, 1.0};
    return i * detune * p + i * (n * std::conj(e)) - p * inv_t2 + lam_p;
}

// e from the Bloch state: trapezoidal prefix scan over z, channels summed in
// index order. Always sequential.
void compute_field(const NondimCoeffs& c, const NondimState& s,
                   std::vector<Complex>& e);

struct Kernels {
    void (*rhs)(const NondimCoeffs&, const NondimState&,
                const std::vector<Complex>&, NondimState&);
    // out = base + h * k
    void (*axpy)(const NondimCoeffs&, const NondimState& base, double h,
                 const NondimState& k, NondimState& out);
    // s += (dtau/6) (k1 + 2 k2 + 2 k3 + k4)
    void (*combine)(const NondimCoeffs&, NondimState& s, const NondimState& k1,
                    const NondimState& k2, const NondimState& k3,
                    const NondimState& k4);
};

Kernels serial_kernels();
Kernels openmp_kernels();

}  // namespace rmb::detail
