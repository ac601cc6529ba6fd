#include <cmath>
#include <limits>

#include "icct/constants.hpp"
#include "icct/md/kernel.hpp"

namespace icct::md {

CoulombResult coulomb_forces_scalar(std::size_t n, const double* x, const double* y,
                                    const double* z, const double* charge, double* fx,
                                    double* fy, double* fz) {
    double min_r2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        const double zi = z[i];
        double ax = 0.0;
        double ay = 0.0;
        double az = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = xi - x[j];
            const double dy = yi - y[j];
            const double dz = zi - z[j];
            const double r2 = dx * dx + dy * dy + dz * dz;
            if (r2 < min_r2) min_r2 = r2;
            const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
            const double c = charge[j] * inv_r3;
            ax += c * dx;
            ay += c * dy;
            az += c * dz;
        }
        const double pref = constants::coulomb_N_m2_C2 * charge[i];
        fx[i] = pref * ax;
        fy[i] = pref * ay;
        fz[i] = pref * az;
    }
    return {min_r2};
}

}  // namespace icct::md
