// AVX2 variant of the Coulomb kernel. Built with -mavx2 -mfma; only invoked
// after the runtime CPU check in resolve_kernel().
#if defined(ICCT_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "icct/constants.hpp"
#include "icct/md/kernel.hpp"

namespace icct::md {

namespace {

inline double reduce_add(__m256d v) {
    // fixed lane order: (l0 + l1) + (l2 + l3)
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double reduce_min(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    double m = lane[0];
    if (lane[1] < m) m = lane[1];
    if (lane[2] < m) m = lane[2];
    if (lane[3] < m) m = lane[3];
    return m;
}

}  // namespace

CoulombResult coulomb_forces_avx2(std::size_t n, const double* x, const double* y,
                                  const double* z, const double* charge, double* fx, double* fy,
                                  double* fz) {
    const double inf = std::numeric_limits<double>::infinity();
    const __m256d vinf = _mm256_set1_pd(inf);
    const __m256d vone = _mm256_set1_pd(1.0);
    __m256d gmin = vinf;
    double gmin_tail = inf;

    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d xi = _mm256_set1_pd(x[i]);
        const __m256d yi = _mm256_set1_pd(y[i]);
        const __m256d zi = _mm256_set1_pd(z[i]);
        const __m256d vi = _mm256_set1_pd(static_cast<double>(i));

        __m256d accx = _mm256_setzero_pd();
        __m256d accy = _mm256_setzero_pd();
        __m256d accz = _mm256_setzero_pd();
        __m256d jv = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
        const __m256d four = _mm256_set1_pd(4.0);

        for (std::size_t j = 0; j < n4; j += 4) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(x + j));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(y + j));
            const __m256d dz = _mm256_sub_pd(zi, _mm256_loadu_pd(z + j));
            __m256d r2 = _mm256_mul_pd(dx, dx);
            r2 = _mm256_fmadd_pd(dy, dy, r2);
            r2 = _mm256_fmadd_pd(dz, dz, r2);

            // send the self pair to +inf: it drops out of both min and force
            const __m256d self = _mm256_cmp_pd(jv, vi, _CMP_EQ_OQ);
            r2 = _mm256_blendv_pd(r2, vinf, self);
            gmin = _mm256_min_pd(gmin, r2);

            const __m256d r = _mm256_sqrt_pd(r2);
            const __m256d inv_r3 = _mm256_div_pd(vone, _mm256_mul_pd(r2, r));
            const __m256d c = _mm256_mul_pd(_mm256_loadu_pd(charge + j), inv_r3);
            accx = _mm256_fmadd_pd(c, dx, accx);
            accy = _mm256_fmadd_pd(c, dy, accy);
            accz = _mm256_fmadd_pd(c, dz, accz);
            jv = _mm256_add_pd(jv, four);
        }

        double ax = reduce_add(accx);
        double ay = reduce_add(accy);
        double az = reduce_add(accz);
        for (std::size_t j = n4; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double dz = z[i] - z[j];
            const double r2 = dx * dx + dy * dy + dz * dz;
            if (r2 < gmin_tail) gmin_tail = r2;
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

    double min_r2 = reduce_min(gmin);
    if (gmin_tail < min_r2) min_r2 = gmin_tail;
    return {min_r2};
}

}  // namespace icct::md

#endif  // ICCT_HAVE_AVX2
