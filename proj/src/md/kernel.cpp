#include "icct/md/kernel.hpp"

#include "icct/errors.hpp"

namespace icct::md {

bool avx2_supported() {
#if defined(ICCT_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

KernelKind resolve_kernel(KernelKind requested) {
    switch (requested) {
        case KernelKind::automatic:
            return avx2_supported() ? KernelKind::avx2 : KernelKind::scalar;
        case KernelKind::scalar:
            return KernelKind::scalar;
        case KernelKind::avx2:
            if (!avx2_supported()) throw ConfigError("md: avx2 kernel requested but unsupported");
            return KernelKind::avx2;
    }
    return KernelKind::scalar;
}

const char* kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::automatic: return "auto";
        case KernelKind::scalar: return "scalar";
        case KernelKind::avx2: return "avx2";
    }
    return "?";
}

KernelKind kernel_from_name(const std::string& name) {
    if (name == "auto") return KernelKind::automatic;
    if (name == "scalar") return KernelKind::scalar;
    if (name == "avx2") return KernelKind::avx2;
    throw ConfigError("md: unknown kernel '" + name + "' (auto|scalar|avx2)");
}

CoulombResult coulomb_forces(KernelKind resolved, std::size_t n, const double* x,
                             const double* y, const double* z, const double* charge, double* fx,
                             double* fy, double* fz) {
#if defined(ICCT_HAVE_AVX2)
    if (resolved == KernelKind::avx2)
        return coulomb_forces_avx2(n, x, y, z, charge, fx, fy, fz);
#endif
    return coulomb_forces_scalar(n, x, y, z, charge, fx, fy, fz);
}

}  // namespace icct::md
