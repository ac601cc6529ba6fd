// Pairwise Coulomb force kernels. A scalar reference implementation and an
// AVX2 variant share one contract; the active kernel is selected at runtime
// and the two are equivalence-tested against each other.
//
// Contract: on return, f{x,y,z}[i] = k_e * q_i * sum_{j != i} q_j (r_i - r_j) / |r_i - r_j|^3,
// accumulated over j in ascending order (fixed reduction order, deterministic),
// and min_separation_sq is the smallest pair distance^2 encountered.
#pragma once

#include <cstddef>
#include <string>

namespace icct::md {

enum class KernelKind { automatic, scalar, avx2 };

struct CoulombResult {
    double min_separation_sq = 0.0;
};

CoulombResult coulomb_forces_scalar(std::size_t n, const double* x, const double* y,
                                    const double* z, const double* charge, double* fx,
                                    double* fy, double* fz);

#if defined(ICCT_HAVE_AVX2)
CoulombResult coulomb_forces_avx2(std::size_t n, const double* x, const double* y,
                                  const double* z, const double* charge, double* fx, double* fy,
                                  double* fz);
#endif

bool avx2_supported();

// Resolves `automatic` to the best kernel the CPU supports; requesting avx2 on
// a machine without it throws ConfigError.
KernelKind resolve_kernel(KernelKind requested);

const char* kernel_name(KernelKind kind);
KernelKind kernel_from_name(const std::string& name);

CoulombResult coulomb_forces(KernelKind resolved, std::size_t n, const double* x,
                             const double* y, const double* z, const double* charge, double* fx,
                             double* fy, double* fz);

}  // namespace icct::md
