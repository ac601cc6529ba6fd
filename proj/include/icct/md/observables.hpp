// Post-processing of simulation output: motional spectra, crystal density
// estimates, per-species radial structure and temperatures.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "icct/md/sim.hpp"

namespace icct::md {

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);

enum class Window { rectangular, hann };

struct Spectrum {
    double freq_resolution_hz = 0.0;
    std::vector<double> magnitude;  // one-sided, bins 0 .. n/2
    double frequency(std::size_t bin) const { return freq_resolution_hz * static_cast<double>(bin); }
};

// One-sided magnitude spectrum of a real series. Requires at least 2^12
// samples; the series is truncated to the largest power of two.
Spectrum power_spectrum(std::span<const double> samples, double sample_dt_s,
                        Window window = Window::hann);

// Frequency of the largest local maximum in [f_lo, f_hi], refined by
// parabolic interpolation of the neighboring bins. Returns 0 if none.
double peak_frequency(const Spectrum& spectrum, double f_lo_hz, double f_hi_hz);

// Per-step sampler for the collective coordinates used in spectra.
struct SeriesRecorder {
    double sample_dt_s = 0.0;
    std::vector<double> com_x, com_y, com_z;
    std::vector<double> breathing;  // mean squared distance from the centroid

    void sample(const SimState& state);
};

struct DensityEstimate {
    double density_m3 = 0.0;          // moment (uniform spheroid) fit
    double semi_axis_z_m = 0.0;
    double semi_axis_r_m = 0.0;
    double nn_spacing_m = 0.0;        // median nearest-neighbor distance
    double wigner_seitz_m3 = 0.0;     // bcc-lattice density from nn spacing
};

// Uniform-spheroid moment fit: a = sqrt(5 <z^2>), R = sqrt(5 (<x^2>+<y^2>)/2)
// about the centroid, density = N / spheroid volume.
DensityEstimate estimate_density(const SimState& state);

struct RadialHistogram {
    double bin_width_m = 0.0;
    std::vector<std::vector<std::size_t>> counts;  // [species][bin], cylindrical radius
};

RadialHistogram radial_histograms(const SimState& state, std::size_t n_species,
                                  std::size_t n_bins);

struct RadialSeparation {
    // Radius of the uniform cylinder that would hold the inner ions at their
    // observed radial spread, sqrt(2 <r^2>); the direct counterpart of the
    // charge-balance core radius of the two-component model.
    double boundary_radius_m = 0.0;
    // Geometric interface: midpoint between the outermost inner ion and the
    // innermost outer ion on the axially central third.
    double interface_midpoint_m = 0.0;
    double inner_mean_radius_m = 0.0;
    double outer_mean_radius_m = 0.0;
    bool ordered = false;  // inner species strictly inside on average
};

RadialSeparation radial_separation(const SimState& state, std::uint32_t inner_species,
                                   std::uint32_t outer_species);

double median_nearest_neighbor(const SimState& state);

}  // namespace icct::md
