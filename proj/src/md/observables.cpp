#include "icct/md/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "icct/constants.hpp"
#include "icct/errors.hpp"

namespace icct::md {

void fft_inplace(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -constants::two_pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

Spectrum power_spectrum(std::span<const double> samples, double sample_dt_s, Window window) {
    if (samples.size() < 4096) throw Error("spectrum: insufficient samples (need >= 4096)");
    std::size_t n = 1;
    while (n * 2 <= samples.size()) n *= 2;

    std::vector<std::complex<double>> buf(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += samples[i];
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (window == Window::hann) {
            w = 0.5 * (1.0 - std::cos(constants::two_pi * static_cast<double>(i) /
                                      static_cast<double>(n - 1)));
        }
        buf[i] = {(samples[i] - mean) * w, 0.0};
    }
    fft_inplace(buf);

    Spectrum out;
    out.freq_resolution_hz = 1.0 / (sample_dt_s * static_cast<double>(n));
    out.magnitude.resize(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) out.magnitude[k] = std::abs(buf[k]);
    return out;
}

double peak_frequency(const Spectrum& spectrum, double f_lo_hz, double f_hi_hz) {
    const auto& mag = spectrum.magnitude;
    if (mag.size() < 3) return 0.0;
    const double df = spectrum.freq_resolution_hz;
    std::size_t lo = static_cast<std::size_t>(std::max(1.0, std::ceil(f_lo_hz / df)));
    std::size_t hi =
        static_cast<std::size_t>(std::min(static_cast<double>(mag.size() - 2), f_hi_hz / df));
    if (lo > hi) return 0.0;

    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        if (mag[k] > best_mag && mag[k] >= mag[k - 1] && mag[k] >= mag[k + 1]) {
            best = k;
            best_mag = mag[k];
        }
    }
    if (best == 0) return 0.0;

    // parabolic refinement on the magnitude
    const double y0 = mag[best - 1], y1 = mag[best], y2 = mag[best + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    double delta = 0.0;
    if (denom != 0.0) delta = 0.5 * (y0 - y2) / denom;
    if (delta > 0.5) delta = 0.5;
    if (delta < -0.5) delta = -0.5;
    return df * (static_cast<double>(best) + delta);
}

void SeriesRecorder::sample(const SimState& state) {
    const std::size_t n = state.size();
    if (n == 0) return;
    double cx = 0.0, cy = 0.0, cz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cx += state.x[i];
        cy += state.y[i];
        cz += state.z[i];
    }
    const double inv = 1.0 / static_cast<double>(n);
    cx *= inv;
    cy *= inv;
    cz *= inv;
    double msd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = state.x[i] - cx;
        const double dy = state.y[i] - cy;
        const double dz = state.z[i] - cz;
        msd += dx * dx + dy * dy + dz * dz;
    }
    com_x.push_back(cx);
    com_y.push_back(cy);
    com_z.push_back(cz);
    breathing.push_back(msd * inv);
}

DensityEstimate estimate_density(const SimState& state) {
    const std::size_t n = state.size();
    DensityEstimate out;
    if (n < 2) return out;

    double cx = 0.0, cy = 0.0, cz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cx += state.x[i];
        cy += state.y[i];
        cz += state.z[i];
    }
    const double inv = 1.0 / static_cast<double>(n);
    cx *= inv;
    cy *= inv;
    cz *= inv;

    double mxx = 0.0, myy = 0.0, mzz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = state.x[i] - cx;
        const double dy = state.y[i] - cy;
        const double dz = state.z[i] - cz;
        mxx += dx * dx;
        myy += dy * dy;
        mzz += dz * dz;
    }
    out.semi_axis_z_m = std::sqrt(5.0 * mzz * inv);
    out.semi_axis_r_m = std::sqrt(5.0 * 0.5 * (mxx + myy) * inv);
    const double volume = 4.0 / 3.0 * constants::pi * out.semi_axis_r_m * out.semi_axis_r_m *
                          out.semi_axis_z_m;
    if (volume > 0.0) out.density_m3 = static_cast<double>(n) / volume;

    out.nn_spacing_m = median_nearest_neighbor(state);
    if (out.nn_spacing_m > 0.0) {
        // bcc convention: nn distance = (sqrt(3)/2) cell, density = 2 / cell^3
        const double cell = 2.0 * out.nn_spacing_m / std::sqrt(3.0);
        out.wigner_seitz_m3 = 2.0 / (cell * cell * cell);
    }
    return out;
}

double median_nearest_neighbor(const SimState& state) {
    const std::size_t n = state.size();
    if (n < 2) return 0.0;
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = state.x[i] - state.x[j];
            const double dy = state.y[i] - state.y[j];
            const double dz = state.z[i] - state.z[j];
            const double r2 = dx * dx + dy * dy + dz * dz;
            if (r2 < nn[i]) nn[i] = r2;
            if (r2 < nn[j]) nn[j] = r2;
        }
    }
    std::nth_element(nn.begin(), nn.begin() + static_cast<std::ptrdiff_t>(n / 2), nn.end());
    return std::sqrt(nn[n / 2]);
}

RadialHistogram radial_histograms(const SimState& state, std::size_t n_species,
                                  std::size_t n_bins) {
    RadialHistogram out;
    if (state.size() == 0 || n_bins == 0) return out;
    double rmax = 0.0;
    std::vector<double> radius(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        radius[i] = std::hypot(state.x[i], state.y[i]);
        rmax = std::max(rmax, radius[i]);
    }
    out.bin_width_m = (rmax > 0.0 ? rmax : 1.0) / static_cast<double>(n_bins);
    out.counts.assign(n_species, std::vector<std::size_t>(n_bins, 0));
    for (std::size_t i = 0; i < state.size(); ++i) {
        auto bin = static_cast<std::size_t>(radius[i] / out.bin_width_m);
        if (bin >= n_bins) bin = n_bins - 1;
        out.counts[state.species[i]][bin] += 1;
    }
    return out;
}

RadialSeparation radial_separation(const SimState& state, std::uint32_t inner_species,
                                   std::uint32_t outer_species) {
    RadialSeparation out;
    double zmax = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) zmax = std::max(zmax, std::abs(state.z[i]));
    const double z_cut = zmax / 3.0;

    double inner_max = 0.0, outer_min = std::numeric_limits<double>::infinity();
    double inner_sum = 0.0, outer_sum = 0.0, inner_r2 = 0.0;
    std::size_t inner_n = 0, outer_n = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double r = std::hypot(state.x[i], state.y[i]);
        if (state.species[i] == inner_species) {
            inner_sum += r;
            inner_r2 += r * r;
            ++inner_n;
        } else if (state.species[i] == outer_species) {
            outer_sum += r;
            ++outer_n;
        }
        if (std::abs(state.z[i]) > z_cut) continue;
        if (state.species[i] == inner_species) {
            inner_max = std::max(inner_max, r);
        } else if (state.species[i] == outer_species) {
            outer_min = std::min(outer_min, r);
        }
    }
    if (inner_n > 0) {
        out.inner_mean_radius_m = inner_sum / static_cast<double>(inner_n);
        // uniform cylinder of radius R has <r^2> = R^2 / 2
        out.boundary_radius_m = std::sqrt(2.0 * inner_r2 / static_cast<double>(inner_n));
    }
    if (outer_n > 0) out.outer_mean_radius_m = outer_sum / static_cast<double>(outer_n);
    if (std::isfinite(outer_min) && inner_max > 0.0)
        out.interface_midpoint_m = 0.5 * (inner_max + outer_min);
    out.ordered = inner_n > 0 && outer_n > 0 &&
                  out.inner_mean_radius_m < out.outer_mean_radius_m;
    return out;
}

}  // namespace icct::md
