// Optical cavity characterization: FSR, finesse, decay rate, TEM00 standing
// wave mode geometry, single-ion coupling and crystal-mode overlap counts.
#pragma once

#include "icct/crystal.hpp"
#include "icct/trap.hpp"

namespace icct {

struct CavitySpec {
    double length_m = 11.8e-3;
    double mirror_roc_m = 10.0e-3;      // both mirrors
    double transmission_in = 1500e-6;   // round-trip fractions
    double transmission_out = 5e-6;
    double intracavity_loss = 350e-6;
    double wavelength_m = 866.0e-9;
    double linewidth_fwhm_hz = 4.0e6;   // measured resonance width
};

struct ModeGeometry {
    double waist_m = 0.0;
    double rayleigh_range_m = 0.0;
    double wavenumber_1_m = 0.0;
    double mode_volume_m3 = 0.0;  // pi w0^2 L / 4
    double cavity_length_m = 0.0;
};

struct IonsInMode {
    double n_closed_form = 0.0;     // rho pi w0^2 l / 4
    double n_quadrature = 0.0;      // mode integral truncated at the spheroid
    double rel_difference = 0.0;    // |closed - quad| / closed
    double collective_coupling_rad_s = 0.0;  // g0 sqrt(N_closed)
    bool truncation_significant = false;     // crystal radius < 2 w(z) at the ends
};

void validate(const CavitySpec& spec);

double free_spectral_range(const CavitySpec& spec);
double length_from_fsr(double fsr_hz);
double finesse_from_linewidth(double fsr_hz, double linewidth_fwhm_hz);
double finesse_from_losses(const CavitySpec& spec);

// kappa = 2 pi * fwhm / 2, the angular half-width of the cavity field.
double cavity_decay_rate(double linewidth_fwhm_hz);

// Symmetric-resonator TEM00 waist: w0^2 = (lambda / 2 pi) sqrt(L (2 ROC - L)).
// Throws InfeasibleError("unstable resonator") outside 0 < L < 2 ROC.
ModeGeometry waist_from_geometry(const CavitySpec& spec);

// Beam radius w(z) of the mode at axial distance z from the waist.
double mode_radius(const ModeGeometry& mode, double z_m);

// g0 = (D / hbar) sqrt(hbar omega / (2 eps0 V)) at the waist and a field antinode.
double single_ion_coupling(const IonSpecies& ion, const ModeGeometry& mode);

// Effective number of ions coupled to the standing-wave mode, closed form and
// spheroid-truncated quadrature, plus the collective coupling g0 sqrt(N).
IonsInMode ions_in_mode(const CrystalSpec& crystal, const ModeGeometry& mode);

// Smallest N with g0 sqrt(N) strictly above max(gamma, kappa).
long strong_coupling_threshold(const IonSpecies& ion, const ModeGeometry& mode,
                               double kappa_rad_s);

}  // namespace icct
