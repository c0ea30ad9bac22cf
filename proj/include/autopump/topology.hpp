// topology.hpp: Bloch theory of the effective (k, phi) model and the driven Rice-Mele pump
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "autopump/errors.hpp"

namespace autopump::topology {

struct BlochMatrix {
    double k = 0.0, phi = 0.0, eta = 0.0, J = 1.0;
    double dx = 0.0, dy = 0.0, dz = 0.0;  // h = dx sx + dy sy + dz sz
    Eigen::Matrix2cd h;
};

// h = J eta sin(phi) sz + (J/2)(1 - eta cos phi) sin k sy - (J/2)(1 + eta cos phi + (1 - eta cos phi) cos k) sx
BlochMatrix bloch_h(double k, double phi, double eta, double J = 1.0);

// Closed form E(k, phi) >= 0; bands are +-E.
double band_energy(double k, double phi, double eta, double J = 1.0);

enum class Band { lower, upper };

// Raised when the two bands touch; carries the offending point.
class GapClosure : public NumericalError {
public:
    GapClosure(double k, double phi, double gap);
    double k, phi, gap;
};

// Normalised eigenvector, first component real positive (second when |first| < 1e-12).
Eigen::Vector2cd band_state(double k, double phi, double eta, double J, Band band);

// arg prod_i <u_i|u_{i+1}> around the closed loop (u_n = u_0), in (-pi, pi].
double wilson_loop_phase(const std::vector<Eigen::Vector2cd>& states);

// Wilson-loop phase of the lower band, k_i = 2 pi i / n_k, in (-pi, pi].
double zak_phase(double phi, double eta, double J, int n_k);

struct ZakWinding {
    double winding = 0.0;  // total unwrapped change / 2 pi
    int rounded = 0;
    std::vector<double> phases;  // n_phi + 1 samples, phi_j = 2 pi j / n_phi
};

ZakWinding zak_winding(double eta, double J, int n_k, int n_phi);

struct ChernResult {
    int chern = 0;
    double raw = 0.0;  // sum of fluxes / 2 pi before rounding
    int n_k = 0, n_phi = 0;
    std::vector<double> plaquette_fluxes;  // row-major (k, phi), each in [-pi, pi]
    double min_gap_on_grid = 0.0;          // min 2E
};

// Plaquette (link-variable) Chern number of the lower band on the (k, phi) torus, oriented so that
// the result equals (i / 2 pi) int dk dphi (<d_k u|d_phi u> - c.c.). Grid k_i = -pi + 2 pi (i+1)/n_k,
// so k = pi is sampled for even n_k. Throws GapClosure when min 2E < 1e-10 J.
ChernResult chern_number(double eta, double J, int n_k, int n_phi);

struct PumpOptions {
    double J = 1.0;
    double gamma_offset = 0.0;  // gamma(t) = offset + delta cos(2 pi t / T)
    int orientation = 1;        // Delta(t) = orientation delta sin(2 pi t / T)
};

struct PumpResult {
    double delta_n = 0.0;  // charge through bond 0 over one cycle
    double min_gap = 0.0;  // instantaneous single-particle gap at half filling, sampled on the cycle
    bool adiabatic = true; // 2 pi / T <= 0.1 min_gap
    std::string warning;
    long steps = 0;
};

// Half-filled ring under the Rice-Mele cycle, RK4 with dC/dt = +i h(t) C.
PumpResult driven_rmm_pump(double delta, double T, double dt, int L, const PumpOptions& options = {});

}  // namespace autopump::topology
