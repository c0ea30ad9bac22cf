// ed_analysis.hpp: exact diagonalization of the coupled model and stationary observables
//
// Time convention used throughout the library: Heisenberg operators evolve as
// A(t) = exp(-iHt) A exp(iHt). In this convention the Larmor term -omega Sz turns the
// in-plane spin counterclockwise and the current operator J_l counts flow from l to l+1.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autopump/hilbert.hpp"
#include "autopump/model.hpp"

namespace autopump {

struct Spectrum {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXcd vectors;  // column n is the eigenvector of energies[n]
    OperatorShape shape;
    // max_n |H v_n - E_n v_n| and max |V^dagger V - 1|; NaN when not verified.
    double residual = std::numeric_limits<double>::quiet_NaN();
    double orthonormality_defect = std::numeric_limits<double>::quiet_NaN();

    int size() const { return static_cast<int>(energies.size()); }
    Eigen::VectorXcd state(int n) const { return vectors.col(n); }
};

enum class SpectrumCheck { verify, skip };

// Throws NumericalError for non-Hermitian input, solver failure, or (with verify)
// residual > 1e-9 max|E| or orthonormality defect > 1e-10.
Spectrum diagonalize(const OperatorMatrix& H, SpectrumCheck check = SpectrumCheck::verify);

cplx expectation(const Eigen::VectorXcd& psi, const OperatorMatrix& op);

struct EmbeddedSpin {
    OperatorMatrix sx, sy, sz, splus;
};
EmbeddedSpin embedded_spin_operators(const ProductBasis& basis);

// <psi_n|Sz|psi_n> for every eigenstate (Sz is diagonal in the product basis).
std::vector<double> spin_z_expectations(const Spectrum& spec, const ProductBasis& basis);

struct SelectedState {
    int n = -1;
    double energy = 0.0;
    double e_prime = 0.0;  // energy + omega <Sz>
    double sz = 0.0, sx = 0.0, sy = 0.0;
    double var_sx = 0.0, var_sy = 0.0;
};

// Minimises E'_n = E_n + omega <Sz>_n. Ties (|dE'| <= 1e-10) go to the lower E_n, then lower n.
SelectedState select_min_fermion_energy(const Spectrum& spec, double omega, const ProductBasis& basis);

struct CurrentResult {
    double current = 0.0;  // bond 0
    std::vector<double> per_bond;
    double spread = 0.0;   // max - min over bonds
};

// Throws NumericalError when the bond currents differ by more than 1e-8.
CurrentResult stationary_current(const SelectedState& state, const Spectrum& spec,
                                 const ModelParams& params, const ProductBasis& basis);

struct CorrelationSeries {
    std::vector<double> times;
    std::vector<cplx> values;
    std::string a_label, b_label;
};

// <psi|A(t) B(0)|psi> = sum_m exp(i(E_m - E_n)t) <n|A|m><m|B|n>.
CorrelationSeries two_time_correlation(const Spectrum& spec, const SelectedState& state,
                                       const OperatorMatrix& A, const OperatorMatrix& B,
                                       std::span<const double> times);

std::vector<double> uniform_times(double dt, int count);

struct OmegaTilde {
    double omega_tilde = 0.0;  // beat-note carrier
    double peak = 0.0;         // dominant refined peak
    bool ok = false;
    std::string message;
};

// Uses Re <Sx(t)Sx(0)> on a uniform grid. ok is false when no peak clears the noise floor.
OmegaTilde extract_omega_tilde(const CorrelationSeries& series);

struct TransportOptions {
    int window_periods = 40;
    int samples_per_period = 64;
};

struct TransportRecord {
    double omega = 0.0;
    double omega_tilde = 0.0;
    double peak_frequency = 0.0;
    double current = 0.0;
    double delta_n = 0.0;  // current * 2 pi / omega_tilde
    int bond = 0;
    bool omega_tilde_ok = false;
};

TransportRecord transport_per_period(const SelectedState& state, const Spectrum& spec,
                                     const ModelParams& params, const ProductBasis& basis,
                                     const TransportOptions& options = {});

inline bool is_quantized(const TransportRecord& r, double tolerance = 0.05) {
    return std::abs(r.delta_n - 1.0) < tolerance;
}

// <S+psi|H|S+psi>/<S+psi|S+psi> - E_n; empty when S+|psi> vanishes.
std::optional<double> spin_gap(const SelectedState& state, const Spectrum& spec,
                               const OperatorMatrix& H, const ProductBasis& basis);

struct ParticleHoleGap {
    int from = 0;  // l: particle removed
    int to = 0;    // m: particle added
    bool reference = false;  // l == m
    bool valid = false;      // c+_m c_l |psi> nonzero
    double gap = 0.0;        // excited - reference
    double raw = 0.0;        // reference - excited
};

ParticleHoleGap particle_hole_gap(const SelectedState& state, const Spectrum& spec,
                                  const OperatorMatrix& H, int from, int to,
                                  const ProductBasis& basis);

// All (l, m) pairs in row-major order.
std::vector<ParticleHoleGap> particle_hole_gaps(const SelectedState& state, const Spectrum& spec,
                                                const OperatorMatrix& H, const ProductBasis& basis);

struct PointAnalysis {
    SelectedState state;
    CurrentResult current;
    TransportRecord transport;
    std::optional<double> spin_gap;
};

PointAnalysis analyze_point(const ModelParams& params, const DisorderRealization* disorder = nullptr,
                            const TransportOptions& options = {},
                            SpectrumCheck check = SpectrumCheck::skip);

struct EnsembleMember {
    int realization = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    TransportRecord record;
};

struct EnsembleResult {
    std::vector<EnsembleMember> members;  // realization order
    double mean_delta_n = 0.0;
    double std_delta_n = 0.0;  // sample standard deviation, 0 for a single member
    int failures = 0;
};

EnsembleResult disorder_ensemble(const ModelParams& params, double epsilon0, int realizations,
                                 std::uint64_t base_seed, int workers = 1,
                                 const TransportOptions& options = {});

}  // namespace autopump
