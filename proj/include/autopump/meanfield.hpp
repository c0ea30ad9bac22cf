// meanfield.hpp: classical spin coupled to single-particle fermion orbitals
//
// Same time convention as ed_analysis.hpp: dS/dt = B x S and dC/dt = +i h_MF(S) C.
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "autopump/model.hpp"

namespace autopump::meanfield {

struct MFState {
    Eigen::Vector3d spin = Eigen::Vector3d::Zero();
    Eigen::MatrixXcd orbitals;  // L x N, column a is occupied orbital a
    double time = 0.0;
};

struct BackactionField {
    double bx = 0.0, by = 0.0, bz = 0.0;
    double imbalance = 0.0;     // <I>
    double polarization = 0.0;  // <P>

    Eigen::Vector3d vector() const { return {bx, by, bz}; }
};

// Hopping -(J/2)(1 + (-1)^j g Sx) on bond (j, j+1), on-site (-1)^j Delta g Sy.
Eigen::MatrixXcd mf_fermion_matrix(const Eigen::Vector3d& spin, const ModelParams& params);

// One-body density matrix G(a, b) = <c+_a c_b>.
Eigen::MatrixXcd density_matrix(const Eigen::MatrixXcd& orbitals);

// Bx = g J <I>, By = g Delta <P>, Bz = omega.
BackactionField compute_backaction(const Eigen::MatrixXcd& orbitals, const ModelParams& params);

// Mean-field current through `bond`, same operator as the ED current with Sx -> <Sx>.
double bond_current(const Eigen::Vector3d& spin, const Eigen::MatrixXcd& orbitals,
                    const ModelParams& params, int bond = 0);

// Spin as given, fermions in the N lowest orbitals of mf_fermion_matrix(spin).
MFState ground_state_initial(const Eigen::Vector3d& spin, const ModelParams& params);
inline MFState default_initial(const ModelParams& params) {
    return ground_state_initial({params.S, 0.0, 0.0}, params);
}

struct MFSample {
    double t = 0.0;
    Eigen::Vector3d spin;
    BackactionField field;
    double pumped_charge = 0.0;
};

struct MFTrajectory {
    std::vector<MFSample> samples;  // t = 0, every stride steps, and the final step
    MFState final_state;
    double pumped_charge = 0.0;       // through bond 0, trapezoidal
    double max_spin_drift = 0.0;      // max | |S(t)| - S | / S
    double max_orthonormality_drift = 0.0;
    double unwrapped_angle = 0.0;      // in-plane angle of the spin, tracked every step
    double min_inplane_fraction = 1.0; // min sqrt(Sx^2 + Sy^2) / S
    long steps = 0;
};

struct IntegrateOptions {
    double dt = 0.01;
    double t_end = 0.0;
    int stride = 10;
    double abort_drift = 1e-6;
};

// Largest dt accepted: 0.01 min(2 pi / omega, 2 pi / J).
double max_step(const ModelParams& params);

// Fixed-step RK4 on the coupled system; the field is recomputed at every stage.
// Throws ConfigError for a bad step and NumericalError when a drift exceeds abort_drift.
MFTrajectory integrate_mf(const MFState& initial, const ModelParams& params, const IntegrateOptions& options);

struct WindingAnalysis {
    double revolutions = 0.0;         // unwrapped in-plane angle / 2 pi
    double periods = 0.0;             // t_end omega / 2 pi
    double winding_per_period = 0.0;
    std::optional<int> winding;       // rounded when within 0.05 of an integer
    double charge_per_period = 0.0;
    std::optional<double> charge_per_revolution;  // when |revolutions| >= 0.5
};

WindingAnalysis analyze_winding(const MFTrajectory& trajectory, const ModelParams& params);

// eta N J / S
double critical_field_lower(const ModelParams& params);
// 2 eta J fraction, fraction = in-plane |<S>| / S in [0, 1]
double critical_field_upper(const ModelParams& params, double fraction);

}  // namespace autopump::meanfield
