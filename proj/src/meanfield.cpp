// meanfield.cpp
#include "autopump/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "autopump/errors.hpp"
#include "autopump/linalg.hpp"

namespace autopump::meanfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double stagger(int j) { return (j % 2 == 0) ? 1.0 : -1.0; }

struct Derivative {
    Eigen::Vector3d spin;
    Eigen::MatrixXcd orbitals;
};

Derivative rhs(const Eigen::Vector3d& spin, const Eigen::MatrixXcd& orbitals, const ModelParams& params) {
    const Eigen::Vector3d b = compute_backaction(orbitals, params).vector();
    return {b.cross(spin), cplx(0.0, 1.0) * (mf_fermion_matrix(spin, params) * orbitals)};
}

double orthonormality_defect(const Eigen::MatrixXcd& orbitals) {
    const auto n = orbitals.cols();
    return (orbitals.adjoint() * orbitals - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::MatrixXcd mf_fermion_matrix(const Eigen::Vector3d& spin, const ModelParams& params) {
    const double g = params.g();
    return rmm_single_particle(params.L, params.J, g * spin.x(), params.Delta * g * spin.y());
}

Eigen::MatrixXcd density_matrix(const Eigen::MatrixXcd& orbitals) {
    return orbitals.conjugate() * orbitals.transpose();
}

BackactionField compute_backaction(const Eigen::MatrixXcd& orbitals, const ModelParams& params) {
    const int L = static_cast<int>(orbitals.rows());
    const Eigen::MatrixXcd G = density_matrix(orbitals);
    BackactionField f;
    for (int j = 0; j < L; ++j) {
        const int next = (j + 1) % L;
        f.imbalance += stagger(j) * G(j, next).real();  // (1/2)(G + G*) on each bond
        f.polarization -= stagger(j) * G(j, j).real();
    }
    const double g = params.g();
    f.bx = g * params.J * f.imbalance;
    f.by = g * params.Delta * f.polarization;
    f.bz = params.omega;
    return f;
}

double bond_current(const Eigen::Vector3d& spin, const Eigen::MatrixXcd& orbitals,
                    const ModelParams& params, int bond) {
    const int L = static_cast<int>(orbitals.rows());
    const int next = (bond + 1) % L;
    const Eigen::MatrixXcd G = density_matrix(orbitals);
    const double modulation = 1.0 + stagger(bond) * params.g() * spin.x();
    const cplx flow = cplx(0.0, -0.5 * params.J) * (G(next, bond) - G(bond, next));
    return modulation * flow.real();
}

MFState ground_state_initial(const Eigen::Vector3d& spin, const ModelParams& params) {
    params.validate();
    if (params.N < 1) throw ConfigError("meanfield: needs at least one fermion");
    const auto eig = linalg::eigh(mf_fermion_matrix(spin, params));
    // An open shell (e.g. g = 0 at half filling) keeps whichever degenerate orbitals the solver returns.
    MFState s;
    s.spin = spin;
    s.orbitals = eig.vectors.leftCols(params.N);
    return s;
}

double max_step(const ModelParams& params) {
    double bound = kTwoPi / params.J;
    if (params.omega > 0.0) bound = std::min(bound, kTwoPi / params.omega);
    return 0.01 * bound;
}

MFTrajectory integrate_mf(const MFState& initial, const ModelParams& params, const IntegrateOptions& options) {
    params.validate();
    const double dt = options.dt;
    if (!(dt > 0.0) || dt > max_step(params) * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "meanfield.dt: " << dt << " must lie in (0, " << max_step(params) << "]";
        throw ConfigError(os.str());
    }
    if (!(options.t_end >= 0.0)) throw ConfigError("meanfield.t_end: must be non-negative");
    if (options.stride < 1) throw ConfigError("meanfield.stride: must be >= 1");
    if (initial.orbitals.rows() != params.L || initial.orbitals.cols() != params.N)
        throw ConfigError("meanfield: orbital block must be L x N");

    const double s_norm = params.S;
    const long steps = std::lround(options.t_end / dt);

    MFTrajectory traj;
    Eigen::Vector3d spin = initial.spin;
    Eigen::MatrixXcd orb = initial.orbitals;
    double t = initial.time;
    double j_prev = bond_current(spin, orb, params);
    double charge = 0.0;

    auto record = [&] {
        traj.samples.push_back({t, spin, compute_backaction(orb, params), charge});
    };
    auto inplane = [](const Eigen::Vector3d& s) { return std::hypot(s.x(), s.y()); };
    traj.min_inplane_fraction = inplane(spin) / s_norm;
    record();

    for (long n = 1; n <= steps; ++n) {
        const auto k1 = rhs(spin, orb, params);
        const auto k2 = rhs(spin + 0.5 * dt * k1.spin, orb + 0.5 * dt * k1.orbitals, params);
        const auto k3 = rhs(spin + 0.5 * dt * k2.spin, orb + 0.5 * dt * k2.orbitals, params);
        const auto k4 = rhs(spin + dt * k3.spin, orb + dt * k3.orbitals, params);
        const Eigen::Vector3d prev = spin;
        spin += (dt / 6.0) * (k1.spin + 2.0 * k2.spin + 2.0 * k3.spin + k4.spin);
        orb += (dt / 6.0) * (k1.orbitals + 2.0 * k2.orbitals + 2.0 * k3.orbitals + k4.orbitals);
        t = initial.time + static_cast<double>(n) * dt;

        const double j_now = bond_current(spin, orb, params);
        charge += 0.5 * dt * (j_prev + j_now);
        j_prev = j_now;

        if (inplane(prev) > 0.0 && inplane(spin) > 0.0)
            traj.unwrapped_angle += std::atan2(prev.x() * spin.y() - prev.y() * spin.x(),
                                               prev.x() * spin.x() + prev.y() * spin.y());
        traj.min_inplane_fraction = std::min(traj.min_inplane_fraction, inplane(spin) / s_norm);

        const double sd = std::abs(spin.norm() - s_norm) / s_norm;
        const double od = orthonormality_defect(orb);
        traj.max_spin_drift = std::max(traj.max_spin_drift, sd);
        traj.max_orthonormality_drift = std::max(traj.max_orthonormality_drift, od);
        if (sd > options.abort_drift || od > options.abort_drift || !std::isfinite(sd + od)) {
            std::ostringstream os;
            os << "meanfield: drift beyond " << options.abort_drift << " at t=" << t << " (step " << n
               << "): spin " << sd << ", orthonormality " << od << "; reduce dt";
            throw NumericalError(os.str());
        }
        if (n % options.stride == 0 || n == steps) record();
    }

    traj.final_state = {spin, orb, t};
    traj.pumped_charge = charge;
    traj.steps = steps;
    return traj;
}

WindingAnalysis analyze_winding(const MFTrajectory& trajectory, const ModelParams& params) {
    WindingAnalysis w;
    w.revolutions = trajectory.unwrapped_angle / kTwoPi;
    const double duration = trajectory.samples.empty()
                                ? 0.0
                                : trajectory.samples.back().t - trajectory.samples.front().t;
    w.periods = duration * params.omega / kTwoPi;
    if (w.periods > 0.0) {
        w.winding_per_period = w.revolutions / w.periods;
        w.charge_per_period = trajectory.pumped_charge / w.periods;
        const double r = std::round(w.winding_per_period);
        if (std::abs(w.winding_per_period - r) <= 0.05) w.winding = static_cast<int>(r);
    }
    if (std::abs(w.revolutions) >= 0.5) w.charge_per_revolution = trajectory.pumped_charge / w.revolutions;
    return w;
}

double critical_field_lower(const ModelParams& params) {
    return params.eta * params.N * params.J / params.S;
}

double critical_field_upper(const ModelParams& params, double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("critical_field_upper: fraction must lie in [0, 1]");
    return 2.0 * params.eta * params.J * fraction;
}

}  // namespace autopump::meanfield
