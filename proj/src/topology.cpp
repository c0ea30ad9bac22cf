// topology.cpp
#include "autopump/topology.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "autopump/linalg.hpp"
#include "autopump/model.hpp"

namespace autopump::topology {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGapTolerance = 1e-10;
using cplx = std::complex<double>;

std::string describe_gap(double k, double phi, double gap) {
    std::ostringstream os;
    os << "band gap closes at k=" << k << ", phi=" << phi << " (2E=" << gap << "); invariant undefined";
    return os.str();
}

cplx overlap(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) { return a.dot(b); }

}  // namespace

GapClosure::GapClosure(double k_, double phi_, double gap_)
    : NumericalError(describe_gap(k_, phi_, gap_)), k(k_), phi(phi_), gap(gap_) {}

BlochMatrix bloch_h(double k, double phi, double eta, double J) {
    BlochMatrix b;
    b.k = k;
    b.phi = phi;
    b.eta = eta;
    b.J = J;
    b.dz = J * eta * std::sin(phi);
    b.dy = 0.5 * J * (1.0 - eta * std::cos(phi)) * std::sin(k);
    b.dx = -0.5 * J * (1.0 + eta * std::cos(phi) + (1.0 - eta * std::cos(phi)) * std::cos(k));
    b.h << cplx(b.dz, 0.0), cplx(b.dx, -b.dy),
           cplx(b.dx, b.dy), cplx(-b.dz, 0.0);
    return b;
}

double band_energy(double k, double phi, double eta, double J) {
    const double s = std::sin(phi);
    const double c2 = eta * eta * std::cos(phi) * std::cos(phi);
    const double inner = eta * eta * s * s + 0.5 * (1.0 + c2) + 0.5 * (1.0 - c2) * std::cos(k);
    return J * std::sqrt(std::max(0.0, inner));
}

Eigen::Vector2cd band_state(double k, double phi, double eta, double J, Band band) {
    const double e = band_energy(k, phi, eta, J);
    if (2.0 * e < kGapTolerance * std::abs(J)) throw GapClosure(k, phi, 2.0 * e);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(bloch_h(k, phi, eta, J).h);
    Eigen::Vector2cd v = solver.eigenvectors().col(band == Band::lower ? 0 : 1);
    const int pivot = std::abs(v(0)) >= 1e-12 ? 0 : 1;
    v *= std::conj(v(pivot)) / std::abs(v(pivot));
    v(pivot) = std::abs(v(pivot));
    return v.normalized();
}

double wilson_loop_phase(const std::vector<Eigen::Vector2cd>& states) {
    const std::size_t n = states.size();
    if (n < 2) throw std::invalid_argument("wilson_loop_phase: needs at least two states");
    cplx loop = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        loop *= overlap(states[i], states[(i + 1) % n]);
        loop /= std::abs(loop);
    }
    return std::arg(loop);
}

double zak_phase(double phi, double eta, double J, int n_k) {
    if (n_k < 64) throw std::invalid_argument("zak_phase: n_k must be >= 64");
    std::vector<Eigen::Vector2cd> u;
    u.reserve(static_cast<std::size_t>(n_k));
    for (int i = 0; i < n_k; ++i) u.push_back(band_state(kTwoPi * i / n_k, phi, eta, J, Band::lower));
    return wilson_loop_phase(u);
}

ZakWinding zak_winding(double eta, double J, int n_k, int n_phi) {
    if (n_phi < 4) throw std::invalid_argument("zak_winding: n_phi must be >= 4");
    ZakWinding w;
    for (int j = 0; j <= n_phi; ++j) w.phases.push_back(zak_phase(kTwoPi * j / n_phi, eta, J, n_k));
    double total = 0.0;
    for (int j = 0; j < n_phi; ++j)
        total += std::remainder(w.phases[static_cast<std::size_t>(j + 1)] - w.phases[static_cast<std::size_t>(j)], kTwoPi);
    w.winding = total / kTwoPi;
    w.rounded = static_cast<int>(std::lround(w.winding));
    return w;
}

ChernResult chern_number(double eta, double J, int n_k, int n_phi) {
    if (n_k < 2 || n_phi < 2) throw std::invalid_argument("chern_number: grid must be at least 2 x 2");
    ChernResult r;
    r.n_k = n_k;
    r.n_phi = n_phi;

    auto k_at = [&](int i) { return -kPi + kTwoPi * (i + 1) / n_k; };
    auto phi_at = [&](int j) { return kTwoPi * j / n_phi; };

    r.min_gap_on_grid = std::numeric_limits<double>::infinity();
    double worst_k = 0.0, worst_phi = 0.0;
    for (int i = 0; i < n_k; ++i)
        for (int j = 0; j < n_phi; ++j) {
            const double gap = 2.0 * band_energy(k_at(i), phi_at(j), eta, J);
            if (gap < r.min_gap_on_grid) {
                r.min_gap_on_grid = gap;
                worst_k = k_at(i);
                worst_phi = phi_at(j);
            }
        }
    if (r.min_gap_on_grid < kGapTolerance * std::abs(J)) throw GapClosure(worst_k, worst_phi, r.min_gap_on_grid);

    std::vector<Eigen::Vector2cd> u(static_cast<std::size_t>(n_k * n_phi));
    auto at = [&](int i, int j) -> const Eigen::Vector2cd& {
        return u[static_cast<std::size_t>(((i + n_k) % n_k) * n_phi + (j + n_phi) % n_phi)];
    };
    for (int i = 0; i < n_k; ++i)
        for (int j = 0; j < n_phi; ++j)
            u[static_cast<std::size_t>(i * n_phi + j)] = band_state(k_at(i), phi_at(j), eta, J, Band::lower);

    double total = 0.0;
    r.plaquette_fluxes.reserve(u.size());
    for (int i = 0; i < n_k; ++i)
        for (int j = 0; j < n_phi; ++j) {
            // (k, phi) -> (k, phi+) -> (k+, phi+) -> (k+, phi) -> back
            const cplx loop = overlap(at(i, j), at(i, j + 1)) * overlap(at(i, j + 1), at(i + 1, j + 1)) *
                              overlap(at(i + 1, j + 1), at(i + 1, j)) * overlap(at(i + 1, j), at(i, j));
            const double flux = std::arg(loop);
            r.plaquette_fluxes.push_back(flux);
            total += flux;
        }
    r.raw = total / kTwoPi;
    r.chern = static_cast<int>(std::lround(r.raw));
    if (std::abs(r.raw - r.chern) > 1e-10)
        throw NumericalError("chern_number: flux sum is not an integer; grid too coarse");
    return r;
}

PumpResult driven_rmm_pump(double delta, double T, double dt, int L, const PumpOptions& options) {
    if (L < 2 || L % 2 != 0) throw std::invalid_argument("driven pump: L must be even and >= 2");
    if (!(T > 0.0) || !(dt > 0.0) || dt > T) throw std::invalid_argument("driven pump: need 0 < dt <= T");
    if (options.orientation != 1 && options.orientation != -1)
        throw std::invalid_argument("driven pump: orientation must be +1 or -1");

    const double J = options.J;
    auto gamma_at = [&](double t) { return options.gamma_offset + delta * std::cos(kTwoPi * t / T); };
    auto delta_at = [&](double t) { return options.orientation * delta * std::sin(kTwoPi * t / T); };
    auto h_at = [&](double t) { return rmm_single_particle(L, J, gamma_at(t), delta_at(t)); };
    const int n_occ = L / 2;

    PumpResult res;
    res.min_gap = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 64; ++s) {
        const auto e = linalg::eigh(h_at(T * s / 64.0)).values;
        res.min_gap = std::min(res.min_gap, e(n_occ) - e(n_occ - 1));
    }
    if (kTwoPi / T > 0.1 * res.min_gap) {
        res.adiabatic = false;
        std::ostringstream os;
        os << "driven pump: 2pi/T=" << kTwoPi / T << " exceeds 0.1 x min gap " << res.min_gap
           << "; result is not adiabatic";
        res.warning = os.str();
    }

    Eigen::MatrixXcd c = linalg::eigh(h_at(0.0)).vectors.leftCols(n_occ);
    auto current = [&](double t, const Eigen::MatrixXcd& orb) {
        // <c+_1 c_0> - <c+_0 c_1>
        cplx diff = 0.0;
        for (int a = 0; a < n_occ; ++a) diff += std::conj(orb(1, a)) * orb(0, a) - std::conj(orb(0, a)) * orb(1, a);
        return (cplx(0.0, -0.5 * J) * (1.0 + gamma_at(t)) * diff).real();
    };
    auto f = [&](double t, const Eigen::MatrixXcd& orb) -> Eigen::MatrixXcd {
        return cplx(0.0, 1.0) * (h_at(t) * orb);
    };

    const long steps = std::lround(T / dt);
    const double h = T / static_cast<double>(steps);
    double j_prev = current(0.0, c);
    double charge = 0.0;
    for (long n = 0; n < steps; ++n) {
        const double t = h * static_cast<double>(n);
        const Eigen::MatrixXcd k1 = f(t, c);
        const Eigen::MatrixXcd k2 = f(t + 0.5 * h, c + 0.5 * h * k1);
        const Eigen::MatrixXcd k3 = f(t + 0.5 * h, c + 0.5 * h * k2);
        const Eigen::MatrixXcd k4 = f(t + h, c + h * k3);
        c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double j_now = current(t + h, c);
        charge += 0.5 * h * (j_prev + j_now);
        j_prev = j_now;
    }
    res.delta_n = charge;
    res.steps = steps;
    return res;
}

}  // namespace autopump::topology
