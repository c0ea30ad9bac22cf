// ed_analysis.cpp
#include "autopump/ed_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include <fftw3.h>

#include "autopump/errors.hpp"
#include "autopump/linalg.hpp"
#include "autopump/parallel.hpp"

namespace autopump {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTieTolerance = 1e-10;
constexpr double kBondTolerance = 1e-8;
constexpr double kVanishingNorm = 1e-24;  // squared norm

// FFTW planning is not thread-safe.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

std::vector<double> dft_magnitudes(const std::vector<double>& samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<double> in(samples);
    std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<double> mag(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
    return mag;
}

}  // namespace

Spectrum diagonalize(const OperatorMatrix& H, SpectrumCheck check) {
    const double scale = std::max(1.0, H.matrix.cwiseAbs().maxCoeff());
    if (!H.hermitian) throw NumericalError("diagonalize: operator is not flagged Hermitian");
    if (H.hermiticity_defect() > 1e-12 * scale)
        throw NumericalError("diagonalize: Hermiticity defect exceeds tolerance");

    auto eig = linalg::eigh(H.matrix);
    Spectrum spec;
    spec.energies = std::move(eig.values);
    spec.vectors = std::move(eig.vectors);
    spec.shape = H.shape;

    if (check == SpectrumCheck::verify && spec.size() > 0) {
        const Eigen::MatrixXcd hv = H.matrix * spec.vectors;
        const Eigen::MatrixXcd r = hv - spec.vectors * spec.energies.asDiagonal();
        spec.residual = r.colwise().norm().maxCoeff();
        const int d = spec.size();
        spec.orthonormality_defect =
            (spec.vectors.adjoint() * spec.vectors - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
        const double emax = std::max(1.0, spec.energies.cwiseAbs().maxCoeff());
        if (spec.residual > 1e-9 * emax)
            throw NumericalError("diagonalize: eigen-residual " + std::to_string(spec.residual) +
                                 " exceeds tolerance");
        if (spec.orthonormality_defect > 1e-10)
            throw NumericalError("diagonalize: orthonormality defect " +
                                 std::to_string(spec.orthonormality_defect));
    }
    return spec;
}

cplx expectation(const Eigen::VectorXcd& psi, const OperatorMatrix& op) {
    return psi.dot(op.matrix * psi);
}

EmbeddedSpin embedded_spin_operators(const ProductBasis& basis) {
    const auto s = spin_matrices(basis.spin());
    return {embed_spin(s.sx, basis), embed_spin(s.sy, basis), embed_spin(s.sz, basis),
            embed_spin(s.splus, basis)};
}

std::vector<double> spin_z_expectations(const Spectrum& spec, const ProductBasis& basis) {
    const int d = basis.dim();
    if (spec.vectors.rows() != d) throw std::invalid_argument("spectrum/basis dimension mismatch");
    Eigen::VectorXd m(d);
    for (int i = 0; i < d; ++i) m(i) = basis.spin().m(basis.unflatten(i).first);
    const Eigen::VectorXd sz = spec.vectors.cwiseAbs2().transpose() * m;
    return {sz.data(), sz.data() + sz.size()};
}

SelectedState select_min_fermion_energy(const Spectrum& spec, double omega, const ProductBasis& basis) {
    if (spec.size() == 0) throw std::invalid_argument("select: empty spectrum");
    const auto sz = spin_z_expectations(spec, basis);

    int best = 0;
    double best_ep = spec.energies(0) + omega * sz[0];
    for (int n = 1; n < spec.size(); ++n) {
        const double ep = spec.energies(n) + omega * sz[static_cast<std::size_t>(n)];
        // energies are ascending, so a tie never displaces the earlier (lower-E) state
        if (ep < best_ep - kTieTolerance) {
            best = n;
            best_ep = ep;
        }
    }

    SelectedState s;
    s.n = best;
    s.energy = spec.energies(best);
    s.sz = sz[static_cast<std::size_t>(best)];
    s.e_prime = s.energy + omega * s.sz;

    const auto ops = embedded_spin_operators(basis);
    const Eigen::VectorXcd psi = spec.state(best);
    const Eigen::VectorXcd xpsi = ops.sx.matrix * psi;
    const Eigen::VectorXcd ypsi = ops.sy.matrix * psi;
    s.sx = psi.dot(xpsi).real();
    s.sy = psi.dot(ypsi).real();
    s.var_sx = xpsi.squaredNorm() - s.sx * s.sx;
    s.var_sy = ypsi.squaredNorm() - s.sy * s.sy;
    return s;
}

CurrentResult stationary_current(const SelectedState& state, const Spectrum& spec,
                                 const ModelParams& params, const ProductBasis& basis) {
    const Eigen::VectorXcd psi = spec.state(state.n);
    CurrentResult r;
    for (int l = 0; l < params.L; ++l)
        r.per_bond.push_back(expectation(psi, build_current_operator(l, params, basis)).real());
    const auto [lo, hi] = std::minmax_element(r.per_bond.begin(), r.per_bond.end());
    r.current = r.per_bond.front();
    r.spread = *hi - *lo;
    if (r.spread > kBondTolerance)
        throw NumericalError("stationary_current: bond currents differ by " + std::to_string(r.spread) +
                             "; input is not an eigenstate");
    return r;
}

CorrelationSeries two_time_correlation(const Spectrum& spec, const SelectedState& state,
                                       const OperatorMatrix& A, const OperatorMatrix& B,
                                       std::span<const double> times) {
    const Eigen::VectorXcd psi = spec.state(state.n);
    // left(m) = <n|A|m>, right(m) = <m|B|n>
    const Eigen::VectorXcd left = (spec.vectors.adjoint() * (A.matrix.adjoint() * psi)).conjugate();
    const Eigen::VectorXcd right = spec.vectors.adjoint() * (B.matrix * psi);
    const Eigen::VectorXcd weight = left.cwiseProduct(right);

    const double cutoff = 1e-16 * std::max(1e-300, weight.cwiseAbs().maxCoeff());
    std::vector<int> active;
    for (int m = 0; m < spec.size(); ++m)
        if (std::abs(weight(m)) > cutoff) active.push_back(m);

    const double en = spec.energies(state.n);
    CorrelationSeries out;
    out.times.assign(times.begin(), times.end());
    out.values.reserve(times.size());
    out.a_label = A.label;
    out.b_label = B.label;
    for (double t : times) {
        cplx acc = 0.0;
        for (int m : active) acc += weight(m) * std::polar(1.0, (spec.energies(m) - en) * t);
        out.values.push_back(acc);
    }
    return out;
}

std::vector<double> uniform_times(double dt, int count) {
    std::vector<double> t(static_cast<std::size_t>(std::max(0, count)));
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k) * dt;
    return t;
}

OmegaTilde extract_omega_tilde(const CorrelationSeries& series) {
    OmegaTilde res;
    const int n = static_cast<int>(series.values.size());
    if (n < 16 || series.times.size() != series.values.size()) {
        res.message = "series too short";
        return res;
    }
    const double dt = series.times[1] - series.times[0];
    if (!(dt > 0.0)) {
        res.message = "non-increasing time grid";
        return res;
    }

    // Periodic Hann window on the real (symmetrised) autocorrelation.
    std::vector<double> samples(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double w = 0.5 - 0.5 * std::cos(kTwoPi * k / n);
        samples[static_cast<std::size_t>(k)] = w * series.values[static_cast<std::size_t>(k)].real();
    }
    const auto mag = dft_magnitudes(samples);
    const int top = static_cast<int>(mag.size()) - 1;
    const double bin = kTwoPi / (n * dt);

    // Bins 0 and 1 carry the windowed DC term.
    int k_peak = 2;
    for (int k = 3; k < top; ++k)
        if (mag[static_cast<std::size_t>(k)] > mag[static_cast<std::size_t>(k_peak)]) k_peak = k;

    const double largest = *std::max_element(mag.begin(), mag.end());
    std::vector<double> sorted(mag.begin() + 2, mag.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double floor = sorted[sorted.size() / 2];
    const double peak_mag = mag[static_cast<std::size_t>(k_peak)];
    if (!(peak_mag > 0.0) || peak_mag < 10.0 * floor || peak_mag < 1e-6 * largest) {
        res.message = "no spectral peak above the noise floor";
        return res;
    }

    const double y0 = mag[static_cast<std::size_t>(k_peak - 1)];
    const double y1 = peak_mag;
    const double y2 = mag[static_cast<std::size_t>(k_peak + 1)];
    const double curvature = y0 - 2.0 * y1 + y2;
    const double shift = curvature != 0.0 ? 0.5 * (y0 - y2) / curvature : 0.0;
    res.peak = (k_peak + shift) * bin;

    // Carrier of the beat note: magnitude-weighted centroid within +-25% of the peak.
    const int k_lo = std::max(2, static_cast<int>(std::ceil(0.75 * res.peak / bin)));
    const int k_hi = std::min(top, static_cast<int>(std::floor(1.25 * res.peak / bin)));
    double num = 0.0;
    double den = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        num += k * bin * mag[static_cast<std::size_t>(k)];
        den += mag[static_cast<std::size_t>(k)];
    }
    res.omega_tilde = den > 0.0 ? num / den : res.peak;
    res.ok = true;
    return res;
}

TransportRecord transport_per_period(const SelectedState& state, const Spectrum& spec,
                                     const ModelParams& params, const ProductBasis& basis,
                                     const TransportOptions& options) {
    if (!(params.omega > 0.0)) throw std::invalid_argument("transport: omega must be positive");
    if (options.window_periods < 40 || options.samples_per_period < 8)
        throw std::invalid_argument("transport: window must cover >= 40 periods at >= 8 samples each");

    const auto current = stationary_current(state, spec, params, basis);
    const auto sx = embed_spin(spin_matrices(basis.spin()).sx, basis);
    const double period = kTwoPi / params.omega;
    const auto times = uniform_times(period / options.samples_per_period,
                                     options.window_periods * options.samples_per_period);
    const auto series = two_time_correlation(spec, state, sx, sx, times);
    const auto wt = extract_omega_tilde(series);

    TransportRecord r;
    r.omega = params.omega;
    r.current = current.current;
    r.bond = 0;
    r.omega_tilde_ok = wt.ok;
    r.omega_tilde = wt.ok ? wt.omega_tilde : params.omega;
    r.peak_frequency = wt.ok ? wt.peak : params.omega;
    r.delta_n = r.current * kTwoPi / r.omega_tilde;
    return r;
}

std::optional<double> spin_gap(const SelectedState& state, const Spectrum& spec,
                               const OperatorMatrix& H, const ProductBasis& basis) {
    const Eigen::VectorXcd psi = spec.state(state.n);
    const Eigen::VectorXcd raised = embed_spin(spin_matrices(basis.spin()).splus, basis).matrix * psi;
    const double norm2 = raised.squaredNorm();
    if (norm2 < kVanishingNorm) return std::nullopt;
    const double excited = raised.dot(H.matrix * raised).real() / norm2;
    const double reference = psi.dot(H.matrix * psi).real();
    return excited - reference;
}

ParticleHoleGap particle_hole_gap(const SelectedState& state, const Spectrum& spec,
                                  const OperatorMatrix& H, int from, int to,
                                  const ProductBasis& basis) {
    ParticleHoleGap g;
    g.from = from;
    g.to = to;
    g.reference = from == to;
    const Eigen::VectorXcd psi = spec.state(state.n);
    const Eigen::VectorXcd moved = embed_fermion(fermion_bilinear(basis.fermion(), to, from), basis).matrix * psi;
    const double norm2 = moved.squaredNorm();
    if (norm2 < kVanishingNorm) return g;
    const double excited = moved.dot(H.matrix * moved).real() / norm2;
    const double reference = psi.dot(H.matrix * psi).real();
    g.valid = true;
    g.gap = excited - reference;
    g.raw = reference - excited;
    return g;
}

std::vector<ParticleHoleGap> particle_hole_gaps(const SelectedState& state, const Spectrum& spec,
                                                const OperatorMatrix& H, const ProductBasis& basis) {
    std::vector<ParticleHoleGap> out;
    const int L = basis.fermion().sites();
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < L; ++m) out.push_back(particle_hole_gap(state, spec, H, l, m, basis));
    return out;
}

PointAnalysis analyze_point(const ModelParams& params, const DisorderRealization* disorder,
                            const TransportOptions& options, SpectrumCheck check) {
    const auto basis = params.product_basis();
    auto H = build_coupled_hamiltonian(params, basis);
    if (disorder) H = add_onsite_disorder(H, *disorder, basis);
    const auto spec = diagonalize(H, check);

    PointAnalysis p;
    p.state = select_min_fermion_energy(spec, params.omega, basis);
    p.current = stationary_current(p.state, spec, params, basis);
    p.transport = transport_per_period(p.state, spec, params, basis, options);
    p.spin_gap = spin_gap(p.state, spec, H, basis);
    return p;
}

EnsembleResult disorder_ensemble(const ModelParams& params, double epsilon0, int realizations,
                                 std::uint64_t base_seed, int workers, const TransportOptions& options) {
    if (realizations < 1) throw std::invalid_argument("disorder ensemble: R must be >= 1");
    params.validate();

    EnsembleResult res;
    res.members.resize(static_cast<std::size_t>(realizations));
    parallel_for(res.members.size(), workers, [&](std::size_t r) {
        auto& member = res.members[r];
        member.realization = static_cast<int>(r);
        member.seed = realization_seed(base_seed, static_cast<int>(r));
        try {
            const auto disorder = DisorderRealization::sample(params.L, epsilon0, member.seed);
            member.record = analyze_point(params, &disorder, options).transport;
            member.ok = true;
        } catch (const std::exception& e) {
            member.error = e.what();
        }
    });

    std::vector<double> values;
    for (const auto& m : res.members) {
        if (m.ok) values.push_back(m.record.delta_n);
        else ++res.failures;
    }
    if (!values.empty()) {
        res.mean_delta_n = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - res.mean_delta_n) * (v - res.mean_delta_n);
        res.std_delta_n = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    } else {
        res.mean_delta_n = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

}  // namespace autopump
