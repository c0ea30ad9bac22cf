// model.cpp
#include "autopump/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace autopump {

namespace {

double stagger(int j) { return (j % 2 == 0) ? 1.0 : -1.0; }

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

// Fermion-space sums over the ring: total hopping, staggered hopping, staggered density.
struct FermionTerms {
    Eigen::MatrixXcd hop;
    Eigen::MatrixXcd hop_stag;
    Eigen::MatrixXcd density_stag;
};

FermionTerms fermion_terms(const FermionBasis& basis) {
    const int L = basis.sites();
    const int D = basis.dim();
    FermionTerms t{Eigen::MatrixXcd::Zero(D, D), Eigen::MatrixXcd::Zero(D, D),
                   Eigen::MatrixXcd::Zero(D, D)};
    for (int j = 0; j < L; ++j) {
        const int next = (j + 1) % L;
        const Eigen::MatrixXcd fwd = fermion_bilinear(basis, j, next).matrix;
        const Eigen::MatrixXcd bond = fwd + fwd.adjoint();
        t.hop += bond;
        t.hop_stag += stagger(j) * bond;
        t.density_stag += stagger(j) * number_operator(basis, j).matrix;
    }
    return t;
}

void check_basis(const ModelParams& params, const ProductBasis& basis) {
    if (!(basis.spin() == params.spin_basis()) || basis.fermion().sites() != params.L ||
        basis.fermion().particles() != params.N)
        throw std::invalid_argument("model: product basis does not match the model parameters");
}

OperatorMatrix kron_term(const Eigen::MatrixXcd& spin, const Eigen::MatrixXcd& fermion,
                         const ProductBasis& basis) {
    const OperatorMatrix s{spin, {basis.spin().dim(), 1}, false, ""};
    const OperatorMatrix f{fermion, {1, basis.fermion().dim()}, false, ""};
    return embed(s, f, basis);
}

}  // namespace

void ModelParams::validate() const {
    require(std::isfinite(J) && J > 0.0, "model.J: must be positive");
    require(std::isfinite(Delta), "model.Delta: must be finite");
    require(std::isfinite(omega) && omega >= 0.0, "model.omega: must be non-negative");
    require(std::isfinite(eta) && eta >= 0.0 && eta < 1.0, "model.eta: must lie in [0, 1)");
    require(std::isfinite(S) && S > 0.0 && std::abs(2.0 * S - std::round(2.0 * S)) < 1e-9,
            "model.S: must be a positive (half-)integer");
    require(L > 0 && L % 2 == 0, "model.L: must be even and positive");
    require(L <= 30, "model.L: too large for dense storage");
    require(N >= 0 && N <= L, "model.N: must lie in [0, L]");
}

DisorderRealization DisorderRealization::sample(int sites, double epsilon0, std::uint64_t seed) {
    if (sites <= 0) throw std::invalid_argument("disorder: site count must be positive");
    if (!(epsilon0 >= 0.0)) throw std::invalid_argument("disorder: epsilon0 must be non-negative");
    DisorderRealization d;
    d.epsilon0 = epsilon0;
    d.seed = seed;
    d.epsilons.resize(static_cast<std::size_t>(sites));
    // Explicit 53-bit mantissa mapping; std::uniform_real_distribution is not portable bit-for-bit.
    std::mt19937_64 rng(seed);
    for (auto& e : d.epsilons) e = epsilon0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return d;
}

DisorderRealization DisorderRealization::uniform(int sites, double value) {
    DisorderRealization d;
    d.epsilon0 = value;
    d.epsilons.assign(static_cast<std::size_t>(sites), value);
    return d;
}

OperatorMatrix build_coupled_hamiltonian(const ModelParams& params, const ProductBasis& basis) {
    params.validate();
    check_basis(params, basis);
    const auto terms = fermion_terms(basis.fermion());
    const auto spin = spin_matrices(basis.spin());
    const int ds = basis.spin().dim();
    const int df = basis.fermion().dim();
    const double g = params.g();

    OperatorMatrix H = kron_term(Eigen::MatrixXcd::Identity(ds, ds), -0.5 * params.J * terms.hop, basis);
    H.matrix += kron_term(-params.omega * spin.sz.matrix, Eigen::MatrixXcd::Identity(df, df), basis).matrix;
    H.matrix += kron_term(spin.sx.matrix, -0.5 * params.J * g * terms.hop_stag, basis).matrix;
    H.matrix += kron_term(spin.sy.matrix, params.Delta * g * terms.density_stag, basis).matrix;
    H.hermitian = true;
    H.label = "coupled";
    return H;
}

Eigen::MatrixXcd rmm_single_particle(int sites, double J, double gamma, double delta_val) {
    if (sites <= 0 || sites % 2 != 0)
        throw std::invalid_argument("rmm: site count must be even and positive");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(sites, sites);
    for (int j = 0; j < sites; ++j) {
        const int next = (j + 1) % sites;
        const double t = -0.5 * J * (1.0 + stagger(j) * gamma);
        h(j, next) += t;
        h(next, j) += t;
        h(j, j) += stagger(j) * delta_val;
    }
    return h;
}

OperatorMatrix build_rmm_hamiltonian(const ModelParams& params, double gamma, double delta_val,
                                     const FermionBasis& basis) {
    const int L = basis.sites();
    const int D = basis.dim();
    OperatorMatrix H{Eigen::MatrixXcd::Zero(D, D), {1, D}, true, "rmm"};
    for (int j = 0; j < L; ++j) {
        const int next = (j + 1) % L;
        const Eigen::MatrixXcd fwd = fermion_bilinear(basis, j, next).matrix;
        H.matrix += -0.5 * params.J * (1.0 + stagger(j) * gamma) * (fwd + fwd.adjoint());
        H.matrix += stagger(j) * delta_val * number_operator(basis, j).matrix;
    }
    return H;
}

OperatorMatrix add_onsite_disorder(const OperatorMatrix& H, const DisorderRealization& disorder,
                                   const ProductBasis& basis) {
    const auto& fb = basis.fermion();
    if (static_cast<int>(disorder.epsilons.size()) != fb.sites())
        throw std::invalid_argument("disorder: realization length does not match L");
    if (H.dim() != basis.dim()) throw std::invalid_argument("disorder: Hamiltonian/basis mismatch");

    std::vector<double> onsite(static_cast<std::size_t>(fb.dim()), 0.0);
    for (int f = 0; f < fb.dim(); ++f)
        for (int j = 0; j < fb.sites(); ++j)
            if (fb.state(f) & (Occupation{1} << j)) onsite[static_cast<std::size_t>(f)] += disorder.epsilons[static_cast<std::size_t>(j)];

    OperatorMatrix out = H;
    for (int i = 0; i < basis.dim(); ++i)
        out.matrix(i, i) += onsite[static_cast<std::size_t>(basis.unflatten(i).second)];
    out.label = H.label + "+disorder";
    return out;
}

OperatorMatrix build_current_operator(int bond, const ModelParams& params, const ProductBasis& basis) {
    const int L = params.L;
    if (bond < 0 || bond >= L) throw std::out_of_range("current operator: bond index out of range");
    check_basis(params, basis);
    const int next = (bond + 1) % L;
    const Eigen::MatrixXcd fwd = fermion_bilinear(basis.fermion(), next, bond).matrix;
    const Eigen::MatrixXcd flow = cplx(0.0, -0.5 * params.J) * (fwd - fwd.adjoint());

    const auto spin = spin_matrices(basis.spin());
    const int ds = basis.spin().dim();
    const Eigen::MatrixXcd modulation =
        Eigen::MatrixXcd::Identity(ds, ds) + stagger(bond) * params.g() * spin.sx.matrix;
    OperatorMatrix j = kron_term(modulation, flow, basis);
    j.hermitian = true;
    j.label = "J_" + std::to_string(bond);
    return j;
}

}  // namespace autopump
