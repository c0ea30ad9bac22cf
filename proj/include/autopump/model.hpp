// model.hpp: coupled spin-fermion Hamiltonian, Rice-Mele reference, disorder, current
#pragma once

#include <cstdint>
#include <vector>

#include "autopump/hilbert.hpp"

namespace autopump {

// Energies are in units where hbar = 1. Sites are 0..L-1 on a ring.
struct ModelParams {
    double J = 1.0;       // hopping scale
    double Delta = 1.0;   // on-site coupling scale
    double omega = 0.25;  // Larmor frequency
    double eta = 0.95;    // coupling strength, g = eta / S
    double S = 10.0;
    int L = 8;
    int N = 4;

    double g() const { return eta / S; }
    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    SpinBasis spin_basis() const { return SpinBasis::from_value(S); }
    FermionBasis fermion_basis() const { return FermionBasis(L, N); }
    ProductBasis product_basis() const { return {spin_basis(), fermion_basis()}; }
};

// On-site energies drawn uniformly from [0, epsilon0).
struct DisorderRealization {
    std::vector<double> epsilons;
    double epsilon0 = 0.0;
    std::uint64_t seed = 0;

    static DisorderRealization sample(int sites, double epsilon0, std::uint64_t seed);
    static DisorderRealization uniform(int sites, double value);
};

// Seed of realization r in an ensemble.
inline std::uint64_t realization_seed(std::uint64_t base_seed, int r) {
    return base_seed + static_cast<std::uint64_t>(r);
}

OperatorMatrix build_coupled_hamiltonian(const ModelParams& params, const ProductBasis& basis);

OperatorMatrix build_rmm_hamiltonian(const ModelParams& params, double gamma, double delta_val,
                                     const FermionBasis& basis);

// L x L single-particle Rice-Mele matrix: hopping -(J/2)(1 + (-1)^j gamma) on bond (j, j+1),
// on-site (-1)^j delta_val.
Eigen::MatrixXcd rmm_single_particle(int sites, double J, double gamma, double delta_val);

OperatorMatrix add_onsite_disorder(const OperatorMatrix& H, const DisorderRealization& disorder,
                                   const ProductBasis& basis);

// J_l = -i (J/2) (1 + (-1)^l g Sx) (c+_{l+1} c_l - c+_l c_{l+1}).
// With Heisenberg operators A(t) = exp(-iHt) A exp(iHt), dn_l/dt = -i[H, n_l] = J_{l-1} - J_l,
// so J_l is the particle flow from site l to site l+1.
OperatorMatrix build_current_operator(int bond, const ModelParams& params, const ProductBasis& basis);

}  // namespace autopump
