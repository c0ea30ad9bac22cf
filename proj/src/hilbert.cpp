// hilbert.cpp
#include "autopump/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace autopump {

namespace {

constexpr int kMaxSites = 30;

Occupation bit(int site) { return Occupation{1} << site; }

// Occupied sites strictly between positions a and b.
int occupied_between(Occupation pattern, int a, int b) {
    if (a > b) std::swap(a, b);
    if (b - a < 2) return 0;
    const Occupation mask = (bit(b) - 1) & ~(bit(a + 1) - 1);
    return std::popcount(pattern & mask);
}

}  // namespace

FermionBasis::FermionBasis(int sites, int particles) : sites_(sites), particles_(particles) {
    if (sites <= 0 || sites % 2 != 0)
        throw std::invalid_argument("fermion basis: L must be even and positive, got " +
                                    std::to_string(sites));
    if (sites > kMaxSites)
        throw std::invalid_argument("fermion basis: L too large for dense storage");
    if (particles < 0 || particles > sites)
        throw std::invalid_argument("fermion basis: N must lie in [0, L], got " +
                                    std::to_string(particles));
    const Occupation end = bit(sites);
    for (Occupation s = 0; s < end; ++s)
        if (std::popcount(s) == particles) states_.push_back(s);
}

int FermionBasis::index_of(Occupation pattern) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), pattern);
    if (it == states_.end() || *it != pattern) return -1;
    return static_cast<int>(it - states_.begin());
}

FermionBasis build_fermion_basis(int sites, int particles) { return FermionBasis(sites, particles); }

SpinBasis SpinBasis::from_twice(int twice_spin) {
    if (twice_spin < 0) throw std::invalid_argument("spin basis: S must be non-negative");
    return SpinBasis(twice_spin);
}

SpinBasis SpinBasis::from_value(double spin) {
    const double twice = 2.0 * spin;
    const double rounded = std::round(twice);
    if (!(spin >= 0.0) || std::abs(twice - rounded) > 1e-9)
        throw std::invalid_argument("spin basis: S must be a non-negative (half-)integer");
    return SpinBasis(static_cast<int>(rounded));
}

double OperatorMatrix::hermiticity_defect() const {
    if (matrix.size() == 0) return 0.0;
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix fermion_bilinear(const FermionBasis& basis, int creation_site, int annihilation_site) {
    const int L = basis.sites();
    if (creation_site < 0 || creation_site >= L || annihilation_site < 0 || annihilation_site >= L)
        throw std::out_of_range("fermion_bilinear: site index out of range");

    const int D = basis.dim();
    OperatorMatrix op;
    op.matrix = Eigen::MatrixXcd::Zero(D, D);
    op.shape = {1, D};
    op.hermitian = creation_site == annihilation_site;
    op.label = "c+_" + std::to_string(creation_site) + " c_" + std::to_string(annihilation_site);

    for (int col = 0; col < D; ++col) {
        const Occupation s = basis.state(col);
        if (!(s & bit(annihilation_site))) continue;
        if (creation_site == annihilation_site) {
            op.matrix(col, col) = 1.0;
            continue;
        }
        const Occupation removed = s & ~bit(annihilation_site);
        if (removed & bit(creation_site)) continue;
        const Occupation target = removed | bit(creation_site);
        const int parity = occupied_between(removed, creation_site, annihilation_site);
        op.matrix(basis.index_of(target), col) = (parity % 2 == 0) ? 1.0 : -1.0;
    }
    return op;
}

OperatorMatrix number_operator(const FermionBasis& basis, int site) {
    OperatorMatrix n = fermion_bilinear(basis, site, site);
    n.label = "n_" + std::to_string(site);
    return n;
}

OperatorMatrix fermion_identity(const FermionBasis& basis) {
    return {Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()), {1, basis.dim()}, true, "1_f"};
}

SpinOperators spin_matrices(const SpinBasis& basis) {
    const int d = basis.dim();
    const double S = basis.spin();
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = basis.m(i);
        sz(i, i) = m;
        if (i + 1 < d) sp(i + 1, i) = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
    }
    const Eigen::MatrixXcd sm = sp.adjoint();
    const OperatorShape shape{d, 1};
    SpinOperators ops;
    ops.sx = {0.5 * (sp + sm), shape, true, "Sx"};
    ops.sy = {cplx(0.0, -0.5) * (sp - sm), shape, true, "Sy"};
    ops.sz = {sz, shape, true, "Sz"};
    ops.splus = {sp, shape, false, "S+"};
    ops.sminus = {sm, shape, false, "S-"};
    return ops;
}

OperatorMatrix spin_identity(const SpinBasis& basis) {
    return {Eigen::MatrixXcd::Identity(basis.dim(), basis.dim()), {basis.dim(), 1}, true, "1_s"};
}

OperatorMatrix embed(const OperatorMatrix& spin_op, const OperatorMatrix& fermion_op,
                     const ProductBasis& basis) {
    const int ds = basis.spin().dim();
    const int df = basis.fermion().dim();
    if (spin_op.shape != OperatorShape{ds, 1} || spin_op.dim() != ds)
        throw std::invalid_argument("embed: spin factor does not match the product basis");
    if (fermion_op.shape != OperatorShape{1, df} || fermion_op.dim() != df)
        throw std::invalid_argument("embed: fermion factor does not match the product basis");

    OperatorMatrix out;
    out.matrix.resize(ds * df, ds * df);
    for (int a = 0; a < ds; ++a)
        for (int c = 0; c < ds; ++c)
            out.matrix.block(a * df, c * df, df, df) = spin_op.matrix(a, c) * fermion_op.matrix;
    out.shape = {ds, df};
    out.hermitian = spin_op.hermitian && fermion_op.hermitian;
    out.label = spin_op.label + " (x) " + fermion_op.label;
    return out;
}

OperatorMatrix embed_spin(const OperatorMatrix& spin_op, const ProductBasis& basis) {
    return embed(spin_op, fermion_identity(basis.fermion()), basis);
}

OperatorMatrix embed_fermion(const OperatorMatrix& fermion_op, const ProductBasis& basis) {
    return embed(spin_identity(basis.spin()), fermion_op, basis);
}

}  // namespace autopump
