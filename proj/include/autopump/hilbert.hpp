// hilbert.hpp: fermion/spin bases and elementary operator matrices
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace autopump {

using cplx = std::complex<double>;
using Occupation = std::uint32_t;

// Spinless fermions on L sites at fixed particle number N. Site j is bit j of
// the occupation pattern; states are stored in ascending pattern order.
class FermionBasis {
public:
    FermionBasis(int sites, int particles);

    int sites() const { return sites_; }
    int particles() const { return particles_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<Occupation>& states() const { return states_; }
    Occupation state(int index) const { return states_[static_cast<std::size_t>(index)]; }

    // Ordinal of an occupation pattern, or -1 if it is not in this sector.
    int index_of(Occupation pattern) const;

    bool operator==(const FermionBasis& other) const {
        return sites_ == other.sites_ && particles_ == other.particles_;
    }

private:
    int sites_;
    int particles_;
    std::vector<Occupation> states_;
};

FermionBasis build_fermion_basis(int sites, int particles);

// Spin-S multiplet in the S_z eigenbasis, ordered by ascending m.
// S is held as the integer 2S so half-integers are exact.
class SpinBasis {
public:
    static SpinBasis from_twice(int twice_spin);
    // Throws unless 2S is a non-negative integer.
    static SpinBasis from_value(double spin);

    double spin() const { return 0.5 * twice_spin_; }
    int twice_spin() const { return twice_spin_; }
    int dim() const { return twice_spin_ + 1; }
    double m(int index) const { return -spin() + index; }

    bool operator==(const SpinBasis& other) const { return twice_spin_ == other.twice_spin_; }

private:
    explicit SpinBasis(int twice_spin) : twice_spin_(twice_spin) {}
    int twice_spin_;
};

// (spin level) x (fermion configuration); composite = spin_index * fermion_dim + fermion_index.
class ProductBasis {
public:
    ProductBasis(SpinBasis spin, FermionBasis fermion)
        : spin_(std::move(spin)), fermion_(std::move(fermion)) {}

    const SpinBasis& spin() const { return spin_; }
    const FermionBasis& fermion() const { return fermion_; }
    int dim() const { return spin_.dim() * fermion_.dim(); }

    int flatten(int spin_index, int fermion_index) const {
        return spin_index * fermion_.dim() + fermion_index;
    }
    std::pair<int, int> unflatten(int composite) const {
        return {composite / fermion_.dim(), composite % fermion_.dim()};
    }

private:
    SpinBasis spin_;
    FermionBasis fermion_;
};

// Which factor space a matrix acts on. Pure spin operators have fermion_dim 1
// and vice versa; operators on a ProductBasis carry both.
struct OperatorShape {
    int spin_dim = 1;
    int fermion_dim = 1;
    int dim() const { return spin_dim * fermion_dim; }
    bool operator==(const OperatorShape&) const = default;
};

struct OperatorMatrix {
    Eigen::MatrixXcd matrix;
    OperatorShape shape;
    bool hermitian = false;
    std::string label;

    int dim() const { return static_cast<int>(matrix.rows()); }
    // max |A - A^dagger| entrywise
    double hermiticity_defect() const;
};

OperatorMatrix fermion_bilinear(const FermionBasis& basis, int creation_site, int annihilation_site);
OperatorMatrix number_operator(const FermionBasis& basis, int site);
OperatorMatrix fermion_identity(const FermionBasis& basis);

struct SpinOperators {
    OperatorMatrix sx, sy, sz, splus, sminus;
};

SpinOperators spin_matrices(const SpinBasis& basis);
OperatorMatrix spin_identity(const SpinBasis& basis);

// Kronecker product over a ProductBasis; throws std::invalid_argument on factor mismatch.
OperatorMatrix embed(const OperatorMatrix& spin_op, const OperatorMatrix& fermion_op,
                     const ProductBasis& basis);
OperatorMatrix embed_spin(const OperatorMatrix& spin_op, const ProductBasis& basis);
OperatorMatrix embed_fermion(const OperatorMatrix& fermion_op, const ProductBasis& basis);

}  // namespace autopump
