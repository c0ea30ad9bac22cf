#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autopump/hilbert.hpp"
#include "oracles.hpp"

using namespace autopump;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXcd comm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("fermion basis dimensions and lookup") {
    const FermionBasis b(8, 4);
    CHECK(b.dim() == 70);
    for (int i = 0; i < b.dim(); ++i) CHECK(b.index_of(b.state(i)) == i);
    CHECK(std::is_sorted(b.states().begin(), b.states().end()));
    CHECK(b.index_of(0b11111) == -1);
    CHECK(FermionBasis(6, 0).dim() == 1);
    CHECK(FermionBasis(6, 6).dim() == 1);
    CHECK_THROWS_AS(FermionBasis(7, 3), std::invalid_argument);
    CHECK_THROWS_AS(FermionBasis(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(FermionBasis(32, 2), std::invalid_argument);
}

TEST_CASE("bilinears agree with the Jordan-Wigner construction") {
    for (auto [L, N] : {std::pair{4, 1}, {4, 2}, {4, 3}, {6, 3}, {6, 2}}) {
        const FermionBasis b(L, N);
        const oracle::Fock f(L);
        const auto idx = oracle::sector(L, N);
        REQUIRE(static_cast<int>(idx.size()) == b.dim());
        for (int a = 0; a < L; ++a)
            for (int c = 0; c < L; ++c) {
                const auto ours = fermion_bilinear(b, a, c).matrix;
                const auto ref = oracle::restrict_to(f.hop(a, c), idx);
                CHECK(max_abs(ours - ref) < 1e-14);
            }
    }
}

TEST_CASE("bilinear algebra inside a particle-number sector") {
    const FermionBasis b(6, 3);
    const int L = b.sites();
    auto E = [&](int i, int j) { return fermion_bilinear(b, i, j).matrix; };
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            for (int k = 0; k < L; ++k)
                for (int l = 0; l < L; ++l) {
                    // [c+_i c_j, c+_k c_l] = delta_jk c+_i c_l - delta_il c+_k c_j
                    Eigen::MatrixXcd expected = zero;
                    if (j == k) expected += E(i, l);
                    if (i == l) expected -= E(k, j);
                    CHECK(max_abs(comm(E(i, j), E(k, l)) - expected) < 1e-13);
                }
    Eigen::MatrixXcd total = zero;
    for (int i = 0; i < L; ++i) {
        const auto n = number_operator(b, i).matrix;
        CHECK(max_abs(n * n - n) < 1e-14);
        total += n;
    }
    CHECK(max_abs(total - 3.0 * fermion_identity(b).matrix) < 1e-14);
}

TEST_CASE("spin matrices") {
    for (int twice : {1, 2, 3, 4, 20}) {
        const auto basis = SpinBasis::from_twice(twice);
        const double S = basis.spin();
        const auto s = spin_matrices(basis);
        const oracle::Spin ref(S);
        CHECK(max_abs(s.sx.matrix - ref.x) < 1e-14);
        CHECK(max_abs(s.sy.matrix - ref.y) < 1e-14);
        CHECK(max_abs(s.sz.matrix - ref.z) < 1e-14);
        const cplx i(0, 1);
        CHECK(max_abs(comm(s.sx.matrix, s.sy.matrix) - i * s.sz.matrix) < 1e-12);
        CHECK(max_abs(comm(s.sy.matrix, s.sz.matrix) - i * s.sx.matrix) < 1e-12);
        CHECK(max_abs(comm(s.sz.matrix, s.sx.matrix) - i * s.sy.matrix) < 1e-12);
        const Eigen::MatrixXcd casimir = s.sx.matrix * s.sx.matrix + s.sy.matrix * s.sy.matrix + s.sz.matrix * s.sz.matrix;
        CHECK(max_abs(casimir - S * (S + 1) * spin_identity(basis).matrix) < 1e-12);
        CHECK(max_abs(s.splus.matrix - s.sminus.matrix.adjoint()) < 1e-15);
        CHECK(s.sx.hermiticity_defect() == 0.0);
    }
    CHECK(SpinBasis::from_value(2.5).dim() == 6);
    CHECK_THROWS(SpinBasis::from_value(2.3));
    CHECK_THROWS(SpinBasis::from_value(-1.0));
}

TEST_CASE("product basis and embedding") {
    const ProductBasis pb(SpinBasis::from_twice(2), FermionBasis(4, 2));
    CHECK(pb.dim() == 18);
    for (int i = 0; i < pb.dim(); ++i) {
        const auto [s, f] = pb.unflatten(i);
        CHECK(pb.flatten(s, f) == i);
    }
    const auto s = spin_matrices(pb.spin());
    const auto n1 = number_operator(pb.fermion(), 1);
    const auto e = embed(s.sx, n1, pb);
    CHECK(max_abs(e.matrix - oracle::kron(s.sx.matrix, n1.matrix)) < 1e-15);
    CHECK(e.shape == OperatorShape{3, 6});
    CHECK(max_abs(embed_spin(s.sz, pb).matrix - oracle::kron(s.sz.matrix, Eigen::MatrixXcd::Identity(6, 6))) == 0.0);
    CHECK_THROWS_AS(embed(n1, s.sx, pb), std::invalid_argument);
    const auto wrong = spin_matrices(SpinBasis::from_twice(3));
    CHECK_THROWS_AS(embed_spin(wrong.sx, pb), std::invalid_argument);
}
