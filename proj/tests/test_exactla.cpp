#include <doctest.h>

#include <random>

#include "cubix/exactla.hpp"

using namespace cubix;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, int max_abs) {
    std::uniform_int_distribution<std::size_t> dim(0, max_dim);
    std::uniform_int_distribution<int> val(-max_abs, max_abs);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = val(rng);
    return m;
}

// random unimodular matrix as a product of elementary operations
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMatrix t = IntMatrix::identity(n);
    if (n == 0) return t;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> val(-2, 2);
    for (int k = 0; k < 12; ++k) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Int f = val(rng);
        for (std::size_t c = 0; c < n; ++c) t.at(i, c) += f * t.at(j, c);
    }
    return t;
}

void check_snf_contract(const IntMatrix& a) {
    SmithDecomposition s = snf(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    // d diagonal, positives first, divisibility chain
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
    const auto& f = s.invariant_factors;
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i] > 0);
        CHECK(s.d.at(i, i) == f[i]);
        if (i + 1 < f.size()) CHECK(f[i + 1] % f[i] == 0);
    }
    for (std::size_t i = f.size(); i < std::min(s.d.rows(), s.d.cols()); ++i)
        CHECK(s.d.at(i, i) == 0);
}

}  // namespace

TEST_CASE("snf of diag(2,3)") {
    IntMatrix a = IntMatrix::of({{2, 0}, {0, 3}});
    SmithDecomposition s = snf(a);
    CHECK(s.d == IntMatrix::of({{1, 0}, {0, 6}}));
    CHECK(s.invariant_factors == std::vector<Int>{1, 6});
    check_snf_contract(a);
}

TEST_CASE("snf of identity and zero") {
    IntMatrix id3 = IntMatrix::identity(3);
    SmithDecomposition s = snf(id3);
    CHECK(s.d == id3);
    CHECK(s.invariant_factors == std::vector<Int>{1, 1, 1});

    IntMatrix z = IntMatrix::zero(2, 3);
    SmithDecomposition sz = snf(z);
    CHECK(sz.d == z);
    CHECK(sz.invariant_factors.empty());
}

TEST_CASE("snf handles degenerate shapes") {
    check_snf_contract(IntMatrix::zero(0, 3));
    check_snf_contract(IntMatrix::zero(3, 0));
    check_snf_contract(IntMatrix::zero(0, 0));
}

TEST_CASE("snf is deterministic") {
    IntMatrix a = IntMatrix::of({{4, -6, 2}, {6, 12, 9}, {0, 5, -5}});
    SmithDecomposition s1 = snf(a), s2 = snf(a);
    CHECK(s1.u == s2.u);
    CHECK(s1.v == s2.v);
    CHECK(s1.d == s2.d);
}

TEST_CASE("kernel_basis on small examples") {
    // [1 1] -> span{(1,-1)}
    IntMatrix a = IntMatrix::of({{1, 1}});
    IntMatrix k = kernel_basis(a);
    REQUIRE(k.cols() == 1);
    CHECK((a * k).is_zero());
    CHECK(lattice_contains(k, {Int(1), Int(-1)}));

    CHECK(kernel_basis(IntMatrix::identity(2)).cols() == 0);

    IntMatrix z = kernel_basis(IntMatrix::zero(1, 2));
    CHECK(z.cols() == 2);
    CHECK(is_unimodular(z));
}

TEST_CASE("kernel_basis saturation (property)") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int t = 0; t < 120; ++t) {
        IntMatrix a = random_matrix(rng, 5, 6);
        IntMatrix k = kernel_basis(a);
        CHECK((a * k).is_zero());
        // random kernel elements are integer combinations of the basis
        if (k.cols() > 0) {
            std::vector<Int> coeff(k.cols());
            for (auto& c : coeff) c = val(rng);
            std::vector<Int> x = k.apply(coeff);
            CHECK(lattice_contains(k, x));
        }
    }
}

TEST_CASE("solve examples") {
    CHECK(*solve(IntMatrix::of({{2}}), {Int(4)}) == std::vector<Int>{2});
    CHECK(!solve(IntMatrix::of({{2}}), {Int(3)}).has_value());
    auto x = solve(IntMatrix::of({{1, 2}, {3, 4}}), {Int(5), Int(11)});
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<Int>{1, 2});
    CHECK_THROWS_AS((void)solve(IntMatrix::of({{1, 2}}), {Int(1), Int(2)}),
                    std::invalid_argument);
}

TEST_CASE("solve round-trips on random solvable systems") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int t = 0; t < 150; ++t) {
        IntMatrix a = random_matrix(rng, 5, 7);
        std::vector<Int> x0(a.cols());
        for (auto& v : x0) v = val(rng);
        std::vector<Int> b = a.apply(x0);
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(a.apply(*x) == b);
    }
}

TEST_CASE("cokernel_invariants examples") {
    FgAbGroup g = cokernel_invariants(IntMatrix::of({{6, 0}, {0, 4}}));
    CHECK(g.rank == 0);
    CHECK(g.torsion == std::vector<Int>{2, 12});

    FgAbGroup fr = cokernel_invariants(IntMatrix::zero(3, 0));
    CHECK(fr.rank == 3);
    CHECK(fr.torsion.empty());

    CHECK(cokernel_invariants(IntMatrix::of({{1}})).trivial());
}

TEST_CASE("cokernel invariant under unimodular change of basis") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        IntMatrix a = random_matrix(rng, 4, 5);
        FgAbGroup g = cokernel_invariants(a);
        IntMatrix l = random_unimodular(rng, a.rows());
        IntMatrix r = random_unimodular(rng, a.cols());
        CHECK(cokernel_invariants(l * a * r) == g);
    }
}

TEST_CASE("snf contract holds on random matrices") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) check_snf_contract(random_matrix(rng, 6, 9));
}

TEST_CASE("column_lattice_basis spans the same lattice") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int t = 0; t < 80; ++t) {
        IntMatrix g = random_matrix(rng, 5, 5);
        IntMatrix b = column_lattice_basis(g);
        // every generator is in the basis lattice
        for (std::size_t j = 0; j < g.cols(); ++j) CHECK(lattice_contains(b, g.column(j)));
        // every basis vector is in the generator lattice (via solve on g)
        for (std::size_t j = 0; j < b.cols(); ++j) CHECK(solve(g, b.column(j)).has_value());
        // columns are independent: rank equals cols
        CHECK(kernel_basis(b).cols() == 0);
        (void)val;
    }
}

TEST_CASE("LatticeBuilder reports growth and ranks") {
    LatticeBuilder lb(3);
    CHECK(lb.add({Int(2), Int(0), Int(0)}));
    CHECK(!lb.add({Int(4), Int(0), Int(0)}));
    CHECK(lb.add({Int(1), Int(0), Int(0)}));  // refines pivot 2 -> 1
    CHECK(lb.add({Int(0), Int(0), Int(5)}));
    CHECK(lb.rank() == 2);
}

TEST_CASE("determinant") {
    CHECK(determinant(IntMatrix::of({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(IntMatrix::identity(4)) == 1);
    CHECK(determinant(IntMatrix::of({{2, 4}, {1, 2}})) == 0);
    CHECK(determinant(IntMatrix::of({{0, 1}, {1, 0}})) == -1);
}

TEST_CASE("FgAbGroup canonical forms") {
    CHECK(FgAbGroup::parse("Z").to_string() == "Z");
    CHECK(FgAbGroup::parse("Z/6").torsion == std::vector<Int>{6});
    CHECK(FgAbGroup::parse("Z+Z/2").to_string() == "Z+Z/2");
    CHECK(FgAbGroup::parse("Z^2+Z/2+Z/4").rank == 2);
    CHECK(FgAbGroup::parse("0").trivial());
    // non-chain torsion input gets canonicalized: Z/2 + Z/3 = Z/6
    CHECK(FgAbGroup::parse("Z/2+Z/3") == FgAbGroup::parse("Z/6"));
    CHECK(FgAbGroup::direct_sum(FgAbGroup::cyclic(2), FgAbGroup::cyclic(4)).torsion ==
          std::vector<Int>{2, 4});
    CHECK(FgAbGroup::direct_sum(FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)).torsion ==
          std::vector<Int>{6});
    CHECK_THROWS(FgAbGroup::parse("Q"));
}
