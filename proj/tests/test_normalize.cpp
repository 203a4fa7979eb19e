#include <doctest.h>

#include "cubix/normalize.hpp"

using namespace cubix;

namespace {

AugmentedShape to_point(Shape s) {
    AugmentedShape a;
    std::size_t verts = std::holds_alternative<FinPresimplicialSet>(s)
                            ? std::get<FinPresimplicialSet>(s).count(0)
                            : std::get<FinPseudocubicalSet>(s).count(0);
    a.shape = std::move(s);
    a.target = {"pt"};
    a.aug.assign(verts, 0);
    return a;
}

std::vector<FgAbGroup> homology_list(const ChainComplex& c, std::size_t through) {
    std::vector<FgAbGroup> h;
    for (std::size_t n = 0; n <= through; ++n)
        h.push_back(n < c.terms.size() ? homology(c, n) : FgAbGroup{});
    return h;
}

FgAbGroup Z() { return FgAbGroup::free(1); }
FgAbGroup Z2() { return FgAbGroup{2, {}}; }
FgAbGroup triv() { return FgAbGroup{}; }

// one-vertex precubical circle: vertex p, edge e, both faces p, no degeneracies
FinPseudocubicalSet precubical_circle() {
    FinPseudocubicalSet x;
    x.cells = {{"p"}, {"e"}};
    x.face.resize(2);
    x.face[1].resize(1);
    x.face[1][0][0] = {0};
    x.face[1][0][1] = {0};
    x.has_degeneracies = false;
    return x;
}

}  // namespace

TEST_CASE("K of the circle has zero boundary and H = (Z, Z)") {
    ChainComplex k = unnormalized_K(std::get<FinPresimplicialSet>(builtin_model("s1-delta")));
    CHECK(k.boundary(1).is_zero());
    CHECK(homology(k, 0) == Z());
    CHECK(homology(k, 1) == Z());
}

TEST_CASE("K of the full 2-simplex has the alternating-sum boundary") {
    FinPresimplicialSet s;
    s.cells = {{"0", "1", "2"}, {"01", "02", "12"}, {"012"}};
    s.face.resize(3);
    s.face[1] = {{1, 2, 2}, {0, 0, 1}};        // d_0 = target, d_1 = source
    s.face[2] = {{2}, {1}, {0}};               // d_0 = 12, d_1 = 02, d_2 = 01
    REQUIRE(validate_presimplicial(s).ok);
    ChainComplex k = unnormalized_K(s);
    // d[012] = [12] - [02] + [01]
    CHECK(k.boundary(2) == IntMatrix::of({{1}, {-1}, {1}}));
    CHECK(homology(k, 0) == Z());
    CHECK(homology(k, 1) == triv());
    CHECK(homology(k, 2) == triv());
}

TEST_CASE("K of a single vertex is Z in degree 0") {
    ChainComplex k = unnormalized_K(std::get<FinPresimplicialSet>(builtin_model("point-delta")));
    CHECK(k.terms.size() == 1);
    CHECK(homology(k, 0) == Z());
}

TEST_CASE("Delta-model homology via the SNF pipeline") {
    auto h_of = [&](const char* name, std::size_t through) {
        return homology_list(
            unnormalized_K(std::get<FinPresimplicialSet>(builtin_model(name))), through);
    };
    CHECK(h_of("s2-delta", 2) == std::vector<FgAbGroup>{Z(), triv(), Z()});
    CHECK(h_of("torus-delta", 2) == std::vector<FgAbGroup>{Z(), Z2(), Z()});
    CHECK(h_of("rp2-delta", 2) == std::vector<FgAbGroup>{Z(), FgAbGroup::cyclic(2), triv()});
    CHECK(h_of("klein-delta", 2) ==
          std::vector<FgAbGroup>{Z(), FgAbGroup{1, {2}}, triv()});
}

TEST_CASE("C of point-cube: all boundaries vanish, H_n = Z below truncation") {
    ChainComplex c = unnormalized_C(std::get<FinPseudocubicalSet>(builtin_model("point-cube")));
    for (std::size_t n = 1; n <= 3; ++n) CHECK(c.boundary(n).is_zero());
    CHECK(homology(c, 0) == Z());
    CHECK(homology(c, 1) == Z());
    CHECK(homology(c, 2) == Z());
}

TEST_CASE("C of s1-cube: boundary of e vanishes, degenerate classes pollute H_1") {
    auto x = std::get<FinPseudocubicalSet>(builtin_model("s1-cube"));
    ChainComplex c = unnormalized_C(x);
    CHECK(c.boundary(1).column(0) == std::vector<Int>{0});  // d(e) = 0
    CHECK(homology(c, 0) == Z());
    CHECK(homology(c, 1) == Z2());  // e plus a spurious degenerate class
}

TEST_CASE("C of torus-cube: the square has zero boundary") {
    auto x = std::get<FinPseudocubicalSet>(builtin_model("torus-cube"));
    ChainComplex c = unnormalized_C(x);
    for (const Int& v : c.boundary(2).column(0)) CHECK(v == 0);  // Q is cell 0
}

TEST_CASE("sigma: degree 0 identity, point-cube kills higher degrees") {
    auto pt = std::get<FinPseudocubicalSet>(builtin_model("point-cube"));
    SigmaEndomorphism s = sigma_endomorphism(pt);
    CHECK(s.sigma[0].is_identity());
    for (std::size_t n = 1; n <= 3; ++n) CHECK(s.sigma[n].is_zero());
}

TEST_CASE("sigma on torus-cube degree 1: fixes the classes of a and b, kills s1(p)") {
    auto x = std::get<FinPseudocubicalSet>(builtin_model("torus-cube"));
    SigmaEndomorphism s = sigma_endomorphism(x);
    // basis order (a, b, s1(p))
    CHECK(s.sigma[1] == IntMatrix::of({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}}));
}

TEST_CASE("sigma rejects shapes without degeneracies") {
    CHECK_THROWS_AS((void)sigma_endomorphism(precubical_circle()), std::invalid_argument);
}

TEST_CASE("normalized_sigma on the builtin models") {
    auto pt = normalized_sigma(std::get<FinPseudocubicalSet>(builtin_model("point-cube")));
    CHECK(pt.complex.terms[0].generators == 1);
    CHECK(pt.complex.terms[1].generators == 0);
    CHECK(pt.complex.terms[2].generators == 0);
    CHECK(homology(pt.complex, 0) == Z());
    CHECK(homology(pt.complex, 1) == triv());
    CHECK(homology(pt.complex, 2) == triv());

    auto s1 = normalized_sigma(std::get<FinPseudocubicalSet>(builtin_model("s1-cube")));
    CHECK(s1.complex.terms[0].generators == 1);
    CHECK(s1.complex.terms[1].generators == 1);
    CHECK(s1.complex.terms[2].generators == 0);
    CHECK(homology(s1.complex, 0) == Z());
    CHECK(homology(s1.complex, 1) == Z());

    auto t2 = normalized_sigma(std::get<FinPseudocubicalSet>(builtin_model("torus-cube")));
    CHECK(homology_list(t2.complex, 2) == std::vector<FgAbGroup>{Z(), Z2(), Z()});

    // N is a retract of C: pi_2 i_2 = 1 holds by the splitting contract
    for (std::size_t n = 0; n < t2.complex.terms.size(); ++n)
        CHECK((t2.splitting.projection.maps[n] * t2.splitting.inclusion.maps[n]).is_identity());
}

TEST_CASE("normalized_kernel matches normalized_sigma homology on builtin models") {
    for (const char* name : {"point-cube", "s1-cube", "torus-cube", "klein-cube"}) {
        auto x = std::get<FinPseudocubicalSet>(builtin_model(name));
        auto via_sigma = normalized_sigma(x);
        auto via_kernel = normalized_kernel(x);
        for (std::size_t n = 0; n + 1 < x.cells.size(); ++n)
            CHECK_MESSAGE(homology(via_sigma.complex, n) == homology(via_kernel.complex, n),
                          name, " degree ", n);
    }
}

TEST_CASE("normalized homology golden values for the cubical models") {
    auto n_of = [&](const char* name, std::size_t through) {
        return homology_list(
            normalized_kernel(std::get<FinPseudocubicalSet>(builtin_model(name))).complex,
            through);
    };
    CHECK(n_of("point-cube", 2) == std::vector<FgAbGroup>{Z(), triv(), triv()});
    CHECK(n_of("s1-cube", 1) == std::vector<FgAbGroup>{Z(), Z()});
    CHECK(n_of("torus-cube", 2) == std::vector<FgAbGroup>{Z(), Z2(), Z()});
    CHECK(n_of("klein-cube", 2) == std::vector<FgAbGroup>{Z(), FgAbGroup{1, {2}}, triv()});
}

TEST_CASE("kernel form without degeneracies: the one-vertex precubical circle") {
    // Ker(d_1^1) is trivial here, so N sees only (Z, 0); C still sees (Z, Z)
    FinPseudocubicalSet x = precubical_circle();
    KernelNormalized n = normalized_kernel(x);
    CHECK(n.complex.terms[0].generators == 1);
    CHECK(n.complex.terms[1].generators == 0);
    CHECK(homology(n.complex, 0) == Z());
    CHECK(homology(n.complex, 1) == triv());
    ChainComplex c = unnormalized_C(x);
    CHECK(homology(c, 0) == Z());
    CHECK(homology(c, 1) == Z());
}

TEST_CASE("unnormalized failure witness: point-cube") {
    auto x = std::get<FinPseudocubicalSet>(builtin_model("point-cube"));
    ChainComplex c = unnormalized_C(x);
    ChainComplex n = normalized_kernel(x).complex;
    for (std::size_t deg = 1; deg <= 2; ++deg) {
        CHECK(homology(c, deg) == Z());
        CHECK(homology(n, deg) == triv());
    }
}

TEST_CASE("normalization agreement on every degeneracy-bearing model") {
    for (const char* name : {"point-cube", "s1-cube", "torus-cube", "klein-cube"})
        CHECK_MESSAGE(verify_normalization_agreement(
                          std::get<FinPseudocubicalSet>(builtin_model(name))),
                      name);
}

TEST_CASE("contraction certificates hold for cech shapes") {
    CHECK(presimplicial_contraction_certificate(cech_presimplicial({0, 0}, 1, 3), 2));
    CHECK(presimplicial_contraction_certificate(cech_presimplicial({0, 1, 1}, 2, 3), 2));
    CHECK(cubical_contraction_certificate(cech_pseudocubical({0, 0}, 1, 3), 2));
    CHECK(cubical_contraction_certificate(cech_pseudocubical({0, 1, 1}, 2, 3), 2));
}

TEST_CASE("certificates agree with homology-based acyclicity on small instances") {
    for (std::vector<std::size_t> f : {std::vector<std::size_t>{0}, {0, 0}, {0, 1}}) {
        std::size_t b = 1 + *std::max_element(f.begin(), f.end());
        AugmentedShape sa = cech_presimplicial(f, b, 3);
        CHECK(presimplicial_contraction_certificate(sa, 2));
        CHECK(is_acyclic(unnormalized_K(sa), 2));

        AugmentedShape ca = cech_pseudocubical(f, b, 3);
        CHECK(cubical_contraction_certificate(ca, 2));
        CHECK(is_acyclic(normalized_kernel(ca), 2));
    }
}

TEST_CASE("the circle augmented over a point is not acyclic") {
    AugmentedShape a = to_point(builtin_model("s1-delta"));
    CHECK(!is_acyclic(unnormalized_K(a), 1));
}

TEST_CASE("hom of a cech shape stays acyclic (probe of size 2)") {
    AugmentedShape h = hom_shape(2, cech_presimplicial({0, 0}, 1, 3));
    CHECK(is_acyclic(unnormalized_K(h), 2));
    CHECK(presimplicial_contraction_certificate(h, 2));

    AugmentedShape hc = hom_shape(2, cech_pseudocubical({0, 0}, 1, 2));
    CHECK(cubical_contraction_certificate(hc, 1));
    CHECK(is_acyclic(normalized_kernel(hc), 1));
}

TEST_CASE("certified_through reflects the truncation rules") {
    CHECK(certified_through(builtin_model("torus-delta")) == 2);
    CHECK(certified_through(builtin_model("torus-cube")) == 2);
    CHECK(certified_through(builtin_model("point-cube")) == 2);
    CHECK(certified_through(Shape{precubical_circle()}) == 1);
}
