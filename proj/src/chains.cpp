#include "cubix/chains.hpp"

#include <stdexcept>

namespace cubix {

PresentedGroup PresentedGroup::from_group(const FgAbGroup& g) {
    std::size_t gens = g.rank + g.torsion.size();
    IntMatrix rel(gens, g.torsion.size());
    for (std::size_t j = 0; j < g.torsion.size(); ++j) rel.at(g.rank + j, j) = g.torsion[j];
    return PresentedGroup(gens, rel);
}

ChainComplex ChainComplex::zero_complex(std::size_t top_degree) {
    ChainComplex c;
    for (std::size_t n = 0; n <= top_degree; ++n) {
        c.terms.push_back(PresentedGroup::free(0));
        if (n > 0) c.boundaries.emplace_back(0, 0);
    }
    return c;
}

ChainMap ChainMap::identity_on(const ChainComplex& c) {
    ChainMap f;
    for (const auto& t : c.terms) f.maps.push_back(IntMatrix::identity(t.generators));
    return f;
}

ChainMap ChainMap::zero(const ChainComplex& from, const ChainComplex& to) {
    ChainMap f;
    for (std::size_t n = 0; n < from.terms.size(); ++n) {
        std::size_t rows = n < to.terms.size() ? to.terms[n].generators : 0;
        f.maps.push_back(IntMatrix::zero(rows, from.terms[n].generators));
    }
    return f;
}

bool is_module_map(const IntMatrix& m, const PresentedGroup& src, const PresentedGroup& dst) {
    if (m.cols() != src.generators || m.rows() != dst.generators) return false;
    if (src.relations.cols() == 0) return true;
    SmithSolver dst_rel(dst.relations);
    IntMatrix image = m * src.relations;
    for (std::size_t j = 0; j < image.cols(); ++j)
        if (!dst_rel.solve(image.column(j))) return false;
    return true;
}

bool maps_equal_mod(const IntMatrix& a, const IntMatrix& b, const PresentedGroup& dst) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    IntMatrix diff = a - b;
    if (diff.is_zero()) return true;
    if (dst.relations.cols() == 0) return false;
    SmithSolver rel(dst.relations);
    for (std::size_t j = 0; j < diff.cols(); ++j)
        if (!rel.solve(diff.column(j))) return false;
    return true;
}

IntMatrix preimage_lattice(const IntMatrix& d, const IntMatrix& rel_dst) {
    if (d.rows() == 0) return IntMatrix::identity(d.cols());
    IntMatrix stacked = rel_dst.cols() ? IntMatrix::hconcat(d, rel_dst) : d;
    IntMatrix k = kernel_basis(stacked);
    IntMatrix proj = k.row_block(0, d.cols());
    return column_lattice_basis(proj);
}

namespace {

ValidationReport fail(long degree, std::string msg) {
    return ValidationReport{false, std::move(msg), degree};
}

ValidationReport validate_terms_and_boundaries(const ChainComplex& c) {
    if (c.terms.empty()) return fail(-1, "complex has no terms");
    if (c.boundaries.size() + 1 != c.terms.size())
        return fail(-1, "boundary count does not match term count");
    for (std::size_t n = 1; n < c.terms.size(); ++n) {
        const IntMatrix& d = c.boundary(n);
        if (d.rows() != c.terms[n - 1].generators || d.cols() != c.terms[n].generators)
            return fail(static_cast<long>(n), "boundary shape mismatch at degree " + std::to_string(n));
        if (!is_module_map(d, c.terms[n], c.terms[n - 1]))
            return fail(static_cast<long>(n),
                        "boundary does not carry relations into relations at degree " +
                            std::to_string(n));
    }
    for (std::size_t n = 2; n < c.terms.size(); ++n) {
        IntMatrix dd = c.boundary(n - 1) * c.boundary(n);
        if (!maps_equal_mod(dd, IntMatrix::zero(dd.rows(), dd.cols()), c.terms[n - 2]))
            return fail(static_cast<long>(n),
                        "dd != 0 modulo relations at degree " + std::to_string(n));
    }
    return {};
}

}  // namespace

ValidationReport validate_complex(const ChainComplex& c) { return validate_terms_and_boundaries(c); }

ValidationReport validate_complex(const AugmentedComplex& c) {
    ValidationReport r = validate_terms_and_boundaries(c.complex);
    if (!r) return r;
    const IntMatrix& aug = c.augmentation;
    if (aug.rows() != c.target.generators || aug.cols() != c.complex.terms[0].generators)
        return fail(0, "augmentation shape mismatch");
    if (!is_module_map(aug, c.complex.terms[0], c.target))
        return fail(0, "augmentation does not respect relations");
    if (c.complex.terms.size() > 1) {
        IntMatrix comp = aug * c.complex.boundary(1);
        if (!maps_equal_mod(comp, IntMatrix::zero(comp.rows(), comp.cols()), c.target))
            return fail(1, "augmentation composed with d_1 is nonzero modulo target relations");
    }
    return {};
}

namespace {

// H at (cycles = preimage of rel_prev under d_out) / (columns of img_gens),
// where img_gens columns are known to be cycles.
FgAbGroup homology_at(const IntMatrix& d_out, const IntMatrix& rel_prev, const IntMatrix& img_gens,
                      std::size_t ambient) {
    IntMatrix cycles = d_out.rows() == 0 ? IntMatrix::identity(ambient)
                                         : preimage_lattice(d_out, rel_prev);
    IntMatrix img = column_lattice_basis(img_gens);
    SmithSolver coords(cycles);
    auto z = coords.solve_matrix(img);
    if (!z)
        throw std::logic_error("homology: image generator not a cycle (invalid complex)");
    return cokernel_invariants(*z);
}

}  // namespace

FgAbGroup homology(const ChainComplex& c, std::size_t n) {
    if (n >= c.terms.size()) throw std::out_of_range("homology: degree out of range");
    std::size_t g = c.terms[n].generators;
    IntMatrix d_out = n == 0 ? IntMatrix(0, g) : c.boundary(n);
    IntMatrix rel_prev = n == 0 ? IntMatrix(0, 0) : c.terms[n - 1].relations;
    IntMatrix img = n < c.top() ? IntMatrix::hconcat(c.boundary(n + 1), c.terms[n].relations)
                                : c.terms[n].relations;
    return homology_at(d_out, rel_prev, img, g);
}

bool is_acyclic(const AugmentedComplex& c, std::size_t through) {
    // surjectivity of the augmentation onto the presented target
    IntMatrix onto = IntMatrix::hconcat(c.augmentation, c.target.relations);
    if (!cokernel_invariants(onto).trivial()) return false;
    for (std::size_t n = 0; n <= through && n < c.complex.terms.size(); ++n) {
        std::size_t g = c.complex.terms[n].generators;
        IntMatrix d_out = n == 0 ? c.augmentation : c.complex.boundary(n);
        IntMatrix rel_prev = n == 0 ? c.target.relations : c.complex.terms[n - 1].relations;
        IntMatrix img = n < c.complex.top()
                            ? IntMatrix::hconcat(c.complex.boundary(n + 1), c.complex.terms[n].relations)
                            : c.complex.terms[n].relations;
        if (!homology_at(d_out, rel_prev, img, g).trivial()) return false;
    }
    return true;
}

bool verify_chain_map(const ChainComplex& from, const ChainComplex& to, const ChainMap& f) {
    if (f.maps.size() != from.terms.size()) return false;
    std::size_t degrees = std::min(from.terms.size(), to.terms.size());
    for (std::size_t n = 0; n < degrees; ++n)
        if (!is_module_map(f.maps[n], from.terms[n], to.terms[n])) return false;
    for (std::size_t n = 1; n < degrees; ++n) {
        IntMatrix lhs = f.maps[n - 1] * from.boundary(n);
        IntMatrix rhs = to.boundary(n) * f.maps[n];
        if (!maps_equal_mod(lhs, rhs, to.terms[n - 1])) return false;
    }
    return true;
}

bool verify_homotopy(const ChainComplex& from, const ChainComplex& to, const ChainMap& f,
                     const ChainMap& g, const ChainHomotopy& h) {
    auto h_at = [&](std::size_t n) -> IntMatrix {
        if (n < h.maps.size()) return h.maps[n];
        std::size_t rows = n + 1 < to.terms.size() ? to.terms[n + 1].generators : 0;
        return IntMatrix::zero(rows, from.terms[n].generators);
    };
    for (std::size_t n = 0; n < from.terms.size(); ++n) {
        IntMatrix diff = f.maps[n] - g.maps[n];
        IntMatrix rhs(to.terms[n].generators, from.terms[n].generators);
        if (n + 1 < to.terms.size()) rhs = rhs + to.boundary(n + 1) * h_at(n);
        if (n > 0) rhs = rhs + h_at(n - 1) * from.boundary(n);
        if (!maps_equal_mod(diff, rhs, to.terms[n])) return false;
    }
    return true;
}

Splitting split_idempotent(const ChainComplex& c, const ChainMap& p) {
    for (const auto& t : c.terms)
        if (!t.is_free())
            throw std::invalid_argument("split_idempotent: terms must be free");
    if (p.maps.size() != c.terms.size())
        throw std::invalid_argument("split_idempotent: map has wrong length");
    for (std::size_t n = 0; n < c.terms.size(); ++n) {
        const IntMatrix& pn = p.maps[n];
        if (pn.rows() != c.terms[n].generators || pn.cols() != c.terms[n].generators)
            throw std::invalid_argument("split_idempotent: map shape mismatch");
        if (pn * pn != pn) throw std::invalid_argument("split_idempotent: map is not idempotent");
    }
    if (!verify_chain_map(c, c, p))
        throw std::invalid_argument("split_idempotent: map is not a chain map");

    Splitting s;
    for (std::size_t n = 0; n < c.terms.size(); ++n) {
        const IntMatrix& pn = p.maps[n];
        IntMatrix one = IntMatrix::identity(pn.rows());
        IntMatrix b2 = kernel_basis(one - pn);  // = im(p)
        IntMatrix b1 = kernel_basis(pn);        // = im(1-p)
        auto pi2 = SmithSolver(b2).solve_matrix(pn);
        auto pi1 = SmithSolver(b1).solve_matrix(one - pn);
        if (!pi2 || !pi1) throw std::logic_error("split_idempotent: projection solve failed");
        s.sub.terms.push_back(PresentedGroup::free(b2.cols()));
        s.complement.terms.push_back(PresentedGroup::free(b1.cols()));
        s.inclusion.maps.push_back(b2);
        s.projection.maps.push_back(*pi2);
        s.comp_inclusion.maps.push_back(b1);
        s.comp_projection.maps.push_back(*pi1);
    }
    for (std::size_t n = 1; n < c.terms.size(); ++n) {
        s.sub.boundaries.push_back(s.projection.maps[n - 1] * c.boundary(n) * s.inclusion.maps[n]);
        s.complement.boundaries.push_back(s.comp_projection.maps[n - 1] * c.boundary(n) *
                                          s.comp_inclusion.maps[n]);
    }

    // the six identities, exact
    for (std::size_t n = 0; n < c.terms.size(); ++n) {
        const IntMatrix& pn = p.maps[n];
        IntMatrix one = IntMatrix::identity(pn.rows());
        if (!(s.projection.maps[n] * s.inclusion.maps[n]).is_identity() ||
            !(s.comp_projection.maps[n] * s.comp_inclusion.maps[n]).is_identity() ||
            !(s.projection.maps[n] * s.comp_inclusion.maps[n]).is_zero() ||
            !(s.comp_projection.maps[n] * s.inclusion.maps[n]).is_zero() ||
            s.inclusion.maps[n] * s.projection.maps[n] != pn ||
            s.comp_inclusion.maps[n] * s.comp_projection.maps[n] != one - pn)
            throw std::logic_error("split_idempotent: splitting identities failed");
    }
    return s;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t s2 = 0; s2 < b.cols(); ++s2)
                    out.at(i * b.rows() + r, j * b.cols() + s2) = a.at(i, j) * b.at(r, s2);
        }
    return out;
}

PresentedGroup tensor_group(const PresentedGroup& p, const FgAbGroup& a) {
    PresentedGroup pa = PresentedGroup::from_group(a);
    std::size_t ga = pa.generators;
    IntMatrix rel1 = kronecker(p.relations, IntMatrix::identity(ga));
    IntMatrix rel2 = kronecker(IntMatrix::identity(p.generators), pa.relations);
    return PresentedGroup(p.generators * ga, IntMatrix::hconcat(rel1, rel2));
}

ChainComplex tensor_complex(const ChainComplex& c, const FgAbGroup& a) {
    PresentedGroup pa = PresentedGroup::from_group(a);
    ChainComplex out;
    for (const auto& t : c.terms) out.terms.push_back(tensor_group(t, a));
    for (const auto& d : c.boundaries)
        out.boundaries.push_back(kronecker(d, IntMatrix::identity(pa.generators)));
    return out;
}

AugmentedComplex tensor_complex(const AugmentedComplex& c, const FgAbGroup& a) {
    PresentedGroup pa = PresentedGroup::from_group(a);
    AugmentedComplex out;
    out.complex = tensor_complex(c.complex, a);
    out.target = tensor_group(c.target, a);
    out.augmentation = kronecker(c.augmentation, IntMatrix::identity(pa.generators));
    return out;
}

}  // namespace cubix
