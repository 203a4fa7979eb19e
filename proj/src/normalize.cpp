#include "cubix/normalize.hpp"

#include <map>
#include <stdexcept>

namespace cubix {

namespace {

IntMatrix face_matrix(const std::vector<std::size_t>& table, std::size_t rows) {
    IntMatrix m(rows, table.size());
    for (std::size_t c = 0; c < table.size(); ++c) m.at(table[c], c) += 1;
    return m;
}

IntMatrix aug_matrix(const AugmentedShape& a, std::size_t verts) {
    IntMatrix m(a.target.size(), verts);
    for (std::size_t c = 0; c < verts; ++c) m.at(a.aug[c], c) += 1;
    return m;
}

IntMatrix presimplicial_boundary(const FinPresimplicialSet& s, std::size_t n) {
    IntMatrix d(s.count(n - 1), s.count(n));
    for (std::size_t i = 0; i <= n; ++i) {
        int sign = (i % 2 == 0) ? 1 : -1;
        for (std::size_t c = 0; c < s.count(n); ++c) d.at(s.face[n][i][c], c) += sign;
    }
    return d;
}

IntMatrix cubical_boundary(const FinPseudocubicalSet& x, std::size_t n) {
    IntMatrix d(x.count(n - 1), x.count(n));
    for (std::size_t i = 1; i <= n; ++i) {
        int sign = (i % 2 == 0) ? 1 : -1;
        for (std::size_t c = 0; c < x.count(n); ++c) {
            d.at(x.face[n][i - 1][1][c], c) += sign;
            d.at(x.face[n][i - 1][0][c], c) -= sign;
        }
    }
    return d;
}

void throw_if_invalid(const ValidationReport& r, const char* what) {
    if (!r.ok) throw std::invalid_argument(std::string(what) + ": " + r.message);
}

}  // namespace

ChainComplex unnormalized_K(const FinPresimplicialSet& s) {
    throw_if_invalid(validate_presimplicial(s), "unnormalized_K");
    ChainComplex c;
    for (std::size_t n = 0; n < s.cells.size(); ++n) {
        c.terms.push_back(PresentedGroup::free(s.count(n)));
        if (n >= 1) c.boundaries.push_back(presimplicial_boundary(s, n));
    }
    return c;
}

AugmentedComplex unnormalized_K(const AugmentedShape& a) {
    throw_if_invalid(validate_augmented(a), "unnormalized_K");
    AugmentedComplex out;
    out.complex = unnormalized_K(a.presimplicial());
    out.target = PresentedGroup::free(a.target.size());
    out.augmentation = aug_matrix(a, a.presimplicial().count(0));
    return out;
}

ChainComplex unnormalized_C(const FinPseudocubicalSet& x) {
    throw_if_invalid(validate_pseudocubical(x), "unnormalized_C");
    ChainComplex c;
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        c.terms.push_back(PresentedGroup::free(x.count(n)));
        if (n >= 1) c.boundaries.push_back(cubical_boundary(x, n));
    }
    return c;
}

AugmentedComplex unnormalized_C(const AugmentedShape& a) {
    throw_if_invalid(validate_augmented(a), "unnormalized_C");
    AugmentedComplex out;
    out.complex = unnormalized_C(a.pseudocubical());
    out.target = PresentedGroup::free(a.target.size());
    out.augmentation = aug_matrix(a, a.pseudocubical().count(0));
    return out;
}

SigmaEndomorphism sigma_endomorphism(const FinPseudocubicalSet& x) {
    throw_if_invalid(validate_pseudocubical(x), "sigma_endomorphism");
    if (!x.has_degeneracies)
        throw std::invalid_argument("sigma_endomorphism: shape has no degeneracies");
    SigmaEndomorphism out;
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        IntMatrix sigma = IntMatrix::identity(x.count(n));
        for (std::size_t i = 1; i <= n; ++i) {
            IntMatrix si = face_matrix(x.degen[n][i - 1], x.count(n));
            IntMatrix fi = face_matrix(x.face[n][i - 1][1], x.count(n - 1));
            sigma = sigma * (IntMatrix::identity(x.count(n)) - si * fi);
        }
        if (sigma * sigma != sigma)
            throw std::logic_error("sigma_endomorphism: matrix is not idempotent");
        out.sigma.push_back(std::move(sigma));
    }
    for (std::size_t n = 1; n < x.cells.size(); ++n) {
        IntMatrix d = cubical_boundary(x, n);
        if (d * out.sigma[n] != out.sigma[n - 1] * d)
            throw std::logic_error("sigma_endomorphism: family is not a chain map");
    }
    if (!out.sigma.empty() && !out.sigma[0].is_identity())
        throw std::logic_error("sigma_endomorphism: sigma_0 != 1");
    return out;
}

SigmaNormalized normalized_sigma(const FinPseudocubicalSet& x) {
    SigmaNormalized out;
    out.sigma = sigma_endomorphism(x);
    ChainComplex c = unnormalized_C(x);
    out.splitting = split_idempotent(c, ChainMap{out.sigma.sigma});
    out.complex = out.splitting.sub;
    return out;
}

KernelNormalized normalized_kernel(const FinPseudocubicalSet& x) {
    throw_if_invalid(validate_pseudocubical(x), "normalized_kernel");
    KernelNormalized out;
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        if (n == 0) {
            out.basis.push_back(IntMatrix::identity(x.count(0)));
        } else {
            IntMatrix stacked(0, x.count(n));
            for (std::size_t i = 1; i <= n; ++i)
                stacked = IntMatrix::vconcat(stacked, face_matrix(x.face[n][i - 1][1], x.count(n - 1)));
            out.basis.push_back(kernel_basis(stacked));
        }
        out.complex.terms.push_back(PresentedGroup::free(out.basis[n].cols()));
    }
    for (std::size_t n = 1; n < x.cells.size(); ++n) {
        IntMatrix d(x.count(n - 1), x.count(n));
        for (std::size_t i = 1; i <= n; ++i) {
            int sign = (i % 2 == 1) ? 1 : -1;  // (-1)^{i+1}
            for (std::size_t c = 0; c < x.count(n); ++c)
                d.at(x.face[n][i - 1][0][c], c) += sign;
        }
        auto coords = SmithSolver(out.basis[n - 1]).solve_matrix(d * out.basis[n]);
        if (!coords)
            throw std::logic_error("normalized_kernel: boundary does not preserve the kernels");
        out.complex.boundaries.push_back(std::move(*coords));
    }
    return out;
}

AugmentedComplex normalized_kernel(const AugmentedShape& a) {
    throw_if_invalid(validate_augmented(a), "normalized_kernel");
    AugmentedComplex out;
    out.complex = normalized_kernel(a.pseudocubical()).complex;
    out.target = PresentedGroup::free(a.target.size());
    out.augmentation = aug_matrix(a, a.pseudocubical().count(0));
    return out;
}

bool verify_normalization_agreement(const FinPseudocubicalSet& x) {
    SigmaEndomorphism sig = sigma_endomorphism(x);
    KernelNormalized ker = normalized_kernel(x);
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        IntMatrix sigma_fixed =
            kernel_basis(IntMatrix::identity(x.count(n)) - sig.sigma[n]);
        // mutual membership of the two lattices
        SmithSolver in_sigma(sigma_fixed), in_kernel(ker.basis[n]);
        if (!in_sigma.solve_matrix(ker.basis[n])) return false;
        if (!in_kernel.solve_matrix(sigma_fixed)) return false;
    }
    // boundaries agree under the identification
    for (std::size_t n = 1; n < x.cells.size(); ++n) {
        IntMatrix d = cubical_boundary(x, n);
        IntMatrix lhs = d * ker.basis[n];  // C-boundary restricted to N_n
        IntMatrix rhs = ker.basis[n - 1] * ker.complex.boundary(n);
        if (lhs != rhs) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// contraction certificates (sparse, cellwise)
// ---------------------------------------------------------------------------

namespace {

using Chain = std::map<std::size_t, Int>;

void chain_add(Chain& c, std::size_t cell, const Int& coeff) {
    auto it = c.find(cell);
    if (it == c.end()) {
        if (coeff != 0) c.emplace(cell, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) c.erase(it);
}

Chain map_chain(const std::vector<std::size_t>& table, const Chain& c) {
    Chain out;
    for (const auto& [cell, coeff] : c) chain_add(out, table[cell], coeff);
    return out;
}

bool chains_equal(const Chain& a, const Chain& b) { return a == b; }

struct CubicalOps {
    const FinPseudocubicalSet& x;
    Chain boundary(std::size_t n, const Chain& c) const {
        Chain out;
        for (std::size_t i = 1; i <= n; ++i) {
            int sign = (i % 2 == 0) ? 1 : -1;
            for (const auto& [cell, coeff] : c) {
                chain_add(out, x.face[n][i - 1][1][cell], Int(sign) * coeff);
                chain_add(out, x.face[n][i - 1][0][cell], Int(-sign) * coeff);
            }
        }
        return out;
    }
    Chain sigma(std::size_t n, Chain c) const {
        for (std::size_t i = n; i >= 1; --i) {
            Chain down = map_chain(x.face[n][i - 1][1], c);
            Chain up = map_chain(x.degen[n][i - 1], down);
            for (const auto& [cell, coeff] : up) chain_add(c, cell, -coeff);
        }
        return c;
    }
};

}  // namespace

bool presimplicial_contraction_certificate(const AugmentedShape& a, std::size_t through) {
    if (!a.contraction) throw std::invalid_argument("certificate: shape has no contraction data");
    const auto& s = a.presimplicial();
    const auto& con = *a.contraction;
    if (s.dim() < through + 1 || con.h.size() < through + 1)
        throw std::invalid_argument("certificate: shape too shallow for requested degree");
    for (std::size_t b = 0; b < a.target.size(); ++b)
        if (a.aug[con.section[b]] != b) return false;

    auto boundary = [&](std::size_t n, const Chain& c) {
        Chain out;
        for (std::size_t i = 0; i <= n; ++i) {
            int sign = (i % 2 == 0) ? 1 : -1;
            for (const auto& [cell, coeff] : c) chain_add(out, s.face[n][i][cell], Int(sign) * coeff);
        }
        return out;
    };

    for (std::size_t n = 0; n <= through; ++n) {
        for (std::size_t cell = 0; cell < s.count(n); ++cell) {
            // d(h x) + h(d x) == x - [n==0] section(aug x)
            Chain lhs = boundary(n + 1, Chain{{con.h[n][cell], Int(1)}});
            if (n >= 1) {
                Chain dx = boundary(n, Chain{{cell, Int(1)}});
                for (const auto& [d_cell, coeff] : map_chain(con.h[n - 1], dx))
                    chain_add(lhs, d_cell, coeff);
            }
            Chain rhs{{cell, Int(1)}};
            if (n == 0) chain_add(rhs, con.section[a.aug[cell]], Int(-1));
            if (!chains_equal(lhs, rhs)) return false;
        }
    }
    return true;
}

bool cubical_contraction_certificate(const AugmentedShape& a, std::size_t through) {
    if (!a.contraction) throw std::invalid_argument("certificate: shape has no contraction data");
    const auto& x = a.pseudocubical();
    const auto& con = *a.contraction;
    if (!x.has_degeneracies)
        throw std::invalid_argument("certificate: cubical shape without degeneracies");
    if (x.dim() < through + 1 || con.h.size() < through + 1 || con.constant.size() < through + 1)
        throw std::invalid_argument("certificate: shape too shallow for requested degree");
    for (std::size_t b = 0; b < a.target.size(); ++b)
        if (a.aug[con.section[b]] != b) return false;

    CubicalOps ops{x};
    for (std::size_t n = 0; n <= through; ++n) {
        for (std::size_t cell = 0; cell < x.count(n); ++cell) {
            Chain hx{{con.h[n][cell], Int(1)}};
            Chain dhx = ops.boundary(n + 1, hx);

            // (c) homotopy identity: d(h x) + h(d x) == x - const(x)
            Chain lhs = dhx;
            if (n >= 1) {
                Chain dx = ops.boundary(n, Chain{{cell, Int(1)}});
                for (const auto& [d_cell, coeff] : map_chain(con.h[n - 1], dx))
                    chain_add(lhs, d_cell, coeff);
            }
            Chain rhs{{cell, Int(1)}};
            chain_add(rhs, con.constant[n][cell], Int(-1));
            if (!chains_equal(lhs, rhs)) return false;

            // (a) chain-map instance of sigma on h x: d(sigma h x) == sigma(d h x)
            Chain shx = ops.sigma(n + 1, hx);
            if (!chains_equal(ops.boundary(n + 1, shx), ops.sigma(n, dhx))) return false;

            // (d) sigma h x lies in the kernel-form N
            for (std::size_t i = 1; i <= n + 1; ++i)
                if (!map_chain(x.face[n + 1][i - 1][1], shx).empty()) return false;

            // (b) sigma kills the constant cell (n >= 1)
            if (n >= 1 && !ops.sigma(n, Chain{{con.constant[n][cell], Int(1)}}).empty())
                return false;
        }
    }
    return true;
}

std::size_t certified_through(const Shape& s) {
    if (std::holds_alternative<FinPresimplicialSet>(s))
        return std::get<FinPresimplicialSet>(s).dim();
    const auto& x = std::get<FinPseudocubicalSet>(s);
    return x.has_degeneracies && x.dim() > 0 ? x.dim() - 1 : x.dim();
}

}  // namespace cubix
