#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubix/exactla.hpp"
#include "cubix/int_matrix.hpp"

namespace cubix {

/// Finitely presented abelian group: Z^generators modulo the column
/// lattice of `relations` (generators rows, one column per relator).
struct PresentedGroup {
    std::size_t generators = 0;
    IntMatrix relations;  // generators x (number of relators)

    PresentedGroup() : relations(0, 0) {}
    PresentedGroup(std::size_t gens, IntMatrix rels)
        : generators(gens), relations(std::move(rels)) {
        if (relations.rows() != generators)
            throw std::invalid_argument("PresentedGroup: relation rows != generators");
    }

    static PresentedGroup free(std::size_t n) { return PresentedGroup(n, IntMatrix(n, 0)); }
    static PresentedGroup from_group(const FgAbGroup& g);

    bool is_free() const { return relations.cols() == 0; }
    FgAbGroup canonical() const { return cokernel_invariants(relations); }
};

/// A map of presented groups is a matrix that carries the source relation
/// lattice into the target relation lattice.
bool is_module_map(const IntMatrix& m, const PresentedGroup& src, const PresentedGroup& dst);

/// True if a and b define the same map src -> dst (difference lands in the
/// target relation lattice columnwise).
bool maps_equal_mod(const IntMatrix& a, const IntMatrix& b, const PresentedGroup& dst);

/// Bounded chain complex C_0 .. C_top with boundaries[n] : C_{n+1} -> C_n.
struct ChainComplex {
    std::vector<PresentedGroup> terms;
    std::vector<IntMatrix> boundaries;

    std::size_t top() const { return terms.empty() ? 0 : terms.size() - 1; }
    const IntMatrix& boundary(std::size_t n) const { return boundaries.at(n - 1); }  // d_n: C_n -> C_{n-1}

    static ChainComplex single(PresentedGroup g) { return ChainComplex{{std::move(g)}, {}}; }
    static ChainComplex zero_complex(std::size_t top_degree);
};

struct AugmentedComplex {
    ChainComplex complex;
    PresentedGroup target;
    IntMatrix augmentation;  // target.generators x C_0.generators
};

/// Per-degree matrices of a chain map; maps[n] : C_n -> C'_n.
struct ChainMap {
    std::vector<IntMatrix> maps;
    static ChainMap identity_on(const ChainComplex& c);
    static ChainMap zero(const ChainComplex& from, const ChainComplex& to);
};

/// Per-degree matrices h[n] : C_n -> C'_{n+1}; missing top entries read as 0.
struct ChainHomotopy {
    std::vector<IntMatrix> maps;
};

struct ValidationReport {
    bool ok = true;
    std::string message;
    long degree = -1;
    explicit operator bool() const { return ok; }
};

ValidationReport validate_complex(const ChainComplex& c);
ValidationReport validate_complex(const AugmentedComplex& c);

/// H_n = ker d_n / im d_{n+1}, with the relation lattices of the terms
/// incorporated on both sides.  At the top degree only the relations feed
/// the image (an upper bound unless the complex is exact above top).
FgAbGroup homology(const ChainComplex& c, std::size_t n);

/// True iff the augmentation is surjective and the augmented complex has
/// vanishing homology in degrees 0..through.
bool is_acyclic(const AugmentedComplex& c, std::size_t through);

struct Splitting {
    ChainComplex sub;         // realizes Ker(1 - p)
    ChainMap inclusion;       // i2 : sub -> c
    ChainMap projection;      // pi2 : c -> sub
    ChainComplex complement;  // realizes Ker(p)
    ChainMap comp_inclusion;  // i1
    ChainMap comp_projection; // pi1
};

/// Splits an idempotent endomorphism of a complex with free terms:
/// pi1 i1 = 1, pi2 i2 = 1, pi1 i2 = 0, pi2 i1 = 0, i1 pi1 = 1-p, i2 pi2 = p,
/// all exact.  Throws std::invalid_argument when p is not an idempotent
/// chain map or a term has relations.
Splitting split_idempotent(const ChainComplex& c, const ChainMap& p);

bool verify_chain_map(const ChainComplex& from, const ChainComplex& to, const ChainMap& f);
bool verify_homotopy(const ChainComplex& from, const ChainComplex& to, const ChainMap& f,
                     const ChainMap& g, const ChainHomotopy& h);

/// Termwise tensor with a fixed finitely generated group (Kronecker lift
/// of all matrices, relation blocks combined).
ChainComplex tensor_complex(const ChainComplex& c, const FgAbGroup& a);
AugmentedComplex tensor_complex(const AugmentedComplex& c, const FgAbGroup& a);
PresentedGroup tensor_group(const PresentedGroup& p, const FgAbGroup& a);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

/// Lattice of x in Z^cols(d) with d x inside the relation lattice of dst
/// (basis columns).  The kernel-with-relations workhorse.
IntMatrix preimage_lattice(const IntMatrix& d, const IntMatrix& rel_dst);

}  // namespace cubix
