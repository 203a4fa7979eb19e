#pragma once

#include "cubix/chains.hpp"
#include "cubix/shapes.hpp"

namespace cubix {

/// Unnormalized complex of a presimplicial set: terms Z[cells[n]],
/// boundary the alternating sum of the induced face matrices.
ChainComplex unnormalized_K(const FinPresimplicialSet& s);
AugmentedComplex unnormalized_K(const AugmentedShape& a);

/// Unnormalized complex of a pseudocubical set: boundary
/// sum_i (-1)^i (d_i^1 - d_i^0).  Degeneracies not required.
ChainComplex unnormalized_C(const FinPseudocubicalSet& x);
AugmentedComplex unnormalized_C(const AugmentedShape& a);

/// The idempotent chain endomorphism sigma_n = (1 - s_1 d_1^1) ... (1 - s_n d_n^1)
/// of C(X).  Construction verifies sigma_0 = 1, idempotency, and the
/// chain-map property exactly; requires degeneracies.
struct SigmaEndomorphism {
    std::vector<IntMatrix> sigma;
};
SigmaEndomorphism sigma_endomorphism(const FinPseudocubicalSet& x);

/// Normalized complex as the direct summand Ker(1 - sigma) of C(X),
/// with the full splitting retained.
struct SigmaNormalized {
    ChainComplex complex;  // the summand
    Splitting splitting;   // sub == complex
    SigmaEndomorphism sigma;
};
SigmaNormalized normalized_sigma(const FinPseudocubicalSet& x);

/// Normalized complex in kernel form: N_n = intersection of Ker(d_i^1),
/// boundary sum_i (-1)^{i+1} d_i^0 restricted and rewritten in the kernel
/// bases.  Valid without degeneracies.
struct KernelNormalized {
    ChainComplex complex;
    std::vector<IntMatrix> basis;  // basis[n]: inclusion N_n -> Z[cells[n]]
};
KernelNormalized normalized_kernel(const FinPseudocubicalSet& x);
AugmentedComplex normalized_kernel(const AugmentedShape& a);

/// The testable form of the abelian-case description of N:
/// Ker(1 - sigma_n) equals the intersection of the Ker(d_i^1) as
/// subgroups (mutual membership) and the induced boundaries agree under
/// the identification.
bool verify_normalization_agreement(const FinPseudocubicalSet& x);

/// Cellwise verification of the canonical contraction carried by a
/// section-built augmented shape.  A true result is an exact certificate
/// that the augmented complex K (presimplicial case) resp. the augmented
/// kernel-form N (cubical case) has surjective augmentation and vanishing
/// homology in degrees 0..through.  Needs the shape truncated to at least
/// through+1 and contraction data present.
bool presimplicial_contraction_certificate(const AugmentedShape& a, std::size_t through);
bool cubical_contraction_certificate(const AugmentedShape& a, std::size_t through);

/// Degrees for which homology of the associated complexes is reliable:
/// full truncation for presimplicial shapes, truncation - 1 for
/// degeneracy-closed cubical shapes.
std::size_t certified_through(const Shape& s);

}  // namespace cubix
