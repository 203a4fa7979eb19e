#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubix/chains.hpp"

namespace cubix {

/// Finite presimplicial set truncated at dimension cells.size()-1.
/// face[n][i] is the total map cells[n] -> cells[n-1] (0 <= i <= n, n >= 1)
/// given by target indices.  face[0] is unused.
struct FinPresimplicialSet {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::vector<std::vector<std::size_t>>> face;

    std::size_t dim() const { return cells.empty() ? 0 : cells.size() - 1; }
    std::size_t count(std::size_t n) const { return n < cells.size() ? cells[n].size() : 0; }
};

/// Finite pseudocubical set.  face[n][i-1][eps] : cells[n] -> cells[n-1]
/// for 1 <= i <= n; degen[n][i-1] : cells[n-1] -> cells[n], optional
/// ("precubical mode" when absent).
struct FinPseudocubicalSet {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::vector<std::array<std::vector<std::size_t>, 2>>> face;
    std::vector<std::vector<std::vector<std::size_t>>> degen;
    bool has_degeneracies = false;

    std::size_t dim() const { return cells.empty() ? 0 : cells.size() - 1; }
    std::size_t count(std::size_t n) const { return n < cells.size() ? cells[n].size() : 0; }
};

using Shape = std::variant<FinPresimplicialSet, FinPseudocubicalSet>;

/// Cell-level contraction data carried by shapes built from a section
/// (Cech-style constructions and their Hom images): h[n] : cells[n] ->
/// cells[n+1], a section target -> cells[0], and for cubical shapes the
/// per-dimension "constant cell at the basepoint" map.
struct ShapeContraction {
    std::vector<std::vector<std::size_t>> h;
    std::vector<std::size_t> section;
    std::vector<std::vector<std::size_t>> constant;  // cubical only
};

struct AugmentedShape {
    Shape shape;
    std::vector<std::string> target;
    std::vector<std::size_t> aug;  // cells[0] -> target
    std::optional<ShapeContraction> contraction;

    bool is_presimplicial() const { return std::holds_alternative<FinPresimplicialSet>(shape); }
    const FinPresimplicialSet& presimplicial() const { return std::get<FinPresimplicialSet>(shape); }
    const FinPseudocubicalSet& pseudocubical() const { return std::get<FinPseudocubicalSet>(shape); }
};

ValidationReport validate_presimplicial(const FinPresimplicialSet& s);
ValidationReport validate_pseudocubical(const FinPseudocubicalSet& x);
ValidationReport validate_augmented(const AugmentedShape& a);

/// Builtin model library.  Names: point-delta, point-cube, s1-delta,
/// s1-cube, s2-delta, torus-delta, torus-cube, rp2-delta, klein-delta,
/// klein-cube (the unicode spellings point-Δ, point-□, ... are accepted
/// as aliases).  Cubical models are closed under degeneracies up to their
/// truncation.  Throws std::invalid_argument on unknown names.
Shape builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();
bool builtin_is_cubical(const std::string& name);

/// Helper for assembling a pseudocubical set from nondegenerate cells:
/// each face entry either names a nondegenerate cell or a degeneracy word
/// applied to one ("s1(p)", "s2s1(p)").  The full degenerate closure up
/// to `truncation` is generated with the interchange normal form.
struct CubicalCellSpec {
    std::string name;
    std::size_t dim;
    // faces[i-1][eps] for 1 <= i <= dim, as cell expressions
    std::vector<std::array<std::string, 2>> faces;
};
FinPseudocubicalSet build_cubical_closure(const std::vector<CubicalCellSpec>& nondeg,
                                          std::size_t truncation);

/// Cech-style resolution of a finite surjection f : E ->> B as an
/// augmented presimplicial set: S_n = f-constant (n+1)-tuples, faces
/// delete a coordinate.  Carries its canonical contraction.
AugmentedShape cech_presimplicial(const std::vector<std::size_t>& f, std::size_t b_size,
                                  std::size_t depth);

/// Cubical analogue: X_n = f-constant tuples indexed by {0,1}^n, faces
/// restrict a coordinate of the index word, degeneracies duplicate one.
AugmentedShape cech_pseudocubical(const std::vector<std::size_t>& f, std::size_t b_size,
                                  std::size_t depth);

/// Applies Hom(q, -) cellwise: cells become q-tuples of cells, all maps
/// act by postcomposition; the contraction (when present) transports.
/// Throws std::length_error if any dimension would exceed max_cells.
AugmentedShape hom_shape(std::size_t q, const AugmentedShape& a,
                         std::size_t max_cells = 2'000'000);

/// Brute-force check of the presimplicial extension condition: the
/// augmentation is surjective and every compatible (n+2)-tuple in S_n has
/// a filler in S_{n+1}, for n+1 <= through.
bool check_simplicial_extension(const AugmentedShape& a, std::size_t through);

/// Cubical extension condition: (i) every augmentation-equal vertex pair
/// bounds an edge, and (ii) every compatible (2n+2)-tuple in X_n has a
/// filler in X_{n+1}, for n+1 <= through.
bool check_cubical_extension(const AugmentedShape& a, std::size_t through);

/// Rewires one face entry so that the validator rejects the result
/// (prefers an in-dimension rewiring that breaks an identity, falls back
/// to an out-of-range target).  Returns the mutant and a description.
std::pair<Shape, std::string> rewire_one_face(const Shape& s);

}  // namespace cubix
