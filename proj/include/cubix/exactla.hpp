#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubix/int_matrix.hpp"

namespace cubix {

/// Result of a Smith decomposition u * a * v = d with u, v unimodular and
/// d diagonal, nonzero diagonal entries positive, listed first, and forming
/// a divisibility chain d_1 | d_2 | ...
struct SmithDecomposition {
    IntMatrix u;  // rows x rows
    IntMatrix d;  // rows x cols, diagonal
    IntMatrix v;  // cols x cols
    std::vector<Int> invariant_factors;  // the nonzero diagonal entries
};

/// Finitely generated abelian group in canonical form: Z^rank + sum of
/// Z/t_i with 2 <= t_1 | t_2 | ...  Two values are isomorphic iff equal.
struct FgAbGroup {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const FgAbGroup& o) const = default;

    static FgAbGroup free(std::size_t r) { return FgAbGroup{r, {}}; }
    static FgAbGroup cyclic(const Int& m);            // Z/m (m = 0 gives Z)
    static FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

    std::string to_string() const;
    /// Parses "0", "Z", "Z^2", "Z/6", "Z+Z/2", "Z^2+Z/2+Z/4".
    static FgAbGroup parse(const std::string& s);
};

/// Smith normal form. Pivot choice: smallest nonzero absolute value, ties
/// broken by lowest (row, col); deterministic for a fixed input.
SmithDecomposition snf(const IntMatrix& a);

/// Columns form a basis of the full integer kernel lattice of a
/// (saturated: every integer vector killed by a is an integer combination
/// of the columns).
IntMatrix kernel_basis(const IntMatrix& a);

/// Some integer solution x of a x = b, or nullopt when none exists.
std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b);

/// Cached factorization for repeated solves against the same matrix.
class SmithSolver {
public:
    explicit SmithSolver(const IntMatrix& a);
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;
    /// Columnwise solve: x with a x = rhs, or nullopt if any column fails.
    std::optional<IntMatrix> solve_matrix(const IntMatrix& rhs) const;
    const SmithDecomposition& decomposition() const { return smith_; }

private:
    std::size_t rows_, cols_;
    SmithDecomposition smith_;
    std::size_t rank_;
};

/// Cokernel of a: Z^cols -> Z^rows as a canonical group.
FgAbGroup cokernel_invariants(const IntMatrix& a);

/// Exact determinant (fraction-free Gaussian elimination).
Int determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

/// Basis of the lattice spanned by the columns of g (column echelon form
/// with gcd pivots).  Deterministic.
IntMatrix column_lattice_basis(const IntMatrix& g);

/// Incremental column-lattice accumulator; add vectors, extract a basis.
class LatticeBuilder {
public:
    explicit LatticeBuilder(std::size_t dim);
    /// Returns true if the vector enlarged the lattice.
    bool add(std::vector<Int> v);
    IntMatrix basis() const;  // dim x rank
    std::size_t rank() const;

private:
    std::size_t dim_;
    // echelon columns keyed by pivot row (first nonzero index)
    std::vector<std::vector<Int>> cols_;
    std::vector<std::size_t> pivot_of_col_;
};

/// True if v lies in the lattice spanned by the columns of basis.
bool lattice_contains(const IntMatrix& basis, const std::vector<Int>& v);

}  // namespace cubix
