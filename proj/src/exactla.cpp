#include "cubix/exactla.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubix {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a += f * row b
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) += f * m.at(b, j);
}
void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Int& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) += f * m.at(i, b);
}
void negate_row(IntMatrix& m, std::size_t a) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

// Smallest nonzero |entry| in d(s:, s:), lowest (row, col) on ties.
bool locate_pivot(const IntMatrix& d, std::size_t s, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < d.rows(); ++i)
        for (std::size_t j = s; j < d.cols(); ++j) {
            const Int& v = d.at(i, j);
            if (v == 0) continue;
            Int a = abs_int(v);
            if (!found || a < best) {
                found = true;
                best = a;
                pr = i;
                pc = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition snf(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithDecomposition out;
    out.u = IntMatrix::identity(m);
    out.v = IntMatrix::identity(n);
    out.d = a;
    IntMatrix& d = out.d;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;

    const std::size_t steps = std::min(m, n);
    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t pr = s, pc = s;
        if (!locate_pivot(d, s, pr, pc)) break;  // remaining block is zero
        swap_rows(d, s, pr);
        swap_rows(u, s, pr);
        swap_cols(d, s, pc);
        swap_cols(v, s, pc);

        for (;;) {
            // clear column s below the pivot, then row s right of it
            bool dirty = false;
            for (std::size_t i = s + 1; i < m; ++i) {
                if (d.at(i, s) == 0) continue;
                Int q = d.at(i, s) / d.at(s, s);
                add_row(d, i, s, -q);
                add_row(u, i, s, -q);
                if (d.at(i, s) != 0) dirty = true;
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (d.at(s, j) == 0) continue;
                Int q = d.at(s, j) / d.at(s, s);
                add_col(d, j, s, -q);
                add_col(v, j, s, -q);
                if (d.at(s, j) != 0) dirty = true;
            }
            if (dirty) {
                // a remainder survived; move the new smallest entry into place
                std::size_t rr = s, rc = s;
                locate_pivot(d, s, rr, rc);
                swap_rows(d, s, rr);
                swap_rows(u, s, rr);
                swap_cols(d, s, rc);
                swap_cols(v, s, rc);
                continue;
            }
            // pivot is lone; enforce divisibility of the remaining block
            bool divides_all = true;
            std::size_t br = 0, bc = 0;
            for (std::size_t i = s + 1; i < m && divides_all; ++i)
                for (std::size_t j = s + 1; j < n; ++j)
                    if (d.at(i, j) % d.at(s, s) != 0) {
                        divides_all = false;
                        br = i;
                        bc = j;
                        break;
                    }
            if (divides_all) break;
            add_row(d, s, br, 1);
            add_row(u, s, br, 1);
            (void)bc;
        }
        if (d.at(s, s) < 0) {
            negate_row(d, s);
            negate_row(u, s);
        }
    }

    for (std::size_t s = 0; s < steps; ++s)
        if (d.at(s, s) != 0) out.invariant_factors.push_back(d.at(s, s));
    return out;
}

SmithSolver::SmithSolver(const IntMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), smith_(snf(a)), rank_(smith_.invariant_factors.size()) {}

std::optional<std::vector<Int>> SmithSolver::solve(const std::vector<Int>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("solve: rhs length mismatch");
    // u a v = d  =>  a x = b iff d y = u b with x = v y
    std::vector<Int> c = smith_.u.apply(b);
    std::vector<Int> y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i < rank_) {
            const Int& di = smith_.d.at(i, i);
            if (c[i] % di != 0) return std::nullopt;
            y[i] = c[i] / di;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return smith_.v.apply(y);
}

std::optional<IntMatrix> SmithSolver::solve_matrix(const IntMatrix& rhs) const {
    if (rhs.rows() != rows_) throw std::invalid_argument("solve_matrix: shape mismatch");
    IntMatrix x(cols_, rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        auto xj = solve(rhs.column(j));
        if (!xj) return std::nullopt;
        x.set_column(j, *xj);
    }
    return x;
}

std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b) {
    return SmithSolver(a).solve(b);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    // u a v = d; kernel basis = columns of v past the rank of d
    SmithDecomposition s = snf(a);
    std::size_t r = s.invariant_factors.size();
    return s.v.columns(r, a.cols());
}

FgAbGroup cokernel_invariants(const IntMatrix& a) {
    SmithDecomposition s = snf(a);
    FgAbGroup g;
    g.rank = a.rows() - s.invariant_factors.size();
    for (const Int& f : s.invariant_factors)
        if (f >= 2) g.torsion.push_back(f);
    return g;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination with row pivoting
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(m, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact by Bareiss
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

bool is_unimodular(const IntMatrix& a) {
    if (a.rows() != a.cols()) return false;
    Int det = determinant(a);
    return det == 1 || det == -1;
}

LatticeBuilder::LatticeBuilder(std::size_t dim) : dim_(dim) {}

bool LatticeBuilder::add(std::vector<Int> v) {
    if (v.size() != dim_) throw std::invalid_argument("LatticeBuilder: dimension mismatch");
    bool grew = false;
    for (;;) {
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0) ++p;
        if (p == dim_) return grew;
        // find existing column with this pivot
        std::size_t slot = cols_.size();
        for (std::size_t c = 0; c < cols_.size(); ++c)
            if (pivot_of_col_[c] == p) {
                slot = c;
                break;
            }
        if (slot == cols_.size()) {
            if (v[p] < 0)
                for (auto& x : v) x = -x;
            cols_.push_back(std::move(v));
            pivot_of_col_.push_back(p);
            return true;
        }
        std::vector<Int>& b = cols_[slot];
        const Int &bp = b[p], &vp = v[p];
        if (vp % bp == 0) {
            Int q = vp / bp;
            for (std::size_t i = p; i < dim_; ++i) v[i] -= q * b[i];
            // continue reducing v at a later pivot
        } else {
            // gcd step: combine column and vector
            Int g, x, y;
            {
                // extended gcd of bp, vp
                Int old_r = bp, r = vp, old_s = 1, s = 0, old_t = 0, t = 1;
                while (r != 0) {
                    Int q = old_r / r;
                    Int tmp = old_r - q * r; old_r = r; r = tmp;
                    tmp = old_s - q * s; old_s = s; s = tmp;
                    tmp = old_t - q * t; old_t = t; t = tmp;
                }
                g = old_r; x = old_s; y = old_t;
                if (g < 0) { g = -g; x = -x; y = -y; }
            }
            Int bq = bp / g, vq = vp / g;
            std::vector<Int> nb(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                nb[i] = x * b[i] + y * v[i];
                v[i] = bq * v[i] - vq * b[i];  // pivot entry becomes 0
            }
            b = std::move(nb);
            grew = true;
        }
    }
}

IntMatrix LatticeBuilder::basis() const {
    // deterministic order: sort columns by pivot row
    std::vector<std::size_t> order(cols_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pivot_of_col_[a] < pivot_of_col_[b];
    });
    IntMatrix out(dim_, cols_.size());
    for (std::size_t c = 0; c < order.size(); ++c)
        for (std::size_t i = 0; i < dim_; ++i) out.at(i, c) = cols_[order[c]][i];
    return out;
}

std::size_t LatticeBuilder::rank() const { return cols_.size(); }

IntMatrix column_lattice_basis(const IntMatrix& g) {
    LatticeBuilder lb(g.rows());
    for (std::size_t j = 0; j < g.cols(); ++j) lb.add(g.column(j));
    return lb.basis();
}

bool lattice_contains(const IntMatrix& basis, const std::vector<Int>& v) {
    return solve(basis, v).has_value();
}

FgAbGroup FgAbGroup::cyclic(const Int& m) {
    Int a = m < 0 ? Int(-m) : m;
    if (a == 0) return free(1);
    FgAbGroup g;
    if (a >= 2) g.torsion.push_back(a);
    return g;
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    // recanonicalize the combined torsion via a diagonal presentation
    std::vector<Int> t;
    t.insert(t.end(), a.torsion.begin(), a.torsion.end());
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    FgAbGroup g = cokernel_invariants(IntMatrix::diagonal(t));
    g.rank += a.rank + b.rank;
    return g;
}

std::string FgAbGroup::to_string() const {
    if (trivial()) return "0";
    std::string s;
    if (rank == 1)
        s = "Z";
    else if (rank > 1)
        s = "Z^" + std::to_string(rank);
    for (const Int& t : torsion) {
        if (!s.empty()) s += "+";
        s += "Z/" + t.str();
    }
    return s;
}

FgAbGroup FgAbGroup::parse(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("group spec: empty");
    if (s == "0") return FgAbGroup{};
    FgAbGroup g;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('+', pos);
        std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (part == "Z") {
            g.rank += 1;
        } else if (part.rfind("Z^", 0) == 0) {
            g.rank += std::stoul(part.substr(2));
        } else if (part.rfind("Z/", 0) == 0) {
            Int t(part.substr(2));
            if (t < 2) throw std::invalid_argument("group spec: torsion order must be >= 2");
            g.torsion.push_back(t);
        } else {
            throw std::invalid_argument("group spec: cannot parse '" + part + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    // canonicalize torsion into a divisibility chain
    FgAbGroup canon = cokernel_invariants(IntMatrix::diagonal(g.torsion));
    canon.rank += g.rank;
    return canon;
}

}  // namespace cubix
