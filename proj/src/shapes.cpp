#include "cubix/shapes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cubix {

namespace {

ValidationReport fail(long degree, std::string msg) {
    return ValidationReport{false, std::move(msg), degree};
}

bool table_total(const std::vector<std::size_t>& t, std::size_t domain, std::size_t codomain) {
    if (t.size() != domain) return false;
    for (auto v : t)
        if (v >= codomain) return false;
    return true;
}

}  // namespace

ValidationReport validate_presimplicial(const FinPresimplicialSet& s) {
    if (s.cells.empty()) return fail(-1, "no cells");
    if (s.face.size() != s.cells.size()) return fail(-1, "face table count mismatch");
    for (std::size_t n = 1; n < s.cells.size(); ++n) {
        if (s.face[n].size() != n + 1)
            return fail(static_cast<long>(n), "expected " + std::to_string(n + 1) +
                                                  " face maps in dimension " + std::to_string(n));
        for (std::size_t i = 0; i <= n; ++i)
            if (!table_total(s.face[n][i], s.cells[n].size(), s.cells[n - 1].size()))
                return fail(static_cast<long>(n),
                            "face map d_" + std::to_string(i) + " in dimension " +
                                std::to_string(n) + " hits a nonexistent cell");
    }
    for (std::size_t n = 2; n < s.cells.size(); ++n)
        for (std::size_t c = 0; c < s.cells[n].size(); ++c)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j) {
                    std::size_t lhs = s.face[n - 1][i][s.face[n][j][c]];
                    std::size_t rhs = s.face[n - 1][j - 1][s.face[n][i][c]];
                    if (lhs != rhs)
                        return fail(static_cast<long>(n),
                                    "presimplicial identity fails at cell '" + s.cells[n][c] +
                                        "' (i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                                        ")");
                }
    return {};
}

ValidationReport validate_pseudocubical(const FinPseudocubicalSet& x) {
    if (x.cells.empty()) return fail(-1, "no cells");
    if (x.face.size() != x.cells.size()) return fail(-1, "face table count mismatch");
    for (std::size_t n = 1; n < x.cells.size(); ++n) {
        if (x.face[n].size() != n)
            return fail(static_cast<long>(n), "expected " + std::to_string(n) +
                                                  " face pairs in dimension " + std::to_string(n));
        for (std::size_t i = 1; i <= n; ++i)
            for (int eps = 0; eps < 2; ++eps)
                if (!table_total(x.face[n][i - 1][eps], x.cells[n].size(), x.cells[n - 1].size()))
                    return fail(static_cast<long>(n),
                                "face map d_" + std::to_string(i) + "^" + std::to_string(eps) +
                                    " in dimension " + std::to_string(n) +
                                    " hits a nonexistent cell");
    }
    // face-face identities
    for (std::size_t n = 2; n < x.cells.size(); ++n)
        for (std::size_t c = 0; c < x.cells[n].size(); ++c)
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t j = i + 1; j <= n; ++j)
                    for (int a = 0; a < 2; ++a)
                        for (int e = 0; e < 2; ++e) {
                            std::size_t lhs = x.face[n - 1][i - 1][a][x.face[n][j - 1][e][c]];
                            std::size_t rhs = x.face[n - 1][j - 2][e][x.face[n][i - 1][a][c]];
                            if (lhs != rhs)
                                return fail(static_cast<long>(n),
                                            "pseudocubical identity fails at cell '" +
                                                x.cells[n][c] + "' (i=" + std::to_string(i) +
                                                ", j=" + std::to_string(j) +
                                                ", alpha=" + std::to_string(a) +
                                                ", eps=" + std::to_string(e) + ")");
                        }
    if (x.has_degeneracies) {
        if (x.degen.size() != x.cells.size()) return fail(-1, "degeneracy table count mismatch");
        for (std::size_t n = 1; n < x.cells.size(); ++n) {
            if (x.degen[n].size() != n)
                return fail(static_cast<long>(n), "expected " + std::to_string(n) +
                                                      " degeneracies into dimension " +
                                                      std::to_string(n));
            for (std::size_t i = 1; i <= n; ++i)
                if (!table_total(x.degen[n][i - 1], x.cells[n - 1].size(), x.cells[n].size()))
                    return fail(static_cast<long>(n),
                                "degeneracy s_" + std::to_string(i) + " into dimension " +
                                    std::to_string(n) + " hits a nonexistent cell");
        }
        // face-degeneracy identities
        for (std::size_t n = 1; n < x.cells.size(); ++n)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t c = 0; c < x.cells[n - 1].size(); ++c) {
                    std::size_t sc = x.degen[n][j - 1][c];
                    for (std::size_t i = 1; i <= n; ++i)
                        for (int a = 0; a < 2; ++a) {
                            std::size_t lhs = x.face[n][i - 1][a][sc];
                            std::size_t rhs;
                            if (i < j)
                                rhs = x.degen[n - 1][j - 2][x.face[n - 1][i - 1][a][c]];
                            else if (i == j)
                                rhs = c;
                            else
                                rhs = x.degen[n - 1][j - 1][x.face[n - 1][i - 2][a][c]];
                            if (lhs != rhs)
                                return fail(static_cast<long>(n),
                                            "degeneracy identity fails at cell '" +
                                                x.cells[n - 1][c] + "' (i=" + std::to_string(i) +
                                                ", j=" + std::to_string(j) +
                                                ", alpha=" + std::to_string(a) + ")");
                        }
                }
    }
    return {};
}

ValidationReport validate_augmented(const AugmentedShape& a) {
    ValidationReport base = a.is_presimplicial() ? validate_presimplicial(a.presimplicial())
                                                 : validate_pseudocubical(a.pseudocubical());
    if (!base) return base;
    std::size_t verts =
        a.is_presimplicial() ? a.presimplicial().count(0) : a.pseudocubical().count(0);
    if (!table_total(a.aug, verts, a.target.size()))
        return fail(0, "augmentation is not a total map to the target");
    if (a.is_presimplicial()) {
        const auto& s = a.presimplicial();
        if (s.cells.size() > 1)
            for (std::size_t c = 0; c < s.cells[1].size(); ++c)
                if (a.aug[s.face[1][0][c]] != a.aug[s.face[1][1][c]])
                    return fail(1, "augmentation does not equalize the edge faces at '" +
                                       s.cells[1][c] + "'");
    } else {
        const auto& x = a.pseudocubical();
        if (x.cells.size() > 1)
            for (std::size_t c = 0; c < x.cells[1].size(); ++c)
                if (a.aug[x.face[1][0][0][c]] != a.aug[x.face[1][0][1][c]])
                    return fail(1, "augmentation does not equalize the edge faces at '" +
                                       x.cells[1][c] + "'");
    }
    return {};
}

// ---------------------------------------------------------------------------
// cubical closure with interchange normal form
// ---------------------------------------------------------------------------

namespace {

// degeneracy words stored as strictly decreasing index sequences
using Word = std::vector<std::size_t>;

Word word_insert(const Word& w, std::size_t i) {
    Word out;
    std::size_t t = 0;
    for (; t < w.size() && w[t] >= i; ++t) out.push_back(w[t] + 1);
    out.push_back(i);
    for (; t < w.size(); ++t) out.push_back(w[t]);
    return out;
}

struct CellRef {
    Word word;
    std::size_t base;
    bool operator<(const CellRef& o) const {
        return std::tie(base, word) < std::tie(o.base, o.word);
    }
    bool operator==(const CellRef& o) const { return base == o.base && word == o.word; }
};

CellRef parse_cell_expr(const std::string& expr,
                        const std::map<std::string, std::size_t>& names) {
    std::string e = expr;
    Word word;
    while (e.size() > 1 && e[0] == 's' && isdigit(static_cast<unsigned char>(e[1]))) {
        std::size_t k = 1;
        while (k < e.size() && isdigit(static_cast<unsigned char>(e[k]))) ++k;
        word.push_back(std::stoul(e.substr(1, k - 1)));
        e = e.substr(k);
    }
    if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    auto it = names.find(e);
    if (it == names.end()) throw std::invalid_argument("unknown cell '" + e + "' in face expression");
    // normalize the word by reinserting from the inside out
    CellRef ref{{}, it->second};
    for (auto jt = word.rbegin(); jt != word.rend(); ++jt) ref.word = word_insert(ref.word, *jt);
    return ref;
}

}  // namespace

FinPseudocubicalSet build_cubical_closure(const std::vector<CubicalCellSpec>& nondeg,
                                          std::size_t truncation) {
    std::map<std::string, std::size_t> names;
    for (std::size_t i = 0; i < nondeg.size(); ++i) {
        if (names.count(nondeg[i].name)) throw std::invalid_argument("duplicate cell name");
        names[nondeg[i].name] = i;
    }
    std::vector<std::vector<CellRef>> base_faces(nondeg.size());
    for (std::size_t i = 0; i < nondeg.size(); ++i) {
        if (nondeg[i].faces.size() != nondeg[i].dim)
            throw std::invalid_argument("cell '" + nondeg[i].name + "': wrong face count");
        for (const auto& pair : nondeg[i].faces) {
            base_faces[i].push_back(parse_cell_expr(pair[0], names));
            base_faces[i].push_back(parse_cell_expr(pair[1], names));
        }
    }

    // enumerate cells per dimension: nondegenerate first, then (base, word)
    std::vector<std::vector<CellRef>> cells_by_dim(truncation + 1);
    std::vector<std::map<CellRef, std::size_t>> index_by_dim(truncation + 1);
    auto ref_dim = [&](const CellRef& r) { return nondeg[r.base].dim + r.word.size(); };
    for (std::size_t n = 0; n <= truncation; ++n)
        for (std::size_t b = 0; b < nondeg.size(); ++b)
            if (nondeg[b].dim == n) cells_by_dim[n].push_back(CellRef{{}, b});
    // degenerate closure, dimension by dimension
    for (std::size_t n = 1; n <= truncation; ++n) {
        std::set<CellRef> seen(cells_by_dim[n].begin(), cells_by_dim[n].end());
        for (const CellRef& c : cells_by_dim[n - 1])
            for (std::size_t i = 1; i <= n; ++i) {
                CellRef s{word_insert(c.word, i), c.base};
                if (seen.insert(s).second) cells_by_dim[n].push_back(s);
            }
        std::sort(cells_by_dim[n].begin() + static_cast<long>(std::count_if(
                      cells_by_dim[n].begin(), cells_by_dim[n].end(),
                      [&](const CellRef& r) { return r.word.empty(); })),
                  cells_by_dim[n].end());
    }
    for (std::size_t n = 0; n <= truncation; ++n)
        for (std::size_t c = 0; c < cells_by_dim[n].size(); ++c)
            index_by_dim[n][cells_by_dim[n][c]] = c;

    // recursive face evaluation
    std::function<CellRef(std::size_t, int, const CellRef&)> face_ref =
        [&](std::size_t i, int eps, const CellRef& c) -> CellRef {
        if (c.word.empty()) return base_faces[c.base][(i - 1) * 2 + eps];
        std::size_t j = c.word.front();
        CellRef w{Word(c.word.begin() + 1, c.word.end()), c.base};
        if (i == j) return w;
        if (i < j) {
            CellRef f = face_ref(i, eps, w);
            return CellRef{word_insert(f.word, j - 1), f.base};
        }
        CellRef f = face_ref(i - 1, eps, w);
        return CellRef{word_insert(f.word, j), f.base};
    };

    FinPseudocubicalSet out;
    out.has_degeneracies = true;
    out.cells.resize(truncation + 1);
    out.face.resize(truncation + 1);
    out.degen.resize(truncation + 1);
    auto name_of = [&](const CellRef& r) {
        std::string s;
        for (auto j : r.word) s += "s" + std::to_string(j);
        if (r.word.empty()) return nondeg[r.base].name;
        return s + "(" + nondeg[r.base].name + ")";
    };
    for (std::size_t n = 0; n <= truncation; ++n)
        for (const CellRef& r : cells_by_dim[n]) out.cells[n].push_back(name_of(r));
    for (std::size_t n = 1; n <= truncation; ++n) {
        out.face[n].resize(n);
        for (std::size_t i = 1; i <= n; ++i)
            for (int eps = 0; eps < 2; ++eps) {
                auto& tbl = out.face[n][i - 1][eps];
                tbl.reserve(cells_by_dim[n].size());
                for (const CellRef& c : cells_by_dim[n]) {
                    CellRef f = face_ref(i, eps, c);
                    if (ref_dim(f) != n - 1)
                        throw std::invalid_argument("face of '" + name_of(c) +
                                                    "' has wrong dimension");
                    auto it = index_by_dim[n - 1].find(f);
                    if (it == index_by_dim[n - 1].end())
                        throw std::invalid_argument("face '" + name_of(f) + "' of '" + name_of(c) +
                                                    "' missing from closure");
                    tbl.push_back(it->second);
                }
            }
        out.degen[n].resize(n);
        for (std::size_t i = 1; i <= n; ++i) {
            auto& tbl = out.degen[n][i - 1];
            for (const CellRef& c : cells_by_dim[n - 1])
                tbl.push_back(index_by_dim[n].at(CellRef{word_insert(c.word, i), c.base}));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// builtin model library
// ---------------------------------------------------------------------------

namespace {

FinPresimplicialSet ordered_complex(const std::vector<std::vector<int>>& maximal) {
    std::set<std::vector<int>> simplices;
    std::function<void(const std::vector<int>&)> close = [&](const std::vector<int>& s) {
        if (!simplices.insert(s).second) return;
        if (s.size() == 1) return;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<int> t = s;
            t.erase(t.begin() + static_cast<long>(i));
            close(t);
        }
    };
    for (const auto& s : maximal) close(s);
    std::size_t dim = 0;
    for (const auto& s : simplices) dim = std::max(dim, s.size() - 1);
    FinPresimplicialSet out;
    out.cells.resize(dim + 1);
    out.face.resize(dim + 1);
    std::map<std::vector<int>, std::size_t> index;
    std::vector<std::vector<std::vector<int>>> by_dim(dim + 1);
    for (const auto& s : simplices) by_dim[s.size() - 1].push_back(s);
    auto label = [](const std::vector<int>& s) {
        std::string t;
        for (int v : s) t += std::to_string(v);
        return t;
    };
    for (std::size_t n = 0; n <= dim; ++n)
        for (std::size_t c = 0; c < by_dim[n].size(); ++c) {
            index[by_dim[n][c]] = c;
            out.cells[n].push_back(label(by_dim[n][c]));
        }
    for (std::size_t n = 1; n <= dim; ++n) {
        out.face[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            for (const auto& s : by_dim[n]) {
                std::vector<int> t = s;
                t.erase(t.begin() + static_cast<long>(i));
                out.face[n][i].push_back(index.at(t));
            }
    }
    return out;
}

FinPresimplicialSet one_vertex_surface(const std::vector<std::array<std::size_t, 3>>& triangles,
                                       std::size_t edges, std::vector<std::string> edge_names,
                                       std::vector<std::string> tri_names) {
    FinPresimplicialSet s;
    s.cells = {{"v"}, std::move(edge_names), std::move(tri_names)};
    s.face.resize(3);
    s.face[1] = {std::vector<std::size_t>(edges, 0), std::vector<std::size_t>(edges, 0)};
    s.face[2].resize(3);
    for (const auto& t : triangles)
        for (std::size_t i = 0; i < 3; ++i) s.face[2][i].push_back(t[i]);
    return s;
}

}  // namespace

std::vector<std::string> builtin_model_names() {
    return {"point-delta", "point-cube", "s1-delta", "s1-cube",    "s2-delta",
            "torus-delta", "torus-cube", "rp2-delta", "klein-delta", "klein-cube"};
}

namespace {

std::string canonical_model_name(const std::string& name) {
    std::string n = name;
    auto replace = [&](const std::string& from, const std::string& to) {
        auto pos = n.find(from);
        if (pos != std::string::npos) n = n.substr(0, pos) + to + n.substr(pos + from.size());
    };
    replace("Δ", "delta");   // Δ
    replace("□", "cube");    // □
    replace("-D", "-delta");
    replace("-Q", "-cube");
    return n;
}

}  // namespace

bool builtin_is_cubical(const std::string& name) {
    return canonical_model_name(name).find("cube") != std::string::npos;
}

Shape builtin_model(const std::string& name) {
    const std::string n = canonical_model_name(name);
    if (n == "point-delta") {
        FinPresimplicialSet s;
        s.cells = {{"v"}};
        s.face.resize(1);
        return s;
    }
    if (n == "s1-delta") {
        FinPresimplicialSet s;
        s.cells = {{"v"}, {"e"}};
        s.face.resize(2);
        s.face[1] = {{0}, {0}};
        return s;
    }
    if (n == "s2-delta")
        return ordered_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    if (n == "torus-delta")
        // edges a,b,c; U = (a, c, b), L = (b, c, a); dU = dL = a + b - c
        return one_vertex_surface({{0, 2, 1}, {1, 2, 0}}, 3, {"a", "b", "c"}, {"U", "L"});
    if (n == "klein-delta")
        // U = (b, c, a): dU = a + b - c;  L = (c, b, a): dL = a - b + c
        return one_vertex_surface({{1, 2, 0}, {2, 1, 0}}, 3, {"a", "b", "c"}, {"U", "L"});
    if (n == "rp2-delta") {
        FinPresimplicialSet s;
        s.cells = {{"v", "w"}, {"a", "b", "c"}, {"U", "L"}};
        s.face.resize(3);
        // a, b: v -> w; c: loop at w
        s.face[1] = {{1, 1, 1}, {0, 0, 1}};
        // U = (c, a, b), L = (c, b, a)
        s.face[2] = {{2, 2}, {0, 1}, {1, 0}};
        return s;
    }
    if (n == "point-cube")
        return build_cubical_closure({{"p", 0, {}}}, 3);
    if (n == "s1-cube")
        return build_cubical_closure({{"p", 0, {}}, {"e", 1, {{{"p", "p"}}}}}, 2);
    if (n == "torus-cube")
        return build_cubical_closure({{"p", 0, {}},
                                      {"a", 1, {{{"p", "p"}}}},
                                      {"b", 1, {{{"p", "p"}}}},
                                      {"Q", 2, {{{"a", "a"}, {"b", "b"}}}}},
                                     3);
    if (n == "klein-cube")
        return build_cubical_closure({{"p", 0, {}},
                                      {"a", 1, {{{"p", "p"}}}},
                                      {"b", 1, {{{"p", "p"}}}},
                                      {"c", 1, {{{"p", "p"}}}},
                                      {"U", 2, {{{"b", "s1(p)"}, {"c", "a"}}}},
                                      {"V", 2, {{{"c", "s1(p)"}, {"b", "a"}}}}},
                                     3);
    throw std::invalid_argument("unknown builtin model '" + name + "'");
}

// ---------------------------------------------------------------------------
// Cech resolutions of a finite surjection
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> fibers_of(const std::vector<std::size_t>& f,
                                                std::size_t b_size) {
    std::vector<std::vector<std::size_t>> fib(b_size);
    for (std::size_t e = 0; e < f.size(); ++e) {
        if (f[e] >= b_size) throw std::invalid_argument("cech: map value out of range");
        fib[f[e]].push_back(e);
    }
    for (std::size_t b = 0; b < b_size; ++b)
        if (fib[b].empty()) throw std::invalid_argument("cech: map is not surjective");
    return fib;
}

std::string tuple_id(const std::vector<std::size_t>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += "e" + std::to_string(t[i]);
    }
    return s;
}

// all length-len tuples over each fiber, fiber-major then lexicographic
struct TupleTable {
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> fiber;  // fiber index per tuple
    std::map<std::vector<std::size_t>, std::size_t> index;
};

TupleTable enumerate_tuples(const std::vector<std::vector<std::size_t>>& fib, std::size_t len) {
    TupleTable t;
    for (std::size_t b = 0; b < fib.size(); ++b) {
        std::vector<std::size_t> cur(len, 0);
        for (;;) {
            std::vector<std::size_t> tup(len);
            for (std::size_t k = 0; k < len; ++k) tup[k] = fib[b][cur[k]];
            t.index[tup] = t.tuples.size();
            t.tuples.push_back(std::move(tup));
            t.fiber.push_back(b);
            std::size_t k = len;
            while (k > 0 && ++cur[k - 1] == fib[b].size()) cur[--k] = 0;
            if (k == 0) break;
        }
    }
    return t;
}

}  // namespace

AugmentedShape cech_presimplicial(const std::vector<std::size_t>& f, std::size_t b_size,
                                  std::size_t depth) {
    auto fib = fibers_of(f, b_size);
    std::vector<TupleTable> levels;
    for (std::size_t n = 0; n <= depth; ++n) levels.push_back(enumerate_tuples(fib, n + 1));

    FinPresimplicialSet s;
    s.cells.resize(depth + 1);
    s.face.resize(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n)
        for (const auto& t : levels[n].tuples) s.cells[n].push_back(tuple_id(t));
    for (std::size_t n = 1; n <= depth; ++n) {
        s.face[n].resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            for (const auto& t : levels[n].tuples) {
                std::vector<std::size_t> u = t;
                u.erase(u.begin() + static_cast<long>(i));
                s.face[n][i].push_back(levels[n - 1].index.at(u));
            }
    }

    AugmentedShape a;
    a.shape = std::move(s);
    for (std::size_t b = 0; b < b_size; ++b) a.target.push_back("b" + std::to_string(b));
    for (const auto& t : levels[0].tuples) a.aug.push_back(f[t[0]]);

    ShapeContraction con;
    for (std::size_t b = 0; b < b_size; ++b)
        con.section.push_back(levels[0].index.at({fib[b][0]}));
    con.h.resize(depth);
    for (std::size_t n = 0; n < depth; ++n)
        for (std::size_t c = 0; c < levels[n].tuples.size(); ++c) {
            std::vector<std::size_t> u = levels[n].tuples[c];
            u.insert(u.begin(), fib[levels[n].fiber[c]][0]);
            con.h[n].push_back(levels[n + 1].index.at(u));
        }
    a.contraction = std::move(con);
    return a;
}

AugmentedShape cech_pseudocubical(const std::vector<std::size_t>& f, std::size_t b_size,
                                  std::size_t depth) {
    auto fib = fibers_of(f, b_size);
    std::vector<TupleTable> levels;
    for (std::size_t n = 0; n <= depth; ++n)
        levels.push_back(enumerate_tuples(fib, std::size_t(1) << n));

    FinPseudocubicalSet x;
    x.has_degeneracies = true;
    x.cells.resize(depth + 1);
    x.face.resize(depth + 1);
    x.degen.resize(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n)
        for (const auto& t : levels[n].tuples) x.cells[n].push_back(tuple_id(t));
    for (std::size_t n = 1; n <= depth; ++n) {
        x.face[n].resize(n);
        x.degen[n].resize(n);
        const std::size_t half = std::size_t(1) << (n - 1);
        for (std::size_t i = 1; i <= n; ++i) {
            const std::size_t lo_mask = (std::size_t(1) << (i - 1)) - 1;
            for (int eps = 0; eps < 2; ++eps)
                for (const auto& t : levels[n].tuples) {
                    std::vector<std::size_t> u(half);
                    for (std::size_t w = 0; w < half; ++w) {
                        std::size_t low = w & lo_mask;
                        std::size_t high = w >> (i - 1);
                        std::size_t old = low | (std::size_t(eps) << (i - 1)) | (high << i);
                        u[w] = t[old];
                    }
                    x.face[n][i - 1][eps].push_back(levels[n - 1].index.at(u));
                }
            for (const auto& t : levels[n - 1].tuples) {
                std::vector<std::size_t> u(half * 2);
                for (std::size_t w = 0; w < half * 2; ++w) {
                    std::size_t low = w & lo_mask;
                    std::size_t high = w >> i;
                    u[w] = t[low | (high << (i - 1))];
                }
                x.degen[n][i - 1].push_back(levels[n].index.at(u));
            }
        }
    }

    AugmentedShape a;
    a.shape = std::move(x);
    for (std::size_t b = 0; b < b_size; ++b) a.target.push_back("b" + std::to_string(b));
    for (const auto& t : levels[0].tuples) a.aug.push_back(f[t[0]]);

    ShapeContraction con;
    for (std::size_t b = 0; b < b_size; ++b)
        con.section.push_back(levels[0].index.at({fib[b][0]}));
    con.h.resize(depth);
    con.constant.resize(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n) {
        const std::size_t len = std::size_t(1) << n;
        for (std::size_t c = 0; c < levels[n].tuples.size(); ++c) {
            std::size_t base = fib[levels[n].fiber[c]][0];
            con.constant[n].push_back(
                levels[n].index.at(std::vector<std::size_t>(len, base)));
            if (n < depth) {
                const auto& t = levels[n].tuples[c];
                std::vector<std::size_t> u(len * 2);
                for (std::size_t w = 0; w < len * 2; ++w)
                    u[w] = (w & 1) ? base : t[w >> 1];
                con.h[n].push_back(levels[n + 1].index.at(u));
            }
        }
    }
    a.contraction = std::move(con);
    return a;
}

// ---------------------------------------------------------------------------
// Hom(q, -) cellwise
// ---------------------------------------------------------------------------

namespace {

// all q-tuples over [count), lexicographic with component 0 major
std::size_t power_checked(std::size_t count, std::size_t q, std::size_t max_cells) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < q; ++i) {
        if (count != 0 && total > max_cells / count)
            throw std::length_error("hom_shape: dimension exceeds cell budget");
        total *= count;
    }
    if (total > max_cells) throw std::length_error("hom_shape: dimension exceeds cell budget");
    return total;
}

std::vector<std::size_t> unrank(std::size_t r, std::size_t q, std::size_t count) {
    std::vector<std::size_t> t(q);
    for (std::size_t k = q; k-- > 0;) {
        t[k] = r % count;
        r /= count;
    }
    return t;
}

std::size_t rank_of(const std::vector<std::size_t>& t, std::size_t count) {
    std::size_t r = 0;
    for (auto v : t) r = r * count + v;
    return r;
}

std::vector<std::size_t> map_tuplewise(const std::vector<std::size_t>& table, std::size_t q,
                                       std::size_t src_count, std::size_t dst_count,
                                       std::size_t n_tuples) {
    std::vector<std::size_t> out(n_tuples);
    for (std::size_t r = 0; r < n_tuples; ++r) {
        auto t = unrank(r, q, src_count);
        for (auto& v : t) v = table[v];
        out[r] = rank_of(t, dst_count);
    }
    return out;
}

std::string hom_cell_id(const std::vector<std::string>& names, const std::vector<std::size_t>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ";";
        s += names[t[i]];
    }
    return s;
}

}  // namespace

AugmentedShape hom_shape(std::size_t q, const AugmentedShape& a, std::size_t max_cells) {
    if (q == 0) throw std::invalid_argument("hom_shape: probe set must be nonempty");
    AugmentedShape out;
    const std::vector<std::vector<std::string>>* cells;
    if (a.is_presimplicial())
        cells = &a.presimplicial().cells;
    else
        cells = &a.pseudocubical().cells;
    std::vector<std::size_t> counts, hom_counts;
    for (const auto& c : *cells) {
        counts.push_back(c.size());
        hom_counts.push_back(power_checked(c.size(), q, max_cells));
    }
    auto make_cells = [&](std::size_t n) {
        std::vector<std::string> ids;
        ids.reserve(hom_counts[n]);
        for (std::size_t r = 0; r < hom_counts[n]; ++r)
            ids.push_back(hom_cell_id((*cells)[n], unrank(r, q, counts[n])));
        return ids;
    };

    if (a.is_presimplicial()) {
        const auto& s = a.presimplicial();
        FinPresimplicialSet h;
        h.cells.resize(s.cells.size());
        h.face.resize(s.cells.size());
        for (std::size_t n = 0; n < s.cells.size(); ++n) {
            h.cells[n] = make_cells(n);
            if (n >= 1) {
                h.face[n].resize(n + 1);
                for (std::size_t i = 0; i <= n; ++i)
                    h.face[n][i] =
                        map_tuplewise(s.face[n][i], q, counts[n], counts[n - 1], hom_counts[n]);
            }
        }
        out.shape = std::move(h);
    } else {
        const auto& x = a.pseudocubical();
        FinPseudocubicalSet h;
        h.has_degeneracies = x.has_degeneracies;
        h.cells.resize(x.cells.size());
        h.face.resize(x.cells.size());
        h.degen.resize(x.cells.size());
        for (std::size_t n = 0; n < x.cells.size(); ++n) {
            h.cells[n] = make_cells(n);
            if (n >= 1) {
                h.face[n].resize(n);
                if (x.has_degeneracies) h.degen[n].resize(n);
                for (std::size_t i = 1; i <= n; ++i) {
                    for (int eps = 0; eps < 2; ++eps)
                        h.face[n][i - 1][eps] = map_tuplewise(x.face[n][i - 1][eps], q, counts[n],
                                                              counts[n - 1], hom_counts[n]);
                    if (x.has_degeneracies)
                        h.degen[n][i - 1] = map_tuplewise(x.degen[n][i - 1], q, counts[n - 1],
                                                          counts[n], hom_counts[n - 1]);
                }
            }
        }
        out.shape = std::move(h);
    }

    std::size_t tgt = a.target.size();
    std::size_t hom_tgt = power_checked(tgt, q, max_cells);
    for (std::size_t r = 0; r < hom_tgt; ++r)
        out.target.push_back(hom_cell_id(a.target, unrank(r, q, tgt)));
    out.aug = map_tuplewise(a.aug, q, counts[0], tgt, hom_counts[0]);

    if (a.contraction) {
        const auto& c = *a.contraction;
        ShapeContraction hc;
        hc.section = map_tuplewise(c.section, q, tgt, counts[0], hom_tgt);
        hc.h.resize(c.h.size());
        for (std::size_t n = 0; n < c.h.size(); ++n)
            hc.h[n] = map_tuplewise(c.h[n], q, counts[n], counts[n + 1], hom_counts[n]);
        hc.constant.resize(c.constant.size());
        for (std::size_t n = 0; n < c.constant.size(); ++n)
            hc.constant[n] = map_tuplewise(c.constant[n], q, counts[n], counts[n], hom_counts[n]);
        out.contraction = std::move(hc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// extension conditions
// ---------------------------------------------------------------------------

namespace {

bool aug_surjective(const AugmentedShape& a) {
    std::vector<char> hit(a.target.size(), 0);
    for (auto b : a.aug) hit[b] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace

bool check_simplicial_extension(const AugmentedShape& a, std::size_t through) {
    const auto& s = a.presimplicial();
    if (!aug_surjective(a)) return false;
    for (std::size_t n = 0; n + 1 <= through; ++n) {
        if (n + 1 > s.dim()) return false;  // no room for fillers
        const std::size_t cn = s.count(n);
        // filler lookup: face tuple of an (n+1)-cell -> present
        std::set<std::vector<std::size_t>> fillers;
        for (std::size_t c = 0; c < s.count(n + 1); ++c) {
            std::vector<std::size_t> key(n + 2);
            for (std::size_t i = 0; i <= n + 1; ++i) key[i] = s.face[n + 1][i][c];
            fillers.insert(std::move(key));
        }
        // candidates for slot j >= 1 keyed by d_0 (n >= 1) or augmentation (n == 0)
        auto low_face = [&](std::size_t cell, std::size_t i) {
            return n == 0 ? a.aug[cell] : s.face[n][i][cell];
        };
        std::map<std::size_t, std::vector<std::size_t>> by_face0;
        for (std::size_t c = 0; c < cn; ++c) by_face0[low_face(c, 0)].push_back(c);

        std::vector<std::size_t> all_cells(cn);
        std::iota(all_cells.begin(), all_cells.end(), 0);
        const std::vector<std::size_t> none;

        std::vector<std::size_t> tuple(n + 2);
        std::function<bool(std::size_t)> fill = [&](std::size_t j) -> bool {
            if (j == n + 2) return fillers.count(tuple) > 0;
            const std::vector<std::size_t>* cand = &all_cells;
            if (j > 0) {
                // d_0 x_j = d_{j-1} x_0 pins the candidate key
                auto it = by_face0.find(low_face(tuple[0], j - 1));
                cand = it == by_face0.end() ? &none : &it->second;
            }
            for (std::size_t c : *cand) {
                bool ok = true;
                // d_i x_j = d_{j-1} x_i for i < j (i = 0 already enforced by the key)
                for (std::size_t i = 1; i < j && ok; ++i)
                    if (low_face(c, i) != low_face(tuple[i], j - 1)) ok = false;
                if (!ok) continue;
                tuple[j] = c;
                if (!fill(j + 1)) return false;
            }
            return true;
        };
        if (!fill(0)) return false;
    }
    return true;
}

bool check_cubical_extension(const AugmentedShape& a, std::size_t through) {
    const auto& x = a.pseudocubical();
    if (!aug_surjective(a)) return false;

    // condition (i): vertex pairs with equal augmentation bound an edge
    if (through >= 1) {
        if (x.dim() < 1) return false;
        std::set<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t c = 0; c < x.count(1); ++c)
            edges.insert({x.face[1][0][0][c], x.face[1][0][1][c]});
        for (std::size_t p = 0; p < x.count(0); ++p)
            for (std::size_t r = 0; r < x.count(0); ++r)
                if (a.aug[p] == a.aug[r] && !edges.count({p, r})) return false;
    }

    // condition (ii)
    for (std::size_t n = 1; n + 1 <= through; ++n) {
        if (n + 1 > x.dim()) return false;
        const std::size_t cn = x.count(n);
        std::set<std::vector<std::size_t>> fillers;
        for (std::size_t c = 0; c < x.count(n + 1); ++c) {
            std::vector<std::size_t> key(2 * (n + 1));
            for (std::size_t i = 1; i <= n + 1; ++i)
                for (int e = 0; e < 2; ++e) key[2 * (i - 1) + e] = x.face[n + 1][i - 1][e][c];
            fillers.insert(std::move(key));
        }
        // candidates keyed by the two direction-1 faces
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_d1;
        for (std::size_t c = 0; c < cn; ++c)
            by_d1[{x.face[n][0][0][c], x.face[n][0][1][c]}].push_back(c);

        // tuple slot t = 2*(j-1)+eps holds x_j^eps
        std::vector<std::size_t> tuple(2 * (n + 1));
        std::function<bool(std::size_t)> fill = [&](std::size_t t) -> bool {
            if (t == tuple.size()) return fillers.count(tuple) > 0;
            const std::size_t j = t / 2 + 1;
            const int eps = static_cast<int>(t % 2);
            std::vector<std::size_t> scratch;
            const std::vector<std::size_t>* cand;
            if (j == 1) {
                scratch.resize(cn);
                std::iota(scratch.begin(), scratch.end(), 0);
                cand = &scratch;
            } else {
                // i = 1 constraints pin both direction-1 faces of x_j^eps
                std::pair<std::size_t, std::size_t> key{
                    x.face[n][j - 2][eps][tuple[0]],   // d_{j-1}^eps x_1^0
                    x.face[n][j - 2][eps][tuple[1]]};  // d_{j-1}^eps x_1^1
                auto it = by_d1.find(key);
                if (it == by_d1.end()) return true;  // no candidate can ever satisfy i=1
                cand = &it->second;
            }
            for (std::size_t c : *cand) {
                bool ok = true;
                for (std::size_t i = 2; i < j && ok; ++i)
                    for (int al = 0; al < 2 && ok; ++al)
                        if (x.face[n][i - 1][al][c] !=
                            x.face[n][j - 2][eps][tuple[2 * (i - 1) + al]])
                            ok = false;
                if (!ok) continue;
                tuple[t] = c;
                if (!fill(t + 1)) return false;
            }
            return true;
        };
        if (!fill(0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// mutation helper
// ---------------------------------------------------------------------------

std::pair<Shape, std::string> rewire_one_face(const Shape& shape) {
    auto describe = [](std::size_t n, const std::string& map_name, const std::string& cell,
                       const std::string& target) {
        return "rewired " + map_name + " of '" + cell + "' in dimension " + std::to_string(n) +
               " to " + target;
    };
    if (std::holds_alternative<FinPresimplicialSet>(shape)) {
        const auto& s = std::get<FinPresimplicialSet>(shape);
        for (std::size_t n = 1; n < s.cells.size(); ++n)
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t c = 0; c < s.count(n); ++c)
                    for (std::size_t v = 0; v < s.count(n - 1); ++v) {
                        if (v == s.face[n][i][c]) continue;
                        FinPresimplicialSet m = s;
                        m.face[n][i][c] = v;
                        if (!validate_presimplicial(m).ok)
                            return {m, describe(n, "d_" + std::to_string(i), s.cells[n][c],
                                                "'" + s.cells[n - 1][v] + "'")};
                    }
        for (std::size_t n = 1; n < s.cells.size(); ++n)
            if (s.count(n) > 0) {
                FinPresimplicialSet m = s;
                m.face[n][0][0] = s.count(n - 1);  // nonexistent cell
                return {m, describe(n, "d_0", s.cells[n][0], "a nonexistent cell")};
            }
        throw std::invalid_argument("rewire_one_face: shape has no face entries");
    }
    const auto& x = std::get<FinPseudocubicalSet>(shape);
    for (std::size_t n = 1; n < x.cells.size(); ++n)
        for (std::size_t i = 1; i <= n; ++i)
            for (int e = 0; e < 2; ++e)
                for (std::size_t c = 0; c < x.count(n); ++c)
                    for (std::size_t v = 0; v < x.count(n - 1); ++v) {
                        if (v == x.face[n][i - 1][e][c]) continue;
                        FinPseudocubicalSet m = x;
                        m.face[n][i - 1][e][c] = v;
                        if (!validate_pseudocubical(m).ok)
                            return {m, describe(n,
                                                "d_" + std::to_string(i) + "^" + std::to_string(e),
                                                x.cells[n][c], "'" + x.cells[n - 1][v] + "'")};
                    }
    for (std::size_t n = 1; n < x.cells.size(); ++n)
        if (x.count(n) > 0) {
            FinPseudocubicalSet m = x;
            m.face[n][0][0][0] = x.count(n - 1);
            return {m, describe(n, "d_1^0", x.cells[n][0], "a nonexistent cell")};
        }
    throw std::invalid_argument("rewire_one_face: shape has no face entries");
}

}  // namespace cubix
