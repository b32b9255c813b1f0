#include <sstream>

#include "reid/catalog.hpp"

namespace reid {

IntMatrix TowerLayer::relations() const {
    IntMatrix r(generators(), torsion.size());
    for (std::size_t k = 0; k < torsion.size(); ++k) r(free_rank + k, k) = torsion[k];
    return r;
}

Integer CentralTower::hirsch_length() const {
    Integer h = 0;
    for (const TowerLayer& l : layers) h += l.free_rank;
    return h;
}

bool CentralTower::torsion_free() const {
    for (const TowerLayer& l : layers)
        if (!l.torsion.empty()) return false;
    return true;
}

std::vector<Integer> CentralTower::commutator11(std::size_t i, std::size_t j) const {
    std::vector<Integer> zero(depth() >= 2 ? layers[1].generators() : 0, Integer(0));
    if (i == j) return zero;
    bool flip = i > j;
    auto it = bracket11.find(flip ? std::pair{j, i} : std::pair{i, j});
    if (it == bracket11.end()) return zero;
    std::vector<Integer> v = it->second;
    if (flip)
        for (Integer& x : v) x = -x;
    return v;
}

std::vector<Integer> CentralTower::commutator21(std::size_t a, std::size_t j) const {
    auto it = bracket21.find({a, j});
    if (it == bracket21.end()) return std::vector<Integer>(depth() >= 3 ? layers[2].generators() : 0, Integer(0));
    return it->second;
}

void CentralTower::validate() const {
    if (layers.empty() || layers.size() > 3) throw ValidationError(name + ": tower depth must be 1..3");
    for (std::size_t n = 0; n < layers.size(); ++n) {
        const TowerLayer& l = layers[n];
        if (!l.names.empty() && l.names.size() != l.generators())
            throw ValidationError(name + ": layer " + std::to_string(n + 1) + " name count differs from generators");
        for (const Integer& t : l.torsion)
            if (t < 2) throw ValidationError(name + ": torsion orders must be at least 2");
    }
    const std::size_t g1 = layers[0].generators();
    if (!bracket11.empty() && layers.size() < 2) throw ValidationError(name + ": [L1,L1] brackets need a second layer");
    for (const auto& [key, v] : bracket11) {
        if (key.first >= key.second || key.second >= g1)
            throw ValidationError(name + ": [L1,L1] bracket key out of range");
        if (v.size() != layers[1].generators()) throw ValidationError(name + ": [L1,L1] bracket has wrong length");
    }
    if (!bracket21.empty() && layers.size() < 3) throw ValidationError(name + ": [L2,L1] brackets need a third layer");
    for (const auto& [key, v] : bracket21) {
        if (key.first >= layers[1].generators() || key.second >= g1)
            throw ValidationError(name + ": [L2,L1] bracket key out of range");
        if (v.size() != layers[2].generators()) throw ValidationError(name + ": [L2,L1] bracket has wrong length");
    }
}

namespace {

std::vector<std::string> default_names(const std::string& stem, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
    return v;
}

std::string gen_name(const TowerLayer& l, std::size_t i) {
    return i < l.names.size() ? l.names[i] : "g" + std::to_string(i + 1);
}

std::vector<Integer> unit(std::size_t n, std::size_t i) {
    std::vector<Integer> v(n, Integer(0));
    v[i] = 1;
    return v;
}

struct Constraint {
    std::string label;
    std::vector<Integer> source;  // C_p, preimage side
    std::vector<Integer> target;  // D_p, forced image
};

// Constraints X * source == target (mod relations) on layer `n` (0-based, n >= 1).
std::vector<Constraint> layer_constraints(const CentralTower& t, std::size_t n, const std::vector<IntMatrix>& maps) {
    std::vector<Constraint> out;
    const IntMatrix& top = maps[0];
    const std::size_t g1 = t.layers[0].generators();
    const std::size_t k = t.layers[n].generators();
    if (n == 1) {
        for (std::size_t i = 0; i < g1; ++i)
            for (std::size_t j = i + 1; j < g1; ++j) {
                std::vector<Integer> d(k, Integer(0));
                for (std::size_t a = 0; a < g1; ++a)
                    for (std::size_t b = a + 1; b < g1; ++b) {
                        Integer minor = top(a, i) * top(b, j) - top(b, i) * top(a, j);
                        if (minor == 0) continue;
                        std::vector<Integer> c = t.commutator11(a, b);
                        for (std::size_t r = 0; r < k; ++r) d[r] += minor * c[r];
                    }
                out.push_back({"[" + gen_name(t.layers[0], i) + "," + gen_name(t.layers[0], j) + "]",
                               t.commutator11(i, j), std::move(d)});
            }
    } else {
        const IntMatrix& mid = maps[1];
        const std::size_t g2 = t.layers[1].generators();
        for (std::size_t a = 0; a < g2; ++a)
            for (std::size_t j = 0; j < g1; ++j) {
                std::vector<Integer> d(k, Integer(0));
                for (std::size_t c = 0; c < g2; ++c)
                    for (std::size_t b = 0; b < g1; ++b) {
                        Integer coef = mid(c, a) * top(b, j);
                        if (coef == 0) continue;
                        std::vector<Integer> br = t.commutator21(c, b);
                        for (std::size_t r = 0; r < k; ++r) d[r] += coef * br[r];
                    }
                out.push_back({"[" + gen_name(t.layers[1], a) + "," + gen_name(t.layers[0], j) + "]",
                               t.commutator21(a, j), std::move(d)});
            }
    }
    return out;
}

bool congruent_mod(const std::vector<Integer>& a, const std::vector<Integer>& b, const TowerLayer& layer) {
    std::vector<Integer> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return in_column_lattice(diff, layer.relations());
}

void check_preserves_relations(const CentralTower& t, std::size_t n, const IntMatrix& m) {
    const TowerLayer& l = t.layers[n];
    IntMatrix rel = l.relations();
    for (std::size_t c = 0; c < rel.cols(); ++c)
        if (!in_column_lattice(m.apply(rel.column(c)), rel))
            throw ValidationError(t.name + ": layer " + std::to_string(n + 1) + " map does not preserve the torsion relation of " +
                                  gen_name(l, l.free_rank + c));
}

std::string vec_str(const std::vector<Integer>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str() + ')';
}

IntMatrix solve_layer(const CentralTower& t, std::size_t n, const std::vector<Constraint>& cons) {
    const TowerLayer& layer = t.layers[n];
    const std::size_t k = layer.generators();
    const std::size_t p = cons.size();

    IntMatrix sources(k, p);
    for (std::size_t q = 0; q < p; ++q) sources.set_column(q, cons[q].source);
    bool determined = false;
    if (layer.torsion.empty()) {
        determined = rank(sources) == k;
    } else {
        IntMatrix rel = layer.relations();
        IntMatrix joined(k, p + rel.cols());
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t q = 0; q < p; ++q) joined(i, q) = sources(i, q);
            for (std::size_t q = 0; q < rel.cols(); ++q) joined(i, p + q) = rel(i, q);
        }
        SnfResult s = smith_normal_form(joined);
        determined = true;
        for (std::size_t i = 0; i < k; ++i)
            if (s.d(i, i) != 1) determined = false;
    }
    if (!determined)
        throw ValidationError(t.name + ": layer " + std::to_string(n + 1) +
                              " map is not determined by the layer-1 matrix; supply it explicitly");

    IntMatrix x(k, k);
    for (std::size_t row = 0; row < k; ++row) {
        const bool torsion_row = row >= layer.free_rank;
        const Integer modulus = torsion_row ? layer.torsion[row - layer.free_rank] : Integer(0);
        const std::size_t unknowns = k + (torsion_row ? p : 0);
        IntMatrix a(p, unknowns);
        std::vector<Integer> b(p);
        for (std::size_t q = 0; q < p; ++q) {
            for (std::size_t c = 0; c < k; ++c) a(q, c) = cons[q].source[c];
            if (torsion_row) a(q, k + q) = -modulus;
            b[q] = cons[q].target[row];
        }
        auto sol = solve_integer(a, b);
        if (!sol) {
            throw ValidationError(t.name + ": no integral layer-" + std::to_string(n + 1) +
                                  " map is compatible with the layer-1 matrix (row " + std::to_string(row + 1) + ")");
        }
        for (std::size_t c = 0; c < k; ++c) {
            Integer v = (*sol)[c];
            if (torsion_row) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
            x(row, c) = v;
        }
    }
    return x;
}

}  // namespace

TowerEndo derive_tower_endo(const CentralTower& t, const IntMatrix& top) {
    t.validate();
    const std::size_t g1 = t.layers[0].generators();
    if (top.rows() != g1 || top.cols() != g1) throw ShapeError(t.name + ": layer-1 matrix has the wrong shape");
    check_preserves_relations(t, 0, top);
    TowerEndo e{{top}};
    for (std::size_t n = 1; n < t.depth(); ++n) {
        std::vector<Constraint> cons = layer_constraints(t, n, e.layer_matrices);
        e.layer_matrices.push_back(solve_layer(t, n, cons));
    }
    validate_tower_endo(t, e);
    return e;
}

void validate_tower_endo(const CentralTower& t, const TowerEndo& e) {
    t.validate();
    if (e.layer_matrices.size() != t.depth())
        throw ValidationError(t.name + ": expected " + std::to_string(t.depth()) + " layer matrices");
    for (std::size_t n = 0; n < t.depth(); ++n) {
        const std::size_t k = t.layers[n].generators();
        const IntMatrix& m = e.layer_matrices[n];
        if (m.rows() != k || m.cols() != k)
            throw ValidationError(t.name + ": layer " + std::to_string(n + 1) + " matrix has the wrong shape");
        check_preserves_relations(t, n, m);
    }
    for (std::size_t n = 1; n < t.depth(); ++n) {
        for (const Constraint& c : layer_constraints(t, n, e.layer_matrices)) {
            std::vector<Integer> got = e.layer_matrices[n].apply(c.source);
            if (!congruent_mod(got, c.target, t.layers[n]))
                throw ValidationError(t.name + ": endomorphism violates structure constant " + c.label + " = " +
                                      vec_str(c.source) + " in layer " + std::to_string(n + 1) + " (forced image " +
                                      vec_str(c.target) + ", supplied " + vec_str(got) + ")");
        }
    }
}

CentralTower build_N_r(std::int64_t r) {
    if (r == 0) throw DomainError("build_N_r: r = 0 gives the abelian group Z^3");
    CentralTower t;
    t.name = "N_" + std::to_string(r);
    t.layers = {{2, {}, {"a", "b"}}, {1, {}, {"c"}}};
    t.bracket11[{0, 1}] = {Integer(r)};
    return t;
}

CentralTower build_Q42() {
    CentralTower t;
    t.name = "Q42";
    t.layers = {{4, {}, {"x", "y", "z", "w"}}, {3, {}, {"[x,y]", "[y,w]", "[z,w]"}}};
    t.bracket11[{0, 1}] = unit(3, 0);
    t.bracket11[{1, 3}] = unit(3, 1);
    t.bracket11[{2, 3}] = unit(3, 2);
    return t;
}

CentralTower build_G53() {
    CentralTower t;
    t.name = "G53";
    t.layers = {{2, {}, {"x", "y"}}, {1, {}, {"B"}}, {1, {}, {"w1"}}};
    t.bracket11[{0, 1}] = {Integer(1)};
    t.bracket21[{0, 0}] = {Integer(1)};  // [B,x] = w1
    t.bracket21[{0, 1}] = {Integer(0)};  // [B,y] = 1
    return t;
}

CentralTower product_with_Zn(const CentralTower& t, unsigned n) {
    if (n == 0) return t;
    t.validate();
    CentralTower p = t;
    p.name = t.name + "xZ" + std::to_string(n);
    TowerLayer& top = p.layers[0];
    const std::size_t old_free = top.free_rank;
    if (top.names.empty()) top.names = default_names("g", t.layers[0].generators());
    std::vector<std::string> extra = default_names("z", n);
    top.names.insert(top.names.begin() + static_cast<long>(old_free), extra.begin(), extra.end());
    top.free_rank += n;
    auto shift = [&](std::size_t i) { return i < old_free ? i : i + n; };
    p.bracket11.clear();
    for (const auto& [key, v] : t.bracket11) p.bracket11[{shift(key.first), shift(key.second)}] = v;
    p.bracket21.clear();
    for (const auto& [key, v] : t.bracket21) p.bracket21[{key.first, shift(key.second)}] = v;
    return p;
}

CentralTower build_heisenberg_mod_tower(unsigned m) {
    if (m < 2) throw DomainError("build_heisenberg_mod_tower: m must be at least 2");
    CentralTower t;
    t.name = "Heis(Z_" + std::to_string(m) + ")";
    t.layers = {{0, {Integer(m), Integer(m)}, {"a", "b"}}, {0, {Integer(m)}, {"c"}}};
    t.bracket11[{0, 1}] = {Integer(1)};
    return t;
}

// ------------------------------------------------------------------ Q42

namespace {

using Pair = std::pair<std::size_t, std::size_t>;
constexpr Pair kSurviving[3] = {{0, 1}, {1, 3}, {2, 3}};  // x∧y, y∧w, z∧w
constexpr Pair kKilled[3] = {{0, 2}, {0, 3}, {1, 2}};     // x∧z, x∧w, y∧z

// coefficient of e_a∧e_b in (M e_i)∧(M e_j)
Integer wedge_coeff(const IntMatrix& m, Pair src, Pair dst) {
    auto [i, j] = src;
    auto [a, b] = dst;
    return m(a, i) * m(b, j) - m(b, i) * m(a, j);
}

void require_4x4(const IntMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw ShapeError("Q42 maps need a 4x4 matrix");
}

}  // namespace

bool q42_lifts(const IntMatrix& m) {
    require_4x4(m);
    for (Pair k : kKilled)
        for (Pair s : kSurviving)
            if (wedge_coeff(m, k, s) != 0) return false;
    return true;
}

IntMatrix q42_induced_N(const IntMatrix& m) {
    if (!q42_lifts(m)) throw PreconditionError("q42_induced_N: matrix does not preserve the killed commutators");
    IntMatrix n(3, 3);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t r = 0; r < 3; ++r) n(r, c) = wedge_coeff(m, kSurviving[c], kSurviving[r]);
    return n;
}

}  // namespace reid
