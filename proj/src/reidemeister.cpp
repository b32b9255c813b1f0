#include "reid/reidemeister.hpp"

#include "cert_build.hpp"

#include <algorithm>
#include <stdexcept>

namespace reid {

namespace {

bool odd(std::int64_t k) { return (k & 1) != 0; }

}  // namespace

// ------------------------------------------------------------- certificate

Json Certificate::to_json() const {
    Json j;
    j["claim"] = claim;
    if (is_fact()) {
        j["leaf_op"] = leaf_op;
        j["leaf_args"] = leaf_args;
        j["leaf_result"] = leaf_result;
    } else {
        j["rule"] = rule;
        Json ps = Json::array();
        for (const Certificate& p : premises) ps.push_back(p.to_json());
        j["premises"] = std::move(ps);
    }
    if (value) j["value"] = cardinal_to_json(*value);
    return j;
}

Certificate Certificate::from_json(const Json& j) {
    require_keys(j, {"claim", "rule", "premises", "leaf_op", "leaf_args", "leaf_result", "value"}, "certificate");
    Certificate c;
    c.claim = j.value("claim", std::string());
    if (j.contains("leaf_op")) {
        c.leaf_op = j.at("leaf_op").get<std::string>();
        if (c.leaf_op.empty()) throw DomainError("certificate: empty leaf_op");
        c.leaf_args = j.value("leaf_args", Json::object());
        c.leaf_result = j.value("leaf_result", Json());
        if (j.contains("rule") || j.contains("premises")) throw DomainError("certificate: a fact cannot carry a rule");
    } else {
        c.rule = j.value("rule", std::string());
        if (j.contains("premises"))
            for (const Json& p : j.at("premises")) c.premises.push_back(from_json(p));
    }
    if (j.contains("value")) c.value = cardinal_from_json(j.at("value"));
    return c;
}

// ------------------------------------------------------------------ abelian

Cardinal reid_fg_abelian(const IntMatrix& m, const IntMatrix& relations) {
    if (!m.is_square()) throw ShapeError("reid_fg_abelian: matrix must be square");
    if (relations.rows() != m.rows()) throw ShapeError("reid_fg_abelian: relation matrix has the wrong row count");
    for (std::size_t c = 0; c < relations.cols(); ++c)
        if (!in_column_lattice(m.apply(relations.column(c)), relations))
            throw ValidationError("reid_fg_abelian: endomorphism does not preserve relation " + std::to_string(c + 1));
    return coker_order_mod(IntMatrix::identity(m.rows()) - m, relations);
}

Cardinal reid_fg_abelian(const IntMatrix& m) { return reid_fg_abelian(m, IntMatrix(m.rows(), 0)); }

std::size_t fix_kernel_rank(const IntMatrix& m, const IntMatrix& relations) {
    if (!m.is_square() || relations.rows() != m.rows()) throw ShapeError("fix_kernel_rank: shape mismatch");
    const std::size_t n = m.rows();
    IntMatrix joined(n, n + relations.cols());
    IntMatrix d = m - IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) joined(i, j) = d(i, j);
        for (std::size_t j = 0; j < relations.cols(); ++j) joined(i, n + j) = relations(i, j);
    }
    return n - rank(joined);
}

// -------------------------------------------------------------------- Klein

// σ = x^m y^k, s = k mod 2, g = (p,q):
//   σ g a(σ)^-1 = ( c m + (-1)^s p - (-1)^q s r ,  q + k (1 - delta) ),  c = 1 - (-1)^q eps
std::optional<KleinElement> klein_twisted_conjugate(const KleinAut& a, const KleinElement& g, const KleinElement& h) {
    klein_case(a);
    const std::int64_t p = g.m, q = g.k;
    const std::int64_t sq = odd(q) ? -1 : 1;
    const std::int64_t c = 1 - sq * a.eps;
    for (int s = 0; s < 2; ++s) {
        std::int64_t k;
        if (a.delta == 1) {
            if (h.k != q) return std::nullopt;
            k = s;
        } else {
            const std::int64_t diff = h.k - q;
            if (odd(diff)) return std::nullopt;
            k = diff / 2;
            if (odd(k) != (s == 1)) continue;
        }
        const std::int64_t rhs = h.m - (s ? -p : p) + (s ? sq * a.r : 0);
        std::int64_t m = 0;
        if (c == 0) {
            if (rhs != 0) continue;
        } else {
            if (odd(rhs)) continue;
            m = rhs / 2;
        }
        KleinElement sigma{m, k};
        if (klein_mul(klein_mul(sigma, g), klein_inverse(klein_apply(a, sigma))) != h)
            throw std::logic_error("klein_twisted_conjugate: conjugator check failed");
        return sigma;
    }
    return std::nullopt;
}

KleinElement klein_witness(const KleinAut& a, std::int64_t i) {
    switch (klein_case(a)) {
        case 'b': return {i, 0};
        case 'd': return {i, 1};
        default: return {0, i};
    }
}

std::string klein_witness_family_name(const KleinAut& a) {
    switch (klein_case(a)) {
        case 'b': return "x^i";
        case 'd': return "x^i y";
        default: return "y^i";
    }
}

FamilyCheck klein_witness_family(const KleinAut& a, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw DomainError("klein_witness_family: empty range");
    FamilyCheck f{lo, hi, 0, false};
    std::vector<KleinElement> reps;
    for (std::int64_t i = lo; i <= hi; ++i) {
        KleinElement g = klein_witness(a, i);
        bool fresh = std::none_of(reps.begin(), reps.end(),
                                  [&](const KleinElement& r) { return klein_twisted_conjugate(a, r, g).has_value(); });
        if (fresh) reps.push_back(g);
    }
    f.classes = reps.size();
    f.pairwise_distinct = f.classes == static_cast<std::size_t>(hi - lo + 1);
    return f;
}

using detail::fact;
using detail::node;

Certificate detail::abelian_certificate(const std::string& what, const IntMatrix& m, const IntMatrix& relations,
                                        std::optional<Certificate> source) {
    Cardinal v = reid_fg_abelian(m, relations);
    Json args{{"matrix", matrix_to_json(m)}};
    if (relations.cols()) args["relations"] = matrix_to_json(relations);
    std::vector<Certificate> ps{fact("#Coker(1-M) = " + v.to_string(), "reid_fg_abelian", args, cardinal_to_json(v), v)};
    if (source) ps.push_back(std::move(*source));
    return node("R = " + v.to_string() + " on " + what, "ABELIAN_DET", std::move(ps), v);
}

Certificate reid_klein(const KleinAut& a) {
    const std::string name = to_string(a);
    const char kase = klein_case(a);
    if (kase == 'a' || kase == 'c') {
        // <x> is normal and invariant; the quotient Z = <y> sees y -> y^delta = y
        KleinElement img = klein_apply(a, {1, 0});
        IntMatrix q{{a.delta}};
        Certificate inv = fact("phi(<x>) = <x>; induced map on the quotient <y> is y -> y^" + std::to_string(a.delta),
                               "klein_x_invariant", Json{{"aut", klein_aut_to_json(a)}},
                               Json{{"invariant", img.k == 0}, {"quotient_matrix", matrix_to_json(q)}});
        return node("R(" + name + ") = infinity on Z⋊Z", "QUOTIENT_INF",
                    {std::move(inv), detail::abelian_certificate("Z⋊Z / <x> = Z", q, IntMatrix(1, 0))}, Cardinal::infinity());
    }
    FamilyCheck f = klein_witness_family(a, -20, 20);
    Certificate wit = fact("the family " + klein_witness_family_name(a) + ", i in [-20,20], is pairwise non-twisted-conjugate",
                           "klein_witness_family", Json{{"aut", klein_aut_to_json(a)}, {"lo", f.lo}, {"hi", f.hi}},
                           Json{{"family", klein_witness_family_name(a)},
                                {"classes", f.classes},
                                {"pairwise_distinct", f.pairwise_distinct}});
    return node("R(" + name + ") = infinity on Z⋊Z", "CASE_ANALYSIS", {std::move(wit)}, Cardinal::infinity());
}

// ----------------------------------------------------------------- dihedral

// g = (a, e), σ = (j, ε), c = 1 - (-1)^e sign:
//   ε = 0:  σ g φ(σ)^-1 = (a + c j, e)
//   ε = 1:  σ g φ(σ)^-1 = (c j - a - (-1)^e n, e)
std::optional<DihedralElement> dihedral_twisted_conjugate(const DihedralAut& a, const DihedralElement& g,
                                                          const DihedralElement& h) {
    if (a.sign != 1 && a.sign != -1) throw DomainError("dihedral automorphism sign must be +1 or -1");
    if (h.eps != g.eps) return std::nullopt;
    const std::int64_t se = g.eps ? -1 : 1;
    const std::int64_t c = 1 - se * a.sign;
    for (int eps = 0; eps < 2; ++eps) {
        const std::int64_t target = eps == 0 ? h.j - g.j : h.j + g.j + se * a.n;
        std::int64_t j = 0;
        if (c == 0) {
            if (target != 0) continue;
        } else {
            if (odd(target)) continue;
            j = target / 2;
        }
        DihedralElement sigma{j, eps};
        if (dihedral_mul(dihedral_mul(sigma, g), dihedral_inverse(dihedral_apply(a, sigma))) != h)
            throw std::logic_error("dihedral_twisted_conjugate: conjugator check failed");
        return sigma;
    }
    return std::nullopt;
}

DihedralSlice dihedral_class_slice(const DihedralAut& a, std::int64_t bound) {
    if (bound < 0) throw DomainError("dihedral_class_slice: bound must be non-negative");
    DihedralSlice s;
    s.bound = bound;
    for (std::int64_t l = -bound; l <= bound; ++l) {
        auto it = std::find_if(s.members.begin(), s.members.end(), [&](const std::vector<std::int64_t>& cls) {
            return dihedral_twisted_conjugate(a, {cls.front(), 1}, {l, 1}).has_value();
        });
        if (it == s.members.end()) s.members.push_back({l});
        else it->push_back(l);
    }
    s.classes = s.members.size();
    s.matches_pair_rule = true;
    for (const auto& cls : s.members) {
        s.largest_class = std::max(s.largest_class, cls.size());
        std::vector<std::int64_t> expect{cls.front()};
        const std::int64_t partner = a.n - cls.front();
        if (partner != cls.front() && partner >= -bound && partner <= bound) expect.push_back(partner);
        std::sort(expect.begin(), expect.end());
        if (expect != cls) s.matches_pair_rule = false;
    }
    return s;
}

Certificate reid_dihedral(const DihedralAut& a) {
    if (a.sign != 1 && a.sign != -1) throw DomainError("dihedral automorphism sign must be +1 or -1");
    const std::string name = "sign=" + std::to_string(a.sign) + ",n=" + std::to_string(a.n);
    const Json aut{{"sign", a.sign}, {"n", a.n}};
    if (a.sign == 1) {
        IntMatrix sub{{1}}, quot{{1}}, rel{{2}};
        Certificate inv = fact("<t> is normal and phi-invariant", "dihedral_rotation_invariant", Json{{"aut", aut}},
                               Json{{"invariant", dihedral_apply(a, {1, 0}).eps == 0}});
        std::size_t fr = fix_kernel_rank(quot, rel);
        Certificate fix = fact("Fix of the quotient map is finite", "fix_kernel_rank",
                               Json{{"matrix", matrix_to_json(quot)}, {"relations", matrix_to_json(rel)}}, fr);
        return node("R(" + name + ") = infinity on Z⋊Z2", "FIX_KERNEL",
                    {std::move(inv), detail::abelian_certificate("<t> = Z, t -> t", sub, IntMatrix(1, 0)),
                     detail::abelian_certificate("Z2 quotient", quot, rel), std::move(fix)},
                    Cardinal::infinity());
    }
    DihedralSlice s = dihedral_class_slice(a, 50);
    Certificate slice = fact("each class meeting {(t^l,1)} is {(t^l,1),(t^(n-l),1)}", "dihedral_class_slice",
                             Json{{"aut", aut}, {"bound", s.bound}},
                             Json{{"classes", s.classes},
                                  {"largest_class", s.largest_class},
                                  {"matches_pair_rule", s.matches_pair_rule}});
    return node("R(" + name + ") = infinity on Z⋊Z2", "CASE_ANALYSIS", {std::move(slice)}, Cardinal::infinity());
}

// ------------------------------------------------------------------- towers

CentralTower detail::tower_prefix(const CentralTower& t, std::size_t depth) {
    CentralTower p = t;
    p.layers.resize(depth);
    if (depth < 3) p.bracket21.clear();
    if (depth < 2) p.bracket11.clear();
    if (depth < t.depth()) p.name = t.name + "/L" + std::to_string(depth + 1);
    return p;
}

namespace {

Certificate tower_certificate(const CentralTower& t, const TowerEndo& e, std::size_t depth) {
    const TowerLayer& l = t.layers[depth - 1];
    const std::string lname = t.name + " layer " + std::to_string(depth);
    Certificate layer = detail::abelian_certificate(lname, e.layer_matrices[depth - 1], l.relations());
    if (depth == 1) return layer;
    CentralTower pre = detail::tower_prefix(t, depth);
    Certificate central = fact(lname + " is central in " + pre.name, "tower_layer_central",
                               Json{{"tower", tower_to_json(pre)}, {"layer", depth}}, Json{{"central", true}});
    Certificate quot = tower_certificate(t, e, depth - 1);
    Cardinal v = *layer.value * *quot.value;
    return node("R = " + v.to_string() + " on " + pre.name, "PRODUCT", {std::move(central), std::move(layer), std::move(quot)},
                v);
}

}  // namespace

Certificate reid_central_tower(const CentralTower& t, const TowerEndo& e) {
    validate_tower_endo(t, e);
    return tower_certificate(t, e, t.depth());
}

}  // namespace reid
