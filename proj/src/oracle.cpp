#include "reid/oracle.hpp"

#include <map>
#include <numeric>
#include <random>

#include "reid/reidemeister.hpp"

namespace reid {

DisjointSets::DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

std::size_t DisjointSets::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
}

OrbitPartition<FinitePcGroup::Element> twisted_classes_finite(const FinitePcGroup& g, const FiniteEndo& e) {
    validate_finite_endo(g, e);
    const std::size_t n = g.order();
    DisjointSets ds(n);
    for (std::size_t i = 0; i < g.generators(); ++i) {
        const auto s = g.generator(i);
        const auto twist = g.inverse(e.images[i]);
        for (std::size_t x = 0; x < n; ++x) ds.unite(x, g.mul(g.mul(s, static_cast<FinitePcGroup::Element>(x)), twist));
    }
    std::vector<FinitePcGroup::Element> elems(n);
    std::iota(elems.begin(), elems.end(), FinitePcGroup::Element{0});
    return make_partition(std::move(elems), ds);
}

std::vector<KleinElement> klein_ball(unsigned radius) {
    const KleinElement gens[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::vector<KleinElement> ball{{0, 0}};
    std::map<KleinElement, std::size_t> seen{{{0, 0}, 0}};
    std::size_t frontier = 0;
    for (unsigned d = 0; d < radius; ++d) {
        const std::size_t end = ball.size();
        for (std::size_t i = frontier; i < end; ++i)
            for (const KleinElement& s : gens) {
                KleinElement h = klein_mul(ball[i], s);
                if (seen.emplace(h, ball.size()).second) ball.push_back(h);
            }
        frontier = end;
    }
    return ball;
}

OrbitPartition<KleinElement> klein_ball_partition(const KleinAut& a, unsigned radius) {
    if (radius == 0) throw DomainError("klein_ball_partition: radius must be at least 1");
    std::vector<KleinElement> ball = klein_ball(radius);
    std::map<KleinElement, std::size_t> index;
    for (std::size_t i = 0; i < ball.size(); ++i) index[ball[i]] = i;
    const std::vector<KleinElement> conj = klein_ball(2 * radius);
    DisjointSets ds(ball.size());
    for (const KleinElement& s : conj) {
        const KleinElement twist = klein_inverse(klein_apply(a, s));
        for (std::size_t i = 0; i < ball.size(); ++i) {
            auto it = index.find(klein_mul(klein_mul(s, ball[i]), twist));
            if (it != index.end()) ds.unite(i, it->second);
        }
    }
    return make_partition(std::move(ball), ds);
}

// ------------------------------------------------------- product formula

namespace {

struct Triple {
    std::size_t brute, center, quotient;
};

std::string exps_text(const FinitePcGroup::Exponents& e) {
    std::string s;
    for (unsigned x : e) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "(" + s + ")";
}

}  // namespace

ProductFormulaReport verify_product_formula(const std::vector<unsigned>& m_values, std::uint64_t seed,
                                            std::size_t samples, std::size_t exhaustive_cap) {
    ProductFormulaReport out;
    out.json = Json{{"seed", seed}, {"groups", Json::array()}};
    for (unsigned m : m_values) {
        if (m < 2) throw DomainError("verify_product_formula: m must be at least 2");
        const FinitePcGroup g = build_heisenberg_mod(m);
        const FinitePcGroup z = build_cyclic(m);
        const FinitePcGroup q = build_abelian_mod(m, 2);
        const CentralTower tower = build_heisenberg_mod_tower(m);
        const std::size_t order = g.order();
        const std::size_t space = order * order;
        const bool exhaustive = space <= exhaustive_cap;

        std::vector<std::pair<FinitePcGroup::Element, FinitePcGroup::Element>> cands;
        if (exhaustive) {
            for (std::size_t x = 0; x < order; ++x)
                for (std::size_t y = 0; y < order; ++y)
                    cands.emplace_back(static_cast<FinitePcGroup::Element>(x), static_cast<FinitePcGroup::Element>(y));
        } else {
            std::mt19937_64 rng(seed + m);
            std::uniform_int_distribution<std::size_t> pick(0, order - 1);
            for (std::size_t i = 0; i < samples; ++i)
                cands.emplace_back(static_cast<FinitePcGroup::Element>(pick(rng)),
                                   static_cast<FinitePcGroup::Element>(pick(rng)));
        }

        std::size_t endos = 0, skipped = 0, violations = 0, fix_trivial = 0, fix_trivial_violations = 0, tower_agrees = 0;
        std::map<std::string, std::size_t> triples;
        Json examples = Json::array(), skip_log = Json::array();
        Json identity;
        const auto a = g.generator(0), b = g.generator(1);
        for (const auto& [ia, ib] : cands) {
            // c = a^-1 b^-1 a b
            const auto ic = g.mul(g.mul(g.inverse(ia), g.inverse(ib)), g.mul(ia, ib));
            FiniteEndo e{{ia, ib, ic}};
            try {
                validate_finite_endo(g, e);
            } catch (const ValidationError& err) {
                ++skipped;
                if (skip_log.size() < 5) skip_log.push_back(err.what());
                continue;
            }
            ++endos;
            const auto ea = g.exponents(ia), eb = g.exponents(ib), ec = g.exponents(ic);
            const Triple t{
                twisted_classes_finite(g, e).class_count,
                twisted_classes_finite(z, FiniteEndo{{z.element({ec[2]})}}).class_count,
                twisted_classes_finite(q, FiniteEndo{{q.element({ea[0], ea[1]}), q.element({eb[0], eb[1]})}}).class_count};
            // |Fix| of the quotient map
            const FiniteEndo qe{{q.element({ea[0], ea[1]}), q.element({eb[0], eb[1]})}};
            const auto table = finite_endo_table(q, qe);
            std::size_t fix = 0;
            for (std::size_t x = 0; x < table.size(); ++x) fix += table[x] == x;

            const bool ok = t.brute == t.center * t.quotient;
            ++triples[std::to_string(t.brute) + "=" + std::to_string(t.center) + "*" + std::to_string(t.quotient)];
            if (!ok) {
                ++violations;
                if (examples.size() < 10)
                    examples.push_back(Json{{"a", exps_text(ea)}, {"b", exps_text(eb)}, {"brute", t.brute},
                                            {"center", t.center}, {"quotient", t.quotient}});
            }
            if (fix == 1) {
                ++fix_trivial;
                if (!ok) ++fix_trivial_violations;
            }
            TowerEndo te{{IntMatrix{{ea[0], eb[0]}, {ea[1], eb[1]}}, IntMatrix{{ec[2]}}}};
            Cardinal tv = *reid_central_tower(tower, te).value;
            if (tv == Cardinal(Integer(static_cast<unsigned long>(t.center * t.quotient)))) ++tower_agrees;
            if (ia == a && ib == b)
                identity = Json{{"brute", t.brute}, {"center", t.center}, {"quotient", t.quotient}};
        }
        if (identity.is_null()) {
            FiniteEndo id{{a, b, g.generator(2)}};
            identity = Json{{"brute", twisted_classes_finite(g, id).class_count},
                            {"center", twisted_classes_finite(z, FiniteEndo{{z.generator(0)}}).class_count},
                            {"quotient",
                             twisted_classes_finite(q, FiniteEndo{{q.generator(0), q.generator(1)}}).class_count}};
        }
        Json tj = Json::object();
        for (const auto& [k, v] : triples) tj[k] = v;
        out.json["groups"].push_back(Json{{"m", m},
                                          {"order", order},
                                          {"mode", exhaustive ? "exhaustive" : "sampled"},
                                          {"candidates", cands.size()},
                                          {"endomorphisms", endos},
                                          {"skipped", skipped},
                                          {"skip_log", skip_log},
                                          {"violations", violations},
                                          {"fix_trivial_endomorphisms", fix_trivial},
                                          {"fix_trivial_violations", fix_trivial_violations},
                                          {"tower_formula_agrees", tower_agrees},
                                          {"identity", identity},
                                          {"triples", tj},
                                          {"violation_examples", examples}});
        out.violations += violations;
        out.checked += endos;
    }
    out.json["violations"] = out.violations;
    out.json["checked"] = out.checked;
    return out;
}

}  // namespace reid
