#include <set>

#include "cert_build.hpp"
#include "reid/facts.hpp"
#include "reid/reidemeister.hpp"

namespace reid {

using detail::abelian_certificate;
using detail::fact;
using detail::node;

// -------------------------------------------------------------------- facts

CenterFact center_klein_times_zn(unsigned n, std::int64_t box) {
    CenterFact f;
    f.center.push_back("y^2");
    for (unsigned i = 1; i <= n; ++i) f.center.push_back("z" + std::to_string(i));
    const KleinElement x{1, 0}, y{0, 1};
    std::set<KleinElement> center, kernel;
    for (std::int64_t m = -box; m <= box; ++m)
        for (std::int64_t k = -box; k <= box; ++k) {
            KleinElement g{m, k};
            if (klein_mul(g, x) == klein_mul(x, g) && klein_mul(g, y) == klein_mul(y, g)) center.insert(g);
            // x^m y^k -> t^m s^k
            DihedralElement img{0, 0};
            for (std::int64_t i = 0; i < std::abs(m); ++i) img = dihedral_mul(img, {m > 0 ? 1 : -1, 0});
            for (std::int64_t i = 0; i < std::abs(k); ++i) img = dihedral_mul(img, {0, 1});
            if (img == DihedralElement{0, 0}) kernel.insert(g);
        }
    std::set<KleinElement> expected;
    for (std::int64_t k = -box; k <= box; ++k)
        if (k % 2 == 0) expected.insert({0, k});
    f.center_ok = center == expected;
    // the defining relator x y x y^-1 must die in Z⋊Z2
    DihedralElement t{1, 0}, s{0, 1};
    bool relator = dihedral_mul(dihedral_mul(t, s), dihedral_mul(t, dihedral_inverse(s))) == DihedralElement{0, 0};
    f.quotient_ok = relator && kernel == center;
    return f;
}

DihedralAllFact reid_dihedral_all(std::int64_t n_bound, std::int64_t slice_bound) {
    DihedralAllFact f;
    f.all_infinite = true;
    const IntMatrix one{{1}}, two{{2}};
    const bool plus_route = reid_fg_abelian(one).is_infinite() && reid_fg_abelian(one, two).is_finite() &&
                            fix_kernel_rank(one, two) == 0;
    for (std::int64_t n = -n_bound; n <= n_bound; ++n) {
        ++f.checked;
        if (!plus_route || dihedral_apply({1, n}, {1, 0}) != DihedralElement{1, 0}) f.all_infinite = false;
        ++f.checked;
        DihedralSlice s = dihedral_class_slice({-1, n}, slice_bound);
        if (!s.matches_pair_rule || s.largest_class > 2) f.all_infinite = false;
    }
    return f;
}

bool gamma_invariant(const EndoSpec& e, unsigned n) {
    for (const LyndonWord& w : lyndon_basis(e.rank(), n).words) {
        LcsDegree d = lcs_degree(e.apply(bracket_word(w, e.rank())), n);
        if (d.kind == LcsDegree::Kind::finite && d.degree < n) return false;
    }
    return true;
}

bool layer_central(unsigned rank, unsigned n) {
    for (const LyndonWord& w : lyndon_basis(rank, n).words)
        for (unsigned g = 1; g <= rank; ++g) {
            LcsDegree d = lcs_degree(commutator(bracket_word(w, rank), FreeWord::generator(rank, g)), n);
            if (d.kind == LcsDegree::Kind::finite) return false;
        }
    return true;
}

bool tower_layer_central(const CentralTower& t, std::size_t layer) {
    t.validate();
    if (layer < 2 || layer != t.depth()) return false;
    return layer != 2 || t.bracket21.empty();
}

// ------------------------------------------------------------ certificates

namespace {

Json images_json(const EndoSpec& e) { return endo_to_json(e); }

Certificate free_nilpotent_layers(const EndoSpec& e, const std::vector<IntMatrix>& layers, unsigned c) {
    const unsigned r = e.rank();
    const IntMatrix& lm = layers[c - 1];
    Certificate src = fact("induced map on layer " + std::to_string(c), "induced_layer_matrix",
                           Json{{"rank", r}, {"images", images_json(e)}, {"n", c}}, matrix_to_json(lm));
    Certificate layer = abelian_certificate("Gamma_" + std::to_string(c) + "/Gamma_" + std::to_string(c + 1), lm,
                                            IntMatrix(lm.rows(), 0), std::move(src));
    if (c == 1) return layer;
    Certificate central = fact("Gamma_" + std::to_string(c) + "/Gamma_" + std::to_string(c + 1) + " is central",
                               "layer_central", Json{{"rank", r}, {"n", c}}, Json{{"central", layer_central(r, c)}});
    Certificate quot = free_nilpotent_layers(e, layers, c - 1);
    Cardinal v = *layer.value * *quot.value;
    return node("R = " + v.to_string() + " on F" + std::to_string(r) + "/Gamma_" + std::to_string(c + 1), "PRODUCT",
                {std::move(central), std::move(layer), std::move(quot)}, v);
}

Certificate certify_free_nilpotent(const Json& p) {
    require_keys(p, {"kind", "rank", "class", "images"}, "free_nilpotent problem");
    const unsigned rank = p.at("rank").get<unsigned>();
    const unsigned c = p.at("class").get<unsigned>();
    if (rank == 0 || c == 0) throw DomainError("free_nilpotent: rank and class must be positive");
    EndoSpec e = endo_from_json(p.at("images"), rank);
    LayerMapEngine engine(e, c);
    std::vector<IntMatrix> layers;
    for (unsigned n = 1; n <= c; ++n) layers.push_back(engine.layer_matrix(n));

    if (c >= 2 && det(layers[0]) == 1) {
        Certificate top = free_nilpotent_layers(e, layers, 2);
        if (c == 2) return top;
        Certificate chr = node("Gamma_3 is characteristic", "CHAR_SUBGROUP",
                               {fact("e maps Gamma_3 into Gamma_3", "gamma_invariant",
                                     Json{{"rank", rank}, {"images", images_json(e)}, {"n", 3}},
                                     Json{{"characteristic", gamma_invariant(e, 3)}})},
                               std::nullopt);
        return node("R = infinity on F" + std::to_string(rank) + "/Gamma_" + std::to_string(c + 1) +
                        " (det of the abelianization is 1)",
                    "QUOTIENT_INF", {std::move(chr), std::move(top)}, Cardinal::infinity());
    }
    return free_nilpotent_layers(e, layers, c);
}

Certificate certify_klein_x_zn(unsigned n) {
    CenterFact cf = center_klein_times_zn(n);
    Json center = cf.center;
    Certificate chr = node("the center <y^2> x Z^" + std::to_string(n) + " is characteristic", "CHAR_SUBGROUP",
                           {fact("center and quotient of Z⋊Z x Z^" + std::to_string(n), "center_klein_times_zn",
                                 Json{{"n", n}},
                                 Json{{"center", center},
                                      {"quotient", cf.quotient_ok ? "Z⋊Z2" : "unknown"},
                                      {"characteristic", cf.center_ok && cf.quotient_ok}})},
                           std::nullopt);
    DihedralAllFact df = reid_dihedral_all(5, 50);
    Certificate quot = node("every automorphism of Z⋊Z2 has R = infinity", "CASE_ANALYSIS",
                            {fact("dihedral automorphisms with |n| <= 5", "reid_dihedral_all",
                                  Json{{"n_bound", 5}, {"slice_bound", 50}},
                                  Json{{"checked", df.checked}, {"all_infinite", df.all_infinite}})},
                            Cardinal::infinity());
    return node("Z⋊Z x Z^" + std::to_string(n) + " has the R-infinity property", "QUOTIENT_INF",
                {std::move(chr), std::move(quot)}, Cardinal::infinity());
}

Certificate g53_case_analysis(unsigned b_bound) {
    ScanReport s = scan_g53(b_bound);
    return node("every automorphism of G53 has R = infinity", "CASE_ANALYSIS",
                {fact("abelianization data a,d = +-1, |b| <= " + std::to_string(b_bound), "scan_g53",
                      Json{{"b_bound", b_bound}},
                      Json{{"tuples", integer_to_json(s.count("tuples"))},
                           {"infinite", integer_to_json(s.count("infinite"))},
                           {"all_infinite", s.property_holds}})},
                Cardinal::infinity());
}

}  // namespace

Certificate certify(const Json& p) {
    if (!p.is_object() || !p.contains("kind")) throw DomainError("problem needs a \"kind\"");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "abelian") {
        require_keys(p, {"kind", "matrix", "relations"}, "abelian problem");
        IntMatrix m = matrix_from_json(p.at("matrix"));
        IntMatrix rel = p.contains("relations") ? matrix_from_json(p.at("relations"), m.rows()) : IntMatrix(m.rows(), 0);
        return abelian_certificate("Z^" + std::to_string(m.rows()) + (rel.cols() ? " / relations" : ""), m, rel);
    }
    if (kind == "klein") {
        require_keys(p, {"kind", "aut"}, "klein problem");
        return reid_klein(klein_aut_from_json(p.at("aut")));
    }
    if (kind == "dihedral") {
        require_keys(p, {"kind", "sign", "n"}, "dihedral problem");
        return reid_dihedral({p.at("sign").get<int>(), p.at("n").get<std::int64_t>()});
    }
    if (kind == "klein_x_zn") {
        require_keys(p, {"kind", "n"}, "klein_x_zn problem");
        return certify_klein_x_zn(p.at("n").get<unsigned>());
    }
    if (kind == "free_nilpotent") return certify_free_nilpotent(p);
    if (kind == "tower") {
        require_keys(p, {"kind", "tower", "top", "layers"}, "tower problem");
        CentralTower t = tower_from_json(p.at("tower"));
        TowerEndo e;
        if (p.contains("layers")) {
            for (const Json& m : p.at("layers")) e.layer_matrices.push_back(matrix_from_json(m));
        } else if (p.contains("top")) {
            e = derive_tower_endo(t, matrix_from_json(p.at("top")));
        } else {
            throw DomainError("tower problem needs \"top\" or \"layers\"");
        }
        if (!t.torsion_free())
            throw PreconditionError("certify: the layer product rule is only certified for torsion-free towers");
        return reid_central_tower(t, e);
    }
    if (kind == "g53") {
        require_keys(p, {"kind", "b_bound"}, "g53 problem");
        return g53_case_analysis(p.value("b_bound", 10u));
    }
    if (kind == "c_nilpotent") {
        require_keys(p, {"kind", "torsion", "b_bound"}, "c_nilpotent problem");
        const unsigned m = p.at("torsion").get<unsigned>();
        if (m < 2) throw DomainError("c_nilpotent: torsion order must be at least 2");
        CentralTower g = build_G53();
        Certificate tq = fact("the torsion subgroup of G53 x Z_" + std::to_string(m) + " is Z_" + std::to_string(m),
                              "torsion_free_quotient", Json{{"tower", "G53"}, {"torsion", m}},
                              Json{{"torsion_order", m},
                                   {"finite", true},
                                   {"characteristic", g.torsion_free()},
                                   {"quotient", g.name}});
        return node("G53 x Z_" + std::to_string(m) + " has the R-infinity property", "TORSION_QUOTIENT",
                    {std::move(tq), g53_case_analysis(p.value("b_bound", 10u))}, Cardinal::infinity());
    }
    throw PreconditionError("certify: no rule applies to problem kind \"" + kind + "\"");
}

}  // namespace reid
