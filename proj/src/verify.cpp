// Independent checker: re-runs every leaf through its own dispatcher and
// re-applies each rule to the premises' recorded values.

#include <functional>
#include <map>

#include "reid/facts.hpp"
#include "reid/reidemeister.hpp"

namespace reid {

namespace {

using LeafFn = std::function<Json(const Json&)>;

IntMatrix relations_arg(const Json& a, std::size_t rows) {
    return a.contains("relations") ? matrix_from_json(a.at("relations"), rows) : IntMatrix(rows, 0);
}

const std::map<std::string, LeafFn>& dispatcher() {
    static const std::map<std::string, LeafFn> ops = {
        {"reid_fg_abelian",
         [](const Json& a) {
             IntMatrix m = matrix_from_json(a.at("matrix"));
             return Json(reid_fg_abelian(m, relations_arg(a, m.rows())).to_string());
         }},
        {"fix_kernel_rank",
         [](const Json& a) {
             IntMatrix m = matrix_from_json(a.at("matrix"));
             return Json(fix_kernel_rank(m, relations_arg(a, m.rows())));
         }},
        {"induced_layer_matrix",
         [](const Json& a) {
             EndoSpec e = endo_from_json(a.at("images"), a.at("rank").get<unsigned>());
             return matrix_to_json(induced_layer_matrix(e, a.at("n").get<unsigned>()));
         }},
        {"klein_witness_family",
         [](const Json& a) {
             KleinAut aut = klein_aut_from_json(a.at("aut"));
             FamilyCheck f = klein_witness_family(aut, a.at("lo").get<std::int64_t>(), a.at("hi").get<std::int64_t>());
             return Json{{"family", klein_witness_family_name(aut)},
                         {"classes", f.classes},
                         {"pairwise_distinct", f.pairwise_distinct}};
         }},
        {"klein_x_invariant",
         [](const Json& a) {
             KleinAut aut = klein_aut_from_json(a.at("aut"));
             KleinElement img = klein_apply(aut, {1, 0});
             // image of y modulo <x>
             KleinElement ys = klein_apply(aut, {0, 1});
             return Json{{"invariant", img.k == 0}, {"quotient_matrix", matrix_to_json(IntMatrix{{ys.k}})}};
         }},
        {"dihedral_rotation_invariant",
         [](const Json& a) {
             const Json& aut = a.at("aut");
             DihedralAut d{aut.at("sign").get<int>(), aut.at("n").get<std::int64_t>()};
             return Json{{"invariant", dihedral_apply(d, {1, 0}).eps == 0}};
         }},
        {"dihedral_class_slice",
         [](const Json& a) {
             const Json& aut = a.at("aut");
             DihedralSlice s = dihedral_class_slice({aut.at("sign").get<int>(), aut.at("n").get<std::int64_t>()},
                                                    a.at("bound").get<std::int64_t>());
             return Json{{"classes", s.classes},
                         {"largest_class", s.largest_class},
                         {"matches_pair_rule", s.matches_pair_rule}};
         }},
        {"center_klein_times_zn",
         [](const Json& a) {
             CenterFact f = center_klein_times_zn(a.at("n").get<unsigned>());
             return Json{{"center", f.center},
                         {"quotient", f.quotient_ok ? "Z⋊Z2" : "unknown"},
                         {"characteristic", f.center_ok && f.quotient_ok}};
         }},
        {"reid_dihedral_all",
         [](const Json& a) {
             DihedralAllFact f =
                 reid_dihedral_all(a.at("n_bound").get<std::int64_t>(), a.at("slice_bound").get<std::int64_t>());
             return Json{{"checked", f.checked}, {"all_infinite", f.all_infinite}};
         }},
        {"gamma_invariant",
         [](const Json& a) {
             EndoSpec e = endo_from_json(a.at("images"), a.at("rank").get<unsigned>());
             return Json{{"characteristic", gamma_invariant(e, a.at("n").get<unsigned>())}};
         }},
        {"layer_central",
         [](const Json& a) {
             return Json{{"central", layer_central(a.at("rank").get<unsigned>(), a.at("n").get<unsigned>())}};
         }},
        {"tower_layer_central",
         [](const Json& a) {
             CentralTower t = tower_from_json(a.at("tower"));
             return Json{{"central", tower_layer_central(t, a.at("layer").get<std::size_t>())}};
         }},
        {"torsion_free_quotient",
         [](const Json& a) {
             CentralTower t = tower_from_json(a.at("tower"));
             const unsigned m = a.at("torsion").get<unsigned>();
             return Json{{"torsion_order", m}, {"finite", m >= 1}, {"characteristic", t.torsion_free()}, {"quotient", t.name}};
         }},
        {"scan_g53",
         [](const Json& a) {
             ScanReport s = scan_g53(a.at("b_bound").get<unsigned>());
             return Json{{"tuples", integer_to_json(s.count("tuples"))},
                         {"infinite", integer_to_json(s.count("infinite"))},
                         {"all_infinite", s.property_holds}};
         }},
    };
    return ops;
}

struct Checker {
    VerifyResult out;

    void fail(const Certificate& c, const std::string& why) {
        out.ok = false;
        out.errors.push_back("\"" + c.claim + "\": " + why);
    }

    static bool flag(const Json& result, const char* key) {
        return result.is_object() && result.contains(key) && result.at(key).is_boolean() && result.at(key).get<bool>();
    }

    static bool infinite(const Certificate& c) { return c.value && c.value->is_infinite(); }

    void check(const Certificate& c) {
        if (c.is_fact()) return check_fact(c);
        ++out.rules_checked;
        for (const Certificate& p : c.premises) check(p);
        const auto& ps = c.premises;
        const std::string& r = c.rule;
        if (r == "ABELIAN_DET") {
            if (ps.empty() || !ps[0].is_fact() || ps[0].leaf_op != "reid_fg_abelian")
                return fail(c, "ABELIAN_DET needs a reid_fg_abelian fact first");
            if (!c.value || !ps[0].value || !(*c.value == *ps[0].value)) return fail(c, "value differs from the fact");
            if (ps.size() > 1) {
                if (ps.size() != 2 || !ps[1].is_fact() || ps[1].leaf_op != "induced_layer_matrix")
                    return fail(c, "ABELIAN_DET source must be an induced_layer_matrix fact");
                if (ps[1].leaf_result != ps[0].leaf_args.at("matrix"))
                    return fail(c, "matrix is not the one produced by the source fact");
            }
        } else if (r == "QUOTIENT_INF") {
            if (ps.size() != 2) return fail(c, "QUOTIENT_INF needs an invariance premise and a quotient premise");
            const bool invariant = ps[0].is_fact() ? flag(ps[0].leaf_result, "invariant") : ps[0].rule == "CHAR_SUBGROUP";
            if (!invariant) return fail(c, "subgroup is not shown invariant");
            if (!infinite(ps[1])) return fail(c, "quotient value is not infinity");
            if (ps[0].is_fact() && ps[0].leaf_result.contains("quotient_matrix")) {
                const Certificate& q = ps[1];
                if (q.rule != "ABELIAN_DET" || q.premises.empty() ||
                    q.premises[0].leaf_args.value("matrix", Json()) != ps[0].leaf_result.at("quotient_matrix"))
                    return fail(c, "quotient premise does not use the induced quotient map");
            }
            if (!infinite(c)) return fail(c, "conclusion must be infinity");
        } else if (r == "FIX_KERNEL") {
            if (ps.size() != 4) return fail(c, "FIX_KERNEL needs invariance, subgroup, quotient and fixed-point premises");
            if (!ps[0].is_fact() || !flag(ps[0].leaf_result, "invariant")) return fail(c, "subgroup is not shown invariant");
            if (!infinite(ps[1])) return fail(c, "subgroup value is not infinity");
            if (!ps[2].value || ps[2].value->is_infinite()) return fail(c, "quotient value is not finite");
            if (!ps[3].is_fact() || ps[3].leaf_op != "fix_kernel_rank" || ps[3].leaf_result != Json(0))
                return fail(c, "fixed subgroup of the quotient map is not shown finite");
            if (ps[2].rule == "ABELIAN_DET" && !ps[2].premises.empty() &&
                ps[2].premises[0].leaf_args != ps[3].leaf_args)
                return fail(c, "fixed-point fact concerns a different quotient map");
            if (!infinite(c)) return fail(c, "conclusion must be infinity");
        } else if (r == "PRODUCT") {
            if (ps.size() != 3) return fail(c, "PRODUCT needs a centrality fact and two factors");
            if (!ps[0].is_fact() || !flag(ps[0].leaf_result, "central")) return fail(c, "subgroup is not shown central");
            if (!ps[1].value || !ps[2].value) return fail(c, "factor without a value");
            if (!c.value || !(*c.value == *ps[1].value * *ps[2].value)) return fail(c, "value is not the product of factors");
        } else if (r == "TORSION_QUOTIENT") {
            if (ps.size() != 2 || !ps[0].is_fact() || ps[0].leaf_op != "torsion_free_quotient")
                return fail(c, "TORSION_QUOTIENT needs a torsion_free_quotient fact and a quotient premise");
            if (!flag(ps[0].leaf_result, "finite") || !flag(ps[0].leaf_result, "characteristic"))
                return fail(c, "torsion subgroup is not finite and characteristic");
            if (!infinite(ps[1]) || !infinite(c)) return fail(c, "quotient and conclusion must be infinity");
        } else if (r == "CHAR_SUBGROUP") {
            if (ps.empty()) return fail(c, "CHAR_SUBGROUP without facts");
            for (const Certificate& p : ps)
                if (!p.is_fact() || !flag(p.leaf_result, "characteristic")) return fail(c, "subgroup not shown characteristic");
            if (c.value) return fail(c, "CHAR_SUBGROUP carries no value");
        } else if (r == "CASE_ANALYSIS") {
            if (ps.empty()) return fail(c, "CASE_ANALYSIS without facts");
            for (const Certificate& p : ps) {
                if (!p.is_fact()) return fail(c, "CASE_ANALYSIS premises must be facts");
                const Json& res = p.leaf_result;
                bool unbounded = false;
                if (p.leaf_op == "klein_witness_family") {
                    const auto size = p.leaf_args.at("hi").get<std::int64_t>() - p.leaf_args.at("lo").get<std::int64_t>() + 1;
                    unbounded = flag(res, "pairwise_distinct") && res.at("classes").get<std::int64_t>() == size && size >= 2;
                } else if (p.leaf_op == "dihedral_class_slice") {
                    unbounded = flag(res, "matches_pair_rule") && res.at("largest_class").get<std::int64_t>() <= 2;
                } else if (p.leaf_op == "scan_g53" || p.leaf_op == "reid_dihedral_all") {
                    unbounded = flag(res, "all_infinite");
                } else {
                    return fail(c, "leaf " + p.leaf_op + " cannot support a case analysis");
                }
                if (!unbounded) return fail(c, "case " + p.leaf_op + " does not exhibit unboundedly many classes");
            }
            if (!infinite(c)) return fail(c, "conclusion must be infinity");
        } else {
            fail(c, "unknown rule \"" + r + "\"");
        }
    }

    void check_fact(const Certificate& c) {
        ++out.facts_checked;
        auto it = dispatcher().find(c.leaf_op);
        if (it == dispatcher().end()) return fail(c, "unknown leaf operation \"" + c.leaf_op + "\"");
        Json got;
        try {
            got = it->second(c.leaf_args);
        } catch (const std::exception& e) {
            return fail(c, "leaf " + c.leaf_op + " failed: " + e.what());
        }
        if (got != c.leaf_result)
            return fail(c, "leaf " + c.leaf_op + " recomputed " + got.dump() + ", recorded " + c.leaf_result.dump());
        if (c.value) {
            if (c.leaf_op != "reid_fg_abelian") return fail(c, "only reid_fg_abelian facts carry a value");
            if (c.value->to_string() != got.get<std::string>()) return fail(c, "value differs from the leaf result");
        }
    }
};

}  // namespace

VerifyResult verify_certificate(const Certificate& c) {
    Checker k;
    k.check(c);
    return k.out;
}

}  // namespace reid
