#include "reid/jobs.hpp"

#include <random>
#include <sstream>

#include "reid/oracle.hpp"
#include "reid/reidemeister.hpp"

namespace reid {

const std::vector<std::string>& job_commands() {
    static const std::vector<std::string> c = {"witt",   "layers", "reid",  "certify", "scan-q42",
                                               "scan-g53", "klein", "oracle", "repro"};
    return c;
}

const std::vector<std::string>& repro_targets() {
    static const std::vector<std::string> t = {"witt-table",  "example-4.1", "example-4.2", "example-5.1",
                                               "example-5.2", "klein-cases", "dihedral-slice", "klein-x-zn",
                                               "w1-fixed",    "det-law",     "det-one",     "heisenberg-product"};
    return t;
}

// ------------------------------------------------------------ named words

FreeWord commutator_B() { return commutator(FreeWord::generator(2, 1), FreeWord::generator(2, 2)); }

FreeWord commutator_w() {
    const FreeWord x = FreeWord::generator(2, 1), y = FreeWord::generator(2, 2), b = commutator_B();
    return commutator(commutator(b, x), commutator(b, y));
}

FreeWord commutator_w1() { return commutator(commutator_B(), commutator_w()); }

EndoSpec block_sum_automorphism(unsigned r) {
    if (r < 2) throw DomainError("block_sum_automorphism: rank must be at least 2");
    std::vector<FreeWord> images;
    for (unsigned b = 0; b + 1 < r; b += 2) {
        const FreeWord x = FreeWord::generator(r, b + 1), y = FreeWord::generator(r, b + 2);
        images.push_back(x * x * y);
        images.push_back(x * x * x * x * x * y * y);
    }
    if (r % 2) images.push_back(FreeWord::generator(r, r, -1));
    return EndoSpec(std::move(images));
}

Json det_law_report(std::uint64_t seed, unsigned count) {
    std::mt19937_64 rng(seed);
    Json cases = Json::array();
    unsigned failures = 0;
    for (unsigned i = 0; i < count; ++i) {
        EndoSpec e = random_endo(2, 6, rng);
        LayerMapEngine eng(e, 2);
        const Integer d = det(eng.layer_matrix(1));
        const IntMatrix l2 = eng.layer_matrix(2);
        const bool ok = l2.rows() == 1 && l2(0, 0) == d;
        failures += !ok;
        cases.push_back(Json{{"images", endo_to_json(e)}, {"det", integer_to_json(d)}, {"layer2", matrix_to_json(l2)}, {"ok", ok}});
    }
    return Json{{"seed", seed}, {"count", count}, {"failures", failures}, {"cases", cases}};
}

Json fixed_element_report(std::uint64_t seed, unsigned count) {
    std::mt19937_64 rng(seed);
    const std::vector<Integer> coords = layer_coordinates(commutator_w1(), 8);
    Json cases = Json::array();
    unsigned failures = 0;
    for (unsigned i = 0; i < count; ++i) {
        EndoSpec e = random_nielsen_automorphism(2, 6, -1, rng);
        FreeNilpotentReid r = reid_free_nilpotent_detail(e, 8);
        const Integer d = det(r.layer_matrices[0]);
        const bool fixed = r.layer_matrices[7].apply(coords) == coords;
        const bool ok = d == -1 && fixed && r.total.is_infinite();
        failures += !ok;
        cases.push_back(Json{{"images", endo_to_json(e)},
                             {"det", integer_to_json(d)},
                             {"w1_fixed", fixed},
                             {"R", cardinal_to_json(r.total)},
                             {"ok", ok}});
    }
    return Json{{"seed", seed}, {"count", count}, {"w1_coordinates", vector_to_json(coords)}, {"failures", failures},
                {"cases", cases}};
}

// ---------------------------------------------------------------- helpers

namespace {

template <class T>
T field(const Json& s, const char* key, T fallback) {
    if (!s.contains(key)) return fallback;
    try {
        return s.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw DomainError(std::string("field \"") + key + "\" has the wrong type");
    }
}

const Json& required(const Json& s, const char* key) {
    if (!s.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    return s.at(key);
}

KleinElement klein_element(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw DomainError("Klein element must be [m, k]");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Json klein_json(const KleinElement& g) { return Json::array({g.m, g.k}); }

Json layer_breakdown(const FreeNilpotentReid& r) {
    Json layers = Json::array();
    for (std::size_t n = 0; n < r.layer_matrices.size(); ++n)
        layers.push_back(Json{{"layer", n + 1},
                              {"matrix", matrix_to_json(r.layer_matrices[n])},
                              {"det", integer_to_json(det(r.layer_matrices[n]))},
                              {"factor", cardinal_to_json(r.factors[n])}});
    return layers;
}

Json certify_and_verify(const Json& problem, bool& all_ok) {
    Certificate c = certify(problem);
    VerifyResult v = verify_certificate(Certificate::from_json(c.to_json()));
    all_ok = all_ok && v.ok;
    return Json{{"problem", problem},
                {"value", c.value ? cardinal_to_json(*c.value) : Json()},
                {"verified", v.ok},
                {"facts_checked", v.facts_checked},
                {"rules_checked", v.rules_checked},
                {"errors", v.errors},
                {"certificate", c.to_json()}};
}

// --------------------------------------------------------------- commands

JobResult job_witt(const Json& s) {
    require_keys(s, {"command", "rank", "max-degree", "seed", "threads"}, "witt job");
    const unsigned r = field(s, "rank", 2u), top = field(s, "max-degree", 8u);
    if (r == 0 || top == 0) throw DomainError("witt: rank and max-degree must be positive");
    Json rows = Json::array();
    for (unsigned n = 1; n <= top; ++n) {
        Json row{{"n", n}, {"rank", integer_to_json(witt_rank(r, n))}};
        if (r <= 4 && n <= 10) row["lyndon_words"] = lyndon_basis(r, n).words.size();
        rows.push_back(std::move(row));
    }
    return {0, Json{{"command", "witt"},
                    {"rank", r},
                    {"rows", rows},
                    {"hirsch_length", integer_to_json(hirsch_length_free_nilpotent(r, top))}}};
}

JobResult job_layers(const Json& s) {
    require_keys(s, {"command", "rank", "class", "images", "seed", "threads"}, "layers job");
    const unsigned r = field(s, "rank", 2u), c = field(s, "class", 2u);
    EndoSpec e = endo_from_json(required(s, "images"), r);
    FreeNilpotentReid res = reid_free_nilpotent_detail(e, c);
    return {0, Json{{"command", "layers"},
                    {"rank", r},
                    {"class", c},
                    {"images", endo_to_json(e)},
                    {"automorphism", is_automorphism_free_nilpotent(e)},
                    {"layers", layer_breakdown(res)},
                    {"R", cardinal_to_json(res.total)}}};
}

JobResult job_reid(const Json& s) {
    require_keys(s, {"command", "group", "aut", "sign", "n", "matrix", "relations", "rank", "class", "images", "top",
                     "layers", "seed", "threads"},
                 "reid job");
    const std::string group = field(s, "group", std::string());
    Json out{{"command", "reid"}, {"group", group}};
    if (group == "klein") {
        Certificate c = reid_klein(klein_aut_from_json(required(s, "aut")));
        out["R"] = cardinal_to_json(*c.value);
        out["certificate"] = c.to_json();
    } else if (group == "dihedral") {
        Certificate c = reid_dihedral({field(s, "sign", 1), field<std::int64_t>(s, "n", 0)});
        out["R"] = cardinal_to_json(*c.value);
        out["certificate"] = c.to_json();
    } else if (group == "abelian") {
        IntMatrix m = matrix_from_json(required(s, "matrix"));
        IntMatrix rel = s.contains("relations") ? matrix_from_json(s.at("relations"), m.rows()) : IntMatrix(m.rows(), 0);
        out["R"] = cardinal_to_json(reid_fg_abelian(m, rel));
    } else if (group == "free-nilpotent") {
        const unsigned r = field(s, "rank", 2u), c = field(s, "class", 2u);
        FreeNilpotentReid res = reid_free_nilpotent_detail(endo_from_json(required(s, "images"), r), c);
        out["layers"] = layer_breakdown(res);
        out["R"] = cardinal_to_json(res.total);
    } else if (!group.empty()) {
        CentralTower t = tower_from_json(Json(group));
        TowerEndo e;
        if (s.contains("layers")) {
            for (const Json& m : s.at("layers")) e.layer_matrices.push_back(matrix_from_json(m));
        } else {
            e = derive_tower_endo(t, matrix_from_json(required(s, "top")));
        }
        Certificate c = reid_central_tower(t, e);
        Json layers = Json::array();
        for (const IntMatrix& m : e.layer_matrices) layers.push_back(matrix_to_json(m));
        out["layer_matrices"] = layers;
        out["R"] = cardinal_to_json(*c.value);
        out["certificate"] = c.to_json();
    } else {
        throw DomainError("reid: missing \"group\"");
    }
    return {0, out};
}

JobResult job_certify(const Json& s) {
    require_keys(s, {"command", "problem", "seed", "threads"}, "certify job");
    Json problem = required(s, "problem");
    if (problem.is_string()) problem = Json::parse(problem.get<std::string>());
    bool ok = true;
    Json r = certify_and_verify(problem, ok);
    r["command"] = "certify";
    return {ok ? 0 : 1, r};
}

JobResult job_scan_q42(const Json& s) {
    require_keys(s, {"command", "bound", "threads", "seed"}, "scan-q42 job");
    ScanReport r = scan_q42(field(s, "bound", 1u), field(s, "threads", 1u));
    return {r.property_holds ? 0 : 1, r.to_json()};
}

JobResult job_scan_g53(const Json& s) {
    require_keys(s, {"command", "b-bound", "threads", "seed"}, "scan-g53 job");
    ScanReport r = scan_g53(field(s, "b-bound", 10u));
    return {r.property_holds ? 0 : 1, r.to_json()};
}

JobResult job_klein(const Json& s) {
    require_keys(s, {"command", "aut", "g", "h", "lo", "hi", "seed", "threads"}, "klein job");
    KleinAut a = klein_aut_from_json(required(s, "aut"));
    Json out{{"command", "klein"}, {"aut", to_string(a)}, {"case", std::string(1, klein_case(a))}};
    if (s.contains("g") || s.contains("h")) {
        KleinElement g = klein_element(required(s, "g")), h = klein_element(required(s, "h"));
        auto sigma = klein_twisted_conjugate(a, g, h);
        out["g"] = klein_json(g);
        out["h"] = klein_json(h);
        out["twisted_conjugate"] = sigma.has_value();
        if (sigma) out["conjugator"] = klein_json(*sigma);
        return {0, out};
    }
    FamilyCheck f = klein_witness_family(a, field<std::int64_t>(s, "lo", -20), field<std::int64_t>(s, "hi", 20));
    out["family"] = klein_witness_family_name(a);
    out["lo"] = f.lo;
    out["hi"] = f.hi;
    out["classes"] = f.classes;
    out["pairwise_distinct"] = f.pairwise_distinct;
    out["R"] = cardinal_to_json(*reid_klein(a).value);
    return {0, out};
}

JobResult job_oracle(const Json& s) {
    require_keys(s, {"command", "target", "m-values", "seed", "samples", "aut", "radius", "m", "threads"}, "oracle job");
    const std::string target = field(s, "target", std::string("product-formula"));
    if (target == "product-formula") {
        const auto ms = field(s, "m-values", std::vector<unsigned>{2, 3, 4});
        ProductFormulaReport r = verify_product_formula(ms, field<std::uint64_t>(s, "seed", 1), field<std::size_t>(s, "samples", 1000));
        Json out = r.to_json();
        out["command"] = "oracle";
        out["target"] = target;
        return {r.violations ? 1 : 0, out};
    }
    if (target == "conjugacy-classes") {
        FinitePcGroup g = build_heisenberg_mod(field(s, "m", 3u));
        FiniteEndo id;
        for (std::size_t i = 0; i < g.generators(); ++i) id.images.push_back(g.generator(i));
        auto p = twisted_classes_finite(g, id);
        return {0, Json{{"command", "oracle"}, {"target", target}, {"group", g.name()}, {"order", g.order()},
                        {"classes", p.class_count}, {"class_sizes", p.class_sizes()}}};
    }
    if (target == "klein-ball") {
        KleinAut a = klein_aut_from_json(required(s, "aut"));
        auto p = klein_ball_partition(a, field(s, "radius", 6u));
        std::size_t contradictions = 0;
        for (std::size_t i = 0; i < p.elements.size(); ++i)
            for (std::size_t j = i + 1; j < p.elements.size(); ++j)
                if (p.class_id[i] == p.class_id[j] && !klein_twisted_conjugate(a, p.elements[i], p.elements[j]))
                    ++contradictions;
        return {contradictions ? 1 : 0,
                Json{{"command", "oracle"}, {"target", target}, {"aut", to_string(a)}, {"ball_size", p.elements.size()},
                     {"cells", p.class_count}, {"contradictions", contradictions}}};
    }
    throw DomainError("oracle: unknown target \"" + target + "\"");
}

// ----------------------------------------------------------------- repro

JobResult job_repro(const Json& s) {
    require_keys(s, {"command", "example", "bound", "seed", "threads", "rank", "max-degree", "b-bound", "count"},
                 "repro job");
    const std::string ex = field(s, "example", std::string());
    const std::uint64_t seed = field<std::uint64_t>(s, "seed", 1);
    Json out{{"command", "repro"}, {"example", ex}};
    int code = 0;

    if (ex == "witt-table") {
        out["anchor"] = "witt-table: ranks of the lower central quotients of F2";
        Json spec{{"command", "witt"}, {"rank", field(s, "rank", 2u)}, {"max-degree", field(s, "max-degree", 8u)}};
        out["result"] = job_witt(spec).report;
    } else if (ex == "example-4.1") {
        out["anchor"] = "example-4.1: class-2 quotient Q42 of G(4,2), automorphism scan";
        ScanReport r = scan_q42(field(s, "bound", 1u), field(s, "threads", 1u));
        out["result"] = r.to_json();
        out["conclusion"] = r.property_holds ? "no finite-R lifting automorphism found" : "finite-R automorphism found";
        code = r.property_holds ? 0 : 1;
    } else if (ex == "example-4.2") {
        out["anchor"] = "example-4.2: x -> x^2 y, y -> x^5 y^2 on G(r,2)";
        Json ranks = Json::array();
        for (unsigned r = 2; r <= 5; ++r) {
            EndoSpec e = block_sum_automorphism(r);
            FreeNilpotentReid res = reid_free_nilpotent_detail(e, 2);
            if (res.total.is_infinite()) code = 1;
            ranks.push_back(Json{{"rank", r}, {"images", endo_to_json(e)}, {"layers", layer_breakdown(res)},
                                 {"R", cardinal_to_json(res.total)}});
        }
        out["result"] = ranks;
    } else if (ex == "example-5.1") {
        out["anchor"] = "example-5.1: N_r with a -> a^2 b, b -> a^5 b^2";
        Json rows = Json::array();
        for (std::int64_t r : {1, 2, 3, -2}) {
            CentralTower t = build_N_r(r);
            TowerEndo e = derive_tower_endo(t, IntMatrix{{2, 5}, {1, 2}});
            Certificate c = reid_central_tower(t, e);
            rows.push_back(Json{{"tower", t.name}, {"center_map", matrix_to_json(e.layer_matrices[1])},
                                {"R", cardinal_to_json(*c.value)}});
            if (c.value->is_infinite()) code = 1;
        }
        out["result"] = rows;
    } else if (ex == "example-5.2") {
        out["anchor"] = "example-5.2: G53 = <x,y | Gamma_4, [B,y]> and G53 x Z^n";
        ScanReport r = scan_g53(field(s, "b-bound", 10u));
        bool ok = r.property_holds;
        Json hl = Json::array();
        for (unsigned n = 0; n <= 3; ++n) hl.push_back(Json{{"n", n}, {"hirsch_length", integer_to_json(product_with_Zn(build_G53(), n).hirsch_length())}});
        out["result"] = Json{{"scan", r.to_json()},
                             {"hirsch_lengths", hl},
                             {"certificate", certify_and_verify(Json{{"kind", "g53"}, {"b_bound", field(s, "b-bound", 10u)}}, ok)}};
        code = ok ? 0 : 1;
    } else if (ex == "klein-cases") {
        out["anchor"] = "klein-cases: every automorphism of Z⋊Z, four sign cases";
        Json rows = Json::array();
        bool ok = true;
        for (char c : {'a', 'b', 'c', 'd'})
            for (std::int64_t r = -5; r <= 5; ++r) {
                KleinAut a = klein_aut_from_case(c, r);
                FamilyCheck f = klein_witness_family(a, -20, 20);
                Json cert = certify_and_verify(Json{{"kind", "klein"}, {"aut", to_string(a)}}, ok);
                ok = ok && f.pairwise_distinct;
                rows.push_back(Json{{"aut", to_string(a)}, {"family", klein_witness_family_name(a)}, {"classes", f.classes},
                                    {"R", cert["value"]}, {"verified", cert["verified"]}});
            }
        out["result"] = rows;
        code = ok ? 0 : 1;
    } else if (ex == "dihedral-slice") {
        out["anchor"] = "dihedral-slice: classes of (t^l,1) in Z⋊Z2 contain at most two elements";
        Json rows = Json::array();
        for (std::int64_t n = -5; n <= 5; ++n) {
            DihedralSlice sl = dihedral_class_slice({-1, n}, 50);
            if (!sl.matches_pair_rule || sl.classes < 50) code = 1;
            rows.push_back(Json{{"n", n}, {"classes", sl.classes}, {"largest_class", sl.largest_class},
                                {"matches_pair_rule", sl.matches_pair_rule}});
        }
        out["result"] = rows;
    } else if (ex == "klein-x-zn") {
        out["anchor"] = "klein-x-zn: Z⋊Z x Z^n through the center and the Z⋊Z2 quotient";
        Json rows = Json::array();
        bool ok = true;
        for (unsigned n = 0; n <= 3; ++n) rows.push_back(certify_and_verify(Json{{"kind", "klein_x_zn"}, {"n", n}}, ok));
        out["result"] = rows;
        code = ok ? 0 : 1;
    } else if (ex == "w1-fixed") {
        out["anchor"] = "w1-fixed: w1 = [B,[[B,x],[B,y]]] is fixed on Gamma_8/Gamma_9 when det = -1";
        Json r = fixed_element_report(seed, field(s, "count", 20u));
        r["lcs_degree_w"] = lcs_degree(commutator_w(), 9).degree;
        r["lcs_degree_w1"] = lcs_degree(commutator_w1(), 9).degree;
        code = r["failures"].get<unsigned>() ? 1 : 0;
        out["result"] = std::move(r);
    } else if (ex == "det-law") {
        out["anchor"] = "det-law: the map on Gamma_2/Gamma_3 is multiplication by det";
        Json r = det_law_report(seed, field(s, "count", 100u));
        code = r["failures"].get<unsigned>() ? 1 : 0;
        out["result"] = std::move(r);
    } else if (ex == "det-one") {
        out["anchor"] = "det-one: abelianization determinant 1 forces R = infinity";
        bool ok = true;
        out["result"] = certify_and_verify(
            Json{{"kind", "free_nilpotent"}, {"rank", 2}, {"class", 2}, {"images", Json::array({"x1 x2", "x2"})}}, ok);
        code = ok ? 0 : 1;
    } else if (ex == "heisenberg-product") {
        out["anchor"] = "heisenberg-product: R(phi) = R(phi')R(phi-bar) on Heis(Z_m), brute force";
        ProductFormulaReport r = verify_product_formula({2, 3, 4}, seed);
        out["result"] = r.to_json();
        code = r.violations ? 1 : 0;
    } else {
        throw DomainError("repro: unknown example \"" + ex + "\"");
    }
    out["seed"] = seed;
    return {code, out};
}

}  // namespace

JobResult run_job(const Json& spec) {
    if (!spec.is_object()) throw DomainError("job spec must be a JSON object");
    const std::string cmd = field(spec, "command", std::string());
    if (cmd == "witt") return job_witt(spec);
    if (cmd == "layers") return job_layers(spec);
    if (cmd == "reid") return job_reid(spec);
    if (cmd == "certify") return job_certify(spec);
    if (cmd == "scan-q42") return job_scan_q42(spec);
    if (cmd == "scan-g53") return job_scan_g53(spec);
    if (cmd == "klein") return job_klein(spec);
    if (cmd == "oracle") return job_oracle(spec);
    if (cmd == "repro") return job_repro(spec);
    throw DomainError("unknown command \"" + cmd + "\"");
}

JobResult run_job_checked(const Json& spec) {
    try {
        return run_job(spec);
    } catch (const std::invalid_argument& e) {
        return {2, Json{{"error", e.what()}}};
    } catch (const nlohmann::json::exception& e) {
        return {2, Json{{"error", std::string("malformed JSON input: ") + e.what()}}};
    }
}

// ------------------------------------------------------------------ human

namespace {

bool is_flat(const Json& j) {
    if (!j.is_array()) return j.is_primitive();
    for (const Json& x : j)
        if (!is_flat(x)) return false;
    return true;
}

bool is_record(const Json& j) {
    if (!j.is_object() || j.empty()) return false;
    for (const auto& item : j.items())
        if (!item.value().is_primitive()) return false;
    return true;
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostringstream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& item : j.items()) {
            if (is_flat(item.value())) {
                os << pad << item.key() << ": " << scalar(item.value()) << '\n';
            } else {
                os << pad << item.key() << ":\n";
                render(os, item.value(), indent + 1);
            }
        }
    } else if (j.is_array()) {
        for (const Json& x : j) {
            if (is_flat(x)) {
                os << pad << "- " << scalar(x) << '\n';
            } else if (is_record(x)) {
                // one line per row keeps tables readable
                os << pad << "-";
                for (const auto& item : x.items()) os << ' ' << item.key() << '=' << scalar(item.value());
                os << '\n';
            } else {
                os << pad << "-\n";
                render(os, x, indent + 1);
            }
        }
    } else {
        os << pad << j.dump() << '\n';
    }
}

}  // namespace

std::string render_human(const Json& report) {
    std::ostringstream os;
    render(os, report, 0);
    return os.str();
}

}  // namespace reid
