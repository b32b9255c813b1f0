#include "doctest.h"

#include "reid/jobs.hpp"

using namespace reid;

namespace {

Json run(const Json& spec, int expect_code = 0) {
    JobResult r = run_job_checked(spec);
    CAPTURE(spec.dump());
    CAPTURE(r.report.dump().substr(0, 400));
    CHECK(r.exit_code == expect_code);
    return r.report;
}

}  // namespace

TEST_CASE("witt job prints the rank table") {
    Json r = run({{"command", "witt"}, {"rank", 2}, {"max-degree", 8}});
    REQUIRE(r["rows"].size() == 8);
    CHECK(r["rows"][6]["rank"] == "18");
    CHECK(r["rows"][7]["rank"] == "30");
    CHECK(render_human(r).find("n=8 rank=30") != std::string::npos);
}

TEST_CASE("reid jobs") {
    CHECK(run({{"command", "reid"}, {"group", "klein"}, {"aut", "b,r=2"}})["R"] == "infinity");
    CHECK(run({{"command", "reid"}, {"group", "dihedral"}, {"sign", -1}, {"n", 3}})["R"] == "infinity");
    CHECK(run({{"command", "reid"}, {"group", "abelian"}, {"matrix", Json::array({Json::array({2, 5}), Json::array({1, 2})})}})["R"] ==
          "4");
    CHECK(run({{"command", "reid"},
               {"group", "free-nilpotent"},
               {"rank", 2},
               {"class", 2},
               {"images", Json::array({"x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"})}})["R"] == "8");
    CHECK(run({{"command", "reid"}, {"group", "N_2"}, {"top", Json::array({Json::array({2, 5}), Json::array({1, 2})})}})["R"] == "8");
    CHECK(run({{"command", "reid"}, {"group", "G53xZ2"},
               {"top", Json::array({Json::array({-1, 0, 0, 0}), Json::array({2, 1, 0, 0}), Json::array({0, 0, 2, 1}),
                                    Json::array({0, 0, 1, 1})})}})["R"] ==
          "infinity");
}

TEST_CASE("layers job") {
    Json r = run({{"command", "layers"}, {"rank", 2}, {"class", 3}, {"images", Json::array({"x2", "x1"})}});
    REQUIRE(r["layers"].size() == 3);
    CHECK(r["layers"][1]["det"] == "-1");
    CHECK(r["automorphism"] == true);
}

TEST_CASE("klein job") {
    Json r = run({{"command", "klein"}, {"aut", "b,r=2"}, {"g", Json::array({1, 0})}, {"h", Json::array({-3, 2})}});
    CHECK(r["twisted_conjugate"] == true);
    Json f = run({{"command", "klein"}, {"aut", "d,r=1"}});
    CHECK(f["family"] == "x^i y");
    CHECK(f["classes"] == 41);
    CHECK(f["R"] == "infinity");
}

TEST_CASE("certify job verifies and reports") {
    Json r = run({{"command", "certify"}, {"problem", Json{{"kind", "klein_x_zn"}, {"n", 3}}}});
    CHECK(r["verified"] == true);
    CHECK(r["value"] == "infinity");
    Json s = run({{"command", "certify"}, {"problem", R"({"kind":"dihedral","sign":-1,"n":2})"}});
    CHECK(s["verified"] == true);
    run({{"command", "certify"}, {"problem", Json{{"kind", "nonsense"}}}}, 2);
}

TEST_CASE("scan and oracle jobs") {
    Json g = run({{"command", "scan-g53"}, {"b-bound", 10}});
    CHECK(g["property_holds"] == true);
    Json b = run({{"command", "oracle"}, {"target", "klein-ball"}, {"aut", "c,r=1"}, {"radius", 4}});
    CHECK(b["contradictions"] == 0);
    Json c = run({{"command", "oracle"}, {"target", "conjugacy-classes"}, {"m", 3}});
    CHECK(c["classes"] == 11);
    // the product formula does not hold on these groups: exit code 1
    Json p = run({{"command", "oracle"}, {"target", "product-formula"}, {"m-values", Json::array({2})}}, 1);
    CHECK(p["violations"] == 8);
}

TEST_CASE("repro targets carry an anchor and succeed") {
    for (const std::string& t : repro_targets()) {
        if (t == "heisenberg-product") continue;
        Json spec{{"command", "repro"}, {"example", t}};
        if (t == "w1-fixed") spec["count"] = 3;
        Json r = run(spec);
        CHECK(r["anchor"].get<std::string>().rfind(t + ":", 0) == 0);
        CHECK(r.contains("seed"));
    }
    Json h = run({{"command", "repro"}, {"example", "heisenberg-product"}}, 1);
    CHECK(h["anchor"].get<std::string>().rfind("heisenberg-product:", 0) == 0);
}

TEST_CASE("repro example values") {
    Json e42 = run({{"command", "repro"}, {"example", "example-4.2"}});
    CHECK(e42["result"][0]["R"] == "8");
    CHECK(e42["result"][0]["layers"][0]["factor"] == "4");
    CHECK(e42["result"][0]["layers"][1]["factor"] == "2");
    Json e41 = run({{"command", "repro"}, {"example", "example-4.1"}, {"bound", 1}});
    CHECK(e41["conclusion"] == "no finite-R lifting automorphism found");
    CHECK(render_human(e41).find("no finite-R lifting automorphism found") != std::string::npos);
}

TEST_CASE("same spec twice gives byte-identical reports") {
    const std::vector<Json> specs{
        {{"command", "repro"}, {"example", "det-law"}, {"seed", 3}},
        {{"command", "repro"}, {"example", "w1-fixed"}, {"seed", 3}, {"count", 2}},
        {{"command", "oracle"}, {"target", "product-formula"}, {"m-values", Json::array({2, 3})}, {"seed", 9}},
        {{"command", "scan-q42"}, {"bound", 1}, {"threads", 3}},
    };
    for (const Json& s : specs) CHECK(run_job_checked(s).report.dump() == run_job_checked(s).report.dump());
    CHECK(run_job_checked(specs[3]).report.dump() ==
          run_job_checked(Json{{"command", "scan-q42"}, {"bound", 1}, {"threads", 1}}).report.dump());
}

TEST_CASE("schema errors exit with code 2") {
    run({{"command", "witt"}, {"rank", 2}, {"bogus", 1}}, 2);
    run({{"command", "teleport"}}, 2);
    run(Json::array({1, 2}), 2);
    run({{"command", "witt"}, {"rank", "two"}}, 2);
    run({{"command", "reid"}, {"group", "klein"}, {"aut", "q,r=1"}}, 2);
    run({{"command", "repro"}, {"example", "example-9.9"}}, 2);
    run({{"command", "layers"}, {"rank", 2}, {"class", 2}, {"images", Json::array({"x1 x7", "x2"})}}, 2);
    Json e = run({{"command", "reid"}, {"group", "G53"}, {"top", Json::array({Json::array({1, 1}), Json::array({0, 1})})}}, 2);
    CHECK(e["error"].get<std::string>().find("G53") != std::string::npos);
}
