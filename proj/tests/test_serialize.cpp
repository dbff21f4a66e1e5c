#include "suspfactor/report.hpp"

#include <doctest.h>

using namespace suspfactor;
using nlohmann::json;

namespace {

Rational r(long n, long d = 1) { return Rational(n, d); }
QLin q(long n, long d = 1) { return QLin(Rational(n, d)); }

}  // namespace

TEST_CASE("coefficient vectors round-trip through json") {
    QLin v(r(-7, 3), r(1, 2), r(0), r(22, 7));
    json j = qlin_to_json(v);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 4);
    CHECK(j[0] == "-7/3");
    CHECK(qlin_from_json(j) == v);
    CHECK(qlin_from_json(qlin_to_json(QLin::zero())) == QLin::zero());
    CHECK_THROWS_AS(qlin_from_json(json::array({"1/2"})), std::invalid_argument);
    CHECK_THROWS_AS(qlin_from_json(json::parse(R"(["a","b","c","d"])")),
                    std::invalid_argument);
}

TEST_CASE("patches round-trip through json") {
    ExampleBundle b1 = build_example1();
    SymbolicPoint x = make_point(b1.source(), q(1, 7));
    TilePatch p = patch(b1.g(), canonical(b1.g(), x, q(5, 2)), q(15));
    json j = patch_to_json(p);
    CHECK(j["total_length"] == qlin_to_json(p.total_length()));
    TilePatch back = patch_from_json(j);
    CHECK(back == p);

    json broken = j;
    broken["tiles"][1]["left"] = qlin_to_json(q(100));  // breaks abutment
    CHECK_THROWS_AS(patch_from_json(broken), std::invalid_argument);
}

TEST_CASE("system and bundle serialization carries the construction") {
    json s1 = system_to_json(*build_example1().source());
    CHECK(s1["kind"] == "plain");
    CHECK(s1["cells"].size() == 4);
    CHECK(s1["name"] == "sturmian-half");
    CHECK_FALSE(s1.contains("doubled_label"));

    json s5 = system_to_json(*build_example5().source());
    CHECK(s5["kind"] == "doubled");
    CHECK(s5["doubled_label"] == 1);

    json b1 = bundle_to_json(build_example1());
    CHECK(b1["map_kind"] == "simple");
    CHECK(b1["pi"]["kind"] == "identity");
    CHECK(b1["transfer"]["kind"] == "rho_of_point");

    json b2 = bundle_to_json(build_example2());
    CHECK(b2["pi"]["kind"] == "block_code");
    CHECK(b2["pi"]["circle_multiplier"] == "2/1");
    CHECK(b2["pi"]["table"]["2"] == 0);

    json b4 = bundle_to_json(build_example4());
    CHECK(b4["map_kind"] == "local_split");
    CHECK(b4["split_label"] == 1);
    CHECK(b4["target_ceiling"]["upper"].size() == 2);

    json b5 = bundle_to_json(build_example5());
    CHECK(b5["map_kind"] == "general");
    CHECK(b5["pi"]["kind"] == "collapse");
    CHECK(b5["transfer"]["kind"] == "rho_of_pi_after_step");
    CHECK(b5["source_ceiling"]["values"].size() == 5);
}

TEST_CASE("serialization is byte-stable across rebuilds") {
    for (int id = 1; id <= 5; ++id) {
        CHECK(bundle_to_json(build_example(id)).dump() ==
              bundle_to_json(build_example(id)).dump());
        CHECK(fixtures_to_json(expected_fixtures(id)).dump() ==
              fixtures_to_json(expected_fixtures(id)).dump());
    }
}

TEST_CASE("witness and scan serialization") {
    Witness w{q(1, 7), q(2, 7), 3, q(1, 7)};
    json jw = witness_to_json(w);
    CHECK(jw["radius"] == 3);
    CHECK(jw["rho_a"] == qlin_to_json(q(1, 7)));
    CHECK(jw["image_gap"] == qlin_to_json(q(1, 7)));

    CoincidenceScan s = length_coincidence_scan({QLin::one()}, {QLin::one()}, 2);
    json js = scan_to_json(s);
    CHECK(js["bound"] == 2);
    CHECK(js["hit_count"] == 2);
    CHECK(js["hits"][0]["source_combo"] == json::array({1}));
    CHECK(js["source_lengths"].size() == 1);
}

TEST_CASE("svg rendering draws labeled rectangles to a fixed scale") {
    ExampleBundle b4 = build_example4();
    RenderRequest rq;
    rq.rho = q(1, 7);
    rq.s = q(0);
    rq.reach = q(2);
    std::string svg = run_render_svg(b4, rq);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("width=\"40.00\"") != std::string::npos);   // unit tile, 40 px each
    CHECK(svg.find("width=\"20.00\"") != std::string::npos);   // split half tile
    CHECK(svg.find("<title>") != std::string::npos);           // exact lengths on hover
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // origin marker
    CHECK(svg.find("short-coded-rotation") != std::string::npos);
    CHECK(svg.find("short-coded-doubled") != std::string::npos);
}

TEST_CASE("text rendering lists tiles in order") {
    ExampleBundle b4 = build_example4();
    SymbolicPoint x = make_point(b4.source(), q(1, 7));
    std::string text = patch_to_text(patch(b4.g(), {x, q(0)}, q(1)));
    CHECK(text.find("label 1") != std::string::npos);
    CHECK(text.find("left -1") != std::string::npos);
    CHECK(text.find("length 1") != std::string::npos);
}

TEST_CASE("verify report shape and determinism") {
    ExampleBundle b1 = build_example1();
    VerifyOptions opt;
    opt.samples = 8;
    opt.max_radius = 1;
    opt.witness_probes = 10;
    opt.seed = 11;
    VerifyReport rep = run_verify(b1, opt);
    CHECK(rep.all_passed());
    json j = rep.to_json();
    CHECK(j["format"] == "suspfactor-verify-report");
    CHECK(j["example"] == 1);
    CHECK(j["passed"] == true);
    CHECK(j["options"]["seed"] == 11);
    REQUIRE(j["checks"].is_array());
    CHECK(j["checks"].size() == rep.checks.size());
    bool saw_identity = false;
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("passed"));
        CHECK(c.contains("samples"));
        saw_identity = saw_identity || c["name"] == "transfer_identity";
    }
    CHECK(saw_identity);
    CHECK(run_verify(b1, opt).to_json().dump() == j.dump());

    // A corrupted report (wrong fixture set) flips the overall status bit.
    VerifyReport bad = rep;
    bad.checks[0].passed = false;
    CHECK_FALSE(bad.all_passed());
    CHECK(bad.to_json()["passed"] == false);
}

TEST_CASE("witness and lengths reports are self-describing") {
    ExampleBundle b1 = build_example1();
    json w = run_witness_report(b1, 2, 10, 5);
    CHECK(w["format"] == "suspfactor-witness-report");
    REQUIRE(w["results"].size() == 3);
    for (const auto& row : w["results"]) {
        CHECK(row["found"] == true);
        CHECK(row["witness"].is_object());
    }
    ExampleBundle b3 = build_example3();
    json l = run_lengths_report(b3, 10);
    CHECK(l["format"] == "suspfactor-lengths-report");
    CHECK(l["hit_count"] == 0);
    json l5 = run_lengths_report(build_example5(), 6);
    CHECK(l5["hit_count"] == 6);
}

TEST_CASE("render json names both patches and the exact image point") {
    ExampleBundle b5 = build_example5();
    RenderRequest rq;
    rq.rho = q(1, 7);
    rq.level = Level::upper;
    rq.s = q(1, 3);
    rq.reach = q(4);
    json j = run_render_json(b5, rq);
    CHECK(j["format"] == "suspfactor-render");
    CHECK(j["point"]["level"] == "upper");
    CHECK(j["point"]["rho"] == qlin_to_json(q(1, 7)));
    CHECK(j["image_point"]["level"] == "ground");
    CHECK_NOTHROW(patch_from_json(j["source_patch"]));
    CHECK_NOTHROW(patch_from_json(j["image_patch"]));
}
