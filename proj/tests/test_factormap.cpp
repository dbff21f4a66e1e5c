#include "suspfactor/factormap.hpp"
#include "suspfactor/examples.hpp"

#include <doctest.h>

using namespace suspfactor;

namespace {

Rational r(long n, long d = 1) { return Rational(n, d); }
QLin q(long n, long d = 1) { return QLin(Rational(n, d)); }
QLin golden() { return QLin(r(-1, 2), r(1, 2), r(0), r(0)); }

}  // namespace

TEST_CASE("transfer rules evaluate exactly") {
    ExampleBundle b1 = build_example1();
    const auto& m = std::get<SimpleMapSpec>(b1.map);
    SymbolicPoint x = make_point(b1.source(), q(1, 7));
    CHECK(m.t.eval(m.pi, x) == q(1, 7));
    CHECK(TransferRule::constant(q(5, 3)).eval(m.pi, x) == q(5, 3));

    ExampleBundle b5 = build_example5();
    const auto& gm = std::get<GeneralMapSpec>(b5.map);
    SymbolicPoint low = make_point(b5.source(), q(1, 10), Level::ground);
    // v = rho(pi(step y)); the step from the lower split cell climbs in place.
    CHECK(gm.v.eval(gm.pi, low) == q(1, 10));
    SymbolicPoint up = make_point(b5.source(), q(1, 10), Level::upper);
    CHECK(gm.v.eval(gm.pi, up) == q(1, 10) + golden());
}

TEST_CASE("the collapse transfer increment takes exactly three values") {
    ExampleBundle b5 = build_example5();
    const auto& gm = std::get<GeneralMapSpec>(b5.map);
    QLin a = golden();
    auto increment = [&](const SymbolicPoint& y) {
        return gm.v.eval(gm.pi, step(y, 1)) - gm.v.eval(gm.pi, y);
    };
    // Climb pending: the collapse does not move downstairs.
    CHECK(increment(make_point(b5.source(), q(1, 10), Level::ground)) == a);
    CHECK(increment(make_point(b5.source(), q(1, 10), Level::upper)) == a - QLin::one());
    CHECK(increment(make_point(b5.source(), q(3, 10), Level::ground)) == a - QLin::one());
    CHECK(increment(make_point(b5.source(), q(1, 2), Level::ground)) == QLin::zero());

    SplitMix64 rng(3);
    std::vector<QLin> expected{a - QLin::one(), QLin::zero(), a};
    for (int i = 0; i < 150; ++i) {
        SymbolicPoint y = sample_base_point(b5, rng);
        QLin inc = increment(y);
        bool ok = false;
        for (const QLin& e : expected) ok = ok || e == inc;
        CHECK(ok);
    }
}

TEST_CASE("simple application moves the height by the transfer") {
    ExampleBundle b1 = build_example1();
    const auto& m = std::get<SimpleMapSpec>(b1.map);
    SymbolicPoint x = make_point(b1.source(), q(1, 7));
    SuspensionPoint img = apply_simple(m, {x, q(0)});
    CHECK(img.base.system == b1.target());
    CHECK(img.base.rho == q(1, 7));
    CHECK(img.s == q(1, 7));  // t(x) = rho, no target ceiling crossed
    SuspensionPoint img2 = apply_map(b1.map, {x, q(1, 2)});
    CHECK(img2.s == q(1, 2) + q(1, 7));
    CHECK_THROWS_AS(apply_simple(m, {x, q(100)}), std::invalid_argument);  // not canonical
}

TEST_CASE("identity checks accept the shipped maps and reject corrupted ones") {
    SplitMix64 rng(17);
    for (int id : {1, 2, 3}) {
        ExampleBundle b = build_example(id);
        const auto& m = std::get<SimpleMapSpec>(b.map);
        for (int i = 0; i < 50; ++i)
            CHECK_FALSE(check_simple_identity(m, sample_base_point(b, rng)).has_value());
    }
    // Zero out the transfer: the cellwise identity must now fail somewhere.
    ExampleBundle b1 = build_example1();
    SimpleMapSpec broken = std::get<SimpleMapSpec>(b1.map);
    broken.t = TransferRule::constant(q(0));
    int failures = 0;
    for (int i = 0; i < 50; ++i)
        if (check_simple_identity(broken, sample_base_point(b1, rng))) ++failures;
    CHECK(failures > 0);
}

TEST_CASE("cohomology check accepts the collapse map and rejects a bumped ceiling") {
    ExampleBundle b5 = build_example5();
    const auto& gm = std::get<GeneralMapSpec>(b5.map);
    SplitMix64 rng(23);
    for (int i = 0; i < 80; ++i)
        CHECK_FALSE(check_cohom(gm, sample_base_point(b5, rng)).has_value());

    GeneralMapSpec broken = gm;
    std::vector<QLin> ground = gm.g.ground_values();
    ground[1] += QLin::one();
    broken.g = CeilingFunction(gm.g.system(), ground, gm.g.upper_values());
    int failures = 0;
    for (int i = 0; i < 80; ++i)
        if (check_cohom(broken, sample_base_point(b5, rng))) ++failures;
    CHECK(failures > 0);

    const PiTransfer pv = extract_pi_v(gm);
    SymbolicPoint y = make_point(b5.source(), q(1, 7));
    CHECK(pv.transfer.eval(pv.pi, y) == gm.v.eval(gm.pi, y));
    CHECK(apply_symbol_map(pv.pi, y).rho == q(1, 7));
}

TEST_CASE("flow commutation holds for every example") {
    SplitMix64 rng(31);
    for (int id = 1; id <= 5; ++id) {
        ExampleBundle b = build_example(id);
        for (int i = 0; i < 25; ++i) {
            SuspensionPoint p = sample_source_point(b, rng);
            QLin u{rng.rational_in(-20, 20, 8)};
            auto err = check_commute(b.map, p, u);
            if (err) FAIL("example " << id << ": " << *err);
        }
    }
}

TEST_CASE("the half-rotation pair is a genuine two-to-one collision") {
    ExampleBundle b2 = build_example2();
    SymbolicPoint lo = make_point(b2.source(), q(1, 7));
    SymbolicPoint hi = make_point(b2.source(), q(9, 14));
    SuspensionPoint a{lo, q(3, 2)};
    SuspensionPoint c{hi, q(1)};
    CHECK(apply_map(b2.map, a) == apply_map(b2.map, c));
    CHECK_FALSE(equivalent(b2.g(), a.base, a.s, c.base, c.s, 64).has_value());
    auto err = check_injective_pair(b2.map, a, c, 64);
    REQUIRE(err.has_value());  // the pair disproves injectivity

    ExampleBundle b1 = build_example1();
    SplitMix64 rng(41);
    for (int i = 0; i < 40; ++i) {
        SuspensionPoint p = sample_source_point(b1, rng);
        SuspensionPoint s = sample_source_point(b1, rng);
        if (p == s) continue;
        CHECK_FALSE(check_injective_pair(b1.map, p, s, 64).has_value());
    }
}

TEST_CASE("witness search disproves locality where heights track rho") {
    SplitMix64 rng(51);
    ExampleBundle b1 = build_example1();
    for (int radius : {0, 1, 2, 3}) {
        auto w = locality_witness(b1.map, radius, 40, rng);
        REQUIRE(w.has_value());
        CHECK(w->radius == radius);
        CHECK(w->image_gap > QLin::zero());
        CHECK(w->rho_a != w->rho_b);
        // Both coordinates show the same window...
        SymbolicPoint pa = make_point(b1.source(), w->rho_a);
        SymbolicPoint pb = make_point(b1.source(), w->rho_b);
        CHECK(window(pa, radius) == window(pb, radius));
        // ...and the heights differ by exactly the coordinate gap.
        QLin diff = w->rho_b - w->rho_a;
        if (diff < QLin::zero()) diff = -diff;
        CHECK(w->image_gap == diff);
        QLin ia = apply_map(b1.map, {pa, q(0)}).s;
        QLin ib = apply_map(b1.map, {pb, q(0)}).s;
        QLin gap = ia > ib ? ia - ib : ib - ia;
        CHECK(gap == w->image_gap);
    }
    ExampleBundle b4 = build_example4();
    for (int radius : {0, 1, 2, 3})
        CHECK_FALSE(locality_witness(b4.map, radius, 60, rng).has_value());
    ExampleBundle b5 = build_example5();
    CHECK_THROWS_AS(locality_witness(b5.map, 1, 10, rng), std::invalid_argument);
}

TEST_CASE("length scans find exactly the forced coincidences") {
    QLin one = QLin::one(), s2 = QLin::sqrt2(), s5 = QLin::sqrt5();
    CoincidenceScan s = length_coincidence_scan({one, s2}, {one}, 3);
    REQUIRE(s.hits.size() == 3);  // c*1 == c*1 for c = 1..3
    for (long c = 1; c <= 3; ++c) {
        const CoincidenceHit& h = s.hits[static_cast<size_t>(c - 1)];
        CHECK(h.source_combo == std::vector<long>{c, 0});
        CHECK(h.target_combo == std::vector<long>{c});
        CHECK(h.value == QLin(r(c)));
    }
    CoincidenceScan t = length_coincidence_scan({one + s5}, {one + one + s5 + s5}, 4);
    REQUIRE(t.hits.size() == 2);  // 2k*(1+sqrt5) == k*(2+2sqrt5)
    CHECK(t.hits[0].source_combo == std::vector<long>{2});
    CHECK(t.hits[0].target_combo == std::vector<long>{1});
    CHECK(t.hits[1].source_combo == std::vector<long>{4});
    CHECK(t.hits[1].target_combo == std::vector<long>{2});
    CHECK(length_coincidence_scan({s2}, {s5}, 12).hits.empty());
    CHECK(length_coincidence_scan({s2 + one}, {s2}, 12).hits.empty());
    CHECK(length_coincidence_scan({}, {one}, 3).hits.empty());
    CHECK(length_coincidence_scan({one}, {one}, 0).hits.empty());
    CHECK_THROWS_AS(length_coincidence_scan({one}, {one}, -1), std::invalid_argument);
    CHECK_THROWS_AS(length_coincidence_scan({q(0)}, {one}, 3), std::invalid_argument);
    // Non-integer rational lengths go through the denominator-clearing path.
    CoincidenceScan u = length_coincidence_scan({QLin(r(1, 2))}, {QLin(r(1, 3))}, 6);
    REQUIRE(u.hits.size() == 2);  // 2*(1/2) == 3*(1/3), 4*(1/2) == 6*(1/3)
    CHECK(u.hits[0].source_combo == std::vector<long>{2});
    CHECK(u.hits[0].target_combo == std::vector<long>{3});
}

TEST_CASE("example scans match the advertised pictures") {
    ExampleBundle b3 = build_example3();
    CHECK(length_coincidence_scan(b3.g().value_set(), b3.h().value_set(), 25).hits.empty());
    ExampleBundle b5 = build_example5();
    CoincidenceScan s =
        length_coincidence_scan(b5.g().value_set(), b5.h().value_set(), 8);
    CHECK(!s.hits.empty());
    QLin eta2(r(5), r(0), r(0), r(1));
    // Every coincidence is c copies of eta2 on both sides.
    for (const CoincidenceHit& h : s.hits) {
        long c = 0;
        for (size_t i = 0; i < h.source_combo.size(); ++i) {
            if (h.source_combo[i] == 0) continue;
            CHECK(b5.g().value_set()[i] == eta2);
            c = h.source_combo[i];
        }
        CHECK(h.value == eta2.scaled(r(c)));
        for (size_t i = 0; i < h.target_combo.size(); ++i) {
            if (h.target_combo[i] == 0) continue;
            CHECK(b5.h().value_set()[i] == eta2);
            CHECK(h.target_combo[i] == c);
        }
    }
}

TEST_CASE("splitting and merging patches") {
    ExampleBundle b4 = build_example4();
    const auto& sp = std::get<LocalSplitCode>(b4.map);
    SymbolicPoint x = make_point(b4.source(), q(1, 7));
    TilePatch p = patch(b4.g(), {x, q(1, 4)}, q(4));
    TilePatch split = split_patch(p, sp.split_label, QLin::one());
    CHECK_NOTHROW(validate_patch(split));
    CHECK(split.total_length() == p.total_length());
    CHECK(split.tiles.size() > p.tiles.size());
    for (const Tile& t : split.tiles)
        if (t.label == sp.split_label) CHECK(t.length == q(1, 2));
    CHECK(merge_patch(split, sp.split_label, QLin::one()) == p);

    // An odd half tile at the patch edge is dropped; in the interior it is an error.
    TilePatch start_odd{{{1, q(-1, 2), q(1, 2)}, {0, q(0), q(1)}}};
    TilePatch merged = merge_patch(start_odd, 1, QLin::one());
    REQUIRE(merged.tiles.size() == 1);
    CHECK(merged.tiles[0].label == 0);
    TilePatch end_odd{{{0, q(-1, 2), q(1)}, {1, q(1, 2), q(1, 2)}}};
    CHECK(merge_patch(end_odd, 1, QLin::one()).tiles.size() == 1);
    TilePatch interior{{{0, q(-1, 2), q(1)}, {1, q(1, 2), q(1, 2)}, {0, q(1), q(1)}}};
    CHECK_THROWS_AS(merge_patch(interior, 1, QLin::one()), MergeParity);
}

TEST_CASE("split application respects the storeys") {
    ExampleBundle b4 = build_example4();
    const auto& m = std::get<LocalSplitCode>(b4.map);
    SymbolicPoint x = make_point(b4.source(), q(1, 7));  // label 1, the split cell
    SuspensionPoint low = apply_split(m, {x, q(1, 4)});
    CHECK(low.base.level == Level::ground);
    CHECK(low.base.rho == q(1, 7));
    CHECK(low.s == q(1, 4));
    SuspensionPoint high = apply_split(m, {x, q(3, 4)});
    CHECK(high.base.level == Level::upper);
    CHECK(high.s == q(1, 4));  // 3/4 minus the ground storey 1/2
    SymbolicPoint x0 = step(x, 1);  // label 0: unsplit, heights pass through
    SuspensionPoint thru = apply_split(m, {x0, q(2, 3)});
    CHECK(thru.base.level == Level::ground);
    CHECK(thru.s == q(2, 3));
}

TEST_CASE("generic coordinates for the map are screened on both circles") {
    ExampleBundle b2 = build_example2();
    CHECK(map_generic_rho(b2.map, q(1, 7)));
    CHECK_FALSE(map_generic_rho(b2.map, q(0)));
    CHECK_FALSE(map_generic_rho(b2.map, q(1, 4)));  // source cell edge
    // 1/2 maps to the target edge 0 under the doubling, besides being an edge itself.
    CHECK_FALSE(map_generic_rho(b2.map, q(1, 2)));
    for (int id = 1; id <= 5; ++id)
        CHECK(map_generic_rho(build_example(id).map, default_rho()));
}
