#include "suspfactor/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace suspfactor {

using nlohmann::json;

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

json VerifyReport::to_json() const {
    json cs = json::array();
    for (const CheckResult& c : checks)
        cs.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"samples", c.samples},
                      {"failures", c.failures},
                      {"details", c.details},
                      {"extra", c.extra}});
    return {{"format", "suspfactor-verify-report"},
            {"format_version", 1},
            {"example", example},
            {"title", title},
            {"params", params_to_json(params)},
            {"options",
             {{"samples", options.samples},
              {"seed", options.seed},
              {"max_radius", options.max_radius},
              {"witness_probes", options.witness_probes},
              {"scan_bound", options.scan_bound},
              {"equivalence_bound", options.equivalence_bound}}},
            {"passed", all_passed()},
            {"checks", cs}};
}

namespace {

// Accumulates one check's outcome; keeps only the first few failure texts.
struct Tally {
    CheckResult c;
    explicit Tally(std::string name) { c.name = std::move(name); }
    void fail(std::string msg) {
        c.passed = false;
        ++c.failures;
        if (c.details.size() < 3) c.details.push_back(std::move(msg));
    }
    void run_guarded(const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            fail(std::string("exception: ") + e.what());
        }
    }
};

json qlin_list(const std::vector<QLin>& vs) {
    json a = json::array();
    for (const QLin& v : vs) a.push_back(qlin_to_json(v));
    return a;
}

// Generic coordinate below 1/2 whose half-rotation partner is also generic.
QLin draw_half_pair_rho(const ExampleBundle& b, SplitMix64& rng) {
    for (int tries = 0; tries < 256; ++tries) {
        QLin r = sample_generic_rho(b, rng);
        if (r >= QLin::half()) r -= QLin::half();
        if (map_generic_rho(b.map, r) && map_generic_rho(b.map, r + QLin::half())) return r;
    }
    throw std::runtime_error("failed to draw a generic half-rotation pair");
}

}  // namespace

VerifyReport run_verify(const ExampleBundle& b, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.example = b.id;
    rep.title = b.title;
    rep.params = b.params;
    rep.options = opt;
    SplitMix64 rng(opt.seed);
    ExampleFixtures fx = expected_fixtures(b.id, b.params);
    long n_samples = std::max<long>(1, opt.samples);
    long n_pairs = std::max<long>(1, opt.samples / 2);

    {
        Tally t("ceiling_fixtures");
        t.c.samples = 2;
        t.run_guarded([&] {
            auto gs = b.g().value_set();
            auto hs = b.h().value_set();
            if (gs != fx.source_ceiling_values)
                t.fail("source ceiling values differ from the frozen expected set");
            if (hs != fx.target_ceiling_values)
                t.fail("target ceiling values differ from the frozen expected set");
            t.c.extra = {{"source_values", qlin_list(gs)}, {"target_values", qlin_list(hs)}};
        });
        rep.checks.push_back(std::move(t.c));
    }

    if (const auto* sm = std::get_if<SimpleMapSpec>(&b.map)) {
        Tally t("transfer_identity");
        t.c.samples = n_samples;
        t.run_guarded([&] {
            for (long i = 0; i < n_samples; ++i) {
                SymbolicPoint x = sample_base_point(b, rng);
                if (auto err = check_simple_identity(*sm, x)) t.fail(*err);
            }
        });
        rep.checks.push_back(std::move(t.c));
    } else if (const auto* gm = std::get_if<GeneralMapSpec>(&b.map)) {
        Tally t("cocycle_identity");
        t.c.samples = n_samples;
        t.run_guarded([&] {
            long parts[3] = {0, 0, 0};
            for (long i = 0; i < n_samples; ++i) {
                SymbolicPoint y = sample_base_point(b, rng);
                if (y.system->kind == SubshiftKind::doubled)
                    ++parts[static_cast<int>(doubled_part(y))];
                if (auto err = check_cohom(*gm, y)) t.fail(*err);
            }
            t.c.extra = {{"parts",
                          {{"lower_plain", parts[0]},
                           {"lower_split", parts[1]},
                           {"upper_split", parts[2]}}}};
        });
        rep.checks.push_back(std::move(t.c));

        if (!fx.transfer_increment_values.empty()) {
            Tally ti("transfer_increments");
            ti.c.samples = n_samples;
            ti.run_guarded([&] {
                std::vector<QLin> seen;
                for (long i = 0; i < n_samples; ++i) {
                    SymbolicPoint y = sample_base_point(b, rng);
                    QLin inc = gm->v.eval(gm->pi, step(y, 1)) - gm->v.eval(gm->pi, y);
                    bool known = std::any_of(seen.begin(), seen.end(),
                                             [&](const QLin& s) { return s == inc; });
                    if (!known) seen.push_back(inc);
                    if (std::none_of(fx.transfer_increment_values.begin(),
                                     fx.transfer_increment_values.end(),
                                     [&](const QLin& e) { return e == inc; }))
                        ti.fail("transfer increment " + inc.str() +
                                " outside the expected set at rho=" + y.rho.str());
                }
                std::sort(seen.begin(), seen.end(),
                          [](const QLin& x, const QLin& y2) { return x < y2; });
                if (n_samples >= 60 && seen != fx.transfer_increment_values)
                    ti.fail("not every expected transfer increment was observed");
                ti.c.extra = {{"observed", qlin_list(seen)}};
            });
            rep.checks.push_back(std::move(ti.c));
        }
    } else {
        const auto& sp = std::get<LocalSplitCode>(b.map);
        Tally t("storey_sum");
        t.run_guarded([&] {
            const auto& cells = sp.g.system()->partition.cells();
            t.c.samples = static_cast<long>(cells.size());
            for (size_t i = 0; i < cells.size(); ++i) {
                const QLin& gv = sp.g.ground_values()[i];
                const QLin& hv = sp.h.ground_values()[i];
                if (cells[i].label == sp.split_label) {
                    if (gv != hv + *sp.h.upper_values()[i])
                        t.fail("storeys of cell " + std::to_string(i) +
                               " do not add up to the source tile");
                } else if (gv != hv) {
                    t.fail("unsplit cell " + std::to_string(i) + " changes length");
                }
            }
        });
        rep.checks.push_back(std::move(t.c));

        Tally rt("patch_roundtrip");
        long n_patches = std::max<long>(1, opt.samples / 4);
        rt.c.samples = n_patches;
        rt.run_guarded([&] {
            for (long i = 0; i < n_patches; ++i) {
                SuspensionPoint p = sample_source_point(b, rng);
                QLin reach{rng.rational_in(2, 11, 8)};
                TilePatch before = patch(sp.g, p, reach);
                TilePatch after = merge_patch(split_patch(before, sp.split_label, QLin::one()),
                                              sp.split_label, QLin::one());
                if (!(after == before)) rt.fail("split/merge does not restore the patch");
            }
        });
        rep.checks.push_back(std::move(rt.c));
    }

    {
        Tally t("flow_map_commutes");
        t.c.samples = n_samples;
        t.run_guarded([&] {
            long crossings = 0;
            for (long i = 0; i < n_samples; ++i) {
                SuspensionPoint p = sample_source_point(b, rng);
                QLin u{rng.rational_in(-50, 50, 16)};
                if (floor_index(b.g(), p.base, p.s + u) != 0) ++crossings;
                if (auto err = check_commute(b.map, p, u)) t.fail(*err);
            }
            t.c.extra = {{"ceiling_crossings", crossings}};
        });
        rep.checks.push_back(std::move(t.c));
    }

    if (fx.two_to_one_demo) {
        Tally t("two_to_one_pairs");
        t.c.samples = n_pairs;
        t.run_guarded([&] {
            for (long i = 0; i < n_pairs; ++i) {
                QLin r = draw_half_pair_rho(b, rng);
                QLin s{rng.rational_in(0, 1, 64)};
                SuspensionPoint a{make_point(b.source(), r), s + QLin::half()};
                SuspensionPoint c{make_point(b.source(), r + QLin::half()), s};
                if (apply_map(b.map, a) != apply_map(b.map, c))
                    t.fail("half-rotation pair maps to different points at rho=" + r.str());
                if (equivalent(b.g(), a.base, a.s, c.base, c.s, opt.equivalence_bound))
                    t.fail("half-rotation pair is equivalent in the source at rho=" + r.str());
            }
        });
        rep.checks.push_back(std::move(t.c));
    }

    if (fx.injective) {
        Tally t("injective_pairs");
        t.c.samples = n_pairs;
        t.run_guarded([&] {
            for (long i = 0; i < n_pairs; ++i) {
                SuspensionPoint p = sample_source_point(b, rng);
                SuspensionPoint q = sample_source_point(b, rng);
                if (p == q) continue;
                if (auto err = check_injective_pair(b.map, p, q, opt.equivalence_bound))
                    t.fail(*err);
            }
        });
        rep.checks.push_back(std::move(t.c));
    }

    {
        Tally t("cocycle_additive");
        t.c.samples = n_pairs;
        t.run_guarded([&] {
            for (long i = 0; i < n_pairs; ++i) {
                SymbolicPoint x = sample_base_point(b, rng);
                long n = static_cast<long>(rng.below(21)) - 10;
                long m = static_cast<long>(rng.below(21)) - 10;
                QLin whole = cocycle(b.g(), x, n + m);
                QLin split_sum = cocycle(b.g(), x, n) + cocycle(b.g(), step_n(x, n), m);
                if (whole != split_sum)
                    t.fail("cocycle additivity fails at rho=" + x.rho.str() + ", n=" +
                           std::to_string(n) + ", m=" + std::to_string(m));
            }
        });
        rep.checks.push_back(std::move(t.c));
    }

    {
        Tally t("flow_additive");
        t.c.samples = n_pairs;
        t.run_guarded([&] {
            for (long i = 0; i < n_pairs; ++i) {
                SuspensionPoint p = sample_source_point(b, rng);
                QLin u{rng.rational_in(-100, 100, 16)};
                QLin w{rng.rational_in(-100, 100, 16)};
                if (flow(b.g(), flow(b.g(), p, u), w) != flow(b.g(), p, u + w))
                    t.fail("flow additivity fails at rho=" + p.base.rho.str());
            }
        });
        rep.checks.push_back(std::move(t.c));
    }

    {
        Tally t("canonical_equivalence");
        t.c.samples = n_pairs;
        t.run_guarded([&] {
            for (long i = 0; i < n_pairs; ++i) {
                SymbolicPoint x = sample_base_point(b, rng);
                QLin s{rng.rational_in(-100, 100, 32)};
                long n = floor_index(b.g(), x, s);
                SuspensionPoint cp = canonical(b.g(), x, s);
                if (cp.s < QLin::zero() || cp.s >= b.g().eval(cp.base))
                    t.fail("canonical height out of range at rho=" + x.rho.str());
                if (canonical(b.g(), cp.base, cp.s) != cp)
                    t.fail("canonical form is not idempotent at rho=" + x.rho.str());
                auto wit = equivalent(b.g(), x, s, cp.base, cp.s, std::abs(n) + 1);
                if (!wit || *wit != n)
                    t.fail("equivalence witness disagrees with the floor index at rho=" +
                           x.rho.str());
            }
        });
        rep.checks.push_back(std::move(t.c));
    }

    if (fx.witness == WitnessExpectation::found_at_every_radius) {
        Tally t("witness_found_per_radius");
        t.c.samples = opt.max_radius + 1;
        t.run_guarded([&] {
            json found = json::array();
            for (int r = 0; r <= opt.max_radius; ++r) {
                auto w = locality_witness(b.map, r, opt.witness_probes, rng);
                if (!w)
                    t.fail("no witness at radius " + std::to_string(r));
                else
                    found.push_back(witness_to_json(*w));
            }
            t.c.extra = {{"witnesses", found}};
        });
        rep.checks.push_back(std::move(t.c));
    } else if (fx.witness == WitnessExpectation::none) {
        Tally t("witness_absent_per_radius");
        t.c.samples = opt.max_radius + 1;
        t.run_guarded([&] {
            for (int r = 0; r <= opt.max_radius; ++r) {
                if (auto w = locality_witness(b.map, r, opt.witness_probes, rng))
                    t.fail("unexpected witness at radius " + std::to_string(r) + " with gap " +
                           w->image_gap.str());
            }
        });
        rep.checks.push_back(std::move(t.c));
    }

    if (fx.scan_empty) {
        Tally t("length_coincidences");
        t.c.samples = 1;
        t.run_guarded([&] {
            CoincidenceScan scan =
                length_coincidence_scan(b.g().value_set(), b.h().value_set(), opt.scan_bound);
            bool empty = scan.hits.empty();
            if (empty != *fx.scan_empty)
                t.fail(empty ? "expected tile-length coincidences but found none"
                             : "unexpected tile-length coincidences: " +
                                   std::to_string(scan.hits.size()));
            json first = json::array();
            for (size_t i = 0; i < scan.hits.size() && i < 5; ++i) {
                first.push_back({{"source_combo", scan.hits[i].source_combo},
                                 {"target_combo", scan.hits[i].target_combo},
                                 {"value", qlin_to_json(scan.hits[i].value)}});
            }
            t.c.extra = {{"bound", opt.scan_bound},
                         {"hit_count", scan.hits.size()},
                         {"first_hits", first}};
        });
        rep.checks.push_back(std::move(t.c));
    }

    return rep;
}

json run_witness_report(const ExampleBundle& b, int max_radius, int probes, std::uint64_t seed) {
    SplitMix64 rng(seed);
    json results = json::array();
    for (int r = 0; r <= max_radius; ++r) {
        auto w = locality_witness(b.map, r, probes, rng);
        results.push_back({{"radius", r},
                           {"found", static_cast<bool>(w)},
                           {"witness", w ? witness_to_json(*w) : json(nullptr)}});
    }
    return {{"format", "suspfactor-witness-report"},
            {"format_version", 1},
            {"example", b.id},
            {"seed", seed},
            {"probes", probes},
            {"max_radius", max_radius},
            {"results", results}};
}

json run_lengths_report(const ExampleBundle& b, long bound) {
    CoincidenceScan scan = length_coincidence_scan(b.g().value_set(), b.h().value_set(), bound);
    json out = scan_to_json(scan);
    out["format"] = "suspfactor-lengths-report";
    out["format_version"] = 1;
    out["example"] = b.id;
    return out;
}

std::vector<std::pair<std::string, TilePatch>> render_patches(const ExampleBundle& b,
                                                              const RenderRequest& r) {
    SymbolicPoint base = make_point(b.source(), r.rho, r.level);
    SuspensionPoint sp = canonical(b.g(), base, r.s);
    TilePatch src = patch(b.g(), sp, r.reach);
    SuspensionPoint img = apply_map(b.map, sp);
    TilePatch tgt = patch(b.h(), img, r.reach);
    return {{"source: " + b.source()->name, std::move(src)},
            {"image: " + b.target()->name, std::move(tgt)}};
}

json run_render_json(const ExampleBundle& b, const RenderRequest& r) {
    SymbolicPoint base = make_point(b.source(), r.rho, r.level);
    SuspensionPoint sp = canonical(b.g(), base, r.s);
    SuspensionPoint img = apply_map(b.map, sp);
    return {{"format", "suspfactor-render"},
            {"format_version", 1},
            {"example", b.id},
            {"reach", qlin_to_json(r.reach)},
            {"point",
             {{"rho", qlin_to_json(sp.base.rho)},
              {"level", sp.base.level == Level::upper ? "upper" : "ground"},
              {"s", qlin_to_json(sp.s)}}},
            {"image_point",
             {{"rho", qlin_to_json(img.base.rho)},
              {"level", img.base.level == Level::upper ? "upper" : "ground"},
              {"s", qlin_to_json(img.s)}}},
            {"source_patch", patch_to_json(patch(b.g(), sp, r.reach))},
            {"image_patch", patch_to_json(patch(b.h(), img, r.reach))}};
}

std::string run_render_svg(const ExampleBundle& b, const RenderRequest& r) {
    return patches_to_svg(render_patches(b, r));
}

}  // namespace suspfactor
