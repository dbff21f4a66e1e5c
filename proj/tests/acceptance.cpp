// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit code = number
// of failures. Everything is exact arithmetic; "passes" means exact equality,
// never a tolerance. Run with --cli <path-to-suspfactor> so the determinism
// criterion can drive the real binary.

#include "suspfactor/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace suspfactor;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool passed, const std::string& detail,
            double seconds) {
    std::printf("[%s] %2d. %s (%.2f s)%s%s\n", passed ? "PASS" : "FAIL", number, name.c_str(),
                seconds, detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

QLin ql(long n, long d = 1) { return QLin(Rational(n, d)); }

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// 1: the simple-map identity, 1000 exact samples for each height time-change.
void criterion_identity() {
    for (int id : {1, 2, 3}) {
        Timer t;
        ExampleBundle b = build_example(id);
        const auto& m = std::get<SimpleMapSpec>(b.map);
        SplitMix64 rng(1000 + static_cast<std::uint64_t>(id));
        std::string detail;
        long checked = 0;
        for (long i = 0; i < 1000; ++i) {
            SymbolicPoint x = sample_base_point(b, rng);
            if (auto err = check_simple_identity(m, x)) {
                detail = *err;
                break;
            }
            ++checked;
        }
        double secs = t.seconds();
        bool ok = checked == 1000 && secs < 10.0;
        if (detail.empty() && secs >= 10.0) detail = "over the 10 s budget";
        report(1, "transfer identity holds on the height time-change, example " +
                      std::to_string(id),
               ok, detail, secs);
    }
}

// 2: the collapse map's cocycle identity, with the floor index matching the
// climb count on every sample and all three orbit parts visited.
void criterion_cohom() {
    Timer t;
    ExampleBundle b = build_example(5);
    const auto& m = std::get<GeneralMapSpec>(b.map);
    SplitMix64 rng(2005);
    long parts[3] = {0, 0, 0};
    std::string detail;
    long checked = 0;
    for (long i = 0; i < 1000; ++i) {
        SymbolicPoint y = sample_base_point(b, rng);
        ++parts[static_cast<int>(doubled_part(y))];
        if (auto err = check_cohom(m, y)) {
            detail = *err;
            break;
        }
        SymbolicPoint py = apply_symbol_map(m.pi, y);
        QLin lifted = m.v.eval(m.pi, y) + m.g.eval(y);
        if (floor_index(m.h, py, lifted) != collapse_step_count(y)) {
            detail = "floor index differs from the climb count at rho=" + y.rho.str();
            break;
        }
        ++checked;
    }
    double secs = t.seconds();
    bool spanned = parts[0] > 0 && parts[1] > 0 && parts[2] > 0;
    if (detail.empty() && !spanned) detail = "samples missed one of the three orbit parts";
    if (detail.empty() && secs >= 30.0) detail = "over the 30 s budget";
    report(2, "collapse cocycle identity with matching floor index (" +
                  std::to_string(parts[0]) + "/" + std::to_string(parts[1]) + "/" +
                  std::to_string(parts[2]) + " part tally)",
           checked == 1000 && spanned && secs < 30.0, detail, secs);
}

// 3: the map and the flow commute, with a quota of ceiling crossings.
void criterion_commute() {
    for (int id = 1; id <= 5; ++id) {
        Timer t;
        ExampleBundle b = build_example(id);
        SplitMix64 rng(3000 + static_cast<std::uint64_t>(id));
        std::string detail;
        long crossings = 0, checked = 0;
        for (long i = 0; i < 500; ++i) {
            SuspensionPoint p = sample_source_point(b, rng);
            QLin u{rng.rational_in(-50, 50, 16)};
            if (floor_index(b.g(), p.base, p.s + u) != 0) ++crossings;
            if (auto err = check_commute(b.map, p, u)) {
                detail = *err;
                break;
            }
            ++checked;
        }
        double secs = t.seconds();
        if (detail.empty() && crossings < 50)
            detail = "only " + std::to_string(crossings) + " ceiling crossings";
        if (detail.empty() && secs >= 30.0) detail = "over the 30 s budget";
        report(3, "flow commutation, example " + std::to_string(id) + " (" +
                      std::to_string(crossings) + " crossings)",
               checked == 500 && crossings >= 50 && secs < 30.0, detail, secs);
    }
}

// 4: distinct points keep distinct images under the injective time-change.
void criterion_injective() {
    Timer t;
    ExampleBundle b = build_example(1);
    SplitMix64 rng(4001);
    std::string detail;
    long checked = 0;
    while (checked < 200 && detail.empty()) {
        SuspensionPoint p = sample_source_point(b, rng);
        SuspensionPoint q = sample_source_point(b, rng);
        if (p == q) continue;
        if (auto err = check_injective_pair(b.map, p, q, 64))
            detail = *err;
        else
            ++checked;
    }
    report(4, "injectivity on 200 distinct pairs, example 1", detail.empty(), detail,
           t.seconds());
}

// 5: witnesses against locality at every radius up to 20 for the time-change;
// none at any radius for the tile-splitting code.
void criterion_witness() {
    {
        Timer t;
        ExampleBundle b = build_example(1);
        SplitMix64 rng(5001);
        std::string detail;
        for (int r = 0; r <= 20 && detail.empty(); ++r) {
            auto w = locality_witness(b.map, r, 200, rng);
            if (!w)
                detail = "no witness at radius " + std::to_string(r);
            else if (!(w->image_gap > QLin::zero()))
                detail = "non-positive gap at radius " + std::to_string(r);
        }
        report(5, "separating witness found at radii 0..20, example 1", detail.empty(), detail,
               t.seconds());
    }
    {
        Timer t;
        ExampleBundle b = build_example(4);
        SplitMix64 rng(5004);
        std::string detail;
        for (int r = 0; r <= 20 && detail.empty(); ++r)
            if (auto w = locality_witness(b.map, r, 200, rng))
                detail = "unexpected witness at radius " + std::to_string(r) + ", gap " +
                         w->image_gap.str();
        report(5, "no witness at radii 0..20 for the splitting code, example 4",
               detail.empty(), detail, t.seconds());
    }
}

// 6: ceiling value sets are exactly the advertised ones.
void criterion_fixtures() {
    Timer t;
    ExampleParams p = ExampleParams::defaults();
    const QLin &a = p.alpha, &e1 = p.eta1, &e2 = p.eta2;
    QLin one = QLin::one();
    std::string detail;

    ExampleBundle b3 = build_example(3);
    if (b3.g().value_set() != std::vector<QLin>{a + e2 - one, a + e1})
        detail = "example 3 source set differs";

    ExampleBundle b5 = build_example(5);
    if (detail.empty() &&
        b5.g().value_set() !=
            std::vector<QLin>{a, a + e1 - one, a + e2 - one, e2, e2 + a})
        detail = "example 5 source set differs";
    if (detail.empty() && b5.h().value_set() != std::vector<QLin>{e1, e2})
        detail = "example 5 target set differs";
    report(6, "ceiling value sets match the frozen fixtures (examples 3 and 5)",
           detail.empty(), detail, t.seconds());
}

// 7: the integer-combination scan is empty where the lengths are independent
// and finds exactly the one shared family where they are not.
void criterion_scan() {
    Timer t;
    std::string detail;
    ExampleBundle b3 = build_example(3);
    CoincidenceScan s3 = length_coincidence_scan(b3.g().value_set(), b3.h().value_set(), 50);
    if (!s3.hits.empty())
        detail = "example 3 scan found " + std::to_string(s3.hits.size()) + " hits";

    ExampleBundle b5 = build_example(5);
    CoincidenceScan s5 = length_coincidence_scan(b5.g().value_set(), b5.h().value_set(), 50);
    if (detail.empty()) {
        QLin e2 = b5.params.eta2;
        std::vector<QLin> src = b5.g().value_set();
        size_t src_idx = 0, tgt_idx = 1;  // eta2's position in each sorted set
        while (src_idx < src.size() && src[src_idx] != e2) ++src_idx;
        if (s5.hits.size() != 50) {
            detail = "example 5 scan found " + std::to_string(s5.hits.size()) +
                     " hits, expected the 50 pure multiples";
        } else {
            for (long c = 1; c <= 50 && detail.empty(); ++c) {
                const CoincidenceHit& h = s5.hits[static_cast<size_t>(c - 1)];
                std::vector<long> want_src(src.size(), 0), want_tgt(2, 0);
                want_src[src_idx] = c;
                want_tgt[tgt_idx] = c;
                if (h.source_combo != want_src || h.target_combo != want_tgt ||
                    h.value != e2.scaled(Rational(c)))
                    detail = "hit " + std::to_string(c) + " is not the pure family member";
            }
        }
    }
    double secs = t.seconds();
    if (detail.empty() && secs >= 60.0) detail = "over the 60 s budget";
    report(7, "length-coincidence scan to bound 50: empty vs the single shared family",
           detail.empty() && secs < 60.0, detail, secs);
}

// 8: cocycle and flow algebra, plus canonicalization staying in the class.
void criterion_algebra() {
    Timer t;
    SplitMix64 rng(8000);
    std::string detail;
    for (int id : {1, 5}) {
        ExampleBundle b = build_example(id);
        const CeilingFunction& g = b.g();
        for (long i = 0; i < 250 && detail.empty(); ++i) {
            SymbolicPoint x = sample_base_point(b, rng);
            long n = static_cast<long>(rng.below(21)) - 10;
            long m = static_cast<long>(rng.below(21)) - 10;
            if (cocycle(g, x, n + m) != cocycle(g, x, n) + cocycle(g, step_n(x, n), m))
                detail = "cocycle additivity fails, example " + std::to_string(id);
        }
        for (long i = 0; i < 250 && detail.empty(); ++i) {
            SuspensionPoint p = sample_source_point(b, rng);
            QLin u{rng.rational_in(-100, 100, 16)}, w{rng.rational_in(-100, 100, 16)};
            if (flow(g, flow(g, p, u), w) != flow(g, p, u + w))
                detail = "flow additivity fails, example " + std::to_string(id);
        }
        for (long i = 0; i < 250 && detail.empty(); ++i) {
            SymbolicPoint x = sample_base_point(b, rng);
            QLin s{rng.rational_in(-100, 100, 32)};
            long n = floor_index(g, x, s);
            SuspensionPoint c = canonical(g, x, s);
            auto witness = equivalent(g, x, s, c.base, c.s, std::abs(n) + 1);
            if (!witness || *witness != n)
                detail = "canonical form leaves the class, example " + std::to_string(id);
        }
    }
    report(8, "cocycle/flow additivity and canonical equivalence (examples 1 and 5)",
           detail.empty(), detail, t.seconds());
}

// 9: splitting then merging patches is the identity and keeps length.
void criterion_roundtrip() {
    Timer t;
    ExampleBundle b = build_example(4);
    const auto& m = std::get<LocalSplitCode>(b.map);
    SplitMix64 rng(9004);
    std::string detail;
    for (int i = 0; i < 100 && detail.empty(); ++i) {
        SuspensionPoint p = sample_source_point(b, rng);
        QLin reach{rng.rational_in(1, 10, 8)};
        TilePatch before = patch(b.g(), p, reach);
        TilePatch halves = split_patch(before, m.split_label, QLin::one());
        if (halves.total_length() != before.total_length())
            detail = "split changed the total length";
        else if (merge_patch(halves, m.split_label, QLin::one()) != before)
            detail = "merge(split(patch)) differs from the original";
    }
    report(9, "split/merge round-trip on 100 patches, example 4", detail.empty(), detail,
           t.seconds());
}

// 10: the verification CLI is byte-deterministic for a fixed seed.
void criterion_determinism(const std::string& cli) {
    Timer t;
    if (cli.empty()) {
        report(10, "byte-identical verification reports", false,
               "no --cli path given; cannot drive the binary", t.seconds());
        return;
    }
    std::string detail;
    auto tmp = std::filesystem::temp_directory_path();
    for (int k = 1; k <= 5 && detail.empty(); ++k) {
        auto out_a = tmp / ("verify_a_" + std::to_string(k) + ".json");
        auto out_b = tmp / ("verify_b_" + std::to_string(k) + ".json");
        for (const auto& out : {out_a, out_b}) {
            std::string cmd = "\"" + cli + "\" verify --example " + std::to_string(k) +
                              " --seed 7 --samples 100 --out \"" + out.string() +
                              "\" 2>/dev/null";
            int rc = std::system(cmd.c_str());
            if (rc != 0) {
                detail = "verify run failed for example " + std::to_string(k);
                break;
            }
        }
        if (detail.empty()) {
            std::string a = read_file(out_a), b = read_file(out_b);
            if (a.empty() || a != b)
                detail = "reports differ for example " + std::to_string(k);
        }
        std::filesystem::remove(out_a);
        std::filesystem::remove(out_b);
    }
    report(10, "byte-identical verification reports, seeds fixed, all examples",
           detail.empty(), detail, t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    criterion_identity();
    criterion_cohom();
    criterion_commute();
    criterion_injective();
    criterion_witness();
    criterion_fixtures();
    criterion_scan();
    criterion_algebra();
    criterion_roundtrip();
    criterion_determinism(cli);

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion line(s) failed\n", g_failures);
    return g_failures;
}
