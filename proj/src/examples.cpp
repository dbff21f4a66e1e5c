#include "suspfactor/examples.hpp"

#include <algorithm>
#include <functional>

namespace suspfactor {

ExampleParams ExampleParams::defaults() {
    return {QLin(Rational(-1, 2), Rational(1, 2), 0, 0),  // (sqrt5 - 1)/2
            QLin(5, 0, 1, 0),                             // 5 + sqrt2
            QLin(5, 0, 0, 1)};                            // 5 + sqrt3
}

QLin ExampleParams::beta() const { return (QLin::one() - alpha).scaled(Rational(1, 2)); }
QLin ExampleParams::gamma() const { return QLin::one() - alpha; }

QLin default_rho() { return QLin(Rational(1, 7)); }

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void validate_common(const ExampleParams& p) {
    require(!p.alpha.is_rational(), "alpha must be irrational");
    require(QLin::zero() < p.alpha && p.alpha < QLin::one(), "alpha must lie in (0,1)");
    require(p.eta1 > QLin::one(), "eta1 must exceed 1");
    require(p.eta2 > QLin::one(), "eta2 must exceed 1");
    require(p.eta1 != p.eta2, "eta lengths must differ");
}

Partition cells_from(std::vector<std::pair<QLin, Symbol>> starts) {
    std::vector<PartitionCell> cs;
    cs.reserve(starts.size());
    for (size_t i = 0; i < starts.size(); ++i) {
        QLin right = (i + 1 < starts.size()) ? starts[i + 1].first : QLin::one();
        cs.push_back({starts[i].second, std::move(starts[i].first), std::move(right)});
    }
    return Partition(std::move(cs));
}

// Value of fn on the interior of a cell, probed at several offsets. The
// probes must agree exactly — a non-constant fn means the cell decomposition
// is wrong for the requested parameters. Probes whose orbit computations
// land on a boundary are skipped (the offsets are unrelated rationals, so at
// most a coincidence or two).
QLin derive_on_cell(const SystemRef& sys, int cell, Level lvl,
                    const std::function<QLin(const SymbolicPoint&)>& fn) {
    static const Rational kOffsets[] = {Rational(1, 3), Rational(1, 2), Rational(2, 5),
                                        Rational(5, 7), Rational(3, 11)};
    const PartitionCell& c = sys->partition.cells()[static_cast<size_t>(cell)];
    QLin span = c.right - c.left;
    std::optional<QLin> value;
    int hits = 0;
    for (const Rational& f : kOffsets) {
        try {
            SymbolicPoint probe = make_point(sys, c.left + span.scaled(f), lvl);
            QLin v = fn(probe);
            if (value && *value != v)
                throw std::invalid_argument("derived ceiling is not constant on cell " +
                                            std::to_string(cell));
            value = std::move(v);
            ++hits;
        } catch (const BoundaryHit&) {
            continue;
        }
        if (hits >= 3) break;
    }
    require(hits >= 2, "cell " + std::to_string(cell) + " could not be probed");
    return *value;
}

CeilingFunction derive_ceiling(const SystemRef& sys,
                               const std::function<QLin(const SymbolicPoint&)>& fn) {
    int n = sys->partition.size();
    std::vector<QLin> ground;
    std::vector<std::optional<QLin>> upper(static_cast<size_t>(n));
    ground.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        ground.push_back(derive_on_cell(sys, i, Level::ground, fn));
        if (sys->kind == SubshiftKind::doubled &&
            sys->partition.cells()[static_cast<size_t>(i)].label == sys->doubled_label)
            upper[static_cast<size_t>(i)] = derive_on_cell(sys, i, Level::upper, fn);
    }
    return CeilingFunction(sys, std::move(ground), std::move(upper));
}

// Source ceiling forced by the simple-map identity g = h(pi x) + t(step x) - t(x).
CeilingFunction derive_simple_g(const SystemRef& src, const SymbolMap& pi, const TransferRule& t,
                                const CeilingFunction& h) {
    return derive_ceiling(src, [&](const SymbolicPoint& x) {
        return t.eval(pi, step(x, 1)) - t.eval(pi, x) + h.eval(apply_symbol_map(pi, x));
    });
}

}  // namespace

ExampleBundle build_example1(const ExampleParams& p) {
    validate_common(p);
    QLin gp = p.alpha.scaled(2) - QLin::one();  // 2*alpha - 1
    QLin half(Rational(1, 2));
    require(QLin::zero() < gp, "alpha must exceed 1/2");
    require(gp < p.gamma(), "alpha must stay below 2/3");
    // Cells refine the half-coding at 2*alpha-1 (where the target ceiling
    // switches) and at 1-alpha (where the rotation wraps).
    SystemRef X = make_system(
        "sturmian-half", p.alpha,
        cells_from({{QLin::zero(), 1}, {gp, 1}, {p.gamma(), 1}, {half, 0}}));
    CeilingFunction h(X, {p.eta1, p.eta2, p.eta2, p.eta2});
    SymbolMap pi = IdentityMap{X};
    TransferRule t = TransferRule::rho_of_point();
    CeilingFunction g = derive_simple_g(X, pi, t, h);
    return {1, "height time-change over a Sturmian suspension",
            SimpleMapSpec{std::move(pi), t, std::move(g), std::move(h)}, p};
}

ExampleBundle build_example2(const ExampleParams& p) {
    validate_common(p);
    QLin gp = p.alpha.scaled(2) - QLin::one();
    QLin quarter(Rational(1, 4)), half(Rational(1, 2)), three_quarters(Rational(3, 4));
    require(QLin::zero() < gp && gp < quarter, "alpha must lie in (1/2, 5/8)");

    // Target: the double-speed rotation under the corresponding ceiling.
    SystemRef Y = make_system(
        "double-rotation", gp,
        cells_from({{QLin::zero(), 0}, {gp.scaled(2), 0}, {half, 1}}));
    CeilingFunction h(Y, {p.eta1, p.eta2, p.eta2});

    // Source: the quarter coding of the base rotation, refined where the
    // image ceiling switches and where the rotation wraps.
    SystemRef X = make_system("quarter-coded-rotation", p.alpha,
                              cells_from({{QLin::zero(), 0},
                                          {gp, 0},
                                          {quarter, 1},
                                          {p.gamma(), 1},
                                          {half, 2},
                                          {half + gp, 2},
                                          {three_quarters, 3}}));
    SymbolMap pi = BlockCodeMap{X, Y, {{0, 0}, {1, 1}, {2, 0}, {3, 1}}, Rational(2)};
    require((p.alpha.scaled(2)).frac() == Y->alpha,
            "doubling the circle must land on the target rotation");

    // The code table must match the circle picture cell by cell.
    for (const auto& cell : X->partition.cells()) {
        QLin span = cell.right - cell.left;
        for (const Rational& f : {Rational(1, 3), Rational(2, 5)}) {
            QLin rho = cell.left + span.scaled(f);
            try {
                Symbol image = Y->partition.label_at(rho.scaled(2).frac());
                require(std::get<BlockCodeMap>(pi).table.at(cell.label) == image,
                        "block code table disagrees with the doubled coordinate");
            } catch (const BoundaryHit&) {
                continue;
            }
        }
    }

    TransferRule t = TransferRule::rho_of_point();
    CeilingFunction g = derive_simple_g(X, pi, t, h);
    return {2, "two-to-one quarter coding onto the double-speed rotation",
            SimpleMapSpec{std::move(pi), t, std::move(g), std::move(h)}, p};
}

ExampleBundle build_example3(const ExampleParams& p) {
    validate_common(p);
    QLin half(Rational(1, 2));
    require(p.gamma() < half, "alpha must exceed 1/2");
    SystemRef X = make_system(
        "sturmian-half-wrap", p.alpha,
        cells_from({{QLin::zero(), 1}, {p.gamma(), 1}, {half, 0}}));
    CeilingFunction h(X, {p.eta1, p.eta2, p.eta2});
    SymbolMap pi = IdentityMap{X};
    TransferRule t = TransferRule::rho_of_point();
    // The target ceiling switches exactly at the wrap point, so the derived
    // source ceiling takes only two values — and those two share no integer
    // combinations with {eta1, eta2}.
    CeilingFunction g = derive_simple_g(X, pi, t, h);
    return {3, "a time-change whose tile lengths never realign",
            SimpleMapSpec{std::move(pi), t, std::move(g), std::move(h)}, p};
}

ExampleBundle build_example4(const ExampleParams& p) {
    validate_common(p);
    QLin beta = p.beta();
    require(beta <= p.gamma(), "the coding interval must not cross the wrap point");
    SystemRef X = make_system("short-coded-rotation", p.alpha,
                              cells_from({{QLin::zero(), 1}, {beta, 0}}));
    SystemRef Y = make_system("short-coded-doubled", p.alpha,
                              cells_from({{QLin::zero(), 1}, {beta, 0}}),
                              SubshiftKind::doubled, 1);
    QLin half(Rational(1, 2));
    CeilingFunction g(X, {QLin::one(), QLin::one()});
    CeilingFunction h(Y, {half, QLin::one()}, {half, std::nullopt});
    // The split is measure-preserving tile by tile: whole = lower + upper.
    require(g.ground_values()[0] == h.ground_values()[0] + *h.upper_values()[0],
            "split storeys must add up to the unit tile");
    return {4, "unit tiles split onto the two storeys of a doubled coding",
            LocalSplitCode{Y, 1, std::move(g), std::move(h)}, p};
}

ExampleBundle build_example5(const ExampleParams& p) {
    validate_common(p);
    QLin beta = p.beta(), gam = p.gamma();
    QLin gb = gam + beta, g2 = gam.scaled(2);
    require(g2 < QLin::one(), "alpha must exceed 1/2");
    SystemRef X = make_system(
        "short-coded-rotation-fine", p.alpha,
        cells_from({{QLin::zero(), 1}, {beta, 0}, {gam, 0}}));
    CeilingFunction h(X, {p.eta1, p.eta1, p.eta2});
    // The doubled source needs the finer decomposition: its derived ceiling
    // must be constant per cell, which brings in the second-step breakpoints.
    SystemRef Y = make_system(
        "short-coded-doubled-fine", p.alpha,
        cells_from({{QLin::zero(), 1}, {beta, 0}, {gam, 0}, {gb, 0}, {g2, 0}}),
        SubshiftKind::doubled, 1);
    for (const QLin& b : X->partition.boundaries()) {
        bool found = false;
        for (const QLin& sb : Y->partition.boundaries()) found = found || sb == b;
        require(found, "collapse needs the target boundaries among the source's");
    }
    SymbolMap pi = CollapseMap{Y, X};
    TransferRule v = TransferRule::rho_of_pi_after_step();
    CeilingFunction g = derive_ceiling(Y, [&](const SymbolicPoint& y) {
        int k = collapse_step_count(y);
        SymbolicPoint py = apply_symbol_map(pi, y);
        return v.eval(pi, step(y, 1)) - v.eval(pi, y) + cocycle(h, py, k);
    });
    return {5, "collapse of the doubled coding, with its transfer function",
            GeneralMapSpec{std::move(pi), v, std::move(g), std::move(h)}, p};
}

ExampleBundle build_example(int id, const ExampleParams& p) {
    switch (id) {
        case 1: return build_example1(p);
        case 2: return build_example2(p);
        case 3: return build_example3(p);
        case 4: return build_example4(p);
        case 5: return build_example5(p);
        default: throw std::invalid_argument("example id must be 1..5");
    }
}

ExampleFixtures expected_fixtures(int id, const ExampleParams& p) {
    auto sorted = [](std::vector<QLin> v) {
        std::sort(v.begin(), v.end(), [](const QLin& a, const QLin& b) { return a < b; });
        return v;
    };
    const QLin& a = p.alpha;
    const QLin& e1 = p.eta1;
    const QLin& e2 = p.eta2;
    QLin one = QLin::one(), half(Rational(1, 2));
    ExampleFixtures f;
    f.id = id;
    switch (id) {
        case 1:
            f.source_ceiling_values = sorted({a + e1, a + e2, a + e2 - one});
            f.target_ceiling_values = sorted({e1, e2});
            f.witness = WitnessExpectation::found_at_every_radius;
            f.injective = true;
            break;
        case 2:
            f.source_ceiling_values = sorted({a + e1, a + e2, a + e1 - one, a + e2 - one});
            f.target_ceiling_values = sorted({e1, e2});
            f.witness = WitnessExpectation::found_at_every_radius;
            f.two_to_one_demo = true;
            break;
        case 3:
            f.source_ceiling_values = sorted({a + e1, a + e2 - one});
            f.target_ceiling_values = sorted({e1, e2});
            f.witness = WitnessExpectation::found_at_every_radius;
            f.scan_empty = true;
            f.injective = true;
            break;
        case 4:
            f.source_ceiling_values = {one};
            f.target_ceiling_values = sorted({half, one});
            f.witness = WitnessExpectation::none;
            f.injective = true;
            break;
        case 5:
            f.source_ceiling_values = sorted({a, a + e1 - one, e2, e2 + a, a + e2 - one});
            f.target_ceiling_values = sorted({e1, e2});
            f.witness = WitnessExpectation::not_applicable;
            f.scan_empty = false;
            f.transfer_increment_values = {a - one, QLin::zero(), a};
            break;
        default:
            throw std::invalid_argument("example id must be 1..5");
    }
    return f;
}

QLin sample_generic_rho(const ExampleBundle& b, SplitMix64& rng) {
    for (int tries = 0; tries < 256; ++tries) {
        QLin rho{rng.unit_rational()};
        if (map_generic_rho(b.map, rho)) return rho;
    }
    throw std::runtime_error("failed to draw a generic coordinate");
}

SymbolicPoint sample_base_point(const ExampleBundle& b, SplitMix64& rng) {
    QLin rho = sample_generic_rho(b, rng);
    SystemRef src = b.source();
    if (src->kind == SubshiftKind::doubled &&
        src->partition.label_at(rho) == src->doubled_label && rng.coin())
        return make_point(src, std::move(rho), Level::upper);
    return make_point(src, std::move(rho), Level::ground);
}

SuspensionPoint sample_source_point(const ExampleBundle& b, SplitMix64& rng) {
    SymbolicPoint base = sample_base_point(b, rng);
    QLin height = b.g().eval(base).scaled(Rational(rng.below(4096), 4096));
    return {std::move(base), std::move(height)};
}

}  // namespace suspfactor
