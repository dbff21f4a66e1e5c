#include "suspfactor/factormap.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace suspfactor {

QLin TransferRule::eval(const SymbolMap& pi, const SymbolicPoint& p) const {
    switch (kind) {
        case Kind::rho_of_point:
            return p.rho;
        case Kind::rho_of_pi_after_step:
            return apply_symbol_map(pi, step(p, 1)).rho;
        case Kind::constant:
            return value;
    }
    throw std::logic_error("unknown transfer rule");
}

const CeilingFunction& source_ceiling(const FactorMap& m) {
    return std::visit([](const auto& v) -> const CeilingFunction& { return v.g; }, m);
}

const CeilingFunction& target_ceiling(const FactorMap& m) {
    return std::visit([](const auto& v) -> const CeilingFunction& { return v.h; }, m);
}

SystemRef source_system(const FactorMap& m) { return source_ceiling(m).system(); }
SystemRef target_system(const FactorMap& m) { return target_ceiling(m).system(); }

namespace {

void require_canonical(const CeilingFunction& g, const SuspensionPoint& p) {
    if (p.base.system.get() != g.system().get())
        throw std::invalid_argument("point does not belong to the map's source system");
    if (p.s < QLin::zero() || p.s >= g.eval(p.base))
        throw std::invalid_argument("suspension point is not canonical");
}

std::string point_str(const SuspensionPoint& p) {
    return "(rho=" + p.base.rho.str() + (p.base.level == Level::upper ? ", upper" : "") +
           ", s=" + p.s.str() + ")";
}

}  // namespace

SuspensionPoint apply_simple(const SimpleMapSpec& m, const SuspensionPoint& p) {
    require_canonical(m.g, p);
    SymbolicPoint img = apply_symbol_map(m.pi, p.base);
    return canonical(m.h, img, p.s + m.t.eval(m.pi, p.base));
}

SuspensionPoint apply_general(const GeneralMapSpec& m, const SuspensionPoint& p) {
    require_canonical(m.g, p);
    SymbolicPoint img = apply_symbol_map(m.pi, p.base);
    return canonical(m.h, img, p.s + m.v.eval(m.pi, p.base));
}

SuspensionPoint apply_split(const LocalSplitCode& m, const SuspensionPoint& p) {
    require_canonical(m.g, p);
    QLin rho = p.base.rho;
    if (central_symbol(p.base) != m.split_label)
        return {{m.target, std::move(rho), Level::ground}, p.s};
    SymbolicPoint ground{m.target, rho, Level::ground};
    QLin lower = m.h.eval(ground);
    if (p.s < lower) return {std::move(ground), p.s};
    QLin rest = p.s - lower;
    SymbolicPoint up{m.target, std::move(rho), Level::upper};
    if (rest >= m.h.eval(up))
        throw std::logic_error("split ceilings do not add up to the source ceiling");
    return {std::move(up), std::move(rest)};
}

SuspensionPoint apply_map(const FactorMap& m, const SuspensionPoint& p) {
    return std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SimpleMapSpec>)
                return apply_simple(v, p);
            else if constexpr (std::is_same_v<T, GeneralMapSpec>)
                return apply_general(v, p);
            else
                return apply_split(v, p);
        },
        m);
}

PiTransfer extract_pi_v(const GeneralMapSpec& m) { return {m.pi, m.v}; }

std::optional<std::string> check_simple_identity(const SimpleMapSpec& m, const SymbolicPoint& x) {
    QLin lhs = m.t.eval(m.pi, step(x, 1)) - m.t.eval(m.pi, x);
    QLin rhs = m.g.eval(x) - m.h.eval(apply_symbol_map(m.pi, x));
    if (lhs == rhs) return std::nullopt;
    return "transfer increment " + lhs.str() + " != ceiling difference " + rhs.str() +
           " at rho=" + x.rho.str();
}

std::optional<std::string> check_cohom(const GeneralMapSpec& m, const SymbolicPoint& y) {
    SymbolicPoint py = apply_symbol_map(m.pi, y);
    SymbolicPoint sy = step(y, 1);
    int k = (y.system->kind == SubshiftKind::doubled) ? collapse_step_count(y) : 1;
    if (apply_symbol_map(m.pi, sy) != step_n(py, k))
        return "collapse advances by a different step count than expected at rho=" + y.rho.str();
    QLin lhs = m.g.eval(y);
    QLin rhs = m.v.eval(m.pi, sy) - m.v.eval(m.pi, y) + cocycle(m.h, py, k);
    if (lhs == rhs) return std::nullopt;
    return "ceiling " + lhs.str() + " != transfer increment + image cocycle " + rhs.str() +
           " at rho=" + y.rho.str() + (y.level == Level::upper ? " (upper)" : "");
}

std::optional<std::string> check_commute(const FactorMap& m, const SuspensionPoint& p,
                                         const QLin& u) {
    SuspensionPoint left = apply_map(m, flow(source_ceiling(m), p, u));
    SuspensionPoint right = flow(target_ceiling(m), apply_map(m, p), u);
    if (left == right) return std::nullopt;
    return "map/flow diverge at u=" + u.str() + " from " + point_str(p) + ": " + point_str(left) +
           " vs " + point_str(right);
}

std::optional<std::string> check_injective_pair(const FactorMap& m, const SuspensionPoint& a,
                                                const SuspensionPoint& b, long bound) {
    if (a == b) return "the two source points coincide";
    SuspensionPoint ia = apply_map(m, a);
    SuspensionPoint ib = apply_map(m, b);
    if (ia == ib) return "images coincide at " + point_str(ia);
    if (auto n = equivalent(target_ceiling(m), ia.base, ia.s, ib.base, ib.s, bound))
        return "images are equivalent via base step " + std::to_string(*n);
    return std::nullopt;
}

namespace {

const SymbolMap* symbol_part(const FactorMap& m) {
    if (const auto* s = std::get_if<SimpleMapSpec>(&m)) return &s->pi;
    if (const auto* g = std::get_if<GeneralMapSpec>(&m)) return &g->pi;
    return nullptr;  // split code: symbol-level action is the identity on coordinates
}

}  // namespace

// Collapse and split targets share the source's boundaries, so the source
// check covers them; only a circle-rescaling block code adds an obligation.
bool map_generic_rho(const FactorMap& m, const QLin& rho) {
    if (genericity_check(source_system(m), rho)) return false;
    if (const SymbolMap* pi = symbol_part(m))
        if (const auto* bc = std::get_if<BlockCodeMap>(pi))
            if (genericity_check(bc->target, rho.scaled(bc->circle_multiplier).frac()))
                return false;
    return true;
}

std::optional<Witness> locality_witness(const FactorMap& m, int radius, int probes,
                                        SplitMix64& rng) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    if (probes <= 0) throw std::invalid_argument("probe count must be positive");
    SystemRef src = source_system(m);
    if (src->kind != SubshiftKind::plain)
        throw std::invalid_argument("witness search needs a plain source system");

    // In-cylinder candidate pairs, as fractions of the containing arc. Picked
    // deterministically so a probe consumes exactly one rng draw.
    static const std::pair<Rational, Rational> kPairs[] = {
        {Rational(1, 3), Rational(2, 3)}, {Rational(2, 5), Rational(3, 5)},
        {Rational(3, 7), Rational(4, 7)}, {Rational(5, 11), Rational(7, 11)},
        {Rational(4, 9), Rational(7, 9)}, {Rational(1, 4), Rational(3, 4)},
    };

    for (int probe = 0; probe < probes; ++probe) {
        QLin rho_c;
        bool ok = false;
        for (int tries = 0; tries < 64 && !ok; ++tries) {
            rho_c = QLin(rng.unit_rational());
            ok = map_generic_rho(m, rho_c);
        }
        if (!ok) continue;
        std::vector<Symbol> word = window(make_point(src, rho_c), radius);
        IntervalSet cyl = cylinder(src, word);
        const Arc* arc = nullptr;
        for (const Arc& a : cyl.arcs())
            if (a.left <= rho_c && rho_c < a.right) {
                arc = &a;
                break;
            }
        if (!arc) continue;  // cannot happen: the center lies in its own cylinder
        QLin span = arc->right - arc->left;
        for (const auto& [f1, f2] : kPairs) {
            QLin a = arc->left + span.scaled(f1);
            QLin b = arc->left + span.scaled(f2);
            if (a == b || !map_generic_rho(m, a) || !map_generic_rho(m, b)) continue;
            SuspensionPoint pa{make_point(src, a), QLin()};
            SuspensionPoint pb{make_point(src, b), QLin()};
            QLin gap = apply_map(m, pa).s - apply_map(m, pb).s;
            if (gap < QLin::zero()) gap = -gap;
            if (gap > QLin::zero()) return Witness{std::move(a), std::move(b), radius, std::move(gap)};
            break;  // a clean pair mapped to equal heights; move to the next word
        }
    }
    return std::nullopt;
}

namespace {

struct Vec4 {
    std::array<long long, 4> v{};
    bool operator==(const Vec4& o) const { return v == o.v; }
};

struct Vec4Hash {
    size_t operator()(const Vec4& k) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (long long x : k.v) {
            h ^= static_cast<std::uint64_t>(x);
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h);
    }
};

Vec4 vec_add(const Vec4& x, const Vec4& y) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r.v[i] = x.v[i] + y.v[i];
    return r;
}

// Number of nonnegative integer k-vectors with coordinate sum <= bound.
double combo_count(size_t k, long bound) {
    double c = 1;
    for (size_t i = 1; i <= k; ++i) c = c * (bound + i) / i;
    return c;
}

}  // namespace

CoincidenceScan length_coincidence_scan(std::vector<QLin> source_lengths,
                                        std::vector<QLin> target_lengths, long bound) {
    if (bound < 0) throw std::invalid_argument("scan bound must be nonnegative");
    auto prep = [](std::vector<QLin>& ls) {
        for (const QLin& q : ls)
            if (q <= QLin::zero()) throw std::invalid_argument("tile lengths must be positive");
        std::sort(ls.begin(), ls.end(), [](const QLin& a, const QLin& b) { return a < b; });
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    };
    prep(source_lengths);
    prep(target_lengths);

    // Clear all denominators at once so combination sums are int64 4-vectors;
    // the exactness of the scan rides on this staying integral.
    Int lcm_den = 1;
    for (const auto* side : {&source_lengths, &target_lengths})
        for (const QLin& q : *side)
            for (int i = 0; i < QLin::kBasis; ++i)
                lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q.coeff(i)));
    auto scale = [&](const QLin& q) {
        Vec4 r;
        for (int i = 0; i < QLin::kBasis; ++i) {
            Rational c = q.coeff(i) * lcm_den;
            Int n = numerator(c);
            if (abs(n) * (bound + 1) > Int(1) << 58)
                throw std::invalid_argument("length coefficients too large for this scan bound");
            r.v[i] = n.convert_to<long long>();
        }
        return r;
    };
    std::vector<Vec4> sv, tv;
    for (const QLin& q : source_lengths) sv.push_back(scale(q));
    for (const QLin& q : target_lengths) tv.push_back(scale(q));

    // Index the side with fewer combinations; stream the other through it.
    bool table_is_source = combo_count(sv.size(), bound) <= combo_count(tv.size(), bound);
    const std::vector<Vec4>& table_side = table_is_source ? sv : tv;
    const std::vector<Vec4>& stream_side = table_is_source ? tv : sv;

    std::unordered_map<Vec4, std::vector<std::vector<long>>, Vec4Hash> table;
    std::vector<long> combo(table_side.size(), 0);
    std::function<void(size_t, long, Vec4)> build = [&](size_t idx, long left, Vec4 sum) {
        if (idx == table_side.size()) {
            table[sum].push_back(combo);
            return;
        }
        for (long c = 0; c <= left; ++c) {
            combo[idx] = c;
            build(idx + 1, left - c, sum);
            sum = vec_add(sum, table_side[idx]);
        }
        combo[idx] = 0;
    };
    build(0, bound, Vec4{});

    CoincidenceScan out{source_lengths, target_lengths, bound, {}};
    auto is_zero = [](const std::vector<long>& c) {
        return std::all_of(c.begin(), c.end(), [](long x) { return x == 0; });
    };
    std::vector<long> scombo(stream_side.size(), 0);
    std::function<void(size_t, long, Vec4)> probe = [&](size_t idx, long left, Vec4 sum) {
        if (idx == stream_side.size()) {
            auto it = table.find(sum);
            if (it == table.end()) return;
            for (const auto& tcombo : it->second) {
                if (is_zero(tcombo) && is_zero(scombo)) continue;
                CoincidenceHit hit;
                hit.source_combo = table_is_source ? tcombo : scombo;
                hit.target_combo = table_is_source ? scombo : tcombo;
                hit.value = QLin(Rational(Int(sum.v[0]), lcm_den), Rational(Int(sum.v[1]), lcm_den),
                                 Rational(Int(sum.v[2]), lcm_den), Rational(Int(sum.v[3]), lcm_den));
                out.hits.push_back(std::move(hit));
            }
            return;
        }
        for (long c = 0; c <= left; ++c) {
            scombo[idx] = c;
            probe(idx + 1, left - c, sum);
            sum = vec_add(sum, stream_side[idx]);
        }
        scombo[idx] = 0;
    };
    probe(0, bound, Vec4{});

    std::sort(out.hits.begin(), out.hits.end(), [](const CoincidenceHit& x, const CoincidenceHit& y) {
        if (x.value != y.value) return x.value < y.value;
        if (x.source_combo != y.source_combo) return x.source_combo < y.source_combo;
        return x.target_combo < y.target_combo;
    });
    return out;
}

TilePatch split_patch(const TilePatch& p, Symbol label, const QLin& whole) {
    validate_patch(p);
    if (whole <= QLin::zero()) throw std::invalid_argument("tile length must be positive");
    QLin half = whole.scaled(Rational(1, 2));
    TilePatch out;
    out.tiles.reserve(p.tiles.size());
    for (const Tile& t : p.tiles) {
        if (t.label == label && t.length == whole) {
            out.tiles.push_back({label, t.left, half});
            out.tiles.push_back({label, t.left + half, half});
        } else {
            out.tiles.push_back(t);
        }
    }
    return out;
}

TilePatch merge_patch(const TilePatch& p, Symbol label, const QLin& whole) {
    validate_patch(p);
    if (whole <= QLin::zero()) throw std::invalid_argument("tile length must be positive");
    QLin half = whole.scaled(Rational(1, 2));
    TilePatch out;
    size_t n = p.tiles.size();
    size_t i = 0;
    while (i < n) {
        const Tile& t = p.tiles[i];
        if (!(t.label == label && t.length == half)) {
            out.tiles.push_back(t);
            ++i;
            continue;
        }
        size_t j = i;
        while (j < n && p.tiles[j].label == label && p.tiles[j].length == half) ++j;
        size_t start = i, end = j;
        if ((end - start) % 2 == 1) {
            if (start == 0)
                ++start;  // partner lies before the patch
            else if (end == n)
                --end;    // partner lies after the patch
            else
                throw MergeParity("unpaired half tile inside the patch at index " +
                                  std::to_string(i));
        }
        for (size_t k = start; k + 1 < end; k += 2)
            out.tiles.push_back({label, p.tiles[k].left, whole});
        i = j;
    }
    validate_patch(out);
    return out;
}

}  // namespace suspfactor
