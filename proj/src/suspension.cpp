#include "suspfactor/suspension.hpp"

#include <algorithm>

namespace suspfactor {

CeilingFunction::CeilingFunction(SystemRef system, std::vector<QLin> ground,
                                 std::vector<std::optional<QLin>> upper)
    : system_(std::move(system)), ground_(std::move(ground)), upper_(std::move(upper)) {
    if (!system_) throw std::invalid_argument("null system");
    size_t cells = static_cast<size_t>(system_->partition.size());
    if (ground_.size() != cells)
        throw std::invalid_argument("one ground ceiling value per cell required");
    for (const auto& v : ground_)
        if (v <= QLin::zero()) throw std::invalid_argument("ceiling values must be positive");
    if (system_->kind == SubshiftKind::plain) {
        for (const auto& u : upper_)
            if (u) throw std::invalid_argument("plain systems have no upper storey");
        upper_.clear();
        upper_.resize(cells);
        return;
    }
    if (upper_.size() != cells)
        throw std::invalid_argument("one upper slot per cell required for doubled systems");
    const auto& cs = system_->partition.cells();
    for (size_t i = 0; i < cells; ++i) {
        bool split = cs[i].label == system_->doubled_label;
        if (split != upper_[i].has_value())
            throw std::invalid_argument("upper values must exist exactly on doubled-label cells");
        if (upper_[i] && *upper_[i] <= QLin::zero())
            throw std::invalid_argument("ceiling values must be positive");
    }
}

QLin CeilingFunction::eval(const SymbolicPoint& p) const {
    if (p.system.get() != system_.get())
        throw std::invalid_argument("point does not belong to the ceiling's system");
    size_t cell = static_cast<size_t>(system_->partition.cell_index(p.rho));
    if (p.level == Level::upper) return *upper_[cell];
    return ground_[cell];
}

std::vector<QLin> CeilingFunction::value_set() const {
    std::vector<QLin> out = ground_;
    for (const auto& u : upper_)
        if (u) out.push_back(*u);
    std::sort(out.begin(), out.end(), [](const QLin& a, const QLin& b) { return a < b; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QLin cocycle(const CeilingFunction& g, const SymbolicPoint& p, long n) {
    QLin total;
    SymbolicPoint cur = p;
    if (n >= 0) {
        for (long k = 0; k < n; ++k) {
            total += g.eval(cur);
            cur = step(cur, 1);
        }
    } else {
        for (long k = 0; k > n; --k) {
            cur = step(cur, -1);
            total -= g.eval(cur);
        }
    }
    return total;
}

long floor_index(const CeilingFunction& g, const SymbolicPoint& x, const QLin& s) {
    SymbolicPoint cur = x;
    QLin c;  // cocycle at the current index
    long n = 0;
    if (s >= QLin::zero()) {
        for (;;) {
            QLin next = c + g.eval(cur);
            if (s < next) return n;
            c = std::move(next);
            cur = step(cur, 1);
            ++n;
        }
    }
    while (s < c) {
        cur = step(cur, -1);
        c -= g.eval(cur);
        --n;
    }
    return n;
}

SuspensionPoint canonical(const CeilingFunction& g, const SymbolicPoint& x, const QLin& s) {
    long n = floor_index(g, x, s);
    return {step_n(x, n), s - cocycle(g, x, n)};
}

namespace {
void require_canonical(const CeilingFunction& g, const SuspensionPoint& p) {
    if (p.s < QLin::zero() || p.s >= g.eval(p.base))
        throw std::invalid_argument("suspension point is not canonical");
}
}  // namespace

SuspensionPoint flow(const CeilingFunction& g, const SuspensionPoint& p, const QLin& u) {
    require_canonical(g, p);
    return canonical(g, p.base, p.s + u);
}

std::optional<long> equivalent(const CeilingFunction& g, const SymbolicPoint& x, const QLin& s,
                               const SymbolicPoint& y, const QLin& t, long bound) {
    if (x.system.get() != y.system.get())
        throw std::invalid_argument("points of different systems are never equivalent");
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    SymbolicPoint fwd = x, bwd = x;
    QLin cf, cb;  // cocycle at +n / -n
    if (fwd == y && s == t) return 0;
    for (long n = 1; n <= bound; ++n) {
        cf += g.eval(fwd);
        fwd = step(fwd, 1);
        if (fwd == y && s - cf == t) return n;
        bwd = step(bwd, -1);
        cb -= g.eval(bwd);
        if (bwd == y && s - cb == t) return -n;
    }
    return std::nullopt;
}

QLin TilePatch::total_length() const {
    QLin sum;
    for (const auto& t : tiles) sum += t.length;
    return sum;
}

void validate_patch(const TilePatch& patch) {
    if (patch.tiles.empty()) throw std::invalid_argument("empty patch");
    bool covers_origin = false;
    for (size_t i = 0; i < patch.tiles.size(); ++i) {
        const Tile& t = patch.tiles[i];
        if (t.length <= QLin::zero()) throw std::invalid_argument("tile lengths must be positive");
        if (i + 1 < patch.tiles.size() &&
            !(t.left + t.length == patch.tiles[i + 1].left))
            throw std::invalid_argument("patch tiles must abut");
        if (t.left <= QLin::zero() && QLin::zero() < t.left + t.length) covers_origin = true;
    }
    if (!covers_origin) throw std::invalid_argument("patch must cover the origin");
}

TilePatch patch(const CeilingFunction& g, const SuspensionPoint& p, const QLin& reach) {
    if (reach <= QLin::zero()) throw std::invalid_argument("reach must be positive");
    require_canonical(g, p);

    Tile origin{central_symbol(p.base), -p.s, g.eval(p.base)};

    // Tiles are half-open, so the right sweep keeps a tile whose left edge is
    // exactly +reach while the left sweep drops one whose right edge is
    // exactly -reach.
    std::vector<Tile> fwd;
    SymbolicPoint fcur = step(p.base, 1);
    QLin left = origin.left + origin.length;
    while (left <= reach) {
        QLin len = g.eval(fcur);
        fwd.push_back({central_symbol(fcur), left, len});
        left += len;
        fcur = step(fcur, 1);
    }

    std::vector<Tile> bwd;
    SymbolicPoint bcur = p.base;
    QLin right = origin.left;
    while (right > -reach) {
        bcur = step(bcur, -1);
        QLin len = g.eval(bcur);
        QLin l = right - len;
        bwd.push_back({central_symbol(bcur), l, len});
        right = std::move(l);
    }

    TilePatch out;
    out.tiles.reserve(bwd.size() + 1 + fwd.size());
    out.tiles.insert(out.tiles.end(), bwd.rbegin(), bwd.rend());
    out.tiles.push_back(std::move(origin));
    out.tiles.insert(out.tiles.end(), fwd.begin(), fwd.end());
    return out;
}

}  // namespace suspfactor
