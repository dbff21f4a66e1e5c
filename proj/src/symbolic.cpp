#include "suspfactor/symbolic.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace suspfactor {

Partition::Partition(std::vector<PartitionCell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw std::invalid_argument("partition has no cells");
    if (!(cells_.front().left == QLin::zero()))
        throw std::invalid_argument("partition must start at 0");
    if (!(cells_.back().right == QLin::one()))
        throw std::invalid_argument("partition must end at 1");
    for (size_t i = 0; i < cells_.size(); ++i) {
        if (!(cells_[i].left < cells_[i].right))
            throw std::invalid_argument("partition cell " + std::to_string(i) + " is empty");
        if (i + 1 < cells_.size() && !(cells_[i].right == cells_[i + 1].left))
            throw std::invalid_argument("partition cells must abut");
    }
}

int Partition::cell_index(const QLin& rho) const {
    if (rho < QLin::zero() || rho >= QLin::one())
        throw std::invalid_argument("coordinate outside [0,1): " + rho.str());
    int idx = -1;
    for (int i = 0; i < size(); ++i) {
        switch (rho.compare(cells_[static_cast<size_t>(i)].left)) {
            case QLin::Order::Equal:
                throw BoundaryHit(rho);
            case QLin::Order::Greater:
                idx = i;
                break;
            case QLin::Order::Less:
                return idx;  // cells are sorted; rho sits in the previous one
        }
    }
    return idx;
}

std::vector<QLin> Partition::boundaries() const {
    std::vector<QLin> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_) out.push_back(c.left);
    return out;
}

std::vector<Symbol> Partition::labels() const {
    std::set<Symbol> s;
    for (const auto& c : cells_) s.insert(c.label);
    return {s.begin(), s.end()};
}

SystemRef make_system(std::string name, QLin alpha, Partition partition, SubshiftKind kind,
                      Symbol doubled_label) {
    if (alpha.is_rational())
        throw std::invalid_argument("rotation amount must be irrational");
    if (alpha <= QLin::zero() || alpha >= QLin::one())
        throw std::invalid_argument("rotation amount must lie in (0,1)");
    if (kind == SubshiftKind::doubled) {
        auto ls = partition.labels();
        if (std::find(ls.begin(), ls.end(), doubled_label) == ls.end())
            throw std::invalid_argument("doubled label absent from the partition");
    } else {
        doubled_label = -1;
    }
    return std::make_shared<const SubshiftSystem>(SubshiftSystem{
        std::move(name), std::move(alpha), std::move(partition), kind, doubled_label});
}

SymbolicPoint make_point(SystemRef system, QLin rho, Level level) {
    if (!system) throw std::invalid_argument("null system");
    if (rho < QLin::zero() || rho >= QLin::one())
        throw std::invalid_argument("rho outside [0,1): " + rho.str());
    SymbolicPoint p{std::move(system), std::move(rho), level};
    if (level == Level::upper) {
        if (p.system->kind != SubshiftKind::doubled)
            throw std::invalid_argument("upper level requires a doubled system");
        if (p.system->partition.label_at(p.rho) != p.system->doubled_label)
            throw std::invalid_argument("upper level requires the doubled label at the origin");
    }
    return p;
}

QLin rotate(const QLin& rho, const QLin& alpha, long n) {
    return (rho + alpha.scaled(Rational(n))).frac();
}

Symbol central_symbol(const SymbolicPoint& p) {
    if (p.level == Level::upper) return p.system->doubled_label;  // construction invariant
    return p.system->partition.label_at(p.rho);
}

SymbolicPoint step(const SymbolicPoint& p, int dir) {
    if (dir != 1 && dir != -1) throw std::invalid_argument("step direction must be +1 or -1");
    const SubshiftSystem& sys = *p.system;
    if (sys.kind == SubshiftKind::plain)
        return {p.system, rotate(p.rho, sys.alpha, dir), Level::ground};
    if (dir == 1) {
        // Ground visits to the doubled label climb to the upper storey and
        // only then move on; everything else is the plain rotation.
        if (p.level == Level::ground && central_symbol(p) == sys.doubled_label)
            return {p.system, p.rho, Level::upper};
        return {p.system, rotate(p.rho, sys.alpha, 1), Level::ground};
    }
    if (p.level == Level::upper) return {p.system, p.rho, Level::ground};
    QLin prev = rotate(p.rho, sys.alpha, -1);
    Level lv = (sys.partition.label_at(prev) == sys.doubled_label) ? Level::upper : Level::ground;
    return {p.system, std::move(prev), lv};
}

SymbolicPoint step_n(const SymbolicPoint& p, long n) {
    SymbolicPoint cur = p;
    int dir = n >= 0 ? 1 : -1;
    for (long k = 0; k != n; k += dir) cur = step(cur, dir);
    return cur;
}

SymbolicPoint shift(const SymbolicPoint& p) {
    if (p.system->kind != SubshiftKind::plain)
        throw std::logic_error("shift is the plain-system step; doubled systems use step_S");
    return step(p, 1);
}

SymbolicPoint step_S(const SymbolicPoint& p) {
    if (p.system->kind != SubshiftKind::doubled)
        throw std::logic_error("step_S is the doubled-system step; plain systems use shift");
    return step(p, 1);
}

Symbol symbol_at(const SymbolicPoint& p, long n) { return central_symbol(step_n(p, n)); }

std::vector<Symbol> window(const SymbolicPoint& p, int radius) {
    if (radius < 0) throw std::invalid_argument("window radius must be nonnegative");
    SymbolicPoint cur = step_n(p, -static_cast<long>(radius));
    std::vector<Symbol> out;
    out.reserve(static_cast<size_t>(2 * radius + 1));
    for (int k = 0; k <= 2 * radius; ++k) {
        out.push_back(central_symbol(cur));
        if (k < 2 * radius) cur = step(cur, 1);
    }
    return out;
}

DoubledPart doubled_part(const SymbolicPoint& p) {
    if (p.system->kind != SubshiftKind::doubled)
        throw std::logic_error("doubled_part requires a doubled system");
    if (p.level == Level::upper) return DoubledPart::upper_split;
    return central_symbol(p) == p.system->doubled_label ? DoubledPart::lower_split
                                                        : DoubledPart::lower_plain;
}

int collapse_step_count(const SymbolicPoint& p) {
    return doubled_part(p) == DoubledPart::lower_split ? 0 : 1;
}

SystemRef map_source(const SymbolMap& m) {
    return std::visit(
        [](const auto& v) -> SystemRef {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IdentityMap>)
                return v.target;
            else
                return v.source;
        },
        m);
}

SystemRef map_target(const SymbolMap& m) {
    return std::visit([](const auto& v) -> SystemRef { return v.target; }, m);
}

SymbolicPoint apply_symbol_map(const SymbolMap& m, const SymbolicPoint& p) {
    if (p.system.get() != map_source(m).get())
        throw std::invalid_argument("point does not belong to the map's source system");
    if (std::holds_alternative<IdentityMap>(m)) return p;
    if (const auto* bc = std::get_if<BlockCodeMap>(&m)) {
        QLin image = p.rho.scaled(bc->circle_multiplier).frac();
        return {bc->target, std::move(image), Level::ground};
    }
    const auto& cl = std::get<CollapseMap>(m);
    return {cl.target, p.rho, Level::ground};
}

IntervalSet IntervalSet::full() {
    IntervalSet s;
    s.arcs_ = {{QLin::zero(), QLin::one()}};
    return s;
}

IntervalSet IntervalSet::from_arcs(std::vector<Arc> arcs) {
    std::vector<Arc> v;
    v.reserve(arcs.size());
    for (auto& a : arcs)
        if (a.left < a.right) v.push_back(std::move(a));
    std::sort(v.begin(), v.end(), [](const Arc& x, const Arc& y) { return x.left < y.left; });
    IntervalSet out;
    for (auto& a : v) {
        if (!out.arcs_.empty() && a.left <= out.arcs_.back().right) {
            if (out.arcs_.back().right < a.right) out.arcs_.back().right = std::move(a.right);
            continue;
        }
        out.arcs_.push_back(std::move(a));
    }
    return out;
}

QLin IntervalSet::measure() const {
    QLin total;
    for (const auto& a : arcs_) total += a.right - a.left;
    return total;
}

bool IntervalSet::contains(const QLin& rho) const {
    for (const auto& a : arcs_) {
        if (rho < a.left) return false;  // sorted
        if (rho < a.right) return true;
    }
    return false;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    IntervalSet out;
    size_t i = 0, j = 0;
    while (i < arcs_.size() && j < o.arcs_.size()) {
        const Arc& a = arcs_[i];
        const Arc& b = o.arcs_[j];
        const QLin& lo = (a.left >= b.left) ? a.left : b.left;
        const QLin& hi = (a.right <= b.right) ? a.right : b.right;
        if (lo < hi) out.arcs_.push_back({lo, hi});
        if (a.right <= b.right)
            ++i;
        else
            ++j;
    }
    return out;
}

IntervalSet cylinder(const SystemRef& system, const std::vector<Symbol>& word) {
    if (!system || system->kind != SubshiftKind::plain)
        throw std::invalid_argument("cylinder sets are defined on plain systems");
    if (word.empty() || word.size() % 2 == 0)
        throw std::invalid_argument("cylinder word must have odd length (centered at 0)");
    long r = static_cast<long>(word.size() - 1) / 2;
    IntervalSet cur = IntervalSet::full();
    for (size_t k = 0; k < word.size() && !cur.empty(); ++k) {
        long pos = static_cast<long>(k) - r;
        // Preimage under n steps of the rotation of the cells carrying word[k].
        std::vector<Arc> arcs;
        for (const auto& cell : system->partition.cells()) {
            if (cell.label != word[k]) continue;
            QLin start = rotate(cell.left, system->alpha, -pos);
            QLin end = start + (cell.right - cell.left);
            if (end <= QLin::one()) {
                arcs.push_back({std::move(start), std::move(end)});
            } else {
                arcs.push_back({std::move(start), QLin::one()});
                arcs.push_back({QLin::zero(), end - QLin::one()});
            }
        }
        cur = cur.intersect(IntervalSet::from_arcs(std::move(arcs)));
    }
    return cur;
}

std::optional<long> boundary_hit_step(const QLin& rho0, const QLin& alpha, const QLin& boundary) {
    // frac(rho0 + n*alpha) == b  <=>  n*alpha - (b - rho0) is an integer.
    // Surd coordinates pin n; the rational coordinate must then close to an integer.
    QLin delta = boundary - rho0;
    int pivot = 0;
    for (int j = 1; j < QLin::kBasis; ++j)
        if (alpha.coeff(j) != 0) {
            pivot = j;
            break;
        }
    if (pivot == 0) throw std::invalid_argument("rotation amount must be irrational");
    Rational n = delta.coeff(pivot) / alpha.coeff(pivot);
    if (denominator(n) != 1) return std::nullopt;
    for (int j = 1; j < QLin::kBasis; ++j)
        if (alpha.coeff(j) * n != delta.coeff(j)) return std::nullopt;
    Rational m = alpha.coeff(0) * n - delta.coeff(0);
    if (denominator(m) != 1) return std::nullopt;
    Int n_int = numerator(n);
    if (n_int > std::numeric_limits<long>::max() || n_int < std::numeric_limits<long>::min())
        return std::nullopt;  // out of any orbit range we ever walk
    return n_int.convert_to<long>();
}

std::optional<GenericityConflict> genericity_check(const SystemRef& system, const QLin& rho0) {
    if (!system) throw std::invalid_argument("null system");
    std::optional<GenericityConflict> best;
    for (const QLin& b : system->partition.boundaries()) {
        auto n = boundary_hit_step(rho0, system->alpha, b);
        if (n && (!best || std::abs(*n) < std::abs(best->n))) best = GenericityConflict{*n, b};
    }
    return best;
}

}  // namespace suspfactor
