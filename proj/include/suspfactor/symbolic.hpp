#pragma once

#include "suspfactor/qlin.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace suspfactor {

using Symbol = int;

// Raised whenever a circle coordinate lands exactly on a partition boundary.
// Such orbits have ambiguous codings; callers either propagate the error
// (CLI exit code 3) or re-draw the sample. Never resolved silently.
struct BoundaryHit : std::runtime_error {
    QLin value;
    explicit BoundaryHit(const QLin& v)
        : std::runtime_error("circle coordinate on a partition boundary: " + v.str()),
          value(v) {}
};

// Half-open labeled interval [left, right).
struct PartitionCell {
    Symbol label;
    QLin left, right;
};

// Finite partition of the circle [0, 1) into labeled half-open intervals.
class Partition {
public:
    explicit Partition(std::vector<PartitionCell> cells);

    const std::vector<PartitionCell>& cells() const { return cells_; }
    int size() const { return static_cast<int>(cells_.size()); }

    // Index of the cell containing rho. pre: 0 <= rho < 1.
    // Throws BoundaryHit if rho equals a cell endpoint.
    int cell_index(const QLin& rho) const;
    Symbol label_at(const QLin& rho) const { return cells_[cell_index(rho)].label; }

    std::vector<QLin> boundaries() const;  // the cells' left endpoints
    std::vector<Symbol> labels() const;    // distinct labels, ascending

private:
    std::vector<PartitionCell> cells_;
};

enum class SubshiftKind { plain, doubled };

// A coded irrational rotation. `plain` is the ordinary coding under the
// partition; `doubled` is the induced two-storey system where visits to
// cells labeled `doubled_label` are held for an extra step on an upper
// level (the label is repeated in the symbol sequence).
struct SubshiftSystem {
    std::string name;
    QLin alpha;  // rotation amount, irrational, in (0, 1)
    Partition partition;
    SubshiftKind kind = SubshiftKind::plain;
    Symbol doubled_label = -1;  // meaningful only when kind == doubled
};

using SystemRef = std::shared_ptr<const SubshiftSystem>;

SystemRef make_system(std::string name, QLin alpha, Partition partition,
                      SubshiftKind kind = SubshiftKind::plain, Symbol doubled_label = -1);

enum class Level { ground, upper };

// Point of a subshift, held as its circle coordinate instead of its symbol
// sequence; symbols are computed on demand. `upper` marks the second storey
// of a doubled system and requires the central symbol to be the doubled label.
struct SymbolicPoint {
    SystemRef system;
    QLin rho;
    Level level = Level::ground;

    bool operator==(const SymbolicPoint& o) const {
        return system.get() == o.system.get() && rho == o.rho && level == o.level;
    }
    bool operator!=(const SymbolicPoint& o) const { return !(*this == o); }
};

// Validates rho in [0,1) and the level invariant (may throw BoundaryHit).
SymbolicPoint make_point(SystemRef system, QLin rho, Level level = Level::ground);

// frac(rho + n * alpha)
QLin rotate(const QLin& rho, const QLin& alpha, long n = 1);

Symbol central_symbol(const SymbolicPoint& p);

// One step of the system's shift: the rotation for plain systems, the
// doubled-system successor otherwise. dir is +1 or -1.
SymbolicPoint step(const SymbolicPoint& p, int dir = +1);
SymbolicPoint step_n(const SymbolicPoint& p, long n);

SymbolicPoint shift(const SymbolicPoint& p);   // plain systems only
SymbolicPoint step_S(const SymbolicPoint& p);  // doubled systems only

Symbol symbol_at(const SymbolicPoint& p, long n);
// Symbols at positions -radius..radius, in order. length 2*radius + 1.
std::vector<Symbol> window(const SymbolicPoint& p, int radius);

// The three-part decomposition of a doubled system:
//   lower_plain  — ground level, central symbol not the doubled label
//   lower_split  — ground level, central symbol the doubled label
//   upper_split  — upper level
enum class DoubledPart { lower_plain, lower_split, upper_split };
DoubledPart doubled_part(const SymbolicPoint& p);

// Number of base-rotation steps the collapsed point advances when p takes
// one step: 0 for lower_split, 1 otherwise.
int collapse_step_count(const SymbolicPoint& p);

// ---- Symbol-level factor maps ----------------------------------------

struct IdentityMap {
    SystemRef target;
};

// Radius-0 sliding block code between plain systems whose circle pictures
// are conjugate via multiplication by `circle_multiplier` (mod 1).
struct BlockCodeMap {
    SystemRef source, target;
    std::map<Symbol, Symbol> table;
    Rational circle_multiplier;
};

// Forgets the doubling: (rho, level) -> rho, recoded by the target partition.
struct CollapseMap {
    SystemRef source, target;  // source doubled, target plain
};

using SymbolMap = std::variant<IdentityMap, BlockCodeMap, CollapseMap>;

SystemRef map_source(const SymbolMap& m);
SystemRef map_target(const SymbolMap& m);
SymbolicPoint apply_symbol_map(const SymbolMap& m, const SymbolicPoint& p);

// ---- Exact subsets of the circle --------------------------------------

struct Arc {
    QLin left, right;  // [left, right), within [0, 1]
};

// Finite union of disjoint half-open arcs, kept sorted and merged.
class IntervalSet {
public:
    IntervalSet() = default;
    static IntervalSet full();
    static IntervalSet from_arcs(std::vector<Arc> arcs);

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    QLin measure() const;
    bool contains(const QLin& rho) const;
    IntervalSet intersect(const IntervalSet& other) const;

private:
    std::vector<Arc> arcs_;
};

// Exact set of circle coordinates whose coding shows `word` centered at the
// origin (word length odd: positions -r..r). Plain systems only.
IntervalSet cylinder(const SystemRef& system, const std::vector<Symbol>& word);

// ---- Genericity --------------------------------------------------------

struct GenericityConflict {
    long n;         // orbit step at which the boundary is hit
    QLin boundary;  // the boundary hit
};

// The unique n with frac(rho0 + n*alpha) == boundary, if any.
// pre: alpha has a nonzero surd coordinate (irrational).
std::optional<long> boundary_hit_step(const QLin& rho0, const QLin& alpha, const QLin& boundary);

// Scans every partition boundary; returns the conflict of smallest |n|.
std::optional<GenericityConflict> genericity_check(const SystemRef& system, const QLin& rho0);

}  // namespace suspfactor
