#pragma once

#include "suspfactor/symbolic.hpp"

namespace suspfactor {

// Roof of a suspension flow: one positive value per partition cell, plus one
// per upper storey of the cells carrying the doubled label when the base
// system is doubled.
class CeilingFunction {
public:
    CeilingFunction(SystemRef system, std::vector<QLin> ground,
                    std::vector<std::optional<QLin>> upper = {});

    const SystemRef& system() const { return system_; }
    const std::vector<QLin>& ground_values() const { return ground_; }
    const std::vector<std::optional<QLin>>& upper_values() const { return upper_; }

    QLin eval(const SymbolicPoint& p) const;  // may throw BoundaryHit
    std::vector<QLin> value_set() const;      // distinct values, ascending

private:
    SystemRef system_;
    std::vector<QLin> ground_;
    std::vector<std::optional<QLin>> upper_;
};

// Signed ergodic sum of the ceiling along the base orbit:
//   n >= 0: g(p) + g(step p) + ... + g(step^{n-1} p)
//   n <  0: -(g(step^-1 p) + ... + g(step^n p))
// so that cocycle(g,p,n+m) = cocycle(g,p,n) + cocycle(g, step_n(p,n), m).
QLin cocycle(const CeilingFunction& g, const SymbolicPoint& p, long n);

// Suspension-space point in (base, height) coordinates.
// Canonical form has 0 <= s < g(base).
struct SuspensionPoint {
    SymbolicPoint base;
    QLin s;

    bool operator==(const SuspensionPoint& o) const { return base == o.base && s == o.s; }
    bool operator!=(const SuspensionPoint& o) const { return !(*this == o); }
};

// The unique n with cocycle(g,x,n) <= s < cocycle(g,x,n+1), found by walking
// the orbit (heights are a few units, so |n| stays ~|s|/min(g)).
long floor_index(const CeilingFunction& g, const SymbolicPoint& x, const QLin& s);

// Canonical representative of the class of (x, s): base advanced by
// floor_index steps, height reduced by the matching cocycle value.
SuspensionPoint canonical(const CeilingFunction& g, const SymbolicPoint& x, const QLin& s);

// Time-u flow. pre: p canonical (checked); result canonical.
SuspensionPoint flow(const CeilingFunction& g, const SuspensionPoint& p, const QLin& u);

// Whether (x,s) and (y,t) name the same suspension point, i.e. y is the n-th
// base step of x and t = s - cocycle(g,x,n) for some |n| <= bound. Returns
// the witnessing n.
std::optional<long> equivalent(const CeilingFunction& g, const SymbolicPoint& x, const QLin& s,
                               const SymbolicPoint& y, const QLin& t, long bound = 64);

// ---- Orbit tilings -------------------------------------------------------

// Half-open tile [left, left + length) of a tiling of the line.
struct Tile {
    Symbol label;
    QLin left, length;

    bool operator==(const Tile& o) const {
        return label == o.label && left == o.left && length == o.length;
    }
};

// Consecutive tiles of one orbit tiling; tiles abut and exactly one
// contains the origin.
struct TilePatch {
    std::vector<Tile> tiles;

    bool operator==(const TilePatch& o) const { return tiles == o.tiles; }
    QLin total_length() const;
};

void validate_patch(const TilePatch& patch);  // abutment, positivity, origin coverage

// The tiles of p's orbit tiling meeting [-reach, reach]: tile k spans the
// k-th ceiling interval, with the origin placed at height s inside tile 0
// (so tile 0 is [-s, -s + g(base))). pre: p canonical, reach > 0.
TilePatch patch(const CeilingFunction& g, const SuspensionPoint& p, const QLin& reach);

}  // namespace suspfactor
