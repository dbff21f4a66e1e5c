#pragma once

#include "suspfactor/rng.hpp"
#include "suspfactor/suspension.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace suspfactor {

// Base-time transfer function of a factor map, i.e. the amount added to the
// height coordinate before recanonicalizing in the target.
struct TransferRule {
    enum class Kind {
        rho_of_point,           // t(x) = circle coordinate of x
        rho_of_pi_after_step,   // v(y) = circle coordinate of pi(step y)
        constant,
    };
    Kind kind = Kind::constant;
    QLin value;  // used by `constant`

    static TransferRule rho_of_point() { return {Kind::rho_of_point, QLin()}; }
    static TransferRule rho_of_pi_after_step() { return {Kind::rho_of_pi_after_step, QLin()}; }
    static TransferRule constant(QLin v) { return {Kind::constant, std::move(v)}; }

    QLin eval(const SymbolMap& pi, const SymbolicPoint& p) const;
};

// phi[x, s] = [pi x, s + t(x)] with t required to satisfy, cellwise,
//   t(step x) - t(x) = g(x) - h(pi x).
struct SimpleMapSpec {
    SymbolMap pi;
    TransferRule t;
    CeilingFunction g, h;  // source / target ceilings
};

// phi[y, s] = [pi y, s + v(y)] where pi may collapse a doubled source;
// well-definedness is the cocycle identity checked by check_cohom.
struct GeneralMapSpec {
    SymbolMap pi;
    TransferRule v;
    CeilingFunction g, h;
};

// Radius-0 code splitting each unit tile labeled `split_label` into the two
// storeys of a doubled target: heights below the ground ceiling stay on the
// ground storey, the rest move up. Source plain, target doubled.
struct LocalSplitCode {
    SystemRef target;
    Symbol split_label;
    CeilingFunction g, h;
};

using FactorMap = std::variant<SimpleMapSpec, GeneralMapSpec, LocalSplitCode>;

// The symbol map / transfer pair that defines a general factor map.
struct PiTransfer {
    SymbolMap pi;
    TransferRule transfer;
};
PiTransfer extract_pi_v(const GeneralMapSpec& m);

const CeilingFunction& source_ceiling(const FactorMap& m);
const CeilingFunction& target_ceiling(const FactorMap& m);
SystemRef source_system(const FactorMap& m);
SystemRef target_system(const FactorMap& m);

SuspensionPoint apply_simple(const SimpleMapSpec& m, const SuspensionPoint& p);
SuspensionPoint apply_general(const GeneralMapSpec& m, const SuspensionPoint& p);
SuspensionPoint apply_split(const LocalSplitCode& m, const SuspensionPoint& p);
SuspensionPoint apply_map(const FactorMap& m, const SuspensionPoint& p);  // dispatch

// ---- Exact pointwise checks (return a failure description, or nothing) ----

// t(step x) - t(x) == g(x) - h(pi x) at the base point x.
std::optional<std::string> check_simple_identity(const SimpleMapSpec& m, const SymbolicPoint& x);

// g(y) == v(step y) - v(y) + cocycle(h, pi y, k) with k the number of target
// steps the collapse advances (also re-verified: pi(step y) == step_k(pi y)).
// The h-term is evaluated as the full cocycle, not shortcut to h(pi y).
std::optional<std::string> check_cohom(const GeneralMapSpec& m, const SymbolicPoint& y);

// phi(flow_u p) == flow_u(phi p), exactly. pre: p canonical.
std::optional<std::string> check_commute(const FactorMap& m, const SuspensionPoint& p,
                                         const QLin& u);

// For distinct canonical points: are the images distinct (no equivalence
// within |n| <= bound)?
std::optional<std::string> check_injective_pair(const FactorMap& m, const SuspensionPoint& a,
                                                const SuspensionPoint& b, long bound = 64);

// Whether rho is generic for every coding the map evaluates: the source
// system's, and the image coding when the symbol map rescales the circle.
bool map_generic_rho(const FactorMap& m, const QLin& rho);

// ---- Locality witnesses ----------------------------------------------------

// Two source coordinates with identical radius-r symbol windows whose images
// sit at different heights: evidence the suspension map is not a radius-r
// local code. image_gap is the exact positive height difference.
struct Witness {
    QLin rho_a, rho_b;
    int radius = 0;
    QLin image_gap;
};

// Probes up to `probes` generic window words; within each word's cylinder
// tries deterministic coordinate pairs. Requires a plain source system.
std::optional<Witness> locality_witness(const FactorMap& m, int radius, int probes,
                                        SplitMix64& rng);

// ---- Tile-length coincidences ----------------------------------------------

// One exact equality between nonnegative integer combinations of the two
// sides' tile lengths (coefficient sums bounded by the scan bound).
struct CoincidenceHit {
    std::vector<long> source_combo, target_combo;
    QLin value;
};

struct CoincidenceScan {
    std::vector<QLin> source_lengths, target_lengths;
    long bound = 0;
    std::vector<CoincidenceHit> hits;  // the trivial 0 == 0 pair is excluded
};

CoincidenceScan length_coincidence_scan(std::vector<QLin> source_lengths,
                                        std::vector<QLin> target_lengths, long bound);

// ---- Patch splitting / merging ---------------------------------------------

struct MergeParity : std::runtime_error {
    explicit MergeParity(const std::string& what) : std::runtime_error(what) {}
};

// Replaces every tile with the given label and length `whole` by two abutting
// half-length tiles with the same label.
TilePatch split_patch(const TilePatch& p, Symbol label, const QLin& whole);

// Inverse of split_patch: pairs adjacent half tiles left to right. An odd
// half-tile at the patch edge is dropped (its partner lies outside the
// patch); an unpaired half tile in the interior throws MergeParity.
TilePatch merge_patch(const TilePatch& p, Symbol label, const QLin& whole);

}  // namespace suspfactor
