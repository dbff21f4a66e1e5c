#pragma once

#include "suspfactor/factormap.hpp"

namespace suspfactor {

// Shared parameters of the example family. alpha is the rotation amount;
// eta1/eta2 are the long incommensurable tile lengths. The short coding
// interval used by examples 4 and 5 is beta = (1 - alpha)/2, derived.
struct ExampleParams {
    QLin alpha;  // default (sqrt5 - 1)/2
    QLin eta1;   // default 5 + sqrt2
    QLin eta2;   // default 5 + sqrt3

    static ExampleParams defaults();
    QLin beta() const;   // (1 - alpha)/2
    QLin gamma() const;  // 1 - alpha, the rotation's wrap point
};

enum class WitnessExpectation { found_at_every_radius, none, not_applicable };

// Frozen expectations for an example, as exact parametric values. With the
// default parameters these pin the constructions; the formulas stay valid
// for any parameters the builders accept.
struct ExampleFixtures {
    int id = 0;
    std::vector<QLin> source_ceiling_values;  // ascending
    std::vector<QLin> target_ceiling_values;  // ascending
    WitnessExpectation witness = WitnessExpectation::not_applicable;
    std::optional<bool> scan_empty;  // expected emptiness of the standard-bound scan
    bool injective = false;
    bool two_to_one_demo = false;    // admits the half-rotation equal-image pair
    std::vector<QLin> transfer_increment_values;  // ascending; empty if n/a
};

// A fully assembled factor map between suspension flows, with its parameters.
struct ExampleBundle {
    int id = 0;
    std::string title;
    FactorMap map;
    ExampleParams params;

    const CeilingFunction& g() const { return source_ceiling(map); }
    const CeilingFunction& h() const { return target_ceiling(map); }
    SystemRef source() const { return source_system(map); }
    SystemRef target() const { return target_system(map); }
};

// Builders validate their parameter constraints (cell orderings, positivity)
// and derive the source ceiling from the defining identity, probing each
// cell for constancy — so a bad override fails construction, not a check.
ExampleBundle build_example1(const ExampleParams& params = ExampleParams::defaults());
ExampleBundle build_example2(const ExampleParams& params = ExampleParams::defaults());
ExampleBundle build_example3(const ExampleParams& params = ExampleParams::defaults());
ExampleBundle build_example4(const ExampleParams& params = ExampleParams::defaults());
ExampleBundle build_example5(const ExampleParams& params = ExampleParams::defaults());
ExampleBundle build_example(int id, const ExampleParams& params = ExampleParams::defaults());

ExampleFixtures expected_fixtures(int id, const ExampleParams& params = ExampleParams::defaults());

// Default demonstration coordinate (generic for every example's codings).
QLin default_rho();

// Seeded samplers. Coordinates are drawn until generic for every coding the
// bundle's map evaluates; doubled sources get both storeys.
QLin sample_generic_rho(const ExampleBundle& b, SplitMix64& rng);
SymbolicPoint sample_base_point(const ExampleBundle& b, SplitMix64& rng);
SuspensionPoint sample_source_point(const ExampleBundle& b, SplitMix64& rng);

}  // namespace suspfactor
