#pragma once

#include "suspfactor/serialize.hpp"

namespace suspfactor {

struct CheckResult {
    std::string name;
    bool passed = true;
    long samples = 0;
    long failures = 0;
    std::vector<std::string> details;  // first few failure descriptions
    nlohmann::json extra;              // check-specific payload
};

struct VerifyOptions {
    long samples = 200;
    std::uint64_t seed = 1;
    int max_radius = 6;
    int witness_probes = 40;
    long scan_bound = 20;
    long equivalence_bound = 64;
};

struct VerifyReport {
    int example = 0;
    std::string title;
    ExampleParams params;
    VerifyOptions options;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;  // byte-stable for equal inputs
};

// Runs the full battery for one bundle: fixture comparison, the map's
// defining identity, flow/map commutation, cocycle and flow algebra,
// canonicalization, witness expectations, and the example's specific
// demonstrations. Deterministic in (bundle, options).
VerifyReport run_verify(const ExampleBundle& b, const VerifyOptions& opt);

nlohmann::json run_witness_report(const ExampleBundle& b, int max_radius, int probes,
                                  std::uint64_t seed);
nlohmann::json run_lengths_report(const ExampleBundle& b, long bound);

struct RenderRequest {
    QLin rho;                     // base coordinate
    Level level = Level::ground;  // storey, for doubled sources
    QLin s;                       // height (canonicalized if out of range)
    QLin reach = QLin(Rational(12));
};

// Source patch plus its image under the example's map.
std::vector<std::pair<std::string, TilePatch>> render_patches(const ExampleBundle& b,
                                                              const RenderRequest& r);
nlohmann::json run_render_json(const ExampleBundle& b, const RenderRequest& r);
std::string run_render_svg(const ExampleBundle& b, const RenderRequest& r);

}  // namespace suspfactor
