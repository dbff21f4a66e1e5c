#include "suspfactor/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using namespace suspfactor;
using nlohmann::json;

namespace {

// SUSPFACTOR_PRECISION overrides the starting enclosure width used by exact
// comparisons (a positive rational, default 1/1000000).
void apply_precision_env() {
    const char* raw = std::getenv("SUSPFACTOR_PRECISION");
    if (!raw || !*raw) return;
    Rational w;
    try {
        w = parse_rational(raw);
    } catch (const std::exception&) {
        throw std::invalid_argument(
            "SUSPFACTOR_PRECISION must be a positive rational like 1/1000000");
    }
    if (w <= 0)
        throw std::invalid_argument(
            "SUSPFACTOR_PRECISION must be a positive rational like 1/1000000");
    set_compare_start_width(w);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact suspension flows over rotation codings, and the factor maps between them"};
    app.require_subcommand(1);

    int example = 0;
    std::string out_path;

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "run the deterministic invariant suite");
    verify->add_option("--example", example, "example id (1-5)")->required();
    verify->add_option("--samples", vopt.samples, "sample count per check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopt.seed, "RNG seed");
    verify->add_option("--max-radius", vopt.max_radius, "largest witness radius swept")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--witness-probes", vopt.witness_probes, "probe pairs per radius")
        ->check(CLI::PositiveNumber);
    verify->add_option("--scan-bound", vopt.scan_bound, "coefficient-sum bound for the length scan")
        ->check(CLI::PositiveNumber);
    verify->add_option("--equivalence-bound", vopt.equivalence_bound,
                       "orbit search bound for equivalence tests")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "write the JSON report here instead of stdout");

    int w_radius = 5, w_probes = 40;
    std::uint64_t w_seed = 1;
    auto* witness =
        app.add_subcommand("witness", "search for a pair disproving locality at one radius");
    witness->add_option("--example", example, "example id (1-5)")->required();
    witness->add_option("--radius", w_radius, "window radius")->check(CLI::NonNegativeNumber);
    witness->add_option("--probes", w_probes, "number of probe pairs")
        ->check(CLI::PositiveNumber);
    witness->add_option("--seed", w_seed, "RNG seed");
    witness->add_option("--out", out_path, "write the JSON result here instead of stdout");

    long l_bound = 50;
    auto* lengths = app.add_subcommand("lengths", "scan for integer tile-length coincidences");
    lengths->add_option("--example", example, "example id (1-5)")->required();
    lengths->add_option("--bound", l_bound, "coefficient-sum bound")->check(CLI::PositiveNumber);
    lengths->add_option("--out", out_path, "write the JSON result here instead of stdout");

    std::string r_rho = "1/7", r_s = "0", r_reach = "12", r_level = "ground", r_format = "text";
    auto* render = app.add_subcommand("render", "draw a source patch beside its image patch");
    render->add_option("--example", example, "example id (1-5)")->required();
    render->add_option("--rho", r_rho, "base coordinate, a rational p/q in [0,1)");
    render->add_option("--level", r_level, "storey of a doubled source")
        ->check(CLI::IsMember({"ground", "upper"}));
    render->add_option("--s", r_s, "height, a rational (canonicalized)");
    render->add_option("--L", r_reach, "patch reach, a positive rational");
    render->add_option("--format", r_format, "output format")
        ->check(CLI::IsMember({"svg", "text", "json"}));
    render->add_option("--out", out_path, "write here instead of stdout");

    auto* fixtures =
        app.add_subcommand("fixtures", "print the frozen expected values for one example");
    fixtures->add_option("--example", example, "example id (1-5)")->required();
    fixtures->add_option("--out", out_path, "write the JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_precision_env();
        ExampleBundle b = build_example(example);

        if (*verify) {
            auto t0 = std::chrono::steady_clock::now();
            VerifyReport rep = run_verify(b, vopt);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            emit(dump(rep.to_json()), out_path);
            std::cerr << "verify: example " << example
                      << (rep.all_passed() ? " passed" : " FAILED") << " in " << ms << " ms\n";
            return rep.all_passed() ? 0 : 1;
        }
        if (*witness) {
            SplitMix64 rng(w_seed);
            auto w = locality_witness(b.map, w_radius, w_probes, rng);
            json out = {{"format", "suspfactor-witness"},
                        {"format_version", 1},
                        {"example", example},
                        {"radius", w_radius},
                        {"probes", w_probes},
                        {"seed", w_seed},
                        {"found", static_cast<bool>(w)},
                        {"witness", nullptr}};
            if (w) {
                json wj = witness_to_json(*w);
                wj["word"] = window(make_point(b.source(), w->rho_a), w_radius);
                out["witness"] = wj;
            }
            emit(dump(out), out_path);
            return 0;
        }
        if (*lengths) {
            emit(dump(run_lengths_report(b, l_bound)), out_path);
            return 0;
        }
        if (*render) {
            RenderRequest rq;
            rq.rho = QLin(parse_rational(r_rho));
            rq.level = r_level == "upper" ? Level::upper : Level::ground;
            rq.s = QLin(parse_rational(r_s));
            rq.reach = QLin(parse_rational(r_reach));
            if (!(rq.reach > QLin::zero())) throw std::invalid_argument("--L must be positive");
            if (r_format == "json") {
                emit(dump(run_render_json(b, rq)), out_path);
            } else if (r_format == "svg") {
                emit(run_render_svg(b, rq), out_path);
            } else {
                std::string text;
                for (const auto& [name, p] : render_patches(b, rq))
                    text += name + "\n" + patch_to_text(p) + "\n";
                emit(text, out_path);
            }
            return 0;
        }

        json out = fixtures_to_json(expected_fixtures(example, b.params));
        out["format"] = "suspfactor-fixtures";
        out["format_version"] = 1;
        emit(dump(out), out_path);
        return 0;
    } catch (const BoundaryHit& e) {
        std::cerr << "error: non-generic input: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
