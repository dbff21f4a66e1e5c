// Python module: a thin JSON-string facade over the exact C++ core. Values
// cross the boundary as serialized documents so no precision is lost to
// floating point.

#include "suspfactor/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace suspfactor;

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2); }

Level parse_level(const std::string& level) {
    if (level == "ground") return Level::ground;
    if (level == "upper") return Level::upper;
    throw std::invalid_argument("level must be 'ground' or 'upper'");
}

struct BundleHandle {
    ExampleBundle bundle;

    explicit BundleHandle(int id) : bundle(build_example(id)) {}

    int id() const { return bundle.id; }
    std::string title() const { return bundle.title; }

    std::vector<std::string> source_lengths() const {
        std::vector<std::string> out;
        for (const QLin& v : bundle.g().value_set()) out.push_back(v.str());
        return out;
    }
    std::vector<std::string> target_lengths() const {
        std::vector<std::string> out;
        for (const QLin& v : bundle.h().value_set()) out.push_back(v.str());
        return out;
    }

    std::string describe_json() const { return dump(bundle_to_json(bundle)); }
    std::string fixtures_json() const {
        return dump(fixtures_to_json(expected_fixtures(bundle.id, bundle.params)));
    }

    std::string verify_json(long samples, std::uint64_t seed) const {
        VerifyOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        return dump(run_verify(bundle, opt).to_json());
    }
    bool verify_passed(long samples, std::uint64_t seed) const {
        VerifyOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        return run_verify(bundle, opt).all_passed();
    }

    std::string witness_json(int max_radius, int probes, std::uint64_t seed) const {
        return dump(run_witness_report(bundle, max_radius, probes, seed));
    }
    std::string lengths_json(long bound) const {
        return dump(run_lengths_report(bundle, bound));
    }

    std::string render_json(const std::string& rho, const std::string& level,
                            const std::string& s, const std::string& reach) const {
        return dump(run_render_json(bundle, request(rho, level, s, reach)));
    }
    std::string render_svg(const std::string& rho, const std::string& level,
                           const std::string& s, const std::string& reach) const {
        return run_render_svg(bundle, request(rho, level, s, reach));
    }

private:
    RenderRequest request(const std::string& rho, const std::string& level,
                          const std::string& s, const std::string& reach) const {
        RenderRequest r;
        r.rho = QLin(parse_rational(rho));
        r.level = parse_level(level);
        r.s = QLin(parse_rational(s));
        r.reach = QLin(parse_rational(reach));
        if (!(r.reach > QLin::zero())) throw std::invalid_argument("reach must be positive");
        return r;
    }
};

}  // namespace

PYBIND11_MODULE(_suspfactor, m) {
    m.doc() = "exact suspension flows over rotation codings and their factor maps";

    py::register_exception<BoundaryHit>(m, "BoundaryHitError", PyExc_ArithmeticError);

    py::class_<BundleHandle>(m, "Bundle")
        .def(py::init<int>(), py::arg("example"))
        .def_property_readonly("id", &BundleHandle::id)
        .def_property_readonly("title", &BundleHandle::title)
        .def("source_lengths", &BundleHandle::source_lengths)
        .def("target_lengths", &BundleHandle::target_lengths)
        .def("describe_json", &BundleHandle::describe_json)
        .def("fixtures_json", &BundleHandle::fixtures_json)
        .def("verify_json", &BundleHandle::verify_json, py::arg("samples") = 200,
             py::arg("seed") = 1)
        .def("verify_passed", &BundleHandle::verify_passed, py::arg("samples") = 200,
             py::arg("seed") = 1)
        .def("witness_json", &BundleHandle::witness_json, py::arg("max_radius") = 6,
             py::arg("probes") = 40, py::arg("seed") = 1)
        .def("lengths_json", &BundleHandle::lengths_json, py::arg("bound") = 50)
        .def("render_json", &BundleHandle::render_json, py::arg("rho") = "1/7",
             py::arg("level") = "ground", py::arg("s") = "0", py::arg("reach") = "12")
        .def("render_svg", &BundleHandle::render_svg, py::arg("rho") = "1/7",
             py::arg("level") = "ground", py::arg("s") = "0", py::arg("reach") = "12");

    m.def("build_example", [](int id) { return BundleHandle(id); }, py::arg("example"),
          "construct one of the five shipped factor-map examples");
    m.def("default_rho", [] { return rational_to_string(Rational(1, 7)); },
          "the generic probe coordinate used throughout");
    m.def("set_precision", [](const std::string& width) {
        Rational w = parse_rational(width);
        if (w <= 0) throw std::invalid_argument("precision must be positive");
        set_compare_start_width(w);
    }, py::arg("width"), "starting enclosure width for exact comparisons, e.g. '1/1000000'");
    m.def("compare_numbers", [](const std::string& a, const std::string& b) {
        QLin qa(parse_rational(a)), qb(parse_rational(b));
        switch (qa.compare(qb)) {
            case QLin::Order::Less: return -1;
            case QLin::Order::Equal: return 0;
            default: return 1;
        }
    }, py::arg("a"), py::arg("b"), "exact three-way comparison of two rationals");
}
