#include "suspfactor/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace suspfactor {

using nlohmann::json;

json qlin_to_json(const QLin& v) {
    json a = json::array();
    for (int i = 0; i < QLin::kBasis; ++i) a.push_back(rational_to_string(v.coeff(i)));
    return a;
}

QLin qlin_from_json(const json& j) {
    if (!j.is_array() || j.size() != QLin::kBasis)
        throw std::invalid_argument("exact value must be an array of four coefficient strings");
    return QLin(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()),
                parse_rational(j[2].get<std::string>()), parse_rational(j[3].get<std::string>()));
}

json system_to_json(const SubshiftSystem& s) {
    json cells = json::array();
    for (const auto& c : s.partition.cells())
        cells.push_back({{"label", c.label},
                         {"left", qlin_to_json(c.left)},
                         {"right", qlin_to_json(c.right)}});
    json out{{"name", s.name},
             {"rotation", qlin_to_json(s.alpha)},
             {"kind", s.kind == SubshiftKind::plain ? "plain" : "doubled"},
             {"cells", cells}};
    if (s.kind == SubshiftKind::doubled) out["doubled_label"] = s.doubled_label;
    return out;
}

json ceiling_to_json(const CeilingFunction& c) {
    json ground = json::array(), upper = json::array();
    for (const auto& v : c.ground_values()) ground.push_back(qlin_to_json(v));
    for (const auto& v : c.upper_values()) upper.push_back(v ? qlin_to_json(*v) : json(nullptr));
    json values = json::array();
    for (const auto& v : c.value_set()) values.push_back(qlin_to_json(v));
    return {{"ground", ground}, {"upper", upper}, {"values", values}};
}

json patch_to_json(const TilePatch& p) {
    json tiles = json::array();
    for (const auto& t : p.tiles)
        tiles.push_back({{"label", t.label},
                         {"left", qlin_to_json(t.left)},
                         {"length", qlin_to_json(t.length)}});
    return {{"tiles", tiles}, {"total_length", qlin_to_json(p.total_length())}};
}

TilePatch patch_from_json(const json& j) {
    TilePatch p;
    for (const auto& t : j.at("tiles"))
        p.tiles.push_back(Tile{t.at("label").get<Symbol>(), qlin_from_json(t.at("left")),
                               qlin_from_json(t.at("length"))});
    validate_patch(p);
    return p;
}

json witness_to_json(const Witness& w) {
    return {{"radius", w.radius},
            {"rho_a", qlin_to_json(w.rho_a)},
            {"rho_b", qlin_to_json(w.rho_b)},
            {"image_gap", qlin_to_json(w.image_gap)}};
}

json scan_to_json(const CoincidenceScan& s) {
    json src = json::array(), tgt = json::array(), hits = json::array();
    for (const auto& v : s.source_lengths) src.push_back(qlin_to_json(v));
    for (const auto& v : s.target_lengths) tgt.push_back(qlin_to_json(v));
    for (const auto& h : s.hits)
        hits.push_back({{"source_combo", h.source_combo},
                        {"target_combo", h.target_combo},
                        {"value", qlin_to_json(h.value)}});
    return {{"bound", s.bound},
            {"source_lengths", src},
            {"target_lengths", tgt},
            {"hit_count", s.hits.size()},
            {"hits", hits}};
}

json params_to_json(const ExampleParams& p) {
    return {{"alpha", qlin_to_json(p.alpha)},
            {"eta1", qlin_to_json(p.eta1)},
            {"eta2", qlin_to_json(p.eta2)}};
}

namespace {
const char* witness_expectation_name(WitnessExpectation w) {
    switch (w) {
        case WitnessExpectation::found_at_every_radius: return "found_at_every_radius";
        case WitnessExpectation::none: return "none";
        case WitnessExpectation::not_applicable: return "not_applicable";
    }
    return "?";
}
}  // namespace

json fixtures_to_json(const ExampleFixtures& f) {
    json src = json::array(), tgt = json::array();
    for (const auto& v : f.source_ceiling_values) src.push_back(qlin_to_json(v));
    for (const auto& v : f.target_ceiling_values) tgt.push_back(qlin_to_json(v));
    json out{{"example", f.id},
             {"source_ceiling_values", src},
             {"target_ceiling_values", tgt},
             {"witness", witness_expectation_name(f.witness)},
             {"injective", f.injective},
             {"two_to_one_demo", f.two_to_one_demo}};
    out["scan_empty"] = f.scan_empty ? json(*f.scan_empty) : json(nullptr);
    json inc = json::array();
    for (const auto& v : f.transfer_increment_values) inc.push_back(qlin_to_json(v));
    out["transfer_increment_values"] = inc;
    return out;
}

namespace {

json symbol_map_to_json(const SymbolMap& m) {
    if (std::holds_alternative<IdentityMap>(m)) return {{"kind", "identity"}};
    if (const auto* bc = std::get_if<BlockCodeMap>(&m)) {
        json table = json::object();
        for (const auto& [k, v] : bc->table) table[std::to_string(k)] = v;
        return {{"kind", "block_code"},
                {"table", table},
                {"circle_multiplier", rational_to_string(bc->circle_multiplier)}};
    }
    return {{"kind", "collapse"}};
}

json transfer_to_json(const TransferRule& t) {
    switch (t.kind) {
        case TransferRule::Kind::rho_of_point:
            return {{"kind", "rho_of_point"}};
        case TransferRule::Kind::rho_of_pi_after_step:
            return {{"kind", "rho_of_pi_after_step"}};
        case TransferRule::Kind::constant:
            return {{"kind", "constant"}, {"value", qlin_to_json(t.value)}};
    }
    return {};
}

}  // namespace

json bundle_to_json(const ExampleBundle& b) {
    json out{{"example", b.id},
             {"title", b.title},
             {"params", params_to_json(b.params)},
             {"source_system", system_to_json(*b.source())},
             {"target_system", system_to_json(*b.target())},
             {"source_ceiling", ceiling_to_json(b.g())},
             {"target_ceiling", ceiling_to_json(b.h())}};
    if (const auto* s = std::get_if<SimpleMapSpec>(&b.map)) {
        out["map_kind"] = "simple";
        out["pi"] = symbol_map_to_json(s->pi);
        out["transfer"] = transfer_to_json(s->t);
    } else if (const auto* g = std::get_if<GeneralMapSpec>(&b.map)) {
        out["map_kind"] = "general";
        out["pi"] = symbol_map_to_json(g->pi);
        out["transfer"] = transfer_to_json(g->v);
    } else {
        const auto& sp = std::get<LocalSplitCode>(b.map);
        out["map_kind"] = "local_split";
        out["split_label"] = sp.split_label;
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* label_fill(Symbol label) {
    static const char* palette[] = {"#4e79a7", "#f28e2b", "#59a14f",
                                    "#b07aa1", "#76b7b2", "#e15759"};
    return palette[((label % 6) + 6) % 6];
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string patches_to_svg(const std::vector<std::pair<std::string, TilePatch>>& rows) {
    if (rows.empty()) throw std::invalid_argument("nothing to draw");
    const double kScale = 40.0;  // pixels per length unit
    double min_left = 0, max_right = 0;
    for (const auto& [name, p] : rows) {
        if (p.tiles.empty()) continue;
        min_left = std::min(min_left, p.tiles.front().left.approx());
        const Tile& last = p.tiles.back();
        max_right = std::max(max_right, last.left.approx() + last.length.approx());
    }
    const double margin = 24, row_h = 48, row_gap = 36, top = 30;
    double width = (max_right - min_left) * kScale + 2 * margin;
    double height = top + rows.size() * (row_h + row_gap);
    auto X = [&](double coord) { return margin + (coord - min_left) * kScale; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(width) << " "
        << fmt(height) << "\" font-family=\"sans-serif\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" fill=\"white\"/>\n";
    for (size_t r = 0; r < rows.size(); ++r) {
        const auto& [name, p] = rows[r];
        double y = top + r * (row_h + row_gap);
        svg << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(y - 8)
            << "\" font-size=\"13\" fill=\"#333\">" << xml_escape(name) << "</text>\n";
        for (const Tile& t : p.tiles) {
            double x0 = X(t.left.approx());
            double w = t.length.approx() * kScale;
            svg << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
                << "\" height=\"" << fmt(row_h) << "\" fill=\"" << label_fill(t.label)
                << "\" stroke=\"#222\" stroke-width=\"1\"><title>label " << t.label << ": left "
                << xml_escape(t.left.str()) << ", length " << xml_escape(t.length.str())
                << "</title></rect>\n";
            if (w > 16)
                svg << "<text x=\"" << fmt(x0 + w / 2) << "\" y=\"" << fmt(y + row_h / 2 + 5)
                    << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"white\">" << t.label
                    << "</text>\n";
        }
    }
    // origin marker through every row
    svg << "<line x1=\"" << fmt(X(0)) << "\" y1=\"" << fmt(top - 20) << "\" x2=\"" << fmt(X(0))
        << "\" y2=\"" << fmt(height - 10)
        << "\" stroke=\"#000\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
    svg << "<text x=\"" << fmt(X(0) + 4) << "\" y=\"" << fmt(top - 12)
        << "\" font-size=\"11\" fill=\"#000\">0</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::string patch_to_text(const TilePatch& p) {
    std::ostringstream os;
    for (const Tile& t : p.tiles)
        os << "label " << t.label << "  left " << t.left.str() << "  length " << t.length.str()
           << "\n";
    return os.str();
}

}  // namespace suspfactor
