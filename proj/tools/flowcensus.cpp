// flowcensus: catalogs of spherical graphs and codimension-1 gradient flows.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "flowcensus/catalog.hpp"

namespace fc = flowcensus;

namespace {

struct CommonFlags {
    bool no_reflections = false;
    int jobs = 1;
    std::string out;

    fc::CensusOptions options() const { return {!no_reflections, jobs}; }
};

void add_common(CLI::App* cmd, CommonFlags& f, const std::string& default_out) {
    f.out = default_out;
    cmd->add_flag("--no-reflections", f.no_reflections,
                  "Distinguish mirror images (default: mirror images are identified)");
    cmd->add_option("--jobs", f.jobs, "Worker threads for generation")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--out", f.out, "Output file, '-' for stdout")->capture_default_str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw fc::Error(fc::Errc::unsupported_format, "cannot write '" + path + "'");
    os << text;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string summary_text(const fc::SingularPointSummary& s) {
    std::ostringstream os;
    os << "src=" << s.sources << " snk=" << s.sinks << " sad=" << s.saddles << " sn-src=" << s.saddle_node_sources
       << " sn-snk=" << s.saddle_node_sinks << " conn=" << s.saddle_connections << " total=" << s.total();
    return os.str();
}

void print_catalog_table(const fc::Catalog& c, const std::string& out) {
    std::cout << "entries: " << c.entries.size() << '\n';
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        const auto& e = c.entries[i];
        std::cout << std::setw(4) << i + 1 << "  " << e.code << "  V=" << e.n_vertices << " F=" << e.n_faces
                  << "  deg=" << join(e.degree_sequence);
        if (e.mark) std::cout << "  " << summary_text(e.singular_point_summary);
        if (e.paper_label) std::cout << "  [" << *e.paper_label << ']';
        std::cout << '\n';
    }
    if (out != "-") std::cout << "written: " << out << '\n';
}

int run_maps(int edges, const CommonFlags& f) {
    auto c = fc::map_catalog(edges, f.options());
    auto text = nlohmann::json(c).dump(2) + "\n";
    if (f.out == "-") {
        std::cout << text;
        return 0;
    }
    write_output(f.out, text);
    std::map<std::vector<int>, int> histogram;
    for (const auto& e : c.entries) ++histogram[e.degree_sequence];
    std::cout << "maps with " << edges << " edges: " << c.entries.size() << '\n';
    std::cout << "degree sequence histogram:\n";
    for (const auto& [seq, n] : histogram) std::cout << "  " << std::left << std::setw(16) << join(seq) << std::right << n << '\n';
    print_catalog_table(c, f.out);
    return 0;
}

int run_bifurcations(const std::string& kind_name, int saddles, const CommonFlags& f) {
    auto kind = fc::parse_bifurcation_kind(kind_name);
    if (!kind) throw fc::Error(fc::Errc::unsupported_format, "unknown bifurcation kind '" + kind_name + "'");
    auto c = fc::bifurcation_catalog(*kind, saddles, f.options());
    auto text = nlohmann::json(c).dump(2) + "\n";
    if (f.out == "-") {
        std::cout << text;
        return 0;
    }
    write_output(f.out, text);
    std::map<std::string, int> by_mark;
    for (const auto& e : c.entries) ++by_mark[std::string(fc::to_string(e.mark->kind))];
    std::cout << kind_name << " flows with " << saddles << " saddles: " << c.entries.size() << '\n';
    for (const auto& [k, n] : by_mark) std::cout << "  " << k << " marks: " << n << '\n';
    print_catalog_table(c, f.out);
    return 0;
}

int run_verify(const CommonFlags& f) {
    auto rep = fc::build_census_report(f.options());
    std::cout << fc::report_to_text(rep);
    if (f.out != "-") {
        write_output(f.out, fc::report_to_json(rep).dump(2) + "\n");
        std::cout << "written: " << f.out << '\n';
    }
    return 0;
}

enum class ExportFormat { json, dot, diagram_json };

ExportFormat parse_format(const std::string& s) {
    if (s == "json") return ExportFormat::json;
    if (s == "dot") return ExportFormat::dot;
    if (s == "diagram-json") return ExportFormat::diagram_json;
    throw fc::Error(fc::Errc::unsupported_format, "unsupported export format '" + s + "'");
}

fc::Catalog read_catalog(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw fc::Error(fc::Errc::unsupported_format, "cannot read catalog '" + path + "'");
    try {
        return nlohmann::json::parse(is).get<fc::Catalog>();
    } catch (const nlohmann::json::exception& e) {
        throw fc::Error(fc::Errc::unsupported_format, "malformed catalog '" + path + "': " + e.what());
    }
}

std::string export_one(const std::string& token, ExportFormat format, bool allow_reflection, const std::string& name) {
    auto [m, mark] = fc::resolve_code(token);
    switch (format) {
        case ExportFormat::json: {
            fc::PaperLabels labels(allow_reflection);
            auto e = mark ? fc::make_entry(fc::MarkedMap{m, *mark}, allow_reflection, &labels)
                          : fc::make_entry(m, allow_reflection, &labels);
            return nlohmann::json(e).dump(2) + "\n";
        }
        case ExportFormat::dot:
            return fc::to_dot(m, mark, name);
        case ExportFormat::diagram_json: {
            if (!mark) throw fc::Error(fc::Errc::unsupported_format, "diagram-json needs a marked object");
            auto diag = fc::realize({m, *mark});
            auto bad = fc::check_diagram(diag);
            if (!bad.empty()) throw fc::Error(fc::Errc::invariant_violation, bad.front());
            return fc::diagram_to_json(diag).dump(2) + "\n";
        }
    }
    return {};
}

int run_export(const std::string& code, const std::string& catalog_path, const std::string& format_name,
               const CommonFlags& f) {
    auto format = parse_format(format_name);
    bool refl = !f.no_reflections;
    std::string text;
    if (!code.empty()) {
        text = export_one(code, format, refl, "object");
    } else {
        auto c = read_catalog(catalog_path);
        if (format == ExportFormat::json) {
            for (const auto& e : c.entries) fc::resolve_code(e.code);
            text = nlohmann::json(c).dump(2) + "\n";
        } else if (format == ExportFormat::dot) {
            for (std::size_t i = 0; i < c.entries.size(); ++i) {
                text += export_one(c.entries[i].code, format, refl, "entry" + std::to_string(i + 1));
            }
        } else {
            auto arr = nlohmann::json::array();
            for (const auto& e : c.entries) arr.push_back(nlohmann::json::parse(export_one(e.code, format, refl, "")));
            text = arr.dump(2) + "\n";
        }
    }
    write_output(f.out, text);
    return 0;
}

int exit_code_for(fc::Errc e) {
    switch (e) {
        case fc::Errc::invariant_violation:
        case fc::Errc::not_spherical:
        case fc::Errc::not_connected:
        case fc::Errc::not_permutation:
        case fc::Errc::not_involution:
        case fc::Errc::empty_map:
            return 1;
        default:
            return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Catalogs of spherical graphs and codimension-1 gradient flows on the sphere"};
    app.require_subcommand(1);

    CommonFlags maps_flags, bif_flags, verify_flags, export_flags;
    int edges = 0, saddles = 0;
    std::string kind, code, catalog_path, format = "json";

    auto* maps = app.add_subcommand("maps", "Catalog of spherical maps with a given edge count");
    maps->add_option("--edges", edges, "Edge count, 1 to 5")->required();
    add_common(maps, maps_flags, "maps.json");

    auto* bif = app.add_subcommand("bifurcations", "Catalog of codimension-1 flows");
    bif->add_option("--kind", kind, "saddle-node or saddle-connection")->required();
    bif->add_option("--saddles", saddles, "Saddle count (saddle-node 1-4, saddle-connection 2-4)")->required();
    add_common(bif, bif_flags, "bifurcations.json");

    auto* verify = app.add_subcommand("verify-paper", "Census comparison report for up to four saddles");
    add_common(verify, verify_flags, "census-report.json");

    auto* exp = app.add_subcommand("export", "Export one code or a whole catalog");
    auto* code_opt = exp->add_option("--code", code, "Canonical code token");
    auto* cat_opt = exp->add_option("--catalog", catalog_path, "Catalog JSON file");
    code_opt->excludes(cat_opt);
    exp->add_option("--format", format, "json, dot or diagram-json")->capture_default_str();
    add_common(exp, export_flags, "-");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (maps->parsed()) return run_maps(edges, maps_flags);
        if (bif->parsed()) return run_bifurcations(kind, saddles, bif_flags);
        if (verify->parsed()) return run_verify(verify_flags);
        if (exp->parsed()) {
            if (code.empty() && catalog_path.empty()) {
                std::cerr << "export: one of --code or --catalog is required\n";
                return 2;
            }
            return run_export(code, catalog_path, format, export_flags);
        }
    } catch (const fc::Error& e) {
        std::cerr << "error [" << fc::to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
