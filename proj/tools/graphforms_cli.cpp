// Command-line front end: load graph / braiding / orientation inputs, run the
// verification pipeline, emit a structured JSON report.
//
// Exit codes: 0 all verdicts pass, 1 at least one verdict failed,
// 2 input or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "graphforms/graphforms.hpp"
#include "graphforms/io.hpp"
#include "graphforms/report.hpp"

namespace gf = graphforms;

namespace {

struct CommonArgs {
    std::string graph_path;
    std::string sigma_path;
    std::string j_path;
    std::string out_path;
    std::string orientation = "standard";
    int max_degree = 4;
    bool emit_matrices = false;
};

void add_io_options(CLI::App* cmd, CommonArgs& args, bool need_sigma, bool need_j) {
    cmd->add_option("--graph", args.graph_path, "graph JSON file")->required();
    auto* sigma = cmd->add_option("--sigma", args.sigma_path, "braiding spec JSON file");
    if (need_sigma) sigma->required();
    auto* j = cmd->add_option("--j", args.j_path, "orientation (J) spec JSON file");
    if (need_j) j->required();
    cmd->add_option("--out", args.out_path, "write the report here instead of stdout");
    cmd->add_option("--max-degree", args.max_degree, "highest form degree to construct")
        ->default_val(4);
    cmd->add_flag("--emit-matrices", args.emit_matrices, "include operator matrices in the report");
}

int finish(gf::Report& report, const CommonArgs& args) {
    std::string text = report.dump();
    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.out_path);
        if (!out) {
            std::cerr << "cannot write " << args.out_path << "\n";
            return 2;
        }
        out << text;
    }
    return report.exit_code();
}

int run_command(const std::string& command, const CommonArgs& args, gf::RunConfig config) {
    gf::Report report(command);
    report.set_parameter("max_degree", args.max_degree);
    if (config.want_cocycles) report.set_parameter("orientation", args.orientation);
    config.max_degree = args.max_degree;
    config.emit_matrices = args.emit_matrices;
    if (args.orientation == "opposite")
        config.orientation = gf::OrientationChoice::opposite;
    else if (args.orientation != "standard") {
        report.add_error("ParseError", "--orientation must be standard or opposite");
        return finish(report, args);
    }

    std::optional<gf::BidiGraph> graph;
    std::optional<gf::SigmaSpec> sigma_spec;
    std::optional<gf::JSpec> j_spec;
    try {
        report.add_input("graph", args.graph_path);
        graph = gf::parse_graph(gf::load_json_file(args.graph_path), args.graph_path);
        if (!args.sigma_path.empty()) {
            report.add_input("sigma", args.sigma_path);
            sigma_spec =
                gf::parse_sigma_spec(gf::load_json_file(args.sigma_path), *graph, args.sigma_path);
        }
        if (!args.j_path.empty()) {
            report.add_input("j", args.j_path);
            j_spec = gf::parse_j_spec(gf::load_json_file(args.j_path), args.j_path);
        }
    } catch (const gf::Error& e) {
        report.add_error(e.code(), e.message());
        return finish(report, args);
    }

    try {
        gf::pipeline::run(report, *graph, sigma_spec, j_spec, config);
    } catch (const gf::Error& e) {
        // Anything reaching here is a structural problem (bad spec shape,
        // degree budget); mathematical failures were turned into verdicts.
        report.add_error(e.code(), e.message());
    }
    return finish(report, args);
}

int run_polygon(int n, const CommonArgs& args, const std::string& emit_dir) {
    gf::Report report("polygon");
    report.set_parameter("n", n);
    report.set_parameter("max_degree", args.max_degree);
    report.set_parameter("orientation", args.orientation);
    gf::RunConfig config;
    config.want_dimensions = true;
    config.want_cohomology = true;
    config.want_holomorphic = true;
    config.want_cocycles = true;
    config.max_degree = args.max_degree;
    config.emit_matrices = args.emit_matrices;
    config.polygon_n = n;
    if (args.orientation == "opposite") config.orientation = gf::OrientationChoice::opposite;

    try {
        gf::PolygonModel model = gf::make_polygon(n);
        if (!emit_dir.empty()) {
            std::filesystem::create_directories(emit_dir);
            auto write = [&](const std::string& name, const gf::Json& j) {
                std::ofstream out(std::filesystem::path(emit_dir) / name);
                out << j.dump(2) << "\n";
            };
            write("graph.json", gf::render_graph(model.graph));
            write("sigma.json", gf::render_sigma_spec(model.sigma_spec, model.graph));
            write("j.json", gf::render_j_spec(model.j_spec));
            report.set_parameter("emitted_inputs", emit_dir);
        }
        gf::pipeline::run(report, model.graph, model.sigma_spec, model.j_spec, config);
    } catch (const gf::Error& e) {
        report.add_error(e.code(), e.message());
    }
    return finish(report, args);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact differential calculus of bidirected graphs"};
    app.require_subcommand(1);

    CommonArgs args;
    int polygon_n = 0;
    std::string emit_dir;

    auto* check = app.add_subcommand("check", "validate graph, braiding and orientation inputs");
    add_io_options(check, args, false, false);

    auto* prolong = app.add_subcommand("prolong", "form-space dimensions up to --max-degree");
    add_io_options(prolong, args, true, false);

    auto* cohomology = app.add_subcommand("cohomology", "(p,q)-decomposition and Dolbeault table");
    add_io_options(cohomology, args, true, true);

    auto* holo = app.add_subcommand("holo", "connection layer, holomorphic sections, section ring");
    add_io_options(holo, args, true, true);

    auto* cocycle = app.add_subcommand("cocycle", "trace, cocycle identities, positivity, triviality");
    add_io_options(cocycle, args, true, true);
    cocycle->add_option("--orientation", args.orientation, "standard | opposite")
        ->default_val("standard");

    auto* all = app.add_subcommand("all", "full pipeline");
    add_io_options(all, args, true, true);
    all->add_option("--orientation", args.orientation, "standard | opposite")
        ->default_val("standard");

    auto* polygon = app.add_subcommand("polygon", "built-in n-gon model, full pipeline + expectations");
    polygon->add_option("--n", polygon_n, "number of vertices (>= 3)")->required();
    polygon->add_option("--out", args.out_path, "write the report here instead of stdout");
    polygon->add_option("--max-degree", args.max_degree, "highest form degree to construct")
        ->default_val(4);
    polygon->add_option("--orientation", args.orientation, "standard | opposite")
        ->default_val("standard");
    polygon->add_flag("--emit-matrices", args.emit_matrices,
                      "include operator matrices in the report");
    polygon->add_option("--emit-inputs", emit_dir,
                        "also write graph.json / sigma.json / j.json to this directory");

    CLI11_PARSE(app, argc, argv);

    gf::RunConfig config;
    if (check->parsed()) return run_command("check", args, config);
    if (prolong->parsed()) {
        config.want_dimensions = true;
        return run_command("prolong", args, config);
    }
    if (cohomology->parsed()) {
        config.want_dimensions = true;
        config.want_cohomology = true;
        return run_command("cohomology", args, config);
    }
    if (holo->parsed()) {
        config.want_dimensions = true;
        config.want_cohomology = true;
        config.want_holomorphic = true;
        return run_command("holo", args, config);
    }
    if (cocycle->parsed()) {
        config.want_dimensions = true;
        config.want_cohomology = true;
        config.want_cocycles = true;
        return run_command("cocycle", args, config);
    }
    if (all->parsed()) {
        config.want_dimensions = true;
        config.want_cohomology = true;
        config.want_holomorphic = true;
        config.want_cocycles = true;
        return run_command("all", args, config);
    }
    if (polygon->parsed()) return run_polygon(polygon_n, args, emit_dir);
    return 2;
}
