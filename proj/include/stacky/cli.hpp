// Command-line dispatcher. Kept in a header so the test suite can drive the
// exact CLI surface in-process. Exit codes: 0 success, 1 domain error
// (machine-readable JSON diagnostic), 2 usage error.
#pragma once

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "stacky/braid.hpp"
#include "stacky/cech.hpp"
#include "stacky/equivariant.hpp"
#include "stacky/flux.hpp"
#include "stacky/graph_builders.hpp"
#include "stacky/json_io.hpp"
#include "stacky/svg.hpp"

namespace stacky {

namespace detail_cli {

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("FileError", "cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw DomainError("FileError", "cannot write " + out_path);
    out << text;
}

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    auto b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

inline std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse_rat(tok));
    }
    return out;
}

// "m1min..m1max,m2min..m2max"
inline Box parse_box(const std::string& text) {
    Box box;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) throw DomainError("BadBox", "box ranges look like lo..hi");
        box.lo.push_back(Int(trim(part.substr(0, dots))));
        box.hi.push_back(Int(trim(part.substr(dots + 2))));
    }
    return box;
}

inline double default_tolerance() {
    if (const char* env = std::getenv("STACKY_TOL")) return std::atof(env);
    return 1e-8;
}

}  // namespace detail_cli

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"toric mirror symmetry workbench"};
    app.require_subcommand(1);

    std::string fan_path, graph_path, frames_path, sites_path, out_path, svg_path;
    std::string divisor_text, box_text, word_text, moves_text;
    long opt_n = 4, opt_i = 0, opt_j = 0, opt_t = 1;
    int truncation = 6;
    double tolerance = detail_cli::default_tolerance();
    bool front = false, dual = false, partial = false;
    std::vector<long> chamber;

    auto* pic = app.add_subcommand("pic", "Picard group of a stacky fan");
    pic->add_option("--fan", fan_path)->required();
    pic->add_option("--out", out_path);

    auto* coh = app.add_subcommand("cohomology", "line bundle cohomology over a degree box");
    coh->add_option("--fan", fan_path)->required();
    coh->add_option("--divisor", divisor_text)->required();
    coh->add_option("--box", box_text)->required();
    coh->add_option("--out", out_path);

    auto* ext = app.add_subcommand("ext", "local ext dimensions between skyscraper twists");
    ext->add_option("--n", opt_n)->required();
    ext->add_option("--i", opt_i)->required();
    ext->add_option("--j", opt_j)->required();
    ext->add_option("--out", out_path);

    auto* mut = app.add_subcommand("mutation-check", "four-term exactness report");
    mut->add_option("--n", opt_n)->required();
    mut->add_option("--i", opt_i)->required();
    mut->add_option("--trunc", truncation);
    mut->add_option("--out", out_path);

    auto* fltz = app.add_subcommand("fltz", "FLTZ components of a stacky fan");
    fltz->add_option("--fan", fan_path)->required();
    fltz->add_option("--svg", svg_path);
    fltz->add_option("--out", out_path);

    auto* lift = app.add_subcommand("lift", "legendrian lift of a cylinder graph");
    lift->add_option("--graph", graph_path)->required();
    lift->add_option("--out", out_path);

    auto* flux = app.add_subcommand("flux", "discrete flux primitive of a frame sequence");
    flux->add_option("--frames", frames_path)->required();
    flux->add_option("--t", opt_t)->required();
    std::string dt_text = "";
    flux->add_option("--dt", dt_text);
    flux->add_option("--out", out_path);

    auto* vor = app.add_subcommand("voronoi", "canonical area-one graph from sites");
    vor->add_option("--sites", sites_path)->required();
    vor->add_option("--tol", tolerance);
    vor->add_option("--svg", svg_path);
    vor->add_option("--out", out_path);

    auto* braid = app.add_subcommand("braid", "matrix of a braid word on K0");
    braid->add_option("--n", opt_n)->required();
    braid->add_option("--word", word_text)->required();
    braid->add_flag("--dual", dual, "use the opposite twist-index convention");
    braid->add_option("--out", out_path);

    auto* bverify = app.add_subcommand("braid-verify", "relation report for the representation");
    bverify->add_option("--n", opt_n)->required();
    bverify->add_option("--out", out_path);

    auto* bt = app.add_subcommand("bt", "stratum labeling after a sequence of moves");
    bt->add_option("--n", opt_n)->required();
    bt->add_option("--moves", moves_text)->required();
    bt->add_option("--out", out_path);

    auto* render = app.add_subcommand("render", "svg output for graphs, fronts and fans");
    render->add_option("--graph", graph_path);
    render->add_option("--fan", fan_path);
    render->add_flag("--front", front, "front projection instead of the lagrangian one");
    render->add_option("--out", out_path);

    auto* chamber_cmd = app.add_subcommand("chamber", "chamber graph for an index set");
    chamber_cmd->add_option("--I", chamber)->required()->delimiter(',');
    chamber_cmd->add_option("--n", opt_n)->required();
    chamber_cmd->add_flag("--partial", partial);
    chamber_cmd->add_option("--out", out_path);

    std::vector<const char*> argv;
    argv.push_back("stacky");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*pic) {
            auto fan = fan_from_json(detail_cli::load_json(fan_path));
            auto inv = picard_group(fan);
            Json j;
            j["torsion"] = Json::array();
            for (const auto& t : inv.torsion) j["torsion"].push_back(int_to_json(t));
            j["free_rank"] = inv.free_rank;
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*coh) {
            auto fan = fan_from_json(detail_cli::load_json(fan_path));
            auto coeffs = detail_cli::parse_rat_list(divisor_text);
            if (coeffs.size() != fan.rays.size())
                throw DomainError("BadDivisor", "need one coefficient per ray");
            auto f = divisor_to_support_function(fan, coeffs);
            auto box = detail_cli::parse_box(box_text);
            auto table = cohomology_box(fan, f, box);
            Json j;
            j["entries"] = Json::array();
            for (const auto& [key, betti] : table.entries) {
                Json entry;
                entry["m"] = Json::array();
                for (const auto& c : key.first) entry["m"].push_back(int_to_json(c));
                entry["d"] = key.second;
                entry["betti"] = betti;
                j["entries"].push_back(entry);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*ext) {
            WeightedRing ring{int(opt_n)};
            auto dims = local_ext_dims(ring, opt_i, opt_j);
            Json j;
            j["dims"] = Json::array({dims[0], dims[1], dims[2]});
            j["euler"] = euler_pairing_skyscrapers(ring, opt_i, opt_j);
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*mut) {
            WeightedRing ring{int(opt_n)};
            auto report = verify_mutation_exactness(ring, opt_i, truncation);
            Json j;
            j["passed"] = report.passed();
            j["d_squared"] = report.d_squared_ok;
            j["homotopy"] = report.homotopy_ok;
            j["homology_vanishes"] = report.homology_vanishes;
            j["first_failure"] = report.first_failure;
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*fltz) {
            auto fan = fan_from_json(detail_cli::load_json(fan_path));
            auto comps = fltz_components(fan);
            Json j;
            j["components"] = Json::array();
            for (const auto& comp : comps) {
                Json c;
                c["cone"] = comp.cone;
                c["dim"] = comp.torus.dim();
                c["basis"] = Json::array();
                for (const auto& v : comp.torus.basis) {
                    Json row = Json::array();
                    for (const auto& x : v) row.push_back(int_to_json(x));
                    c["basis"].push_back(row);
                }
                c["shifts"] = Json::array();
                for (const auto& s : comp.torus.shifts) {
                    Json row = Json::array();
                    for (const auto& x : s) row.push_back(rat_to_json(x));
                    c["shifts"].push_back(row);
                }
                j["components"].push_back(c);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
            if (!svg_path.empty()) detail_cli::emit(render_fltz_svg(fan), svg_path, out);
        } else if (*lift) {
            auto g = graph_from_json(detail_cli::load_json(graph_path));
            auto result = legendrian_lift(g);
            Json j;
            j["vertex_q1"] = Json::array();
            for (const auto& v : result.vertex_q1) j["vertex_q1"].push_back(rat_to_json(v));
            j["breakpoint_q1"] = Json::array();
            for (const auto& edge_vals : result.breakpoint_q1) {
                Json row = Json::array();
                for (const auto& v : edge_vals) row.push_back(rat_to_json(v));
                j["breakpoint_q1"].push_back(row);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*flux) {
            auto frames = frames_from_json(detail_cli::load_json(frames_path));
            Rat dt = dt_text.empty() ? (frames.size() > 1 ? Rat(1, long(frames.size()) - 1) : Rat(1))
                                     : parse_rat(dt_text);
            auto values = flux_primitive(frames, std::size_t(opt_t), dt);
            Json j;
            j["vertex_values"] = Json::array();
            for (const auto& v : values.vertex_values) j["vertex_values"].push_back(rat_to_json(v));
            j["breakpoint_values"] = Json::array();
            for (const auto& edge_vals : values.breakpoint_values) {
                Json row = Json::array();
                for (const auto& v : edge_vals) row.push_back(rat_to_json(v));
                j["breakpoint_values"].push_back(row);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*vor) {
            auto problem = transport_from_json(detail_cli::load_json(sites_path));
            problem.tolerance = tolerance;
            auto result = canonical_area_one_graph(problem);
            Json j;
            j["graph"] = graph_to_json(result.graph);
            j["repaired"] = result.repaired;
            j["iterations"] = result.diagnostics.iterations;
            j["residual"] = result.diagnostics.residual;
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
            if (!svg_path.empty()) {
                auto [w, diag] = solve_weights(problem);
                detail_cli::emit(render_diagram_svg(problem, power_diagram(problem, w)), svg_path, out);
            }
        } else if (*braid) {
            auto word = parse_braid_word(opt_n, word_text);
            if (dual)
                for (auto& letter : word.letters)
                    if (letter.kind == BraidLetter::Tau) letter.index = (opt_n - letter.index) % opt_n;
            auto m = represent(word);
            Json j;
            j["n"] = opt_n;
            j["matrix"] = Json::array();
            for (std::size_t r = 0; r < m.rows; ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < m.cols; ++c) row.push_back(int_to_json(m(r, c)));
                j["matrix"].push_back(row);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*bverify) {
            auto report = verify_relations(opt_n);
            Json j;
            j["all_passed"] = report.all_passed();
            j["checks"] = Json::array();
            for (const auto& c : report.checks) {
                Json e;
                e["name"] = c.name;
                e["passed"] = c.passed;
                j["checks"].push_back(e);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*bt) {
            auto labeling = bt_base_labeling(opt_n);
            std::stringstream ss(moves_text);
            std::string tok;
            while (ss >> tok) {
                if (tok == "r") {
                    labeling = bt_relabel(labeling, {BTMove::RhoMove, 0});
                } else if (tok.size() >= 2 && tok[0] == 't') {
                    labeling = bt_relabel(labeling, {BTMove::TauMove, std::strtol(tok.c_str() + 1, nullptr, 10)});
                } else {
                    throw DomainError("BadWord", "unrecognized move '" + tok + "'");
                }
            }
            Json j;
            j["n"] = labeling.n;
            j["shift"] = labeling.rho_shift;
            j["labels"] = Json::array();
            for (const auto& label : labeling.labels) {
                Json e;
                e["type"] = (label.kind == StratumLabel::Line) ? "line" : "cone";
                e["value"] = label.value;
                j["labels"].push_back(e);
            }
            detail_cli::emit(j.dump(2) + "\n", out_path, out);
        } else if (*render) {
            if (!graph_path.empty()) {
                auto g = graph_from_json(detail_cli::load_json(graph_path));
                detail_cli::emit(front ? render_front_svg(g) : render_graph_svg(g), out_path, out);
            } else if (!fan_path.empty()) {
                auto fan = fan_from_json(detail_cli::load_json(fan_path));
                detail_cli::emit(render_fltz_svg(fan), out_path, out);
            } else {
                throw DomainError("BadUsage", "render needs --graph or --fan");
            }
        } else if (*chamber_cmd) {
            auto g = build_fltz_graph(chamber, opt_n,
                                      partial ? ChamberMode::Partial : ChamberMode::Full);
            detail_cli::emit(graph_to_json(g).dump(2) + "\n", out_path, out);
        }
    } catch (const DomainError& e) {
        Json j;
        j["error"] = {{"code", e.code()}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json j;
        j["error"] = {{"code", "Error"}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        return 1;
    }
    return 0;
}

}  // namespace stacky
