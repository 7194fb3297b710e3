// Command-line front end: censuses of plumbers' knots, pairwise isotopy
// queries, lattice closures, neighbor listings, and stabilization.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "plumber/plumber.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

struct RunConfig {
    int n = 5;
    int threads = 1;
    std::uint64_t memory_budget = 2ull << 30;
    std::string output_path;
    std::string format = "json";
    int jones_cap = 24;
};

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(cfg.output_path);
    if (!out) throw std::runtime_error("cannot open output file " + cfg.output_path);
    out << text << '\n';
}

int cmd_census(const RunConfig& cfg) {
    plumber::CensusOptions opt;
    opt.threads = cfg.threads;
    opt.memory_budget = cfg.memory_budget;
    plumber::Census census = plumber::Census::run(cfg.n, opt);
    plumber::CensusDocument doc = plumber::make_document(census, cfg.jones_cap);

    std::cerr << "K_" << cfg.n << ": " << doc.components.size() << " components, "
              << doc.total_cells << " cells\n";
    for (const auto& row : doc.components)
        std::cerr << "  " << row.label.type_name << "  " << row.size << "  "
                  << row.representative << "\n";

    write_output(cfg, cfg.format == "csv" ? plumber::to_csv(doc)
                                          : plumber::to_json(doc).dump(2));
    return 0;
}

int cmd_distinguish(const RunConfig& cfg, const std::string& a, const std::string& b) {
    plumber::CellName ca = plumber::CellName::parse(a, cfg.n);
    plumber::CellName cb = plumber::CellName::parse(b, cfg.n);
    bool same = plumber::same_component(ca, cb);
    plumber::KnotLabel la = plumber::classify(ca, cfg.jones_cap);
    plumber::KnotLabel lb = plumber::classify(cb, cfg.jones_cap);
    std::cout << (same ? "geometrically-isotopic" : "not-geometrically-isotopic") << "\n"
              << "a: " << la.type_name << " (det " << la.determinant << ", sig "
              << la.signature << ")\n"
              << "b: " << lb.type_name << " (det " << lb.determinant << ", sig "
              << lb.signature << ")\n";
    return 0;
}

int cmd_lattice(const RunConfig& cfg, const std::string& cell_text) {
    plumber::CellName c = plumber::CellName::parse(cell_text, cfg.n);
    plumber::LatticeKnot k = plumber::close_to_lattice(c);
    write_output(cfg, plumber::to_json(k).dump(2));
    return 0;
}

int cmd_neighbors(const RunConfig& cfg, const std::string& cell_text) {
    plumber::CellName c = plumber::CellName::parse(cell_text, cfg.n);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& nb : plumber::neighbors(c)) arr.push_back(nb.str());
    write_output(cfg, arr.dump(2));
    return 0;
}

int cmd_stabilize(const RunConfig& cfg, const std::string& cell_text) {
    plumber::CellName c = plumber::CellName::parse(cell_text, cfg.n);
    plumber::InsertionSchedule sched{3};
    plumber::Stabilized s = plumber::stabilize(plumber::representative_point(c), c, sched);
    nlohmann::json j;
    j["point"] = plumber::to_json(s.point);
    j["image"] = s.image_name;
    j["branch"] = s.branch == plumber::StabilizeBranch::Good        ? "good"
                  : s.branch == plumber::StabilizeBranch::Planar    ? "planar"
                                                                    : "interpolating";
    write_output(cfg, j.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerate and distinguish plumbers' knots"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("-n,--moves", cfg.n, "move count")->envname("PLUMBERS_N");
    app.add_option("--threads", cfg.threads, "worker threads")->envname("PLUMBERS_THREADS");
    app.add_option("--memory-budget", cfg.memory_budget, "census memory budget in bytes")
        ->envname("PLUMBERS_MEMORY_BUDGET");
    app.add_option("--format", cfg.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("PLUMBERS_FORMAT");
    app.add_option("-o,--output", cfg.output_path, "output file (stdout when omitted)")
        ->envname("PLUMBERS_OUTPUT");
    app.add_option("--jones-cap", cfg.jones_cap, "crossing cap for the Jones cross-check")
        ->envname("PLUMBERS_JONES_CAP");

    auto* census = app.add_subcommand("census", "enumerate the components of K_n");

    std::string cell_a, cell_b;
    auto* distinguish =
        app.add_subcommand("distinguish", "decide geometric isotopy of two cells");
    distinguish->add_option("a", cell_a, "first cell, e.g. \"[1342_x,2413_y,2413_z]\"")
        ->required();
    distinguish->add_option("b", cell_b, "second cell")->required();

    std::string cell;
    auto* lattice = app.add_subcommand("lattice", "lattice closure of a cell representative");
    lattice->add_option("--cell", cell, "cell name")->required();
    auto* neighbors_cmd = app.add_subcommand("neighbors", "elementary isotopy neighbors");
    neighbors_cmd->add_option("--cell", cell, "cell name")->required();
    auto* stabilize_cmd =
        app.add_subcommand("stabilize", "insert one articulation into the representative");
    stabilize_cmd->add_option("--cell", cell, "cell name")->required();

    try {
        app.parse(argc, argv);
        if (census->parsed()) return cmd_census(cfg);
        if (distinguish->parsed()) return cmd_distinguish(cfg, cell_a, cell_b);
        if (lattice->parsed()) return cmd_lattice(cfg, cell);
        if (neighbors_cmd->parsed()) return cmd_neighbors(cfg, cell);
        if (stabilize_cmd->parsed()) return cmd_stabilize(cfg, cell);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const plumber::resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const plumber::internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
