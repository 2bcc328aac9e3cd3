// Batch frontend: polytope checks, Delzant data, moduli classification and
// vortex PDE solves over JSON files. Exit codes: 0 valid answer (including
// "no solutions" and clean infeasibility), 2 input error, 3 internal error,
// 4 solver non-convergence.

#include "vortex/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using vortex::io::ordered_json;

ordered_json read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vortex::InvalidInput("cannot open input file: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& err) {
        throw vortex::InvalidInput(std::string("JSON parse error: ") + err.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw vortex::InvalidInput("cannot open output file: " + path);
    out << text;
}

int run_polytope(const std::string& input, const std::string& output) {
    ordered_json j = read_input(input);
    vortex::LatticePolytope poly = vortex::io::parse_polytope(j);
    write_output(output, vortex::io::dump_deterministic(vortex::io::polytope_report(poly)));
    return 0;
}

int run_delzant(const std::string& input, const std::string& output) {
    ordered_json j = read_input(input);
    vortex::LatticePolytope poly = vortex::io::parse_polytope(j);
    vortex::DelzantData data = vortex::DelzantData::build(poly);
    write_output(output, vortex::io::dump_deterministic(vortex::io::delzant_report(data)));
    return 0;
}

int run_classify(const std::string& input, const std::string& output, long long cap, double eps) {
    ordered_json j = read_input(input);
    vortex::TargetModel target = vortex::io::parse_target(j.at("target"));
    vortex::BaseBundleData base = vortex::io::parse_base(j.at("base"));
    if (cap < 0 && j.contains("cap")) cap = j.at("cap").get<long long>();
    if (cap < 0) cap = 20;
    vortex::ModuliDescription desc = vortex::classify(target, base, cap, eps);
    write_output(output, vortex::io::dump_deterministic(vortex::io::classify_report(desc, base)));
    return 0;
}

int run_solve(const std::string& input, const std::string& output, const std::string& dump_field) {
    ordered_json j = read_input(input);
    vortex::io::SolveRequest req = vortex::io::parse_solve_request(j);

    std::optional<double> predicted;
    if (req.model == vortex::FieldModel::C) {
        long long n = 0;
        for (const auto& s : req.vortices) n += s.multiplicity;
        predicted = req.t * static_cast<double>(n);
    } else {
        long long n1 = 0, n0 = 0;
        for (const auto& s : req.vortices) n1 += s.multiplicity;
        for (const auto& s : req.antivortices) n0 += s.multiplicity;
        const double barycentre = req.t - vortex::kPi / 2.0;
        predicted = barycentre * static_cast<double>(n1 - n0) +
                    vortex::kPi / 2.0 * static_cast<double>(n1 + n0);
    }

    vortex::FieldSolution sol;
    try {
        if (req.model == vortex::FieldModel::C)
            sol = vortex::solve_taubes(req.grid, req.a, req.t, req.vortices, req.newton);
        else
            sol = vortex::solve_cp1(req.grid, req.a, req.t, req.vortices, req.antivortices,
                                    req.newton);
    } catch (const vortex::Infeasible& err) {
        ordered_json out;
        out["converged"] = false;
        out["reason"] = "bradlow_infeasible";
        out["detail"] = err.what();
        write_output(output, vortex::io::dump_deterministic(out));
        return 0;
    }

    write_output(output, vortex::io::dump_deterministic(vortex::io::solve_report(sol, predicted)));
    if (!dump_field.empty() && sol.converged) write_output(dump_field, vortex::io::field_csv(sol));
    return sol.converged ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abelian vortex toolkit"};
    app.require_subcommand(1);

    std::string input, output, dump_field;
    long long cap = -1;
    double eps = 1e-9;

    auto* polytope = app.add_subcommand("polytope", "validate a polytope and report its data");
    polytope->add_option("--input", input)->required();
    polytope->add_option("--output", output);

    auto* delzant = app.add_subcommand("delzant", "facet map, kernel lattice and zero patterns");
    delzant->add_option("--input", input)->required();
    delzant->add_option("--output", output);

    auto* classify = app.add_subcommand("classify", "existence verdict and moduli components");
    classify->add_option("--input", input)->required();
    classify->add_option("--output", output);
    classify->add_option("--cap", cap, "bound on the total divisor degree");
    classify->add_option("--eps", eps, "boundary tolerance for the verdict");

    auto* solve = app.add_subcommand("solve", "solve the reduced vortex PDE on a flat 2-torus");
    solve->add_option("--input", input)->required();
    solve->add_option("--output", output);
    solve->add_option("--dump-field", dump_field, "write per-node CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (polytope->parsed()) return run_polytope(input, output);
        if (delzant->parsed()) return run_delzant(input, output);
        if (classify->parsed()) return run_classify(input, output, cap, eps);
        if (solve->parsed()) return run_solve(input, output, dump_field);
    } catch (const vortex::InvalidInput& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const vortex::UnboundedRegion& err) {
        std::cerr << "input error: unbounded: " << err.what() << "\n";
        return 2;
    } catch (const vortex::DegenerateRegion& err) {
        std::cerr << "input error: degenerate: " << err.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const vortex::NotConverged& err) {
        std::cerr << "solver did not converge: " << err.what() << "\n";
        return 4;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 3;
    }
    return 3;
}
