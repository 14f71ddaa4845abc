#include "polyring/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyring/dynamics.hpp"
#include "polyring/errors.hpp"
#include "polyring/model.hpp"
#include "polyring/scan.hpp"
#include "polyring/series.hpp"
#include "polyring/solver.hpp"
#include "polyring/spectra.hpp"
#include "polyring/verify.hpp"

namespace polyring {

namespace {

using nlohmann::json;

// Fixed 17-significant-digit formatting keeps CSV output byte-identical
// across runs.
std::string fmt17(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string verdict_name(DetVerdict v) {
    switch (v) {
        case DetVerdict::nonzero: return "nonzero";
        case DetVerdict::numerically_singular: return "numerically-singular";
        case DetVerdict::structurally_zero: return "structurally-zero";
    }
    return "unknown";
}

std::string reason_name(ExclusionReason r) {
    switch (r) {
        case ExclusionReason::none: return "none";
        case ExclusionReason::complex_eigenvector_mode: return "complex-eigenvector";
        case ExclusionReason::odd_polygon_count_b_family: return "odd-L-B-family";
    }
    return "unknown";
}

GridSpec parse_grid(const std::string& text) {
    GridSpec grid;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &grid.start, &grid.stop, &grid.count, &extra) !=
        3) {
        throw InvalidInstanceError("grid must be start:stop:count, got '" + text + "'");
    }
    grid.validate();
    return grid;
}

PolygonStack make_stack(int n, double a, const std::vector<double>& radii,
                        const std::vector<double>& heights) {
    if (heights.empty()) return PolygonStack::planar_stack(n, radii, a);
    return PolygonStack::spatial_stack(n, radii, heights, a);
}

json stack_params(const PolygonStack& stack) {
    return json{{"n", stack.vertices},
                {"l", stack.polygons()},
                {"a", stack.exponent},
                {"radii", stack.radii},
                {"heights", stack.heights}};
}

json mode_report_json(const PolygonStack& stack) {
    const ModeExclusionReport report = mode_exclusion_report(stack);
    json modes = json::array();
    for (const ModeVerdict& row : report.modes) {
        json entry{{"p", row.p},
                   {"det_a", row.det_a},
                   {"verdict_a", verdict_name(row.verdict_a)},
                   {"excluded", reason_name(row.reason)}};
        if (row.reduced_a) entry["reduced_a"] = *row.reduced_a;
        if (row.det_b) entry["det_b"] = *row.det_b;
        if (row.verdict_b) entry["verdict_b"] = verdict_name(*row.verdict_b);
        if (!row.annotation.empty()) entry["annotation"] = row.annotation;
        modes.push_back(std::move(entry));
    }
    return modes;
}

json solution_json(const PolygonStack& stack, const MassSolution& solution) {
    json doc{{"command", "solve"},
             {"version", kToolVersion},
             {"params", stack_params(stack)},
             {"masses", solution.per_polygon_masses},
             {"nu", solution.nu},
             {"total_mass", solution.total_mass},
             {"residual", solution.residual},
             {"b_mode_residual", solution.b_mode_residual},
             {"consistent", solution.consistent},
             {"signs", solution.signs.per_polygon},
             {"mode_report", mode_report_json(stack)}};
    if (solution.signs.delta) doc["delta"] = *solution.signs.delta;
    if (solution.signs.inner_below_delta) {
        doc["inner_below_delta"] = *solution.signs.inner_below_delta;
    }
    return doc;
}

// Output sink: file when --output is given, the provided stream otherwise.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidInstanceError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit_json(const json& doc, Sink& sink) { sink.stream() << doc.dump(2) << "\n"; }

struct SolveArgs {
    int n = 0;
    double a = 3.0;
    std::vector<double> radii;
    std::vector<double> heights;
    double nu = 1.0;
    std::string output;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
    const PolygonStack stack = make_stack(args.n, args.a, args.radii, args.heights);
    const MassSolution solution = stack.planar() ? solve_equal_masses(stack, args.nu)
                                                 : solve_nonplanar(stack, args.nu);
    Sink sink(args.output, out);
    emit_json(solution_json(stack, solution), sink);
    return 0;
}

struct ScanArgs {
    std::string mode = "sign";
    int n = 4;
    double a = 3.0;
    double r2 = 3.0;
    double h1 = 0.25;
    double h2 = 2.0;
    double nu = 1.0;
    int p_low = 1;
    int p_high = -1;  // default N-1
    std::string grid;
    std::string output;
};

void emit_csv_header(std::ostream& os, const std::string& command, const std::string& params) {
    os << "# " << kToolName << " " << kToolVersion << "\n";
    os << "# command: " << command << "\n";
    os << "# params: " << params << "\n";
}

int cmd_scan(const ScanArgs& args, std::ostream& out) {
    const GridSpec grid = parse_grid(args.grid);
    Sink sink(args.output, out);
    std::ostream& os = sink.stream();
    if (args.mode == "sign") {
        const SignScanResult result = sign_scan(args.n, args.a, args.r2, args.nu, grid);
        std::ostringstream params;
        params << "mode=sign n=" << args.n << " a=" << fmt17(args.a) << " r2=" << fmt17(args.r2)
               << " nu=" << fmt17(args.nu) << " grid=" << args.grid;
        emit_csv_header(os, "scan", params.str());
        os << "r1,m1,m2,g\n";
        for (const SignScanRow& row : result.rows) {
            os << fmt17(row.r1) << "," << fmt17(row.m1) << "," << fmt17(row.m2) << ","
               << fmt17(row.g) << "\n";
        }
        os << "# delta = " << fmt17(result.delta) << "\n";
        return 0;
    }
    if (args.mode == "figure") {
        FigureParams fig;
        fig.n = args.n;
        fig.a = args.a;
        fig.r2 = args.r2;
        fig.h1 = args.h1;
        fig.h2 = args.h2;
        fig.p_low = args.p_low;
        fig.p_high = args.p_high > 0 ? args.p_high : args.n - 1;
        const std::vector<FigureScanRow> rows = figure_scan(fig, grid);
        std::ostringstream params;
        params << "mode=figure n=" << fig.n << " a=" << fmt17(fig.a) << " r2=" << fmt17(fig.r2)
               << " h1=" << fmt17(fig.h1) << " h2=" << fmt17(fig.h2) << " p_low=" << fig.p_low
               << " p_high=" << fig.p_high << " grid=" << args.grid;
        emit_csv_header(os, "scan", params.str());
        os << "r1,f,g\n";
        for (const FigureScanRow& row : rows) {
            os << fmt17(row.r1) << "," << fmt17(row.f) << "," << fmt17(row.g) << "\n";
        }
        return 0;
    }
    throw InvalidInstanceError("scan mode must be 'sign' or 'figure', got '" + args.mode + "'");
}

struct CertifyArgs {
    int n = 0;
    double a = 3.0;
    int p = 1;
    int order = 100;
    double x = 0.9;
    std::string output;
};

int cmd_certify(const CertifyArgs& args, std::ostream& out) {
    const SeriesCertificate cert = certify_nonpositive(args.n, args.a, args.p, args.order, args.x);
    json doc{{"command", "certify"},
             {"version", kToolVersion},
             {"params",
              json{{"n", cert.n}, {"a", cert.a}, {"p", cert.p}, {"order", cert.max_order},
                   {"x", cert.tail_x}}},
             {"betas", cert.betas},
             {"all_nonpositive", cert.all_nonpositive},
             {"violation_index", cert.violation_index},
             {"tail_x", cert.tail_x},
             {"tail_bound", cert.tail_bound},
             {"tail_bound_note",
              "truncation envelope of this implementation; not a published remainder"},
             {"pairing_fired", cert.pairing.fired},
             {"pairing_compensated", cert.pairing.compensated}};
    Sink sink(args.output, out);
    emit_json(doc, sink);
    return cert.all_nonpositive ? 0 : 1;
}

struct SimulateArgs {
    int n = 0;
    double a = 3.0;
    std::vector<double> radii;
    std::vector<double> masses;  // per polygon, optional
    std::string solution_path;   // JSON from solve, optional
    double nu = 1.0;
    double dt = 0.0;
    long long steps = 0;
    int stride = 1;
    std::string traj_path;
    std::string output;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    PolygonStack stack;
    MassSolution solution;
    if (!args.solution_path.empty()) {
        std::ifstream in(args.solution_path);
        if (!in) {
            throw InvalidInstanceError("cannot read solution file '" + args.solution_path + "'");
        }
        try {
            const json doc = json::parse(in);
            solution.per_polygon_masses = doc.at("masses").get<std::vector<double>>();
            solution.nu = doc.at("nu").get<double>();
            if (doc.contains("params")) {
                // The stack comes entirely from the solve document.
                const json& p = doc["params"];
                stack = make_stack(p.at("n").get<int>(), p.at("a").get<double>(),
                                   p.at("radii").get<std::vector<double>>(),
                                   p.at("heights").get<std::vector<double>>());
            } else {
                stack = PolygonStack::planar_stack(args.n, args.radii, args.a);
            }
        } catch (const json::exception& e) {
            throw InvalidInstanceError("solution file '" + args.solution_path +
                                       "' is not a solve document: " + e.what());
        }
    } else if (!args.masses.empty()) {
        stack = PolygonStack::planar_stack(args.n, args.radii, args.a);
        if (static_cast<int>(args.masses.size()) != stack.polygons()) {
            throw InvalidInstanceError("--masses needs one value per polygon");
        }
        solution.per_polygon_masses = args.masses;
        solution.nu = args.nu;
    } else {
        stack = PolygonStack::planar_stack(args.n, args.radii, args.a);
        solution = solve_equal_masses(stack, args.nu);
    }
    double sum = 0.0;
    for (double mass : solution.per_polygon_masses) sum += mass;
    solution.total_mass = stack.vertices * sum;

    const Configuration config = build_positions(stack);
    const SimState state = init_rotating(config, solution, stack.exponent);
    const MassAssignment assignment{solution.body_masses(stack.vertices), solution.nu};
    const Trajectory traj =
        integrate(state, assignment, stack.exponent, args.dt, args.steps, args.stride);

    if (!args.traj_path.empty()) {
        std::ofstream csv(args.traj_path);
        if (!csv) {
            throw InvalidInstanceError("cannot open trajectory file '" + args.traj_path + "'");
        }
        std::ostringstream params;
        params << "n=" << stack.vertices << " a=" << fmt17(stack.exponent)
               << " nu=" << fmt17(solution.nu) << " dt=" << fmt17(args.dt)
               << " steps=" << args.steps << " stride=" << args.stride;
        emit_csv_header(csv, "simulate", params.str());
        csv << "t";
        for (std::size_t i = 1; i <= traj.samples.front().size(); ++i) {
            csv << ",x_" << i << ",y_" << i;
        }
        csv << "\n";
        for (std::size_t s = 0; s < traj.samples.size(); ++s) {
            csv << fmt17(traj.times[s]);
            for (const auto& q : traj.samples[s]) {
                csv << "," << fmt17(q.real()) << "," << fmt17(q.imag());
            }
            csv << "\n";
        }
    }

    const DriftReport drift = drift_report(traj, assignment, stack.exponent);
    json doc{{"command", "simulate"},
             {"version", kToolVersion},
             {"params", stack_params(stack)},
             {"masses", solution.per_polygon_masses},
             {"nu", solution.nu},
             {"drift",
              json{{"max_relative_distance_drift", drift.max_relative_distance_drift},
                   {"conserved_quantity_drift", drift.conserved_quantity_drift},
                   {"first_invariant_drift", drift.first_invariant_drift},
                   {"second_invariant_drift", drift.second_invariant_drift},
                   {"steps", drift.steps},
                   {"dt", drift.dt}}}};
    Sink sink(args.output, out);
    emit_json(doc, sink);
    return 0;
}

struct SpectrumArgs {
    int n = 0;
    double a = 3.0;
    std::vector<double> radii;
    std::vector<double> heights;
    std::string format = "json";
    std::string output;
};

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out) {
    const PolygonStack stack = make_stack(args.n, args.a, args.radii, args.heights);
    Sink sink(args.output, out);
    std::ostream& os = sink.stream();
    if (args.format == "json") {
        json doc{{"command", "spectrum"},
                 {"version", kToolVersion},
                 {"params", stack_params(stack)},
                 {"mode_report", mode_report_json(stack)}};
        emit_json(doc, sink);
        return 0;
    }
    if (args.format == "csv") {
        const ModeExclusionReport report = mode_exclusion_report(stack);
        std::ostringstream params;
        params << "n=" << stack.vertices << " l=" << stack.polygons()
               << " a=" << fmt17(stack.exponent);
        emit_csv_header(os, "spectrum", params.str());
        os << "p,det_a,verdict_a,reduced_a,det_b,verdict_b,excluded\n";
        for (const ModeVerdict& row : report.modes) {
            os << row.p << "," << fmt17(row.det_a) << "," << verdict_name(row.verdict_a) << ",";
            if (row.reduced_a) os << fmt17(*row.reduced_a);
            os << ",";
            if (row.det_b) os << fmt17(*row.det_b);
            os << ",";
            if (row.verdict_b) os << verdict_name(*row.verdict_b);
            os << "," << reason_name(row.reason) << "\n";
        }
        return 0;
    }
    throw InvalidInstanceError("format must be 'json' or 'csv', got '" + args.format + "'");
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const CollisionError*>(&e)) return 4;
    if (dynamic_cast<const NumericallySingularError*>(&e)) return 2;
    if (dynamic_cast<const InvalidInstanceError*>(&e) ||
        dynamic_cast<const SingularGeometryError*>(&e) ||
        dynamic_cast<const ZeroTotalMassError*>(&e)) {
        return 3;
    }
    return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"inverse-problem toolkit for nested regular-polygon relative equilibria"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "compute the unique per-polygon masses for given radii and angular velocity");
    solve->add_option("--n", solve_args.n, "vertices per polygon")->required();
    solve->add_option("--a", solve_args.a, "potential exponent (a >= 2)");
    solve->add_option("--radii", solve_args.radii, "polygon radii")->required()->delimiter(',');
    solve->add_option("--heights", solve_args.heights, "polygon heights (non-planar)")
        ->delimiter(',');
    solve->add_option("--nu", solve_args.nu, "angular velocity parameter");
    solve->add_option("--output", solve_args.output, "write JSON to file instead of stdout");

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "grid scans: mass signs or secondary-diagonal "
                                                "products over the inner radius");
    scan->add_option("--mode", scan_args.mode, "sign | figure");
    scan->add_option("--n", scan_args.n, "vertices per polygon");
    scan->add_option("--a", scan_args.a, "potential exponent");
    scan->add_option("--r2", scan_args.r2, "outer radius");
    scan->add_option("--h1", scan_args.h1, "inner height (figure mode)");
    scan->add_option("--h2", scan_args.h2, "outer height (figure mode)");
    scan->add_option("--nu", scan_args.nu, "angular velocity parameter (sign mode)");
    scan->add_option("--p-low", scan_args.p_low, "first mode of the figure products");
    scan->add_option("--p-high", scan_args.p_high, "second mode (default N-1)");
    scan->add_option("--grid", scan_args.grid, "r1 grid as start:stop:count")->required();
    scan->add_option("--output", scan_args.output, "write CSV to file instead of stdout");

    CertifyArgs certify_args;
    CLI::App* certify = app.add_subcommand(
        "certify", "series-coefficient nonpositivity certificate for one (N, a, p)");
    certify->add_option("--n", certify_args.n, "vertices per polygon")->required();
    certify->add_option("--a", certify_args.a, "potential exponent");
    certify->add_option("--p", certify_args.p, "mode index")->required();
    certify->add_option("--order", certify_args.order, "number of coefficients to certify");
    certify->add_option("--x", certify_args.x, "evaluation point for the tail bound");
    certify->add_option("--output", certify_args.output, "write JSON to file instead of stdout");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "integrate the rotating solution and report distance drift");
    simulate->add_option("--n", sim_args.n, "vertices per polygon")->required();
    simulate->add_option("--a", sim_args.a, "potential exponent");
    simulate->add_option("--radii", sim_args.radii, "polygon radii")->delimiter(',');
    simulate->add_option("--masses", sim_args.masses, "per-polygon masses (skip solving)")
        ->delimiter(',');
    simulate->add_option("--solution", sim_args.solution_path,
                         "JSON document from 'solve' supplying masses and nu");
    simulate->add_option("--nu", sim_args.nu, "angular velocity parameter");
    simulate->add_option("--dt", sim_args.dt, "time step")->required();
    simulate->add_option("--steps", sim_args.steps, "step count")->required();
    simulate->add_option("--stride", sim_args.stride, "sampling stride");
    simulate->add_option("--traj", sim_args.traj_path, "trajectory CSV path (omit to skip)");
    simulate->add_option("--output", sim_args.output, "write report JSON to file");

    SpectrumArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "per-mode determinants, reduced determinants and exclusion verdicts");
    spectrum->add_option("--n", spectrum_args.n, "vertices per polygon")->required();
    spectrum->add_option("--a", spectrum_args.a, "potential exponent");
    spectrum->add_option("--radii", spectrum_args.radii, "polygon radii")
        ->required()
        ->delimiter(',');
    spectrum->add_option("--heights", spectrum_args.heights, "polygon heights")->delimiter(',');
    spectrum->add_option("--format", spectrum_args.format, "json | csv");
    spectrum->add_option("--output", spectrum_args.output, "write to file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << kToolName << ": " << e.what() << "\n";
        return 3;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args, out);
        if (scan->parsed()) return cmd_scan(scan_args, out);
        if (certify->parsed()) return cmd_certify(certify_args, out);
        if (simulate->parsed()) return cmd_simulate(sim_args, out);
        if (spectrum->parsed()) return cmd_spectrum(spectrum_args, out);
    } catch (const std::exception& e) {
        err << kToolName << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
    err << kToolName << ": no command given\n";
    return 3;
}

}  // namespace polyring
