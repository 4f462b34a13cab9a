#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qfront/depth.hpp"
#include "qfront/dynamics.hpp"
#include "qfront/frontier.hpp"
#include "qfront/harness.hpp"
#include "qfront/io.hpp"
#include "qfront/oracles.hpp"
#include "qfront/qsl.hpp"

namespace qfront::cli {

namespace {

using io::json;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything is rendered into a string first so a failing run never leaves a
// half-written file behind.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw OutputError("cannot open '" + path + "' for writing");
    }
    f << text;
    f.flush();
    if (!f) {
        throw OutputError("failed writing '" + path + "'");
    }
}

std::string render(const json& j) {
    return j.dump(2) + "\n";
}

json document(const char* command) {
    return json{{"schema", io::kSchemaVersion}, {"command", command}};
}

struct StaircaseArgs {
    int n = 20;
    std::size_t grid = 2001;
    double snap = kDefaultTolerances.snap;
    std::string format = "csv";
    std::string out;
};

int cmd_staircase(const StaircaseArgs& a, std::ostream& out) {
    const auto rows = frontier::staircase_curve(a.n, frontier::unit_interval_grid(a.grid), a.snap);
    std::ostringstream os;
    if (a.format == "csv") {
        io::write_staircase_csv(os, rows);
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(io::to_json(r));
        }
        json doc = document("staircase");
        doc["n"] = a.n;
        doc["rows"] = std::move(arr);
        os << render(doc);
    }
    emit(os.str(), a.out, out);
    return 0;
}

struct SimulateArgs {
    bool cluster_flip = false;
    std::string hamiltonian_file;
    int n = 0;
    int m = 0;
    double T = 1.0;
    double g = 0.0;
    double t_max = 0.0;
    double eps_c = kDefaultTolerances.eps_c;
    double eps_p = kDefaultTolerances.eps_p;
    double snap = kDefaultTolerances.snap;
    double krylov = kDefaultTolerances.krylov;
    std::size_t depth_samples = kDefaultTolerances.depth_samples;
    std::string trajectory_file;
    std::size_t trajectory_points = 257;
    std::string out;
};

// Horizon for specs that carry no time scale.
constexpr double kFallbackHorizon = 10.0;

io::HamiltonianSpec load_spec(const SimulateArgs& a) {
    if (a.cluster_flip) {
        json j{{"type", "cluster_flip"}, {"n", a.n}, {"m", a.m}};
        if (a.g > 0.0) {
            j["g"] = a.g;
        } else {
            j["T"] = a.T;
        }
        return io::parse_hamiltonian_spec(j);
    }
    std::ifstream f(a.hamiltonian_file);
    if (!f) {
        throw ValidationError("cannot read Hamiltonian file '" + a.hamiltonian_file + "'");
    }
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ValidationError("Hamiltonian file is not valid JSON: " + std::string(e.what()));
    }
    return io::parse_hamiltonian_spec(j);
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto spec = load_spec(a);
    const HermitianOperator h = io::build_hamiltonian(spec);
    const int n = qubit_count(h.dim());
    const auto [down, up] = model::endpoint_states(n);
    double t_max = a.t_max;
    if (!(t_max > 0.0)) {
        t_max = io::default_horizon(spec).value_or(kFallbackHorizon);
    }

    const dynamics::Propagator prop(h, down, dynamics::PropagatorMode::cyclic, a.krylov);
    dynamics::ChargingOptions copt;
    copt.eps_c = a.eps_c;
    const auto outcome = dynamics::find_complete_charging_time(prop, up, t_max, copt);

    json doc = document("simulate");
    doc["hamiltonian"] = io::to_json(spec);
    doc["n"] = n;
    doc["t_max"] = t_max;
    doc["tolerances"] = {{"eps_c", a.eps_c}, {"eps_p", a.eps_p}, {"snap_tol", a.snap}, {"krylov", a.krylov}};
    if (const auto* ev = std::get_if<dynamics::ChargingEvent>(&outcome)) {
        const auto report = qsl::qsl_report(h, down, *ev, a.krylov);
        const auto profile =
            depth::trajectory_depth(prop, n, ev->time, {.samples = a.depth_samples, .eps_p = a.eps_p});
        doc["status"] = "charged";
        doc["charging_event"] = io::to_json(*ev);
        doc["qsl"] = io::to_json(report);
        doc["depth"] = io::to_json(profile);
        doc["certificate"] = report.eta ? io::to_json(frontier::certified_depth(n, *report.eta, a.snap)) : json();
    } else {
        const auto& nc = std::get<dynamics::NotCharged>(outcome);
        doc["status"] = "not_charged";
        doc["not_charged"] = io::to_json(nc);
        doc["qsl"] = io::to_json(qsl::qsl_bounds(h, down, a.krylov));
        doc["charging_event"] = nullptr;
        doc["depth"] = nullptr;
        doc["certificate"] = nullptr;
    }

    std::string trajectory_csv;
    if (!a.trajectory_file.empty()) {
        const double omega = spec.type == io::HamiltonianType::battery ? spec.omega : 1.0;
        const auto battery = model::battery_hamiltonian({n, omega});
        std::ostringstream os;
        io::write_trajectory_csv(os, dynamics::sample_trajectory(h, prop, up, battery, t_max, a.trajectory_points));
        trajectory_csv = os.str();
        doc["trajectory_csv"] = a.trajectory_file;
    }
    emit(render(doc), a.out, out);
    if (!a.trajectory_file.empty()) {
        emit(trajectory_csv, a.trajectory_file, out);
    }
    return 0;
}

struct CertifyArgs {
    int n = 0;
    double eta = 0.0;
    double snap = kDefaultTolerances.snap;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
    json doc = document("certify");
    doc["certificate"] = io::to_json(frontier::certified_depth(a.n, a.eta, a.snap));
    out << render(doc);
    return 0;
}

struct VerifyArgs {
    int n_max = 8;
    int trials = 200;
    int oracle_trials = 100;
    int spectator_cases = 20;
    std::uint64_t seed = 7;
    std::string out;
};

// Size caps of the individual checks.
constexpr int kSaturationMax = 12;
constexpr int kFleetMax = 10;
constexpr int kOracleMax = 6;
constexpr int kGeometryMax = 6;
constexpr int kDualityMax = 64;
constexpr std::size_t kDualityGrid = 10000;

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    bool pass = true;
    json doc = document("verify");
    doc["n_max"] = a.n_max;
    doc["trials"] = a.trials;
    doc["seed"] = a.seed;

    {
        int cases = 0;
        int passed = 0;
        json violations = json::array();
        for (int n = 1; n <= std::min(a.n_max, kSaturationMax); ++n) {
            for (int m = 1; m <= n; ++m) {
                const auto r = frontier::verify_saturation(n, m);
                ++cases;
                if (r.pass()) {
                    ++passed;
                } else {
                    violations.push_back(io::to_json(r));
                }
            }
        }
        pass = pass && passed == cases;
        doc["saturation"] = {{"cases", cases}, {"passed", passed}, {"violations", std::move(violations)}};
    }
    {
        json runs = json::array();
        int total = 0;
        int failed = 0;
        for (int n = 1; n <= std::min(a.n_max, kFleetMax); ++n) {
            for (int m = 1; m <= n; ++m) {
                const auto r = frontier::randomized_product_fleet(n, m, a.trials, a.seed);
                total += r.trials;
                failed += static_cast<int>(r.violations.size());
                runs.push_back(io::to_json(r));
            }
        }
        pass = pass && failed == 0;
        doc["fleet"] = {{"trials", total}, {"failed", failed}, {"runs", std::move(runs)}};
    }
    {
        const auto r = frontier::spectator_invariance(a.spectator_cases, a.seed);
        pass = pass && r.pass();
        doc["spectator"] = io::to_json(r);
    }
    {
        const auto r = frontier::geometry_checks(std::min(a.n_max, kGeometryMax), a.seed);
        pass = pass && r.pass();
        doc["geometry"] = io::to_json(r);
    }
    {
        const auto r = oracles::oracle_equivalence(a.oracle_trials, std::min(a.n_max, kOracleMax), a.seed);
        pass = pass && r.pass();
        doc["oracle"] = {{"trials", r.trials},
                         {"depth_agree", r.depth_agree},
                         {"partition_agree", r.partition_agree},
                         {"pass", r.pass()},
                         {"violations", r.failures}};
    }
    {
        const auto r = frontier::integer_duality(kDualityMax, kDualityGrid);
        pass = pass && r.pass();
        doc["duality"] = io::to_json(r);
    }
    doc["pass"] = pass;
    emit(render(doc), a.out, out);
    return pass ? 0 : 1;
}

struct SweepArgs {
    int n_min = 1;
    int n_max = 8;
    double T = 1.0;
    std::string format = "csv";
    std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    if (a.n_min > a.n_max) {
        throw ValidationError("sweep: --n-min exceeds --n-max");
    }
    std::vector<std::pair<int, int>> cases;
    for (int n = a.n_min; n <= a.n_max; ++n) {
        for (int m = 1; m <= n; ++m) {
            cases.emplace_back(n, m);
        }
    }
    std::vector<frontier::SaturationReport> reports(cases.size());
    const auto count = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        reports[i] = frontier::verify_saturation(cases[i].first, cases[i].second, {.T = a.T});
    }

    std::ostringstream os;
    if (a.format == "csv") {
        os << "n,m,g,T,eta,eta_max,delta_h,e_ml,tau_mt,tau_ml,ent_u,d_cert,pass\n";
        for (const auto& r : reports) {
            const double eta = r.qsl.eta.value_or(NAN);
            os << r.n << ',' << r.m << ',' << io::format_double(r.g) << ','
               << io::format_double(r.event ? r.event->time : NAN) << ',' << io::format_double(eta) << ','
               << io::format_double(frontier::eta_max(r.n, frontier::ceil_div(r.n, r.m))) << ','
               << io::format_double(r.qsl.delta_h) << ',' << io::format_double(r.qsl.e_ml) << ','
               << io::format_double(r.qsl.tau_mt) << ',' << io::format_double(r.qsl.tau_ml) << ',' << r.depth.ent_u
               << ',' << (r.certificate ? r.certificate->depth_certified : 0) << ',' << (r.pass() ? 1 : 0) << '\n';
        }
    } else {
        json rows = json::array();
        for (const auto& r : reports) {
            rows.push_back(io::to_json(r));
        }
        json doc = document("sweep");
        doc["rows"] = std::move(rows);
        os << render(doc);
    }
    emit(os.str(), a.out, out);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Speed-depth frontier for complete quantum charging"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)")
        ->envname("QFRONT_THREADS")
        ->check(CLI::NonNegativeNumber);

    const auto formats = CLI::IsMember({"csv", "json"});

    StaircaseArgs st;
    auto* staircase = app.add_subcommand("staircase", "Certified depth against eta on a grid over (0, 1]");
    staircase->add_option("--n", st.n, "Qubit count")->check(CLI::Range(1, 1 << 20));
    staircase->add_option("--grid", st.grid, "Grid points")->check(CLI::Range(1, 10000000));
    staircase->add_option("--snap-tol", st.snap)->check(CLI::PositiveNumber);
    staircase->add_option("--format", st.format)->check(formats);
    staircase->add_option("--out", st.out, "Output file (default stdout)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Charge the all-down state and report rate and depth");
    auto* cf = simulate->add_flag("--cluster-flip", sim.cluster_flip, "Balanced cluster-flip Hamiltonian");
    auto* hf = simulate->add_option("--hamiltonian", sim.hamiltonian_file, "Hamiltonian spec (JSON)");
    cf->excludes(hf);
    simulate->add_option("--n", sim.n)->check(CLI::Range(1, kMaxDenseQubits));
    simulate->add_option("--m", sim.m)->check(CLI::Range(1, kMaxDenseQubits));
    simulate->add_option("--t", sim.T, "Charging time (sets g = pi / 2T)")->check(CLI::PositiveNumber);
    simulate->add_option("--g", sim.g, "Coupling (overrides --t)")->check(CLI::PositiveNumber);
    simulate->add_option("--t-max", sim.t_max, "Search horizon")->check(CLI::PositiveNumber);
    simulate->add_option("--eps-c", sim.eps_c)->check(CLI::PositiveNumber);
    simulate->add_option("--eps-p", sim.eps_p)->check(CLI::PositiveNumber);
    simulate->add_option("--snap-tol", sim.snap)->check(CLI::PositiveNumber);
    simulate->add_option("--krylov-tol", sim.krylov)->check(CLI::PositiveNumber);
    simulate->add_option("--depth-samples", sim.depth_samples)->check(CLI::Range(3, 1000000));
    simulate->add_option("--trajectory", sim.trajectory_file, "Also write a trajectory CSV");
    simulate->add_option("--trajectory-points", sim.trajectory_points)->check(CLI::Range(2, 1000000));
    simulate->add_option("--out", sim.out, "Output file (default stdout)");

    CertifyArgs cert;
    auto* certify = app.add_subcommand("certify", "Depth certified by an observed rate");
    certify->add_option("--n", cert.n)->required()->check(CLI::Range(1, 1 << 30));
    certify->add_option("--eta", cert.eta)->required();
    certify->add_option("--snap-tol", cert.snap)->check(CLI::PositiveNumber);

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Run the frontier verification suite");
    verify->add_option("--n-max", ver.n_max)->check(CLI::Range(1, kSaturationMax));
    verify->add_option("--trials", ver.trials, "Fleet trials per (n, m)")->check(CLI::Range(1, 1000000));
    verify->add_option("--oracle-trials", ver.oracle_trials)->check(CLI::Range(1, 1000000));
    verify->add_option("--spectator-cases", ver.spectator_cases)->check(CLI::Range(1, 1000000));
    verify->add_option("--seed", ver.seed);
    verify->add_option("--out", ver.out, "Output file (default stdout)");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Balanced cluster flips for every (n, m) in range");
    sweep->add_option("--n-min", sw.n_min)->check(CLI::Range(1, kMaxDenseQubits));
    sweep->add_option("--n-max", sw.n_max)->check(CLI::Range(1, kMaxDenseQubits));
    sweep->add_option("--t", sw.T)->check(CLI::PositiveNumber);
    sweep->add_option("--format", sw.format)->check(formats);
    sweep->add_option("--out", sw.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) {
            if (!sim.cluster_flip && sim.hamiltonian_file.empty()) {
                throw CLI::RequiredError("simulate needs --cluster-flip or --hamiltonian");
            }
            if (sim.cluster_flip && (sim.n == 0 || sim.m == 0)) {
                throw CLI::RequiredError("--cluster-flip needs --n and --m");
            }
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    if (threads > 0) {
        omp_set_num_threads(threads);
    }
    try {
        if (staircase->parsed()) {
            return cmd_staircase(st, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim, out);
        }
        if (certify->parsed()) {
            return cmd_certify(cert, out);
        }
        if (verify->parsed()) {
            return cmd_verify(ver, out);
        }
        return cmd_sweep(sw, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qfront::cli
