#include "bdh/cli.hpp"

#include <cmath>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bdh/errors.hpp"
#include "bdh/oracle.hpp"
#include "serialize.hpp"
#include "verify.hpp"

namespace bdh::cli {
namespace {

// Trajectory samplers are picked by --mode auto only below this many
// expected jumps for the whole batch.
constexpr double kAutoTrajectoryBudget = 2e8;
// Above this the tool warns that an explicitly requested trajectory run
// will not finish in practice.
constexpr double kImpracticalJumps = 1e10;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string exact_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct ParamFlags {
    State n = 0;
    double rho = 0.0;
    double nu = 0.0;
    double mu = 0.0;
    CLI::Option* rho_opt = nullptr;
    CLI::Option* nu_opt = nullptr;
    CLI::Option* mu_opt = nullptr;

    void attach(CLI::App* sub) {
        sub->add_option("--n,-N", n, "Largest state N (state space 0..N)")->required();
        rho_opt = sub->add_option("--rho", rho, "Load ratio nu/mu (sets nu = rho, mu = 1)");
        nu_opt = sub->add_option("--nu", nu, "Per-idle-node birth rate");
        mu_opt = sub->add_option("--mu", mu, "Per-busy-node death rate");
        rho_opt->excludes(nu_opt)->excludes(mu_opt);
        nu_opt->needs(mu_opt);
        mu_opt->needs(nu_opt);
    }

    ModelParams resolve() const {
        if (rho_opt->count() > 0) return ModelParams::from_rho(n, rho);
        if (nu_opt->count() > 0) return make_params(n, nu, mu);
        throw UsageError("give either --rho or both --nu and --mu");
    }

    void describe(Manifest& m, const ModelParams& p) const {
        m.parameters["N"] = std::to_string(p.N());
        m.parameters["rho"] = exact_number(p.rho());
        if (nu_opt->count() > 0) {
            m.parameters["nu"] = exact_number(p.nu());
            m.parameters["mu"] = exact_number(p.mu());
        }
    }
};

struct OutputFlags {
    std::string format = "json";
    std::string path;

    void attach(CLI::App* sub, bool csv_allowed = true) {
        auto* f = sub->add_option("--format", format, "Artifact format")->capture_default_str();
        f->check(csv_allowed ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
        sub->add_option("--output,-o", path, "Write the artifact here instead of standard output");
    }

    Format kind() const { return format == "csv" ? Format::csv : Format::json; }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open output path: " + path);
    file << text;
    file.flush();
    if (!file) throw UsageError("failed writing output path: " + path);
}

unsigned default_workers() {
    if (const char* env = std::getenv("BDH_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

std::vector<State> parse_ns(const std::vector<std::string>& raw) {
    std::vector<State> out;
    for (const auto& s : raw) {
        // Accept plain integers and forms such as 1e6.
        const double v = std::stod(s);
        if (!(v >= 1.0) || v != std::floor(v) || v > 9e15) throw ParameterError("not a valid N: " + s);
        out.push_back(static_cast<State>(v));
    }
    return out;
}

int cmd_dist(const ParamFlags& pf, const OutputFlags& of, std::ostream& out) {
    const ModelParams p = pf.resolve();
    const HeightDistribution d = height_distribution(p);
    Manifest m{"dist", {}, std::nullopt};
    pf.describe(m, p);
    const std::string text = of.kind() == Format::csv ? render_csv(m, dist_table(d)) : render_json(m, to_json(d));
    emit(text, of.path, out);
    return kOk;
}

int cmd_alpha(double rho, const OutputFlags& of, std::ostream& out) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("rho must be finite and > 0");
    Manifest m{"alpha", {{"rho", exact_number(rho)}}, std::nullopt};
    json data;
    data["rho"] = rho;
    data["f"] = f_rho(rho);
    CsvTable t;
    t.header = {"key", "value"};
    if (rho < 1.0) {
        const AlphaSolution s = solve_alpha(rho);
        const BoundConstants c = bound_constants(rho);
        data["applicable"] = true;
        data["alpha"] = s.alpha;
        data["residual"] = s.residual;
        data["iterations"] = s.iterations;
        data["bracket"] = {s.bracket_lo, s.bracket_hi};
        data["C1"] = c.C1;
        data["C2"] = c.C2;
        data["C3"] = c.C3;
        data["note"] = "";
        t.rows = {{"rho", format_number(rho)},          {"f", format_number(s.alpha)},
                  {"alpha", format_number(s.alpha)},     {"residual", format_number(s.residual)},
                  {"iterations", std::to_string(s.iterations)}, {"C1", format_number(c.C1)},
                  {"C2", format_number(c.C2)},           {"C3", format_number(c.C3)}};
    } else {
        data["applicable"] = false;
        data["alpha"] = nullptr;
        data["residual"] = nullptr;
        data["iterations"] = nullptr;
        data["bracket"] = nullptr;
        data["C1"] = nullptr;
        data["C2"] = nullptr;
        data["C3"] = nullptr;
        data["note"] = "rho >= 1: f(rho) = 1; alpha and C1, C2, C3 not applicable";
        t.rows = {{"rho", format_number(rho)}, {"f", "1"}, {"alpha", "not_applicable"},
                  {"C1", "not_applicable"},    {"C2", "not_applicable"}, {"C3", "not_applicable"}};
    }
    const std::string text = of.kind() == Format::csv ? render_csv(m, t) : render_json(m, data);
    emit(text, of.path, out);
    return kOk;
}

int cmd_verify(const VerifyOptions& opts, const OutputFlags& of, std::ostream& out, std::ostream& err) {
    if (opts.rhos.empty() || opts.Ns.empty()) throw UsageError("verify needs nonempty --rho and --n grids");
    const VerifyResult res = run_verify(opts);
    Manifest m{"verify", {}, std::nullopt};
    std::string rhos;
    for (double r : opts.rhos) rhos += (rhos.empty() ? "" : ",") + exact_number(r);
    std::string ns;
    for (State n : opts.Ns) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    m.parameters["rho"] = rhos;
    m.parameters["N"] = ns;
    m.parameters["lemma2_rounding"] = opts.lemma2_rounding == OffsetRounding::floor ? "floor" : "ceil";
    m.parameters["strict"] = opts.strict ? "true" : "false";
    if (opts.override_c3) m.parameters["override_c3"] = exact_number(*opts.override_c3);

    json checks = json::array();
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::size_t info = 0;
    for (const auto& r : res.checks) {
        checks.push_back(to_json(r));
        if (r.status == BoundStatus::not_applicable) {
            ++skipped;
        } else if (!r.asserted) {
            ++info;
        } else if (r.status == BoundStatus::pass) {
            ++passed;
        } else {
            ++failed;
        }
    }
    json data;
    data["checks"] = checks;
    data["summary"] = {{"total", res.checks.size()},
                       {"passed", passed},
                       {"failed", failed},
                       {"not_applicable", skipped},
                       {"informational", info}};
    data["pass"] = res.pass();
    emit(render_json(m, data), of.path, out);

    for (const auto& r : res.failures()) {
        err << "FAIL " << r.id << " N=" << r.n << " rho=" << format_number(r.rho) << " lhs=" << format_number(r.lhs)
            << " rhs=" << format_number(r.rhs) << " margin=" << format_number(r.margin) << "\n";
    }
    return res.pass() ? kOk : kCheckFailed;
}

struct SimulateFlags {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::string mode = "auto";
    unsigned workers = 1;
    double delta = 0.01;
    bool assert_dkw = false;
    std::uint64_t step_limit = kDefaultStepLimit;
};

int cmd_simulate(const ParamFlags& pf, const SimulateFlags& sf, const OutputFlags& of, std::ostream& out,
                 std::ostream& err) {
    const ModelParams p = pf.resolve();
    const double log_jumps = log_expected_excursion_steps(p) + std::log(static_cast<double>(sf.samples));

    SampleMode mode = SampleMode::ladder;
    if (sf.mode == "auto") {
        mode = log_jumps <= std::log(kAutoTrajectoryBudget) ? SampleMode::jump_chain : SampleMode::ladder;
    } else {
        mode = *parse_sample_mode(sf.mode);
        if (mode != SampleMode::ladder && log_jumps > std::log(kImpracticalJumps)) {
            err << "warning: about e^" << format_number(log_jumps) << " jumps expected for " << sf.samples
                << " trajectory excursions; consider --mode ladder\n";
        }
    }

    SimulationConfig cfg;
    cfg.params = p;
    cfg.n_samples = sf.samples;
    cfg.seed = sf.seed;
    cfg.mode = mode;
    cfg.worker_count = sf.workers;
    cfg.delta = sf.delta;
    cfg.step_limit = sf.step_limit;

    const HeightDistribution exact = height_distribution(p);
    const SimulationSummary s = run_batch(cfg, exact);

    // Worker count does not influence results, so it is not part of the manifest.
    Manifest m{"simulate", {}, sf.seed};
    pf.describe(m, p);
    m.parameters["samples"] = std::to_string(sf.samples);
    m.parameters["mode"] = to_string(mode);
    m.parameters["mode_requested"] = sf.mode;
    m.parameters["delta"] = exact_number(sf.delta);
    m.parameters["step_limit"] = std::to_string(sf.step_limit);

    const std::string text =
        of.kind() == Format::csv ? render_csv(m, simulation_table(s, exact)) : render_json(m, to_json(s, exact));
    emit(text, of.path, out);
    if (!s.dkw_pass()) {
        err << "DKW check failed: sup distance " << format_number(s.sup_distance) << " > epsilon "
            << format_number(s.dkw_epsilon) << "\n";
        if (sf.assert_dkw) return kCheckFailed;
    }
    return kOk;
}

int cmd_sweep(double rho, const std::vector<State>& Ns, const OutputFlags& of, std::ostream& out) {
    const auto rows = convergence_table(rho, Ns);
    Manifest m{"sweep", {{"rho", exact_number(rho)}}, std::nullopt};
    std::string ns;
    for (State n : Ns) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    m.parameters["N"] = ns;
    std::string text;
    if (of.kind() == Format::csv) {
        text = render_csv(m, convergence_csv(rows));
    } else {
        json data;
        data["rows"] = json::array();
        for (const auto& r : rows) data["rows"].push_back(to_json(r));
        text = render_json(m, data);
    }
    emit(text, of.path, out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact law, asymptotics and Monte Carlo checks for the busy-period height of a "
                 "birth-and-death chain",
                 "bdheight"};
    app.set_version_flag("--version", BDH_VERSION);
    app.require_subcommand(1);

    ParamFlags dist_params;
    OutputFlags dist_out;
    auto* dist = app.add_subcommand("dist", "Survival function, pmf and moments of the height");
    dist_params.attach(dist);
    dist_out.attach(dist);

    double alpha_rho = 0.0;
    OutputFlags alpha_out;
    auto* alpha = app.add_subcommand("alpha", "Solve for alpha(rho) and the bound constants");
    alpha->add_option("--rho", alpha_rho, "Load ratio")->required();
    alpha_out.attach(alpha);

    VerifyOptions vopts;
    OutputFlags verify_out;
    std::vector<std::string> verify_ns;
    std::string rounding = "floor";
    double override_c3 = 0.0;
    auto* verify = app.add_subcommand("verify", "Check the finite-N inequalities on a (rho, N) grid");
    verify->add_option("--rho", vopts.rhos, "Load ratios")->delimiter(',')->capture_default_str();
    verify->add_option("--n,-N", verify_ns, "State-space sizes (default 1e3,1e4,1e5,1e6)")->delimiter(',');
    verify->add_option("--lemma2-rounding", rounding, "Integer part of the log offsets: floor (as stated) or ceil")
        ->check(CLI::IsMember({"floor", "ceil"}))
        ->capture_default_str();
    verify->add_flag("--strict", vopts.strict, "Assert large-N checks for every grid N");
    auto* c3_opt = verify->add_option("--test-override-c3", override_c3, "Replace C3 (harness self-test)");
    c3_opt->group("");
    verify_out.attach(verify, false);

    ParamFlags sim_params;
    SimulateFlags sim;
    OutputFlags sim_out;
    sim.workers = default_workers();
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo heights compared with the exact law");
    sim_params.attach(simulate);
    simulate->add_option("--samples", sim.samples, "Number of excursions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "64-bit seed")->capture_default_str();
    simulate->add_option("--mode", sim.mode, "Sampler")
        ->check(CLI::IsMember({"auto", "jump-chain", "full-ctmc", "ladder"}))
        ->capture_default_str();
    simulate->add_option("--workers", sim.workers, "Worker threads (default from BDH_WORKERS, else 1)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--delta", sim.delta, "DKW confidence parameter")
        ->check(CLI::Range(1e-300, 0.999999))
        ->capture_default_str();
    simulate->add_option("--step-limit", sim.step_limit, "Per-excursion jump budget")->capture_default_str();
    simulate->add_flag("--assert", sim.assert_dkw, "Exit 1 when the DKW check fails");
    sim_out.attach(simulate);

    double sweep_rho = 0.0;
    std::vector<std::string> sweep_ns;
    OutputFlags sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Mean and variance over N against their limits");
    sweep->add_option("--rho", sweep_rho, "Load ratio")->required();
    sweep->add_option("--ns,--n", sweep_ns, "Ascending N list")->delimiter(',')->required();
    sweep_out.attach(sweep);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (dist->parsed()) return cmd_dist(dist_params, dist_out, out);
        if (alpha->parsed()) return cmd_alpha(alpha_rho, alpha_out, out);
        if (verify->parsed()) {
            if (!verify_ns.empty()) vopts.Ns = parse_ns(verify_ns);
            vopts.lemma2_rounding = rounding == "ceil" ? OffsetRounding::ceil : OffsetRounding::floor;
            if (c3_opt->count() > 0) vopts.override_c3 = override_c3;
            for (double r : vopts.rhos) {
                if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("rho must be finite and > 0");
            }
            return cmd_verify(vopts, verify_out, out, err);
        }
        if (simulate->parsed()) return cmd_simulate(sim_params, sim, sim_out, out, err);
        if (sweep->parsed()) return cmd_sweep(sweep_rho, parse_ns(sweep_ns), sweep_out, out);
    } catch (const CircuitBreakerError& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace bdh::cli
