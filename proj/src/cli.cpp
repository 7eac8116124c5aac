#include "rsp/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "rsp/io.hpp"
#include "rsp/metrics.hpp"
#include "rsp/optimizer.hpp"
#include "rsp/parallel.hpp"
#include "rsp/validation.hpp"

namespace rsp::cli {
namespace {

struct Numerics {
    double fidelity = 0.0;
    double payoff = 0.0;
    bool converged = true;
};

// Optimized fidelity and payoff averaged over the shared probe directions.
Numerics optimized_numerics(const TwoQubitState& s, const OptimizerConfig& cfg)
{
    const auto betas = probe_betas(cfg.seed, cfg.sweep_beta_samples);
    std::vector<double> f, p;
    Numerics n;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const GreatCircle gc = frame_from_beta(betas[i]);
        const OptResult rf = optimize_decoding_fidelity(s, gc, cfg, 2 * i);
        const OptResult rp = optimize_decoding_payoff(s, gc, cfg, 2 * i + 1);
        f.push_back(rf.value);
        p.push_back(rp.value);
        n.converged = n.converged && rf.converged && rp.converged;
    }
    n.fidelity = compensated_mean(f);
    n.payoff = compensated_mean(p);
    return n;
}

std::vector<double> axis_grid(double step)
{
    if (!(step > 0.0) || step > 2.0) throw std::invalid_argument("step must lie in (0, 2]");
    const auto n = static_cast<std::size_t>(std::floor(2.0 / step + 1e-9)) + 1;
    std::vector<double> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(std::round((-1.0 + step * static_cast<double>(k)) * 1e12) / 1e12);
    return v;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

}  // namespace

std::vector<BellRow> sweep_bell(double step, const std::vector<double>& lambda3, bool physical_only,
                                bool compute_outside, const OptimizerConfig& cfg)
{
    validate_config(cfg);
    const auto grid = axis_grid(step);
    std::vector<BellRow> rows;
    for (double l3 : lambda3)
        for (double l1 : grid)
            for (double l2 : grid) {
                BellRow r;
                r.l1 = l1;
                r.l2 = l2;
                r.l3 = l3;
                r.in_region = bell_region_check(l1, l2, l3);
                if (physical_only && !r.in_region) continue;
                const ClosedForms c = closed_forms(Mat3::diag(l1, l2, l3), true);
                r.D = c.D;
                r.d = c.d;
                r.Q = c.Q;
                rows.push_back(r);
            }

    OptimizerConfig inner = cfg;
    inner.threads = 1;
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
        BellRow& r = rows[i];
        if (!r.in_region && !compute_outside) return;
        try {
            const Numerics n = optimized_numerics(bell_diagonal(r.l1, r.l2, r.l3), inner);
            r.fidelity = n.fidelity;
            r.payoff = n.payoff;
            r.converged = n.converged;
            r.computed = true;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });
    return rows;
}

std::vector<WernerRow> sweep_werner(std::size_t steps, const OptimizerConfig& cfg)
{
    validate_config(cfg);
    if (steps < 2) throw std::invalid_argument("werner: steps must be >= 2");
    std::vector<WernerRow> rows(steps);
    OptimizerConfig inner = cfg;
    inner.threads = 1;
    parallel_for(steps, cfg.threads, [&](std::size_t i) {
        const double lambda = static_cast<double>(i) / static_cast<double>(steps - 1);
        const Numerics n = optimized_numerics(werner(lambda), inner);
        rows[i] = {lambda, n.fidelity, n.payoff, n.converged};
    });
    return rows;
}

void write_bell_csv(std::ostream& out, const std::vector<BellRow>& rows)
{
    out << "lambda1,lambda2,lambda3,F_num,P_num,D,d,Q,in_region\n";
    for (const BellRow& r : rows) {
        out << fmt(r.l1) << ',' << fmt(r.l2) << ',' << fmt(r.l3) << ',';
        out << (r.computed ? fmt(r.fidelity) : "") << ',' << (r.computed ? fmt(r.payoff) : "") << ',';
        out << fmt(r.D) << ',' << fmt(r.d) << ',' << fmt(r.Q) << ',' << (r.in_region ? 1 : 0) << '\n';
    }
}

void write_werner_csv(std::ostream& out, const std::vector<WernerRow>& rows)
{
    out << "lambda,F_num,P_num,F_closed,P_closed\n";
    for (const WernerRow& r : rows) {
        out << fmt(r.lambda) << ',' << fmt(r.fidelity) << ',' << fmt(r.payoff) << ',' << fmt(0.5 * (1.0 + r.lambda))
            << ',' << fmt(r.lambda * r.lambda) << '\n';
    }
}

namespace {

struct GlobalFlags {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::size_t quad_points = 0, starts = 0, beta_samples = 0;
    double quad_tol = 0.0;
    unsigned threads = 0;
    bool quad_refine = false;
    bool physical_only = false;
    bool allow_unphysical = false;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* quad_points_opt = nullptr;
    CLI::Option* quad_tol_opt = nullptr;
    CLI::Option* starts_opt = nullptr;
    CLI::Option* beta_samples_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
};

OptimizerConfig resolve_config(const GlobalFlags& g)
{
    OptimizerConfig cfg;
    std::string path = g.config_path;
    if (path.empty())
        if (const char* env = std::getenv("RSP_CONFIG")) path = env;
    if (!path.empty()) cfg = io::config_from_json(io::read_json_file(path), cfg);
    if (g.seed_opt->count()) cfg.seed = g.seed;
    if (g.quad_points_opt->count()) cfg.quad_points = g.quad_points;
    if (g.quad_tol_opt->count()) cfg.quad_tol = g.quad_tol;
    if (g.quad_refine) cfg.quad_refine = true;
    if (g.starts_opt->count()) cfg.starts = g.starts;
    if (g.beta_samples_opt->count()) cfg.beta_samples = g.beta_samples;
    if (g.threads_opt->count()) cfg.threads = g.threads;
    try {
        validate_config(cfg);
    } catch (const std::invalid_argument& e) {
        throw io::InputError(e.what());
    }
    return cfg;
}

// Writes to --out when given, otherwise to the command's stdout stream.
void emit(const GlobalFlags& g, std::ostream& out, const std::string& text)
{
    if (g.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(g.out_path);
    if (!f) throw io::InputError("cannot write '" + g.out_path + "'");
    f << text;
}

TwoQubitState load_state(const std::string& path, bool allow_unphysical)
{
    const TwoQubitState s = io::state_from_json(io::read_json_file(path));
    if (!s.physical() && !allow_unphysical) {
        std::ostringstream os;
        os << "'" << path << "' is not a physical state (min eigenvalue " << s.min_eigenvalue()
           << "); pass --allow-unphysical to analyze it anyway";
        throw io::InputError(os.str());
    }
    return s;
}

std::string validation_table(const ValidationReport& rep)
{
    std::ostringstream os;
    os << std::left << std::setw(34) << "check" << std::setw(8) << "result" << std::setw(16) << "worst"
       << std::setw(12) << "tolerance" << "instances\n";
    for (const CheckResult& c : rep.checks) {
        os << std::left << std::setw(34) << c.name << std::setw(8) << (c.passed ? "PASS" : "FAIL") << std::setw(16)
           << std::setprecision(6) << c.worst << std::setw(12) << c.tolerance << c.instances << '\n';
    }
    os << rep.failures() << " of " << rep.checks.size() << " checks failed\n";
    return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Transmission efficiency of remote state preparation over two-qubit states"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--config", g.config_path, "JSON config file (fallback: $RSP_CONFIG)");
    app.add_option("--out", g.out_path, "Write the result here instead of stdout");
    g.seed_opt = app.add_option("--seed", g.seed, "RNG seed");
    g.quad_points_opt = app.add_option("--quad-points", g.quad_points, "Circle quadrature points");
    g.quad_tol_opt = app.add_option("--quad-tol", g.quad_tol, "Tolerance of the quadrature doubling check");
    app.add_flag("--quad-refine", g.quad_refine, "Double the quadrature grid until converged");
    g.starts_opt = app.add_option("--starts", g.starts, "Optimizer starts per objective");
    g.beta_samples_opt = app.add_option("--beta-samples", g.beta_samples, "Fibonacci directions per sweep");
    g.threads_opt = app.add_option("--threads", g.threads, "Worker threads");
    app.add_flag("--physical-only", g.physical_only, "Drop sweep rows outside the physical region");
    app.add_flag("--allow-unphysical", g.allow_unphysical, "Accept unphysical states and compute outside the region");

    std::string state_path;
    auto* analyze = app.add_subcommand("analyze", "Full report for one state (JSON)");
    analyze->add_option("state", state_path, "State JSON file")->required();

    double step = 0.1;
    std::vector<double> lambda3{0.0, 0.25, 0.5, 0.75};
    auto* bell = app.add_subcommand("sweep-bell", "Bell-diagonal grid (CSV)");
    bell->add_option("--step", step, "Grid step of lambda1 and lambda2")->capture_default_str();
    bell->add_option("--lambda3", lambda3, "lambda3 slices")->capture_default_str();

    std::size_t steps = 11;
    auto* wern = app.add_subcommand("werner", "Werner-state sweep (CSV)");
    wern->add_option("--steps", steps, "Number of lambda values in [0, 1]")->capture_default_str();

    std::string first_path, second_path;
    auto* cmp = app.add_subcommand("compare", "Order two states by transmission efficiency (JSON)");
    cmp->add_option("first", first_path, "State JSON file")->required();
    cmp->add_option("second", second_path, "State JSON file")->required();

    std::size_t instances = 100;
    auto* val = app.add_subcommand("validate", "Cross-check the Bloch formulas against the density-matrix oracle");
    val->add_option("--instances", instances, "Random instances per check")->capture_default_str();

    std::vector<double> lambdas;
    auto* region = app.add_subcommand("region", "Tetrahedron test for a Bell-diagonal triple (JSON)");
    region->add_option("lambdas", lambdas, "lambda1 lambda2 lambda3")->required()->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        const OptimizerConfig cfg = resolve_config(g);

        if (analyze->parsed()) {
            const TEReport rep = analyze_state(load_state(state_path, g.allow_unphysical), cfg);
            emit(g, out, io::to_json(rep).dump(2) + "\n");
            if (!rep.sweep.all_converged) {
                err << "warning: optimizer did not converge for every direction\n";
                return kNonConvergence;
            }
            return kSuccess;
        }
        if (bell->parsed()) {
            const auto rows = sweep_bell(step, lambda3, g.physical_only, g.allow_unphysical, cfg);
            std::ostringstream os;
            write_bell_csv(os, rows);
            emit(g, out, os.str());
            bool converged = true;
            for (const BellRow& r : rows) {
                if (!r.error.empty())
                    err << "row (" << r.l1 << ", " << r.l2 << ", " << r.l3 << "): " << r.error << '\n';
                converged = converged && r.converged && r.error.empty();
            }
            return converged ? kSuccess : kNonConvergence;
        }
        if (wern->parsed()) {
            const auto rows = sweep_werner(steps, cfg);
            std::ostringstream os;
            write_werner_csv(os, rows);
            emit(g, out, os.str());
            for (const WernerRow& r : rows)
                if (!r.converged) return kNonConvergence;
            return kSuccess;
        }
        if (cmp->parsed()) {
            const StateComparison c = compare_states(load_state(first_path, g.allow_unphysical),
                                                     load_state(second_path, g.allow_unphysical), cfg);
            emit(g, out, io::to_json(c).dump(2) + "\n");
            return kSuccess;
        }
        if (val->parsed()) {
            ValidationOptions opt;
            opt.seed = cfg.seed;
            opt.instances = instances;
            opt.quad_points = cfg.quad_points;
            const ValidationReport rep = run_validation(opt);
            emit(g, out, validation_table(rep));
            return rep.failures() == 0 ? kSuccess : kValidationFailure;
        }
        if (region->parsed()) {
            const auto m = bell_region_margins(lambdas[0], lambdas[1], lambdas[2]);
            const PhysicalityReport p = is_physical(bell_diagonal(lambdas[0], lambdas[1], lambdas[2]));
            const io::json j = {{"lambda", lambdas},
                                {"margins", m},
                                {"in_region", bell_region_check(lambdas[0], lambdas[1], lambdas[2])},
                                {"min_eigenvalue", p.min_eigenvalue},
                                {"physical", p.physical}};
            emit(g, out, j.dump(2) + "\n");
            return kSuccess;
        }
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace rsp::cli
