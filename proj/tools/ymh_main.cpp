#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ymh/config.hpp"
#include "ymh/hodge.hpp"
#include "ymh/io.hpp"
#include "ymh/random_fields.hpp"
#include "ymh/selftest.hpp"
#include "ymh/solve.hpp"

using namespace ymh;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfig = 1, kMaxIterations = 2, kRuntime = 3 };

struct Flags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

RunConfig load(const Flags& f) {
    if (f.config.empty()) throw InvalidArgument("--config PATH is required");
    RunConfig c = load_config(f.config);
    if (f.seed) c.seed = *f.seed;
    if (!f.out.empty()) c.output = f.out;
    return c;
}

fs::path prepare_output(const RunConfig& c) {
    fs::path dir(c.output);
    fs::create_directories(dir);
    return dir;
}

template <class Fn>
void write(const fs::path& path, Fn&& fn) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    fn(f);
}

struct Start {
    Section u;
    Gauge1Form a;
    std::optional<AnsatzField> ansatz;
};

Start initial_state(const RunConfig& c, const BundleData& b, double eps) {
    const std::optional<AnsatzSpec> spec = c.ansatz ? c.ansatz : default_ansatz(b.geometry, b.chern);
    if (spec) {
        AnsatzField an = vortex_ansatz(*spec, b, eps);
        return {an.section, an.gauge, std::move(an)};
    }
    return {perturbed_ground_state(b.geometry, c.seed), Gauge1Form(b.geometry), std::nullopt};
}

void write_fields(const fs::path& dir, const Section& u, const Gauge1Form& a, const BundleData& b, double eps) {
    write(dir / "u.dat", [&](std::ostream& os) { io::write_section(os, u); });
    write(dir / "A.dat", [&](std::ostream& os) { io::write_cochain(os, a); });
    write(dir / "F.dat", [&](std::ostream& os) { io::write_cochain(os, curvature(a, b)); });
    if (eps < 1.0) write(dir / "mu.dat", [&](std::ostream& os) { io::write_cochain(os, energy_density(u, a, b, eps)); });
    write(dir / "bundle.dat", [&](std::ostream& os) { io::write_bundle(os, b); });
}

// Writes the sparse vorticity; returns false when u vanishes on a plaquette corner.
bool write_vorticity(const fs::path& dir, const Section& u, const Gauge1Form& a, const BundleData& b, io::Record& rec) {
    try {
        const VorticityField v = vorticity(u, a, b);
        write(dir / "vorticity.txt", [&](std::ostream& os) { io::write_vorticity(os, v); });
        rec.add("vortex_mass", vortex_mass(v));
        rec.add("chern_match", std::string(matches_chern(v, b.chern) ? "true" : "false"));
        return true;
    } catch (const ZeroOnPlaquette& e) {
        rec.add("vorticity", std::string("undefined (u vanishes on ") + std::to_string(e.flagged().size()) + " plaquettes)");
        return false;
    }
}

int cmd_minimize(const Flags& flags) {
    const RunConfig c = load(flags);
    const fs::path dir = prepare_output(c);
    const double eps = c.epsilons.front();
    const BundleData b = build_background(c.geometry(), c.chern_matrix());
    Start s = initial_state(c, b, eps);

    std::ofstream iters(dir / "iterations.csv", std::ios::binary);
    iters << "iteration,kinetic,potential,curvature,total,grad_norm\n";
    MinimizerOptions o = c.minimizer_options();
    o.on_record = [&](const IterationRecord& r) {
        iters << r.iteration << ',' << io::format_double(r.energy.kinetic) << ',' << io::format_double(r.energy.potential)
              << ',' << io::format_double(r.energy.curvature) << ',' << io::format_double(r.energy.total) << ','
              << io::format_double(r.grad_norm) << '\n';
    };
    const MinimizerResult r = minimize(std::move(s.u), std::move(s.a), b, eps, o);

    io::Record rec;
    rec.add("converged", std::string(r.converged ? "true" : "false"));
    rec.add("iterations", static_cast<long>(r.iterations));
    io::add_energy(rec, r.energy);
    if (eps < 1.0) rec.add("G_over_log_eps", r.energy.total / std::abs(std::log(eps)));
    rec.add("grad_norm", r.grad_norm);
    rec.add("el_residual", r.el_residual);
    rec.add("london_residual", r.london_residual);
    write_fields(dir, r.section, r.gauge_field, b, eps);
    write_vorticity(dir, r.section, r.gauge_field, b, rec);
    write(dir / "summary.txt", [&](std::ostream& os) { io::write_record(os, rec); });
    io::write_record(std::cout, rec);
    return r.converged ? kOk : kMaxIterations;
}

int cmd_sweep(const Flags& flags) {
    const RunConfig c = load(flags);
    if (c.epsilons.size() < 2) throw InvalidArgument("sweep needs at least two epsilon values");
    const fs::path dir = prepare_output(c);
    const std::vector<SweepRecord> recs =
        epsilon_sweep(c.ansatz, c.geometry(), c.chern_matrix(), c.epsilons, c.sweep_options());

    std::ostringstream table;
    table << "epsilon,G_total,G_over_log_eps,kinetic,potential,curvature,vortex_mass,chern_pairing,london_residual,"
             "hminus1_to_target,iterations\n";
    bool all_converged = true;
    for (const auto& r : recs) {
        const auto& e = r.result.energy;
        table << io::format_double(r.epsilon) << ',' << io::format_double(e.total) << ','
              << io::format_double(r.g_over_log_eps) << ',' << io::format_double(e.kinetic) << ','
              << io::format_double(e.potential) << ',' << io::format_double(e.curvature) << ','
              << io::format_double(r.mass) << ',' << r.chern_pairing << ',' << io::format_double(r.result.london_residual)
              << ',' << io::format_double(r.hminus1_to_target) << ',' << r.result.iterations << '\n';
        all_converged = all_converged && r.result.converged;
    }
    io::write_file((dir / "sweep.csv").string(), table.str());
    std::cout << table.str();
    return all_converged ? kOk : kMaxIterations;
}

int cmd_selftest() {
    SelftestOptions o;
    o.log = &std::cout;
    const SelftestReport r = run_selftest(o);
    const auto failed = r.failures();
    std::cout << (r.checks.size() - failed.size()) << "/" << r.checks.size() << " invariants hold\n";
    for (const auto& f : failed)
        std::cout << "failed: " << f.module << " / " << f.invariant << " measured " << io::format_double(f.measured)
                  << " limit " << io::format_double(f.limit) << '\n';
    return failed.empty() ? kOk : 1;
}

int cmd_hodge_test(const Flags& flags) {
    const RunConfig c = load(flags);
    const fs::path dir = prepare_output(c);
    const TorusGeometry g = c.geometry();
    const int n = g.dim();
    FieldSampler rng(c.seed);
    std::ostringstream table;
    table << "degree,reconstruction,orthogonality,london_residual,poisson_residual,iterative_vs_spectral\n";
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        const Cochain w = rng.cochain(g, k);
        const HodgeParts p = hodge_decompose(w);
        Cochain exact(g, k);
        Cochain coexact(g, k);
        if (k > 0) exact = exterior_derivative(p.exact_potential);
        if (k < n) coexact = codifferential(p.coexact_potential);
        const double recon = l2_norm(exact + coexact + p.harmonic - w) / l2_norm(w);
        const double ww = inner_product(w, w);
        const double orth = std::max({std::abs(inner_product(exact, coexact)), std::abs(inner_product(exact, p.harmonic)),
                                      std::abs(inner_product(coexact, p.harmonic))}) /
                            ww;
        const Cochain v = solve_london(w);
        const double london = l2_norm(laplacian(v) + v - w) / l2_norm(w);
        const Cochain f = w - harmonic_projection(w);
        const Cochain q = solve_poisson(f);
        const double poisson = l2_norm(laplacian(q) - f) / l2_norm(f);
        const double iter = l2_norm(solve_london(w, SolverMethod::iterative) - v) / l2_norm(v);
        worst = std::max({worst, recon, orth, london, poisson});
        table << k << ',' << io::format_double(recon) << ',' << io::format_double(orth) << ',' << io::format_double(london)
              << ',' << io::format_double(poisson) << ',' << io::format_double(iter) << '\n';
    }
    io::write_file((dir / "hodge_test.csv").string(), table.str());
    std::cout << table.str();
    return worst <= 1e-10 ? kOk : kRuntime;
}

int cmd_ansatz(const Flags& flags) {
    const RunConfig c = load(flags);
    const fs::path dir = prepare_output(c);
    const double eps = c.epsilons.front();
    const BundleData b = build_background(c.geometry(), c.chern_matrix());
    const std::optional<AnsatzSpec> spec = c.ansatz ? c.ansatz : default_ansatz(b.geometry, b.chern);
    if (!spec) throw InvalidArgument("ansatz needs a nontrivial bundle or an ansatz section in the config");
    const AnsatzField an = vortex_ansatz(*spec, b, eps);

    io::Record rec;
    io::add_energy(rec, e_energy(an.section, b, eps), "E_");
    io::add_energy(rec, g_energy(an.section, an.gauge, b, eps), "G_");
    const double mass = vortex_mass(an.prescribed);
    rec.add("prescribed_mass", mass);
    if (eps < 1.0) rec.add("E_over_pi_mass_log_eps", e_energy(an.section, b, eps).total / (std::numbers::pi * mass * std::abs(std::log(eps))));
    write_fields(dir, an.section, an.gauge, b, eps);
    write(dir / "prescribed_vorticity.txt", [&](std::ostream& os) { io::write_vorticity(os, an.prescribed); });
    write_vorticity(dir, an.section, an.gauge, b, rec);
    write(dir / "summary.txt", [&](std::ostream& os) { io::write_record(os, rec); });
    io::write_record(std::cout, rec);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Abelian Higgs vortex energies on periodic lattices"};
    app.require_subcommand(1);
    Flags flags;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", flags.config, "run configuration (JSON)");
        if (needs_config) opt->required();
        sub->add_option("--out", flags.out, "output directory (overrides the config)");
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        sub->add_option("--threads", flags.threads, "kernel threads")->check(CLI::PositiveNumber);
    };
    auto* minimize_cmd = app.add_subcommand("minimize", "minimize G_eps for the first epsilon");
    auto* sweep_cmd = app.add_subcommand("sweep", "epsilon continuation with a summary table");
    auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");
    auto* hodge_cmd = app.add_subcommand("hodge-test", "Hodge decomposition and solver residual report");
    auto* ansatz_cmd = app.add_subcommand("ansatz", "write the vortex ansatz without minimizing");
    for (auto* s : {minimize_cmd, sweep_cmd, hodge_cmd, ansatz_cmd}) add_common(s, true);
    add_common(selftest_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfig;
    }
    for (auto* s : {minimize_cmd, sweep_cmd, hodge_cmd, ansatz_cmd, selftest_cmd})
        if (s->count("--seed") > 0) flags.seed = seed;
    if (flags.threads > 0) omp_set_num_threads(flags.threads);

    try {
        if (*minimize_cmd) return cmd_minimize(flags);
        if (*sweep_cmd) return cmd_sweep(flags);
        if (*selftest_cmd) return cmd_selftest();
        if (*hodge_cmd) return cmd_hodge_test(flags);
        if (*ansatz_cmd) return cmd_ansatz(flags);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const WindingMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kConfig;
}
