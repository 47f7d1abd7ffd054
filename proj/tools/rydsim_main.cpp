#include <CLI11.hpp>
#include <string>

#include "rydberg/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rydsim: relativistic evolution of elliptic Rydberg wave packets"};
    app.require_subcommand(1);

    rydberg::RunConfig cfg;
    std::string mode = "exact";

    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "principal quantum number");
        sub->add_option("--ecc", cfg.eccentricity, "orbit eccentricity in [0, 1)");
        sub->add_option("--z", cfg.Z, "atomic number");
    };
    auto add_spinor = [&](CLI::App* sub) {
        sub->add_option("--a", cfg.a, "spin-up amplitude (renormalized with --b)");
        sub->add_option("--b", cfg.b, "spin-down amplitude");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--energy-mode", mode, "exact | lowest")
            ->check(CLI::IsMember({"exact", "lowest"}));
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output_path, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv | json | bin")
            ->check(CLI::IsMember({"csv", "json", "bin"}));
    };
    auto add_times = [&](CLI::App* sub) {
        sub->add_option("--tmax", cfg.t_max, "time span (units of Tp, or a.u. with --au)");
        sub->add_option("--samples", cfg.samples, "number of time samples");
        sub->add_flag("--au", cfg.times_in_au, "times in atomic units instead of Tp");
    };

    auto* w = app.add_subcommand("weights", "elliptic-state coefficients w_lm as CSV");
    add_spec(w);
    add_out(w);

    auto* e = app.add_subcommand("energies", "bound-level energies and expansion terms as CSV");
    add_spec(e);
    add_out(e);

    auto* ig = app.add_subcommand("integrals", "the eight radial overlaps per l as CSV");
    add_spec(ig);
    add_out(ig);

    auto* ac = app.add_subcommand("autocorr", "autocorrelation series as CSV");
    add_spec(ac);
    add_spinor(ac);
    add_mode(ac);
    add_times(ac);
    add_out(ac);
    ac->add_flag("--approx", cfg.approx, "circular-weight approximation");

    auto* sp = app.add_subcommand("spin", "spin expectation values as CSV");
    add_spec(sp);
    add_spinor(sp);
    add_mode(sp);
    add_times(sp);
    add_out(sp);

    auto* de = app.add_subcommand("density", "z = 0 probability density grid");
    add_spec(de);
    add_spinor(de);
    add_mode(de);
    add_out(de);
    de->add_option("--t", cfg.time_point, "evaluation time (units of Tp, or a.u. with --au)");
    de->add_flag("--au", cfg.times_in_au, "time in atomic units");
    de->add_option("--extent", cfg.half_extent_factor, "half extent in units of n^2/Z");
    de->add_option("--resolution", cfg.resolution, "grid points per side (<= 2048)");
    de->add_option("--field", cfg.density_field, "binary output field: total | large | small")
        ->check(CLI::IsMember({"total", "large", "small"}));

    auto* ts = app.add_subcommand("timescales", "characteristic times as JSON");
    add_spec(ts);
    add_out(ts);

    auto* st = app.add_subcommand("selftest", "run the built-in invariant checks");
    add_spec(st);
    add_out(st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) ? 2 : 0;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.energy_mode = (mode == "lowest") ? rydberg::EnergyMode::kLowestOrder
                                         : rydberg::EnergyMode::kExact;
    return rydberg::run(cfg);
}
