#include "rydberg/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rydberg/constants.hpp"
#include "rydberg/radial_integrals.hpp"
#include "rydberg/timescales.hpp"

namespace rydberg {

namespace {

// locale-independent float formatting, 17 significant digits
std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

struct OutputSink {
    std::ofstream file;
    std::ostream* os = nullptr;
    explicit OutputSink(const std::string& path) {
        if (path.empty()) {
            os = &std::cout;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw std::ios_base::failure("cannot open output path: " + path);
            os = &file;
        }
    }
};

EllipticSpec spec_of(const RunConfig& c) {
    EllipticSpec s;
    s.n = c.n;
    s.eccentricity = c.eccentricity;
    s.Z = c.Z;
    const double norm = std::hypot(c.a, c.b);
    if (norm == 0.0)
        throw std::invalid_argument("--a/--b: spinor must not be the zero vector");
    s.a = c.a / norm;  // CLI convenience: renormalize the typed spinor
    s.b = c.b / norm;
    return s;
}

std::vector<double> time_grid(const RunConfig& c, double Tp_au) {
    if (c.samples < 1 || c.samples > (1 << 22))
        throw std::invalid_argument("--samples: must lie in [1, 4194304]");
    if (!(c.t_max > 0.0)) throw std::invalid_argument("--tmax: must be positive");
    const double scale = c.times_in_au ? 1.0 : Tp_au;
    std::vector<double> ts(c.samples);
    for (int i = 0; i < c.samples; ++i)
        ts[i] = c.t_max * scale * (c.samples == 1 ? 0.0 : static_cast<double>(i) / (c.samples - 1));
    return ts;
}

void write_manifest(const RunConfig& c, const std::string& out_path) {
    const std::string line = manifest_json(c);
    if (out_path.empty()) {
        std::cerr << line << "\n";
        return;
    }
    std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
    if (mf) mf << line << "\n";
}

int cmd_weights(const RunConfig& c) {
    EllipticSpec s = spec_of(c);
    s.validate();
    WeightTable t = build_weight_table(s.n, s.gamma());
    OutputSink sink(c.output_path);
    *sink.os << "l,m,w\n";
    for (const auto& e : t.entries())
        *sink.os << e.l << "," << e.m << "," << fmt(e.w) << "\n";
    return 0;
}

int cmd_energies(const RunConfig& c) {
    EllipticSpec s = spec_of(c);
    s.validate();
    OutputSink sink(c.output_path);
    *sink.os << "n,l,j2,kappa,E_exact_m0c2,E_fs_hartree,delta4,delta6\n";
    for (int l = 0; l < c.n; ++l) {
        for (int ss : {+1, -1}) {
            if (l == 0 && ss < 0) continue;
            const int kappa = ss > 0 ? -(l + 1) : l;
            DiracLevel lv = make_level(c.n, kappa, c.Z);
            ExpansionBudget b = expansion_budget(c.n, lv.k, c.Z);
            *sink.os << c.n << "," << l << "," << (2 * l + ss) << "," << kappa << ","
                     << fmt(lv.energy_exact) << "," << fmt(lv.energy_fs) << ","
                     << fmt(b.delta4) << "," << fmt(b.delta6) << "\n";
        }
    }
    return 0;
}

int cmd_integrals(const RunConfig& c) {
    EllipticSpec s = spec_of(c);
    s.validate();
    OutputSink sink(c.output_path);
    *sink.os << "l,Gp,Gm,Fp,Fm,Gpm,Fpm,Fmp,Fmp_prime,err_estimate\n";
    for (int l = 0; l < c.n; ++l) {
        RadialIntegralSet v = compute_integral_set(c.n, l, c.Z);
        *sink.os << l << "," << fmt(v.Gp) << "," << fmt(v.Gm) << "," << fmt(v.Fp) << ","
                 << fmt(v.Fm) << "," << fmt(v.Gpm) << "," << fmt(v.Fpm) << "," << fmt(v.Fmp)
                 << "," << fmt(v.Fmp_prime) << "," << fmt(v.err_estimate) << "\n";
    }
    return 0;
}

int cmd_autocorr(const RunConfig& c) {
    PacketState p = build_packet(spec_of(c), c.energy_mode);
    std::vector<double> ts = time_grid(c, p.Tp_au);
    AutocorrSeries A = c.approx ? autocorrelation_approx(p, ts) : autocorrelation(p, ts);
    OutputSink sink(c.output_path);
    *sink.os << (c.times_in_au ? "t_au" : "t_over_Tp") << ",reA,imA,absA\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double tval = c.times_in_au ? ts[i] : ts[i] / p.Tp_au;
        *sink.os << fmt(tval) << "," << fmt(A.values[i].real()) << ","
                 << fmt(A.values[i].imag()) << "," << fmt(std::abs(A.values[i])) << "\n";
    }
    return 0;
}

int cmd_spin(const RunConfig& c) {
    PacketState p = build_packet(spec_of(c), c.energy_mode);
    std::vector<double> ts = time_grid(c, p.Tp_au);
    SpinSeries s = spin_expectation(p, ts);
    OutputSink sink(c.output_path);
    *sink.os << (c.times_in_au ? "t_au" : "t_over_Tp") << ",sx,sy,sz\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double tval = c.times_in_au ? ts[i] : ts[i] / p.Tp_au;
        *sink.os << fmt(tval) << "," << fmt(s.sx[i]) << "," << fmt(s.sy[i]) << ","
                 << fmt(s.sz[i]) << "\n";
    }
    return 0;
}

void write_bin_grid(std::ostream& os, const DensityGrid& g, const std::string& field) {
    static_assert(sizeof(double) == 8);
    const std::vector<double>* data = &g.rho_total;
    if (field == "large") data = &g.rho_large;
    else if (field == "small") data = &g.rho_small;
    else if (field != "total")
        throw std::invalid_argument("--field: must be total, large or small");
    char header[32] = {0};
    std::memcpy(header, "RYDG", 4);
    const std::uint32_t nx = static_cast<std::uint32_t>(g.nx);
    const std::uint32_t ny = static_cast<std::uint32_t>(g.ny);
    std::memcpy(header + 4, &nx, 4);
    std::memcpy(header + 8, &ny, 4);
    std::memcpy(header + 12, &g.half_extent, 8);
    os.write(header, 32);
    os.write(reinterpret_cast<const char*>(data->data()),
             static_cast<std::streamsize>(data->size() * sizeof(double)));
}

int cmd_density(const RunConfig& c) {
    if (c.resolution < 2 || c.resolution > 2048)
        throw std::invalid_argument("--resolution: must lie in [2, 2048]");
    if (!(c.half_extent_factor > 0.0))
        throw std::invalid_argument("--extent: must be positive");
    PacketState p = build_packet(spec_of(c), c.energy_mode);
    const double t_au = c.times_in_au ? c.time_point : c.time_point * p.Tp_au;
    const double half = c.half_extent_factor * static_cast<double>(c.n) * c.n / c.Z;
    DensityGrid g = density_grid(p, t_au, half, c.resolution, c.resolution);
    OutputSink sink(c.output_path);
    if (c.format == "bin") {
        write_bin_grid(*sink.os, g, c.density_field);
        return 0;
    }
    *sink.os << "x,y,rho_large,rho_small,rho_total\n";
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const std::size_t idx = static_cast<std::size_t>(ix) * g.ny + iy;
            *sink.os << fmt(g.x_at(ix)) << "," << fmt(g.y_at(iy)) << ","
                     << fmt(g.rho_large[idx]) << "," << fmt(g.rho_small[idx]) << ","
                     << fmt(g.rho_total[idx]) << "\n";
        }
    return 0;
}

int cmd_timescales(const RunConfig& c) {
    TimescaleReport r = precession_time(c.n, c.eccentricity, c.Z);
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["eccentricity"] = r.eccentricity;
    j["Z"] = r.Z;
    j["l_av"] = r.l_av;
    j["Tp_au"] = r.Tp_au;
    j["Tp_seconds"] = r.Tp_seconds;
    j["TK_au"] = r.TK_au;
    j["Trad_au"] = r.Trad_au;
    j["ratio_Tp_Trad"] = r.ratio_Tp_Trad;
    OutputSink sink(c.output_path);
    *sink.os << j.dump(2) << "\n";
    return 0;
}

int cmd_selftest(const RunConfig& c) {
    std::ostringstream rep;
    bool ok = true;
    // weight normalization across an (n, gamma) grid
    double worst_norm = 0.0, worst_mean = 0.0;
    for (int n : {1, 2, 3, 5, 10, 25, 50, 100}) {
        for (int gi = 0; gi <= 19; ++gi) {
            const double gamma = M_PI_2 * gi / 19.0;
            WeightTable t = build_weight_table(n, gamma);
            worst_norm = std::max(worst_norm, std::fabs(t.sum_squares() - 1.0));
            worst_mean = std::max(worst_mean, std::fabs(average_angular_momentum(t)
                                                        - (n - 1) * std::cos(gamma)));
        }
    }
    ok &= worst_norm < 1e-12 && worst_mean < 1e-10;
    rep << "weights: max |sum w^2 - 1| = " << fmt(worst_norm)
        << ", max |mean m - (n-1)cos g| = " << fmt(worst_mean) << "\n";
    // spin-orbit partner degeneracy
    double worst_deg = 0.0;
    for (int l = 1; l <= 49; ++l)
        worst_deg = std::max(worst_deg,
                             std::fabs(make_level(50, l, 92).binding_hartree
                                       - make_level(50, -l, 92).binding_hartree));
    ok &= worst_deg == 0.0;
    rep << "degeneracy: max |E-_l - E+_{l-1}| = " << fmt(worst_deg) << "\n";
    // quadrature
    for (auto [n, Z] : {std::pair{c.n, c.Z}, std::pair{5, 1}}) {
        SelftestReport q = quadrature_selftest(n, Z);
        ok &= q.max_norm_dev < 5e-11 && q.max_doubling_change < 1e-9;
        rep << "quadrature n=" << n << " Z=" << Z
            << ": max |G+F-1| = " << fmt(q.max_norm_dev)
            << ", max doubling change = " << fmt(q.max_doubling_change)
            << ", max |Fmp - Fmp'| = " << fmt(q.max_symmetry_dev) << "\n";
    }
    // universal lifetime ratio
    const double want = 8.0 * M_PI * kAlpha / 3.0;
    double worst_ratio = 0.0;
    for (int n : {10, 30, 50})
        for (double e : {0.1, 0.4, 0.8})
            for (int Z : {1, 40, 92})
                worst_ratio = std::max(worst_ratio,
                                       std::fabs(precession_time(n, e, Z).ratio_Tp_Trad / want - 1.0));
    ok &= worst_ratio < 1e-14;
    rep << "lifetime ratio: max rel dev from 8 pi alpha / 3 = " << fmt(worst_ratio) << "\n";
    rep << (ok ? "selftest: PASS\n" : "selftest: FAIL\n");
    OutputSink sink(c.output_path);
    *sink.os << rep.str();
    return ok ? 0 : 1;
}

}  // namespace

std::string manifest_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["command"] = c.command;
    nlohmann::ordered_json flags;
    flags["n"] = c.n;
    flags["ecc"] = c.eccentricity;
    flags["z"] = c.Z;
    flags["a"] = c.a;
    flags["b"] = c.b;
    flags["tmax"] = c.t_max;
    flags["samples"] = c.samples;
    flags["au"] = c.times_in_au;
    flags["approx"] = c.approx;
    flags["t"] = c.time_point;
    flags["extent"] = c.half_extent_factor;
    flags["resolution"] = c.resolution;
    flags["format"] = c.format;
    flags["field"] = c.density_field;
    j["flags"] = flags;
    j["alpha"] = kAlpha;
    j["au_time_seconds"] = kAuTimeSeconds;
    j["energy_mode"] = c.energy_mode == EnergyMode::kExact ? "exact" : "lowest";
    j["version"] = "0.1.0";
    return j.dump();
}

int run(const RunConfig& c) {
    try {
        int rc = 0;
        if (c.command == "weights") rc = cmd_weights(c);
        else if (c.command == "energies") rc = cmd_energies(c);
        else if (c.command == "integrals") rc = cmd_integrals(c);
        else if (c.command == "autocorr") rc = cmd_autocorr(c);
        else if (c.command == "spin") rc = cmd_spin(c);
        else if (c.command == "density") rc = cmd_density(c);
        else if (c.command == "timescales") rc = cmd_timescales(c);
        else if (c.command == "selftest") rc = cmd_selftest(c);
        else throw std::invalid_argument("unknown command: " + c.command);
        write_manifest(c, c.output_path);
        return rc;
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rydberg
