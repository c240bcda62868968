#include "sharpfr/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include <json.hpp>

#include "sharpfr/certified.hpp"
#include "sharpfr/deficit.hpp"
#include "sharpfr/errors.hpp"
#include "sharpfr/parallel.hpp"
#include "sharpfr/penrose_geom.hpp"
#include "sharpfr/schrod_cert.hpp"
#include "sharpfr/sphere_cert.hpp"
#include "sharpfr/table.hpp"
#include "sharpfr/wave_cert.hpp"

namespace sharpfr::cli {

namespace {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    int lo;
    int hi;
};

Range d_range(const RunConfig& c, int lo, int hi) {
    if (c.d) return {*c.d, *c.d};
    return {c.d_min.value_or(lo), c.d_max.value_or(hi)};
}

std::filesystem::path output_dir(const RunConfig& c) {
    if (!c.output.empty()) return c.output;
    if (const char* env = std::getenv("SHARPFR_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
    return ".";
}

class Writer {
public:
    Writer(std::filesystem::path dir, Format format) : dir_(std::move(dir)), format_(format) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    Format format() const { return format_; }

    void write(const std::string& name, const std::string& content) const {
        const auto path = dir_ / name;
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + path.string() + " for writing");
        os << content;
        os.close();
        if (!os) throw IoError("write failed for " + path.string());
    }

    void write_json(const std::string& stem, const json& j) const { write(stem + ".json", j.dump(2) + "\n"); }

private:
    std::filesystem::path dir_;
    Format format_;
};

json value_json(const CertifiedValue& v) {
    return {{"value", v.value}, {"err_bound", v.err_bound}, {"lower", v.lower()}, {"upper", v.upper()}};
}

json report_json(const CertReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"label", c.label}, {"lhs", c.lhs}, {"rhs", c.rhs},
                          {"verdict", std::string(to_string(c.verdict))}});
    }
    return {{"verdict", std::string(to_string(r.verdict))},
            {"epsilon", r.epsilon},
            {"flags", r.flags},
            {"checks", checks}};
}

void summary(std::ostream& out, std::string_view command, const std::string& subject, Verdict v) {
    out << command << ' ' << subject << ' ' << to_string(v) << '\n';
}

Verdict sphere_tables(const RunConfig& c, const Writer& w, std::ostream& out) {
    const Range r = d_range(c, 2, 60);
    const auto tables = sphere::emit_tables(r.lo, r.hi, c.r_max.value_or(sphere::kDefaultRadius), c.tol, c.jobs);
    if (w.format() == Format::Csv) {
        w.write("sphere_thresholds.csv", tables.thresholds.to_csv());
        w.write("sphere_cells.csv", tables.cells.to_csv());
    } else {
        w.write_json("sphere_tables", {{"schema", 1},
                                       {"command", "sphere-tables"},
                                       {"thresholds", tables.thresholds.to_json()},
                                       {"cells", tables.cells.to_json()}});
    }
    summary(out, "sphere-tables", "d=" + std::to_string(r.lo) + ".." + std::to_string(r.hi), Verdict::Pass);
    return Verdict::Pass;
}

Verdict sphere_verify(const RunConfig& c, const Writer& w, std::ostream& out) {
    const Range r = d_range(c, 2, 60);
    const double radius = c.r_max.value_or(sphere::kDefaultRadius);
    std::vector<sphere::SphereSweepRow> rows;
    if (c.k_max) {
        rows.resize(static_cast<std::size_t>(r.hi - r.lo + 1));
        parallel_for(rows.size(), c.jobs, [&](std::size_t i) {
            const int d = r.lo + static_cast<int>(i);
            sphere::GapOptions opts;
            opts.split = sphere::default_k_split(d);
            opts.split.k_numeric = *c.k_max;
            opts.split.k_tail = *c.k_max + 1;
            opts.radius = radius;
            opts.tol = c.tol;
            rows[i] = sphere::sweep_dimension(d, opts);
        });
    } else {
        rows = sphere::sweep(r.lo, r.hi, radius, c.tol, c.jobs);
    }

    Verdict overall = Verdict::Pass;
    json entries = json::array();
    CoeffTable csv({{"d"}, {"k_numeric"}, {"k_tail"}, {"tail_cited"}, {"c0_value"}, {"c0_err_bound"},
                    {"epsilon"}, {"verdict"}});
    for (const auto& row : rows) {
        const CertReport rep = sphere::gap_certificate(row);
        overall = worst(overall, rep.verdict);
        json ck = json::array();
        for (std::size_t i = 0; i < row.ck.size(); ++i) {
            json e = value_json(row.ck[i]);
            e["k"] = static_cast<int>(i) + 2;
            ck.push_back(e);
        }
        entries.push_back({{"d", row.params.d},
                           {"p", row.params.p},
                           {"k_numeric", row.split.k_numeric},
                           {"k_tail", row.split.k_tail},
                           {"tail_cited", row.split.tail_cited},
                           {"c0", value_json(row.c0)},
                           {"ck", ck},
                           {"report", report_json(rep)}});
        csv.add_row({std::int64_t{row.params.d}, std::int64_t{row.split.k_numeric},
                     std::int64_t{row.split.k_tail}, std::string(row.split.tail_cited ? "true" : "false"),
                     row.c0.value, row.c0.err_bound, rep.epsilon, std::string(to_string(rep.verdict))});
        summary(out, "sphere-verify", "d=" + std::to_string(row.params.d), rep.verdict);
    }
    if (w.format() == Format::Csv) {
        w.write("sphere_verify.csv", csv.to_csv());
    } else {
        w.write_json("sphere_verify", {{"schema", 1},
                                       {"command", "sphere-verify"},
                                       {"radius", radius},
                                       {"tol", c.tol},
                                       {"entries", entries},
                                       {"verdict", std::string(to_string(overall))}});
    }
    return overall;
}

Verdict schrod_verify(const RunConfig& c, const Writer& w, std::ostream& out) {
    const Range r = d_range(c, 1, 20);
    const int m_max = c.m_max.value_or(500);
    std::vector<schrod::CmCertificate> certs(static_cast<std::size_t>(r.hi - r.lo + 1));
    parallel_for(certs.size(), c.jobs, [&](std::size_t i) {
        certs[i] = schrod::cm_certificate(r.lo + static_cast<int>(i), m_max, std::max(c.tol, 1e-12));
    });

    Verdict overall = Verdict::Pass;
    json entries = json::array();
    CoeffTable csv({{"d"}, {"m_max"}, {"strichartz_constant"}, {"c1"}, {"min_gap"}, {"envelope_spread"},
                    {"verdict"}});
    for (const auto& cert : certs) {
        overall = worst(overall, cert.report.verdict);
        const auto params = schrod::SchrodParams::make(cert.d);
        const double a_d = schrod::strichartz_constant(cert.d).value;
        const double c1 = schrod::cm_sum(params, 1);
        json cm = json::array();
        for (const auto& row : cert.per_m) cm.push_back(row.cm);
        entries.push_back({{"d", cert.d},
                           {"p", params.p},
                           {"strichartz_constant", a_d},
                           {"c1", c1},
                           {"m_max", cert.m_max},
                           {"min_gap", cert.min_gap},
                           {"envelope_spread", cert.envelope_spread},
                           {"cm_from_2", cm},
                           {"report", report_json(cert.report)}});
        csv.add_row({std::int64_t{cert.d}, std::int64_t{cert.m_max}, a_d, c1, cert.min_gap,
                     cert.envelope_spread, std::string(to_string(cert.report.verdict))});
        summary(out, "schrod-verify", "d=" + std::to_string(cert.d), cert.report.verdict);
    }
    if (w.format() == Format::Csv) {
        w.write("schrod_verify.csv", csv.to_csv());
    } else {
        w.write_json("schrod_verify", {{"schema", 1},
                                       {"command", "schrod-verify"},
                                       {"entries", entries},
                                       {"verdict", std::string(to_string(overall))}});
    }
    return overall;
}

Verdict wave_audit(const RunConfig& c, const Writer& w, std::ostream& out) {
    const Range r = d_range(c, 3, 3);
    const int ell_max = c.ell_max.value_or(200);
    const int h_max = 1000;
    std::vector<wave::WaveAudit> audits(static_cast<std::size_t>(r.hi - r.lo + 1));
    parallel_for(audits.size(), c.jobs,
                 [&](std::size_t i) { audits[i] = wave::wave_audit(r.lo + static_cast<int>(i), ell_max, h_max); });

    Verdict overall = Verdict::Pass;
    json entries = json::array();
    CoeffTable modes({{"d"}, {"ell"}, {"ratio"}, {"rho_implied"}});
    CoeffTable csv({{"d"}, {"p"}, {"nu_d"}, {"c1_scanned"}, {"c1_closed_form"}, {"argmax"}, {"sup_ratio"},
                    {"rho_implied"}, {"rho_claimed"}, {"verdict"}});
    for (const auto& a : audits) {
        overall = worst(overall, a.report.verdict);
        json e = a.json;
        e["report"] = report_json(a.report);
        entries.push_back(e);
        for (const auto& row : a.modes.table.rows()) modes.add_row(row);
        csv.add_row({a.json["d"].get<std::int64_t>(), a.json["p"].get<double>(), a.json["nu_d"].get<double>(),
                     a.scan.c1_scanned, a.scan.c1_closed, std::int64_t{a.scan.argmax}, a.modes.sup_ratio,
                     a.modes.rho_implied, a.modes.rho_claimed, std::string(to_string(a.report.verdict))});
        summary(out, "wave-audit", "d=" + a.json["d"].dump(), a.report.verdict);
    }
    if (w.format() == Format::Csv) {
        w.write("wave_audit.csv", csv.to_csv());
        w.write("wave_modes.csv", modes.to_csv());
    } else {
        w.write_json("wave_audit", {{"schema", 1},
                                    {"command", "wave-audit"},
                                    {"entries", entries},
                                    {"verdict", std::string(to_string(overall))}});
    }
    return overall;
}

Verdict penrose_check(const RunConfig& c, const Writer& w, std::ostream& out) {
    const double r_max = c.r_max.value_or(1e3);
    CertReport rep;
    rep.subject = "penrose";

    double omega0_worst = 0.0;
    const int grid = 10000;
    for (int i = 0; i <= grid; ++i) {
        omega0_worst = std::max(omega0_worst, penrose::omega0_identity_residual(r_max * i / grid));
    }
    rep.add({"omega0 identity residual", omega0_worst, 1e-12,
             omega0_worst <= 1e-12 ? Verdict::Pass : Verdict::Fail});

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coord(-3.0, 3.0), radius(0.05, 3.0);
    double conformal_worst = 0.0;
    double roundtrip_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const penrose::MinkowskiRadialPoint pt{coord(rng), radius(rng)};
        conformal_worst = std::max(conformal_worst, penrose::conformal_fd_residual(pt, 1e-5));
        const auto back = penrose::penrose_inverse(penrose::penrose_forward(pt));
        roundtrip_worst = std::max({roundtrip_worst, std::abs(back.t - pt.t), std::abs(back.r - pt.r)});
    }
    rep.add({"conformal factor finite-difference residual", conformal_worst, 1e-6,
             conformal_worst <= 1e-6 ? Verdict::Pass : Verdict::Fail});
    rep.add({"forward/inverse roundtrip deviation", roundtrip_worst, 1e-12,
             roundtrip_worst <= 1e-12 ? Verdict::Pass : Verdict::Fail});

    double profile_worst = 0.0;
    for (int d : {3, 5, 7}) {
        for (int i = 0; i <= 1000; ++i) profile_worst = std::max(profile_worst, penrose::profile_residual(d, 0.1 * i));
    }
    rep.add({"optimizer profile residual", profile_worst, 1e-12,
             profile_worst <= 1e-12 ? Verdict::Pass : Verdict::Fail});

    if (w.format() == Format::Csv) {
        CoeffTable t({{"check"}, {"value"}, {"bound"}, {"verdict"}});
        for (const auto& chk : rep.checks) {
            t.add_row({chk.label, chk.lhs, chk.rhs, std::string(to_string(chk.verdict))});
        }
        w.write("penrose_check.csv", t.to_csv());
    } else {
        w.write_json("penrose_check", {{"schema", 1},
                                       {"command", "penrose-check"},
                                       {"r_max", r_max},
                                       {"report", report_json(rep)}});
    }
    summary(out, "penrose-check", "r_max=" + format_double(r_max), rep.verdict);
    return rep.verdict;
}

Verdict deficit_demo(const RunConfig& c, const Writer& w, std::ostream& out) {
    const int d = c.d.value_or(1);
    const int m_max = c.m_max.value_or(5);
    const auto lens = schrod::lens_model_check(d, m_max, std::max(48, 2 * m_max + 8), std::max(64, 4 * m_max));
    CertReport rep = lens.report;
    rep.subject = "deficit d=" + std::to_string(d);

    double worst_first = 1e300, worst_second = 1e300;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (int i = 0; i < 20; ++i) {
        const auto model = deficit::random_model(3 + i % 4, 4 + i % 5, 2.5 + 0.25 * (i % 6), 1000 + i);
        Eigen::VectorXcd f(model.n()), g(model.n());
        for (Eigen::Index j = 0; j < model.n(); ++j) {
            f[j] = {normal(rng), normal(rng)};
            g[j] = {normal(rng), normal(rng)};
        }
        const auto fd = deficit::fd_compare(model, f, g);
        worst_first = std::min(worst_first, fd.first_order);
        worst_second = std::min(worst_second, fd.second_order);
    }
    rep.add({"1.8 below observed FD order of psi'", 1.8, worst_first,
             worst_first >= 1.8 ? Verdict::Pass : Verdict::Fail});
    rep.add({"1.8 below observed FD order of psi''", 1.8, worst_second,
             worst_second >= 1.8 ? Verdict::Pass : Verdict::Fail});

    if (w.format() == Format::Csv) {
        CoeffTable t({{"m"}, {"real_ratio"}, {"imag_ratio"}});
        for (std::size_t i = 0; i + 1 < lens.diagonal_ratio.size(); i += 2) {
            t.add_row({static_cast<std::int64_t>(2 + i / 2), lens.diagonal_ratio[i], lens.diagonal_ratio[i + 1]});
        }
        w.write("deficit_demo.csv", t.to_csv());
    } else {
        w.write_json("deficit_demo", {{"schema", 1},
                                      {"command", "deficit-demo"},
                                      {"d", d},
                                      {"m_max", m_max},
                                      {"gradient_norm", lens.gradient_norm},
                                      {"model_scale", lens.model_scale},
                                      {"diagonal_ratio", lens.diagonal_ratio},
                                      {"max_offdiag", lens.max_offdiag},
                                      {"fd_first_order_min", worst_first},
                                      {"fd_second_order_min", worst_second},
                                      {"report", report_json(rep)}});
    }
    summary(out, "deficit-demo", "d=" + std::to_string(d), rep.verdict);
    return rep.verdict;
}

}  // namespace

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Pass: return kExitPass;
        case Verdict::Fail: return kExitFail;
        case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitFail;
}

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::SphereTables, Command::SphereVerify, Command::SchrodVerify, Command::WaveAudit,
                      Command::PenroseCheck, Command::DeficitDemo, Command::All}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::string_view to_string(Command c) {
    switch (c) {
        case Command::SphereTables: return "sphere-tables";
        case Command::SphereVerify: return "sphere-verify";
        case Command::SchrodVerify: return "schrod-verify";
        case Command::WaveAudit: return "wave-audit";
        case Command::PenroseCheck: return "penrose-check";
        case Command::DeficitDemo: return "deficit-demo";
        case Command::All: return "all";
    }
    return "all";
}

void validate(const RunConfig& c) {
    if (c.d && (c.d_min || c.d_max)) throw DomainError("--d cannot be combined with --d-min/--d-max");
    if (c.d_min && c.d_max && *c.d_min > *c.d_max) throw DomainError("--d-min must not exceed --d-max");
    if (!(c.tol > 0.0)) throw DomainError("--tol must be positive");
    if (c.r_max && !(*c.r_max > 0.0)) throw DomainError("--r-max must be positive");
    if (c.jobs < 1) throw DomainError("--jobs must be at least 1");
    if (c.k_max && *c.k_max < 2) throw DomainError("--k-max must be at least 2");
    if (c.m_max && *c.m_max < 2) throw DomainError("--m-max must be at least 2");
    if (c.ell_max && *c.ell_max < 2) throw DomainError("--ell-max must be at least 2");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        const Writer w(output_dir(config), config.format);
        Verdict v = Verdict::Pass;
        const bool all = config.command == Command::All;
        auto wants = [&](Command c) { return all || config.command == c; };
        if (wants(Command::SphereTables)) v = worst(v, sphere_tables(config, w, out));
        if (wants(Command::SphereVerify)) v = worst(v, sphere_verify(config, w, out));
        if (wants(Command::SchrodVerify)) v = worst(v, schrod_verify(config, w, out));
        if (wants(Command::WaveAudit)) v = worst(v, wave_audit(config, w, out));
        if (wants(Command::PenroseCheck)) v = worst(v, penrose_check(config, w, out));
        if (wants(Command::DeficitDemo)) v = worst(v, deficit_demo(config, w, out));
        return exit_code(v);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace sharpfr::cli
