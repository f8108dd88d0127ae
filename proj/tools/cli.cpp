#include "cli.hpp"

#include <xyqpt/geometry.hpp>
#include <xyqpt/oracle.hpp>
#include <xyqpt/parallel.hpp>
#include <xyqpt/topology.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace xyqpt::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct ScanConfig {
    double lambda_min = 0.0;
    double lambda_max = 2.0;
    int steps = 21;
    std::optional<double> gamma;
    std::optional<int> n_sites;
    std::string output_path;
    std::string format = "csv";
    double quadrature_tol = 1e-6;
    std::string grid = "64x64";
    std::uint64_t seed = 0;
    int samples = 20;
};

struct BadConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json config;
    nlohmann::ordered_json summary;
};

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

nlohmann::ordered_json json_number(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_number(x));
}

std::string to_csv(const Table& t)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>) {
                        os << format_number(v);
                    } else {
                        os << v;
                    }
                },
                row[i]);
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json round_numbers(const nlohmann::ordered_json& j)
{
    if (j.is_number_float()) return json_number(j.get<double>());
    if (j.is_object() || j.is_array()) {
        nlohmann::ordered_json out = j;
        for (auto& [key, value] : out.items()) value = round_numbers(value);
        return out;
    }
    return j;
}

std::string to_json(const Table& t)
{
    nlohmann::ordered_json j;
    j["config"] = round_numbers(t.config);
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>) {
                        r[t.columns[i]] = json_number(v);
                    } else {
                        r[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(r));
    }
    j["summary"] = round_numbers(t.summary);
    return j.dump(2) + "\n";
}

void emit(const Table& t, const ScanConfig& cfg, std::ostream& out)
{
    const std::string text = cfg.format == "json" ? to_json(t) : to_csv(t);
    if (cfg.output_path.empty() || cfg.output_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw BadConfig("cannot open output file " + cfg.output_path);
    f << text;
}

std::vector<double> lambda_grid(const ScanConfig& cfg)
{
    std::vector<double> v(cfg.steps);
    for (int i = 0; i < cfg.steps; ++i) {
        v[i] = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * i / (cfg.steps - 1);
    }
    return v;
}

void validate_range(const ScanConfig& cfg)
{
    if (!(cfg.lambda_min < cfg.lambda_max)) throw BadConfig("--lambda-min must be below --lambda-max");
    if (cfg.lambda_min < 0.0) throw BadConfig("--lambda-min must be >= 0");
    if (cfg.steps < 2) throw BadConfig("--steps must be >= 2");
    if (!(cfg.quadrature_tol >= 1e-12 && cfg.quadrature_tol <= 1e-3)) throw BadConfig("--tol must lie in [1e-12, 1e-3]");
    if (cfg.gamma && !(*cfg.gamma >= 0.0)) throw BadConfig("--gamma must be >= 0");
}

PlaquetteGrid parse_grid(const std::string& s)
{
    static const std::regex re(R"((\d+)x(\d+))");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw BadConfig("--grid expects NxM, got '" + s + "'");
    return {std::stoi(m[1]), std::stoi(m[2])};
}

nlohmann::ordered_json base_config(const std::string& command, const ScanConfig& cfg)
{
    return {{"command", command},       {"lambda_min", cfg.lambda_min}, {"lambda_max", cfg.lambda_max},
            {"steps", cfg.steps},       {"format", cfg.format},         {"tol", cfg.quadrature_tol}};
}

bool near_critical_field(double lambda) { return std::abs(lambda - 1.0) <= 1e-3; }

int cmd_scan_chern(const ScanConfig& cfg, std::ostream& out, std::ostream& err)
{
    validate_range(cfg);
    const PlaquetteGrid grid = parse_grid(cfg.grid);
    const int n_sites = cfg.n_sites.value_or(1024);
    if (grid.n_phi < 16 || grid.n_beta < 16) throw BadConfig("--grid sizes must be >= 16");
    if (n_sites < 256 || n_sites % 2 != 0) throw BadConfig("--n-sites must be even and >= 256 for scan-chern");

    const auto lambdas = lambda_grid(cfg);
    Table t;
    t.columns = {"lambda", "chern_quadrature", "chern_error", "chern_discrete", "label", "status"};
    t.rows.resize(lambdas.size());
    QuadratureConfig qc;
    qc.abs_tol = cfg.quadrature_tol;

    parallel_for(lambdas.size(), [&](std::size_t i) {
        const double l = lambdas[i];
        if (near_critical_field(l)) {
            t.rows[i] = {l, nan, nan, nan, std::string("Boundary"), std::string("skipped")};
            return;
        }
        double c = nan, e = nan, d = nan;
        std::string label = "none", status = "ok";
        try {
            const auto q = chern_number(l, qc);
            c = q.value;
            e = q.abs_error_estimate;
            label = q.nearest_integer == -1 ? "ChernMinusOne" : q.nearest_integer == 0 ? "ChernZero" : "NonTopological";
        } catch (const Error& ex) {
            status = ex.kind() == ErrorKind::QuadratureNotConverged ? "not_converged" : std::string(to_string(ex.kind()));
        }
        try {
            d = chern_discrete(l, grid, n_sites, 1).value;
        } catch (const Error& ex) {
            if (status == "ok") status = "discrete_" + std::string(to_string(ex.kind()));
        }
        t.rows[i] = {l, c, e, d, label, status};
    });

    int failed = 0, skipped = 0;
    for (const auto& r : t.rows) {
        const auto& status = std::get<std::string>(r[5]);
        failed += status == "not_converged";
        skipped += status == "skipped";
    }
    t.config = base_config("scan-chern", cfg);
    t.config["grid"] = cfg.grid;
    t.config["n_sites"] = n_sites;
    t.summary = {{"rows", t.rows.size()}, {"skipped", skipped}, {"not_converged", failed}};
    emit(t, cfg, out);
    if (failed > 0) {
        err << "scan-chern: " << failed << " point(s) did not converge\n";
        return NotConverged;
    }
    return Ok;
}

int cmd_gap_map(const ScanConfig& cfg, std::ostream& out)
{
    validate_range(cfg);
    const double gamma_max = cfg.gamma.value_or(1.0);
    if (!(gamma_max > 0.0)) throw BadConfig("--gamma (upper end of the gamma axis) must be > 0");
    const auto lambdas = lambda_grid(cfg);
    Table t;
    t.columns = {"gamma", "lambda", "gap"};
    int zeros = 0;
    for (int i = 0; i < cfg.steps; ++i) {
        const double g = gamma_max * i / (cfg.steps - 1);
        for (double l : lambdas) {
            const double value = gap(g, l);
            zeros += value <= 1e-12;
            t.rows.push_back({g, l, value});
        }
    }
    t.config = base_config("gap-map", cfg);
    t.config["gamma_max"] = gamma_max;
    t.summary = {{"rows", t.rows.size()}, {"zero_points", zeros}};
    emit(t, cfg, out);
    return Ok;
}

int cmd_metric_scan(const ScanConfig& cfg, std::ostream& out)
{
    validate_range(cfg);
    const double gamma = cfg.gamma.value_or(1.0);
    const int n_sites = cfg.n_sites.value_or(2048);
    if (n_sites < 4 || n_sites % 2 != 0) throw BadConfig("--n-sites must be even and >= 4");
    const auto lambdas = lambda_grid(cfg);
    Table t;
    t.columns = {"lambda", "g_lambda_lambda", "g_gamma_gamma", "g_phi_phi", "curvature_phi_gamma", "symmetric", "status"};
    t.rows.resize(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        const double l = lambdas[i];
        if (near_critical_field(l)) {
            t.rows[i] = {l, nan, nan, nan, nan, std::string("n/a"), std::string("skipped")};
            return;
        }
        try {
            const ModelParams p{0.0, gamma, l, n_sites};
            const GeometricTensor q = qgt_finite_diff(p, n_sites);
            const rmat g = q.g.real();
            const bool symmetric = (g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-10;
            t.rows[i] = {l, g(2, 2), g(1, 1), g(0, 0), 2.0 * q.g(0, 1).imag(), std::string(symmetric ? "yes" : "no"),
                         std::string("ok")};
        } catch (const Error& ex) {
            t.rows[i] = {l, nan, nan, nan, nan, std::string("n/a"), std::string(to_string(ex.kind()))};
        }
    });

    // g_lambda_lambda should grow into lambda = 1 from either side.
    bool increasing = true;
    double prev = -1.0;
    for (const auto& r : t.rows) {
        const double l = std::get<double>(r[0]);
        const double g = std::get<double>(r[1]);
        if (l >= 1.0 || std::isnan(g)) continue;
        if (!(g > prev)) increasing = false;
        prev = g;
    }
    t.config = base_config("metric-scan", cfg);
    t.config["gamma"] = gamma;
    t.config["n_sites"] = n_sites;
    t.summary = {{"rows", t.rows.size()}, {"g_lambda_lambda_increasing_below_1", increasing}};
    emit(t, cfg, out);
    return Ok;
}

// 53-bit uniform doubles straight from the engine output, so the draw
// sequence does not depend on the standard library's distributions.
struct Sampler {
    std::mt19937_64 rng;
    double uniform(double a, double b) { return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53; }
};

int cmd_oracle_verify(const ScanConfig& cfg, std::ostream& out)
{
    const int n_sites = cfg.n_sites.value_or(8);
    if (n_sites < 4 || n_sites > oracle::kMaxSites || n_sites % 2 != 0) {
        throw BadConfig("--n-sites must be even and in [4, 12] for oracle-verify");
    }
    if (cfg.samples < 1) throw BadConfig("--samples must be >= 1");
    const int qgt_sites = std::min(n_sites, oracle::kMaxSpectralSites);

    Sampler s{std::mt19937_64(cfg.seed)};
    std::vector<ModelParams> points;
    for (int i = 0; i < cfg.samples; ++i) {
        ModelParams p;
        p.phi = s.uniform(0.0, pi);
        p.gamma = s.uniform(0.2, 1.5);
        p.lambda = s.uniform(0.0, 2.0);
        points.push_back(p);
    }

    Table t;
    t.columns = {"sample", "phi", "gamma", "lambda", "energy_dev", "qgt_dev", "wilson_rel_dev", "status"};
    t.rows.resize(points.size());
    constexpr double energy_tol = 1e-10, qgt_tol = 1e-6, wilson_tol = 0.05;
    parallel_for(points.size(), [&](std::size_t i) {
        const ModelParams& p = points[i];
        double de = nan, dq = nan, dw = nan;
        std::string status = "pass";
        try {
            de = std::abs(oracle::ed_ground(p, n_sites).energies(0) -
                          oracle::free_fermion_parity_spectrum(p, n_sites).ground_energy);
            const cmat spectral = qgt_spectral(p, qgt_sites).g;
            const cmat fd = oracle::qgt_ed_finite_diff(p, qgt_sites);
            dq = (spectral - fd).cwiseAbs().maxCoeff();

            // Counter-clockwise (phi, gamma) square; holonomy = f * area.
            const double h = 1e-3;
            const std::vector<ModelParams> loop = {{p.phi, p.gamma, p.lambda, n_sites},
                                                   {p.phi + h, p.gamma, p.lambda, n_sites},
                                                   {p.phi + h, p.gamma + h, p.lambda, n_sites},
                                                   {p.phi, p.gamma + h, p.lambda, n_sites}};
            // A grid momentum crossing a_F inside the square flips a band and
            // the loop phase is no longer curvature times area; no comparison.
            bool band_change = false;
            const int k_t = effective_fermi_cutoff(p.gamma, p.lambda, n_sites);
            for (const auto& q : loop) band_change |= effective_fermi_cutoff(q.gamma, q.lambda, n_sites) != k_t;
            if (!band_change) {
                const double phase = oracle::wilson_loop_berry_phase(loop, n_sites);
                const ModelParams centre{p.phi + h / 2, p.gamma + h / 2, p.lambda, n_sites};
                const double flux = berry_curvature_sum(centre, n_sites).imag() * n_sites / (2.0 * pi) * h * h;
                dw = std::abs(phase - flux) / std::max(std::abs(flux), 1e-12);
            }
            if (de > energy_tol || dq > qgt_tol || dw > wilson_tol) status = "fail";
        } catch (const Error& ex) {
            status = std::string(to_string(ex.kind()));
        }
        t.rows[i] = {static_cast<long long>(i), p.phi, p.gamma, p.lambda, de, dq, dw, status};
    });

    double max_e = 0.0, max_q = 0.0, max_w = 0.0;
    int failures = 0, wilson_skipped = 0;
    for (const auto& r : t.rows) {
        max_e = std::max(max_e, std::get<double>(r[4]));
        max_q = std::max(max_q, std::get<double>(r[5]));
        max_w = std::max(max_w, std::get<double>(r[6]));
        wilson_skipped += std::isnan(std::get<double>(r[6])) && std::get<std::string>(r[7]) == "pass";
        failures += std::get<std::string>(r[7]) != "pass";
    }
    t.config = {{"command", "oracle-verify"}, {"n_sites", n_sites}, {"qgt_sites", qgt_sites},
                {"samples", cfg.samples},     {"seed", cfg.seed},   {"format", cfg.format}};
    t.summary = {{"max_energy_dev", max_e}, {"max_qgt_dev", max_q}, {"max_wilson_rel_dev", max_w},
                 {"wilson_skipped", wilson_skipped}, {"failures", failures}, {"passed", failures == 0}};
    emit(t, cfg, out);
    return failures == 0 ? Ok : VerificationFailed;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Chern number, geometric tensor and exact-diagonalisation tools for the rotated XY chain", "xyqpt"};
    app.require_subcommand(1);
    ScanConfig cfg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--lambda-min", cfg.lambda_min, "lower end of the field range");
        sub->add_option("--lambda-max", cfg.lambda_max, "upper end of the field range");
        sub->add_option("--steps", cfg.steps, "grid points per axis (>= 2)");
        sub->add_option("--gamma", cfg.gamma, "anisotropy (metric-scan) or gamma-axis extent (gap-map)");
        sub->add_option("--n-sites", cfg.n_sites, "chain length N");
        sub->add_option("--out", cfg.output_path, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", cfg.quadrature_tol, "absolute quadrature tolerance on C1");
        sub->add_option("--grid", cfg.grid, "plaquette grid NxM (phi x beta)");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--samples", cfg.samples, "number of random parameter samples");
    };
    auto* scan = app.add_subcommand("scan-chern", "Chern number versus lambda, quadrature and plaquette methods");
    auto* gapmap = app.add_subcommand("gap-map", "spectral gap over a (gamma, lambda) grid");
    auto* metric = app.add_subcommand("metric-scan", "geometric tensor components versus lambda at fixed gamma");
    auto* verify = app.add_subcommand("oracle-verify", "exact diagonalisation cross-checks on random samples");
    for (auto* sub : {scan, gapmap, metric, verify}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return ExitCode::ConfigError;
    }

    try {
        if (*scan) return cmd_scan_chern(cfg, out, err);
        if (*gapmap) return cmd_gap_map(cfg, out);
        if (*metric) return cmd_metric_scan(cfg, out);
        return cmd_oracle_verify(cfg, out);
    } catch (const BadConfig& e) {
        err << "config error: " << e.what() << '\n';
        return ExitCode::ConfigError;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.kind() == ErrorKind::QuadratureNotConverged ? NotConverged : VerificationFailed;
    }
}

} // namespace xyqpt::cli
