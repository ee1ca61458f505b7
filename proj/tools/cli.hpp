#pragma once

// Command-line front end: eval, transform, verify, spectrum.
//
// Exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 domain or pole error,
// 4 non-convergence, 5 unreadable or invalid input data.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rbt/rbt.hpp"

namespace rbt::cli {

using json = nlohmann::ordered_json;

enum Exit { ok = 0, verify_failed = 1, config_error = 2, domain_error = 3, no_convergence = 4, bad_input = 5 };

// Invalid input data (as opposed to invalid options).
struct InputError : Error {
    using Error::Error;
};

struct Options {
    double c = 1.0;
    int m = 0;
    int k = 0;
    double sigma = 0.0;  // 0 means 2(gamma + m)
    double tol = 1e-10;
    std::string out = "-";
    std::string format;  // empty: csv, or json for verify
    std::string grid = "0,0";
    std::string xi = "1";
    std::string w = "0,0";
    std::string function;
    std::string input;
    bool m0 = false;
    std::string suite;
    int K = 0;
    int kmax = 5;
    int mmax = 3;
    int threads = 0;
    std::string config;
};

inline std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s, const std::string& what)
{
    const char* b = s.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(b, &end);
    while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
    if (end == b || *end != '\0' || errno == ERANGE) throw ConfigError(what + ": cannot parse '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline cplx parse_point(const std::string& s)
{
    auto parts = split(s, ',');
    if (parts.size() != 2) throw ConfigError("grid point '" + s + "' must be 're,im'");
    return {parse_double(trim(parts[0]), "grid"), parse_double(trim(parts[1]), "grid")};
}

// "re,im;re,im;..." or "mesh:xmin,xmax,nx,ymin,ymax,ny". Explicit points are kept as given
// (the evaluation rejects them if they leave the domain); mesh points outside |z| <= r_max,
// and within 0.2 of z = 1 when near_one_excluded, are dropped.
inline std::vector<cplx> parse_grid(const std::string& text, bool near_one_excluded)
{
    std::vector<cplx> pts;
    if (text.rfind("mesh:", 0) == 0) {
        auto p = split(text.substr(5), ',');
        if (p.size() != 6) throw ConfigError("mesh grid needs xmin,xmax,nx,ymin,ymax,ny");
        double x0 = parse_double(p[0], "mesh"), x1 = parse_double(p[1], "mesh");
        double y0 = parse_double(p[3], "mesh"), y1 = parse_double(p[4], "mesh");
        double nxd = parse_double(p[2], "mesh"), nyd = parse_double(p[5], "mesh");
        if (nxd < 1 || nyd < 1 || nxd != std::floor(nxd) || nyd != std::floor(nyd) || nxd * nyd > 1e7)
            throw ConfigError("mesh counts must be positive integers");
        int nx = int(nxd), ny = int(nyd);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                cplx z(nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1), ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1));
                if (std::abs(z) > r_max) continue;
                if (near_one_excluded && std::abs(1.0 - z) < min_dist_to_one) continue;
                pts.push_back(z);
            }
    } else {
        for (const auto& item : split(text, ';'))
            if (!trim(item).empty()) pts.push_back(parse_point(item));
    }
    if (pts.empty()) throw ConfigError("grid is empty");
    return pts;
}

// "a,b,c" or "range:a,b,n"
inline std::vector<double> parse_xi(const std::string& text)
{
    std::vector<double> xs;
    if (text.rfind("range:", 0) == 0) {
        auto p = split(text.substr(6), ',');
        if (p.size() != 3) throw ConfigError("xi range needs a,b,n");
        double a = parse_double(p[0], "xi"), b = parse_double(p[1], "xi"), nd = parse_double(p[2], "xi");
        if (nd < 1 || nd != std::floor(nd) || nd > 1e7) throw ConfigError("xi range count must be a positive integer");
        int n = int(nd);
        for (int i = 0; i < n; ++i) xs.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else {
        for (const auto& item : split(text, ','))
            if (!trim(item).empty()) xs.push_back(parse_double(trim(item), "xi"));
    }
    if (xs.empty()) throw ConfigError("xi grid is empty");
    return xs;
}

inline void check_cap(cplx z)
{
    if (!(std::abs(z) <= r_max + 1e-12))
        throw DomainError("grid point (" + num(z.real()) + ", " + num(z.imag()) +
                          ") exceeds the evaluation cap r_max = 0.85");
}

// CSV with header xi,re,im
inline SampledFunction read_samples(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "xi,re,im")
        throw InputError("input file must start with the header 'xi,re,im'");
    std::vector<double> x;
    std::vector<cplx> y;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto p = split(trim(line), ',');
        if (p.size() != 3) throw InputError("line " + std::to_string(lineno) + ": expected 3 fields");
        try {
            double a = parse_double(trim(p[0]), "xi"), re = parse_double(trim(p[1]), "re"),
                   im = parse_double(trim(p[2]), "im");
            if (!std::isfinite(a) || !std::isfinite(re) || !std::isfinite(im))
                throw InputError("line " + std::to_string(lineno) + ": non-finite value");
            x.push_back(a);
            y.emplace_back(re, im);
        } catch (const ConfigError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    try {
        return SampledFunction(std::move(x), std::move(y));
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {}

    void write(const std::string& text)
    {
        if (path_ == "-") {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw ConfigError("cannot write output file '" + path_ + "'");
        f << text;
    }

private:
    std::string path_;
};

inline std::string resolved_format(const Options& o, const char* fallback)
{
    std::string f = o.format.empty() ? fallback : o.format;
    if (f != "csv" && f != "json") throw ConfigError("format must be csv or json");
    return f;
}

inline void check_tol(double tol)
{
    if (!(tol >= 1e-12 && tol <= 1e-2)) throw ConfigError("tol must lie in [1e-12, 1e-2]");
}

inline json base_config(const Options& o, const std::string& command)
{
    json cfg;
    cfg["command"] = command;
    cfg["c"] = o.c;
    cfg["gamma"] = gamma_of_c(o.c);
    cfg["m"] = o.m;
    cfg["tol"] = o.tol;
    return cfg;
}

struct Row {
    bool has_z = true, has_xi = false;
    cplx z;
    double xi = 0.0;
    cplx value;
};

inline std::string render_rows(const std::vector<Row>& rows, const std::string& format, const json& cfg,
                               const std::string& function)
{
    if (format == "csv") {
        std::string s;
        const Row& r0 = rows.front();
        s += r0.has_z ? (r0.has_xi ? "re_z,im_z,xi,re_val,im_val\n" : "re_z,im_z,re_val,im_val\n") : "xi,re_val,im_val\n";
        for (const auto& r : rows) {
            if (r.has_z) s += num(r.z.real()) + "," + num(r.z.imag()) + ",";
            if (r.has_xi) s += num(r.xi) + ",";
            s += num(r.value.real()) + "," + num(r.value.imag()) + "\n";
        }
        return s;
    }
    json j;
    j["function"] = function;
    j["version"] = RBT_VERSION;
    j["config"] = cfg;
    json recs = json::array();
    for (const auto& r : rows) {
        json e;
        if (r.has_z) {
            e["re_z"] = r.z.real();
            e["im_z"] = r.z.imag();
        }
        if (r.has_xi) e["xi"] = r.xi;
        e["re_val"] = r.value.real();
        e["im_val"] = r.value.imag();
        recs.push_back(e);
    }
    j["records"] = recs;
    return j.dump(2) + "\n";
}

inline int cmd_eval(const Options& o)
{
    check_tol(o.tol);
    const std::string format = resolved_format(o, "csv");
    const OscParams osc(o.c);
    const ModelParams p(osc, o.m);
    const double sigma = o.sigma > 0.0 ? o.sigma : p.sigma();
    const LandauIndex idx{sigma, o.m};
    const std::string& fn = o.function;
    static const std::vector<std::string> known{"basis_phi", "eigenfunction", "cs_wavefunction", "overlap", "kernel"};
    if (std::find(known.begin(), known.end(), fn) == known.end()) throw ConfigError("unknown function '" + fn + "'");

    json cfg = base_config(o, "eval");
    cfg["function"] = fn;
    std::vector<Row> rows;
    const bool uses_z = fn != "eigenfunction";
    const bool uses_xi = fn == "eigenfunction" || fn == "cs_wavefunction" || fn == "kernel";
    const bool kernel_domain = fn == "cs_wavefunction" || fn == "kernel";
    std::vector<cplx> zs = uses_z ? parse_grid(o.grid, kernel_domain) : std::vector<cplx>{cplx(0.0)};
    std::vector<double> xs = uses_xi ? parse_xi(o.xi) : std::vector<double>{0.0};
    if (uses_z) {
        cfg["grid"] = o.grid;
        for (auto z : zs) check_cap(z);
    }
    if (uses_xi) cfg["xi"] = o.xi;
    if (fn == "basis_phi" || fn == "eigenfunction") cfg["k"] = o.k;
    if (fn == "basis_phi" || fn == "overlap") {
        idx.validate();
        cfg["sigma"] = sigma;
    }
    cplx w = 0.0;
    if (fn == "overlap") {
        w = parse_point(o.w);
        check_cap(w);
        cfg["w"] = o.w;
    }
    if (o.k < 0) throw ConfigError("k must be non-negative");

    for (auto z : zs)
        for (double xi : xs) rows.push_back({uses_z, uses_xi, z, xi, 0.0});
    F5Options f5;
    f5.tol = std::max(o.tol, 1e-12);
    detail::parallel_for(rows.size(), [&](std::size_t i) {
        Row& r = rows[i];
        if (fn == "basis_phi")
            r.value = basis_phi(o.k, idx, r.z);
        else if (fn == "eigenfunction")
            r.value = eigenfunction(o.k, osc, r.xi);
        else if (fn == "cs_wavefunction")
            r.value = cs_wavefunction({r.z, p}, r.xi, f5);
        else if (fn == "overlap")
            r.value = overlap(idx, r.z, w);
        else {
            if (!(r.xi >= 0.0)) throw DomainError("kernel: xi must be non-negative");
            r.value = transform_kernel(p, r.z, r.xi);
        }
    });
    Output(o.out).write(render_rows(rows, format, cfg, fn));
    return ok;
}

inline int cmd_transform(const Options& o)
{
    check_tol(o.tol);
    const std::string format = resolved_format(o, "csv");
    if (o.input.empty()) throw ConfigError("transform needs --input");
    const ModelParams p(OscParams(o.c), o.m);
    if (o.m0 && o.m != 0) throw ConfigError("--m0 requires m = 0");
    std::vector<cplx> zs = parse_grid(o.grid, true);
    for (auto z : zs) check_cap(z);
    SampledFunction f = read_samples(o.input);
    TransformOptions t;
    t.tol = o.tol;
    TransformResult res = transform_grid(p, f, zs, t, o.m0);

    std::string text;
    if (format == "csv") {
        text = "re_z,im_z,re_val,im_val,quad_error\n";
        for (std::size_t i = 0; i < zs.size(); ++i)
            text += num(zs[i].real()) + "," + num(zs[i].imag()) + "," + num(res.values[i].real()) + "," +
                    num(res.values[i].imag()) + "," + num(res.errors[i]) + "\n";
    } else {
        json cfg = base_config(o, "transform");
        cfg["sigma"] = p.sigma();
        cfg["grid"] = o.grid;
        cfg["input"] = o.input;
        cfg["kernel"] = o.m0 ? "m0" : "general";
        json j;
        j["version"] = RBT_VERSION;
        j["config"] = cfg;
        json pts = json::array();
        for (std::size_t i = 0; i < zs.size(); ++i)
            pts.push_back({{"re_z", zs[i].real()},
                           {"im_z", zs[i].imag()},
                           {"re_val", res.values[i].real()},
                           {"im_val", res.values[i].imag()},
                           {"quad_error", res.errors[i]}});
        j["points"] = pts;
        j["quadrature_error"] = res.quadrature_error;
        text = j.dump(2) + "\n";
    }
    Output(o.out).write(text);
    return ok;
}

inline json error_value(double e) { return std::isfinite(e) ? json(e) : json(nullptr); }

inline int cmd_verify(const Options& o, const CLI::App& sub)
{
    const std::string format = resolved_format(o, "json");
    if (o.suite.empty()) throw ConfigError("verify needs --suite");
    if (o.suite != "all" && std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
        throw ConfigError("unknown suite '" + o.suite + "'");
    VerifyConfig vc;
    json cfg;
    cfg["command"] = "verify";
    cfg["suite"] = o.suite;
    if (sub.count("--c")) {
        gamma_of_c(o.c);
        vc.c = o.c;
        cfg["c"] = o.c;
    }
    if (sub.count("--sigma")) {
        vc.sigma = o.sigma;
        cfg["sigma"] = o.sigma;
    }
    if (sub.count("--m")) {
        if (o.m < 0) throw ConfigError("m must be non-negative");
        vc.m = o.m;
        cfg["m"] = o.m;
    }
    if (sub.count("--K")) {
        if (o.K < 0) throw ConfigError("K must be non-negative");
        vc.K = o.K;
        cfg["K"] = o.K;
    }
    if (vc.sigma || vc.m) detail::disk_cases(vc).front().validate();
    cfg["seed"] = vc.seed;

    auto reports = run_suites(o.suite, vc);
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass();

    std::string text;
    if (format == "json") {
        json j;
        j["suite"] = o.suite;
        json checks = json::array();
        for (const auto& r : reports)
            for (const auto& c : r.checks) {
                json e;
                e["name"] = reports.size() > 1 ? r.suite + ": " + c.name : c.name;
                e["error"] = error_value(c.error);
                e["tol"] = c.tol;
                e["pass"] = c.pass;
                if (!c.message.empty()) e["message"] = c.message;
                checks.push_back(e);
            }
        j["checks"] = checks;
        j["pass"] = all_pass;
        j["version"] = RBT_VERSION;
        j["config"] = cfg;
        text = j.dump(2) + "\n";
    } else {
        text = "suite,name,error,tol,pass\n";
        for (const auto& r : reports)
            for (const auto& c : r.checks)
                text += r.suite + ",\"" + c.name + "\"," + num(c.error) + "," + num(c.tol) + "," +
                        (c.pass ? "true" : "false") + "\n";
    }
    Output(o.out).write(text);
    for (const auto& r : reports)
        for (const auto& c : r.checks)
            if (!c.pass)
                std::cerr << "FAIL " << r.suite << ": " << c.name << " error " << num(c.error) << " tol " << num(c.tol)
                          << (c.message.empty() ? "" : " (" + c.message + ")") << "\n";
    return all_pass ? ok : verify_failed;
}

inline int cmd_spectrum(const Options& o)
{
    const std::string format = resolved_format(o, "csv");
    if (o.kmax < 0 || o.mmax < 0) throw ConfigError("kmax and mmax must be non-negative");
    if (o.kmax > 100000 || o.mmax > 100000) throw ConfigError("kmax and mmax are capped at 100000");
    const OscParams osc(o.c);
    std::string text;
    if (format == "csv") {
        text = "kind,index,sigma,value\n";
        for (int k = 0; k <= o.kmax; ++k) text += "oscillator," + std::to_string(k) + ",," + num(energy(k, osc)) + "\n";
        for (int m = 0; m <= o.mmax; ++m) {
            ModelParams p(osc, m);
            text += "landau," + std::to_string(m) + "," + num(p.sigma()) + "," + num(landau_level(p.landau())) + "\n";
        }
    } else {
        json j;
        j["version"] = RBT_VERSION;
        json cfg;
        cfg["command"] = "spectrum";
        cfg["c"] = o.c;
        cfg["gamma"] = osc.gamma();
        cfg["kmax"] = o.kmax;
        cfg["mmax"] = o.mmax;
        j["config"] = cfg;
        json e = json::array(), l = json::array();
        for (int k = 0; k <= o.kmax; ++k) e.push_back({{"k", k}, {"energy", energy(k, osc)}});
        for (int m = 0; m <= o.mmax; ++m) {
            ModelParams p(osc, m);
            l.push_back({{"m", m}, {"sigma", p.sigma()}, {"epsilon", landau_level(p.landau())}});
        }
        j["oscillator"] = e;
        j["landau"] = l;
        text = j.dump(2) + "\n";
    }
    Output(o.out).write(text);
    return ok;
}

// key=value lines; '#' starts a comment. Returned as --key value pairs.
inline std::vector<std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") throw ConfigError("config line " + std::to_string(lineno) + ": bad key");
        if (key == "m0") {
            if (value == "true" || value == "1") args.push_back("--m0");
            else if (value != "false" && value != "0") throw ConfigError("config: m0 must be true or false");
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

inline int run(int argc, const char* const* argv)
{
    Options o;
    CLI::App app{"Coherent-state transforms for the relativistic pseudoharmonic oscillator", "rbt"};
    app.set_version_flag("--version", std::string(RBT_VERSION));
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    auto common = [&](CLI::App* s) {
        s->add_option("--c", o.c, "oscillator parameter c > 0");
        s->add_option("--m", o.m, "Landau level index m");
        s->add_option("--tol", o.tol, "quadrature tolerance in [1e-12, 1e-2]");
        s->add_option("--out", o.out, "output path, - for stdout");
        s->add_option("--format", o.format, "csv or json");
        s->add_option("--threads", o.threads, "worker threads, 0 = hardware");
        s->add_option("--config", o.config, "key=value file; command-line flags win");
    };
    auto* eval = app.add_subcommand("eval", "evaluate a function on a grid");
    common(eval);
    eval->add_option("--function", o.function, "basis_phi | eigenfunction | cs_wavefunction | overlap | kernel")
        ->required();
    eval->add_option("--k", o.k, "basis or eigenfunction index");
    eval->add_option("--sigma", o.sigma, "disk weight (default 2(gamma+m))");
    eval->add_option("--grid", o.grid, "'re,im;re,im' or 'mesh:xmin,xmax,nx,ymin,ymax,ny'");
    eval->add_option("--xi", o.xi, "'a,b,c' or 'range:a,b,n'");
    eval->add_option("--w", o.w, "second point for overlap, 're,im'");

    auto* transform = app.add_subcommand("transform", "transform sampled input on a z grid");
    common(transform);
    transform->add_option("--input", o.input, "CSV with header xi,re,im");
    transform->add_option("--grid", o.grid, "'re,im;re,im' or 'mesh:xmin,xmax,nx,ymin,ymax,ny'");
    transform->add_flag("--m0", o.m0, "use the m = 0 kernel");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    common(verify);
    verify->add_option("--suite", o.suite, "suite name or all")->required();
    verify->add_option("--sigma", o.sigma, "override the disk weight");
    verify->add_option("--K", o.K, "override the truncation / basis size");

    auto* spectrum = app.add_subcommand("spectrum", "oscillator energies and Landau levels");
    common(spectrum);
    spectrum->add_option("--kmax", o.kmax, "largest oscillator index");
    spectrum->add_option("--mmax", o.mmax, "largest Landau index");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        // config-file arguments go right after the subcommand so later flags override them
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--config" || args[i].rfind("--config=", 0) == 0) {
                std::string path = args[i] == "--config" ? args[i + 1] : args[i].substr(9);
                std::size_t at = 0;
                while (at < args.size() && args[at].rfind("-", 0) == 0) ++at;
                auto extra = read_config(path);
                args.insert(args.begin() + std::min(at + 1, args.size()), extra.begin(), extra.end());
                break;
            }
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : config_error;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error;
    }

    try {
        if (o.threads < 0) throw ConfigError("threads must be non-negative");
        set_thread_count(unsigned(o.threads));
        if (*eval) return cmd_eval(o);
        if (*transform) return cmd_transform(o);
        if (*verify) return cmd_verify(o, *verify);
        return cmd_spectrum(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return bad_input;
    } catch (const NonConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return no_convergence;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return domain_error;
    } catch (const PoleError& e) {
        std::cerr << "pole: " << e.what() << "\n";
        return domain_error;
    }
}

}  // namespace rbt::cli
