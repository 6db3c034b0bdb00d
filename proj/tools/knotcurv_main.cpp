// knotcurv command line: generate curves, compute invariant reports,
// certify the inequality suite, run parameter sweeps, and query the
// projection-count oracle. Talks to the library exclusively through the
// C API.
//
// Exit codes: 0 success (and every certificate passed), 1 at least one
// certificate failed, 2 input or usage error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotcurv.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCertificateFailure = 1;
constexpr int kExitInputError = 2;

[[noreturn]] void die(const std::string& message) {
    std::cerr << "knotcurv: " << message << "\n";
    std::exit(kExitInputError);
}

void check(kc_status status) {
    if (status != KC_OK)
        die(std::string(kc_status_name(status)) + ": " + kc_last_error());
}

struct Curve {
    kc_curve* ptr = nullptr;
    Curve() = default;
    explicit Curve(kc_curve* p) : ptr(p) {}
    Curve(Curve&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    Curve& operator=(Curve&& o) noexcept {
        if (this != &o) {
            kc_curve_free(ptr);
            ptr = o.ptr;
            o.ptr = nullptr;
        }
        return *this;
    }
    Curve(const Curve&) = delete;
    Curve& operator=(const Curve&) = delete;
    ~Curve() { kc_curve_free(ptr); }
};

std::string take_string(char* raw) {
    std::string out = raw == nullptr ? "" : raw;
    kc_string_free(raw);
    return out;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        die("cannot write '" + out_path + "'");
    out << content;
}

std::vector<double> parse_triple(const std::string& text, const char* what) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        try {
            vals.push_back(std::stod(item));
        } catch (...) {
            die(std::string(what) + " expects x,y,z");
        }
    if (vals.size() != 3)
        die(std::string(what) + " expects x,y,z");
    return vals;
}

std::string fmt_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::string family;
    std::size_t samples = 512;
    std::string out_path;
    std::string params_json;
    int p = 0, q = 0, n = 0;
    double major_radius = 3.0, minor_radius = 1.0, exponent = 2.0, theta_max = 0.0,
           corner_radius = 0.0, radius = 1.0;
    std::uint64_t modes = 0, seed = 0;
    std::string from, to, vertices;
    bool closed = false;
};

int cmd_generate(const GenerateArgs& args, const CLI::App& sub) {
    json params = json::object();
    if (!args.params_json.empty()) {
        try {
            params = json::parse(args.params_json);
        } catch (const json::exception& e) {
            die(std::string("bad --params: ") + e.what());
        }
    }
    auto set_if = [&](const char* flag, const char* key, const json& value) {
        if (sub.count(flag) > 0)
            params[key] = value;
    };
    set_if("--p", "p", args.p);
    set_if("--q", "q", args.q);
    set_if("--n", "n", args.n);
    set_if("--major-radius", "major_radius", args.major_radius);
    set_if("--minor-radius", "minor_radius", args.minor_radius);
    set_if("--exponent", "exponent", args.exponent);
    set_if("--theta-max", "theta_max", args.theta_max);
    set_if("--corner-radius", "corner_radius", args.corner_radius);
    set_if("--radius", "radius", args.radius);
    set_if("--modes", "modes", args.modes);
    set_if("--seed", "seed", args.seed);
    set_if("--closed", "closed", args.closed);
    if (sub.count("--from") > 0)
        params["from"] = parse_triple(args.from, "--from");
    if (sub.count("--to") > 0)
        params["to"] = parse_triple(args.to, "--to");
    if (sub.count("--vertices") > 0) {
        json verts = json::array();
        std::stringstream ss(args.vertices);
        std::string point;
        while (std::getline(ss, point, ';'))
            verts.push_back(parse_triple(point, "--vertices"));
        params["vertices"] = verts;
    }

    const json spec{{"family", args.family}, {"samples", args.samples}, {"params", params}};
    kc_curve* curve = nullptr;
    check(kc_generate(spec.dump().c_str(), &curve));
    Curve holder(curve);
    char* text = nullptr;
    check(kc_curve_to_json(curve, &text));
    emit(take_string(text), args.out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------
// invariants / verify / oracle

int cmd_invariants(const std::string& in_path, const std::string& out_path, bool refine,
                   int workers) {
    kc_curve* curve = nullptr;
    check(kc_curve_read(in_path.c_str(), &curve));
    Curve holder(curve);
    char* report = nullptr;
    check(kc_invariants(curve, refine ? 1 : 0, workers, &report));
    emit(take_string(report), out_path);
    return kExitOk;
}

int cmd_verify(const std::string& in_path, const std::string& which,
               const std::string& out_path, const json& params, int workers) {
    kc_curve* curve = nullptr;
    check(kc_curve_read(in_path.c_str(), &curve));
    Curve holder(curve);
    char* certs = nullptr;
    int all_pass = 0;
    check(kc_verify(curve, which.c_str(), params.dump().c_str(), workers, &certs, &all_pass));
    emit(take_string(certs), out_path);
    return all_pass == 1 ? kExitOk : kExitCertificateFailure;
}

int cmd_oracle(const std::string& in_path, const std::string& out_path, std::size_t directions,
               std::uint64_t seed, int workers) {
    kc_curve* curve = nullptr;
    check(kc_curve_read(in_path.c_str(), &curve));
    Curve holder(curve);
    char* result = nullptr;
    check(kc_oracle(curve, directions, seed, workers, &result));
    emit(take_string(result), out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------
// sweep

struct SweepMember {
    double value = 0.0;
    bool closed = false;
    json report;
    std::vector<json> certificates;
    std::string error;  // nonempty when this member failed
};

int cmd_sweep(const std::string& plan_path, const std::string& csv_path, int workers_flag) {
    std::ifstream in(plan_path);
    if (!in)
        die("cannot read plan '" + plan_path + "'");
    json plan;
    try {
        plan = json::parse(in);
    } catch (const json::exception& e) {
        die(std::string("bad plan: ") + e.what());
    }

    const std::string family = plan.value("family", "");
    if (family.empty())
        die("plan needs a 'family'");
    const std::size_t samples = plan.value("samples", std::size_t{512});
    const json base_params = plan.value("base_params", json::object());
    if (!plan.contains("varying") || !plan["varying"].is_object())
        die("plan needs a 'varying' object with 'name' and 'values'");
    const std::string var_name = plan["varying"].value("name", "");
    std::vector<double> values;
    for (const auto& v : plan["varying"].value("values", json::array()))
        values.push_back(v.get<double>());
    if (var_name.empty() || values.empty())
        die("plan 'varying' must name a parameter and give a nonempty value list");
    for (double v : values)
        if (!std::isfinite(v))
            die("plan 'varying' values must be finite");
    std::sort(values.begin(), values.end());

    std::vector<std::string> selectors;
    for (const auto& s : plan.value("certificates", json::array()))
        selectors.push_back(s.get<std::string>());

    json verify_params = json::object();
    if (plan.contains("basepoint"))
        verify_params["basepoint"] = plan["basepoint"];

    int workers = workers_flag;
    if (plan.contains("workers") && workers_flag <= 0)
        workers = plan["workers"].get<int>();
    const unsigned pool =
        std::max(1u, workers > 0 ? static_cast<unsigned>(workers)
                                 : std::thread::hardware_concurrency());

    std::vector<SweepMember> members(values.size());
    auto run_member = [&](std::size_t idx) {
        SweepMember& m = members[idx];
        m.value = values[idx];
        json params = base_params;
        std::size_t member_samples = samples;
        if (var_name == "samples")
            member_samples = static_cast<std::size_t>(values[idx]);
        else
            params[var_name] = values[idx];
        const json spec{{"family", family}, {"samples", member_samples}, {"params", params}};
        kc_curve* raw = nullptr;
        if (kc_generate(spec.dump().c_str(), &raw) != KC_OK) {
            m.error = kc_last_error();
            return;
        }
        Curve curve(raw);
        m.closed = kc_curve_is_closed(curve.ptr) == 1;
        char* text = nullptr;
        if (kc_invariants(curve.ptr, 0, 1, &text) != KC_OK) {
            m.error = kc_last_error();
            return;
        }
        m.report = json::parse(take_string(text));
        for (const std::string& which : selectors) {
            char* certs = nullptr;
            int all_pass = 0;
            if (kc_verify(curve.ptr, which.c_str(), verify_params.dump().c_str(), 1, &certs,
                          &all_pass) != KC_OK) {
                m.error = kc_last_error();
                return;
            }
            for (const auto& cert : json::parse(take_string(certs)))
                m.certificates.push_back(cert);
        }
    };

    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> threads;
    const std::size_t nthreads = std::min<std::size_t>(pool, values.size());
    for (std::size_t t = 0; t < nthreads; ++t)
        threads.emplace_back([&] {
            for (std::size_t idx = cursor.fetch_add(1); idx < values.size();
                 idx = cursor.fetch_add(1))
                run_member(idx);
        });
    for (auto& th : threads)
        th.join();

    // fixed invariant block, then lhs/rhs/margin/pass per certificate name
    // in first-appearance order; this layout is the frozen CSV contract
    std::vector<std::string> cert_names;
    for (const SweepMember& m : members)
        for (const json& cert : m.certificates) {
            const std::string name = cert["name"].get<std::string>();
            if (std::find(cert_names.begin(), cert_names.end(), name) == cert_names.end())
                cert_names.push_back(name);
        }

    std::vector<std::string> header{"id",  "family", "param",    "value",
                                    "samples", "closed", "L",        "kappa",
                                    "R",   "E_L",    "acn",      "acn_err",
                                    "writhe", "mobius_energy", "near", "far"};
    for (const std::string& name : cert_names)
        for (const char* part : {"_lhs", "_rhs", "_margin", "_pass"})
            header.push_back(name + part);
    header.push_back("error");

    auto join = [](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                line += ",";
            line += cells[i];
        }
        return line + "\n";
    };

    std::string csv = join(header);
    auto cell = [](const json& j, const char* key) -> std::string {
        if (!j.contains(key) || j[key].is_null())
            return "";
        return fmt_number(j[key].get<double>());
    };

    for (std::size_t idx = 0; idx < members.size(); ++idx) {
        const SweepMember& m = members[idx];
        std::vector<std::string> row;
        row.push_back(family + "-" + std::to_string(idx));
        row.push_back(family);
        row.push_back(var_name);
        row.push_back(fmt_number(m.value));
        row.push_back(std::to_string(var_name == "samples"
                                         ? static_cast<std::size_t>(m.value)
                                         : samples));
        if (!m.error.empty()) {
            row.resize(header.size() - 1, "");
            std::string msg = m.error;
            for (char& ch : msg)
                if (ch == ',' || ch == '\n')
                    ch = ';';
            row.push_back(msg);
            csv += join(row);
            continue;
        }
        row.push_back(m.closed ? "true" : "false");
        row.push_back(cell(m.report, "length"));
        row.push_back(cell(m.report, "total_curvature"));
        row.push_back(cell(m.report, "thickness"));
        row.push_back(cell(m.report, "ropelength"));
        row.push_back(cell(m.report, "acn"));
        if (m.report.contains("error_estimates") && m.report["error_estimates"].contains("acn"))
            row.push_back(fmt_number(m.report["error_estimates"]["acn"].get<double>()));
        else
            row.push_back("");
        row.push_back(cell(m.report, "writhe"));
        row.push_back(cell(m.report, "mobius_energy"));
        row.push_back(cell(m.report, "near"));
        row.push_back(cell(m.report, "far"));
        std::map<std::string, json> by_name;
        for (const json& cert : m.certificates)
            by_name[cert["name"].get<std::string>()] = cert;
        for (const std::string& name : cert_names) {
            if (by_name.count(name) == 0) {
                for (int k = 0; k < 4; ++k)
                    row.push_back("");
                continue;
            }
            const json& cert = by_name[name];
            row.push_back(fmt_number(cert["lhs"].get<double>()));
            row.push_back(fmt_number(cert["rhs"].get<double>()));
            row.push_back(fmt_number(cert["margin"].get<double>()));
            row.push_back(cert["pass"].get<bool>() ? "true" : "false");
        }
        row.push_back("");
        csv += join(row);
    }

    emit(csv, csv_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric invariants and certified inequalities for knotted curves"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "materialize a curve family to JSON");
    generate->add_option("--family", gen.family, "curve family")->required();
    generate->add_option("--samples", gen.samples, "vertex count");
    generate->add_option("-o,--out", gen.out_path, "output path (default stdout)");
    generate->add_option("--params", gen.params_json, "raw JSON parameter object");
    generate->add_option("--p", gen.p, "meridian winding count");
    generate->add_option("--q", gen.q, "longitude winding count");
    generate->add_option("--n", gen.n, "helix composite crossing count (odd)");
    generate->add_option("--major-radius", gen.major_radius, "torus major radius");
    generate->add_option("--minor-radius", gen.minor_radius, "torus minor radius");
    generate->add_option("--exponent", gen.exponent, "helix height exponent");
    generate->add_option("--theta-max", gen.theta_max, "spiral angular extent");
    generate->add_option("--corner-radius", gen.corner_radius, "rounded polygon corner radius");
    generate->add_option("--radius", gen.radius, "circle radius");
    generate->add_option("--modes", gen.modes, "fourier mode count");
    generate->add_option("--seed", gen.seed, "random seed");
    generate->add_option("--from", gen.from, "segment start x,y,z");
    generate->add_option("--to", gen.to, "segment end x,y,z");
    generate->add_option("--vertices", gen.vertices, "polygon corners x,y,z;x,y,z;...");
    generate->add_flag("--closed", gen.closed, "close the rounded polygon");

    std::string inv_in, inv_out;
    bool inv_refine = false;
    int workers = 0;
    CLI::App* invariants = app.add_subcommand("invariants", "compute the invariant report");
    invariants->add_option("input", inv_in, "curve JSON path")->required();
    invariants->add_option("-o,--out", inv_out, "report path (default stdout)");
    invariants->add_flag("--refine", inv_refine, "add Richardson error estimates");
    invariants->add_option("--workers", workers, "kernel worker threads (0 = auto)");

    std::string ver_in, ver_out, ver_which = "all", ver_basepoint, ver_center;
    double ver_rho = 0.0, ver_a = 0.0, ver_b = 0.0;
    std::size_t ver_subarcs = 0;
    CLI::App* verify = app.add_subcommand("verify", "certify the paper inequalities");
    verify->add_option("input", ver_in, "curve JSON path")->required();
    verify->add_option("--which", ver_which,
                       "packing|oscillation|illumination|main_theorem|shells|all");
    verify->add_option("-o,--out", ver_out, "certificate path (default stdout)");
    verify->add_option("--basepoint", ver_basepoint, "illumination/shells basepoint x,y,z");
    verify->add_option("--rho", ver_rho, "packing ball radius");
    verify->add_option("--a", ver_a, "oscillation inner radius");
    verify->add_option("--b", ver_b, "oscillation outer radius");
    verify->add_option("--center", ver_center, "oscillation center x,y,z");
    verify->add_option("--subarcs", ver_subarcs, "shell sub-arc count (0 = auto)");
    verify->add_option("--workers", workers, "kernel worker threads (0 = auto)");

    std::string sweep_plan, sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep to CSV");
    sweep->add_option("plan", sweep_plan, "sweep plan JSON path")->required();
    sweep->add_option("-o,--out", sweep_out, "CSV path (default stdout)");
    sweep->add_option("--workers", workers, "concurrent sweep members (0 = auto)");

    std::string oracle_in, oracle_out;
    std::size_t oracle_dirs = 1000;
    std::uint64_t oracle_seed = 1;
    CLI::App* oracle = app.add_subcommand("oracle", "projection-count crossing oracle");
    oracle->add_option("input", oracle_in, "curve JSON path")->required();
    oracle->add_option("--directions", oracle_dirs, "number of random directions");
    oracle->add_option("--seed", oracle_seed, "direction sampler seed");
    oracle->add_option("-o,--out", oracle_out, "result path (default stdout)");
    oracle->add_option("--workers", workers, "worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (generate->parsed())
        return cmd_generate(gen, *generate);
    if (invariants->parsed())
        return cmd_invariants(inv_in, inv_out, inv_refine, workers);
    if (verify->parsed()) {
        json params = json::object();
        if (!ver_basepoint.empty())
            params["basepoint"] = parse_triple(ver_basepoint, "--basepoint");
        if (verify->count("--rho") > 0)
            params["rho"] = ver_rho;
        if (verify->count("--a") > 0)
            params["a"] = ver_a;
        if (verify->count("--b") > 0)
            params["b"] = ver_b;
        if (!ver_center.empty())
            params["center"] = parse_triple(ver_center, "--center");
        if (ver_subarcs > 0)
            params["subarcs"] = ver_subarcs;
        return cmd_verify(ver_in, ver_which, ver_out, params, workers);
    }
    if (sweep->parsed())
        return cmd_sweep(sweep_plan, sweep_out, workers);
    if (oracle->parsed())
        return cmd_oracle(oracle_in, oracle_out, oracle_dirs, oracle_seed, workers);
    return kExitInputError;
}
