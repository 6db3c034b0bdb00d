#include "knotcurv.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "knotcurv/bounds.hpp"
#include "knotcurv/error.hpp"
#include "knotcurv/generators.hpp"
#include "knotcurv/invariants.hpp"
#include "knotcurv/serialize.hpp"
#include "knotcurv/shells.hpp"

using namespace knotcurv;

extern "C" struct kc_curve {
    SampledCurve rep;
};

namespace {

thread_local std::string g_last_error;

kc_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return KC_ERR_INVALID_ARGUMENT;
        case ErrorCode::invalid_curve: return KC_ERR_INVALID_CURVE;
        case ErrorCode::self_intersection: return KC_ERR_SELF_INTERSECTION;
        case ErrorCode::precondition: return KC_ERR_PRECONDITION;
        case ErrorCode::parse: return KC_ERR_PARSE;
        case ErrorCode::io: return KC_ERR_IO;
    }
    return KC_ERR_INTERNAL;
}

template <typename Fn>
kc_status guarded(Fn&& fn) {
    try {
        fn();
        return KC_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return KC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return KC_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok)
        fail(ErrorCode::invalid_argument, what);
}

Vec3 vec_from(const double p[3]) { return {p[0], p[1], p[2]}; }

InvariantOptions make_options(int refine, int workers) {
    InvariantOptions opts;
    opts.refine = refine != 0;
    opts.workers = workers <= 0 ? 0u : static_cast<unsigned>(workers);
    return opts;
}

Vec3 default_basepoint(const SampledCurve& curve) {
    const Ball ball = min_enclosing_ball(curve);
    return ball.center + Vec3{0, 0, ball.radius + 2.5};
}

}  // namespace

extern "C" {

const char* kc_status_name(kc_status status) {
    switch (status) {
        case KC_OK: return "ok";
        case KC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case KC_ERR_INVALID_CURVE: return "invalid curve";
        case KC_ERR_SELF_INTERSECTION: return "self intersection";
        case KC_ERR_PRECONDITION: return "precondition violated";
        case KC_ERR_PARSE: return "parse error";
        case KC_ERR_IO: return "io error";
        case KC_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* kc_last_error(void) { return g_last_error.c_str(); }

kc_status kc_curve_from_json(const char* json_text, kc_curve** out) {
    return guarded([&] {
        require(json_text != nullptr && out != nullptr, "null argument");
        auto* handle = new kc_curve{curve_from_string(json_text)};
        *out = handle;
    });
}

kc_status kc_curve_to_json(const kc_curve* curve, char** json_out) {
    return guarded([&] {
        require(curve != nullptr && json_out != nullptr, "null argument");
        *json_out = dup_string(curve_to_string(curve->rep));
        require(*json_out != nullptr, "out of memory");
    });
}

kc_status kc_curve_read(const char* path, kc_curve** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = new kc_curve{load_curve(path)};
    });
}

kc_status kc_curve_write(const kc_curve* curve, const char* path) {
    return guarded([&] {
        require(curve != nullptr && path != nullptr, "null argument");
        save_curve(curve->rep, path);
    });
}

void kc_curve_free(kc_curve* curve) { delete curve; }

void kc_string_free(char* text) { std::free(text); }

kc_status kc_generate(const char* spec_json, kc_curve** out) {
    return guarded([&] {
        require(spec_json != nullptr && out != nullptr, "null argument");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(spec_json);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::parse, e.what());
        }
        *out = new kc_curve{generate(CurveSpec::from_json(j))};
    });
}

kc_status kc_resample(const kc_curve* curve, size_t n, kc_curve** out) {
    return guarded([&] {
        require(curve != nullptr && out != nullptr, "null argument");
        *out = new kc_curve{resample(curve->rep, n)};
    });
}

size_t kc_curve_vertex_count(const kc_curve* curve) {
    return curve == nullptr ? 0 : curve->rep.size();
}

int kc_curve_is_closed(const kc_curve* curve) {
    return curve != nullptr && curve->rep.closed ? 1 : 0;
}

kc_status kc_arclength(const kc_curve* curve, double* out) {
    return guarded([&] {
        require(curve != nullptr && out != nullptr, "null argument");
        *out = build_arc_table(curve->rep).total;
    });
}

kc_status kc_total_curvature(const kc_curve* curve, double* out) {
    return guarded([&] {
        require(curve != nullptr && out != nullptr, "null argument");
        *out = total_curvature(curve->rep);
    });
}

kc_status kc_thickness(const kc_curve* curve, double* out) {
    return guarded([&] {
        require(curve != nullptr && out != nullptr, "null argument");
        *out = thickness_radius(curve->rep);
    });
}

kc_status kc_min_enclosing_ball(const kc_curve* curve, double center[3], double* radius) {
    return guarded([&] {
        require(curve != nullptr && center != nullptr && radius != nullptr, "null argument");
        const Ball ball = min_enclosing_ball(curve->rep);
        center[0] = ball.center.x;
        center[1] = ball.center.y;
        center[2] = ball.center.z;
        *radius = ball.radius;
    });
}

kc_status kc_illumination(const kc_curve* curve, const double basepoint[3], double* value,
                          double* error_estimate) {
    return guarded([&] {
        require(curve != nullptr && basepoint != nullptr && value != nullptr, "null argument");
        const ScalarWithError r = illumination(curve->rep, vec_from(basepoint));
        *value = r.value;
        if (error_estimate != nullptr)
            *error_estimate = r.error;
    });
}

kc_status kc_invariants(const kc_curve* curve, int refine, int workers, char** report_json) {
    return guarded([&] {
        require(curve != nullptr && report_json != nullptr, "null argument");
        const InvariantReport report =
            compute_invariants(curve->rep, make_options(refine, workers));
        *report_json = dup_string(report_to_json(report).dump(1) + "\n");
        require(*report_json != nullptr, "out of memory");
    });
}

kc_status kc_verify(const kc_curve* curve, const char* which, const char* params_json,
                    int workers, char** certificates_json, int* all_pass) {
    return guarded([&] {
        require(curve != nullptr && which != nullptr && certificates_json != nullptr,
                "null argument");
        nlohmann::json params = nlohmann::json::object();
        if (params_json != nullptr && params_json[0] != '\0') {
            try {
                params = nlohmann::json::parse(params_json);
            } catch (const nlohmann::json::exception& e) {
                fail(ErrorCode::parse, e.what());
            }
        }
        auto get_point = [&](const char* key, const Vec3& fallback) {
            if (!params.contains(key))
                return fallback;
            const auto& a = params.at(key);
            if (!a.is_array() || a.size() != 3)
                fail(ErrorCode::parse, std::string("'") + key + "' must be [x,y,z]");
            return Vec3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
        };

        const std::string selector = which;
        const SampledCurve& c = curve->rep;
        const InvariantOptions opts = make_options(0, workers);
        std::vector<BoundCertificate> certs;

        const bool all = selector == "all";
        bool known = all;
        if (all || selector == "packing") {
            known = true;
            std::optional<double> rho;
            if (params.contains("rho"))
                rho = params.at("rho").get<double>();
            for (auto& cert : check_packing(c, rho))
                certs.push_back(std::move(cert));
        }
        if (selector == "oscillation") {
            known = true;
            if (!params.contains("a") || !params.contains("b"))
                fail(ErrorCode::invalid_argument, "oscillation needs 'a' and 'b' parameters");
            for (auto& cert : check_oscillation(c, params.at("a").get<double>(),
                                                params.at("b").get<double>(),
                                                get_point("center", Vec3{0, 0, 0})))
                certs.push_back(std::move(cert));
        }
        if (all || selector == "illumination") {
            known = true;
            certs.push_back(check_illumination(c, get_point("basepoint", default_basepoint(c))));
        }
        if (all || selector == "main_theorem") {
            known = true;
            if (!all || c.closed)
                for (auto& cert : check_main_theorem(c, opts))
                    certs.push_back(std::move(cert));
        }
        if (all || selector == "shells") {
            known = true;
            const std::size_t subarcs = params.value("subarcs", std::size_t{0});
            for (auto& cert :
                 check_shell_suite(c, get_point("basepoint", default_basepoint(c)), subarcs))
                certs.push_back(std::move(cert));
        }
        if (!known)
            fail(ErrorCode::invalid_argument, "unknown certificate selector '" + selector + "'");

        nlohmann::json out = nlohmann::json::array();
        bool ok = true;
        for (const BoundCertificate& cert : certs) {
            ok = ok && cert.pass;
            out.push_back(certificate_to_json(cert));
        }
        *certificates_json = dup_string(out.dump(1) + "\n");
        require(*certificates_json != nullptr, "out of memory");
        if (all_pass != nullptr)
            *all_pass = ok ? 1 : 0;
    });
}

kc_status kc_oracle(const kc_curve* curve, size_t directions, unsigned long long seed,
                    int workers, char** result_json) {
    return guarded([&] {
        require(curve != nullptr && result_json != nullptr, "null argument");
        const OracleResult r = projection_crossing_oracle(
            curve->rep, directions, seed, workers <= 0 ? 0u : static_cast<unsigned>(workers));
        const nlohmann::json j{{"mean", r.mean},
                               {"min_observed", r.min_observed},
                               {"directions", r.directions},
                               {"retries", r.retries}};
        *result_json = dup_string(j.dump(1) + "\n");
        require(*result_json != nullptr, "out of memory");
    });
}

kc_status kc_shell_analysis(const kc_curve* curve, const double basepoint[3], size_t subarcs,
                            char** result_json) {
    return guarded([&] {
        require(curve != nullptr && basepoint != nullptr && result_json != nullptr,
                "null argument");
        const SampledCurve& c = curve->rep;
        std::size_t m = subarcs;
        if (m == 0)
            m = static_cast<std::size_t>(std::ceil(1.25 * build_arc_table(c).total)) + 1;
        const LabelString ls = shell_labels(c, vec_from(basepoint), m);
        const ShellProfile prof = shell_profile(ls);
        const ExtremalString ex = construct_extremal_string(ls);
        const nlohmann::json j{{"labels", ls.labels},
                               {"epsilon", ls.epsilon},
                               {"kappa", ls.kappa},
                               {"levels", prof.levels},
                               {"phi", prof.phi},
                               {"Phi", prof.Phi},
                               {"beta", prof.beta},
                               {"violations", prof.violations},
                               {"energy", string_energy(ls)},
                               {"extremal_energy", ex.energy()}};
        *result_json = dup_string(j.dump(1) + "\n");
        require(*result_json != nullptr, "out of memory");
    });
}

kc_status kc_shell_exponent(const kc_curve* curve, size_t basepoints, unsigned long long seed,
                            char** result_json) {
    return guarded([&] {
        require(curve != nullptr && result_json != nullptr, "null argument");
        const ShellExponent fit = estimate_shell_exponent(curve->rep, basepoints, seed);
        nlohmann::json per_point = nlohmann::json::array();
        for (const auto& p : fit.per_point)
            per_point.push_back({{"vertex", p.vertex},
                                 {"slope", p.slope},
                                 {"residual", p.residual},
                                 {"shells", p.shells}});
        const nlohmann::json j{{"beta_hat", fit.beta_hat},
                               {"in_conjectured_range", fit.in_conjectured_range},
                               {"mean_residual", fit.mean_residual},
                               {"per_point", per_point}};
        *result_json = dup_string(j.dump(1) + "\n");
        require(*result_json != nullptr, "out of memory");
    });
}

}  // extern "C"
