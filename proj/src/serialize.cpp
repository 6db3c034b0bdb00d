#include "knotcurv/serialize.hpp"

#include <fstream>
#include <sstream>

#include "knotcurv/error.hpp"

namespace knotcurv {

nlohmann::json curve_to_json(const SampledCurve& curve) {
    nlohmann::json j;
    j["closed"] = curve.closed;
    nlohmann::json verts = nlohmann::json::array();
    for (const Vec3& v : curve.vertices)
        verts.push_back({v.x, v.y, v.z});
    j["vertices"] = std::move(verts);
    if (!curve.meta.empty())
        j["meta"] = curve.meta;
    return j;
}

SampledCurve curve_from_json(const nlohmann::json& j) {
    SampledCurve curve;
    try {
        curve.closed = j.at("closed").get<bool>();
        const auto& verts = j.at("vertices");
        if (!verts.is_array())
            fail(ErrorCode::parse, "\"vertices\" must be an array");
        curve.vertices.reserve(verts.size());
        for (const auto& v : verts) {
            if (!v.is_array() || v.size() != 3)
                fail(ErrorCode::parse, "each vertex must be an [x, y, z] triple");
            curve.vertices.push_back(
                {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
        }
        if (j.contains("meta"))
            curve.meta = j.at("meta").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, std::string("bad curve json: ") + e.what());
    }
    curve.validate();
    return curve;
}

std::string curve_to_string(const SampledCurve& curve) {
    return curve_to_json(curve).dump(1) + "\n";
}

SampledCurve curve_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, e.what());
    }
    return curve_from_json(j);
}

SampledCurve load_curve(const std::string& path) { return curve_from_string(read_text_file(path)); }

void save_curve(const SampledCurve& curve, const std::string& path) {
    write_text_file(path, curve_to_string(curve));
}

nlohmann::json report_to_json(const InvariantReport& report) {
    nlohmann::json j;
    j["length"] = report.length;
    j["total_curvature"] = report.total_curvature;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put("thickness", report.thickness);
    put("ropelength", report.ropelength);
    put("acn", report.acn);
    put("writhe", report.writhe);
    put("mobius_energy", report.mobius_energy);
    put("near", report.near);
    put("far", report.far);
    j["error_estimates"] = report.error_estimates;
    return j;
}

nlohmann::json certificate_to_json(const BoundCertificate& cert) {
    return nlohmann::json{{"name", cert.name},
                          {"lhs", cert.lhs},
                          {"rhs", cert.rhs},
                          {"margin", cert.margin},
                          {"pass", cert.pass},
                          {"tolerance_used", cert.tolerance_used},
                          {"inputs_digest", cert.inputs_digest}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::io, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        fail(ErrorCode::io, "short write to '" + path + "'");
}

}  // namespace knotcurv
