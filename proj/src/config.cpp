#include "casimir/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "casimir/constants.hpp"

namespace casimir {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& known)
{
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key))
            fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback, bool required = false)
{
    if (!obj.contains(key)) {
        if (required) fail(path + "." + key, "missing required key");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key, const std::string& fallback)
{
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

// particle.material / surface.material subobject
void parse_material(const json& obj, const std::string& path, std::string& kind,
                    double& omega_p, double& epsilon)
{
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown(obj, path, {"kind", "omega_p", "epsilon"});
    kind = get_string(obj, path, "kind", kind);
    if (kind == "plasma") {
        omega_p = get_number(obj, path, "omega_p", omega_p);
        if (!(omega_p > 0.0)) fail(path + ".omega_p", "must be positive");
        if (obj.contains("epsilon"))
            fail(path + ".epsilon", "not meaningful for a plasma material");
    } else if (kind == "constant") {
        epsilon = get_number(obj, path, "epsilon", epsilon, true);
        if (!(epsilon >= 1.0)) fail(path + ".epsilon", "must be >= 1");
        if (obj.contains("omega_p"))
            fail(path + ".omega_p", "not meaningful for a constant material");
    } else if (kind == "perfect") {
        if (obj.contains("omega_p") || obj.contains("epsilon"))
            fail(path, "perfect conductor takes no parameters");
    } else {
        fail(path + ".kind", "expected one of plasma|constant|perfect");
    }
}

PermittivityModel build_material(const std::string& kind, double omega_p,
                                 double epsilon)
{
    if (kind == "plasma") return PermittivityModel::plasma(omega_p);
    if (kind == "constant") return PermittivityModel::constant(epsilon);
    return PermittivityModel::perfect_conductor();
}

} // namespace

std::string mode_name(EvalMode m)
{
    switch (m) {
    case EvalMode::Retarded: return "retarded";
    case EvalMode::Vdw: return "vdw";
    default: return "cp";
    }
}

EvalMode mode_from_name(const std::string& name)
{
    if (name == "retarded") return EvalMode::Retarded;
    if (name == "vdw") return EvalMode::Vdw;
    if (name == "cp") return EvalMode::Cp;
    throw ConfigError("mode: expected one of retarded|vdw|cp");
}

RunConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("top level: expected an object");
    reject_unknown(doc, "", {"particle", "surface", "geometry", "mode", "sweep",
                             "transition", "quad", "output"});

    RunConfig cfg;

    if (doc.contains("particle")) {
        const json& p = doc.at("particle");
        if (!p.is_object()) fail("particle", "expected an object");
        reject_unknown(p, "particle",
                       {"r", "volume_nm3", "theta_deg", "phi_deg", "material"});
        cfg.r = get_number(p, "particle", "r", cfg.r);
        if (!(cfg.r >= 1.0)) fail("particle.r", "aspect ratio must be >= 1");
        cfg.volume_nm3 = get_number(p, "particle", "volume_nm3", cfg.volume_nm3);
        if (!(cfg.volume_nm3 > 0.0)) fail("particle.volume_nm3", "must be positive");
        cfg.theta_deg = get_number(p, "particle", "theta_deg", cfg.theta_deg);
        cfg.phi_deg = get_number(p, "particle", "phi_deg", cfg.phi_deg);
        if (p.contains("material"))
            parse_material(p.at("material"), "particle.material",
                           cfg.particle_material_kind, cfg.particle_omega_p,
                           cfg.particle_epsilon);
    }

    if (doc.contains("surface")) {
        const json& s = doc.at("surface");
        if (!s.is_object()) fail("surface", "expected an object");
        reject_unknown(s, "surface", {"material"});
        if (s.contains("material"))
            parse_material(s.at("material"), "surface.material",
                           cfg.surface_material_kind, cfg.surface_omega_p,
                           cfg.surface_epsilon);
    }

    if (doc.contains("geometry")) {
        const json& g = doc.at("geometry");
        if (!g.is_object()) fail("geometry", "expected an object");
        reject_unknown(g, "geometry", {"a_nm", "z0_nm", "lambda_c_over_z0"});
        cfg.a_nm = get_number(g, "geometry", "a_nm", cfg.a_nm);
        cfg.z0_nm = get_number(g, "geometry", "z0_nm", cfg.z0_nm);
        if (!(cfg.z0_nm > 0.0)) fail("geometry.z0_nm", "must be positive");
        if (!(cfg.a_nm > 0.0)) fail("geometry.a_nm", "must be positive");
        if (!(cfg.a_nm < cfg.z0_nm))
            fail("geometry.a_nm", "corrugation amplitude must stay below z0");
        if (g.contains("lambda_c_over_z0")) {
            const double l = get_number(g, "geometry", "lambda_c_over_z0", 0.0);
            if (!(l > 0.0)) fail("geometry.lambda_c_over_z0", "must be positive");
            cfg.lambda_c_over_z0 = l;
        }
    }

    cfg.mode = mode_from_name(get_string(doc, "", "mode", mode_name(cfg.mode)));

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        if (!s.is_object()) fail("sweep", "expected an object");
        reject_unknown(s, "sweep", {"min", "max", "points"});
        cfg.sweep_min = get_number(s, "sweep", "min", cfg.sweep_min);
        cfg.sweep_max = get_number(s, "sweep", "max", cfg.sweep_max);
        if (!(cfg.sweep_min >= 0.1 && cfg.sweep_max <= 50.0 &&
              cfg.sweep_min < cfg.sweep_max))
            fail("sweep", "range must satisfy 0.1 <= min < max <= 50");
        const double pts = get_number(s, "sweep", "points",
                                      static_cast<double>(cfg.sweep_points));
        if (!(pts >= 2 && pts <= 100000 && pts == std::floor(pts)))
            fail("sweep.points", "expected an integer in [2, 100000]");
        cfg.sweep_points = static_cast<std::size_t>(pts);
    }

    if (doc.contains("transition")) {
        const json& t = doc.at("transition");
        if (!t.is_object()) fail("transition", "expected an object");
        reject_unknown(t, "transition", {"bracket"});
        if (t.contains("bracket")) {
            const json& b = t.at("bracket");
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() ||
                !b[1].is_number())
                fail("transition.bracket", "expected [lo, hi]");
            const double lo = b[0].get<double>(), hi = b[1].get<double>();
            if (!(lo > 0.0 && lo < hi))
                fail("transition.bracket", "requires 0 < lo < hi");
            cfg.transition_bracket = {lo, hi};
        }
    }

    if (doc.contains("quad")) {
        const json& q = doc.at("quad");
        if (!q.is_object()) fail("quad", "expected an object");
        reject_unknown(q, "quad", {"rel_tol", "abs_tol", "max_evals"});
        if (q.contains("rel_tol")) {
            cfg.quad.rel_tol = get_number(q, "quad", "rel_tol", cfg.quad.rel_tol);
            if (!(cfg.quad.rel_tol >= 1e-13 && cfg.quad.rel_tol <= 1e-2))
                fail("quad.rel_tol", "expected a value in [1e-13, 1e-2]");
            cfg.quad_rel_tol_set = true;
        }
        cfg.quad.abs_tol = get_number(q, "quad", "abs_tol", cfg.quad.abs_tol);
        if (!(cfg.quad.abs_tol >= 0.0)) fail("quad.abs_tol", "must be nonnegative");
        const double me = get_number(q, "quad", "max_evals",
                                     static_cast<double>(cfg.quad.max_evaluations));
        if (!(me >= 1000 && me == std::floor(me)))
            fail("quad.max_evals", "expected an integer >= 1000");
        cfg.quad.max_evaluations = static_cast<std::size_t>(me);
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        if (!o.is_object()) fail("output", "expected an object");
        reject_unknown(o, "output", {"path", "format"});
        cfg.output_path = get_string(o, "output", "path", cfg.output_path);
        const std::string fmt = get_string(o, "output", "format", "csv");
        if (fmt == "csv")
            cfg.format = OutputFormat::Csv;
        else if (fmt == "json")
            cfg.format = OutputFormat::Json;
        else
            fail("output.format", "expected csv or json");
    }

    // cross-field checks that need the assembled models
    cfg.particle().validate();
    if (cfg.mode == EvalMode::Vdw && !cfg.particle().material.dispersive() &&
        !cfg.surface().dispersive())
        throw ConfigError(
            "mode: vdw requires a dispersive (plasma) particle or surface");

    return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ParticleModel RunConfig::particle() const
{
    ParticleModel p;
    p.aspect_ratio = r;
    p.volume = volume_nm3 * 1e-27;
    p.material = build_material(particle_material_kind, particle_omega_p,
                                particle_epsilon);
    p.theta = theta_deg * kPi / 180.0;
    p.phi = phi_deg * kPi / 180.0;
    return p;
}

PermittivityModel RunConfig::surface() const
{
    return build_material(surface_material_kind, surface_omega_p, surface_epsilon);
}

Geometry RunConfig::geometry(double lambda_over_z0) const
{
    Geometry g{amplitude(), 2.0 * kPi / (lambda_over_z0 * z0()), z0()};
    g.validate();
    return g;
}

std::string RunConfig::fingerprint() const
{
    json mat_p, mat_s;
    mat_p["kind"] = particle_material_kind;
    if (particle_material_kind == "plasma") mat_p["omega_p"] = particle_omega_p;
    if (particle_material_kind == "constant") mat_p["epsilon"] = particle_epsilon;
    mat_s["kind"] = surface_material_kind;
    if (surface_material_kind == "plasma") mat_s["omega_p"] = surface_omega_p;
    if (surface_material_kind == "constant") mat_s["epsilon"] = surface_epsilon;

    json doc;
    doc["particle"] = {{"r", r},
                       {"volume_nm3", volume_nm3},
                       {"theta_deg", theta_deg},
                       {"phi_deg", phi_deg},
                       {"material", mat_p}};
    doc["surface"] = {{"material", mat_s}};
    json geom = {{"a_nm", a_nm}, {"z0_nm", z0_nm}};
    if (lambda_c_over_z0) geom["lambda_c_over_z0"] = *lambda_c_over_z0;
    doc["geometry"] = geom;
    doc["mode"] = mode_name(mode);
    doc["sweep"] = {{"min", sweep_min},
                    {"max", sweep_max},
                    {"points", sweep_points}};
    if (transition_bracket)
        doc["transition"] = {
            {"bracket", {transition_bracket->first, transition_bracket->second}}};
    json quad_doc = {{"abs_tol", quad.abs_tol}, {"max_evals", quad.max_evaluations}};
    if (quad_rel_tol_set) quad_doc["rel_tol"] = quad.rel_tol;
    doc["quad"] = quad_doc;
    return doc.dump();
}

} // namespace casimir
