#include "casimir/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace casimir {

using nlohmann::json;

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string header_comment(const RunConfig& cfg, double omega_ref)
{
    std::string h;
    h += "# v_*_norm = V * z0^4 / (eps0 * V_particle * omega_ref), omega_ref = " +
         format_number(omega_ref) + " rad/s\n";
    h += "# config: " + cfg.fingerprint() + "\n";
    return h;
}

std::string sweep_row_csv(const SweepRow& r)
{
    if (!r.ok())
        return format_number(r.lambda_over_z0) + ",,,,,,,,error: " + r.error + "\n";
    const double n = r.v.to_normalized;
    std::string line = format_number(r.lambda_over_z0);
    for (double v : {r.v.xx * n, r.v.yy * n, r.v.zz * n, r.v.xz * n,
                     r.v.sum() * n, r.amplitude * n, r.delta})
        line += "," + format_number(v);
    line += "," + regime_name(r.regime) + "\n";
    return line;
}

json sweep_row_json(const SweepRow& r)
{
    json o;
    o["lambda_c_over_z0"] = r.lambda_over_z0;
    if (!r.ok()) {
        o["error"] = r.error;
        return o;
    }
    const double n = r.v.to_normalized;
    o["v_xx_norm"] = r.v.xx * n;
    o["v_yy_norm"] = r.v.yy * n;
    o["v_zz_norm"] = r.v.zz * n;
    o["v_xz_norm"] = r.v.xz * n;
    o["v_sum_norm"] = r.v.sum() * n;
    o["A_norm"] = r.amplitude * n;
    o["delta_rad"] = r.delta;
    o["regime"] = regime_name(r.regime);
    o["x_eq_m"] = r.x_eq;
    o["evaluations"] = r.v.evaluations;
    return o;
}

json meta_json(const RunConfig& cfg, double omega_ref)
{
    json m;
    m["omega_ref"] = omega_ref;
    m["normalization"] = "V * z0^4 / (eps0 * V_particle * omega_ref)";
    m["config"] = json::parse(cfg.fingerprint());
    return m;
}

constexpr const char* kSweepHeader =
    "lambda_c_over_z0,v_xx_norm,v_yy_norm,v_zz_norm,v_xz_norm,"
    "v_sum_norm,A_norm,delta_rad,regime\n";

} // namespace

std::string render_sweep_csv(const std::vector<SweepRow>& rows,
                             const RunConfig& cfg, double omega_ref)
{
    std::string out = header_comment(cfg, omega_ref);
    out += kSweepHeader;
    for (const auto& r : rows) out += sweep_row_csv(r);
    return out;
}

std::string render_sweep_json(const std::vector<SweepRow>& rows,
                              const RunConfig& cfg, double omega_ref)
{
    json doc;
    doc["meta"] = meta_json(cfg, omega_ref);
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(sweep_row_json(r));
    doc["rows"] = arr;
    return doc.dump(2) + "\n";
}

std::string render_eval_csv(const SweepRow& row, const RunConfig& cfg,
                            double omega_ref)
{
    std::string out = header_comment(cfg, omega_ref);
    out += kSweepHeader;
    out += sweep_row_csv(row);
    return out;
}

std::string render_eval_json(const SweepRow& row, const RunConfig& cfg,
                             double omega_ref)
{
    json doc;
    doc["meta"] = meta_json(cfg, omega_ref);
    doc["result"] = sweep_row_json(row);
    return doc.dump(2) + "\n";
}

std::string render_transition_csv(const TransitionResult& t, const RunConfig& cfg)
{
    std::string out = "# config: " + cfg.fingerprint() + "\n";
    out += "root_lambda_c_over_z0,bracket_lo,bracket_hi,evaluations\n";
    out += format_number(t.root) + "," + format_number(t.bracket_lo) + "," +
           format_number(t.bracket_hi) + "," + std::to_string(t.evaluations) + "\n";
    return out;
}

std::string render_transition_json(const TransitionResult& t, const RunConfig& cfg)
{
    json doc;
    doc["config"] = json::parse(cfg.fingerprint());
    doc["root_lambda_c_over_z0"] = t.root;
    doc["bracket_lo"] = t.bracket_lo;
    doc["bracket_hi"] = t.bracket_hi;
    doc["evaluations"] = t.evaluations;
    return doc.dump(2) + "\n";
}

std::string render_delta_csv(const std::vector<DeltaRow>& rows,
                             const RunConfig& cfg)
{
    std::string out = "# config: " + cfg.fingerprint() + "\n";
    out += "lambda_c_over_z0,delta_retarded_rad,delta_vdw_rad,delta_ratio\n";
    for (const auto& r : rows) {
        if (!r.ok()) {
            out += format_number(r.lambda_over_z0) + ",,,error: " + r.error + "\n";
            continue;
        }
        out += format_number(r.lambda_over_z0) + "," +
               format_number(r.delta_retarded) + "," + format_number(r.delta_vdw) +
               "," + format_number(r.ratio()) + "\n";
    }
    return out;
}

std::string render_delta_json(const std::vector<DeltaRow>& rows,
                              const RunConfig& cfg)
{
    json doc;
    doc["config"] = json::parse(cfg.fingerprint());
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["lambda_c_over_z0"] = r.lambda_over_z0;
        if (!r.ok()) {
            o["error"] = r.error;
        } else {
            o["delta_retarded_rad"] = r.delta_retarded;
            o["delta_vdw_rad"] = r.delta_vdw;
            o["delta_ratio"] = r.ratio();
        }
        arr.push_back(o);
    }
    doc["rows"] = arr;
    return doc.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << text;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move output into place: " + path);
}

} // namespace casimir
