#pragma once

#include <string>
#include <vector>

#include "casimir/config.hpp"

namespace casimir {

// One row of the phase-comparison table (retarded vs vdW phase at the same
// corrugation wavelength).
struct DeltaRow {
    double lambda_over_z0 = 0;
    double delta_retarded = 0;
    double delta_vdw = 0;
    std::string error;

    bool ok() const { return error.empty(); }
    double ratio() const { return delta_retarded / delta_vdw; }
};

// Fixed %.12g formatting; the emitted text is byte-deterministic across
// runs and platforms with IEEE doubles.
std::string format_number(double x);

std::string render_sweep_csv(const std::vector<SweepRow>& rows,
                             const RunConfig& cfg, double omega_ref);
std::string render_sweep_json(const std::vector<SweepRow>& rows,
                              const RunConfig& cfg, double omega_ref);

std::string render_eval_csv(const SweepRow& row, const RunConfig& cfg,
                            double omega_ref);
std::string render_eval_json(const SweepRow& row, const RunConfig& cfg,
                             double omega_ref);

std::string render_transition_csv(const TransitionResult& t, const RunConfig& cfg);
std::string render_transition_json(const TransitionResult& t, const RunConfig& cfg);

std::string render_delta_csv(const std::vector<DeltaRow>& rows,
                             const RunConfig& cfg);
std::string render_delta_json(const std::vector<DeltaRow>& rows,
                              const RunConfig& cfg);

// Write to `path` through a temporary plus rename so readers never observe
// a partial file.  Empty path writes to stdout.
void write_output(const std::string& path, const std::string& text);

} // namespace casimir
