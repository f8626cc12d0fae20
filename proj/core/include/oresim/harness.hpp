// harness.hpp - parameter sweeps over a coupling, CSV/JSON/SVG emission, and
// the unit plumbing shared with the command-line tool.

#pragma once

#include <string>
#include <vector>

#include "oresim/model.hpp"
#include "oresim/optimize.hpp"

namespace oresim::harness {

enum class SweepVariable { g_r, g_nr, g_ph, g_locked };  // g_locked: g_r = g_nr

const char* to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

// Which quantities a sweep computes. Everything computed ends up in the CSV;
// columns for quantities that were not computed are emitted empty.
struct OutputSet {
    bool s_max{false};
    bool a_pm{false};
    bool s_diff{false};
    bool argmax_state{false};

    bool any() const { return s_max || a_pm || s_diff || argmax_state; }
    bool needs_optimizer() const { return s_max || s_diff || argmax_state; }
};

// One sweep: a fixed parameter point in user units (GHz, ns, K), one swept
// coupling over an inclusive uniform grid, and the requested outputs.
struct SweepConfig {
    double omega_ghz{1.0};
    double omega0_ghz{0.1};
    double g_r_ghz{0.0};
    double g_nr_ghz{0.0};
    double g_ph_ghz{0.0};
    int n_bath{20};
    double temperature_k{0.025};
    bool zero_temperature{false};  // use the T -> 0 weights, ignore temperature_k
    double time_ns{0.1};

    SweepVariable variable{SweepVariable::g_r};
    double lo_ghz{0.0};
    double hi_ghz{0.0};
    int steps{101};

    OutputSet outputs;

    std::string csv_path;   // empty = do not write
    std::string json_path;  // sidecar
    std::string svg_path;   // advisory plot

    void validate() const;

    // inclusive uniform grid lo..hi; steps = 1 yields just lo
    std::vector<double> grid() const;

    // internal-unit parameters with the sweep variable set to value_ghz
    model::HamiltonianParams params_at(double value_ghz) const;

    spectral::ThermalWeights make_weights() const;
};

// One grid point. Quantities that were not requested (or that failed) stay
// NaN and emit as empty CSV fields.
struct SweepRow {
    double sweep_value_ghz;
    double s_max;
    double c_plus_abs;
    double theta_rad;
    double s_diff;
    double a_pm;
    double wall_ms;
    bool failed{false};
    std::string error;  // diagnostic when failed

    SweepRow();  // all values NaN
};

// Evaluate one grid point: build, diagonalize, channel at time_ns, optimize,
// metric. Never throws; failures are captured in the row with the offending
// value identified.
SweepRow compute_row(const SweepConfig& config, double value_ghz);

// All grid points, ordered by sweep value. n_workers = 0 picks the hardware
// thread count; results are identical for any worker count. Failed points are
// marked and the remaining points still run.
std::vector<SweepRow> run_sweep(const SweepConfig& config, int n_workers = 0);

// ---------------------------- file emission ----------------------------

inline constexpr const char* k_csv_header =
    "sweep_value_ghz,s_max,c_plus_abs,theta_rad,s_diff,a_pm,wall_ms";

// CSV text: fixed header above, LF line endings, shortest round-trip
// 17-significant-digit floats, NaN as an empty field.
std::string to_csv(const std::vector<SweepRow>& rows);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(const std::string& path);

// JSON sidecar: schema tag, library version, SI constants used, the full
// config, row/failure counts, total wall time, and the UTC generation stamp.
void write_sidecar(const std::string& path, const SweepConfig& config,
                   const std::vector<SweepRow>& rows, double wall_ms_total);

// Two-series line plot (left axis: s_max or s_diff, right axis: a_pm).
// Advisory only; the CSV is the authoritative output.
void write_svg(const std::string& path, const SweepConfig& config,
               const std::vector<SweepRow>& rows);

// Writes whichever of csv/json/svg paths are set in the config.
void emit(const std::vector<SweepRow>& rows, const SweepConfig& config,
          double wall_ms_total);

// ------------------------------- config IO -------------------------------

std::string config_to_json(const SweepConfig& config);
SweepConfig config_from_json(const std::string& text);

// Overwrite only the fields present in the JSON text; unknown keys are
// rejected. This is the "config file overrides flags" hook used by the CLI.
void apply_config_overrides(SweepConfig& config, const std::string& text);

// -------------------------------- units --------------------------------

inline constexpr double k_two_pi = 6.283185307179586476925286766559;

// "25mK", "0.025K", "0.025" (bare numbers are kelvin); case-sensitive suffix,
// optional whitespace between number and suffix.
double parse_temperature(const std::string& text);

}  // namespace oresim::harness
