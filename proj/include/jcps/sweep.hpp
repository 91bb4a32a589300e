#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jcps/fock.hpp"
#include "jcps/wigner.hpp"

namespace jcps {

/// Run configuration shared by every CLI verb. Defaults reproduce the
/// reference setting: alpha = sqrt(10), N in {1, 2, 5}, 0 <= r <= 3.
///
/// Config files are flat `key = value` text, '#' starts a comment:
///
///   alpha = RE[,IM]      atoms = 1,2,5      r_min / r_max / r_step
///   phi                  cutoff (integer or "auto")
///   out                  jobs (0 = all hardware threads)
///   grid_re_min / grid_re_max / grid_re_points
///   grid_im_min / grid_im_max / grid_im_points
struct SweepConfig {
    Complex alpha{3.1622776601683795, 0.0};
    std::vector<int> atoms{1, 2, 5};
    double r_min = 0.0;
    double r_max = 3.0;
    double r_step = 0.005;
    double phi = 0.0;
    std::optional<int> cutoff;
    std::string out_dir = "out";
    GridSpec grid;
    int jobs = 1;

    bool operator==(const SweepConfig&) const = default;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;

    /// r_min + i * r_step for every point not beyond r_max.
    std::vector<double> r_grid() const;

    int effective_cutoff() const { return cutoff.value_or(default_cutoff(alpha)); }
    ProtocolParams params(double r, int atoms) const;
};

SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const SweepConfig& config);

/// Applies one `key = value` assignment; shared by the file parser and the CLI.
void apply_config_value(SweepConfig& config, std::string_view key, std::string_view value);

/// 12 significant digits, '.' separator, locale independent. NaN prints empty.
std::string format_number(double value);

struct SweepRow {
    double r;
    int atoms;
    double success_probability;
    double variance;
    double squeezing_db;
    std::optional<double> mandel_q;  // empty when <n> = 0
    double mean_n;
};

struct SweepTable {
    std::vector<SweepRow> rows;      // r-major, atoms in config order
    std::vector<std::string> notes;  // reasons for blank cells
};

/// Computes the metrics table without touching the filesystem.
SweepTable compute_sweep(const SweepConfig& config);

/// Header `r,N,variance,squeezing_db,mandel_q,mean_n,P_N`.
std::string sweep_csv(const SweepTable& table);

/// compute_sweep + write `<out>/sweep.csv`. Returns the table.
SweepTable run_sweep(const SweepConfig& config);

/// Header `r,N,P_N`, r-major. Written to `<out>/prob.csv` by run_prob.
std::string probability_csv(const SweepConfig& config);
void run_prob(const SweepConfig& config);

struct WignerJobResult {
    WignerGrid grid;
    NegativityMetrics negativity;
    std::filesystem::path csv_path;
    std::filesystem::path json_path;
};

/// Rows `x,y,W`, y-major ascending.
std::string wigner_csv(const WignerGrid& grid);
/// {"min_value", "negative_volume", "negative_region_count", "total_integral", ...}
std::string wigner_summary_json(const WignerGrid& grid, const NegativityMetrics& negativity,
                                double r, int atoms);

/// Evaluates the grid for (r, N) and writes `wigner_r<r>_N<N>.csv` and `.json`.
WignerJobResult run_wigner_job(const SweepConfig& config, double r, int atoms);

struct WignerJobSpec {
    double r;
    int atoms;
};

/// The six couplings by three atom counts of the reference Wigner batch.
std::vector<WignerJobSpec> fig4_jobs();

/// ps_state for (r, N) as state JSON with the success probability attached.
std::string state_json(const SweepConfig& config, double r, int atoms);

/// Creates the directory if needed; throws ConfigError when it cannot be written.
void ensure_output_dir(const std::filesystem::path& dir);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace jcps
