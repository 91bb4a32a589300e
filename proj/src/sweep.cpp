#include "jcps/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "jcps/errors.hpp"
#include "jcps/metrics.hpp"
#include "jcps/parallel.hpp"
#include "jcps/postselect.hpp"

namespace jcps {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        parts.push_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return parts;
}

// Shortest representation that parses back to the same double.
std::string exact_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string r_label(double r) { return format_number(r); }

}  // namespace

void SweepConfig::validate() const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw ConfigError("alpha: must be finite");
    }
    if (atoms.empty()) throw ConfigError("atoms: list must not be empty");
    for (int n : atoms) {
        if (n < 1 || n > kMaxAtoms) {
            throw ConfigError("atoms: every entry must lie in [1, " + std::to_string(kMaxAtoms) + "]");
        }
    }
    if (!(r_step > 0.0)) throw ConfigError("r_step: must be > 0");
    if (!(r_min >= 0.0)) throw ConfigError("r_min: must be >= 0");
    if (!(r_max >= r_min)) throw ConfigError("r_max: must be >= r_min");
    if (!std::isfinite(phi)) throw ConfigError("phi: must be finite");
    if (cutoff && *cutoff < 1) throw ConfigError("cutoff: must be >= 1");
    if (out_dir.empty()) throw ConfigError("out: must not be empty");
    if (jobs < 0) throw ConfigError("jobs: must be >= 0");
    grid.validate();
}

std::vector<double> SweepConfig::r_grid() const {
    const auto count = static_cast<std::size_t>(std::floor((r_max - r_min) / r_step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = r_min + static_cast<double>(i) * r_step;
    return grid;
}

ProtocolParams SweepConfig::params(double r, int n_atoms) const {
    return ProtocolParams::make(alpha, r, n_atoms, cutoff, phi);
}

void apply_config_value(SweepConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "alpha") {
        const auto parts = split_commas(value);
        if (parts.size() > 2) throw ConfigError("alpha: expected RE or RE,IM");
        config.alpha = Complex(parse_double(key, parts[0]),
                               parts.size() == 2 ? parse_double(key, parts[1]) : 0.0);
    } else if (key == "atoms") {
        config.atoms.clear();
        for (auto part : split_commas(value)) config.atoms.push_back(parse_int(key, part));
    } else if (key == "r_min") {
        config.r_min = parse_double(key, value);
    } else if (key == "r_max") {
        config.r_max = parse_double(key, value);
    } else if (key == "r_step") {
        config.r_step = parse_double(key, value);
    } else if (key == "phi") {
        config.phi = parse_double(key, value);
    } else if (key == "cutoff") {
        if (value == "auto" || value.empty()) {
            config.cutoff.reset();
        } else {
            config.cutoff = parse_int(key, value);
        }
    } else if (key == "out") {
        config.out_dir = std::string(value);
    } else if (key == "jobs") {
        config.jobs = parse_int(key, value);
    } else if (key == "grid_re_min") {
        config.grid.re_min = parse_double(key, value);
    } else if (key == "grid_re_max") {
        config.grid.re_max = parse_double(key, value);
    } else if (key == "grid_re_points") {
        config.grid.re_points = parse_int(key, value);
    } else if (key == "grid_im_min") {
        config.grid.im_min = parse_double(key, value);
    } else if (key == "grid_im_max") {
        config.grid.im_max = parse_double(key, value);
    } else if (key == "grid_im_points") {
        config.grid.im_points = parse_int(key, value);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

SweepConfig parse_config(std::string_view text) {
    SweepConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_config_value(config, view.substr(0, eq), view.substr(eq + 1));
    }
    config.validate();
    return config;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const SweepConfig& config) {
    std::ostringstream out;
    out << "alpha = " << exact_number(config.alpha.real()) << ',' << exact_number(config.alpha.imag())
        << '\n';
    out << "atoms = ";
    for (std::size_t i = 0; i < config.atoms.size(); ++i) out << (i ? "," : "") << config.atoms[i];
    out << '\n';
    out << "r_min = " << exact_number(config.r_min) << '\n';
    out << "r_max = " << exact_number(config.r_max) << '\n';
    out << "r_step = " << exact_number(config.r_step) << '\n';
    out << "phi = " << exact_number(config.phi) << '\n';
    out << "cutoff = " << (config.cutoff ? std::to_string(*config.cutoff) : std::string("auto")) << '\n';
    out << "out = " << config.out_dir << '\n';
    out << "jobs = " << config.jobs << '\n';
    out << "grid_re_min = " << exact_number(config.grid.re_min) << '\n';
    out << "grid_re_max = " << exact_number(config.grid.re_max) << '\n';
    out << "grid_re_points = " << config.grid.re_points << '\n';
    out << "grid_im_min = " << exact_number(config.grid.im_min) << '\n';
    out << "grid_im_max = " << exact_number(config.grid.im_max) << '\n';
    out << "grid_im_points = " << config.grid.im_points << '\n';
    return out.str();
}

std::string format_number(double value) {
    if (std::isnan(value)) return {};
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, ptr);
}

SweepTable compute_sweep(const SweepConfig& config) {
    config.validate();
    const auto rs = config.r_grid();
    const std::size_t per_r = config.atoms.size();
    SweepTable table;
    table.rows.resize(rs.size() * per_r);
    const int n_max = config.effective_cutoff();
    const bool has_mean = std::norm(config.alpha) > 0.0;

    parallel_for(table.rows.size(), resolve_jobs(config.jobs), [&](std::size_t i) {
        const double r = rs[i / per_r];
        const int atoms = config.atoms[i % per_r];
        const ProtocolParams p = config.params(r, atoms);
        p.validate();
        const QuadratureStats quad = quadrature_moments_closed_form(p);
        const PhotonStats photons = photon_statistics(p.alpha, r, atoms, n_max);
        SweepRow row{r, atoms, success_probability(p.alpha, r, atoms, n_max), quad.variance,
                     quad.squeezing_db, std::nullopt, photons.mean_n};
        if (has_mean) row.mandel_q = mandel_q(p.alpha, r, atoms, n_max);
        table.rows[i] = row;
    });
    if (!has_mean) table.notes.emplace_back("mandel_q left blank: alpha = 0 gives <n> = 0, Q_M undefined");
    return table;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out = "r,N,variance,squeezing_db,mandel_q,mean_n,P_N\n";
    for (const auto& row : table.rows) {
        out += format_number(row.r) + ',' + std::to_string(row.atoms) + ',' +
               format_number(row.variance) + ',' + format_number(row.squeezing_db) + ',' +
               (row.mandel_q ? format_number(*row.mandel_q) : std::string()) + ',' +
               format_number(row.mean_n) + ',' + format_number(row.success_probability) + '\n';
    }
    return out;
}

void ensure_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw ConfigError("out: cannot create directory " + dir.string());
    }
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("out: cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ConfigError("out: write failed for " + path.string());
}

SweepTable run_sweep(const SweepConfig& config) {
    SweepTable table = compute_sweep(config);
    ensure_output_dir(config.out_dir);
    write_text_file(std::filesystem::path(config.out_dir) / "sweep.csv", sweep_csv(table));
    return table;
}

std::string probability_csv(const SweepConfig& config) {
    config.validate();
    const auto rs = config.r_grid();
    std::vector<std::vector<ProbabilityPoint>> curves;
    for (int atoms : config.atoms) {
        curves.push_back(success_probability_curve(config.alpha, atoms, rs, config.effective_cutoff()));
    }
    std::string out = "r,N,P_N\n";
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t a = 0; a < config.atoms.size(); ++a) {
            out += format_number(rs[i]) + ',' + std::to_string(config.atoms[a]) + ',' +
                   format_number(curves[a][i].probability) + '\n';
        }
    }
    return out;
}

void run_prob(const SweepConfig& config) {
    const std::string csv = probability_csv(config);
    ensure_output_dir(config.out_dir);
    write_text_file(std::filesystem::path(config.out_dir) / "prob.csv", csv);
}

std::string wigner_csv(const WignerGrid& grid) {
    std::string out = "x,y,W\n";
    out.reserve(grid.re_axis.size() * grid.im_axis.size() * 40);
    for (std::size_t iy = 0; iy < grid.im_axis.size(); ++iy) {
        const std::string y = format_number(grid.im_axis[iy]);
        for (std::size_t ix = 0; ix < grid.re_axis.size(); ++ix) {
            out += format_number(grid.re_axis[ix]);
            out += ',';
            out += y;
            out += ',';
            out += format_number(grid.values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)));
            out += '\n';
        }
    }
    return out;
}

std::string wigner_summary_json(const WignerGrid& grid, const NegativityMetrics& negativity,
                                double r, int atoms) {
    nlohmann::ordered_json doc{
        {"r", r},
        {"N", atoms},
        {"min_value", negativity.min_value},
        {"negative_volume", negativity.negative_volume},
        {"negative_region_count", negativity.negative_region_count},
        {"total_integral", grid.total_integral},
        {"truncation_warning", grid.truncation_warning},
    };
    return doc.dump(2) + '\n';
}

WignerJobResult run_wigner_job(const SweepConfig& config, double r, int atoms) {
    config.validate();
    const ProtocolParams p = config.params(r, atoms);
    WignerJobResult result{wigner_grid(p, config.grid, resolve_jobs(config.jobs)), {}, {}, {}};
    result.negativity = negativity_metrics(result.grid);

    ensure_output_dir(config.out_dir);
    const std::string stem = "wigner_r" + r_label(r) + "_N" + std::to_string(atoms);
    result.csv_path = std::filesystem::path(config.out_dir) / (stem + ".csv");
    result.json_path = std::filesystem::path(config.out_dir) / (stem + ".json");
    write_text_file(result.csv_path, wigner_csv(result.grid));
    write_text_file(result.json_path, wigner_summary_json(result.grid, result.negativity, r, atoms));
    return result;
}

std::vector<WignerJobSpec> fig4_jobs() {
    std::vector<WignerJobSpec> jobs;
    for (double r : {0.2, 0.4, 0.51, 1.0, 1.5, 2.5}) {
        for (int n : {1, 2, 5}) jobs.push_back({r, n});
    }
    return jobs;
}

std::string state_json(const SweepConfig& config, double r, int atoms) {
    const PSOutcome outcome = ps_state(config.params(r, atoms));
    auto doc = nlohmann::ordered_json::parse(state_to_json(outcome.state));
    doc["success_probability"] = outcome.success_probability;
    doc["r"] = r;
    doc["N"] = atoms;
    doc["alpha"] = {config.alpha.real(), config.alpha.imag()};
    return doc.dump() + '\n';
}

}  // namespace jcps
