#include "oresim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "oresim/resonance.hpp"
#include "oresim/version.hpp"

namespace oresim::harness {

using nlohmann::json;

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::g_r: return "g_r";
        case SweepVariable::g_nr: return "g_nr";
        case SweepVariable::g_ph: return "g_ph";
        case SweepVariable::g_locked: return "g_locked";
    }
    throw std::logic_error("to_string: unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    if (name == "g_r") return SweepVariable::g_r;
    if (name == "g_nr") return SweepVariable::g_nr;
    if (name == "g_ph") return SweepVariable::g_ph;
    if (name == "g_locked") return SweepVariable::g_locked;
    throw std::invalid_argument("sweep variable must be one of g_r, g_nr, g_ph, g_locked, got '" +
                                name + "'");
}

// ------------------------------- SweepConfig -------------------------------

void SweepConfig::validate() const {
    for (const double v : {omega_ghz, omega0_ghz, g_r_ghz, g_nr_ghz, g_ph_ghz,
                           temperature_k, time_ns, lo_ghz, hi_ghz}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("SweepConfig: non-finite field");
        }
    }
    if (!(omega_ghz > 0.0)) {
        throw std::invalid_argument("SweepConfig: omega_ghz must be > 0");
    }
    if (n_bath < 1) {
        throw std::invalid_argument("SweepConfig: n_bath must be >= 1");
    }
    if (!zero_temperature && !(temperature_k > 0.0)) {
        throw std::invalid_argument("SweepConfig: temperature_k must be > 0");
    }
    if (lo_ghz > hi_ghz) {
        throw std::invalid_argument("SweepConfig: lo_ghz must be <= hi_ghz");
    }
    if (steps < 1) {
        throw std::invalid_argument("SweepConfig: steps must be >= 1");
    }
    if (!outputs.any()) {
        throw std::invalid_argument("SweepConfig: no outputs requested");
    }
}

std::vector<double> SweepConfig::grid() const {
    std::vector<double> values;
    values.reserve(steps);
    if (steps == 1) {
        values.push_back(lo_ghz);
        return values;
    }
    for (int i = 0; i < steps; ++i) {
        values.push_back(lo_ghz + (hi_ghz - lo_ghz) * i / (steps - 1));
    }
    return values;
}

model::HamiltonianParams SweepConfig::params_at(double value_ghz) const {
    model::HamiltonianParams p;
    p.omega = k_two_pi * omega_ghz;
    p.omega0 = k_two_pi * omega0_ghz;
    p.g_r = k_two_pi * g_r_ghz;
    p.g_nr = k_two_pi * g_nr_ghz;
    p.g_ph = k_two_pi * g_ph_ghz;
    p.n_bath = n_bath;

    const double value = k_two_pi * value_ghz;
    switch (variable) {
        case SweepVariable::g_r: p.g_r = value; break;
        case SweepVariable::g_nr: p.g_nr = value; break;
        case SweepVariable::g_ph: p.g_ph = value; break;
        case SweepVariable::g_locked:
            p.g_r = value;
            p.g_nr = value;
            break;
    }
    return p;
}

spectral::ThermalWeights SweepConfig::make_weights() const {
    const double omega = k_two_pi * omega_ghz;
    return zero_temperature ? spectral::thermal_weights_zero(omega, n_bath)
                            : spectral::thermal_weights(omega, temperature_k, n_bath);
}

// --------------------------------- sweeping ---------------------------------

SweepRow::SweepRow() {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    sweep_value_ghz = nan;
    s_max = nan;
    c_plus_abs = nan;
    theta_rad = nan;
    s_diff = nan;
    a_pm = nan;
    wall_ms = nan;
}

SweepRow compute_row(const SweepConfig& config, double value_ghz) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.sweep_value_ghz = value_ghz;
    try {
        model::HamiltonianParams p = config.params_at(value_ghz);
        p.validate();
        const auto basis = model::build_basis(p.n_bath);
        const auto eig = spectral::eigh(model::build_hamiltonian(p));
        const auto table = dynamics::overlap_table(eig, basis, config.make_weights());

        if (config.outputs.needs_optimizer()) {
            const auto ch = dynamics::ChannelKernel(table).at(config.time_ns);
            const auto rep = optimize::max_purity(ch);
            row.s_max = rep.s_max;
            row.c_plus_abs = rep.c_plus_abs;
            row.theta_rad = rep.theta;
            if (config.outputs.s_diff) {
                row.s_diff = optimize::s_diff(ch, rep.c_plus_abs);
            }
        }
        if (config.outputs.a_pm) {
            row.a_pm = resonance::overlap_metric(table).a_plus_minus;
        }
    } catch (const std::exception& e) {
        char value[40];
        std::snprintf(value, sizeof value, "%.17g", value_ghz);
        SweepRow failed;  // drop any partial values
        failed.sweep_value_ghz = value_ghz;
        failed.failed = true;
        failed.error = std::string("sweep point ") + value + " GHz: " + e.what();
        row = failed;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, int n_workers) {
    config.validate();
    const std::vector<double> values = config.grid();
    std::vector<SweepRow> rows(values.size());

    int workers = n_workers;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min<int>(workers, static_cast<int>(values.size()));

    if (workers <= 1) {
        for (size_t i = 0; i < values.size(); ++i) {
            rows[i] = compute_row(config, values[i]);
        }
        return rows;
    }

    // rows are independent and land at fixed indices, so scheduling order
    // cannot change the result
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= values.size()) return;
                rows[i] = compute_row(config, values[i]);
            }
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

// ----------------------------------- CSV -----------------------------------

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "";  // NaN emits as an empty field
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_field(const std::string& field, const std::string& path) {
    if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        throw std::runtime_error("read_csv: bad numeric field '" + field + "' in " + path);
    }
    return v;
}

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = k_csv_header;
    out += '\n';
    for (const auto& row : rows) {
        out += format_double(row.sweep_value_ghz) + ',' + format_double(row.s_max) + ',' +
               format_double(row.c_plus_abs) + ',' + format_double(row.theta_rad) + ',' +
               format_double(row.s_diff) + ',' + format_double(row.a_pm) + ',' +
               format_double(row.wall_ms) + '\n';
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) {
        throw std::runtime_error("write_csv: cannot open " + path);
    }
    out << to_csv(rows);
    if (!out) {
        throw std::runtime_error("write_csv: write failed for " + path);
    }
}

std::vector<SweepRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("read_csv: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line != k_csv_header) {
        throw std::runtime_error("read_csv: missing or unexpected header in " + path);
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (fields.size() != 7) {
            throw std::runtime_error("read_csv: expected 7 fields per row in " + path);
        }
        SweepRow row;
        row.sweep_value_ghz = parse_field(fields[0], path);
        row.s_max = parse_field(fields[1], path);
        row.c_plus_abs = parse_field(fields[2], path);
        row.theta_rad = parse_field(fields[3], path);
        row.s_diff = parse_field(fields[4], path);
        row.a_pm = parse_field(fields[5], path);
        row.wall_ms = parse_field(fields[6], path);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------- JSON ----------------------------------

namespace {

json outputs_to_json(const OutputSet& outputs) {
    json arr = json::array();
    if (outputs.s_max) arr.push_back("s_max");
    if (outputs.a_pm) arr.push_back("a_pm");
    if (outputs.s_diff) arr.push_back("s_diff");
    if (outputs.argmax_state) arr.push_back("argmax_state");
    return arr;
}

OutputSet outputs_from_json(const json& arr) {
    OutputSet outputs;
    for (const auto& name : arr) {
        const std::string s = name.get<std::string>();
        if (s == "s_max") {
            outputs.s_max = true;
        } else if (s == "a_pm") {
            outputs.a_pm = true;
        } else if (s == "s_diff") {
            outputs.s_diff = true;
        } else if (s == "argmax_state") {
            outputs.argmax_state = true;
        } else {
            throw std::invalid_argument("config: unknown output '" + s + "'");
        }
    }
    return outputs;
}

json config_to_json_object(const SweepConfig& c) {
    return json{{"omega_ghz", c.omega_ghz},
                {"omega0_ghz", c.omega0_ghz},
                {"g_r_ghz", c.g_r_ghz},
                {"g_nr_ghz", c.g_nr_ghz},
                {"g_ph_ghz", c.g_ph_ghz},
                {"n_bath", c.n_bath},
                {"temperature_k", c.temperature_k},
                {"zero_temperature", c.zero_temperature},
                {"time_ns", c.time_ns},
                {"variable", to_string(c.variable)},
                {"lo_ghz", c.lo_ghz},
                {"hi_ghz", c.hi_ghz},
                {"steps", c.steps},
                {"outputs", outputs_to_json(c.outputs)},
                {"csv_path", c.csv_path},
                {"json_path", c.json_path},
                {"svg_path", c.svg_path}};
}

void apply_overrides(SweepConfig& c, const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: top level must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "omega_ghz") {
                c.omega_ghz = value.get<double>();
            } else if (key == "omega0_ghz") {
                c.omega0_ghz = value.get<double>();
            } else if (key == "g_r_ghz") {
                c.g_r_ghz = value.get<double>();
            } else if (key == "g_nr_ghz") {
                c.g_nr_ghz = value.get<double>();
            } else if (key == "g_ph_ghz") {
                c.g_ph_ghz = value.get<double>();
            } else if (key == "n_bath") {
                c.n_bath = value.get<int>();
            } else if (key == "temperature_k") {
                c.temperature_k = value.get<double>();
            } else if (key == "zero_temperature") {
                c.zero_temperature = value.get<bool>();
            } else if (key == "time_ns") {
                c.time_ns = value.get<double>();
            } else if (key == "variable") {
                c.variable = sweep_variable_from_string(value.get<std::string>());
            } else if (key == "lo_ghz") {
                c.lo_ghz = value.get<double>();
            } else if (key == "hi_ghz") {
                c.hi_ghz = value.get<double>();
            } else if (key == "steps") {
                c.steps = value.get<int>();
            } else if (key == "outputs") {
                c.outputs = outputs_from_json(value);
            } else if (key == "csv_path") {
                c.csv_path = value.get<std::string>();
            } else if (key == "json_path") {
                c.json_path = value.get<std::string>();
            } else if (key == "svg_path") {
                c.svg_path = value.get<std::string>();
            } else {
                throw std::invalid_argument("config: unknown key '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
        }
    }
}

}  // namespace

std::string config_to_json(const SweepConfig& config) {
    return config_to_json_object(config).dump(2);
}

SweepConfig config_from_json(const std::string& text) {
    SweepConfig config;
    apply_config_overrides(config, text);
    return config;
}

void apply_config_overrides(SweepConfig& config, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    apply_overrides(config, j);
}

void write_sidecar(const std::string& path, const SweepConfig& config,
                   const std::vector<SweepRow>& rows, double wall_ms_total) {
    size_t failed = 0;
    for (const auto& row : rows) {
        if (row.failed) ++failed;
    }

    char stamp[32] = "1970-01-01T00:00:00Z";
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    if (gmtime_r(&now, &tm) != nullptr) {
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    }

    const json j{{"schema", "oresim.sweep.v1"},
                 {"library_version", k_version},
                 {"generated_at_utc", stamp},
                 {"constants",
                  {{"hbar_js", spectral::k_hbar_js},
                   {"k_boltzmann_j_per_k", spectral::k_boltzmann_j_per_k}}},
                 {"config", config_to_json_object(config)},
                 {"rows", rows.size()},
                 {"failed_rows", failed},
                 {"wall_ms_total", wall_ms_total}};

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_sidecar: cannot open " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write_sidecar: write failed for " + path);
    }
}

// ----------------------------------- SVG -----------------------------------

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (sweep value, y)
};

Series collect(const std::vector<SweepRow>& rows, double SweepRow::*field,
               const std::string& label) {
    Series s;
    s.label = label;
    for (const auto& row : rows) {
        const double y = row.*field;
        if (!std::isnan(y) && !std::isnan(row.sweep_value_ghz)) {
            s.points.emplace_back(row.sweep_value_ghz, y);
        }
    }
    return s;
}

struct Range {
    double lo{0.0};
    double hi{1.0};
    void widen(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    static Range of(const Series& s) {
        Range r{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
        for (const auto& [x, y] : s.points) r.widen(y);
        if (!(r.lo < r.hi)) {  // flat or empty
            const double mid = s.points.empty() ? 0.5 : r.lo;
            r.lo = mid - 0.5;
            r.hi = mid + 0.5;
        }
        const double pad = 0.05 * (r.hi - r.lo);
        r.lo -= pad;
        r.hi += pad;
        return r;
    }
};

}  // namespace

void write_svg(const std::string& path, const SweepConfig& config,
               const std::vector<SweepRow>& rows) {
    constexpr double width = 900, height = 480;
    constexpr double ml = 70, mr = 70, mt = 30, mb = 50;

    const Series left = config.outputs.s_max ? collect(rows, &SweepRow::s_max, "s_max")
                        : config.outputs.s_diff
                            ? collect(rows, &SweepRow::s_diff, "s_diff")
                            : Series{};
    const Series right =
        config.outputs.a_pm ? collect(rows, &SweepRow::a_pm, "a_pm") : Series{};

    double x_lo = config.lo_ghz, x_hi = config.hi_ghz;
    if (!(x_lo < x_hi)) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    const auto x_of = [&](double v) {
        return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <g font-family=\"sans-serif\" font-size=\"13\">\n";

    // frame
    svg << "    <rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
        << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

    const auto draw = [&](const Series& s, const Range& r, const char* color,
                          const char* dash, double axis_x, bool axis_left) {
        if (s.points.empty()) return;
        const auto y_of = [&](double v) {
            return height - mb - (v - r.lo) / (r.hi - r.lo) * (height - mt - mb);
        };
        svg << "    <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"" << dash << " points=\"";
        for (const auto& [x, y] : s.points) {
            svg << x_of(x) << "," << y_of(y) << " ";
        }
        svg << "\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double v = r.lo + (r.hi - r.lo) * k / 4;
            char label[40];
            std::snprintf(label, sizeof label, "%.4g", v);
            svg << "    <text x=\"" << axis_x << "\" y=\"" << y_of(v) + 4
                << "\" text-anchor=\"" << (axis_left ? "end" : "start")
                << "\" fill=\"" << color << "\">" << label << "</text>\n";
        }
        svg << "    <text x=\"" << (axis_left ? ml : width - mr) << "\" y=\"" << mt - 8
            << "\" text-anchor=\"" << (axis_left ? "start" : "end") << "\" fill=\""
            << color << "\">" << s.label << "</text>\n";
    };

    draw(left, Range::of(left), "#1f77b4", "", ml - 6, true);
    draw(right, Range::of(right), "#d62728", " stroke-dasharray=\"6 3\"", width - mr + 6,
         false);

    // x axis ticks
    for (int k = 0; k <= 5; ++k) {
        const double v = x_lo + (x_hi - x_lo) * k / 5;
        char label[40];
        std::snprintf(label, sizeof label, "%.4g", v);
        svg << "    <text x=\"" << x_of(v) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\">" << label << "</text>\n";
    }
    svg << "    <text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << to_string(config.variable)
        << " (GHz)</text>\n";
    svg << "  </g>\n</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_svg: cannot open " + path);
    }
    out << svg.str();
    if (!out) {
        throw std::runtime_error("write_svg: write failed for " + path);
    }
}

void emit(const std::vector<SweepRow>& rows, const SweepConfig& config,
          double wall_ms_total) {
    if (rows.empty()) {
        throw std::invalid_argument("emit: no rows");
    }
    if (!config.csv_path.empty()) write_csv(config.csv_path, rows);
    if (!config.json_path.empty()) write_sidecar(config.json_path, config, rows, wall_ms_total);
    if (!config.svg_path.empty()) write_svg(config.svg_path, config, rows);
}

// ---------------------------------- units ----------------------------------

double parse_temperature(const std::string& text) {
    const size_t begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        throw std::invalid_argument("parse_temperature: empty input");
    }
    std::string s = text.substr(begin, text.find_last_not_of(" \t") - begin + 1);

    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "mK") == 0) {
        scale = 1e-3;
        s.resize(s.size() - 2);
    } else if (!s.empty() && s.back() == 'K') {
        s.pop_back();
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();

    char* end = nullptr;
    const double value = s.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(value)) {
        throw std::invalid_argument("parse_temperature: cannot parse '" + text + "'");
    }
    if (value < 0.0) {
        throw std::invalid_argument("parse_temperature: temperature must be >= 0");
    }
    return value * scale;
}

}  // namespace oresim::harness
