#include "rmb/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "rmb/errors.hpp"
#include "rmb/relativity.hpp"

namespace rmb {

namespace {

struct Value {
    enum class Kind { number, string, boolean, array } kind = Kind::number;
    double num = 0.0;
    std::string str;
    bool boolean = false;
    std::vector<double> array;
};

using KeyMap = std::map<std::string, Value>;

[[noreturn]] void syntax_error(int line, const std::string& what) {
    throw ConfigError("syntax error: line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void violation(const std::string& what) {
    throw ConfigError("constraint violation: " + what);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        syntax_error(line, "expected a number, got '" + text + "'");
    return v;
}

Value parse_value(std::string text, int line) {
    Value v;
    text = trim(text);
    if (text.empty()) syntax_error(line, "missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            syntax_error(line, "unterminated string");
        v.kind = Value::Kind::string;
        v.str = text.substr(1, text.size() - 2);
    } else if (text == "true" || text == "false") {
        v.kind = Value::Kind::boolean;
        v.boolean = (text == "true");
    } else if (text.front() == '[') {
        if (text.back() != ']') syntax_error(line, "unterminated array");
        v.kind = Value::Kind::array;
        std::string body = trim(text.substr(1, text.size() - 2));
        if (!body.empty()) {
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ','))
                v.array.push_back(parse_number(trim(item), line));
        }
    } else {
        v.kind = Value::Kind::number;
        v.num = parse_number(text, line);
    }
    return v;
}

KeyMap parse_document(const std::string& text) {
    KeyMap map;
    std::string section;
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        // strip comments outside strings
        std::string line;
        bool in_string = false;
        for (char ch : raw) {
            if (ch == '"') in_string = !in_string;
            if (ch == '#' && !in_string) break;
            line.push_back(ch);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') syntax_error(line_no, "bad section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) syntax_error(line_no, "empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) syntax_error(line_no, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) syntax_error(line_no, "empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (map.count(full)) syntax_error(line_no, "duplicate key '" + full + "'");
        map[full] = parse_value(line.substr(eq + 1), line_no);
    }
    return map;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "schema_version", "name", "preset",
        "transition.preset", "transition.lambda_rest", "transition.gamma_sp_rest",
        "sample.length_rest", "sample.inversion_density_rest",
        "timescales.t1_rest", "timescales.t2_rest",
        "frame.beta",
        "grid.n_z", "grid.n_tau", "grid.tau_max_rest",
        "channels.offsets_k", "channels.densities",
        "pumps.enabled", "pumps.lambda_n", "pumps.lambda_p",
        "field.boundary_intensity",
        "output.directory", "output.series_stride", "output.snapshot_taus",
        "output.log_floor"};
    return keys;
}

class Reader {
public:
    explicit Reader(const KeyMap& map) : map_(map) {}

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    double number(const std::string& key) const {
        const Value& v = get(key, Value::Kind::number, "number");
        return v.num;
    }
    int integer(const std::string& key) const {
        const double x = number(key);
        if (x != std::floor(x) || std::abs(x) > 1e15)
            violation(key + " must be an integer");
        return static_cast<int>(x);
    }
    std::string string(const std::string& key) const {
        return get(key, Value::Kind::string, "string").str;
    }
    bool boolean(const std::string& key) const {
        return get(key, Value::Kind::boolean, "boolean").boolean;
    }
    std::vector<double> array(const std::string& key) const {
        return get(key, Value::Kind::array, "array").array;
    }

private:
    const Value& get(const std::string& key, Value::Kind kind,
                     const char* what) const {
        auto it = map_.find(key);
        const Value& v = it->second;
        if (v.kind != kind) violation(key + " must be a " + std::string(what));
        return v;
    }
    const KeyMap& map_;
};

void apply_map(ScenarioConfig& config, const KeyMap& map) {
    for (const auto& [key, value] : map) {
        (void)value;
        if (key != "preset" && !known_keys().count(key))
            throw ConfigError("unknown key: " + key);
    }
    Reader r(map);

    if (r.has("schema_version")) config.schema_version = r.integer("schema_version");
    if (r.has("name")) config.name = r.string("name");

    if (r.has("transition.preset")) {
        const std::string name = r.string("transition.preset");
        if (name != "oh1612")
            violation("transition.preset: unknown transition '" + name + "'");
        config.transition = oh1612();
    }
    if (r.has("transition.lambda_rest") || r.has("transition.gamma_sp_rest")) {
        if (!r.has("transition.lambda_rest") || !r.has("transition.gamma_sp_rest"))
            violation("transition.lambda_rest and transition.gamma_sp_rest "
                      "must be given together");
        config.transition = TransitionSpec::from_line(
            r.number("transition.lambda_rest"), r.number("transition.gamma_sp_rest"));
    }

    if (r.has("sample.length_rest"))
        config.length_rest = r.number("sample.length_rest");

    if (r.has("timescales.t1_rest") || r.has("timescales.t2_rest")) {
        const double t1 = r.has("timescales.t1_rest") ? r.number("timescales.t1_rest")
                                                      : config.timescales.t1_rest;
        const double t2 = r.has("timescales.t2_rest") ? r.number("timescales.t2_rest")
                                                      : config.timescales.t2_rest;
        if (!(t2 > 0.0)) violation("timescales.t2_rest must be > 0");
        if (!(t1 >= t2)) violation("timescales: t1_rest must be >= t2_rest");
        config.timescales = TimescaleSpec{t1, t2};
    }

    if (r.has("frame.beta")) config.beta = r.number("frame.beta");

    if (r.has("grid.n_z")) config.n_z = r.integer("grid.n_z");
    if (r.has("grid.n_tau")) config.n_tau = r.integer("grid.n_tau");
    if (r.has("grid.tau_max_rest")) config.tau_max_rest = r.number("grid.tau_max_rest");

    const bool has_channels =
        r.has("channels.offsets_k") || r.has("channels.densities");
    if (has_channels) {
        if (!r.has("channels.offsets_k") || !r.has("channels.densities"))
            violation("channels.offsets_k and channels.densities must be given "
                      "together");
        if (r.has("sample.inversion_density_rest"))
            violation("give either sample.inversion_density_rest or a "
                      "[channels] section, not both");
        auto ks = r.array("channels.offsets_k");
        auto densities = r.array("channels.densities");
        if (ks.size() != densities.size())
            violation("channels.offsets_k and channels.densities must have the "
                      "same length");
        if (ks.empty()) violation("channels: at least one channel required");
        config.channels.clear();
        for (std::size_t i = 0; i < ks.size(); ++i) {
            if (ks[i] != std::floor(ks[i]))
                violation("channels.offsets_k entries must be integers");
            config.channels.push_back({static_cast<int>(ks[i]), densities[i]});
        }
    } else if (r.has("sample.inversion_density_rest")) {
        config.channels = {{0, r.number("sample.inversion_density_rest")}};
    }

    if (r.has("pumps.enabled")) config.pumps.enabled = r.boolean("pumps.enabled");
    if (r.has("pumps.lambda_n")) config.pumps.lambda_n = r.number("pumps.lambda_n");
    if (r.has("pumps.lambda_p")) config.pumps.lambda_p = r.number("pumps.lambda_p");

    if (r.has("field.boundary_intensity"))
        config.boundary_intensity = r.number("field.boundary_intensity");

    if (r.has("output.directory")) config.output.directory = r.string("output.directory");
    if (r.has("output.series_stride"))
        config.output.series_stride = r.integer("output.series_stride");
    if (r.has("output.snapshot_taus"))
        config.output.snapshot_taus = r.array("output.snapshot_taus");
    if (r.has("output.log_floor")) config.output.log_floor = r.number("output.log_floor");
}

void validate(const ScenarioConfig& c) {
    if (c.schema_version != 1) violation("schema_version must be 1");
    if (!(c.transition.lambda_rest > 0.0))
        violation("transition is required (preset or lambda_rest/gamma_sp_rest)");
    if (!(c.length_rest > 0.0)) violation("sample.length_rest must be > 0");
    if (!(c.timescales.t2_rest > 0.0)) violation("timescales are required");
    if (!(std::abs(c.beta) < 1.0)) violation("frame.beta must satisfy |beta| < 1");
    if (c.n_z < 2) violation("grid.n_z must be >= 2");
    if (c.n_tau < 2) violation("grid.n_tau must be >= 2");
    if (!(c.tau_max_rest > 0.0)) violation("grid.tau_max_rest must be > 0");
    if (c.channels.empty())
        violation("either sample.inversion_density_rest or [channels] is required");
    for (const auto& ch : c.channels)
        if (!(ch.density > 0.0)) violation("channel densities must be > 0");
    if (c.boundary_intensity < 0.0)
        violation("field.boundary_intensity must be >= 0");
    if (c.output.series_stride < 1) violation("output.series_stride must be >= 1");
    if (!(c.output.log_floor > 0.0)) violation("output.log_floor must be > 0");
    for (double t : c.output.snapshot_taus)
        if (t < 0.0) violation("output.snapshot_taus entries must be >= 0");
}

}  // namespace

double ScenarioConfig::velocity_step() const {
    return fundamental_velocity_step(transition, tau_max_rest);
}

SolverSetup ScenarioConfig::solver_setup() const {
    validate(*this);
    SolverSetup s;
    s.transition = transition;
    s.timescales = timescales;
    s.beta = beta;
    s.length_rest = length_rest;
    std::vector<int> ks;
    std::vector<double> densities;
    for (const auto& ch : channels) {
        ks.push_back(ch.offset_k);
        densities.push_back(ch.density);
    }
    s.channels = channel_layout(transition, tau_max_rest, ks, densities);
    double total = 0.0;
    for (double d : densities) total += d;
    s.tipping_angle =
        tipping_angle(particle_number(total, transition.lambda_rest, length_rest));
    s.boundary_intensity = boundary_intensity;
    s.pumps = pumps;
    s.n_z = n_z;
    s.n_tau = n_tau;
    s.tau_max_rest = tau_max_rest;
    return s;
}

ScenarioConfig parse_config(const std::string& text) {
    KeyMap map = parse_document(text);
    ScenarioConfig config;
    auto preset_key = map.find("preset");
    if (preset_key != map.end()) {
        if (preset_key->second.kind != Value::Kind::string)
            violation("preset must be a string");
        config = preset(preset_key->second.str);
        map.erase(preset_key);
    }
    apply_map(config, map);
    validate(config);
    return config;
}

namespace {
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}
}  // namespace

std::string emit_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "schema_version = " << c.schema_version << "\n";
    out << "name = \"" << c.name << "\"\n\n";
    out << "[transition]\n";
    out << "lambda_rest = " << fmt(c.transition.lambda_rest) << "\n";
    out << "gamma_sp_rest = " << fmt(c.transition.gamma_sp_rest) << "\n\n";
    out << "[sample]\n";
    out << "length_rest = " << fmt(c.length_rest) << "\n\n";
    out << "[timescales]\n";
    out << "t1_rest = " << fmt(c.timescales.t1_rest) << "\n";
    out << "t2_rest = " << fmt(c.timescales.t2_rest) << "\n\n";
    out << "[frame]\n";
    out << "beta = " << fmt(c.beta) << "\n\n";
    out << "[grid]\n";
    out << "n_z = " << c.n_z << "\n";
    out << "n_tau = " << c.n_tau << "\n";
    out << "tau_max_rest = " << fmt(c.tau_max_rest) << "\n\n";
    out << "[channels]\n";
    out << "offsets_k = [";
    for (std::size_t i = 0; i < c.channels.size(); ++i)
        out << (i ? ", " : "") << c.channels[i].offset_k;
    out << "]\ndensities = [";
    for (std::size_t i = 0; i < c.channels.size(); ++i)
        out << (i ? ", " : "") << fmt(c.channels[i].density);
    out << "]\n\n";
    out << "[pumps]\n";
    out << "enabled = " << (c.pumps.enabled ? "true" : "false") << "\n";
    if (c.pumps.lambda_n) out << "lambda_n = " << fmt(*c.pumps.lambda_n) << "\n";
    if (c.pumps.lambda_p) out << "lambda_p = " << fmt(*c.pumps.lambda_p) << "\n";
    out << "\n[field]\n";
    out << "boundary_intensity = " << fmt(c.boundary_intensity) << "\n\n";
    out << "[output]\n";
    out << "directory = \"" << c.output.directory << "\"\n";
    out << "series_stride = " << c.output.series_stride << "\n";
    out << "snapshot_taus = [";
    for (std::size_t i = 0; i < c.output.snapshot_taus.size(); ++i)
        out << (i ? ", " : "") << fmt(c.output.snapshot_taus[i]);
    out << "]\n";
    out << "log_floor = " << fmt(c.output.log_floor) << "\n";
    return out.str();
}

namespace {

// Shared working point: OH 1612 MHz, L' = 4.2e13 m, T1' = 0.1 s, T2' = 1.2 ms.
ScenarioConfig figure_base(const std::string& name, double beta) {
    ScenarioConfig c;
    c.name = name;
    c.transition = oh1612();
    c.length_rest = 4.2e13;
    c.timescales = TimescaleSpec{0.1, 1.2e-3};
    c.beta = beta;
    c.n_z = 300;
    return c;
}

std::string beta_suffix(double beta) {
    if (beta > 0.0) return "beta05";
    if (beta < 0.0) return "betam05";
    return "beta0";
}

ScenarioConfig make_preset(const std::string& name) {
    const bool b05 = name.ends_with("beta05") && !name.ends_with("m05");
    const bool bm05 = name.ends_with("betam05");
    const double beta = b05 ? 0.5 : (bm05 ? -0.5 : 0.0);

    if (name.starts_with("fig1-")) {
        // Superradiant burst settling onto a saturated maser plateau. A
        // saturation-level background at the input keeps the whole column in
        // the saturated regime so the plateau sits on the linear profile.
        ScenarioConfig c = figure_base(name, beta);
        c.channels = {{0, 2e4}};
        c.tau_max_rest = 0.04;
        c.n_tau = 90001;
        c.output.series_stride = 10;
        const double isat_rest = saturation_intensity(
            c.transition.dipole_rest, c.timescales.t1_rest, c.timescales.t2_rest);
        c.boundary_intensity = isat_rest * relativity::intensity_boost(beta);
        return c;
    }
    if (name.starts_with("fig2-")) {
        // Below the superradiance threshold: unsaturated maser, no overshoot.
        ScenarioConfig c = figure_base(name, beta);
        c.channels = {{0, 6e3}};
        c.tau_max_rest = 0.04;
        c.n_tau = 28001;
        c.output.series_stride = 4;
        return c;
    }
    // The channel-structure scenarios sit near the superradiance threshold,
    // where the burst delay is hypersensitive to the seed level. A faint
    // background (frame-scaled so its nondimensional amplitude is identical
    // at every beta) pins the burst timing without otherwise perturbing the
    // sub-threshold runs.
    const double faint_background = 1e-30 * relativity::intensity_boost(beta);

    if (name == "fig3-top") {
        ScenarioConfig c = figure_base(name, 0.0);
        c.channels = {{0, 6e3}};
        c.tau_max_rest = 0.05;
        c.n_tau = 34001;
        c.output.series_stride = 4;
        c.boundary_intensity = faint_background;
        return c;
    }
    if (name == "fig3-middle") {
        ScenarioConfig c = figure_base(name, 0.0);
        c.channels = {{0, 6e3}, {0, 6e3}};
        c.tau_max_rest = 0.05;
        c.n_tau = 67001;
        c.output.series_stride = 8;
        c.boundary_intensity = faint_background;
        return c;
    }
    if (name == "fig3-bottom" || name.starts_with("fig4-")) {
        ScenarioConfig c = figure_base(name, beta);
        c.channels = {{-20, 6e3}, {20, 6e3}};
        c.tau_max_rest = 0.05;
        c.n_tau = 67001;
        c.output.series_stride = 8;
        c.boundary_intensity = faint_background;
        return c;
    }
    if (name.starts_with("fig5-")) {
        ScenarioConfig c = figure_base(name, beta);
        c.channels = {{-20, 1.2e4}, {20, 1.2e4}};
        c.tau_max_rest = 0.05;
        c.n_tau = 134001;
        c.output.series_stride = 16;
        c.boundary_intensity = faint_background;
        return c;
    }
    throw ConfigError("constraint violation: unknown preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const char* fig : {"fig1", "fig2", "fig4", "fig5"})
        for (double beta : {0.0, 0.5, -0.5})
            names.push_back(std::string(fig) + "-" + beta_suffix(beta));
    names.insert(names.begin() + 6, {"fig3-top", "fig3-middle", "fig3-bottom"});
    return names;
}

bool is_preset(const std::string& name) {
    auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ScenarioConfig preset(const std::string& name) {
    if (!is_preset(name))
        throw ConfigError("constraint violation: unknown preset '" + name + "'");
    ScenarioConfig c = make_preset(name);
    validate(c);
    return c;
}

}  // namespace rmb
