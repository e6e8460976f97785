#include "ambc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ambc/version.hpp"

namespace ambc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: " + value);
    }
    if (pos != value.size()) throw std::invalid_argument("config key '" + key + "': trailing junk: " + value);
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    const double d = to_double(key, value);
    if (d < 0 || d != std::floor(d)) throw std::invalid_argument("config key '" + key + "': not a whole number");
    return static_cast<std::uint64_t>(d);
}

} // namespace

void write_curve_csv(const std::filesystem::path& path, const BerCurve& curve) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "snr_db,bits,errors,ber,ci95\n";
    char line[192];
    for (const BerPoint& p : curve.points) {
        std::snprintf(line, sizeof line, "%.10g,%llu,%llu,%.10g,%.10g\n", p.snr_db,
                      static_cast<unsigned long long>(p.bits_tested),
                      static_cast<unsigned long long>(p.bit_errors), p.ber, p.half_width_95);
        out << line;
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_metadata_json(const std::filesystem::path& path, const ExperimentSpec& spec, const std::string& label) {
    nlohmann::json j;
    j["label"] = label;
    j["scenario"] = to_string(spec.scenario);
    j["compensation"] = to_string(spec.compensation);
    j["snr_grid_db"] = spec.snr_grid_db;
    j["stop"] = {{"max_bits", spec.stop.max_bits}, {"target_errors", spec.stop.target_errors}};
    j["system"] = {{"relative_snr_db", spec.system.relative_snr_db},
                   {"alpha_loss_db", spec.system.alpha_loss_db},
                   {"num_antennas", spec.system.num_antennas},
                   {"repetition_length", spec.system.repetition_length},
                   {"coherence_length", spec.system.coherence_length},
                   {"noise_power", spec.system.noise_power},
                   {"seed", spec.system.seed},
                   {"energy_detector_branch", 0}};
    j["version"] = kVersion;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) + ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream ss(text);
        if (!(ss >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("bad snr grid range (want start:step:stop): " + text);
        for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
        return grid;
    }
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(to_double("snr_grid_db", trim(item)));
    if (grid.empty()) throw std::invalid_argument("empty snr grid");
    return grid;
}

ExperimentSpec spec_from_key_values(const std::map<std::string, std::string>& kv, ExperimentSpec base) {
    for (const auto& [key, value] : kv) {
        if (key == "scenario")
            base.scenario = scenario_from_string(value);
        else if (key == "compensation")
            base.compensation = compensation_from_string(value);
        else if (key == "snr_grid_db")
            base.snr_grid_db = parse_snr_grid(value);
        else if (key == "relative_snr_db")
            base.system.relative_snr_db = to_double(key, value);
        else if (key == "alpha_loss_db")
            base.system.alpha_loss_db = to_double(key, value);
        else if (key == "num_antennas")
            base.system.num_antennas = static_cast<int>(to_u64(key, value));
        else if (key == "repetition_length")
            base.system.repetition_length = static_cast<int>(to_u64(key, value));
        else if (key == "coherence_length")
            base.system.coherence_length = static_cast<int>(to_u64(key, value));
        else if (key == "noise_power")
            base.system.noise_power = to_double(key, value);
        else if (key == "seed")
            base.system.seed = to_u64(key, value);
        else if (key == "max_bits")
            base.stop.max_bits = to_u64(key, value);
        else if (key == "target_errors")
            base.stop.target_errors = to_u64(key, value);
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    return base;
}

} // namespace ambc
