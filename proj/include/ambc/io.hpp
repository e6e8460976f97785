#ifndef AMBC_IO_HPP
#define AMBC_IO_HPP

#include <filesystem>
#include <map>
#include <string>

#include "ambc/harness.hpp"

namespace ambc {

// Header: snr_db,bits,errors,ber,ci95; one row per grid point.
void write_curve_csv(const std::filesystem::path& path, const BerCurve& curve);

// Sidecar recording everything needed to re-derive a curve: scenario, full
// system config, stop rule, grid, seed and code version.
void write_metadata_json(const std::filesystem::path& path, const ExperimentSpec& spec, const std::string& label);

// Flat key = value configuration, '#' starts a comment. Unknown keys are an
// error so typos fail loudly.
std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path);

// Applies config keys on top of base. Grid syntax: "0,5,10" or "0:5:30"
// (start:step:stop, inclusive).
ExperimentSpec spec_from_key_values(const std::map<std::string, std::string>& kv, ExperimentSpec base);

std::vector<double> parse_snr_grid(const std::string& text);

} // namespace ambc

#endif
