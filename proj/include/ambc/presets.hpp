#ifndef AMBC_PRESETS_HPP
#define AMBC_PRESETS_HPP

#include <string>
#include <vector>

#include "ambc/harness.hpp"

namespace ambc {

struct PresetEntry {
    std::string label; // output file stem
    ExperimentSpec spec;
    bool emit_closed_form = false; // also write <label>_closed_form.csv
};

// A named bundle of experiments producing one CSV per entry. The *_desk
// presets run scaled-down repetition lengths and bit budgets sized for a
// desktop machine.
struct Preset {
    std::string name;
    std::string description;
    std::vector<PresetEntry> entries;
};

const std::vector<Preset>& all_presets();

// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

} // namespace ambc

#endif
