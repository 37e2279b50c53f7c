#ifndef KQ_PRESETS_HPP
#define KQ_PRESETS_HPP

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/curverec.hpp"
#include "core/kummer.hpp"

namespace kq {

struct PresetError : std::runtime_error {
  explicit PresetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parsed copy of the bundled presets file.
const nlohmann::json& presets_data();

std::vector<std::string> surface_preset_names();
std::vector<std::string> group_preset_names();

// Builds the named surface with its node list attached; with_tropes also
// attaches the trope records (from the bundled plane list when one exists,
// otherwise by search).
KummerSurface preset_surface(const std::string& name, bool with_tropes = false);

// Generator set, over the given field when supplied (it must contain the
// preset's own field).
std::vector<NamedGen> preset_generators(
    const std::string& name, std::optional<FieldDescriptor> f = std::nullopt);

size_t preset_group_cap(const std::string& name);

// The reference branch-point list of the family preset, instantiated.
std::optional<SixPointSet> preset_branch_points(const std::string& name);

}  // namespace kq

#endif
