#include "core/presets.hpp"

#include <algorithm>

#include "presets_data.hpp"

namespace kq {

namespace {

std::string subst(const std::string& text, const std::string& value) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, 3, "(T)") == 0) {
      out += "(" + value + ")";
      pos += 3;
    } else {
      out += text[pos++];
    }
  }
  return out;
}

FieldDescriptor field_of(const nlohmann::json& spec) {
  FieldDescriptor f;
  if (!spec.contains("field")) return f;
  const auto& fj = spec.at("field");
  if (fj.contains("cyclotomic")) f.cyclotomic_order = fj.at("cyclotomic");
  if (fj.contains("transcendental"))
    f.transcendental = fj.at("transcendental").get<std::string>();
  return f;
}

const nlohmann::json& surface_spec(const std::string& name) {
  const auto& surfaces = presets_data().at("surfaces");
  auto it = surfaces.find(name);
  if (it == surfaces.end())
    throw PresetError("unknown surface preset: " + name);
  return *it;
}

// Resolves a family field that may be a cross-reference to another family.
const nlohmann::json& family_field(const std::string& family,
                                   const std::string& key) {
  const auto& families = presets_data().at("families");
  const auto& value = families.at(family).at(key);
  if (value.is_string())
    return families.at(value.get<std::string>()).at(key);
  return value;
}

}  // namespace

const nlohmann::json& presets_data() {
  static const nlohmann::json data = nlohmann::json::parse(kPresetsJson);
  return data;
}

std::vector<std::string> surface_preset_names() {
  std::vector<std::string> out;
  for (auto& [name, spec] : presets_data().at("surfaces").items())
    out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> group_preset_names() {
  std::vector<std::string> out;
  for (auto& [name, spec] : presets_data().at("groups").items())
    out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

KummerSurface preset_surface(const std::string& name, bool with_tropes) {
  const auto& spec = surface_spec(name);
  auto f = field_of(spec);
  std::vector<std::string> params;
  std::string tval;
  if (spec.contains("family")) {
    tval = spec.at("T").get<std::string>();
    for (auto& p : family_field(spec.at("family").get<std::string>(), "params"))
      params.push_back(subst(p.get<std::string>(), tval));
  } else {
    for (auto& p : spec.at("params")) params.push_back(p.get<std::string>());
  }
  auto S = build_surface(KummerParams::parse(params, f));
  if (spec.contains("family")) {
    std::vector<ProjPoint> nodes;
    for (auto& pat : family_field(spec.at("family").get<std::string>(), "nodes")) {
      std::vector<std::string> coords;
      for (auto& c : pat) coords.push_back(subst(c.get<std::string>(), tval));
      nodes.push_back(ProjPoint::parse(coords, f));
    }
    S.nodes = nodes;
  } else if (spec.contains("base_node")) {
    std::vector<std::string> coords;
    for (auto& c : spec.at("base_node")) coords.push_back(c.get<std::string>());
    auto base = ProjPoint::parse(coords, f);
    auto H = close(heisenberg_generators(f));
    auto orb = orbit(H, base);
    if (orb.points.size() != 16)
      throw PresetError("base-node orbit of preset " + name +
                        " has length " + std::to_string(orb.points.size()));
    S.nodes = orb.points;
  }
  if (with_tropes) {
    if (spec.contains("family")) {
      std::vector<Trope> tropes;
      for (auto& plane : family_field(spec.at("family").get<std::string>(), "tropes"))
        tropes.push_back(trope_for_plane(
            S, MultiPoly::parse(subst(plane.get<std::string>(), tval), f,
                                surface_vars())));
      S.tropes = tropes;
    } else {
      auto tropes = find_tropes(S);
      if (tropes.size() != 16)
        throw PresetError("trope search for preset " + name + " found " +
                          std::to_string(tropes.size()) + " planes");
      S.tropes = tropes;
    }
  }
  return S;
}

std::vector<NamedGen> preset_generators(const std::string& name,
                                        std::optional<FieldDescriptor> f) {
  const auto& groups = presets_data().at("groups");
  auto it = groups.find(name);
  if (it == groups.end()) throw PresetError("unknown group preset: " + name);
  auto field = f ? *f : field_of(*it);
  std::vector<NamedGen> out;
  if (it->value("with_heisenberg", false))
    out = heisenberg_generators(field);
  for (auto& gen : it->at("generators")) {
    std::vector<std::vector<std::string>> rows;
    for (auto& r : gen.at("matrix")) {
      std::vector<std::string> row;
      for (auto& c : r) row.push_back(c.get<std::string>());
      rows.push_back(row);
    }
    out.push_back({gen.at("name").get<std::string>(),
                   ProjTransform::parse(rows, field)});
  }
  return out;
}

size_t preset_group_cap(const std::string& name) {
  const auto& groups = presets_data().at("groups");
  auto it = groups.find(name);
  if (it == groups.end()) throw PresetError("unknown group preset: " + name);
  return it->value("cap", size_t{10000});
}

std::optional<SixPointSet> preset_branch_points(const std::string& name) {
  const auto& spec = surface_spec(name);
  if (!spec.contains("family")) return std::nullopt;
  const auto& family = presets_data().at("families").at(
      spec.at("family").get<std::string>());
  if (!family.contains("branch_points")) return std::nullopt;
  auto f = field_of(spec);
  auto tval = spec.at("T").get<std::string>();
  std::vector<ProjPoint> pts;
  for (auto& p : family.at("branch_points"))
    pts.push_back(ProjPoint::parse({subst(p[0].get<std::string>(), tval),
                                    subst(p[1].get<std::string>(), tval)},
                                   f));
  return SixPointSet::make(pts);
}

}  // namespace kq
