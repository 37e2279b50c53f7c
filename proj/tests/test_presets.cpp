#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/presets.hpp"

using namespace kq;

TEST_CASE("preset catalog") {
  auto names = surface_preset_names();
  for (auto* n : {"fermat-i", "magma-s4-raw", "example-48-50",
                  "example-48-50-t0", "example-48-50-t2", "example-48-50-ti",
                  "example-class-group", "example-class-group-t",
                  "example-z5"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  auto gnames = group_preset_names();
  for (auto* n : {"heisenberg", "s3-48", "t0-192", "ti-384", "z5-80",
                  "normalizer"})
    CHECK(std::find(gnames.begin(), gnames.end(), n) != gnames.end());
  CHECK_THROWS_AS(preset_surface("no-such"), PresetError);
  CHECK_THROWS_AS(preset_generators("no-such"), PresetError);
}

TEST_CASE("segre residuals of the fixed presets") {
  auto fermat = preset_surface("fermat-i");
  CHECK(segre_residual(fermat.params).is_zero());
  CHECK(!fermat.nodes.has_value());
  auto magma = preset_surface("magma-s4-raw");
  auto r = segre_residual(magma.params);
  CHECK(r == fe_parse("16", r.descriptor()));
  auto sym = preset_surface("example-48-50");
  CHECK(segre_residual(sym.params).is_zero());
}

TEST_CASE("instantiated family surface") {
  auto S = preset_surface("example-48-50-t2", true);
  CHECK(S.warnings.empty());
  REQUIRE(S.nodes.has_value());
  CHECK(verify_nodes(S, *S.nodes).verdict);
  REQUIRE(S.tropes.has_value());
  CHECK(S.tropes->size() == 16);
  CHECK((*S.tropes)[0].h ==
        MultiPoly::parse("x0+x1+x2+2*x3", S.field(), surface_vars()));
  auto degen = preset_surface("example-48-50-t1");
  bool warned = false;
  for (auto& w : degen.warnings) warned |= w.find("degenerate") == 0;
  CHECK(warned);
}

TEST_CASE("class-group parameterization") {
  auto S = preset_surface("example-class-group", true);
  CHECK(S.field().transcendental == std::string("s"));
  CHECK(S.params.a == fe_parse("1", S.field()));
  REQUIRE(S.tropes.has_value());
  CHECK(S.tropes->size() == 16);
}

TEST_CASE("z5 surface from its base node") {
  auto S = preset_surface("example-z5");
  CHECK(segre_residual(S.params).is_zero());
  REQUIRE(S.nodes.has_value());
  CHECK(S.nodes->size() == 16);
  CHECK(verify_nodes(S, *S.nodes).verdict);
}

TEST_CASE("group presets") {
  CHECK(close(preset_generators("heisenberg")).order() == 16);
  CHECK(close(preset_generators("s3-48")).order() == 48);
  CHECK(close(preset_generators("z5-80")).order() == 80);
  CHECK(preset_group_cap("normalizer") == 20000);
  CHECK(preset_group_cap("s3-48") == 10000);
  auto g = preset_generators("s3-48", FieldDescriptor{1, std::string("s")});
  CHECK(g.size() == 5);
  CHECK(g[4].name == "A5");
  CHECK(g[0].matrix.field().transcendental == std::string("s"));
}

TEST_CASE("reference branch points") {
  auto bp = preset_branch_points("example-48-50-t2");
  REQUIRE(bp.has_value());
  auto f = bp->points[0].coords()[0].descriptor();
  CHECK(bp->points[0] == ProjPoint::parse({"3", "-2"}, f));
  CHECK(bp->points[1] == ProjPoint::parse({"1", "0"}, f));
  CHECK(bp->points[5] == ProjPoint::parse({"2", "1"}, f));
  CHECK(!preset_branch_points("fermat-i").has_value());
}
