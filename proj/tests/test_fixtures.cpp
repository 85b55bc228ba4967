#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using namespace arfkit;
using namespace testing_support;

namespace {

json run(const Fixture& f, int extra) {
  Settings s;
  s.extra_truncation = extra;
  return f.run(f, s).to_json();
}

}  // namespace

TEST(Fixtures, AllPass) {
  for (const auto& f : registry()) {
    const json r = run(f, 0);
    EXPECT_TRUE(r.at("pass").get<bool>()) << f.id << "\n" << r.dump(2);
  }
}

TEST(Fixtures, DeeperTruncationChangesNothing) {
  for (const auto& f : registry()) {
    const json a = run(f, 0), b = run(f, 2);
    EXPECT_TRUE(b.at("pass").get<bool>()) << f.id;
    EXPECT_EQ(a.at("assertions"), b.at("assertions")) << f.id;
  }
}

TEST(Fixtures, IdsAreUnique) {
  const auto all = registry();
  std::set<std::string> ids;
  for (const auto& f : all) EXPECT_TRUE(ids.insert(f.id).second) << f.id;
  EXPECT_EQ(all.size(), 13u);
  EXPECT_THROW(find_fixture(all, "nope"), Error);
}

TEST(Fixtures, SpecFilesMatchRegistry) {
  const std::filesystem::path dir = ARFKIT_SPECS_DIR;
  for (const auto& f : registry()) {
    std::ifstream in(dir / (f.id + ".json"));
    ASSERT_TRUE(in) << f.id;
    EXPECT_EQ(json::parse(in), f.spec) << f.id;
  }
}

TEST(Fixtures, SampleSpecsParse) {
  const std::filesystem::path dir = ARFKIT_SPECS_DIR;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path());
    const json j = json::parse(in);
    if (!j.contains("construction")) continue;
    EXPECT_NO_THROW(with_field(j, [&](const auto& k) { return build_ring(k, j, Settings{}).branches(); })) << e.path();
  }
}
