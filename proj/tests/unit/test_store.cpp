#include <set>
#include <thread>

#include "doctest.h"
#include "sketchlevel/error.hpp"
#include "sketchlevel/store.hpp"
#include "test_support.hpp"

using namespace sketchlevel;

TEST_CASE("put and read back byte for byte") {
  const auto root = testing::scratch_dir("store");
  LevelStore store(root);
  const std::string xml = "<Level>\n</Level>\n", meta = "{\"id\": \"abc\"}";
  store.put("abc", xml, meta);
  CHECK(store.read_xml("abc") == xml);
  CHECK(store.read_meta("abc") == meta);
  CHECK(std::filesystem::exists(root / "levels" / "abc.xml"));
  CHECK(std::filesystem::exists(root / "levels" / "abc.json"));

  store.replace_meta("abc", "{}");
  CHECK(store.read_meta("abc") == "{}");
  CHECK(store.read_xml("abc") == xml);

  LevelStore reopened(root);
  CHECK(reopened.read_xml("abc") == xml);
  std::filesystem::remove_all(root);
}

TEST_CASE("missing and invalid ids") {
  const auto root = testing::scratch_dir("store");
  LevelStore store(root);
  CHECK_FALSE(store.read_xml("nothing").has_value());
  CHECK_FALSE(store.read_meta("nothing").has_value());
  CHECK_FALSE(store.read_xml("../etc/passwd").has_value());
  CHECK_THROWS_AS(store.put("a/b", "", ""), ContractError);
  std::filesystem::remove_all(root);
}

TEST_CASE("metadata without its level is invisible") {
  const auto root = testing::scratch_dir("store");
  LevelStore store(root);
  write_file_atomic(root / "levels" / "orphan.json", "{}");
  CHECK_FALSE(store.read_meta("orphan").has_value());
  std::filesystem::remove_all(root);
}

TEST_CASE("atomic writes leave no temporary files") {
  const auto root = testing::scratch_dir("store");
  LevelStore store(root);
  std::vector<std::thread> writers;
  for (int t = 0; t < 8; ++t)
    writers.emplace_back([&store, t] {
      for (int i = 0; i < 20; ++i) store.put("shared", std::string(1000, static_cast<char>('a' + t)), "{}");
    });
  for (auto& w : writers) w.join();
  const std::string xml = *store.read_xml("shared");
  CHECK(xml.size() == 1000);
  CHECK(xml == std::string(1000, xml.front()));
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(root / "levels")) {
    CHECK(entry.path().filename().string().find(".tmp-") == std::string::npos);
    ++files;
  }
  CHECK(files == 2);
  std::filesystem::remove_all(root);
}

TEST_CASE("ids") {
  std::set<std::string> seen;
  for (int i = 0; i < 500; ++i) {
    const std::string id = LevelStore::new_id();
    CHECK(id.size() == 22);
    CHECK(LevelStore::valid_id(id));
    seen.insert(id);
  }
  CHECK(seen.size() == 500);
  CHECK(LevelStore::valid_id("a-b_C9"));
  CHECK_FALSE(LevelStore::valid_id(""));
  CHECK_FALSE(LevelStore::valid_id("a.b"));
  CHECK_FALSE(LevelStore::valid_id(std::string(129, 'a')));
}
