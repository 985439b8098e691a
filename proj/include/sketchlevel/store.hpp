#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace sketchlevel {

/// File-per-level store: <root>/levels/<id>.xml next to <id>.json.
/// Every write goes to a temporary file that is then renamed into place.
class LevelStore {
public:
  explicit LevelStore(std::filesystem::path root);

  /// Writes the metadata first so an .xml never exists without its .json.
  void put(const std::string& id, std::string_view xml, std::string_view meta);
  void replace_meta(const std::string& id, std::string_view meta);

  std::optional<std::string> read_xml(const std::string& id) const;
  std::optional<std::string> read_meta(const std::string& id) const;

  /// Serialises read-modify-write cycles on metadata.
  std::mutex& meta_mutex() noexcept { return meta_mutex_; }

  const std::filesystem::path& root() const noexcept { return root_; }

  /// URL-safe token: [A-Za-z0-9_-], 1..128 chars.
  static bool valid_id(std::string_view id) noexcept;

  /// 128 random bits, base64url without padding (22 chars).
  static std::string new_id();

private:
  std::filesystem::path file_for(const std::string& id, const char* ext) const;

  std::filesystem::path root_;
  std::filesystem::path levels_;
  std::mutex meta_mutex_;
};

/// Writes via <path>.tmp-<random> and rename(2).
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace sketchlevel
