#include "sketchlevel/store.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>

#include "sketchlevel/error.hpp"

namespace sketchlevel {

namespace {

std::string base64url(const unsigned char* data, std::size_t n) {
  static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
  std::string out;
  std::size_t i = 0;
  for (; i + 3 <= n; i += 3) {
    const unsigned v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  if (n - i == 1) {
    const unsigned v = data[i] << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
  } else if (n - i == 2) {
    const unsigned v = (data[i] << 16) | (data[i + 1] << 8);
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
  }
  return out;
}

std::optional<std::string> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::random_device rd;
  const auto tmp = path.parent_path() / (path.filename().string() + ".tmp-" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

LevelStore::LevelStore(std::filesystem::path root) : root_(std::move(root)), levels_(root_ / "levels") {
  std::error_code ec;
  std::filesystem::create_directories(levels_, ec);
  if (ec) throw Error("cannot create store directory " + levels_.string() + ": " + ec.message());
}

bool LevelStore::valid_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 128) return false;
  for (char c : id) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string LevelStore::new_id() {
  std::random_device rd;
  std::array<unsigned char, 16> bytes{};
  for (std::size_t i = 0; i < bytes.size(); i += 4) {
    const auto word = rd();
    for (std::size_t k = 0; k < 4; ++k) bytes[i + k] = static_cast<unsigned char>(word >> (8 * k));
  }
  return base64url(bytes.data(), bytes.size());
}

std::filesystem::path LevelStore::file_for(const std::string& id, const char* ext) const {
  if (!valid_id(id)) throw ContractError("invalid level id");
  return levels_ / (id + ext);
}

void LevelStore::put(const std::string& id, std::string_view xml, std::string_view meta) {
  write_file_atomic(file_for(id, ".json"), meta);
  write_file_atomic(file_for(id, ".xml"), xml);
}

void LevelStore::replace_meta(const std::string& id, std::string_view meta) {
  write_file_atomic(file_for(id, ".json"), meta);
}

std::optional<std::string> LevelStore::read_xml(const std::string& id) const {
  if (!valid_id(id)) return std::nullopt;
  return slurp(file_for(id, ".xml"));
}

std::optional<std::string> LevelStore::read_meta(const std::string& id) const {
  if (!valid_id(id)) return std::nullopt;
  if (!std::filesystem::exists(file_for(id, ".xml"))) return std::nullopt;
  return slurp(file_for(id, ".json"));
}

}  // namespace sketchlevel
