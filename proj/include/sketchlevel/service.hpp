#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "sketchlevel/json_io.hpp"
#include "sketchlevel/levelgen.hpp"
#include "sketchlevel/levelxml.hpp"
#include "sketchlevel/recognizer.hpp"
#include "sketchlevel/store.hpp"
#include "sketchlevel/therapy.hpp"

namespace sketchlevel {

/// Data shipped with the repository; overridable at build time.
std::filesystem::path default_data_dir();

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8787;
  std::filesystem::path store_root = "./data";
  std::filesystem::path model_path = default_data_dir() / "models" / "starter.json";
  std::filesystem::path therapy_dir = default_data_dir() / "therapy";
  std::string cors_origin = "*";
  std::size_t max_body_bytes = 1u << 20;
  double temperature = kDefaultTemperature;
  double hard_cutoff = TherapyModel::kDefaultHardCutoff;
  GenerationConfig generation;
  DocumentDefaults document;
};

/// "host:port"; throws ContractError on a malformed address.
void parse_bind_address(std::string_view text, std::string& host, int& port);

/// Applies SKETCHLEVEL_BIND, SKETCHLEVEL_STORE, SKETCHLEVEL_MODEL,
/// SKETCHLEVEL_THERAPY_DIR and SKETCHLEVEL_CORS_ORIGIN when set.
void apply_environment(ServiceConfig& cfg);

Json config_to_json(const ServiceConfig& cfg);

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

ApiResponse error_response(int status, std::string_view code, std::string_view detail);

/// Everything behind the HTTP routes. Handlers never throw; failures map to
/// JSON bodies {"error": code, "detail": text}.
class LevelService {
public:
  explicit LevelService(ServiceConfig cfg);
  LevelService(ServiceConfig cfg, TemplateSet model, TherapyModel therapy);

  using Query = std::map<std::string, std::string>;

  ApiResponse create_level(std::string_view body, const Query& query);
  ApiResponse level_xml(const std::string& id) const;
  ApiResponse level_meta(const std::string& id) const;
  ApiResponse report_outcome(const std::string& id, std::string_view body);
  ApiResponse recognize(std::string_view body) const;

  const ServiceConfig& config() const noexcept { return cfg_; }
  const TemplateSet& model() const noexcept { return model_; }
  const TherapyModel& therapy() const noexcept { return therapy_; }

private:
  ServiceConfig cfg_;
  TemplateSet model_;
  TherapyModel therapy_;
  std::unique_ptr<LevelStore> store_;
};

/// cpp-httplib front end for LevelService.
class HttpServer {
public:
  explicit HttpServer(LevelService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool serve();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sketchlevel
