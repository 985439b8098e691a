#include "sketchlevel/service.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>

#include "httplib.h"
#include "sketchlevel/error.hpp"

namespace sketchlevel {

std::filesystem::path default_data_dir() {
#ifdef SKETCHLEVEL_DATA_DIR
  return SKETCHLEVEL_DATA_DIR;
#else
  return "data";
#endif
}

void parse_bind_address(std::string_view text, std::string& host, int& port) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) throw ContractError("bind address must look like HOST:PORT");
  const std::string_view port_text = text.substr(colon + 1);
  int value = -1;
  const auto res = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
  if (res.ec != std::errc{} || res.ptr != port_text.data() + port_text.size() || value < 0 || value > 65535)
    throw ContractError("bad port in bind address '" + std::string(text) + "'");
  host = std::string(text.substr(0, colon));
  port = value;
}

void apply_environment(ServiceConfig& cfg) {
  if (const char* v = std::getenv("SKETCHLEVEL_BIND")) parse_bind_address(v, cfg.host, cfg.port);
  if (const char* v = std::getenv("SKETCHLEVEL_STORE")) cfg.store_root = v;
  if (const char* v = std::getenv("SKETCHLEVEL_MODEL")) cfg.model_path = v;
  if (const char* v = std::getenv("SKETCHLEVEL_THERAPY_DIR")) cfg.therapy_dir = v;
  if (const char* v = std::getenv("SKETCHLEVEL_CORS_ORIGIN")) cfg.cors_origin = v;
}

Json config_to_json(const ServiceConfig& cfg) {
  return {{"bind", cfg.host + ":" + std::to_string(cfg.port)},
          {"store", cfg.store_root.string()},
          {"model", cfg.model_path.string()},
          {"therapy_dir", cfg.therapy_dir.string()},
          {"cors_origin", cfg.cors_origin},
          {"max_body_bytes", cfg.max_body_bytes},
          {"temperature", cfg.temperature},
          {"hard_cutoff", cfg.hard_cutoff},
          {"generation", cfg.generation}};
}

ApiResponse error_response(int status, std::string_view code, std::string_view detail) {
  Json body = {{"error", code}, {"detail", detail}};
  return {status, "application/json", body.dump()};
}

namespace {

ApiResponse json_response(int status, const Json& body) { return {status, "application/json", body.dump()}; }

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

/// Per-request overrides from the query string; nullopt + message on bad input.
std::optional<std::string> apply_query(const LevelService::Query& query, GenerationConfig& cfg) {
  for (const auto& [key, value] : query) {
    if (key == "seed") {
      if (!parse_number(value, cfg.seed)) return "seed must be an unsigned 64-bit integer";
    } else if (key == "tnt_prob") {
      double p = 0;
      if (!parse_number(value, p) || !(p >= 0.0 && p <= 1.0)) return "tnt_prob must be a number in [0, 1]";
      cfg.tnt_prob = p;
    } else if (key == "threshold") {
      int t = 0;
      if (!parse_number(value, t) || t < 0 || t > 255) return "threshold must be an integer in [0, 255]";
      cfg.threshold = t;
    } else {
      return "unknown query parameter '" + key + "'";
    }
  }
  return std::nullopt;
}

}  // namespace

LevelService::LevelService(ServiceConfig cfg)
    : LevelService(cfg, load_templates(cfg.model_path), TherapyModel::load(cfg.therapy_dir)) {}

LevelService::LevelService(ServiceConfig cfg, TemplateSet model, TherapyModel therapy)
    : cfg_(std::move(cfg)), model_(std::move(model)), therapy_(std::move(therapy)) {
  cfg_.generation.validate();
  if (model_.cols() != cfg_.generation.cols || model_.rows() != cfg_.generation.rows)
    throw DimensionError("template set is " + std::to_string(model_.cols()) + "x" + std::to_string(model_.rows()) +
                         " but generation uses " + std::to_string(cfg_.generation.cols) + "x" +
                         std::to_string(cfg_.generation.rows));
  therapy_.set_hard_cutoff(cfg_.hard_cutoff);
  store_ = std::make_unique<LevelStore>(cfg_.store_root);
}

ApiResponse LevelService::create_level(std::string_view body, const Query& query) {
  if (body.size() > cfg_.max_body_bytes)
    return error_response(413, "payload_too_large",
                          "image is " + std::to_string(body.size()) + " bytes; the limit is " +
                              std::to_string(cfg_.max_body_bytes));
  GenerationConfig gen = cfg_.generation;
  if (auto problem = apply_query(query, gen)) return error_response(400, "bad_request", *problem);

  try {
    const auto bytes = std::span(reinterpret_cast<const std::uint8_t*>(body.data()), body.size());
    const SketchImage image = load_image(bytes);
    const BinaryGrid grid = sketch_to_grid(image, gen);
    const RecognitionResult recognition = classify(grid, model_, cfg_.temperature);
    const LevelSpec spec = generate(grid, gen);
    const StabilityReport stability = check_support(spec);
    const DifficultyStats stats = difficulty_stats(spec);
    const std::string xml = emit_level(to_document(spec, cfg_.document));
    const FeedbackPhrase preview =
        compose_feedback(therapy_, recognition.top_label(), GameplayOutcome::not_played(), stats, gen.seed);

    const std::string id = LevelStore::new_id();
    Json meta = {{"id", id},
                 {"created_at", utc_now()},
                 {"config", gen},
                 {"level", level_to_json(spec)},
                 {"recognition", recognition},
                 {"stats", stats},
                 {"stability", stability},
                 {"feedback_preview", preview.text},
                 {"outcome", nullptr},
                 {"feedback", nullptr},
                 {"rotation", ""}};
    try {
      store_->put(id, xml, meta.dump(2) + "\n");
    } catch (const Error& e) {
      return error_response(500, "storage_error", e.what());
    }

    Json response = {{"id", id},
                     {"xml", xml},
                     {"recognition", recognition},
                     {"stats", stats},
                     {"stability", stability},
                     {"feedback_preview", preview.text}};
    return json_response(201, response);
  } catch (const DecodeError& e) {
    return error_response(400, "decode_error", e.what());
  } catch (const FormatError& e) {
    return error_response(400, "unsupported_format", e.what());
  } catch (const DimensionError& e) {
    return error_response(400, "dimension_error", e.what());
  } catch (const BudgetError& e) {
    return error_response(422, "over_budget", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

ApiResponse LevelService::level_xml(const std::string& id) const {
  auto xml = store_->read_xml(id);
  if (!xml) return error_response(404, "not_found", "no level with id '" + id + "'");
  return {200, "application/xml", std::move(*xml)};
}

ApiResponse LevelService::level_meta(const std::string& id) const {
  auto meta = store_->read_meta(id);
  if (!meta) return error_response(404, "not_found", "no level with id '" + id + "'");
  return {200, "application/json", std::move(*meta)};
}

ApiResponse LevelService::report_outcome(const std::string& id, std::string_view body) {
  std::lock_guard lock(store_->meta_mutex());
  auto raw = store_->read_meta(id);
  if (!raw) return error_response(404, "not_found", "no level with id '" + id + "'");

  Json request;
  try {
    request = Json::parse(body);
  } catch (const Json::exception& e) {
    return error_response(400, "bad_request", std::string("body is not valid JSON: ") + e.what());
  }
  if (!request.is_object() || !request.contains("status") || !request["status"].is_string())
    return error_response(422, "invalid_status", "body needs a string field 'status'");
  const std::string status = request["status"].get<std::string>();
  if (status != "cleared" && status != "failed")
    return error_response(422, "invalid_status", "status must be 'cleared' or 'failed', got '" + status + "'");

  try {
    const GameplayOutcome outcome = outcome_from_json(request);
    Json meta = Json::parse(*raw);
    const RecognitionResult recognition = recognition_from_json(meta.at("recognition"));
    const DifficultyStats stats = stats_from_json(meta.at("stats"));
    const std::uint64_t seed = meta.at("config").at("seed").get<std::uint64_t>();
    FeedbackRotation rotation{meta.value("rotation", std::string{})};

    const FeedbackPhrase feedback =
        compose_feedback(therapy_, recognition.top_label(), outcome, stats, seed, &rotation);
    meta["outcome"] = outcome;
    meta["feedback"] = feedback.text;
    meta["rotation"] = rotation.last_template_id;
    try {
      store_->replace_meta(id, meta.dump(2) + "\n");
    } catch (const Error& e) {
      return error_response(500, "storage_error", e.what());
    }
    return json_response(200, {{"feedback", feedback.text}, {"template_id", feedback.template_id},
                                {"outcome", outcome}});
  } catch (const ContractError& e) {
    return error_response(422, "invalid_outcome", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

ApiResponse LevelService::recognize(std::string_view body) const {
  if (body.size() > cfg_.max_body_bytes)
    return error_response(413, "payload_too_large",
                          "image is " + std::to_string(body.size()) + " bytes; the limit is " +
                              std::to_string(cfg_.max_body_bytes));
  try {
    const auto bytes = std::span(reinterpret_cast<const std::uint8_t*>(body.data()), body.size());
    const BinaryGrid grid = sketch_to_grid(load_image(bytes), cfg_.generation);
    return json_response(200, Json(classify(grid, model_, cfg_.temperature)));
  } catch (const DecodeError& e) {
    return error_response(400, "decode_error", e.what());
  } catch (const FormatError& e) {
    return error_response(400, "unsupported_format", e.what());
  } catch (const DimensionError& e) {
    return error_response(400, "dimension_error", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

struct HttpServer::Impl {
  LevelService& service;
  httplib::Server server;

  explicit Impl(LevelService& s) : service(s) {}

  void send(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, api.content_type);
  }
};

HttpServer::HttpServer(LevelService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->server;
  Impl* impl = impl_.get();
  const std::string origin = service.config().cors_origin;

  // Oversized bodies beyond this are refused by httplib itself with 413.
  svr.set_payload_max_length(service.config().max_body_bytes * 4);

  svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    if (!origin.empty()) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
  });
  svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const char* code = res.status == 404   ? "not_found"
                       : res.status == 413 ? "payload_too_large"
                       : res.status == 405 ? "method_not_allowed"
                                           : "bad_request";
    Json body = {{"error", code}, {"detail", httplib::status_message(res.status)}};
    res.set_content(body.dump(), "application/json");
  });

  svr.Post("/api/levels", [impl](const httplib::Request& req, httplib::Response& res) {
    // Only the URL query counts; req.params also holds a form-decoded body.
    LevelService::Query query;
    httplib::Params params;
    if (const auto q = req.target.find('?'); q != std::string::npos)
      httplib::detail::parse_query_text(req.target.substr(q + 1), params);
    for (const auto& [k, v] : params) query[k] = v;
    impl->send(res, impl->service.create_level(req.body, query));
  });
  svr.Get(R"(/api/levels/([A-Za-z0-9_-]+))", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->send(res, impl->service.level_xml(req.matches[1]));
  });
  svr.Get(R"(/api/levels/([A-Za-z0-9_-]+)/meta)", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->send(res, impl->service.level_meta(req.matches[1]));
  });
  svr.Post(R"(/api/levels/([A-Za-z0-9_-]+)/outcome)", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->send(res, impl->service.report_outcome(req.matches[1], req.body));
  });
  svr.Post("/api/recognize", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->send(res, impl->service.recognize(req.body));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace sketchlevel
