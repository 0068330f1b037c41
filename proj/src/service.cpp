#include "pennant/service.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "httplib.h"
#include "json.hpp"
#include "pennant/error.hpp"
#include "pennant/render.hpp"

namespace pennant {
namespace {

using nlohmann::json;

constexpr std::size_t kDefaultTermLimit = 20;

HttpResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump(-1, ' ', false, json::error_handler_t::replace) + "\n"};
}

HttpResponse bad_parameter(const std::string& name, const std::string& detail) {
  return json_response(400, json{{"error", "malformed parameter"}, {"parameter", name}, {"detail", detail}});
}

// Empty values are treated the same as an omitted parameter.
std::optional<std::string_view> param(const QueryParams& params, std::string_view name) {
  const auto it = params.find(name);
  if (it == params.end() || it->second.empty()) return std::nullopt;
  return std::string_view(it->second);
}

std::optional<std::uint64_t> parse_count(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Thrown inside request parsing, turned into a 400.
struct BadParameter {
  std::string name;
  std::string detail;
};

std::optional<std::uint64_t> count_param(const QueryParams& params, const char* name) {
  const auto raw = param(params, name);
  if (!raw) return std::nullopt;
  const auto v = parse_count(*raw);
  if (!v) throw BadParameter{name, "expected a non-negative integer"};
  if (*v < 1) throw BadParameter{name, "must be at least 1"};
  return v;
}

std::optional<double> real_param(const QueryParams& params, const char* name) {
  const auto raw = param(params, name);
  if (!raw) return std::nullopt;
  const auto v = parse_real(*raw);
  if (!v) throw BadParameter{name, "expected a real number"};
  return v;
}

}  // namespace

void parse_listen(std::string_view listen, ServiceConfig& config) {
  const auto colon = listen.rfind(':');
  if (colon == std::string_view::npos) throw InvalidParameterError("listen", "expected host:port");
  std::string_view host = listen.substr(0, colon);
  const auto port = parse_count(listen.substr(colon + 1));
  if (!port || *port > 65535) throw InvalidParameterError("listen", "port must be 0-65535");
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  config.host = host.empty() ? "0.0.0.0" : std::string(host);
  config.port = static_cast<int>(*port);
}

void apply_env_overrides(ServiceConfig& config) {
  if (const char* listen = std::getenv("PENNANT_LISTEN"); listen && *listen) parse_listen(listen, config);
  if (const char* path = std::getenv("PENNANT_INDEX"); path && *path) config.index_path = path;
}

std::optional<double> parse_log_base(std::string_view text) {
  if (text == "e") return std::numbers::e;
  const auto v = parse_real(text);
  if (!v || !(*v > 1.0)) return std::nullopt;
  return v;
}

PennantService::PennantService(std::shared_ptr<const TermIndex> index, ServiceConfig config)
    : index_(std::move(index)), config_(std::move(config)) {
  if (!index_) throw Error("service needs a loaded index");
}

HttpResponse PennantService::handle(std::string_view path, const QueryParams& params) const {
  if (path == "/healthz") return {200, "text/plain", "ok"};
  if (path == "/terms") return terms(params);
  if (path == "/pennant") return pennant(params, false);
  if (path == "/pennant.svg") return pennant(params, true);
  return json_response(404, json{{"error", "not found"}, {"path", std::string(path)}});
}

HttpResponse PennantService::terms(const QueryParams& params) const {
  std::size_t limit = kDefaultTermLimit;
  try {
    if (auto l = count_param(params, "limit")) limit = *l;
  } catch (const BadParameter& e) {
    return bad_parameter(e.name, e.detail);
  }
  const auto raw_prefix = params.find("prefix");
  const std::string prefix = raw_prefix == params.end()
                                 ? std::string()
                                 : normalize_term(raw_prefix->second, index_->build_meta().norm);

  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (TermId id : index_->terms_with_prefix(prefix, limit)) {
    out.push_back({{"term", index_->term(id)}, {"df", index_->df(id)}});
  }
  return {200, "application/json", out.dump(-1, ' ', false, json::error_handler_t::replace) + "\n"};
}

HttpResponse PennantService::pennant(const QueryParams& params, bool svg) const {
  const auto raw_seed = params.find("seed");
  if (raw_seed == params.end() || raw_seed->second.empty()) {
    return bad_parameter("seed", "seed is required");
  }
  const std::string seed = normalize_term(raw_seed->second, index_->build_meta().norm);

  PennantParams p;
  p.min_co = config_.default_min_co;
  p.log_base = config_.default_log_base;
  try {
    if (auto v = count_param(params, "min_co")) p.min_co = *v;
    if (auto v = count_param(params, "top_k")) p.top_k = static_cast<std::size_t>(*v);
    if (auto raw = param(params, "base")) {
      const auto b = parse_log_base(*raw);
      if (!b) throw BadParameter{"base", "expected a real number greater than 1 or \"e\""};
      p.log_base = *b;
    }
    if (auto v = real_param(params, "alpha")) p.sectors.alpha = *v;
    if (auto v = real_param(params, "gamma")) p.sectors.gamma = *v;
    if (auto v = real_param(params, "tau")) p.sectors.tau = *v;
  } catch (const BadParameter& e) {
    return bad_parameter(e.name, e.detail);
  }

  try {
    const PennantDiagram d = compute_pennant(*index_, seed, p);
    if (svg) return {200, "image/svg+xml", to_svg(d)};
    return {200, "application/json", to_json(d)};
  } catch (const UnknownTermError& e) {
    return json_response(404, json{{"error", "unknown term"}, {"seed", e.term()}});
  } catch (const InvalidParameterError& e) {
    return bad_parameter(e.name(), e.what());
  } catch (const DomainError& e) {
    return bad_parameter("base", e.what());
  } catch (const InvalidNError& e) {
    return json_response(422, json{{"error", "invalid N"}, {"detail", e.what()}});
  }
}

struct HttpServer::Impl {
  httplib::Server server;
  std::atomic<bool> bound{false};
};

HttpServer::HttpServer(const PennantService& service) : impl_(std::make_unique<Impl>()) {
  const bool cors = service.config().cors;
  const std::string origin = service.config().cors_origin;
  impl_->server.Get(R"(/.*)", [&service, cors, origin](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    const HttpResponse r = service.handle(req.path, params);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
    if (cors) res.set_header("Access-Control-Allow-Origin", origin);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) throw Error("cannot listen on " + host + ":" + std::to_string(port));
  impl_->bound = true;
  return bound;
}

void HttpServer::listen() {
  if (!impl_->bound) throw Error("HttpServer::listen called before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace pennant
