#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "pennant/index.hpp"
#include "pennant/pennant.hpp"

namespace pennant {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string index_path;
  Count default_min_co = kDefaultMinCo;
  double default_log_base = kDefaultLogBase;
  bool cors = false;  // send Access-Control-Allow-Origin for a browser UI
  std::string cors_origin = "*";
};

/// Parses "host:port" (or ":port", or "[v6addr]:port").
/// Throws InvalidParameterError("listen", ...) on anything else.
void parse_listen(std::string_view listen, ServiceConfig& config);

/// Applies PENNANT_LISTEN and PENNANT_INDEX when they are set.
void apply_env_overrides(ServiceConfig& config);

/// Accepts a positive real greater than 1 or the literal "e".
std::optional<double> parse_log_base(std::string_view text);

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string, std::less<>>;

/// Request handling over an immutable index, independent of any socket
/// code. Every response is a pure function of the path and parameters.
class PennantService {
 public:
  PennantService(std::shared_ptr<const TermIndex> index, ServiceConfig config);

  HttpResponse handle(std::string_view path, const QueryParams& params) const;

  const ServiceConfig& config() const noexcept { return config_; }
  const TermIndex& index() const noexcept { return *index_; }

 private:
  HttpResponse terms(const QueryParams& params) const;
  HttpResponse pennant(const QueryParams& params, bool svg) const;

  std::shared_ptr<const TermIndex> index_;
  ServiceConfig config_;
};

/// HTTP front end for PennantService.
class HttpServer {
 public:
  explicit HttpServer(const PennantService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); in-flight requests complete before it returns.
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pennant
