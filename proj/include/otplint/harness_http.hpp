// Copyright 2026 The otplint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP/1.1 front end for OtpServer.
//
//   POST /accounts       {account_id, phone}   201 | 409
//   POST /otp/request    {account_id}          200 {sms, now} | 429 | 404
//   POST /otp/consume    {account_id, code}    200 {valid} | 404
//   POST /clock/advance  {seconds}             200 {now} | 400
//   GET  /clock                                200 {now}
//   GET  /profile                              200 profile descriptor
//
// Errors carry {error: <class>, message}.

#ifndef OTPLINT_HARNESS_HTTP_HPP_
#define OTPLINT_HARNESS_HTTP_HPP_

#include <memory>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "otplint/error.hpp"
#include "otplint/harness.hpp"

namespace otplint {

namespace detail {

inline int http_status(Errc e) {
  switch (e) {
    case Errc::quota: return 429;
    case Errc::not_found: return 404;
    case Errc::conflict: return 409;
    default: return 400;
  }
}

inline void reply(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void reply_error(httplib::Response& res, int status, std::string_view cls, const std::string& msg) {
  nlohmann::ordered_json body;
  body["error"] = cls;
  body["message"] = msg;
  reply(res, status, body);
}

}  // namespace detail

class HttpHarness {
 public:
  explicit HttpHarness(OtpServer& server) : server_(server) { routes(); }
  ~HttpHarness() { stop(); }

  HttpHarness(const HttpHarness&) = delete;
  HttpHarness& operator=(const HttpHarness&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0) {
    port_ = port == 0 ? http_.bind_to_any_port(host) : (http_.bind_to_port(host, port) ? port : -1);
    if (port_ < 0) throw Error(Errc::environment, "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { http_.listen_after_bind(); });
    http_.wait_until_ready();
    return port_;
  }

  /// Serves on the calling thread until stop() is called elsewhere.
  void serve(const std::string& host, int port) {
    if (!http_.listen(host, port)) throw Error(Errc::environment, "cannot listen on " + host);
  }

  void stop() {
    http_.stop();
    if (thread_.joinable()) thread_.join();
  }

  int port() const { return port_; }

 private:
  template <typename F>
  static auto guarded(F handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        nlohmann::json body = req.body.empty() ? nlohmann::json::object() : nlohmann::json::parse(req.body);
        handler(body, res);
      } catch (const nlohmann::json::exception& e) {
        detail::reply_error(res, 400, "schema", e.what());
      } catch (const Error& e) {
        detail::reply_error(res, detail::http_status(e.code()), errc_name(e.code()), e.what());
      }
    };
  }

  void routes() {
    http_.Post("/accounts", guarded([this](const nlohmann::json& b, httplib::Response& res) {
      server_.register_account(b.at("account_id").get<std::string>(), b.value("phone", std::string{}));
      detail::reply(res, 201, {{"account_id", b.at("account_id").get<std::string>()}});
    }));
    http_.Post("/otp/request", guarded([this](const nlohmann::json& b, httplib::Response& res) {
      auto sms = server_.request_otp(b.at("account_id").get<std::string>());
      nlohmann::ordered_json out;
      out["sms"] = sms;
      out["now"] = server_.now();
      detail::reply(res, 200, out);
    }));
    http_.Post("/otp/consume", guarded([this](const nlohmann::json& b, httplib::Response& res) {
      bool valid = server_.consume(b.at("account_id").get<std::string>(), b.at("code").get<std::string>());
      detail::reply(res, 200, {{"valid", valid}});
    }));
    http_.Post("/clock/advance", guarded([this](const nlohmann::json& b, httplib::Response& res) {
      detail::reply(res, 200, {{"now", server_.advance_clock(b.at("seconds").get<std::int64_t>())}});
    }));
    http_.Get("/clock", [this](const httplib::Request&, httplib::Response& res) {
      detail::reply(res, 200, {{"now", server_.now()}});
    });
    http_.Get("/profile", [this](const httplib::Request&, httplib::Response& res) {
      detail::reply(res, 200, server_.profile().descriptor());
    });
  }

  OtpServer& server_;
  httplib::Server http_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace otplint

#endif  // OTPLINT_HARNESS_HTTP_HPP_
