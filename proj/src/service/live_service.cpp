// Copyright 2026 The zcsi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zcsi/service/live_service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <list>

#include <sys/socket.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "zcsi/analysis/export.hpp"
#include "zcsi/service/frame_event.hpp"

namespace zcsi::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

constexpr std::size_t kDefaultLatest = 10;
constexpr std::size_t kMaxLatest = 1000;

HttpResponse error(unsigned status, std::string_view reason, const std::string& message) {
  return {status, json{{"error", reason}, {"message", message}}};
}

struct Target {
  std::string path;
  std::map<std::string, std::string> query;
};

Target split_target(const std::string& target) {
  Target t;
  auto q = target.find('?');
  t.path = target.substr(0, q);
  if (t.path.rfind("/api/v1/", 0) == 0) t.path.erase(4, 3);
  if (t.path.size() > 1 && t.path.back() == '/') t.path.pop_back();
  if (q == std::string::npos) return t;
  std::string_view rest(target);
  rest.remove_prefix(q + 1);
  while (!rest.empty()) {
    auto amp = rest.find('&');
    auto part = rest.substr(0, amp);
    auto eq = part.find('=');
    t.query.emplace(std::string(part.substr(0, eq)),
                    eq == std::string_view::npos ? "" : std::string(part.substr(eq + 1)));
    if (amp == std::string_view::npos) break;
    rest.remove_prefix(amp + 1);
  }
  return t;
}

bool flag(const Target& t, const std::string& key) {
  auto it = t.query.find(key);
  return it != t.query.end() && (it->second == "1" || it->second == "true" || it->second.empty());
}

json state_json(const controller::ControllerState& s) {
  return json{{"phase", controller::to_string(s.phase)},
              {"locked_band", s.locked_band ? json(wire::to_string(*s.locked_band)) : json(nullptr)}};
}

json counters_json(const collector::CollectorCounters& c) {
  return json{{"datagrams", c.datagrams},
              {"frames_accepted", c.frames_accepted},
              {"decode_errors", c.decode_errors},
              {"filtered_out", c.filtered_out},
              {"source_port_rejected", c.source_port_rejected},
              {"anomalous_frames", c.anomalous_frames},
              {"capture_write_errors", c.capture_write_errors},
              {"subscriber_drops", c.subscriber_drops}};
}

wire::Ipv4Address parse_ip_field(const json& body, const char* field) {
  const auto& v = body.at(field);
  if (!v.is_string()) throw RequestError(std::string(field) + " must be a string");
  auto ip = wire::Ipv4Address::parse(v.get<std::string>());
  if (!ip) throw RequestError(std::string(field) + " is not a dotted-quad address");
  return *ip;
}

}  // namespace

SessionRequest parse_session_request(const json& body) {
  if (!body.is_object()) throw RequestError("body must be a JSON object");
  SessionRequest r;

  if (!body.contains("band") || !body["band"].is_string()) throw RequestError("band is required");
  auto band = body["band"].get<std::string>();
  if (band == "2.4g") {
    r.band = wire::Band::k2G4;
  } else if (band == "5g") {
    r.band = wire::Band::k5G;
  } else {
    throw RequestError("band must be \"2.4g\" or \"5g\"");
  }

  if (body.contains("frame_type")) {
    const auto& ft = body["frame_type"];
    if (!ft.is_number_integer() || ft.get<long long>() < 0 || ft.get<long long>() > 0x3F) {
      throw RequestError("frame_type must be an integer in 0..63");
    }
    r.frame_type = static_cast<std::uint8_t>(ft.get<int>());
  }

  if (body.contains("sta_filters")) {
    const auto& list = body["sta_filters"];
    if (!list.is_array()) throw RequestError("sta_filters must be a list");
    if (list.size() > controller::kMaxStaFilters) throw RequestError("at most 5 sta_filters");
    for (const auto& m : list) {
      auto mac = m.is_string() ? wire::MacAddress::parse(m.get<std::string>()) : std::nullopt;
      if (!mac) throw RequestError("sta_filters entry is not a MAC address: " + m.dump());
      r.sta_filters.push_back(*mac);
    }
  }

  if (!body.contains("report_target_ip")) throw RequestError("report_target_ip is required");
  r.report_target_ip = parse_ip_field(body, "report_target_ip");
  if (body.contains("ap_address")) r.ap_address = parse_ip_field(body, "ap_address");
  return r;
}

// Socket side: an acceptor thread plus one thread per connection.
struct LiveService::Impl {
  asio::io_context ioc;
  tcp::acceptor acceptor{ioc};
  std::jthread accept_thread;

  struct Connection {
    std::shared_ptr<tcp::socket> socket;
    std::jthread thread;
    std::shared_ptr<std::atomic<bool>> done;
  };
  std::mutex conn_mu;
  std::list<Connection> connections;
  std::atomic<bool> stopping{false};

  static void serve_connection(LiveService& svc, const std::shared_ptr<tcp::socket>& sock);

  void reap() {
    std::lock_guard lock(conn_mu);
    connections.remove_if([](const Connection& c) { return c.done->load(); });
  }
};

LiveService::LiveService(ServiceConfig config, collector::Collector& collector)
    : config_(std::move(config)), collector_(collector), impl_(std::make_unique<Impl>()) {
  config_.controller.validate();
  if (!(config_.max_stream_rate_hz > 0)) throw std::invalid_argument("max_stream_rate_hz must be positive");
}

LiveService::~LiveService() { stop(); }

wire::Endpoint LiveService::local_endpoint() const {
  auto ep = impl_->acceptor.local_endpoint();
  auto v4 = ep.address().to_v4().to_bytes();
  return {wire::Ipv4Address{{v4[0], v4[1], v4[2], v4[3]}}, ep.port()};
}

ServiceCounters LiveService::counters() const {
  return {http_requests_.load(), stream_clients_.load(), stream_events_.load()};
}

namespace {

void serve_stream(websocket::stream<tcp::socket>& ws, collector::Collector& collector, bool iq,
                  double max_rate_hz, std::atomic<std::uint64_t>& events, const std::atomic<bool>& stopping) {
  using clock = std::chrono::steady_clock;
  const auto min_gap = std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(1.0 / max_rate_hz));
  // Capacity one: while we wait out the rate limit, newer frames replace
  // older ones and the subscription counts the drops.
  auto sub = collector.subscribe(1);
  ws.text(true);
  auto next_allowed = clock::now();
  beast::flat_buffer inbound;
  beast::error_code ec;
  while (!stopping) {
    // Handle whatever the client sent (close, ping) without blocking.
    if (ws.next_layer().available(ec) > 0) {
      ws.read(inbound, ec);
      if (ec) break;
      inbound.consume(inbound.size());
    }
    if (ec) break;
    auto now = clock::now();
    if (now < next_allowed) {
      std::this_thread::sleep_for(std::min<clock::duration>(next_allowed - now, std::chrono::milliseconds(20)));
      continue;
    }
    auto rec = sub->pop(std::chrono::milliseconds(50));
    if (!rec) continue;
    auto text = to_json(make_frame_event(**rec, iq)).dump();
    ws.write(asio::buffer(text), ec);
    if (ec) break;
    ++events;
    next_allowed = clock::now() + min_gap;
  }
  collector.unsubscribe(sub);
  // A synchronous close would wait for the peer's reply; on shutdown the
  // caller just drops the TCP connection.
}

}  // namespace

void LiveService::start() {
  if (impl_->accept_thread.joinable()) return;
  boost::system::error_code ec;
  tcp::endpoint ep(asio::ip::address_v4(config_.listen.address.to_host_u32()), config_.listen.port);
  impl_->acceptor.open(ep.protocol(), ec);
  if (!ec) impl_->acceptor.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) impl_->acceptor.bind(ep, ec);
  if (!ec) impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) throw std::runtime_error("cannot listen on " + config_.listen.to_string() + ": " + ec.message());
  impl_->stopping = false;

  impl_->accept_thread = std::jthread([this] {
    while (!impl_->stopping) {
      auto sock = std::make_shared<tcp::socket>(impl_->ioc);
      boost::system::error_code aec;
      impl_->acceptor.accept(*sock, aec);
      if (aec) {
        if (impl_->stopping || aec == asio::error::bad_descriptor) break;
        continue;
      }
      impl_->reap();
      auto done = std::make_shared<std::atomic<bool>>(false);
      std::lock_guard lock(impl_->conn_mu);
      impl_->connections.push_back({sock, std::jthread([this, sock, done] {
                                      Impl::serve_connection(*this, sock);
                                      *done = true;
                                    }),
                                    done});
    }
  });
}

void LiveService::stop() {
  if (!impl_->accept_thread.joinable()) return;
  impl_->stopping = true;
  boost::system::error_code ec;
  // Closing the fd does not wake a blocked accept(); shutting it down does.
  ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
  impl_->accept_thread.join();
  impl_->accept_thread = {};
  impl_->acceptor.close(ec);
  std::list<Impl::Connection> conns;
  {
    std::lock_guard lock(impl_->conn_mu);
    for (auto& c : impl_->connections) c.socket->shutdown(tcp::socket::shutdown_both, ec);
    conns.swap(impl_->connections);
  }
  conns.clear();  // joins
}

void LiveService::Impl::serve_connection(LiveService& svc, const std::shared_ptr<tcp::socket>& sock) {
  beast::flat_buffer buffer;
  beast::error_code ec;
  while (!svc.impl_->stopping) {
    http::request<http::string_body> req;
    http::read(*sock, buffer, req, ec);
    if (ec) break;

    auto target = split_target(std::string(req.target()));
    if (websocket::is_upgrade(req)) {
      if (target.path != "/ws/csi" && target.path != "/api/ws/csi") {
        http::response<http::string_body> res{http::status::not_found, req.version()};
        res.set(http::field::content_type, "application/json");
        res.body() = error(404, "not_found", "no stream at " + target.path).body.dump();
        res.prepare_payload();
        http::write(*sock, res, ec);
        break;
      }
      websocket::stream<tcp::socket> ws(std::move(*sock));
      ws.accept(req, ec);
      if (ec) break;
      ++svc.stream_clients_;
      serve_stream(ws, svc.collector_, flag(target, "iq"), svc.config_.max_stream_rate_hz,
                   svc.stream_events_, svc.impl_->stopping);
      // Hand the socket back so stop() can still shut it down.
      *sock = std::move(ws.next_layer());
      break;
    }

    auto out = svc.handle(std::string(req.method_string()), std::string(req.target()), req.body());
    http::response<http::string_body> res{static_cast<http::status>(out.status), req.version()};
    res.set(http::field::content_type, "application/json");
    res.set(http::field::access_control_allow_origin, "*");
    res.keep_alive(req.keep_alive());
    res.body() = out.body.dump();
    res.prepare_payload();
    http::write(*sock, res, ec);
    if (ec || !res.keep_alive()) break;
  }
  sock->shutdown(tcp::socket::shutdown_both, ec);
}

HttpResponse LiveService::handle(const std::string& method, const std::string& target,
                                 const std::string& body) {
  ++http_requests_;
  auto t = split_target(target);

  if (t.path == "/api/health" && method == "GET") {
    return {200, json{{"status", "ok"},
                      {"collector", counters_json(collector_.counters())},
                      {"stream_clients", stream_clients_.load()},
                      {"stream_events", stream_events_.load()}}};
  }
  if (t.path == "/api/stats" && method == "GET") {
    return {200, analysis::stats_to_json(collector_.stats())};
  }
  if (t.path == "/api/frames/latest" && method == "GET") {
    std::size_t n = kDefaultLatest;
    if (auto it = t.query.find("n"); it != t.query.end()) {
      const auto& v = it->second;
      auto [p, err] = std::from_chars(v.data(), v.data() + v.size(), n);
      if (err != std::errc{} || p != v.data() + v.size()) {
        return error(400, "invalid_request", "n must be a non-negative integer");
      }
      n = std::min(n, kMaxLatest);
    }
    bool iq = flag(t, "iq");
    json list = json::array();
    for (const auto& r : collector_.latest(n)) list.push_back(to_json(make_frame_event(*r, iq)));
    return {200, list};
  }
  if (t.path == "/api/session") {
    if (method == "GET") return get_session();
    if (method == "POST") return post_session(body);
    if (method == "DELETE") return delete_session();
    return error(405, "method_not_allowed", method + " " + t.path);
  }
  if (t.path == "/api/session/reset" && method == "POST") return reset_session(body);
  if (t.path == "/api/health" || t.path == "/api/stats" || t.path == "/api/frames/latest") {
    return error(405, "method_not_allowed", method + " " + t.path);
  }
  return error(404, "not_found", "no route for " + t.path);
}

controller::Controller& LiveService::controller_for(const wire::Ipv4Address& ap) {
  std::lock_guard lock(state_mu_);
  auto& slot = controllers_[ap];
  if (!slot) {
    auto cfg = config_.controller;
    cfg.ap_address = ap;
    slot = std::make_unique<controller::Controller>(cfg);
  }
  return *slot;
}

namespace {

HttpResponse controller_error(const controller::ControllerError& e) {
  using controller::ControllerErrc;
  switch (e.code()) {
    case ControllerErrc::kBandLocked:
      return error(409, "band_locked",
                   std::string(e.what()) + " (reboot emulator/AP to switch bands)");
    case ControllerErrc::kBusy: return error(409, "busy", e.what());
    case ControllerErrc::kPrecondition: return error(409, "precondition", e.what());
    case ControllerErrc::kTransport:
    case ControllerErrc::kSequenceStalled: break;
  }
  auto r = error(502, controller::to_string(e.code()), e.what());
  r.body["reached"] = state_json(e.reached());
  return r;
}

}  // namespace

HttpResponse LiveService::post_session(const std::string& body) {
  SessionRequest req;
  try {
    req = parse_session_request(json::parse(body));
  } catch (const json::exception& e) {
    return error(400, "invalid_request", std::string("bad JSON: ") + e.what());
  } catch (const RequestError& e) {
    return error(400, "invalid_request", e.what());
  }
  std::unique_lock op(op_mu_, std::try_to_lock);
  if (!op) return error(409, "busy", "another session operation is in progress");
  {
    std::lock_guard lock(state_mu_);
    if (active_) return error(409, "session_active", "stop the running session first");
  }

  auto ap = req.ap_address.value_or(config_.controller.ap_address);
  auto& ctl = controller_for(ap);
  controller::SessionPlan plan;
  plan.band = req.band;
  plan.frame_type = req.frame_type;
  plan.sta_filters = req.sta_filters;
  plan.report_target_ip = req.report_target_ip;
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    return error(400, "invalid_request", e.what());
  }
  try {
    auto st = ctl.start_session(plan);
    std::lock_guard lock(state_mu_);
    active_ = ActiveSession{ap};
    auto j = state_json(st);
    j["active"] = true;
    j["ap_address"] = ap.to_string();
    return {200, j};
  } catch (const controller::ControllerError& e) {
    return controller_error(e);
  }
}

HttpResponse LiveService::delete_session() {
  std::unique_lock op(op_mu_, std::try_to_lock);
  if (!op) return error(409, "busy", "another session operation is in progress");
  std::optional<ActiveSession> active;
  {
    std::lock_guard lock(state_mu_);
    active = active_;
  }
  if (!active) return error(409, "no_active_session", "no session is running");
  try {
    auto st = controller_for(active->ap).stop_session();
    std::lock_guard lock(state_mu_);
    active_.reset();
    auto j = state_json(st);
    j["active"] = false;
    j["ap_address"] = active->ap.to_string();
    return {200, j};
  } catch (const controller::ControllerError& e) {
    return controller_error(e);
  }
}

HttpResponse LiveService::get_session() {
  std::lock_guard lock(state_mu_);
  auto ap = active_ ? active_->ap : config_.controller.ap_address;
  auto it = controllers_.find(ap);
  auto j = state_json(it == controllers_.end() ? controller::ControllerState{} : it->second->state());
  j["active"] = active_.has_value();
  j["ap_address"] = ap.to_string();
  return {200, j};
}

// Forget the band lock after the AP has been power cycled.
HttpResponse LiveService::reset_session(const std::string& body) {
  wire::Ipv4Address ap = config_.controller.ap_address;
  if (!body.empty()) {
    try {
      auto j = json::parse(body);
      if (j.contains("ap_address")) ap = parse_ip_field(j, "ap_address");
    } catch (const json::exception& e) {
      return error(400, "invalid_request", std::string("bad JSON: ") + e.what());
    } catch (const RequestError& e) {
      return error(400, "invalid_request", e.what());
    }
  }
  std::unique_lock op(op_mu_, std::try_to_lock);
  if (!op) return error(409, "busy", "another session operation is in progress");
  {
    std::lock_guard lock(state_mu_);
    if (active_ && active_->ap == ap) return error(409, "session_active", "stop the running session first");
  }
  auto& ctl = controller_for(ap);
  try {
    ctl.reset();
  } catch (const controller::ControllerError& e) {
    return controller_error(e);
  }
  auto j = state_json(ctl.state());
  j["active"] = false;
  j["ap_address"] = ap.to_string();
  return {200, j};
}

}  // namespace zcsi::service
