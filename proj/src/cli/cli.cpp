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

#include "zcsi/cli/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "zcsi/analysis/export.hpp"
#include "zcsi/analysis/spectrum.hpp"
#include "zcsi/analysis/stats.hpp"
#include "zcsi/cli/options.hpp"
#include "zcsi/collector/capture_file.hpp"
#include "zcsi/collector/collector.hpp"
#include "zcsi/collector/replay.hpp"
#include "zcsi/controller/controller.hpp"
#include "zcsi/emulator/emulator.hpp"
#include "zcsi/service/live_service.hpp"
#include "zcsi/wire/error.hpp"

namespace zcsi::cli {

namespace {

std::atomic<bool> g_stop{false};
static_assert(std::atomic<bool>::is_always_lock_free);

using nlohmann::json;

struct Options {
  std::string ap = "192.168.5.1";
  std::optional<std::uint16_t> port;
  std::string band;
  std::string frame_type = "0x22";
  std::vector<std::string> filters;
  std::string target_ip;
  std::string out;
  std::string in;
  std::optional<double> rate;
  std::uint64_t seed = 1;
  bool json = false;

  std::string format = "json";
  bool iq = false;
  std::optional<double> duration;
  std::string bind;
  std::optional<std::uint16_t> report_port;
  std::optional<std::uint16_t> http_port;
  std::uint16_t source_port = wire::kDefaultReportSourcePort;
  std::vector<std::string> stations;
  std::vector<std::string> taps;
  double gain = 1000.0;
  double noise = 0.0;
  double scale = 1.0;
  bool lenient = false;
  int timeout_ms = 2000;
};

void sleep_until_stopped(const std::optional<double>& duration) {
  auto start = std::chrono::steady_clock::now();
  while (!g_stop.load()) {
    if (duration && std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= *duration) {
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

std::uint16_t command_port(const Options& o) {
  return o.port ? *o.port : env_port(kEnvCommandPort, wire::kDefaultCommandPort);
}

std::uint16_t report_port(const Options& o) {
  return o.report_port ? *o.report_port : env_port(kEnvReportPort, wire::kDefaultReportPort);
}

controller::ControllerConfig controller_config(const Options& o) {
  controller::ControllerConfig c;
  c.ap_address = parse_ip(o.ap);
  c.command_port = command_port(o);
  c.availability_timeout = std::chrono::milliseconds(o.timeout_ms);
  return c;
}

json state_json(const controller::ControllerState& s) {
  return json{{"phase", controller::to_string(s.phase)},
              {"locked_band", s.locked_band ? json(wire::to_string(*s.locked_band)) : json(nullptr)}};
}

json collector_counters_json(const collector::CollectorCounters& c) {
  return json{{"datagrams", c.datagrams},           {"frames_accepted", c.frames_accepted},
              {"decode_errors", c.decode_errors},   {"filtered_out", c.filtered_out},
              {"anomalous_frames", c.anomalous_frames}, {"capture_write_errors", c.capture_write_errors}};
}

std::optional<std::set<wire::MacAddress>> allowlist(const Options& o) {
  if (o.filters.empty()) return std::nullopt;
  std::set<wire::MacAddress> s;
  for (const auto& f : o.filters) s.insert(parse_mac(f));
  return s;
}

int cmd_probe(const Options& o, std::ostream& out) {
  controller::Controller c(controller_config(o));
  bool ok = c.check_availability();
  if (o.json) {
    out << json{{"available", ok}}.dump() << '\n';
  } else {
    out << (ok ? "OK" : "no reply") << '\n';
  }
  return ok ? kExitOk : kExitProtocol;
}

int cmd_start(const Options& o, std::ostream& out) {
  controller::SessionPlan plan;
  plan.band = parse_band(o.band);
  plan.frame_type = parse_frame_type(o.frame_type);
  for (const auto& f : o.filters) plan.sta_filters.push_back(parse_mac(f));
  plan.report_target_ip = parse_ip(o.target_ip);
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  controller::Controller c(controller_config(o));
  json sent = json::array();
  c.set_send_observer([&](const wire::CommandFrame& f) {
    sent.push_back(static_cast<int>(f.type));
    if (!o.json) out << "sent " << wire::to_string(f.type) << '\n';
  });
  auto st = c.start_session(plan);
  if (o.json) {
    auto j = state_json(st);
    j["sent"] = sent;
    out << j.dump() << '\n';
  } else {
    out << "reporting on " << wire::to_string(*st.locked_band) << '\n';
  }
  return kExitOk;
}

int cmd_stop(const Options& o, std::ostream& out) {
  // A new process has no memory of the session; assume one is running.
  controller::Controller c(controller_config(o), {controller::Phase::kReporting, std::nullopt});
  auto st = c.stop_session();
  out << (o.json ? state_json(st).dump() : std::string("stopped")) << '\n';
  return kExitOk;
}

int cmd_capture(const Options& o, std::ostream& out, std::ostream& err) {
  collector::CollectorConfig cfg;
  cfg.bind = {o.bind.empty() ? wire::Ipv4Address::any() : parse_ip(o.bind), report_port(o)};
  cfg.capture_path = o.out;
  cfg.mac_allowlist = allowlist(o);
  collector::Collector col(cfg);
  col.start();
  if (!o.json) err << "capturing on " << col.local_endpoint().to_string() << " to " << o.out << '\n';
  sleep_until_stopped(o.duration);
  col.stop();
  auto counters = col.counters();
  auto warning = col.capture_warning();
  if (o.json) {
    auto j = collector_counters_json(counters);
    if (warning) j["capture_warning"] = *warning;
    out << j.dump() << '\n';
  } else {
    out << counters.frames_accepted << " frames captured, " << counters.decode_errors << " decode errors\n";
  }
  if (warning) {
    err << "zcsi: capture file incomplete: " << *warning << '\n';
    return kExitData;
  }
  return kExitOk;
}

// Reads records until the end or the first error. The error, if any, is
// rethrown after `sink` has seen every complete record.
template <typename Sink>
void for_each_record(const std::string& path, Sink&& sink) {
  collector::CaptureReader reader(path);
  while (auto rec = reader.next()) sink(*rec);
}

int cmd_parse(const Options& o, std::ostream& out) {
  if (o.format == "capture" && o.out.empty()) throw UsageError("--format capture needs --out");
  std::ofstream file;
  if (!o.out.empty() && o.format != "capture") {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw collector::CaptureError(collector::CaptureErrc::kIo, "cannot open " + o.out);
  }
  std::ostream& dst = file.is_open() ? file : out;

  if (o.format == "capture") {
    std::vector<collector::CsiRecord> records;
    std::exception_ptr failure;
    try {
      for_each_record(o.in, [&](const collector::CsiRecord& r) { records.push_back(r); });
    } catch (const collector::CaptureError&) {
      failure = std::current_exception();
    }
    collector::write_capture(o.out, records);
    if (failure) std::rethrow_exception(failure);
    return kExitOk;
  }

  if (o.format == "csv") {
    dst << "record,received_at_us,peer_addr," << analysis::kSpectrumCsvHeader << '\n';
    std::size_t index = 0;
    for_each_record(o.in, [&](const collector::CsiRecord& r) {
      auto prefix = std::to_string(index++) + ',' + std::to_string(r.received_at_us) + ',' +
                    r.frame.peer_addr.to_string() + ',';
      analysis::write_spectrum_csv_rows(dst, analysis::to_spectrum(r.frame), prefix);
    });
    return kExitOk;
  }

  // JSON: one record per line so partial files still yield usable output.
  for_each_record(o.in, [&](const collector::CsiRecord& r) {
    dst << analysis::record_to_json(r, o.iq).dump() << '\n';
  });
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  analysis::StatsAccumulator acc;
  std::uint64_t last = 0;
  for_each_record(o.in, [&](const collector::CsiRecord& r) {
    acc.accumulate(r);
    last = std::max(last, r.received_at_us);
  });
  auto s = acc.snapshot(last);
  if (o.json) {
    out << analysis::stats_to_json(s).dump() << '\n';
    return kExitOk;
  }
  out << "total_frames " << s.total_frames << '\n';
  for (const auto& [code, n] : s.frames_by_bandwidth) {
    auto bw = wire::Bandwidth::from_code(code);
    out << "bw code " << code;
    if (bw) out << " (" << bw->mhz() << (bw->is_80p80() ? " MHz 80+80" : " MHz") << ')';
    out << ": " << n << '\n';
  }
  for (const auto& [mcs, n] : s.frames_by_mcs) out << "mcs " << mcs << ": " << n << '\n';
  for (std::size_t c = 0; c < s.avg_rssi_per_chain.size(); ++c) {
    if (s.avg_rssi_per_chain[c] != 0) out << "chain " << c << " avg rssi " << s.avg_rssi_per_chain[c] << '\n';
  }
  out << "frames_per_second " << s.frames_per_second << '\n';
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  collector::ReplayOptions ro;
  ro.target = {o.target_ip.empty() ? wire::Ipv4Address::loopback() : parse_ip(o.target_ip), report_port(o)};
  ro.rate = o.rate.value_or(1.0);
  if (!(ro.rate > 0)) throw UsageError("--rate must be positive");
  auto res = collector::replay_capture(o.in, ro);
  if (o.json) {
    out << json{{"datagrams_sent", res.datagrams_sent}}.dump() << '\n';
  } else {
    out << res.datagrams_sent << " datagrams sent to " << ro.target.to_string() << '\n';
  }
  return kExitOk;
}

emulator::EmulatorConfig emulator_config(const Options& o) {
  emulator::EmulatorConfig c;
  c.bind_address = o.bind.empty() ? wire::Ipv4Address::any() : parse_ip(o.bind);
  c.command_port = command_port(o);
  c.report_port = report_port(o);
  c.report_source_port = o.source_port;
  c.strict_ordering = !o.lenient;
  c.frame_rate_hz = o.rate.value_or(50.0);
  c.generator.rng_seed = o.seed;
  if (o.stations.empty()) {
    c.generator.stations.push_back(parse_station("02:00:00:00:00:01"));
  }
  for (const auto& s : o.stations) c.generator.stations.push_back(parse_station(s));
  if (o.taps.empty()) {
    c.generator.channel.variant = emulator::Flat{o.gain};
  } else {
    emulator::Multipath mp;
    for (const auto& t : o.taps) mp.taps.push_back(parse_tap(t));
    c.generator.channel.variant = mp;
  }
  c.generator.channel.noise_sigma = o.noise;
  c.generator.channel.quantizer_scale = o.scale;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

int cmd_emulate(const Options& o, std::ostream& out, std::ostream& err) {
  emulator::Emulator emu(emulator_config(o));
  std::mutex out_mu;
  emu.set_log_sink([&](const std::string& line) {
    std::lock_guard lock(out_mu);
    out << line << '\n' << std::flush;
  });
  emu.start();
  err << "emulator listening on " << emu.command_endpoint().to_string() << ", reporting from "
      << emu.report_source_endpoint().to_string() << '\n';
  sleep_until_stopped(o.duration);
  emu.stop();
  auto c = emu.counters();
  err << c.frames_sent << " frames sent, " << c.rejected << " commands rejected\n";
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  collector::CollectorConfig cc;
  cc.bind = {wire::Ipv4Address::any(), report_port(o)};
  if (!o.out.empty()) cc.capture_path = o.out;
  cc.mac_allowlist = allowlist(o);
  collector::Collector col(cc);

  service::ServiceConfig sc;
  sc.listen = {o.bind.empty() ? wire::Ipv4Address::loopback() : parse_ip(o.bind),
               o.http_port ? *o.http_port : env_port(kEnvHttpPort, kDefaultHttpPort)};
  sc.controller = controller_config(o);
  service::LiveService svc(sc, col);
  col.start();
  svc.start();
  auto ep = svc.local_endpoint();
  if (o.json) {
    out << json{{"http", ep.to_string()}, {"collector", col.local_endpoint().to_string()}}.dump() << '\n';
  } else {
    err << "serving http://" << ep.to_string() << " (CSI on " << col.local_endpoint().to_string() << ")\n";
  }
  sleep_until_stopped(o.duration);
  svc.stop();
  col.stop();
  if (auto w = col.capture_warning()) {
    err << "zcsi: capture file incomplete: " << *w << '\n';
    return kExitData;
  }
  return kExitOk;
}

void report(std::ostream& err, bool as_json, std::string_view kind, const std::string& message) {
  if (as_json) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
  } else {
    err << "zcsi: " << kind << ": " << message << '\n';
  }
}

}  // namespace

void request_stop() noexcept { g_stop.store(true); }
void clear_stop() noexcept { g_stop.store(false); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"ZTE AX3000 CSI toolkit", "zcsi"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  auto port_check = CLI::Range(0, 65535);
  auto add_ap = [&](CLI::App* s) {
    s->add_option("--ap", o.ap, "AP address")->capture_default_str();
    s->add_option("--port", o.port, "AP command port (default 8021 or $ZCSI_COMMAND_PORT)")->check(port_check);
  };
  auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.json, "Machine-readable output"); };
  auto add_duration = [&](CLI::App* s) {
    s->add_option("--duration", o.duration, "Stop after this many seconds instead of waiting for Ctrl-C")
        ->check(CLI::PositiveNumber);
  };

  auto* probe = app.add_subcommand("probe", "Check that the AP answers on its command port");
  add_ap(probe);
  add_json(probe);
  probe->add_option("--timeout-ms", o.timeout_ms, "Wait per attempt")->check(CLI::Range(1, 60000));

  auto* start = app.add_subcommand("start", "Configure the AP and start CSI reporting");
  add_ap(start);
  add_json(start);
  start->add_option("--band", o.band, "2.4g or 5g")->required();
  start->add_option("--frame-type", o.frame_type, "Frame type byte, hex or decimal")->capture_default_str();
  start->add_option("--filter", o.filters, "Station MAC to report (repeat up to 5 times)");
  start->add_option("--target-ip", o.target_ip, "Where the AP sends reports")->required();

  auto* stop = app.add_subcommand("stop", "Stop CSI reporting");
  add_ap(stop);
  add_json(stop);

  auto* capture = app.add_subcommand("capture", "Record incoming CSI reports to a file");
  add_json(capture);
  add_duration(capture);
  capture->add_option("--out", o.out, "Capture file")->required();
  capture->add_option("--bind", o.bind, "Local address (default all)");
  capture->add_option("--report-port", o.report_port, "UDP port (default 8023 or $ZCSI_REPORT_PORT)")
      ->check(port_check);
  capture->add_option("--filter", o.filters, "Keep only this station MAC (repeatable)");

  auto* parse = app.add_subcommand("parse", "Convert a capture file");
  parse->add_option("--in", o.in, "Capture file")->required();
  parse->add_option("--out", o.out, "Output path (default stdout)");
  parse->add_option("--format", o.format, "json, csv or capture")
      ->check(CLI::IsMember({"json", "csv", "capture"}))
      ->capture_default_str();
  parse->add_flag("--iq", o.iq, "Include I/Q samples in JSON");
  add_json(parse);

  auto* stats = app.add_subcommand("stats", "Summarize a capture file");
  stats->add_option("--in", o.in, "Capture file")->required();
  add_json(stats);

  auto* replay = app.add_subcommand("replay", "Re-send a capture file with its original timing");
  replay->add_option("--in", o.in, "Capture file")->required();
  replay->add_option("--target-ip", o.target_ip, "Destination (default 127.0.0.1)");
  replay->add_option("--port", o.report_port, "Destination port (default 8023 or $ZCSI_REPORT_PORT)")
      ->check(port_check);
  replay->add_option("--rate", o.rate, "Speed-up factor")->check(CLI::PositiveNumber);
  add_json(replay);

  auto* emulate = app.add_subcommand("emulate", "Run the AP emulator");
  emulate->add_option("--bind", o.bind, "Local address (default all)");
  emulate->add_option("--port", o.port, "Command port (default 8021 or $ZCSI_COMMAND_PORT)")->check(port_check);
  emulate->add_option("--report-port", o.report_port, "Report destination port (default 8023 or $ZCSI_REPORT_PORT)")
      ->check(port_check);
  emulate->add_option("--source-port", o.source_port, "Report source port")->check(port_check)->capture_default_str();
  emulate->add_option("--rate", o.rate, "Frames per second per station (default 50)")->check(CLI::PositiveNumber);
  emulate->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  emulate->add_option("--station", o.stations, "mac[/bw_code[/mcs]] (repeatable)");
  emulate->add_option("--gain", o.gain, "Flat channel gain")->capture_default_str();
  emulate->add_option("--tap", o.taps, "Multipath tap delay:re[:im] (repeatable, replaces --gain)");
  emulate->add_option("--noise", o.noise, "Noise sigma")->check(CLI::NonNegativeNumber);
  emulate->add_option("--scale", o.scale, "Quantizer scale")->check(CLI::PositiveNumber);
  emulate->add_flag("--lenient", o.lenient, "Accept commands in any order");
  add_duration(emulate);
  add_json(emulate);

  auto* serve = app.add_subcommand("serve", "Collect CSI and serve the HTTP/WebSocket API");
  add_ap(serve);
  add_json(serve);
  add_duration(serve);
  serve->add_option("--bind", o.bind, "HTTP listen address (default 127.0.0.1)");
  serve->add_option("--http-port", o.http_port, "HTTP port (default 8080 or $ZCSI_HTTP_PORT)")->check(port_check);
  serve->add_option("--report-port", o.report_port, "CSI UDP port (default 8023 or $ZCSI_REPORT_PORT)")
      ->check(port_check);
  serve->add_option("--out", o.out, "Also record to this capture file");
  serve->add_option("--filter", o.filters, "Keep only this station MAC (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.filters.size() > controller::kMaxStaFilters) throw UsageError("at most 5 --filter values");
    auto* sub = app.get_subcommands().front();
    if (sub == probe) return cmd_probe(o, out);
    if (sub == start) return cmd_start(o, out);
    if (sub == stop) return cmd_stop(o, out);
    if (sub == capture) return cmd_capture(o, out, err);
    if (sub == parse) return cmd_parse(o, out);
    if (sub == stats) return cmd_stats(o, out);
    if (sub == replay) return cmd_replay(o, out);
    if (sub == emulate) return cmd_emulate(o, out, err);
    if (sub == serve) return cmd_serve(o, out, err);
  } catch (const UsageError& e) {
    report(err, o.json, "usage", e.what());
    return kExitUsage;
  } catch (const controller::ControllerError& e) {
    report(err, o.json, controller::to_string(e.code()), e.what());
    return kExitProtocol;
  } catch (const net::TransportError& e) {
    report(err, o.json, "transport", e.what());
    return kExitProtocol;
  } catch (const collector::CaptureError& e) {
    report(err, o.json, "capture", e.what());
    return kExitData;
  } catch (const wire::WireError& e) {
    report(err, o.json, "decode", e.what());
    return kExitData;
  } catch (const std::invalid_argument& e) {
    report(err, o.json, "usage", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    report(err, o.json, "error", e.what());
    return kExitProtocol;
  }
  return kExitUsage;
}

}  // namespace zcsi::cli
