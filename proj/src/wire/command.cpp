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

#include "zcsi/wire/command.hpp"

#include <stdexcept>
#include <string>

#include "zcsi/wire/byte_order.hpp"
#include "zcsi/wire/error.hpp"

namespace zcsi::wire {

std::string_view to_string(WireErrc code) noexcept {
  switch (code) {
    case WireErrc::kBadMagic: return "BadMagic";
    case WireErrc::kUnknownType: return "UnknownType";
    case WireErrc::kTruncatedPayload: return "TruncatedPayload";
    case WireErrc::kBadLength: return "BadLength";
    case WireErrc::kCsiCountOutOfRange: return "CsiCountOutOfRange";
    case WireErrc::kInvalidField: return "InvalidField";
    case WireErrc::kTypeMismatch: return "TypeMismatch";
  }
  return "Unknown";
}

std::string_view to_string(Band band) noexcept { return band == Band::k2G4 ? "2.4g" : "5g"; }

std::string_view to_string(CommandType type) noexcept {
  switch (type) {
    case CommandType::kReportEnable: return "ReportEnable";
    case CommandType::kStaFilter: return "StaFilter";
    case CommandType::kCsiConfig: return "CsiConfig";
    case CommandType::kReportConfig: return "ReportConfig";
    case CommandType::kBandConfig: return "BandConfig";
    case CommandType::kCheckAvailability: return "CheckAvailability";
  }
  return "Unknown";
}

CommandType command_type_of(const CommandPayload& payload) noexcept {
  struct Visitor {
    CommandType operator()(const ReportEnable&) const { return CommandType::kReportEnable; }
    CommandType operator()(const StaFilter&) const { return CommandType::kStaFilter; }
    CommandType operator()(const CsiConfig&) const { return CommandType::kCsiConfig; }
    CommandType operator()(const ReportConfig&) const { return CommandType::kReportConfig; }
    CommandType operator()(const BandConfig&) const { return CommandType::kBandConfig; }
    CommandType operator()(const CheckAvailability&) const { return CommandType::kCheckAvailability; }
  };
  return std::visit(Visitor{}, payload);
}

CommandFrame make_command(CommandPayload payload) {
  CommandFrame frame;
  frame.type = command_type_of(payload);
  frame.payload = std::move(payload);
  return frame;
}

std::size_t wire_size(CommandType type) noexcept {
  switch (type) {
    case CommandType::kReportEnable:
    case CommandType::kCsiConfig:
    case CommandType::kBandConfig: return kCommandHeaderSize + 1;
    case CommandType::kStaFilter: return kCommandHeaderSize + 6;
    case CommandType::kReportConfig: return kCommandHeaderSize + 4;
    case CommandType::kCheckAvailability: return kCommandHeaderSize;
  }
  return 0;
}

std::vector<std::uint8_t> encode_command(const CommandFrame& frame) {
  if (frame.magic != kCommandMagic) {
    throw WireError(WireErrc::kBadMagic, "command magic must be 0xCAFE2025");
  }
  if (command_type_of(frame.payload) != frame.type) {
    throw WireError(WireErrc::kTypeMismatch,
                    "type byte " + std::to_string(static_cast<int>(frame.type)) +
                        " does not match payload " +
                        std::string(to_string(command_type_of(frame.payload))));
  }

  LeWriter out(wire_size(frame.type));
  out.put(frame.magic);
  out.put(static_cast<std::uint8_t>(frame.type));
  struct Visitor {
    LeWriter& out;
    void operator()(const ReportEnable& c) const { out.put(static_cast<std::uint8_t>(c.enable ? 1 : 0)); }
    void operator()(const StaFilter& c) const { out.put_all(c.mac.octets); }
    void operator()(const CsiConfig& c) const { out.put(c.frame_type); }
    void operator()(const ReportConfig& c) const { out.put_all(c.target_ip.octets); }
    void operator()(const BandConfig& c) const { out.put(static_cast<std::uint8_t>(c.band)); }
    void operator()(const CheckAvailability&) const {}
  };
  std::visit(Visitor{out}, frame.payload);
  return std::move(out).take();
}

namespace {

std::uint8_t get_flag(LeReader& in, const char* field) {
  auto v = in.get<std::uint8_t>();
  if (v > 1) {
    throw WireError(WireErrc::kInvalidField,
                    std::string(field) + " must be 0 or 1, got " + std::to_string(v));
  }
  return v;
}

}  // namespace

CommandFrame decode_command(std::span<const std::uint8_t> data) {
  LeReader in(data, WireErrc::kTruncatedPayload);
  CommandFrame frame;
  frame.magic = in.get<std::uint64_t>();
  if (frame.magic != kCommandMagic) {
    throw WireError(WireErrc::kBadMagic, "unexpected command magic");
  }
  auto raw_type = in.get<std::uint8_t>();
  if (raw_type < 1 || raw_type > 6) {
    throw WireError(WireErrc::kUnknownType, "command type " + std::to_string(raw_type));
  }
  frame.type = static_cast<CommandType>(raw_type);

  switch (frame.type) {
    case CommandType::kReportEnable:
      frame.payload = ReportEnable{get_flag(in, "enable") == 1};
      break;
    case CommandType::kStaFilter: {
      StaFilter f;
      in.get_all(f.mac.octets);
      frame.payload = f;
      break;
    }
    case CommandType::kCsiConfig:
      frame.payload = CsiConfig{in.get<std::uint8_t>()};
      break;
    case CommandType::kReportConfig: {
      ReportConfig r;
      in.get_all(r.target_ip.octets);
      frame.payload = r;
      break;
    }
    case CommandType::kBandConfig:
      frame.payload = BandConfig{static_cast<Band>(get_flag(in, "band"))};
      break;
    case CommandType::kCheckAvailability:
      frame.payload = CheckAvailability{};
      break;
  }
  if (in.remaining() != 0) {
    throw WireError(WireErrc::kBadLength,
                    std::to_string(in.remaining()) + " trailing bytes after command");
  }
  return frame;
}

std::uint8_t frame_type_from_subfields(unsigned type2, unsigned subtype4) {
  if (type2 > 0x3 || subtype4 > 0xF) {
    throw std::out_of_range("frame type subfields out of range");
  }
  return static_cast<std::uint8_t>((subtype4 << 2) | type2);
}

}  // namespace zcsi::wire
