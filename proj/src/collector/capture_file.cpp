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

#include "zcsi/collector/capture_file.hpp"

#include "zcsi/wire/byte_order.hpp"
#include "zcsi/wire/error.hpp"

namespace zcsi::collector {

std::string_view to_string(CaptureErrc code) noexcept {
  switch (code) {
    case CaptureErrc::kBadHeader: return "BadHeader";
    case CaptureErrc::kTruncatedRecord: return "TruncatedRecord";
    case CaptureErrc::kBadRecord: return "BadRecord";
    case CaptureErrc::kIo: return "IoError";
  }
  return "Unknown";
}

std::vector<std::uint8_t> encode_capture_header() {
  wire::LeWriter w(kCaptureHeaderSize);
  for (char c : kCaptureMagic) w.put(static_cast<std::uint8_t>(c));
  w.put(kCaptureVersion);
  for (int i = 0; i < 6; ++i) w.put(std::uint8_t{0});
  return std::move(w).take();
}

std::vector<std::uint8_t> encode_capture_record(const CsiRecord& r) {
  wire::LeWriter w(kCaptureRecordHeaderSize + r.raw.size());
  w.put(r.received_at_us);
  w.put_all(r.source.address.octets);
  w.put(r.source.port);
  w.put(static_cast<std::uint32_t>(r.raw.size()));
  auto bytes = std::move(w).take();
  bytes.insert(bytes.end(), r.raw.begin(), r.raw.end());
  return bytes;
}

CaptureWriter::CaptureWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw CaptureError(CaptureErrc::kIo, "cannot open " + path.string());
  write(encode_capture_header());
}

void CaptureWriter::write(const std::vector<std::uint8_t>& bytes) {
  out_.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out_.flush();
  if (!out_) throw CaptureError(CaptureErrc::kIo, "write to " + path_.string() + " failed");
}

void CaptureWriter::append(const CsiRecord& record) {
  write(encode_capture_record(record));
  ++written_;
}

CaptureReader::CaptureReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
  if (!in_) throw CaptureError(CaptureErrc::kIo, "cannot open " + path.string());
  std::array<std::uint8_t, kCaptureHeaderSize> header{};
  in_.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in_.gcount() != static_cast<std::streamsize>(header.size())) {
    throw CaptureError(CaptureErrc::kBadHeader, "file shorter than the capture header");
  }
  wire::LeReader r(header, wire::WireErrc::kBadLength);
  for (char c : kCaptureMagic) {
    if (r.get<std::uint8_t>() != static_cast<std::uint8_t>(c)) {
      throw CaptureError(CaptureErrc::kBadHeader, "missing ZCSICAP1 magic");
    }
  }
  auto version = r.get<std::uint16_t>();
  if (version != kCaptureVersion) {
    throw CaptureError(CaptureErrc::kBadHeader, "unsupported version " + std::to_string(version));
  }
}

std::optional<CsiRecord> CaptureReader::next() {
  std::array<std::uint8_t, kCaptureRecordHeaderSize> head{};
  in_.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = in_.gcount();
  if (got == 0) return std::nullopt;
  const std::string where = "record " + std::to_string(index_);
  if (got != static_cast<std::streamsize>(head.size())) {
    throw CaptureError(CaptureErrc::kTruncatedRecord, where + ": partial record header");
  }

  CsiRecord rec;
  wire::LeReader r(head, wire::WireErrc::kBadLength);
  rec.received_at_us = r.get<std::uint64_t>();
  r.get_all(rec.source.address.octets);
  rec.source.port = r.get<std::uint16_t>();
  const auto len = r.get<std::uint32_t>();
  if (len > kMaxCaptureRecordLen) {
    throw CaptureError(CaptureErrc::kBadRecord, where + ": implausible length " + std::to_string(len));
  }
  rec.raw.resize(len);
  in_.read(reinterpret_cast<char*>(rec.raw.data()), len);
  if (in_.gcount() != static_cast<std::streamsize>(len)) {
    throw CaptureError(CaptureErrc::kTruncatedRecord, where + ": raw payload cut short");
  }
  try {
    rec.frame = wire::decode_csi_frame(rec.raw);
  } catch (const wire::WireError& e) {
    throw CaptureError(CaptureErrc::kBadRecord, where + ": " + e.what());
  }
  ++index_;
  return rec;
}

std::vector<CsiRecord> read_capture(const std::filesystem::path& path) {
  CaptureReader reader(path);
  std::vector<CsiRecord> records;
  try {
    while (auto rec = reader.next()) records.push_back(std::move(*rec));
  } catch (const CaptureError& e) {
    throw CaptureError(e.code(), e.detail(), std::move(records));
  }
  return records;
}

void write_capture(const std::filesystem::path& path, const std::vector<CsiRecord>& records) {
  CaptureWriter writer(path);
  for (const auto& r : records) writer.append(r);
}

}  // namespace zcsi::collector
