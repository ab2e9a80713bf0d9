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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zcsi/collector/record.hpp"

namespace zcsi::collector {

// File layout (all integers little-endian):
//   header : "ZCSICAP1" | u16 version (=1) | 6 zero bytes
//   record : u64 received_at_us | 4-byte source ip | u16 source port | u32 len | len raw bytes
inline constexpr std::string_view kCaptureMagic = "ZCSICAP1";
inline constexpr std::uint16_t kCaptureVersion = 1;
inline constexpr std::size_t kCaptureHeaderSize = 16;
inline constexpr std::size_t kCaptureRecordHeaderSize = 18;
inline constexpr std::uint32_t kMaxCaptureRecordLen = 1u << 16;

enum class CaptureErrc { kBadHeader, kTruncatedRecord, kBadRecord, kIo };

std::string_view to_string(CaptureErrc code) noexcept;

class CaptureError : public std::runtime_error {
 public:
  CaptureError(CaptureErrc code, const std::string& detail,
               std::vector<CsiRecord> complete_records = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail),
        complete_records_(std::move(complete_records)) {}

  CaptureErrc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  // Records read successfully before the failure.
  const std::vector<CsiRecord>& complete_records() const noexcept { return complete_records_; }

 private:
  CaptureErrc code_;
  std::string detail_;
  std::vector<CsiRecord> complete_records_;
};

std::vector<std::uint8_t> encode_capture_header();
std::vector<std::uint8_t> encode_capture_record(const CsiRecord& record);

// Creates (truncates) `path` and writes the header. Every append is flushed.
class CaptureWriter {
 public:
  explicit CaptureWriter(const std::filesystem::path& path);

  // Throws CaptureError{kIo} when the bytes could not be written.
  void append(const CsiRecord& record);
  std::size_t records_written() const noexcept { return written_; }

 private:
  void write(const std::vector<std::uint8_t>& bytes);

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t written_ = 0;
};

class CaptureReader {
 public:
  // Throws CaptureError{kBadHeader} (or kIo when the file cannot be opened).
  explicit CaptureReader(const std::filesystem::path& path);

  // Next record in file order; nullopt at a clean end of file. A partial
  // trailing record raises kTruncatedRecord, an undecodable one kBadRecord.
  std::optional<CsiRecord> next();

 private:
  std::ifstream in_;
  std::size_t index_ = 0;
};

// Reads every record. On failure the CaptureError carries the records that
// preceded it.
std::vector<CsiRecord> read_capture(const std::filesystem::path& path);

void write_capture(const std::filesystem::path& path, const std::vector<CsiRecord>& records);

}  // namespace zcsi::collector
