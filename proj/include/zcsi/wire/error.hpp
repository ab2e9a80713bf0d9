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

#include <stdexcept>
#include <string>
#include <string_view>

namespace zcsi::wire {

enum class WireErrc {
  kBadMagic,
  kUnknownType,
  kTruncatedPayload,
  kBadLength,
  kCsiCountOutOfRange,
  kInvalidField,
  kTypeMismatch,
};

std::string_view to_string(WireErrc code) noexcept;

// Raised by every encoder and decoder in this module. The code is the
// contract; the message is for humans.
class WireError : public std::runtime_error {
 public:
  WireError(WireErrc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  WireErrc code() const noexcept { return code_; }

 private:
  WireErrc code_;
};

}  // namespace zcsi::wire
