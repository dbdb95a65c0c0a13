/*
 * Copyright 2026 The vandalstack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VANDALSTACK_ERROR_H_
#define VANDALSTACK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vandalstack {

enum class ErrorCode {
  kIo,
  kMalformedLine,
  kDuplicateConflict,
  kEmptyDataset,
  kDimensionMismatch,
  kUnsupportedFamily,
  kIndexOutOfRange,
  kTooFewExamples,
  kEmptyList,
  kSingleClass,
  kFormat,
  kInvalidArgument,
  kProtocolViolation,
  kTimeout,
  kConnectionLost,
  kUsage,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported with this exception type. The code is
// stable and meant for callers that branch on the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vandalstack

#endif  // VANDALSTACK_ERROR_H_
