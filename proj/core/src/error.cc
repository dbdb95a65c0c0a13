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

#include "vandalstack/error.h"

namespace vandalstack {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateConflict: return "DuplicateConflict";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kTooFewExamples: return "TooFewExamples";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kProtocolViolation: return "ProtocolViolation";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kConnectionLost: return "ConnectionLost";
    case ErrorCode::kUsage: return "UsageError";
  }
  return "Unknown";
}

}  // namespace vandalstack
