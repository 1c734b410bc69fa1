// Copyright 2026 The zeno-dark Authors
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

namespace zeno {

/// Broad category of a failure. The CLI maps these to exit codes.
enum class ErrorKind {
  configuration,  ///< malformed input or schema problem (exit 2)
  physics,        ///< a physical precondition does not hold (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define ZENO_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

ZENO_DEFINE_ERROR(ConfigError, configuration)
ZENO_DEFINE_ERROR(DimensionError, configuration)
ZENO_DEFINE_ERROR(HermiticityError, configuration)
ZENO_DEFINE_ERROR(NormalizationError, configuration)
ZENO_DEFINE_ERROR(DomainError, configuration)
ZENO_DEFINE_ERROR(UnsupportedVariantError, configuration)
ZENO_DEFINE_ERROR(ResolutionError, configuration)

// Raised when ⟨f|Ψ⟩ ≠ 0 at the start of a run.
ZENO_DEFINE_ERROR(SetupError, physics)
ZENO_DEFINE_ERROR(PathError, physics)
ZENO_DEFINE_ERROR(CommutatorError, physics)
ZENO_DEFINE_ERROR(ConstraintError, physics)
ZENO_DEFINE_ERROR(DegenerateTargetError, physics)
ZENO_DEFINE_ERROR(UndefinedPhaseError, physics)
ZENO_DEFINE_ERROR(ConsistencyError, physics)

#undef ZENO_DEFINE_ERROR

}  // namespace zeno
