// Copyright 2026 The kacfc Authors
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

namespace kacfc {

// Base class of every error raised by the library. `code()` is a stable
// machine-readable identifier used by the command-line front end.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define KACFC_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

KACFC_DEFINE_ERROR(InvalidArgument);
KACFC_DEFINE_ERROR(ConeViolation);
KACFC_DEFINE_ERROR(MassMismatch);
KACFC_DEFINE_ERROR(CflViolation);
KACFC_DEFINE_ERROR(IllPrepared);
KACFC_DEFINE_ERROR(ContinuityViolation);
KACFC_DEFINE_ERROR(DegenerateState);
KACFC_DEFINE_ERROR(IoError);

#undef KACFC_DEFINE_ERROR

}  // namespace kacfc
