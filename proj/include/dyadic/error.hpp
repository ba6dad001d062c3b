/*
   Copyright 2026 The dyadic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dyadic {

enum class ErrorKind {
    Structural,  // shape or field mismatch, out-of-range index, malformed input
    DivisionByZero,
    RankDeficient,
    InvalidSupport,
    DegenerateGroup,
    CosetCollision,
    SamplingExhausted,
    UnknownPreset,
    InvalidParams,
    SystematicFormFailure,
    NonexistentD,
    SolutionSpaceTooLarge,
    DegenerateSupport,
    InconsistentStructure,
    NoValidMultiplier,
    ExhaustedSearchSpace,
    Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Structural: return "Structural";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::InvalidSupport: return "InvalidSupport";
        case ErrorKind::DegenerateGroup: return "DegenerateGroup";
        case ErrorKind::CosetCollision: return "CosetCollision";
        case ErrorKind::SamplingExhausted: return "SamplingExhausted";
        case ErrorKind::UnknownPreset: return "UnknownPreset";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::SystematicFormFailure: return "SystematicFormFailure";
        case ErrorKind::NonexistentD: return "NonexistentD";
        case ErrorKind::SolutionSpaceTooLarge: return "SolutionSpaceTooLarge";
        case ErrorKind::DegenerateSupport: return "DegenerateSupport";
        case ErrorKind::InconsistentStructure: return "InconsistentStructure";
        case ErrorKind::NoValidMultiplier: return "NoValidMultiplier";
        case ErrorKind::ExhaustedSearchSpace: return "ExhaustedSearchSpace";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace dyadic
