/* Copyright 2026 The dtower Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef DTOWER_ERROR_HPP
#define DTOWER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtower {

enum class Errc {
    CompositeModulus,
    BoundExceeded,
    ZeroPolynomial,
    ZeroInput,
    NoEmbedding,
    FieldMismatch,
    DivisionByZero,
    BothZero,
    NoValidEta,
    NuNotFound,
    InvalidParams,
    ZeroLambda,
    ZeroJ,
    ZeroU,
    ZeroW,
    Pole,
    PoleJZero,
    AmbientTooSmall,
    InvalidChoice,
    DegenerateEta,
    NonInteger,
    ConfigError,
};

inline std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::CompositeModulus: return "CompositeModulus";
        case Errc::BoundExceeded: return "BoundExceeded";
        case Errc::ZeroPolynomial: return "ZeroPolynomial";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::NoEmbedding: return "NoEmbedding";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::BothZero: return "BothZero";
        case Errc::NoValidEta: return "NoValidEta";
        case Errc::NuNotFound: return "NuNotFound";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::ZeroLambda: return "ZeroLambda";
        case Errc::ZeroJ: return "ZeroJ";
        case Errc::ZeroU: return "ZeroU";
        case Errc::ZeroW: return "ZeroW";
        case Errc::Pole: return "Pole";
        case Errc::PoleJZero: return "PoleJZero";
        case Errc::AmbientTooSmall: return "AmbientTooSmall";
        case Errc::InvalidChoice: return "InvalidChoice";
        case Errc::DegenerateEta: return "DegenerateEta";
        case Errc::NonInteger: return "NonInteger";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

}  // namespace dtower

#endif  // DTOWER_ERROR_HPP
