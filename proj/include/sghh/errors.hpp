#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sghh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct DegeneratePairing : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct BasisMismatch : Error { using Error::Error; };
struct MissingFrobeniusData : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct FeatureDisabled : Error { using Error::Error; };
struct DegreeOutOfWindow : Error { using Error::Error; };
struct NotAChainMapAtDegree : Error { using Error::Error; };
struct NotACocycle : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct ResourceLimit : Error {
    ResourceLimit(std::string what_space, std::size_t dim, std::size_t cap)
        : Error(what_space + ": dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap)),
          dimension(dim), limit(cap) {}
    std::size_t dimension;
    std::size_t limit;
};

}  // namespace sghh
