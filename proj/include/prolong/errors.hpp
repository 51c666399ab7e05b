#pragma once

#include <stdexcept>
#include <string>

namespace prolong {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainViolation : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DuplicateNodes : Error {
    using Error::Error;
};
struct DuplicatePoints : Error {
    using Error::Error;
};
struct SingularGram : Error {
    using Error::Error;
};
struct UnsupportedId : Error {
    using Error::Error;
};
struct InvalidFill : Error {
    using Error::Error;
};
struct KreinSpec : Error {
    using Error::Error;
};
struct CollapsedNodes : Error {
    using Error::Error;
};
struct TruncationTooSmall : Error {
    using Error::Error;
};
struct SingularValueCluster : Error {
    using Error::Error;
};
struct PoleOnCircle : Error {
    using Error::Error;
};
struct PoleOnGrid : Error {
    using Error::Error;
};
struct Infeasible : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct NotFound : Error {
    using Error::Error;
};

} // namespace prolong
