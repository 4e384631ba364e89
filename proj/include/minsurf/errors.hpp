#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

// Asked for a value at a genuine pole (not a removable point).
struct SingularPoint : Error {
    using Error::Error;
};

struct NotInvertible : Error {
    using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance.
struct IntegrationError : Error {
    using Error::Error;
};

// A sampled phase jumped by more than pi between neighbours.
struct UndersamplingError : Error {
    using Error::Error;
};

// Curvature-line tracer lost the branch (step too large near an umbilic).
struct StepSizeError : Error {
    using Error::Error;
};

// Quadratic differential vanishes identically; direction fields and
// rotation indices are undefined.
struct TotallyUmbilic : Error {
    using Error::Error;
};

// Boundary data does not sit where the caller claimed (e.g. boundary
// circle not on the given sphere).
struct GeometryMismatch : Error {
    using Error::Error;
};

struct MeshingError : Error {
    using Error::Error;
};

// Scene/config problems carry a JSON-path-ish location when available and
// a machine-readable code: "malformed-json", "unknown-name",
// "dangling-reference" or the generic "schema".
struct SceneError : Error {
    SceneError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), location(where), code("schema") {}
    SceneError(std::string a_code, const std::string& where, const std::string& what)
        : Error(where + ": " + what), location(where), code(std::move(a_code)) {}
    std::string location;
    std::string code;
};

} // namespace minsurf
