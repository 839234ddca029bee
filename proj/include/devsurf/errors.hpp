#pragma once

#include <stdexcept>
#include <string>

namespace devsurf {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parameter outside the admissible domain.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Invalid degree request or mismatched sizes.
class DegreeError : public Error {
   public:
    using Error::Error;
};

/// A weight or homogeneous denominator vanished where a point was required.
class ZeroWeightError : public Error {
   public:
    using Error::Error;
};

class KnotError : public Error {
   public:
    using Error::Error;
};

class KnotMergeError : public Error {
   public:
    using Error::Error;
};

/// {C, C', D} are linearly dependent somewhere; the generic coefficient
/// solve is singular.
class DegenerateDependence : public Error {
   public:
    using Error::Error;
};

/// An error that carries the residual norm of a failed solve or check.
class ResidualError : public Error {
   public:
    ResidualError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

   private:
    double residual_;
};

class VerificationFailed : public ResidualError {
   public:
    using ResidualError::ResidualError;
};

class NoPolynomialSolution : public ResidualError {
   public:
    using ResidualError::ResidualError;
};

class InvalidInitialPoint : public Error {
   public:
    using Error::Error;
};

class CylindricalPatch : public Error {
   public:
    using Error::Error;
};

class NotDevelopable : public Error {
   public:
    using Error::Error;
};

class DegenerateTriangle : public Error {
   public:
    DegenerateTriangle(const std::string& what, double t) : Error(what), t_(t) {}
    double parameter() const noexcept { return t_; }

   private:
    double t_;
};

class SingularPoint : public Error {
   public:
    using Error::Error;
};

/// Malformed document. `path()` is a JSON pointer to the offending value.
class SchemaError : public Error {
   public:
    SchemaError(const std::string& path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(path) {}
    const std::string& path() const noexcept { return path_; }

   private:
    std::string path_;
};

}  // namespace devsurf
