#pragma once

#include <stdexcept>
#include <string>

namespace ttspec {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix entry or parameter is NaN or infinite.
class NonFinite : public Error {
public:
    using Error::Error;
};

/// A matrix required to be symplectic failed validation.
class NonSymplectic : public Error {
public:
    using Error::Error;
};

/// lambda^-n exceeds the precision budget of the active mode.
class ConditioningExceeded : public Error {
public:
    using Error::Error;
};

/// Characteristic polynomial of a supposedly symplectic matrix is not
/// palindromic within tolerance.
class NotPalindromic : public Error {
public:
    using Error::Error;
};

/// Two independent computation routes disagree beyond tolerance.
class OracleMismatch : public Error {
public:
    using Error::Error;
};

/// Theorem-3 factor product disagrees with the characteristic polynomial.
class FactorizationMismatch : public Error {
public:
    using Error::Error;
};

/// Operation requires a strongly transverse homoclinic matrix.
class NotStronglyTransverse : public Error {
public:
    using Error::Error;
};

/// Operation requires a torus with torsion (nu != 0).
class NotWithTorsion : public Error {
public:
    using Error::Error;
};

/// Requested n does not yield an all-real hyperbolic spectrum.
class NotYetHyperbolic : public Error {
public:
    using Error::Error;
};

/// Point is outside the domain of the transverse / window map.
class NotInDomain : public Error {
public:
    using Error::Error;
};

} // namespace ttspec
