#pragma once

#include <stdexcept>
#include <string>

namespace finsleroid {

// Base of every error the library raises; the C API maps each subclass to a status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// b <= 0, or the vector lies on/beyond the cone F = 0.
class OutsideBLikeRegion : public Error {
public:
    using Error::Error;
};

// w3 <= 0 or wperp == 0: the angle chart is not differentiable there.
class OnAxisSection : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace finsleroid
