#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace framecast {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Bad input to a pointwise evaluation: parameter outside the domain, theta_hat(0,0).
class DomainError : public Error {
public:
    using Error::Error;
};

// Derivative evaluation hit a singularity of the expression (log 0, x/0, ...).
class PoleError : public Error {
public:
    using Error::Error;
};

class NotRegularError : public Error {
public:
    NotRegularError(double t, double speed)
        : Error("curve is not regular near t = " + std::to_string(t) +
                " (speed " + std::to_string(speed) + ")"),
          t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

class NoBasePointError : public Error {
public:
    NoBasePointError()
        : Error("curvature vanishes on the whole grid; no base point for the frame") {}
};

class NotPlanarError : public Error {
public:
    using Error::Error;
};

}  // namespace framecast
