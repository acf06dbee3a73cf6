#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace finlab {

using Vec = std::vector<double>;
using VecView = std::span<const double>;

/// Base class for everything this library throws.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Expression text could not be parsed; `position` is the 0-based offset of
/// the offending token (text length for unexpected end of input).
class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position(position) {}
    std::size_t position;
};

/// A value left the domain where the computation is defined (log of a
/// negative number, |s| beyond the phi family's radius, y = 0, ...).
/// The message names the offending point or subexpression.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A denominator that the theory requires to be nonzero vanished
/// (phi - s phi', the regularity denominator, a singular metric tensor...).
/// `part` names which quantity failed.
class SingularError : public Error {
  public:
    SingularError(const std::string& part, const std::string& msg)
        : Error(part + ": " + msg), part(part) {}
    std::string part;
};

/// API misuse: caller violated a documented precondition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Format a double with 17 significant digits (round-trip exact).
std::string fmt17(double v);

/// Format a point as "(a, b, ...)" with 17 digits, for error messages.
std::string point_str(VecView x);
std::string point_str(VecView x, VecView y);

/// |a - b| <= tol * max(1, |a|, |b|): relative comparison with an absolute
/// floor of 1, the convention used by every tolerance in this project.
bool close_rel(double a, double b, double tol);

/// The error of `a` against reference `b` under the same convention.
double rel_err(double a, double b);

}  // namespace finlab
