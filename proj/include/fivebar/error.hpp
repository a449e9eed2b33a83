#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fivebar {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The actuated angles place the elbows where the coupler circles cannot
/// intersect (H > 2*l2) or coincide (H ~ 0).
class InfeasibleConfigError : public Error {
public:
    explicit InfeasibleConfigError(const std::string& msg,
                                   std::optional<std::size_t> index = std::nullopt)
        : Error(msg), index_(index) {}
    std::optional<std::size_t> index() const { return index_; }

private:
    std::optional<std::size_t> index_;
};

/// The requested end-effector point lies outside the reachable workspace.
class UnreachableTargetError : public Error {
public:
    explicit UnreachableTargetError(const std::string& msg,
                                    std::optional<std::size_t> index = std::nullopt)
        : Error(msg), index_(index) {}
    std::optional<std::size_t> index() const { return index_; }

private:
    std::optional<std::size_t> index_;
};

/// The 12x12 coefficient system is numerically singular (degenerate timing).
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Invalid argument, value out of a documented domain, or a violated
/// precondition (non-positive factor, bad timing order, out-of-range t, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// File and CSV problems; message carries file name and line number.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace fivebar
