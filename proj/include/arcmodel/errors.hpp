#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcmodel {

/// Failure categories shared by every module. The CLI maps them to exit codes.
enum class ErrorKind {
    structural,
    parse,
    not_a_unit,
    not_monic,
    not_distinguished,
    residue_zero,
    precision_exhausted,
    arc_not_on_variety,
    arc_in_degeneracy_locus,
    obstructed_lift,
    inconsistent_input,
    not_enumerable,
    refused,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool condition, ErrorKind kind, const std::string& message)
{
    if (!condition) fail(kind, message);
}

} // namespace arcmodel
