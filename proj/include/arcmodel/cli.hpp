#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "arcmodel/errors.hpp"

namespace arcmodel {

struct RunConfig {
    /// check, defect, model, lift, roundtrip, oracle or prepare.
    std::string command;
    std::string input;
    std::string ring;
    std::size_t r = 1;
    /// Reporting precision; the arc decides when unset (oracle requires it).
    std::optional<std::size_t> precision;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    std::size_t extra_precision = 0;
    /// 0 means one worker per hardware thread.
    std::size_t threads = 0;
    /// model: json or ideal.
    std::string format = "json";
    /// Where model output and oracle dumps go; empty means the output stream.
    std::string output;
    /// prepare: coefficient list [c0, c1, ...] of a series over the ring.
    std::string series;
    bool dump = false;
};

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int counterexample = 1;
inline constexpr int input_error = 2;
inline constexpr int refused = 3;
} // namespace exit_status

int exit_code(ErrorKind kind);

/// Runs one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace arcmodel
