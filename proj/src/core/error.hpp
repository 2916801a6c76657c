#pragma once

#include <stdexcept>
#include <string>

namespace rpmres {

// Mirrors the C API status codes.
enum class Status : int {
    ok = 0,
    config = 1,
    convergence = 2,
    unitarity = 3,
    domain = 4,
    internal = 5
};

struct Error : std::runtime_error {
    Status status;
    Error(Status st, const std::string& msg) : std::runtime_error(msg), status(st) {}
};

} // namespace rpmres
