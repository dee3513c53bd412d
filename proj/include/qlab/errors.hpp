#pragma once
#include <stdexcept>
#include <string>

namespace qlab {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (bad sizes, invalid maps, ...).
struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

// An exact-mode request exceeds an enumeration or simulation cap.
struct cap_error : error {
    explicit cap_error(const std::string& what) : error(what) {}
};

// An algorithm queried its oracle outside the valid index range.
struct oracle_error : error {
    explicit oracle_error(const std::string& what) : error(what) {}
};

// An explicit randomness supply was exhausted mid-run.
struct randomness_error : error {
    explicit randomness_error(const std::string& what) : error(what) {}
};

}  // namespace qlab
