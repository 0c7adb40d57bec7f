#pragma once

#include <stdexcept>
#include <string>

namespace skdv {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Division by a zero (or zero-body) quantity.
struct division_error : error {
    explicit division_error(const std::string& what) : error(what) {}
};

// Operation applied to an expression of the wrong grading (odd where even
// is required, Grassmann support where none is allowed, ...).
struct grading_error : error {
    explicit grading_error(const std::string& what) : error(what) {}
};

// Numeric evaluation hit a near-zero denominator.
struct singularity_error : error {
    explicit singularity_error(const std::string& what) : error(what) {}
};

// Malformed textual input (operator strings, index strings, config files).
struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

} // namespace skdv
