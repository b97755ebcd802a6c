#pragma once

#include <stdexcept>
#include <string>

namespace arbordyn {

// Thrown when a requested computation exceeds a documented size budget
// (tree depths, enumeration bounds, closure sizes).
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal consistency check fails, e.g. an exact division
// that provably must be exact leaves a remainder. Indicates a bug, never
// bad user input.
struct IntegrityError : std::logic_error {
    explicit IntegrityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace arbordyn
