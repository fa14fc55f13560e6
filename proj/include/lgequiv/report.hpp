#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lgequiv/exact_algebra.hpp"

namespace lgequiv {

/// Malformed or inconsistent user input (CLI exit code 1).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A claimed identity failed to hold (CLI exit code 2).
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction invariant broke; indicates a bug rather than bad input
/// (CLI exit code 3).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct IdentityResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<IdentityResult> items;

    bool ok() const;
    void add(std::string name, bool pass, std::string detail = {});
    void append(const VerificationReport& other, const std::string& prefix = {});
    std::vector<IdentityResult> failures() const;
    std::string summary() const;
};

/// Exact comparison recorded under `name`, with a short diff on failure.
void check_identity(VerificationReport& r, const std::string& name, const RationalFn& lhs, const RationalFn& rhs);

std::string describe(const RationalFn& f, std::size_t max_chars = 400);

}  // namespace lgequiv
