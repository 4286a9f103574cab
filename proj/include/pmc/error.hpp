#pragma once

#include <stdexcept>
#include <string>

namespace pmc {

// Domain error: bad arguments, violated preconditions, malformed input.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact algorithm asked to run above its guaranteed size bound.
struct SizeLimitError : Error {
    explicit SizeLimitError(const std::string& msg) : Error(msg) {}
};

// Bounded search ran out of its state budget before deciding.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Internal invariant failed (a proof-backed equality did not hold).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// Expensive mid-pipeline self-checks (flip equality, replay equality).
// Final target checks stay on regardless.
bool runtime_checks();
void set_runtime_checks(bool on);

#define PMC_CHECK(cond, msg) \
    do { if (!(cond)) throw ::pmc::Error(msg); } while (0)

#define PMC_INTERNAL(cond, msg) \
    do { if (!(cond)) throw ::pmc::InternalError(msg); } while (0)

} // namespace pmc
