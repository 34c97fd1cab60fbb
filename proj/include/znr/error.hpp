#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace znr {

enum class ErrorKind {
    parse,
    validation,
    not_irreducible,
    max_iter_exceeded,
    singular_system,
    guard_exceeded,
    zero_polynomial,
    transient_states_present,
    gamma_reducible,
    eps_out_of_range,
    nonpositive_weight,
    missing_reverse_weight,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// True for failures of a mathematical precondition (reducibility,
    /// singular systems, etc.) as opposed to malformed input.
    bool is_precondition_failure() const noexcept;

private:
    ErrorKind kind_;
};

class MaxIterExceeded : public Error {
public:
    MaxIterExceeded(std::vector<double> last_iterate, double residual, std::size_t iterations);

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<double> last_iterate_;
    double residual_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace znr
