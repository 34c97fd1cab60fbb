#include "znr/error.hpp"

#include <sstream>

namespace znr {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::validation: return "ValidationError";
    case ErrorKind::not_irreducible: return "NotIrreducible";
    case ErrorKind::max_iter_exceeded: return "MaxIterExceeded";
    case ErrorKind::singular_system: return "SingularSystem";
    case ErrorKind::guard_exceeded: return "GuardExceeded";
    case ErrorKind::zero_polynomial: return "ZeroPolynomial";
    case ErrorKind::transient_states_present: return "TransientStatesPresent";
    case ErrorKind::gamma_reducible: return "GammaReducible";
    case ErrorKind::eps_out_of_range: return "EpsOutOfRange";
    case ErrorKind::nonpositive_weight: return "NonpositiveWeight";
    case ErrorKind::missing_reverse_weight: return "MissingReverseWeight";
    }
    return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

bool Error::is_precondition_failure() const noexcept
{
    switch (kind_) {
    case ErrorKind::parse:
    case ErrorKind::validation:
    case ErrorKind::nonpositive_weight:
    case ErrorKind::missing_reverse_weight:
    case ErrorKind::eps_out_of_range:
        return false;
    default:
        return true;
    }
}

static std::string describe_max_iter(double residual, std::size_t iterations)
{
    std::ostringstream os;
    os << "no convergence after " << iterations << " iterations (residual " << residual << ")";
    return os.str();
}

MaxIterExceeded::MaxIterExceeded(std::vector<double> last_iterate, double residual, std::size_t iterations)
    : Error(ErrorKind::max_iter_exceeded, describe_max_iter(residual, iterations)),
      last_iterate_(std::move(last_iterate)),
      residual_(residual)
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace znr
