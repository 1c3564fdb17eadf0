#ifndef RDP_ERROR_HPP
#define RDP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rdp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph or instance (disconnected, bad edge, bad field).
class GraphError : public Error {
public:
    using Error::Error;
};

/// Problem too large for an exact routine.
class SizeError : public Error {
public:
    using Error::Error;
};

/// No feasible solution exists (damaged nodes but no truck).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Parameters outside the domain of a construction or generator.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace rdp

#endif
