#pragma once
#include <stdexcept>
#include <string>

namespace edgetrans {

// Every failure raised by the library derives from Error so callers can catch
// one type; the subclasses name the failure modes the operations promise.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {          // precondition violated by the inputs
  using Error::Error;
};
struct BranchCutError : DomainError {  // argument on a branch cut
  using DomainError::DomainError;
};
struct PoleError : DomainError {
  using DomainError::DomainError;
};
struct ConvergenceError : Error {      // iteration or quadrature did not settle
  using Error::Error;
};
struct ConsistencyError : Error {      // a postcondition residual was violated
  using Error::Error;
};

}  // namespace edgetrans
