#pragma once

#include <stdexcept>
#include <string>

namespace sheafcsp {

/// Malformed or out-of-range input supplied by a caller (bad file, bad
/// element index, dimension mismatch).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition, e.g. asking for the
/// forth property of a section whose domain already has size k.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sheafcsp
