#pragma once

#include <stdexcept>
#include <string>

namespace qdyn {

// Raised when a p-adic valuation of zero is requested.
class undefined_valuation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when an enumeration or exhaustive search would exceed its hard size cap.
class unsupported_size : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qdyn
