#pragma once

#include <stdexcept>

namespace idnc {

// Perfect-feedback bookkeeping was violated, e.g. acknowledging a packet the
// receiver already holds, or a clique that is not pairwise adjacent.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exhaustive-enumeration guard tripped.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idnc
