#pragma once

#include <stdexcept>
#include <string>

namespace besovbm {

/// Precondition failure on caller-supplied arguments.
inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

} // namespace besovbm
