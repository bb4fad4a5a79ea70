#include "gsrww/errors.hpp"

namespace gsrww {

OverflowError::OverflowError(std::size_t index, const std::string& what)
    : Error(what + " (observation " + std::to_string(index) + ")"), index_(index) {}

}  // namespace gsrww
