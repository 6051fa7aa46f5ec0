#pragma once

#include <stdexcept>
#include <string>

namespace mfgcast {

// Error categories map onto CLI exit codes: validation -> 1,
// numeric -> 2, io -> 3.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mfgcast
