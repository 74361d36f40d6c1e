#pragma once

#include <stdexcept>
#include <string>

namespace cext {

// Bad user input: malformed words, mismatched groups, invalid descriptors.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap (ball size, geodesic multiplicity, ...) was exceeded.
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// The supplied data is not what it claims to be (e.g. a bundle whose
// section defect leaves the kernel).
class structural_error : public std::runtime_error {
public:
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cext
