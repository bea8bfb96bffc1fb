#ifndef FMTK_ERRORS_HPP
#define FMTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fmtk {

/// A set function failed the boundary or monotonicity checks.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// The LP solver gave up (iteration cap) or was fed a malformed program.
class solver_error : public std::runtime_error {
public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// The pairwise indifference relation is not transitive at the given tolerance.
class ambiguity_error : public std::runtime_error {
public:
  explicit ambiguity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested construction cannot satisfy its own constraints.
class construction_error : public std::runtime_error {
public:
  explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

/// File content could not be parsed; message carries line/field location.
class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fmtk

#endif // FMTK_ERRORS_HPP
