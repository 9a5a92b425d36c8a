#pragma once

#include <stdexcept>
#include <string>

namespace hypmag {

// Error taxonomy shared across modules.  All failures are thrown; callers
// that can recover (e.g. the special interval returning "no root") use
// optionals instead of exceptions.

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct BadBracket : std::runtime_error {
  explicit BadBracket(const std::string& what) : std::runtime_error(what) {}
};

struct PoleArgument : std::runtime_error {
  explicit PoleArgument(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct SpectrumError : std::runtime_error {
  explicit SpectrumError(const std::string& what) : std::runtime_error(what) {}
};

struct DiagonalSingularity : std::runtime_error {
  explicit DiagonalSingularity(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateLoop : std::runtime_error {
  explicit DegenerateLoop(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypmag
