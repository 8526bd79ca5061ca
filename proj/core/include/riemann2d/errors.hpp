#pragma once

#include <stdexcept>
#include <string>

namespace riemann2d {

// Requested grid/refinement level exceeds the configured maximum.
class LevelTooDeep : public std::runtime_error {
public:
  explicit LevelTooDeep(const std::string& what) : std::runtime_error(what) {}
};

// A boundary (or discontinuity-set) cover of the requested total area could
// not be produced at the available resolution or cell budget.
class CoverNotAchievable : public std::runtime_error {
public:
  explicit CoverNotAchievable(const std::string& what) : std::runtime_error(what) {}
};

class DepthTooLarge : public std::runtime_error {
public:
  explicit DepthTooLarge(const std::string& what) : std::runtime_error(what) {}
};

class UnknownFieldName : public std::runtime_error {
public:
  explicit UnknownFieldName(const std::string& what) : std::runtime_error(what) {}
};

class UnknownDomainName : public std::runtime_error {
public:
  explicit UnknownDomainName(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riemann2d
