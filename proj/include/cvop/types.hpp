#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace cvop {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using VecList = std::vector<Vec>;

/// Absolute tolerance for cone membership on unit-normalized vectors.
inline constexpr double kTolCone = 1e-9;
/// Membership tolerance for polyhedral upper sets.
inline constexpr double kTolSet = 1e-7;
/// Tolerance on |w^T c - 1| for elements of a weight base.
inline constexpr double kTolBase = 1e-9;

enum class ErrorKind {
  InvalidArgument,  // malformed input, violated precondition
  Schema,           // JSON does not match the expected layout
  Numerical,        // a numerical routine failed to produce an answer
  Unsupported,      // outside the supported dimension/feature range
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

/// Lexicographic comparison of equally sized vectors.
inline bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace cvop
