#pragma once

#include <Eigen/Core>

#include "ddrf/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<ddrf::Rational> : GenericNumTraits<ddrf::Rational> {
  typedef ddrf::Rational Real;
  typedef ddrf::Rational NonInteger;
  typedef ddrf::Rational Nested;
  typedef ddrf::Rational Literal;

  static inline Real epsilon() { return ddrf::Rational(0); }
  static inline Real dummy_precision() { return ddrf::Rational(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40,
  };
};

}  // namespace Eigen

namespace ddrf {

using Eigen::Index;

/// Dense rational types; the "q" suffix follows Eigen's scalar-suffix
/// convention.
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact elementwise equality (false on size mismatch).
template <typename DerivedA, typename DerivedB>
bool exactly_equal(const Eigen::MatrixBase<DerivedA>& a,
                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!(a(i, j) == b(i, j))) return false;
    }
  }
  return true;
}

/// Smallest index attaining the maximum coefficient.
template <typename Derived>
Index argmax_first(const Eigen::MatrixBase<Derived>& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

/// Smallest index attaining the minimum coefficient.
template <typename Derived>
Index argmin_first(const Eigen::MatrixBase<Derived>& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (v(i) < v(best)) best = i;
  }
  return best;
}

}  // namespace ddrf
