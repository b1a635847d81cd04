#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>

namespace drcomp {

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (GMP canonicalizes after every operation).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "3", "-3/4" or a decimal literal such as "0.25".
Rational parse_rational(const std::string& text);

}  // namespace drcomp
