#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen

namespace gammatrop {

using Rational = mpq_class;
using Integer = mpz_class;

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Parses "p", "p/q" or "-p/q". Throws DomainError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

RationalVector to_rational(const IntVector& v);
Eigen::VectorXd to_double(const RationalVector& v);
/// Throws DomainError if some entry is not an integer.
IntVector to_integer(const RationalVector& v);
bool is_integral(const RationalVector& v);

std::int64_t gcd_of(const IntVector& v);
/// v / gcd(v); zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
/// Smallest positive multiple of a rational vector that is integral and primitive.
IntVector primitive_integer_multiple(const RationalVector& v);

// Exact linear algebra over Q. Matrices here are tiny (dimension <= 3 in
// practice), so plain Gaussian elimination with nonzero pivoting is enough.

/// Reduced row echelon form; `pivots` receives pivot column indices.
RationalMatrix rref(RationalMatrix a, std::vector<Eigen::Index>* pivots = nullptr);
Eigen::Index rank(const RationalMatrix& a);
/// Unique solution of a x = b, or nullopt if inconsistent or underdetermined.
std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b);
/// Columns form a basis of {x : a x = 0} over Q.
RationalMatrix nullspace(const RationalMatrix& a);
/// Columns form a Z-basis of {x in Z^n : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);
/// Z-basis of span(columns of directions) intersected with Z^n.
IntMatrix saturated_lattice_basis(const RationalMatrix& directions);
/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<RationalVector>& points);

bool lex_less(const RationalVector& a, const RationalVector& b);

}  // namespace gammatrop
