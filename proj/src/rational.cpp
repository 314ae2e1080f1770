#include "gammatrop/rational.hpp"

#include "gammatrop/errors.hpp"

#include <numeric>
#include <utility>

namespace gammatrop {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw DomainError("empty rational literal");
    const auto slash = s.find('/');
    auto valid_integer = [](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(num.begin());
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw DomainError("malformed rational literal: " + s);
    Integer n(num), d(den);
    if (d == 0) throw DomainError("zero denominator in rational literal: " + s);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

RationalVector to_rational(const IntVector& v) {
    RationalVector r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = Rational(static_cast<long>(v[i]));
    return r;
}

Eigen::VectorXd to_double(const RationalVector& v) {
    Eigen::VectorXd r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
    return r;
}

bool is_integral(const RationalVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i].get_den() != 1) return false;
    return true;
}

IntVector to_integer(const RationalVector& v) {
    IntVector r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) throw DomainError("vector entry " + v[i].get_str() + " is not an integer");
        if (!v[i].get_num().fits_slong_p()) throw DomainError("integer entry out of range");
        r[i] = v[i].get_num().get_si();
    }
    return r;
}

std::int64_t gcd_of(const IntVector& v) {
    std::int64_t g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = std::gcd(g, v[i] < 0 ? -v[i] : v[i]);
    return g;
}

IntVector primitive(const IntVector& v) {
    const std::int64_t g = gcd_of(v);
    if (g <= 1) return v;
    return v / g;
}

IntVector primitive_integer_multiple(const RationalVector& v) {
    Integer lcm = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Integer den = v[i].get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    RationalVector scaled(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) scaled[i] = v[i] * Rational(lcm);
    return primitive(to_integer(scaled));
}

RationalMatrix rref(RationalMatrix a, std::vector<Eigen::Index>* pivots) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index r = 0;
    if (pivots) pivots->clear();
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) a.row(p).swap(a.row(r));
        const Rational inv = 1 / a(r, c);
        for (Eigen::Index j = 0; j < cols; ++j) a(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (Eigen::Index j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return a;
}

Eigen::Index rank(const RationalMatrix& a) {
    std::vector<Eigen::Index> pivots;
    rref(a, &pivots);
    return static_cast<Eigen::Index>(pivots.size());
}

std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b) {
    const Eigen::Index n = a.cols();
    RationalMatrix aug(a.rows(), n + 1);
    aug.leftCols(n) = a;
    aug.col(n) = b;
    std::vector<Eigen::Index> pivots;
    RationalMatrix r = rref(aug, &pivots);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // inconsistent
    if (static_cast<Eigen::Index>(pivots.size()) != n) return std::nullopt;
    RationalVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = r(i, n);
    return x;
}

RationalMatrix nullspace(const RationalMatrix& a) {
    const Eigen::Index n = a.cols();
    std::vector<Eigen::Index> pivots;
    RationalMatrix r = rref(a, &pivots);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    RationalMatrix basis(n, n - static_cast<Eigen::Index>(pivots.size()));
    Eigen::Index k = 0;
    for (Eigen::Index free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        RationalVector v = RationalVector::Constant(n, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(static_cast<Eigen::Index>(i), free);
        basis.col(k++) = v;
    }
    return basis;
}

namespace {

// Column-style Hermite reduction: finds unimodular U with a * U = [H | 0].
Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic> unimodular_column_reduction(
    Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>& a, Eigen::Index& rank_out) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic> u(cols, cols);
    for (Eigen::Index i = 0; i < cols; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) u(i, j) = (i == j) ? 1 : 0;
    Eigen::Index lead = 0;
    for (Eigen::Index r = 0; r < rows && lead < cols; ++r) {
        // Euclid on row r over columns lead..cols-1 until a single nonzero remains.
        while (true) {
            Eigen::Index best = -1;
            for (Eigen::Index c = lead; c < cols; ++c) {
                if (a(r, c) == 0) continue;
                if (best < 0 || abs(a(r, c)) < abs(a(r, best))) best = c;
            }
            if (best < 0) break;
            bool done = true;
            for (Eigen::Index c = lead; c < cols; ++c) {
                if (c == best || a(r, c) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), Integer(a(r, c)).get_mpz_t(), Integer(a(r, best)).get_mpz_t());
                for (Eigen::Index i = 0; i < rows; ++i) a(i, c) -= q * a(i, best);
                for (Eigen::Index i = 0; i < cols; ++i) u(i, c) -= q * u(i, best);
                if (a(r, c) != 0) done = false;
            }
            if (done) {
                a.col(best).swap(a.col(lead));
                u.col(best).swap(u.col(lead));
                ++lead;
                break;
            }
        }
    }
    rank_out = lead;
    return u;
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& a) {
    const Eigen::Index cols = a.cols();
    Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic> work(a.rows(), cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < cols; ++j) work(i, j) = static_cast<long>(a(i, j));
    Eigen::Index r = 0;
    auto u = unimodular_column_reduction(work, r);
    IntMatrix kernel(cols, cols - r);
    for (Eigen::Index j = r; j < cols; ++j)
        for (Eigen::Index i = 0; i < cols; ++i) {
            if (!u(i, j).fits_slong_p()) throw DomainError("lattice basis entry out of range");
            kernel(i, j - r) = u(i, j).get_si();
        }
    return kernel;
}

IntMatrix saturated_lattice_basis(const RationalMatrix& directions) {
    const Eigen::Index n = directions.rows();
    // span ∩ Z^n = integer kernel of the integral normals to the span.
    RationalMatrix normals = nullspace(directions.transpose());
    if (normals.cols() == 0) return IntMatrix::Identity(n, n);
    IntMatrix normal_rows(normals.cols(), n);
    for (Eigen::Index k = 0; k < normals.cols(); ++k)
        normal_rows.row(k) = primitive_integer_multiple(normals.col(k)).transpose();
    return integer_kernel(normal_rows);
}

int affine_dimension(const std::vector<RationalVector>& points) {
    if (points.empty()) return -1;
    const Eigen::Index n = points.front().size();
    RationalMatrix diffs(n, static_cast<Eigen::Index>(points.size()) - 1);
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.col(static_cast<Eigen::Index>(i) - 1) = points[i] - points[0];
    if (diffs.cols() == 0) return 0;
    return static_cast<int>(rank(diffs));
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
    for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

}  // namespace gammatrop
