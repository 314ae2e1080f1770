#include "gammatrop/tropical.hpp"

#include "gammatrop/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace gammatrop {

Rational AffineForm::operator()(const RationalVector& w) const {
    Rational v = constant;
    for (Eigen::Index i = 0; i < slope.size(); ++i) v += Rational(static_cast<long>(slope[i])) * w[i];
    return v;
}

double AffineForm::operator()(const Eigen::VectorXd& w) const {
    return slope.cast<double>().dot(w) + constant.get_d();
}

TropicalPolynomial::TropicalPolynomial(int dim, std::vector<AffineForm> forms) : dim_(dim), forms_(std::move(forms)) {
    if (dim_ < 1) throw DomainError("tropical polynomial needs dimension >= 1");
    if (forms_.size() < 2) throw DomainError("tropical polynomial needs at least two forms");
    for (std::size_t i = 0; i < forms_.size(); ++i) {
        if (forms_[i].slope.size() != dim_) throw ShapeError("affine form slope has wrong length");
        for (std::size_t j = 0; j < i; ++j)
            if (forms_[i] == forms_[j]) throw DomainError("tropical polynomial has repeated forms");
    }
}

Rational TropicalPolynomial::operator()(const RationalVector& w) const {
    Rational best = forms_.front()(w);
    for (const auto& f : forms_) best = std::min(best, f(w));
    return best;
}

double TropicalPolynomial::operator()(const Eigen::VectorXd& w) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : forms_) best = std::min(best, f(w));
    return best;
}

std::vector<std::size_t> TropicalPolynomial::active_set(const RationalVector& w) const {
    const Rational m = (*this)(w);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < forms_.size(); ++i)
        if (forms_[i](w) == m) out.push_back(i);
    return out;
}

LaurentFamily::LaurentFamily(int dim, std::vector<LaurentTerm> terms) : dim_(dim), terms_(std::move(terms)) {
    if (dim_ < 1) throw DomainError("Laurent family needs dimension >= 1");
    if (terms_.empty()) throw DomainError("Laurent family has no terms");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].exponent.size() != dim_) throw ShapeError("exponent vector has wrong length");
        if (terms_[i].coeff == 0.0) throw DomainError("Laurent term with zero coefficient");
        for (std::size_t j = 0; j < i; ++j)
            if (terms_[i].exponent == terms_[j].exponent) throw DomainError("repeated exponent vector");
    }
}

std::complex<double> LaurentFamily::operator()(double t, std::span<const std::complex<double>> x) const {
    if (static_cast<int>(x.size()) != dim_) throw ShapeError("point has wrong dimension");
    std::complex<double> sum = 0.0;
    for (const auto& term : terms_) {
        std::complex<double> v = term.coeff * std::pow(t, term.t_exp.get_d());
        for (int i = 0; i < dim_; ++i) v *= std::pow(x[static_cast<std::size_t>(i)], static_cast<int>(term.exponent[i]));
        sum += v;
    }
    return sum;
}

LaurentFamily LaurentFamily::monomial_change(const IntMatrix& a) const {
    if (a.rows() != dim_ || a.cols() != dim_) throw ShapeError("change of variables must be square of family dimension");
    std::vector<LaurentTerm> out = terms_;
    for (auto& term : out) term.exponent = a.transpose() * term.exponent;
    return LaurentFamily(dim_, std::move(out));
}

namespace {

IntVector unit(int n, int i, std::int64_t value = 1) {
    IntVector v = IntVector::Zero(n);
    v[i] = value;
    return v;
}

}  // namespace

LaurentFamily LaurentFamily::pair_of_pants() {
    return LaurentFamily(2, {{1.0, 0, unit(2, 0)}, {1.0, 0, unit(2, 1)}, {1.0, 0, IntVector::Zero(2)}});
}

LaurentFamily LaurentFamily::elliptic_mirror() {
    return LaurentFamily(2, {{1.0, 1, unit(2, 0)},
                             {1.0, 1, unit(2, 1)},
                             {1.0, 1, IntVector::Constant(2, -1)},
                             {-1.0, 0, IntVector::Zero(2)}});
}

LaurentFamily LaurentFamily::quartic_mirror() {
    return LaurentFamily(3, {{1.0, 1, unit(3, 0)},
                             {1.0, 1, unit(3, 1)},
                             {1.0, 1, unit(3, 2)},
                             {1.0, 1, IntVector::Constant(3, -1)},
                             {-1.0, 0, IntVector::Zero(3)}});
}

TropicalPolynomial tropicalize(const LaurentFamily& f) {
    std::vector<AffineForm> forms;
    for (const auto& term : f.terms()) forms.push_back({term.exponent, term.t_exp});
    return TropicalPolynomial(f.dim(), std::move(forms));
}

BoundingBox BoundingBox::cube(int dim, const Rational& half_width) {
    return {RationalVector::Constant(dim, -half_width), RationalVector::Constant(dim, half_width)};
}

bool BoundingBox::contains(const RationalVector& w) const {
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] < lower[i] || w[i] > upper[i]) return false;
    return true;
}

bool BoundingBox::on_boundary(const RationalVector& w) const {
    if (!contains(w)) return false;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] == lower[i] || w[i] == upper[i]) return true;
    return false;
}

std::vector<const Cell*> CellComplex::cells_of_dim(int k) const {
    std::vector<const Cell*> out;
    for (const auto& c : cells)
        if (c.dim == k) out.push_back(&c);
    return out;
}

namespace {

// { w : eq_a w = eq_b, ineq_a w >= ineq_b }
struct Constraints {
    int n = 0;
    std::vector<RationalVector> eq_a;
    std::vector<Rational> eq_b;
    std::vector<RationalVector> ineq_a;
    std::vector<Rational> ineq_b;

    bool feasible(const RationalVector& w) const {
        for (std::size_t i = 0; i < eq_a.size(); ++i)
            if (eq_a[i].dot(w) != eq_b[i]) return false;
        for (std::size_t i = 0; i < ineq_a.size(); ++i)
            if (ineq_a[i].dot(w) < ineq_b[i]) return false;
        return true;
    }

    void add_box(const BoundingBox& box) {
        for (int i = 0; i < n; ++i) {
            RationalVector e = RationalVector::Constant(n, Rational(0));
            e[i] = 1;
            ineq_a.push_back(e);
            ineq_b.push_back(box.lower[i]);
            ineq_a.push_back(-e);
            ineq_b.push_back(-box.upper[i]);
        }
    }
};

void sort_unique(std::vector<RationalVector>& pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const RationalVector& a, const RationalVector& b) { return a == b; }),
              pts.end());
}

// Vertices of a polyhedron given by constraints, by solving every n-subset of
// rows. The polyhedron must be pointed (box constraints guarantee this).
std::vector<RationalVector> polyhedron_vertices(const Constraints& c) {
    std::vector<RationalVector> rows = c.eq_a;
    std::vector<Rational> rhs = c.eq_b;
    rows.insert(rows.end(), c.ineq_a.begin(), c.ineq_a.end());
    rhs.insert(rhs.end(), c.ineq_b.begin(), c.ineq_b.end());
    const int n = c.n;
    const int m = static_cast<int>(rows.size());
    std::vector<RationalVector> out;
    if (m < n) return out;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        RationalMatrix a(n, n);
        RationalVector b(n);
        for (int r = 0; r < n; ++r) {
            a.row(r) = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].transpose();
            b[r] = rhs[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])];
        }
        if (auto w = solve_unique(a, b); w && c.feasible(*w)) out.push_back(*w);
        int k = n - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - n + k) --k;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
    }
    sort_unique(out);
    return out;
}

RationalVector centroid(const std::vector<RationalVector>& pts) {
    RationalVector c = RationalVector::Constant(pts.front().size(), Rational(0));
    for (const auto& p : pts) c += p;
    return c / Rational(static_cast<long>(pts.size()));
}

RationalVector slope_q(const AffineForm& f) { return to_rational(f.slope); }

// Constraints for {f_s equal for s in S, f_s <= f_k otherwise}; `homogeneous`
// drops constants (recession cone).
Constraints stratum_constraints(const TropicalPolynomial& p, const std::vector<std::size_t>& subset, bool homogeneous) {
    Constraints c;
    c.n = p.dim();
    const auto& forms = p.forms();
    const auto& base = forms[subset.front()];
    for (std::size_t j = 1; j < subset.size(); ++j) {
        const auto& f = forms[subset[j]];
        c.eq_a.push_back(slope_q(f) - slope_q(base));
        c.eq_b.push_back(homogeneous ? Rational(0) : Rational(base.constant - f.constant));
    }
    for (std::size_t k = 0; k < forms.size(); ++k) {
        if (std::find(subset.begin(), subset.end(), k) != subset.end()) continue;
        c.ineq_a.push_back(slope_q(forms[k]) - slope_q(base));
        c.ineq_b.push_back(homogeneous ? Rational(0) : Rational(base.constant - forms[k].constant));
    }
    return c;
}

bool recession_cone_trivial(Constraints cone) {
    cone.add_box(BoundingBox::cube(cone.n, 1));
    for (const auto& v : polyhedron_vertices(cone))
        if (!v.isZero()) return false;
    return true;
}

IntMatrix direction_lattice(const std::vector<RationalVector>& vertices) {
    const Eigen::Index n = vertices.front().size();
    RationalMatrix diffs(n, static_cast<Eigen::Index>(vertices.size()) - 1);
    for (std::size_t i = 1; i < vertices.size(); ++i)
        diffs.col(static_cast<Eigen::Index>(i) - 1) = vertices[i] - vertices[0];
    if (diffs.cols() == 0 || rank(diffs) == 0) return IntMatrix(n, 0);
    return saturated_lattice_basis(diffs);
}

}  // namespace

CellComplex corner_locus(const TropicalPolynomial& p, const BoundingBox& box) {
    const int n = p.dim();
    if (n > 3) throw UnsupportedDimensionError("corner locus is implemented for dimension <= 3, got " + std::to_string(n));
    if (box.lower.size() != n || box.upper.size() != n) throw ShapeError("bounding box has wrong dimension");
    const std::size_t count = p.forms().size();
    if (count > 16) throw DomainError("too many forms for subset enumeration");

    CellComplex complex;
    complex.ambient_dim = n;
    complex.box = box;
    for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < count; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        Constraints c = stratum_constraints(p, subset, false);
        c.add_box(box);
        auto verts = polyhedron_vertices(c);
        if (verts.empty()) continue;
        RationalVector mid = centroid(verts);
        if (p.active_set(mid) != subset) continue;
        Cell cell;
        cell.active = subset;
        cell.vertices = std::move(verts);
        cell.dim = affine_dimension(cell.vertices);
        cell.point = mid;
        cell.directions = direction_lattice(cell.vertices);
        cell.bounded = recession_cone_trivial(stratum_constraints(p, subset, true));
        cell.degenerate = cell.dim != n - static_cast<int>(subset.size()) + 1;
        complex.cells.push_back(std::move(cell));
    }
    std::sort(complex.cells.begin(), complex.cells.end(),
              [](const Cell& a, const Cell& b) { return a.active < b.active; });
    return complex;
}

BoundingBox default_bounding_box(const TropicalPolynomial& p) {
    const int n = p.dim();
    const std::size_t count = p.forms().size();
    std::vector<RationalVector> verts;
    for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
        if (std::popcount(mask) != n + 1) continue;
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < count; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        Constraints c = stratum_constraints(p, subset, false);
        RationalMatrix a(static_cast<Eigen::Index>(c.eq_a.size()), n);
        RationalVector b(static_cast<Eigen::Index>(c.eq_a.size()));
        for (std::size_t i = 0; i < c.eq_a.size(); ++i) {
            a.row(static_cast<Eigen::Index>(i)) = c.eq_a[i].transpose();
            b[static_cast<Eigen::Index>(i)] = c.eq_b[i];
        }
        if (auto w = solve_unique(a, b); w && c.feasible(*w)) verts.push_back(*w);
    }
    BoundingBox box = BoundingBox::cube(n, 1);
    if (verts.empty()) return box;
    for (int i = 0; i < n; ++i) {
        Rational lo = verts.front()[i], hi = verts.front()[i];
        for (const auto& v : verts) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        Rational margin = std::max(Rational(1), Rational((hi - lo) / 2));
        box.lower[i] = lo - margin;
        box.upper[i] = hi + margin;
    }
    return box;
}

int LatticePolytope::dim() const { return vertices.empty() ? -1 : affine_dimension(vertices); }

bool LatticePolytope::contains(const RationalVector& w) const {
    for (const auto& f : facets)
        if (f(w) < 0) return false;
    return true;
}

std::vector<RationalVector> LatticePolytope::facet_vertices(std::size_t facet) const {
    std::vector<RationalVector> out;
    for (const auto& v : vertices)
        if (facets.at(facet)(v) == 0) out.push_back(v);
    return out;
}

namespace {

AffineForm normalized_form(const RationalVector& normal, const RationalVector& through) {
    IntVector m = primitive_integer_multiple(normal);
    Rational a = -to_rational(m).dot(through);
    return {m, a};
}

void dedupe_forms(std::vector<AffineForm>& forms) {
    std::vector<AffineForm> out;
    for (auto& f : forms)
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    forms = std::move(out);
}

}  // namespace

LatticePolytope LatticePolytope::from_vertices(const std::vector<RationalVector>& points) {
    if (points.empty()) throw DomainError("polytope needs at least one point");
    const int n = static_cast<int>(points.front().size());
    std::vector<RationalVector> pts = points;
    sort_unique(pts);
    if (affine_dimension(pts) != n) throw DomainError("points do not span a full-dimensional polytope");
    const int m = static_cast<int>(pts.size());

    LatticePolytope poly;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        RationalMatrix diffs(n, n - 1);
        for (int j = 1; j < n; ++j)
            diffs.col(j - 1) = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] -
                               pts[static_cast<std::size_t>(idx[0])];
        RationalMatrix normals = nullspace(diffs.transpose());
        if (normals.cols() == 1) {
            AffineForm f = normalized_form(normals.col(0), pts[static_cast<std::size_t>(idx[0])]);
            bool any_pos = false, any_neg = false;
            for (const auto& p : pts) {
                const Rational v = f(p);
                if (v > 0) any_pos = true;
                if (v < 0) any_neg = true;
            }
            if (!(any_pos && any_neg)) {
                if (any_neg) {
                    f.slope = -f.slope;
                    f.constant = -f.constant;
                }
                poly.facets.push_back(f);
            }
        }
        int k = n - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - n + k) --k;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
    }
    dedupe_forms(poly.facets);
    for (const auto& p : pts) {
        RationalMatrix active(0, n);
        for (const auto& f : poly.facets) {
            if (f(p) != 0) continue;
            active.conservativeResize(active.rows() + 1, n);
            active.row(active.rows() - 1) = to_rational(f.slope).transpose();
        }
        if (active.rows() >= n && rank(active) == n) poly.vertices.push_back(p);
    }
    return poly;
}

std::vector<std::pair<std::size_t, std::size_t>> LatticePolytope::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            std::vector<std::size_t> common;
            for (std::size_t f = 0; f < facets.size(); ++f)
                if (facets[f](vertices[i]) == 0 && facets[f](vertices[j]) == 0) common.push_back(f);
            if (common.empty()) continue;
            std::vector<RationalVector> face;
            for (const auto& v : vertices) {
                bool on_all = std::all_of(common.begin(), common.end(), [&](std::size_t f) { return facets[f](v) == 0; });
                if (on_all) face.push_back(v);
            }
            if (affine_dimension(face) == 1) out.emplace_back(i, j);
        }
    }
    return out;
}

LatticePolytope compact_chamber(const TropicalPolynomial& p) {
    const int n = p.dim();
    const auto& forms = p.forms();
    std::vector<LatticePolytope> chambers;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        Constraints c;
        c.n = n;
        for (std::size_t k = 0; k < forms.size(); ++k) {
            if (k == i) continue;
            c.ineq_a.push_back(slope_q(forms[k]) - slope_q(forms[i]));
            c.ineq_b.push_back(forms[i].constant - forms[k].constant);
        }
        Constraints cone = c;
        std::fill(cone.ineq_b.begin(), cone.ineq_b.end(), Rational(0));
        if (!recession_cone_trivial(cone)) continue;
        auto verts = polyhedron_vertices(c);
        if (verts.empty() || affine_dimension(verts) != n) continue;
        LatticePolytope poly;
        poly.vertices = verts;
        for (std::size_t k = 0; k < forms.size(); ++k) {
            if (k == i) continue;
            std::vector<RationalVector> on;
            for (const auto& v : verts)
                if (forms[k](v) == forms[i](v)) on.push_back(v);
            if (affine_dimension(on) != n - 1) continue;
            const RationalVector diff = slope_q(forms[k]) - slope_q(forms[i]);
            poly.facets.push_back(normalized_form(diff, on.front()));
        }
        dedupe_forms(poly.facets);
        chambers.push_back(std::move(poly));
    }
    if (chambers.size() != 1)
        throw StructureError("expected exactly one bounded chamber, found " + std::to_string(chambers.size()));
    return chambers.front();
}

namespace {

Rational cross2(const RationalVector& o, const RationalVector& a, const RationalVector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Exact monotone-chain hull, counterclockwise.
std::vector<RationalVector> convex_hull_2d(std::vector<RationalVector> pts) {
    sort_unique(pts);
    if (pts.size() < 3) return pts;
    std::vector<RationalVector> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

Rational convex_polygon_area(const std::vector<RationalVector>& pts) {
    const auto hull = convex_hull_2d(pts);
    if (hull.size() < 3) return 0;
    Rational twice = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return abs(twice) / 2;
}

Rational det3(const RationalVector& a, const RationalVector& b, const RationalVector& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Supporting planes found by brute force over triples, then a cone over each
// facet from the vertex average. Fine for the handful of points we see.
Rational convex_polytope_volume(const std::vector<RationalVector>& pts) {
    RationalVector center = RationalVector::Zero(3);
    for (const auto& p : pts) center += p;
    center /= Rational(static_cast<long>(pts.size()));
    std::set<std::vector<std::size_t>> facets;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const RationalVector u = pts[j] - pts[i], v = pts[k] - pts[i];
                RationalVector nrm(3);
                nrm << u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0];
                if (nrm.isZero()) continue;
                int above = 0, below = 0;
                std::vector<std::size_t> on;
                for (std::size_t m = 0; m < n; ++m) {
                    const Rational s = nrm.dot(pts[m] - pts[i]);
                    if (s > 0) ++above;
                    else if (s < 0) ++below;
                    else on.push_back(m);
                }
                if (above && below) continue;
                facets.insert(on);
            }
    Rational six = 0;
    for (const auto& f : facets) {
        std::vector<RationalVector> face;
        for (auto m : f) face.push_back(pts[m]);
        // order the facet cyclically through a projection that keeps it 2-dimensional
        const RationalVector u = face[1] - face[0];
        RationalVector v;
        for (std::size_t m = 2; m < face.size(); ++m) {
            v = face[m] - face[0];
            if (!(u[0] * v[1] - u[1] * v[0] == 0 && u[1] * v[2] - u[2] * v[1] == 0 && u[0] * v[2] - u[2] * v[0] == 0))
                break;
        }
        const Rational n0 = u[1] * v[2] - u[2] * v[1], n1 = u[2] * v[0] - u[0] * v[2];
        const int drop = n0 != 0 ? 0 : (n1 != 0 ? 1 : 2);
        std::map<std::vector<Rational>, RationalVector> lift;
        std::vector<RationalVector> flat;
        for (const auto& p : face) {
            RationalVector q(2);
            int c = 0;
            for (int a = 0; a < 3; ++a)
                if (a != drop) q[c++] = p[a];
            lift[{q[0], q[1]}] = p;
            flat.push_back(q);
        }
        const auto ring = convex_hull_2d(flat);
        const RationalVector& a = lift.at({ring[0][0], ring[0][1]});
        for (std::size_t m = 1; m + 1 < ring.size(); ++m) {
            const RationalVector& b = lift.at({ring[m][0], ring[m][1]});
            const RationalVector& c = lift.at({ring[m + 1][0], ring[m + 1][1]});
            six += abs(det3(a - center, b - center, c - center));
        }
    }
    return six / 6;
}

}  // namespace

Rational affine_volume(const std::vector<RationalVector>& vertices) {
    if (vertices.empty()) throw DomainError("affine volume of an empty cell");
    std::vector<RationalVector> pts = vertices;
    sort_unique(pts);
    const int k = affine_dimension(pts);
    if (k == 0) return 1;
    if (k > 3) throw DomainError("affine volume is implemented for cells of dimension <= 3");
    const IntMatrix basis = direction_lattice(pts);
    const RationalMatrix b = basis.unaryExpr([](std::int64_t x) { return Rational(static_cast<long>(x)); });
    std::vector<RationalVector> coords;
    for (const auto& p : pts) {
        auto c = solve_unique(b, p - pts.front());
        if (!c) throw DomainError("point outside the affine span of the cell");
        coords.push_back(*c);
    }
    if (k == 1) {
        Rational lo = coords.front()[0], hi = coords.front()[0];
        for (const auto& c : coords) {
            lo = std::min(lo, c[0]);
            hi = std::max(hi, c[0]);
        }
        return hi - lo;
    }
    if (k == 3) return convex_polytope_volume(coords);
    return convex_polygon_area(coords);
}

Rational affine_volume(const Cell& cell) {
    if (!cell.bounded) throw DomainError("affine volume of an unbounded cell");
    return affine_volume(cell.vertices);
}

Rational boundary_affine_area(const LatticePolytope& p) {
    if (p.dim() != 3) throw DomainError("boundary area needs a 3-dimensional polytope");
    Rational total = 0;
    for (std::size_t f = 0; f < p.facets.size(); ++f) total += affine_volume(p.facet_vertices(f));
    return total;
}

Rational boundary_affine_length(const LatticePolytope& p) {
    if (p.dim() != 2) throw DomainError("boundary length needs a 2-dimensional polytope");
    Rational total = 0;
    for (std::size_t f = 0; f < p.facets.size(); ++f) total += affine_volume(p.facet_vertices(f));
    return total;
}

std::vector<RationalVector> edge_singularities(const LatticePolytope& p) {
    std::vector<RationalVector> out;
    for (const auto& [i, j] : p.edges()) {
        const auto& u = p.vertices[i];
        const auto& v = p.vertices[j];
        if (!is_integral(u) || !is_integral(v))
            throw DomainError("edge endpoints must be lattice points to place singularities");
        const IntVector d = to_integer(RationalVector(v - u));
        const std::int64_t g = gcd_of(d);
        const RationalVector step = to_rational(d) / Rational(static_cast<long>(g));
        for (std::int64_t s = 0; s < g; ++s)
            out.push_back(u + step * Rational(2 * static_cast<long>(s) + 1, 2));
    }
    return out;
}

namespace {

// Chart change (x1, y) -> (x2, y) with x2 = min(0, y) - x1.
Eigen::Vector2i chart_change(const Eigen::Vector2i& p) { return {std::min(0, p[1]) - p[0], p[1]}; }

// Jacobian of the chart change on the half-plane sign(y) = side.
Eigen::Matrix2i transition_jacobian(int side) {
    const Eigen::Vector2i base(0, side);
    Eigen::Matrix2i j;
    j.col(0) = chart_change(base + Eigen::Vector2i(1, 0)) - chart_change(base);
    j.col(1) = (chart_change(base + Eigen::Vector2i(0, side)) - chart_change(base)) * side;
    return j;
}

Eigen::Matrix2i unimodular_inverse(const Eigen::Matrix2i& m) {
    const int det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Eigen::Matrix2i adj;
    adj << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return adj * det;  // det = ±1, so 1/det = det
}

}  // namespace

Eigen::Matrix2i focus_focus_monodromy(LoopOrientation orientation) {
    const Eigen::Matrix2i upper = transition_jacobian(+1);
    const Eigen::Matrix2i lower = transition_jacobian(-1);
    // Leave chart 1 across y > 0, come back across y < 0.
    if (orientation == LoopOrientation::counterclockwise) return unimodular_inverse(lower) * upper;
    return unimodular_inverse(upper) * lower;
}

Eigen::VectorXd log_t_image(std::span<const std::complex<double>> point, double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("log_t image needs 0 < t < 1");
    Eigen::VectorXd out(static_cast<Eigen::Index>(point.size()));
    const double lt = std::log(t);
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double r = std::abs(point[i]);
        if (r == 0.0) throw DomainError("log_t image of a point with a zero coordinate");
        out[static_cast<Eigen::Index>(i)] = std::log(r) / lt;
    }
    return out;
}

bool amoeba_membership(double x, double y, double t, double slack) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("amoeba membership needs 0 < t < 1");
    const double lt = std::log(t);
    const double tx = std::exp(x * lt);
    const double lower = std::log1p(tx) / lt;
    const double upper = x == 0.0 ? std::numeric_limits<double>::infinity() : std::log(std::abs(1.0 - tx)) / lt;
    return lower - slack <= y && y <= upper + slack;
}

std::vector<std::vector<std::complex<double>>> sample_variety(const LaurentFamily& f, double t, std::size_t count,
                                                              unsigned seed, double log_radius) {
    const int n = f.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> modulus(-log_radius, log_radius);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& term : f.terms()) {
        lo = std::min(lo, term.exponent[n - 1]);
        hi = std::max(hi, term.exponent[n - 1]);
    }
    const auto degree = static_cast<Eigen::Index>(hi - lo);
    std::vector<std::vector<std::complex<double>>> out;
    if (degree == 0) return out;
    std::size_t attempts = 0;
    while (out.size() < count && attempts++ < 100 * count + 100) {
        std::vector<std::complex<double>> lead(static_cast<std::size_t>(n - 1));
        for (auto& z : lead) z = std::polar(std::exp(modulus(rng)), phase(rng));
        Eigen::VectorXcd poly = Eigen::VectorXcd::Zero(degree + 1);  // poly[k]: coefficient of X_n^{k+lo}
        for (const auto& term : f.terms()) {
            std::complex<double> c = term.coeff * std::pow(t, term.t_exp.get_d());
            for (int i = 0; i + 1 < n; ++i) c *= std::pow(lead[static_cast<std::size_t>(i)], static_cast<int>(term.exponent[i]));
            poly[static_cast<Eigen::Index>(term.exponent[n - 1] - lo)] += c;
        }
        if (std::abs(poly[degree]) == 0.0) continue;
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
        for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
        for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -poly[i] / poly[degree];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (Eigen::Index r = 0; r < degree && out.size() < count; ++r) {
            const std::complex<double> root = solver.eigenvalues()[r];
            if (!std::isfinite(root.real()) || !std::isfinite(root.imag()) || std::abs(root) == 0.0) continue;
            auto point = lead;
            point.push_back(root);
            out.push_back(std::move(point));
        }
    }
    return out;
}

}  // namespace gammatrop
