#pragma once

#include "gammatrop/rational.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gammatrop {

/// w ↦ ⟨slope, w⟩ + constant with an integral slope covector.
struct AffineForm {
    IntVector slope;
    Rational constant;

    Rational operator()(const RationalVector& w) const;
    double operator()(const Eigen::VectorXd& w) const;
    bool operator==(const AffineForm& o) const { return slope == o.slope && constant == o.constant; }
};

/// min over a list of affine forms.
class TropicalPolynomial {
public:
    TropicalPolynomial(int dim, std::vector<AffineForm> forms);

    int dim() const { return dim_; }
    const std::vector<AffineForm>& forms() const { return forms_; }
    Rational operator()(const RationalVector& w) const;
    double operator()(const Eigen::VectorXd& w) const;
    /// Indices of forms attaining the minimum exactly.
    std::vector<std::size_t> active_set(const RationalVector& w) const;

private:
    int dim_;
    std::vector<AffineForm> forms_;
};

struct LaurentTerm {
    std::complex<double> coeff;
    Rational t_exp;
    IntVector exponent;
};

/// Σ coeff · t^{t_exp} · X^{exponent}, a family of hypersurfaces in (C^×)^n.
class LaurentFamily {
public:
    LaurentFamily(int dim, std::vector<LaurentTerm> terms);

    int dim() const { return dim_; }
    const std::vector<LaurentTerm>& terms() const { return terms_; }
    std::complex<double> operator()(double t, std::span<const std::complex<double>> x) const;

    /// Substitution X_i = Π_j Z_j^{A_ij}; the monomial X^e becomes Z^{Aᵀe}.
    LaurentFamily monomial_change(const IntMatrix& a) const;

    static LaurentFamily pair_of_pants();    // X + Y + 1
    static LaurentFamily elliptic_mirror();  // t(X + Y + 1/XY) - 1
    static LaurentFamily quartic_mirror();  // t(W1 + W2 + W3 + 1/(W1 W2 W3)) - 1

private:
    int dim_;
    std::vector<LaurentTerm> terms_;
};

TropicalPolynomial tropicalize(const LaurentFamily& f);

struct BoundingBox {
    RationalVector lower;
    RationalVector upper;

    static BoundingBox cube(int dim, const Rational& half_width);
    bool contains(const RationalVector& w) const;
    bool on_boundary(const RationalVector& w) const;
};

/// A cell of the corner locus: the closure of the set where exactly the forms
/// in `active` attain the minimum. Unbounded cells are clipped to the box.
struct Cell {
    int dim = 0;
    std::vector<std::size_t> active;
    RationalVector point;          // relative-interior point (vertex centroid)
    IntMatrix directions;          // Z-basis of the direction lattice, one column each
    bool bounded = true;
    bool degenerate = false;       // dimension differs from n - |active| + 1
    std::vector<RationalVector> vertices;  // lexicographically sorted
};

struct CellComplex {
    int ambient_dim = 0;
    BoundingBox box;
    std::vector<Cell> cells;  // ordered lexicographically by active set

    std::vector<const Cell*> cells_of_dim(int k) const;
};

/// Enumerates active subsets with exact arithmetic. Dimension must be <= 3.
CellComplex corner_locus(const TropicalPolynomial& p, const BoundingBox& box);
/// Box enclosing all vertices of the corner locus with a margin.
BoundingBox default_bounding_box(const TropicalPolynomial& p);

/// Convex polytope {w : ⟨m_i, w⟩ + a_i >= 0} with primitive integral m_i.
struct LatticePolytope {
    std::vector<RationalVector> vertices;
    std::vector<AffineForm> facets;

    int dim() const;
    static LatticePolytope from_vertices(const std::vector<RationalVector>& points);
    bool contains(const RationalVector& w) const;
    std::vector<RationalVector> facet_vertices(std::size_t facet) const;
    /// Vertex index pairs (i < j) spanning edges, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

/// The closure of the unique bounded chamber of the complement of the corner
/// locus. StructureError if there are zero or several bounded chambers.
LatticePolytope compact_chamber(const TropicalPolynomial& p);

/// Lattice-normalized k-volume (k <= 3) of the convex hull of the points.
Rational affine_volume(const std::vector<RationalVector>& vertices);
Rational affine_volume(const Cell& cell);
/// Sum of lattice areas of the facets of a 3-dimensional polytope.
Rational boundary_affine_area(const LatticePolytope& p);
/// Sum of lattice lengths of the edges of a 2-dimensional polytope.
Rational boundary_affine_length(const LatticePolytope& p);

/// Midpoints between consecutive lattice points along every edge.
std::vector<RationalVector> edge_singularities(const LatticePolytope& p);

enum class LoopOrientation { counterclockwise, clockwise };

/// Monodromy of the charts (x1, y), (x2, y) glued by x1 + x2 = min(0, y)
/// around the singular point.
Eigen::Matrix2i focus_focus_monodromy(LoopOrientation orientation = LoopOrientation::counterclockwise);

/// Componentwise log|x_i| / log t.
Eigen::VectorXd log_t_image(std::span<const std::complex<double>> point, double t);

/// Whether (x, y) is in the amoeba of X + Y + 1 = 0 for the given t; `slack`
/// widens both bounds.
bool amoeba_membership(double x, double y, double t, double slack = 0.0);

/// Points of {f = 0} at parameter t: the leading coordinates are sampled
/// log-uniformly with uniform phases, the last is solved as polynomial roots.
std::vector<std::vector<std::complex<double>>> sample_variety(const LaurentFamily& f, double t, std::size_t count,
                                                              unsigned seed, double log_radius = 3.0);

}  // namespace gammatrop
