#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vklab/partitions.hpp"
#include "vklab/vkchar.hpp"

namespace vklab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    static Box make(double x0, double y0, double x1, double y1);
    bool contains(const Vec2& p) const {
        return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
    }
    bool contains(const Box& other) const {
        return other.x0 >= x0 && other.y0 >= y0 && other.x1 <= x1 && other.y1 <= y1;
    }
    double area() const { return (x1 - x0) * (y1 - y0); }
    Box padded(double margin) const { return {x0 - margin, y0 - margin, x1 + margin, y1 + margin}; }
    Box hull(const Box& other) const;
};

// Radial C-infinity envelope: identically 1 up to the plateau radius, 0 from
// the support radius on, glued by the standard exp(-1/t) step in between.
// The flat plateau gives closed-form flows for the oracle tests.
struct BumpEnvelope {
    double plateau = 0.0;
    double support = 0.0;

    static BumpEnvelope make(double plateau, double support);
    double value(double r) const;
    double derivative(double r) const;
};

// Compactly supported planar field: bump envelope times a constant,
// rotational, or radial direction pattern.
struct FieldPrimitive {
    enum class Kind { Constant, Rotation, Radial };

    Kind kind = Kind::Constant;
    Vec2 center = Vec2::Zero();
    double amplitude = 0.0;
    Vec2 direction = Vec2::UnitX();  // Constant only
    BumpEnvelope envelope;

    static FieldPrimitive constant(Vec2 center, Vec2 direction, double amplitude,
                                   double plateau, double support);
    static FieldPrimitive rotation(Vec2 center, double amplitude, double plateau,
                                   double support);
    static FieldPrimitive radial(Vec2 center, double amplitude, double plateau,
                                 double support);

    Vec2 value(const Vec2& x) const;
    Mat2 jacobian(const Vec2& x) const;
    Box support_box() const;
};

struct VectorField {
    std::vector<FieldPrimitive> primitives;

    Vec2 value(const Vec2& x) const;
    Mat2 jacobian(const Vec2& x) const;
    Box support_box() const;
};

// Diffeomorphism realized as a composition of fixed-time flows of compactly
// supported fields (classical fixed-step RK4, with the variational equation
// integrated alongside when the derivative is requested).  Composition and
// inversion stay inside the class, so inverses are exact flows at -time.
class FlowDiffeo {
  public:
    struct Stage {
        VectorField field;
        double time = 0.0;
        int steps = 0;
    };

    static FlowDiffeo flow(VectorField field, double time, int steps);
    static FlowDiffeo identity();
    static FlowDiffeo compose(const FlowDiffeo& outer, const FlowDiffeo& inner);

    FlowDiffeo inverse() const;

    Vec2 apply(const Vec2& x) const;
    // Forward image together with the flow derivative at x.
    std::pair<Vec2, Mat2> apply_with_jacobian(const Vec2& x) const;

    Box support_box() const;
    const std::vector<Stage>& stages() const { return stages_; }

  private:
    std::vector<Stage> stages_;  // applied first to last
};

Vec2 flow_apply(const FlowDiffeo& psi, const Vec2& x);

// det D(psi)(x) via the variational equation; throws NumericalError if the
// integrator returns a nonpositive determinant.
double jacobian_det(const FlowDiffeo& psi, const Vec2& x);

// Radon-Nikodym weight of the quasi-invariant action at x: the derivative
// determinant of psi^{-1}.
double rn_weight(const FlowDiffeo& psi, const Vec2& x);

struct QuadratureGrid {
    enum class Rule { Midpoint, GaussLegendre };

    Box box;
    int resolution = 0;  // points per axis
    Rule rule = Rule::Midpoint;

    static QuadratureGrid make(Box box, int resolution, Rule rule = Rule::Midpoint);
    QuadratureGrid coarser() const;

    // Tensor nodes with weights, row-major, deterministic order.
    void for_each_node(const std::function<void(const Vec2&, double)>& fn) const;
};

// A single real-valued basis function: a normalized smooth bump, or a
// (difference of) box indicator(s).
struct BasisFunction {
    enum class Kind { Bump, IndicatorRing };

    Kind kind = Kind::Bump;
    Vec2 center = Vec2::Zero();
    BumpEnvelope envelope;      // Bump
    Box outer;                  // IndicatorRing
    Box inner;                  // IndicatorRing; empty box for a plain indicator
    bool has_inner = false;
    double scale = 1.0;

    static BasisFunction bump(Vec2 center, double plateau, double support, double scale = 1.0);
    static BasisFunction indicator(Box region, bool normalized);
    static BasisFunction indicator_ring(Box outer, Box inner, bool normalized);

    double value(const Vec2& x) const;
};

struct BasisFamily {
    std::vector<BasisFunction> functions;

    std::size_t size() const { return functions.size(); }

    // Smooth bumps at the given centers, L2-normalized on `grid`; verifies the
    // family is orthonormal on that grid to `gram_tol`.
    static BasisFamily bumps(const std::vector<Vec2>& centers, double plateau, double support,
                             const QuadratureGrid& grid, double gram_tol = 1e-6);

    // Indicator differences of a strictly nested box chain, analytic norms.
    static BasisFamily indicator_rings(const std::vector<Box>& nested);
};

// Matrix of the standard representation compressed to the basis family:
// B(i,j) = integral of J^{1/2}(x) f_j(psi^{-1} x) f_i(x).  Runs the grid and
// its half-resolution version; if the two disagree beyond accept_tol the
// result is rejected with a refinement hint.
Eigen::MatrixXd rep_matrix_coeff(const FlowDiffeo& psi, const BasisFamily& basis,
                                 const QuadratureGrid& grid, double accept_tol = 1e-4);

// exp of the grid integral of (J^{1/2} - 1); the free gas limit functional.
double free_boson_functional(const FlowDiffeo& psi, const QuadratureGrid& grid,
                             double accept_tol = 1e-4);

// ([T(psi) - I] Omega, Omega) for Omega the plain indicator of `region`,
// computed through the same transported-node kernel as rep_matrix_coeff.
double omega_pairing(const FlowDiffeo& psi, const Box& region, const QuadratureGrid& grid,
                     double accept_tol = 1e-4);

struct CompressedDiffeoValue {
    Complex value{0.0, 0.0};
    double block_norm = 0.0;
    bool rescaled = false;  // block was pulled back onto the contraction cone
};

// det[f(B)] for B = rep_matrix_coeff(psi, basis, grid); a quadrature-induced
// norm excess up to 1e-6 is rescaled away (and reported), more is an error.
CompressedDiffeoValue diffeo_compressed_functional(const VKParams& params, const FlowDiffeo& psi,
                                                   const BasisFamily& basis,
                                                   const QuadratureGrid& grid);

}  // namespace vklab
