#include "vklab/diffeo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vklab/errors.hpp"

namespace vklab {

Box Box::make(double x0, double y0, double x1, double y1) {
    if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("Box: degenerate extent");
    return Box{x0, y0, x1, y1};
}

Box Box::hull(const Box& o) const {
    return Box{std::min(x0, o.x0), std::min(y0, o.y0), std::max(x1, o.x1), std::max(y1, o.y1)};
}

BumpEnvelope BumpEnvelope::make(double plateau, double support) {
    if (!(plateau > 0.0) || !(support > plateau))
        throw std::invalid_argument("BumpEnvelope: need 0 < plateau < support");
    return BumpEnvelope{plateau, support};
}

namespace {
inline double step_kernel(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double step_kernel_prime(double t) {
    return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0;
}
}  // namespace

double BumpEnvelope::value(double r) const {
    if (r <= plateau) return 1.0;
    if (r >= support) return 0.0;
    const double s = (r - plateau) / (support - plateau);
    const double u = step_kernel(1.0 - s), v = step_kernel(s);
    return u / (u + v);
}

double BumpEnvelope::derivative(double r) const {
    if (r <= plateau || r >= support) return 0.0;
    const double w = support - plateau;
    const double s = (r - plateau) / w;
    const double u = step_kernel(1.0 - s), v = step_kernel(s);
    const double du = -step_kernel_prime(1.0 - s), dv = step_kernel_prime(s);
    return (du * v - u * dv) / ((u + v) * (u + v)) / w;
}

FieldPrimitive FieldPrimitive::constant(Vec2 center, Vec2 direction, double amplitude,
                                        double plateau, double support) {
    FieldPrimitive f;
    f.kind = Kind::Constant;
    f.center = std::move(center);
    if (direction.norm() == 0.0)
        throw std::invalid_argument("FieldPrimitive: zero direction");
    f.direction = direction / direction.norm();
    f.amplitude = amplitude;
    f.envelope = BumpEnvelope::make(plateau, support);
    return f;
}

FieldPrimitive FieldPrimitive::rotation(Vec2 center, double amplitude, double plateau,
                                        double support) {
    FieldPrimitive f;
    f.kind = Kind::Rotation;
    f.center = std::move(center);
    f.amplitude = amplitude;
    f.envelope = BumpEnvelope::make(plateau, support);
    return f;
}

FieldPrimitive FieldPrimitive::radial(Vec2 center, double amplitude, double plateau,
                                      double support) {
    FieldPrimitive f;
    f.kind = Kind::Radial;
    f.center = std::move(center);
    f.amplitude = amplitude;
    f.envelope = BumpEnvelope::make(plateau, support);
    return f;
}

Vec2 FieldPrimitive::value(const Vec2& x) const {
    const Vec2 u = x - center;
    const double r = u.norm();
    const double env = envelope.value(r);
    if (env == 0.0) return Vec2::Zero();
    switch (kind) {
        case Kind::Constant: return amplitude * env * direction;
        case Kind::Rotation: return amplitude * env * Vec2(-u.y(), u.x());
        case Kind::Radial: return amplitude * env * u;
    }
    return Vec2::Zero();
}

Mat2 FieldPrimitive::jacobian(const Vec2& x) const {
    const Vec2 u = x - center;
    const double r = u.norm();
    const double env = envelope.value(r);
    if (env == 0.0) return Mat2::Zero();
    const double denv = envelope.derivative(r);
    const Vec2 grad_env = (r > 0.0 && denv != 0.0) ? Vec2(denv * u / r) : Vec2(Vec2::Zero());

    Mat2 jac = Mat2::Zero();
    switch (kind) {
        case Kind::Constant:
            jac = direction * grad_env.transpose();
            break;
        case Kind::Rotation: {
            const Vec2 perp(-u.y(), u.x());
            Mat2 rot;
            rot << 0.0, -1.0, 1.0, 0.0;
            jac = perp * grad_env.transpose() + env * rot;
            break;
        }
        case Kind::Radial:
            jac = u * grad_env.transpose() + env * Mat2::Identity();
            break;
    }
    return amplitude * jac;
}

Box FieldPrimitive::support_box() const {
    const double s = envelope.support;
    return Box{center.x() - s, center.y() - s, center.x() + s, center.y() + s};
}

Vec2 VectorField::value(const Vec2& x) const {
    Vec2 v = Vec2::Zero();
    for (const auto& p : primitives) v += p.value(x);
    return v;
}

Mat2 VectorField::jacobian(const Vec2& x) const {
    Mat2 j = Mat2::Zero();
    for (const auto& p : primitives) j += p.jacobian(x);
    return j;
}

Box VectorField::support_box() const {
    if (primitives.empty()) return Box{0, 0, 0, 0};
    Box b = primitives.front().support_box();
    for (std::size_t i = 1; i < primitives.size(); ++i) b = b.hull(primitives[i].support_box());
    return b;
}

FlowDiffeo FlowDiffeo::identity() { return FlowDiffeo{}; }

FlowDiffeo FlowDiffeo::flow(VectorField field, double time, int steps) {
    if (steps <= 0) throw std::invalid_argument("FlowDiffeo: steps must be positive");
    FlowDiffeo d;
    if (!field.primitives.empty() && time != 0.0)
        d.stages_.push_back(Stage{std::move(field), time, steps});
    return d;
}

FlowDiffeo FlowDiffeo::compose(const FlowDiffeo& outer, const FlowDiffeo& inner) {
    FlowDiffeo d;
    d.stages_ = inner.stages_;
    d.stages_.insert(d.stages_.end(), outer.stages_.begin(), outer.stages_.end());
    return d;
}

FlowDiffeo FlowDiffeo::inverse() const {
    FlowDiffeo d;
    d.stages_.reserve(stages_.size());
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it)
        d.stages_.push_back(Stage{it->field, -it->time, it->steps});
    return d;
}

Box FlowDiffeo::support_box() const {
    if (stages_.empty()) return Box{0, 0, 0, 0};
    Box b = stages_.front().field.support_box();
    for (std::size_t i = 1; i < stages_.size(); ++i) b = b.hull(stages_[i].field.support_box());
    return b;
}

namespace {

Vec2 rk4_point(const VectorField& field, Vec2 x, double time, int steps) {
    const double h = time / steps;
    for (int s = 0; s < steps; ++s) {
        const Vec2 k1 = field.value(x);
        const Vec2 k2 = field.value(x + 0.5 * h * k1);
        const Vec2 k3 = field.value(x + 0.5 * h * k2);
        const Vec2 k4 = field.value(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// Flow together with the variational equation dPhi = Dv(x(t)) Phi dt.
std::pair<Vec2, Mat2> rk4_variational(const VectorField& field, Vec2 x, double time, int steps) {
    const double h = time / steps;
    Mat2 phi = Mat2::Identity();
    for (int s = 0; s < steps; ++s) {
        const Vec2 k1 = field.value(x);
        const Mat2 m1 = field.jacobian(x) * phi;
        const Vec2 x2 = x + 0.5 * h * k1;
        const Vec2 k2 = field.value(x2);
        const Mat2 m2 = field.jacobian(x2) * (phi + 0.5 * h * m1);
        const Vec2 x3 = x + 0.5 * h * k2;
        const Vec2 k3 = field.value(x3);
        const Mat2 m3 = field.jacobian(x3) * (phi + 0.5 * h * m2);
        const Vec2 x4 = x + h * k3;
        const Vec2 k4 = field.value(x4);
        const Mat2 m4 = field.jacobian(x4) * (phi + h * m3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        phi += (h / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
    }
    return {x, phi};
}

}  // namespace

Vec2 FlowDiffeo::apply(const Vec2& x) const {
    Vec2 p = x;
    for (const auto& st : stages_) {
        if (!st.field.support_box().contains(p)) continue;  // fixed outside the support
        p = rk4_point(st.field, p, st.time, st.steps);
    }
    return p;
}

std::pair<Vec2, Mat2> FlowDiffeo::apply_with_jacobian(const Vec2& x) const {
    Vec2 p = x;
    Mat2 jac = Mat2::Identity();
    for (const auto& st : stages_) {
        if (!st.field.support_box().contains(p)) continue;
        auto [q, phi] = rk4_variational(st.field, p, st.time, st.steps);
        p = q;
        jac = phi * jac;
    }
    return {p, jac};
}

Vec2 flow_apply(const FlowDiffeo& psi, const Vec2& x) { return psi.apply(x); }

double jacobian_det(const FlowDiffeo& psi, const Vec2& x) {
    const double det = psi.apply_with_jacobian(x).second.determinant();
    if (!(det > 0.0)) {
        std::ostringstream os;
        os << "jacobian_det: nonpositive determinant " << det << " at (" << x.x() << ", "
           << x.y() << "); integrator failure";
        throw NumericalError(os.str());
    }
    return det;
}

double rn_weight(const FlowDiffeo& psi, const Vec2& x) {
    return jacobian_det(psi.inverse(), x);
}

QuadratureGrid QuadratureGrid::make(Box box, int resolution, Rule rule) {
    if (resolution < 2) throw std::invalid_argument("QuadratureGrid: resolution must be >= 2");
    return QuadratureGrid{box, resolution, rule};
}

QuadratureGrid QuadratureGrid::coarser() const {
    return QuadratureGrid{box, std::max(2, resolution / 2), rule};
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

}  // namespace

void QuadratureGrid::for_each_node(const std::function<void(const Vec2&, double)>& fn) const {
    const double lx = box.x1 - box.x0, ly = box.y1 - box.y0;
    if (rule == Rule::Midpoint) {
        const double hx = lx / resolution, hy = ly / resolution;
        const double w = hx * hy;
        for (int i = 0; i < resolution; ++i) {
            const double x = box.x0 + (i + 0.5) * hx;
            for (int j = 0; j < resolution; ++j) fn(Vec2(x, box.y0 + (j + 0.5) * hy), w);
        }
        return;
    }
    std::vector<double> nodes, weights;
    gauss_legendre(resolution, nodes, weights);
    for (int i = 0; i < resolution; ++i) {
        const double x = box.x0 + 0.5 * lx * (nodes[static_cast<std::size_t>(i)] + 1.0);
        const double wx = 0.5 * lx * weights[static_cast<std::size_t>(i)];
        for (int j = 0; j < resolution; ++j) {
            const double y = box.y0 + 0.5 * ly * (nodes[static_cast<std::size_t>(j)] + 1.0);
            fn(Vec2(x, y), wx * 0.5 * ly * weights[static_cast<std::size_t>(j)]);
        }
    }
}

BasisFunction BasisFunction::bump(Vec2 center, double plateau, double support, double scale) {
    BasisFunction f;
    f.kind = Kind::Bump;
    f.center = std::move(center);
    f.envelope = BumpEnvelope::make(plateau, support);
    f.scale = scale;
    return f;
}

BasisFunction BasisFunction::indicator(Box region, bool normalized) {
    BasisFunction f;
    f.kind = Kind::IndicatorRing;
    f.outer = region;
    f.has_inner = false;
    f.scale = normalized ? 1.0 / std::sqrt(region.area()) : 1.0;
    return f;
}

BasisFunction BasisFunction::indicator_ring(Box outer, Box inner, bool normalized) {
    if (!outer.contains(inner))
        throw std::invalid_argument("indicator_ring: inner box must be nested in outer");
    BasisFunction f;
    f.kind = Kind::IndicatorRing;
    f.outer = outer;
    f.inner = inner;
    f.has_inner = true;
    const double area = outer.area() - inner.area();
    if (!(area > 0.0)) throw std::invalid_argument("indicator_ring: zero area");
    f.scale = normalized ? 1.0 / std::sqrt(area) : 1.0;
    return f;
}

double BasisFunction::value(const Vec2& x) const {
    if (kind == Kind::Bump) return scale * envelope.value((x - center).norm());
    if (!outer.contains(x)) return 0.0;
    if (has_inner && inner.contains(x)) return 0.0;
    return scale;
}

BasisFamily BasisFamily::bumps(const std::vector<Vec2>& centers, double plateau, double support,
                               const QuadratureGrid& grid, double gram_tol) {
    if (centers.empty()) throw std::invalid_argument("BasisFamily: no centers");
    BasisFamily fam;
    for (const auto& c : centers) fam.functions.push_back(BasisFunction::bump(c, plateau, support));
    // normalize on the grid
    for (auto& f : fam.functions) {
        double norm2 = 0.0;
        grid.for_each_node([&](const Vec2& x, double w) {
            const double v = f.value(x);
            norm2 += w * v * v;
        });
        if (!(norm2 > 0.0))
            throw std::invalid_argument("BasisFamily: bump support does not meet the grid box");
        f.scale /= std::sqrt(norm2);
    }
    // orthonormality check
    const std::size_t m = fam.size();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                 static_cast<Eigen::Index>(m));
    grid.for_each_node([&](const Vec2& x, double w) {
        for (std::size_t i = 0; i < m; ++i) {
            const double fi = fam.functions[i].value(x);
            if (fi == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j)
                gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                    w * fi * fam.functions[j].value(x);
        }
    });
    const double defect =
        (gram - Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m),
                                          static_cast<Eigen::Index>(m)))
            .cwiseAbs()
            .maxCoeff();
    if (defect > gram_tol) {
        std::ostringstream os;
        os << "BasisFamily: family not orthonormal on this grid (defect " << defect << ")";
        throw std::invalid_argument(os.str());
    }
    return fam;
}

BasisFamily BasisFamily::indicator_rings(const std::vector<Box>& nested) {
    if (nested.empty()) throw std::invalid_argument("BasisFamily: no boxes");
    BasisFamily fam;
    fam.functions.push_back(BasisFunction::indicator(nested.front(), true));
    for (std::size_t k = 1; k < nested.size(); ++k) {
        if (!nested[k].contains(nested[k - 1]))
            throw std::invalid_argument("BasisFamily: boxes must be strictly nested");
        fam.functions.push_back(BasisFunction::indicator_ring(nested[k], nested[k - 1], true));
    }
    return fam;
}

namespace {

Eigen::MatrixXd rep_single_resolution(const FlowDiffeo& psi, const BasisFamily& basis,
                                      const QuadratureGrid& grid) {
    const std::size_t m = basis.size();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
    std::vector<double> fx(m), fy(m);
    const bool trivial = psi.stages().empty();
    const Box support = trivial ? Box{0, 0, 0, 0} : psi.support_box();
    const FlowDiffeo inv = psi.inverse();
    grid.for_each_node([&](const Vec2& x, double w) {
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) {
            fx[i] = basis.functions[i].value(x);
            any = any || fx[i] != 0.0;
        }
        if (!any) return;  // every term carries a factor f_i(x)
        double sqrtj = 1.0;
        Vec2 y = x;
        if (!trivial && support.contains(x)) {
            auto [yy, phi] = inv.apply_with_jacobian(x);
            const double det = phi.determinant();
            if (!(det > 0.0))
                throw NumericalError("rep quadrature: nonpositive Radon-Nikodym weight");
            y = yy;
            sqrtj = std::sqrt(det);
        }
        for (std::size_t j = 0; j < m; ++j) fy[j] = basis.functions[j].value(y);
        for (std::size_t i = 0; i < m; ++i) {
            if (fx[i] == 0.0) continue;
            const double wi = w * fx[i] * sqrtj;
            for (std::size_t j = 0; j < m; ++j)
                if (fy[j] != 0.0)
                    b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += wi * fy[j];
        }
    });
    return b;
}

void require_grid_covers(const FlowDiffeo& psi, const QuadratureGrid& grid) {
    if (!psi.stages().empty() && !grid.box.contains(psi.support_box()))
        throw std::invalid_argument("quadrature box does not contain the flow support");
}

}  // namespace

Eigen::MatrixXd rep_matrix_coeff(const FlowDiffeo& psi, const BasisFamily& basis,
                                 const QuadratureGrid& grid, double accept_tol) {
    require_grid_covers(psi, grid);
    const Eigen::MatrixXd fine = rep_single_resolution(psi, basis, grid);
    const Eigen::MatrixXd coarse = rep_single_resolution(psi, basis, grid.coarser());
    const double est = (fine - coarse).cwiseAbs().maxCoeff();
    if (est > accept_tol) {
        std::ostringstream os;
        os << "rep_matrix_coeff: estimated quadrature error " << est << " exceeds " << accept_tol
           << "; refine the grid (try resolution " << 2 * grid.resolution << ")";
        throw QuadratureError(os.str());
    }
    return fine;
}

namespace {

double jacobian_integral(const FlowDiffeo& psi, const QuadratureGrid& grid) {
    // integral of (det Dpsi(x))^{1/2} - 1; by the change of variables x = psi(y)
    // this equals the same integral of the inverse-flow determinant, so the
    // forward form here is an independent route from the backward transport
    // used by the representation pairing.  Vanishes off the flow support.
    if (psi.stages().empty()) return 0.0;
    const Box support = psi.support_box();
    double acc = 0.0;
    grid.for_each_node([&](const Vec2& x, double w) {
        if (!support.contains(x)) return;
        const double det = psi.apply_with_jacobian(x).second.determinant();
        if (!(det > 0.0)) throw NumericalError("free_boson: nonpositive Jacobian determinant");
        acc += w * (std::sqrt(det) - 1.0);
    });
    return acc;
}

double omega_pairing_single(const FlowDiffeo& psi, const Box& region,
                            const QuadratureGrid& grid) {
    // sum over region nodes of (J^{1/2}(x) Omega(psi^{-1}x) - 1); identical to
    // the 1x1 rep integral minus |Omega|^2 on the same nodes.
    const FlowDiffeo inv = psi.inverse();
    const bool trivial = psi.stages().empty();
    const Box support = trivial ? Box{0, 0, 0, 0} : psi.support_box();
    double acc = 0.0;
    grid.for_each_node([&](const Vec2& x, double w) {
        if (!region.contains(x)) return;
        if (trivial || !support.contains(x)) return;  // integrand exactly zero
        auto [y, phi] = inv.apply_with_jacobian(x);
        const double det = phi.determinant();
        if (!(det > 0.0)) throw NumericalError("omega_pairing: nonpositive Radon-Nikodym weight");
        acc += w * (std::sqrt(det) * (region.contains(y) ? 1.0 : 0.0) - 1.0);
    });
    return acc;
}

}  // namespace

double free_boson_functional(const FlowDiffeo& psi, const QuadratureGrid& grid,
                             double accept_tol) {
    require_grid_covers(psi, grid);
    const double fine = jacobian_integral(psi, grid);
    const double coarse = jacobian_integral(psi, grid.coarser());
    if (std::fabs(fine - coarse) > accept_tol) {
        std::ostringstream os;
        os << "free_boson_functional: estimated quadrature error " << std::fabs(fine - coarse)
           << " exceeds " << accept_tol << "; refine the grid (try resolution "
           << 2 * grid.resolution << ")";
        throw QuadratureError(os.str());
    }
    return std::exp(fine);
}

double omega_pairing(const FlowDiffeo& psi, const Box& region, const QuadratureGrid& grid,
                     double accept_tol) {
    require_grid_covers(psi, grid);
    if (!psi.stages().empty() && !region.contains(psi.support_box()))
        throw std::invalid_argument("omega_pairing: region must contain the flow support");
    const double fine = omega_pairing_single(psi, region, grid);
    const double coarse = omega_pairing_single(psi, region, grid.coarser());
    if (std::fabs(fine - coarse) > accept_tol) {
        std::ostringstream os;
        os << "omega_pairing: estimated quadrature error " << std::fabs(fine - coarse)
           << " exceeds " << accept_tol << "; refine the grid (try resolution "
           << 2 * grid.resolution << ")";
        throw QuadratureError(os.str());
    }
    return fine;
}

CompressedDiffeoValue diffeo_compressed_functional(const VKParams& params, const FlowDiffeo& psi,
                                                   const BasisFamily& basis,
                                                   const QuadratureGrid& grid) {
    const Eigen::MatrixXd b = rep_matrix_coeff(psi, basis, grid);
    Matrix bc = b.cast<Complex>();
    CompressedDiffeoValue out;
    out.block_norm = bc.jacobiSvd().singularValues()(0);
    if (out.block_norm > 1.0 + 1e-6) {
        std::ostringstream os;
        os << "diffeo_compressed_functional: block norm " << out.block_norm
           << " exceeds 1 + 1e-6; quadrature failure";
        throw QuadratureError(os.str());
    }
    if (out.block_norm > 1.0) {
        bc /= out.block_norm;
        out.rescaled = true;
    }
    out.value = vk_f_matrix(params, ContractionMatrix::make(bc, 1e-12)).determinant();
    return out;
}

}  // namespace vklab
