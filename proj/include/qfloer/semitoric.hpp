#pragma once

// The semitoric model of S^2 x S^2: moment map Phi = (F, G) with
//   F = z1 + z2,   G = x1 x2 + y1 y2 + z1 z2,
// its fibers N_{a,b}, the involution that flips F, and the curves
//   alpha_b = { z^2 = (cos theta - b) / (cos theta + 1) }
// in the cylinder C = (-1, 1) x S^1 with sigma = dz dtheta / (4 pi).
//
// Everything here is floating point: manifold membership is tested to
// 1e-12 and the area quadrature targets 1e-10 absolute error.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfloer::semitoric {

inline constexpr double kManifoldTolerance = 1e-12;
inline constexpr double kQuadratureTolerance = 1e-10;

struct Point {
    double x1, y1, z1, x2, y2, z2;
};

struct MomentValue {
    double f;
    double g;
};

/// F and G on plain coordinates, for any scalar type.
template <typename T>
T moment_f(const std::array<T, 6>& v) {
    return v[2] + v[5];
}

template <typename T>
T moment_g(const std::array<T, 6>& v) {
    return v[0] * v[3] + v[1] * v[4] + v[2] * v[5];
}

template <typename T>
std::array<T, 6> involution(const std::array<T, 6>& v) {
    return {-v[0], v[1], -v[2], -v[3], v[4], -v[5]};
}

Point involution(const Point& p);

/// Largest |x_i^2 + y_i^2 + z_i^2 - 1|.
double manifold_defect(const Point& p);

/// Throws std::invalid_argument for points off S^2 x S^2.
MomentValue moment_map(const Point& p);

/// |p| = sqrt((1 + G) / 2); std::domain_error outside [-1, 1].
double p_norm(double g);

/// F o involution = -F and G o involution = G as polynomial identities:
/// both sides have degree <= 2 in every coordinate, so agreement on the
/// exact grid {-1, 0, 1}^6 proves them.
struct InvolutionIdentity {
    bool holds = false;
    std::size_t grid_points = 0;
};

InvolutionIdentity verify_involution_identity();

/// Point of N_{a,b}: v2 = (rho2 cos psi, rho2 sin psi, a - z1),
/// v1 = (rho1 cos(psi + phi), rho1 sin(psi + phi), z1) with
/// cos phi = (b - z1 z2) / (rho1 rho2).
Point fiber_point(double a, double b, double z1, double phi_sign, double psi);

struct FiberSearch {
    bool nonempty = false;
    bool regular = false;  // some z1 leaves |cos phi| < 1 strictly
    double best_z1 = 0;
    double best_margin = -1;  // max over z1 of 1 - |cos phi|
};

/// Deterministic scan over z1 with local refinement. Margin within 1e-9 of
/// zero means the fiber is met only where cos phi = +-1.
FiberSearch search_fiber(double a, double b);

/// n points of N_{a,b} (empty when the fiber is), from a fixed seed.
std::vector<Point> sample_fiber(double a, double b, std::size_t n, std::uint64_t seed);

struct InvolutionCertificate {
    bool displaced = false;  // a != 0
    std::size_t samples = 0;
    double max_deviation = 0;  // |Phi(iota p) - (-a, b)| over the samples
};

InvolutionCertificate involution_displaces(double a, double b, std::size_t samples = 100, std::uint64_t seed = 7);

struct AreaResult {
    double value;
    double error_estimate;
};

/// sigma-area enclosed by alpha_b:
///   (1/pi) * integral over 0 <= theta <= arccos b of sqrt((cos theta - b)/(cos theta + 1)),
/// computed with theta = arccos(b) - u^2 to remove the square-root endpoint.
/// std::domain_error unless -1 < b < 1.
AreaResult alpha_area(double b);

/// z(theta) >= 0 on alpha_b, or nullopt where cos theta < b.
std::optional<double> alpha_height(double b, double theta);

enum class FiberKind { empty, lagrangian_torus, critical_circle, anti_diagonal, monotone_torus, diagonal_boundary };
enum class Displaceability { involution, inside_pi, not_known, vacuous };

std::string to_string(FiberKind k);
std::string to_string(Displaceability d);

struct MomentFiber {
    double a = 0;
    double b = 0;
    FiberKind kind = FiberKind::empty;
    Displaceability displaceability = Displaceability::not_known;
    std::optional<double> witness_area;  // area(alpha_b) for inside_pi
    std::string note;
};

MomentFiber classify_fiber(double a, double b);

struct MomentSample {
    std::vector<MomentValue> cloud;
    struct Bin {
        double f_lo, f_hi;
        double g_min, g_max;
        std::size_t count;
    };
    std::vector<Bin> sketch;  // per F-bin extremes of G over the cloud
};

/// n uniform points of S^2 x S^2 pushed through Phi; identical for equal seeds.
MomentSample moment_image_sample(std::size_t n, std::uint64_t seed, std::size_t bins = 40);

void write_moment_svg(std::ostream& os, const MomentSample& sample);
void write_area_csv(std::ostream& os, const std::vector<double>& bs);

}  // namespace qfloer::semitoric
