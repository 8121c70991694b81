#include "qfloer/semitoric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>

namespace qfloer::semitoric {

namespace {

constexpr double kFiberTolerance = 1e-9;
constexpr double kExactTolerance = 1e-12;

std::array<double, 6> coords(const Point& p) { return {p.x1, p.y1, p.z1, p.x2, p.y2, p.z2}; }

double radius(double z) { return std::sqrt(std::max(0.0, 1.0 - z * z)); }

// 1 - |cos phi| for the z1 slice of N_{a,b}; negative when the slice misses.
double margin(double a, double b, double z1) {
    const double z2 = a - z1;
    const double prod = radius(z1) * radius(z2);
    const double rest = b - z1 * z2;
    if (prod < 1e-14) return std::abs(rest) <= kExactTolerance ? 0.0 : -std::abs(rest);
    return 1.0 - std::abs(rest / prod);
}

bool near(double x, double y) { return std::abs(x - y) <= kExactTolerance; }

}  // namespace

Point involution(const Point& p) {
    const auto v = involution(coords(p));
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

double manifold_defect(const Point& p) {
    const double s1 = p.x1 * p.x1 + p.y1 * p.y1 + p.z1 * p.z1 - 1.0;
    const double s2 = p.x2 * p.x2 + p.y2 * p.y2 + p.z2 * p.z2 - 1.0;
    return std::max(std::abs(s1), std::abs(s2));
}

MomentValue moment_map(const Point& p) {
    const double defect = manifold_defect(p);
    if (!(defect <= kManifoldTolerance)) {
        throw std::invalid_argument("point is off S^2 x S^2 (defect " + std::to_string(defect) + ")");
    }
    const auto v = coords(p);
    return {moment_f(v), moment_g(v)};
}

double p_norm(double g) {
    if (!(g >= -1.0 && g <= 1.0)) throw std::domain_error("p_norm: G must lie in [-1, 1]");
    return std::sqrt((1.0 + g) / 2.0);
}

InvolutionIdentity verify_involution_identity() {
    InvolutionIdentity out{true, 0};
    std::array<long long, 6> v{};
    for (int code = 0; code < 729; ++code) {
        int c = code;
        for (auto& x : v) {
            x = c % 3 - 1;
            c /= 3;
        }
        const auto w = involution(v);
        if (moment_f(w) != -moment_f(v) || moment_g(w) != moment_g(v)) out.holds = false;
        ++out.grid_points;
    }
    return out;
}

Point fiber_point(double a, double b, double z1, double phi_sign, double psi) {
    const double z2 = a - z1;
    const double r1 = radius(z1);
    const double r2 = radius(z2);
    const double prod = r1 * r2;
    const double c = prod > 0 ? std::clamp((b - z1 * z2) / prod, -1.0, 1.0) : 1.0;
    const double phi = (phi_sign < 0 ? -1.0 : 1.0) * std::acos(c);
    return {r1 * std::cos(psi + phi), r1 * std::sin(psi + phi), z1, r2 * std::cos(psi), r2 * std::sin(psi), z2};
}

FiberSearch search_fiber(double a, double b) {
    FiberSearch out;
    const double lo = std::max(-1.0, a - 1.0);
    const double hi = std::min(1.0, a + 1.0);
    if (lo > hi) return out;

    std::vector<double> grid{lo, hi, a / 2.0};
    constexpr int steps = 4000;
    for (int i = 1; i < steps; ++i) grid.push_back(lo + (hi - lo) * i / steps);
    for (double z : grid) {
        if (z < lo || z > hi) continue;
        const double m = margin(a, b, z);
        if (m > out.best_margin) {
            out.best_margin = m;
            out.best_z1 = z;
        }
    }
    const double h = (hi - lo) / steps;
    const double left = std::max(lo, out.best_z1 - h);
    const double right = std::min(hi, out.best_z1 + h);
    if (right > left) {
        auto neg = [&](double z) { return -margin(a, b, z); };
        const auto [z, v] = boost::math::tools::brent_find_minima(neg, left, right, 50);
        if (-v > out.best_margin) {
            out.best_margin = -v;
            out.best_z1 = z;
        }
    }
    out.nonempty = out.best_margin >= -kFiberTolerance;
    out.regular = out.best_margin > kFiberTolerance;
    return out;
}

std::vector<Point> sample_fiber(double a, double b, std::size_t n, std::uint64_t seed) {
    const FiberSearch s = search_fiber(a, b);
    std::vector<Point> out;
    if (!s.nonempty) return out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    const double lo = std::max(-1.0, a - 1.0);
    const double hi = std::min(1.0, a + 1.0);
    std::uniform_real_distribution<double> slice(lo, hi);
    while (out.size() < n) {
        double z1 = s.best_z1;
        if (s.regular) {
            for (int attempt = 0; attempt < 10000; ++attempt) {
                const double z = slice(rng);
                if (margin(a, b, z) >= 0) {
                    z1 = z;
                    break;
                }
            }
        }
        out.push_back(fiber_point(a, b, z1, sign(rng), angle(rng)));
    }
    return out;
}

InvolutionCertificate involution_displaces(double a, double b, std::size_t samples, std::uint64_t seed) {
    InvolutionCertificate out;
    out.displaced = std::abs(a) > kExactTolerance;
    for (const auto& p : sample_fiber(a, b, samples, seed)) {
        const auto m = moment_map(involution(p));
        out.max_deviation = std::max({out.max_deviation, std::abs(m.f + a), std::abs(m.g - b)});
        ++out.samples;
    }
    return out;
}

AreaResult alpha_area(double b) {
    if (!(b > -1.0 && b < 1.0)) throw std::domain_error("alpha_area: b must lie in (-1, 1)");
    const double theta0 = std::acos(b);
    auto integrand = [theta0](double u) {
        const double w = u * u;
        // cos(theta0 - w) - cos(theta0), written without cancellation.
        const double num = 2.0 * std::sin(theta0 - w / 2.0) * std::sin(w / 2.0);
        const double den = std::cos(theta0 - w) + 1.0;
        return 2.0 * u * std::sqrt(std::max(0.0, num) / den);
    };
    double err = 0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::sqrt(theta0), 15, 1e-14, &err);
    return {value / std::numbers::pi, err / std::numbers::pi};
}

std::optional<double> alpha_height(double b, double theta) {
    const double c = std::cos(theta);
    if (c < b) return std::nullopt;
    return std::sqrt((c - b) / (c + 1.0));
}

std::string to_string(FiberKind k) {
    switch (k) {
        case FiberKind::empty: return "empty";
        case FiberKind::lagrangian_torus: return "lagrangian_torus";
        case FiberKind::critical_circle: return "critical_circle";
        case FiberKind::anti_diagonal: return "anti_diagonal_L";
        case FiberKind::monotone_torus: return "monotone_torus_K";
        case FiberKind::diagonal_boundary: return "diagonal_boundary";
    }
    return "unknown";
}

std::string to_string(Displaceability d) {
    switch (d) {
        case Displaceability::involution: return "involution";
        case Displaceability::inside_pi: return "inside_pi";
        case Displaceability::not_known: return "not_known";
        case Displaceability::vacuous: return "vacuous";
    }
    return "unknown";
}

MomentFiber classify_fiber(double a, double b) {
    MomentFiber out;
    out.a = a;
    out.b = b;
    if (near(a, 0) && near(b, -1)) {
        out.kind = FiberKind::anti_diagonal;
        out.displaceability = Displaceability::not_known;
        out.note = "the anti-diagonal sphere, zero section of the cotangent model";
        return out;
    }
    if (near(a, 0) && near(b, -0.5)) {
        out.kind = FiberKind::monotone_torus;
        out.displaceability = Displaceability::not_known;
        out.note = "the monotone torus on the level |p| = 1/2";
        return out;
    }
    const FiberSearch s = search_fiber(a, b);
    if (!s.nonempty) {
        out.kind = FiberKind::empty;
        out.displaceability = Displaceability::vacuous;
        out.note = "outside the moment image";
        return out;
    }
    if (near(b, 1)) {
        out.kind = FiberKind::diagonal_boundary;
    } else {
        out.kind = s.regular ? FiberKind::lagrangian_torus : FiberKind::critical_circle;
    }
    if (!near(a, 0)) {
        out.displaceability = Displaceability::involution;
        out.note = "the involution maps it to the disjoint fiber over (-a, b)";
        return out;
    }
    if (out.kind == FiberKind::lagrangian_torus && b > -0.5 && b < 1.0) {
        const double area = alpha_area(b).value;
        out.witness_area = area;
        if (area < 0.5) {
            out.displaceability = Displaceability::inside_pi;
            out.note = "alpha_b encloses sigma-area < 1/2 of the cylinder";
            return out;
        }
    }
    out.displaceability = Displaceability::not_known;
    return out;
}

MomentSample moment_image_sample(std::size_t n, std::uint64_t seed, std::size_t bins) {
    if (n == 0) throw std::invalid_argument("moment_image_sample: n must be >= 1");
    if (bins == 0) throw std::invalid_argument("moment_image_sample: bins must be >= 1");
    MomentSample out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> height(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    out.cloud.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = height(rng), t1 = angle(rng), z2 = height(rng), t2 = angle(rng);
        const double r1 = radius(z1), r2 = radius(z2);
        const Point p{r1 * std::cos(t1), r1 * std::sin(t1), z1, r2 * std::cos(t2), r2 * std::sin(t2), z2};
        out.cloud.push_back(moment_map(p));
    }
    const double width = 4.0 / static_cast<double>(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        out.sketch.push_back({-2.0 + width * k, -2.0 + width * (k + 1), 2.0, -2.0, 0});
    }
    for (const auto& m : out.cloud) {
        auto k = static_cast<std::size_t>(std::clamp((m.f + 2.0) / width, 0.0, static_cast<double>(bins - 1)));
        auto& bin = out.sketch[k];
        bin.g_min = std::min(bin.g_min, m.g);
        bin.g_max = std::max(bin.g_max, m.g);
        ++bin.count;
    }
    std::erase_if(out.sketch, [](const MomentSample::Bin& b) { return b.count == 0; });
    return out;
}

void write_moment_svg(std::ostream& os, const MomentSample& sample) {
    constexpr double w = 640, h = 400, pad = 40;
    auto sx = [&](double f) { return pad + (f + 2.0) / 4.0 * (w - 2 * pad); };
    auto sy = [&](double g) { return h - pad - (g + 1.0) / 2.0 * (h - 2 * pad); };
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g fill=\"#7a9cc6\" fill-opacity=\"0.35\">\n";
    for (const auto& m : sample.cloud) os << "<circle cx=\"" << sx(m.f) << "\" cy=\"" << sy(m.g) << "\" r=\"0.8\"/>\n";
    os << "</g>\n";
    os << "<polyline fill=\"none\" stroke=\"#333\" stroke-width=\"1\" points=\"";
    for (const auto& b : sample.sketch) os << sx((b.f_lo + b.f_hi) / 2) << "," << sy(b.g_min) << " ";
    for (auto it = sample.sketch.rbegin(); it != sample.sketch.rend(); ++it) {
        os << sx((it->f_lo + it->f_hi) / 2) << "," << sy(it->g_max) << " ";
    }
    os << "\"/>\n";
    os << "<line x1=\"" << sx(-2) << "\" y1=\"" << sy(-0.5) << "\" x2=\"" << sx(2) << "\" y2=\"" << sy(-0.5)
       << "\" stroke=\"#c0392b\" stroke-dasharray=\"6,4\"/>\n";
    os << "<circle cx=\"" << sx(0) << "\" cy=\"" << sy(-1) << "\" r=\"4\" fill=\"#27ae60\"/>\n";
    os << "<text x=\"" << sx(0) + 6 << "\" y=\"" << sy(-1) + 14 << "\" font-size=\"12\">L (0,-1)</text>\n";
    os << "<circle cx=\"" << sx(0) << "\" cy=\"" << sy(-0.5) << "\" r=\"4\" fill=\"#c0392b\"/>\n";
    os << "<text x=\"" << sx(0) + 6 << "\" y=\"" << sy(-0.5) - 6 << "\" font-size=\"12\">K (0,-1/2)</text>\n";
    os << "<text x=\"" << pad << "\" y=\"" << pad / 2 << "\" font-size=\"12\">Phi = (F, G), "
       << sample.cloud.size() << " samples</text>\n";
    os << "</svg>\n";
}

void write_area_csv(std::ostream& os, const std::vector<double>& bs) {
    os << "b,area\n";
    os << std::setprecision(12);
    for (double b : bs) os << b << "," << alpha_area(b).value << "\n";
}

}  // namespace qfloer::semitoric
