#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// None of them call into the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracles {

/// Monte-Carlo estimate of the sigma-area inside alpha_b and its standard
/// error. sigma gives the cylinder total mass 1, so the area is the hit
/// fraction for uniform (z, theta). Chunks use derived seeds.
inline std::pair<double, double> monte_carlo_area(double b, std::size_t samples, std::uint64_t seed) {
    constexpr std::size_t chunks = 16;
    std::size_t hits = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::mt19937_64 rng(seed + 7919 * c);
        std::uniform_real_distribution<double> z(-1.0, 1.0), th(-std::numbers::pi, std::numbers::pi);
        for (std::size_t i = 0; i < samples / chunks; ++i) {
            double zz = z(rng), ct = std::cos(th(rng));
            if (ct >= b && zz * zz * (ct + 1) <= ct - b) ++hits;
        }
    }
    double n = static_cast<double>(samples / chunks * chunks);
    double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1 - p) / n)};
}

/// Lowest G on {F = a}: brute-force minimum of z1 z2 - rho1 rho2 over a z1 grid.
inline double g_min_by_grid(double a) {
    double best = 2;
    const int n = 200000;
    for (int i = 0; i <= n; ++i) {
        double z1 = -1 + 2.0 * i / n, z2 = a - z1;
        if (std::abs(z2) > 1) continue;
        best = std::min(best, z1 * z2 - std::sqrt((1 - z1 * z1) * (1 - z2 * z2)));
    }
    return best;
}

/// Rank of a small dense matrix by elimination with partial pivoting.
inline std::size_t float_rank(std::vector<std::vector<double>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        for (std::size_t i = r; i < rows; ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
        if (std::abs(m[piv][c]) < 1e-9) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            double f = m[i][c] / m[r][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[i][cc] -= f * m[r][cc];
        }
        ++r;
    }
    return r;
}

/// (B, d0) retyped from the printed formulas, with generators as labels.
struct LoopModel {
    int k_max;

    std::vector<std::string> in_degree(int n) const {
        if (n == 0) return {"x0"};
        if (n == 1) return {"mc1"};
        if (n == 2) return {"x2", "mh1"};
        std::vector<std::string> out;
        if (n % 2 == 1) {
            int k = (n - 1) / 2;
            if (k <= k_max) out.push_back("Mc" + std::to_string(k));
            if (k + 1 <= k_max) out.push_back("mc" + std::to_string(k + 1));
        } else {
            int k = (n - 2) / 2;
            if (k <= k_max) out.push_back("Mh" + std::to_string(k));
            if (k + 1 <= k_max) out.push_back("mh" + std::to_string(k + 1));
        }
        return out;
    }

    std::map<std::string, double> d0(const std::string& g) const {
        if (g[0] == 'x') return {};
        auto kind = g.substr(0, 2);
        int k = std::stoi(g.substr(2));
        auto mh = [](int j) { return "mh" + std::to_string(j); };
        auto Mh = [](int j) { return "Mh" + std::to_string(j); };
        if (kind == "mc" && k == 2) return {{mh(1), 2}, {"x2", 2}};
        if (kind == "mc" && k >= 3) return {{mh(k - 1), 2}, {Mh(k - 2), 2}};
        if (kind == "Mc" && k == 1) return {{mh(1), 2}, {"x2", 2}};
        if (kind == "Mc" && k >= 2) return {{mh(k), 2}, {Mh(k - 1), 2}};
        return {};
    }

    std::size_t rank(int n) const {
        if (n <= 0) return 0;
        auto src = in_degree(n), dst = in_degree(n - 1);
        std::vector<std::vector<double>> m(dst.size(), std::vector<double>(src.size(), 0));
        for (std::size_t j = 0; j < src.size(); ++j)
            for (auto [t, v] : d0(src[j]))
                for (std::size_t i = 0; i < dst.size(); ++i)
                    if (dst[i] == t) m[i][j] = v;
        return float_rank(m);
    }

    std::size_t betti(int n) const { return in_degree(n).size() - rank(n) - rank(n + 1); }
};

}  // namespace oracles
