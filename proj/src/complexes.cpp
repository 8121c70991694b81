#include "qfloer/complexes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qfloer::complexes {

using linalg::SparseMatrix;
using linalg::SparseVector;

GradedFilteredComplex::GradedFilteredComplex(std::vector<BasisElement> basis,
                                             const std::vector<DifferentialEntry>& entries)
    : basis_(std::move(basis)), boundaries_(basis_.size()) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& e = basis_[i];
        if (e.filtration < 0) {
            throw std::invalid_argument("basis element '" + e.label + "' has negative filtration level");
        }
        if (!by_label_.emplace(e.label, i).second) {
            throw std::invalid_argument("duplicate basis label '" + e.label + "'");
        }
    }
    for (const auto& entry : entries) {
        if (entry.from >= basis_.size() || entry.to >= basis_.size()) {
            throw std::out_of_range("differential entry references a missing basis element");
        }
        if (entry.coefficient == 0) continue;
        auto& chain = boundaries_[entry.from];
        auto [it, inserted] = chain.emplace(entry.to, entry.coefficient);
        if (!inserted) {
            it->second += entry.coefficient;
            if (it->second == 0) chain.erase(it);
        }
    }
}

Chain GradedFilteredComplex::apply(const Chain& c) const {
    Chain out;
    for (const auto& [i, coef] : c) linalg::add_scaled(out, boundaries_.at(i), coef);
    return out;
}

std::vector<DifferentialEntry> GradedFilteredComplex::entries() const {
    std::vector<DifferentialEntry> out;
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
        for (const auto& [j, c] : boundaries_[i]) out.push_back({i, j, c});
    }
    return out;
}

std::optional<std::size_t> GradedFilteredComplex::find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::size_t GradedFilteredComplex::index_of(std::string_view label) const {
    auto i = find(label);
    if (!i) throw std::out_of_range("no basis element labelled '" + std::string(label) + "'");
    return *i;
}

std::vector<std::size_t> GradedFilteredComplex::indices_in_degree(int degree) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].degree == degree) out.push_back(i);
    }
    return out;
}

std::vector<int> GradedFilteredComplex::degrees() const {
    std::set<int> ds;
    for (const auto& e : basis_) ds.insert(e.degree);
    return {ds.begin(), ds.end()};
}

int GradedFilteredComplex::min_filtration() const {
    int m = 0;
    bool first = true;
    for (const auto& e : basis_) {
        if (first || e.filtration < m) m = e.filtration;
        first = false;
    }
    return m;
}

int GradedFilteredComplex::max_filtration() const {
    int m = 0;
    for (const auto& e : basis_) m = std::max(m, e.filtration);
    return m;
}

namespace {

// Position of each global index inside its degree block.
std::unordered_map<std::size_t, std::size_t> local_positions(const std::vector<std::size_t>& indices) {
    std::unordered_map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < indices.size(); ++k) pos.emplace(indices[k], k);
    return pos;
}

Chain to_global(const SparseVector& local, const std::vector<std::size_t>& indices) {
    Chain out;
    for (const auto& [k, v] : local) out.emplace(indices[k], v);
    return out;
}

std::vector<Chain> boundaries_into(const GradedFilteredComplex& complex, int degree) {
    std::vector<Chain> out;
    for (std::size_t i : complex.indices_in_degree(degree + 1)) {
        const Chain& b = complex.boundary(i);
        Chain restricted;
        for (const auto& [j, c] : b) {
            if (complex.element(j).degree == degree) restricted.emplace(j, c);
        }
        if (!restricted.empty()) out.push_back(std::move(restricted));
    }
    return out;
}

std::vector<Chain> cycles_in(const GradedFilteredComplex& complex, int degree) {
    const auto indices = complex.indices_in_degree(degree);
    std::vector<Chain> out;
    for (const auto& v : linalg::kernel_basis(complex.differential_matrix(degree))) {
        out.push_back(to_global(v, indices));
    }
    return out;
}

}  // namespace

SparseMatrix GradedFilteredComplex::differential_matrix(int degree) const {
    const auto cols = indices_in_degree(degree);
    const auto rows = indices_in_degree(degree - 1);
    const auto row_pos = local_positions(rows);
    SparseMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const auto& [j, v] : boundaries_[cols[c]]) {
            auto it = row_pos.find(j);
            if (it != row_pos.end()) m.set(it->second, c, v);
        }
    }
    return m;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::degree: return "degree";
        case ViolationKind::filtration: return "filtration";
        case ViolationKind::square: return "square";
        case ViolationKind::action: return "action";
    }
    return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [kind](const auto& i) { return i.kind == kind; }));
}

ValidationReport validate(const GradedFilteredComplex& complex) {
    ValidationReport report;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        const auto& src = complex.element(i);
        for (const auto& [j, c] : complex.boundary(i)) {
            const auto& dst = complex.element(j);
            const std::string edge = src.label + " -> " + dst.label;
            if (dst.degree != src.degree - 1) {
                report.issues.push_back({ViolationKind::degree, i, j,
                                         edge + ": degree " + std::to_string(src.degree) + " -> " +
                                             std::to_string(dst.degree)});
            }
            if (dst.filtration < src.filtration) {
                report.issues.push_back({ViolationKind::filtration, i, j,
                                         edge + ": filtration " + std::to_string(src.filtration) + " -> " +
                                             std::to_string(dst.filtration)});
            }
            if (!(dst.action < src.action)) {
                report.issues.push_back({ViolationKind::action, i, j,
                                         edge + ": action " + to_display_string(src.action) + " -> " +
                                             to_display_string(dst.action)});
            }
        }
        const Chain dd = complex.apply(complex.boundary(i));
        for (const auto& [j, c] : dd) {
            report.issues.push_back({ViolationKind::square, i, j,
                                     "d^2(" + src.label + ") has coefficient " + to_display_string(c) +
                                         " on " + complex.element(j).label});
        }
    }
    return report;
}

HomologyGroup homology(const GradedFilteredComplex& complex, int degree) {
    const auto cycles = cycles_in(complex, degree);
    const auto boundaries = boundaries_into(complex, degree);
    HomologyGroup h;
    h.degree = degree;
    try {
        auto q = linalg::quotient_dimension(boundaries, cycles);
        h.dimension = q.dimension;
        h.representatives = std::move(q.representatives);
    } catch (const linalg::QuotientError&) {
        throw ChainComplexError("d^2 != 0 into degree " + std::to_string(degree));
    }
    return h;
}

bool is_cycle(const GradedFilteredComplex& complex, const Chain& c) { return complex.apply(c).empty(); }

bool is_boundary(const GradedFilteredComplex& complex, int degree, const Chain& c) {
    linalg::EchelonBasis image(false);
    for (const auto& b : boundaries_into(complex, degree)) image.insert(b);
    return image.contains(c);
}

bool homologous_up_to_scalar(const GradedFilteredComplex& complex, int degree, const Chain& a,
                             const Chain& b) {
    if (!is_cycle(complex, a) || !is_cycle(complex, b)) return false;
    linalg::EchelonBasis image(false);
    for (const auto& v : boundaries_into(complex, degree)) image.insert(v);
    const Chain ra = image.reduce(a);
    const Chain rb = image.reduce(b);
    if (ra.empty() || rb.empty()) return false;
    // Reduced forms modulo a fixed echelon basis are unique, so [a] = c[b]
    // exactly when ra = c * rb.
    if (ra.size() != rb.size()) return false;
    const Rational scale = ra.begin()->second / rb.begin()->second;
    return ra == linalg::scaled(rb, scale);
}

GradedFilteredComplex induced_on(const GradedFilteredComplex& complex,
                                 const std::function<bool(const BasisElement&)>& keep) {
    std::vector<BasisElement> basis;
    std::vector<std::size_t> new_index(complex.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < complex.size(); ++i) {
        if (keep(complex.element(i))) {
            new_index[i] = basis.size();
            basis.push_back(complex.element(i));
        }
    }
    std::vector<DifferentialEntry> entries;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        if (new_index[i] == static_cast<std::size_t>(-1)) continue;
        for (const auto& [j, c] : complex.boundary(i)) {
            if (new_index[j] != static_cast<std::size_t>(-1)) entries.push_back({new_index[i], new_index[j], c});
        }
    }
    return GradedFilteredComplex(std::move(basis), entries);
}

GradedFilteredComplex quotient_above_action(const GradedFilteredComplex& complex, const Rational& threshold) {
    return induced_on(complex, [&](const BasisElement& e) { return !(e.action < threshold); });
}

GradedFilteredComplex truncate_filtration(const GradedFilteredComplex& complex, int mu) {
    if (mu < 0) throw std::invalid_argument("truncate_filtration: mu must be >= 0");
    return induced_on(complex, [mu](const BasisElement& e) { return e.filtration <= mu; });
}

GradedFilteredComplex restrict_degrees(const GradedFilteredComplex& complex, int lo, int hi) {
    return induced_on(complex, [lo, hi](const BasisElement& e) { return lo <= e.degree && e.degree <= hi; });
}

GradedFilteredComplex slice(const GradedFilteredComplex& complex, int level) {
    std::vector<BasisElement> basis;
    std::vector<std::size_t> new_index(complex.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < complex.size(); ++i) {
        if (complex.element(i).filtration == level) {
            new_index[i] = basis.size();
            basis.push_back(complex.element(i));
        }
    }
    std::vector<DifferentialEntry> entries;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        if (new_index[i] == static_cast<std::size_t>(-1)) continue;
        for (const auto& [j, c] : complex.boundary(i)) {
            if (complex.element(j).filtration == level) entries.push_back({new_index[i], new_index[j], c});
        }
    }
    return GradedFilteredComplex(std::move(basis), entries);
}

ChainMap label_map(const GradedFilteredComplex& source, const GradedFilteredComplex& target) {
    ChainMap map{0, SparseMatrix(target.size(), source.size())};
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (auto j = target.find(source.element(i).label)) map.matrix.set(*j, i, 1);
    }
    return map;
}

bool is_chain_map(const ChainMap& map, const GradedFilteredComplex& source,
                  const GradedFilteredComplex& target) {
    if (map.matrix.rows() != target.size() || map.matrix.cols() != source.size()) return false;
    const Rational sign = (map.degree_shift % 2 == 0) ? 1 : -1;
    const auto cols = map.matrix.columns();
    for (std::size_t i = 0; i < source.size(); ++i) {
        const Chain df = target.apply(cols[i]);
        Chain fd;
        for (const auto& [j, c] : source.boundary(i)) linalg::add_scaled(fd, cols[j], c);
        linalg::add_scaled(fd, df, -sign);  // fd - sign * df; zero iff d f = sign f d
        if (!fd.empty()) return false;
    }
    return true;
}

SparseMatrix induced_map_on_homology(const ChainMap& map, const GradedFilteredComplex& source,
                                     const GradedFilteredComplex& target, int degree) {
    if (!is_chain_map(map, source, target)) throw ChainComplexError("map does not commute with the differentials");
    const int target_degree = degree + map.degree_shift;
    const auto h_src = homology(source, degree);
    const auto h_tgt = homology(target, target_degree);

    // Express images modulo boundaries: boundaries first, then target reps.
    linalg::EchelonBasis basis;
    const auto bds = boundaries_into(target, target_degree);
    for (const auto& b : bds) basis.insert(b);
    const std::size_t offset = basis.inserted();
    for (const auto& r : h_tgt.representatives) basis.insert(r);

    const auto cols = map.matrix.columns();
    SparseMatrix out(h_tgt.dimension, h_src.dimension);
    for (std::size_t c = 0; c < h_src.dimension; ++c) {
        Chain image;
        for (const auto& [j, v] : h_src.representatives[c]) linalg::add_scaled(image, cols[j], v);
        auto combo = basis.express(image);
        if (!combo) throw ChainComplexError("image of a cycle is not a cycle in the target");
        for (const auto& [tag, v] : *combo) {
            if (tag >= offset) out.set(tag - offset, c, v);
        }
    }
    return out;
}

std::string describe(const GradedFilteredComplex& complex, const Chain& c) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, v] : c) {
        if (!first) os << " + ";
        first = false;
        if (v != 1) os << to_display_string(v) << "*";
        os << complex.element(i).label;
    }
    return os.str();
}

}  // namespace qfloer::complexes
