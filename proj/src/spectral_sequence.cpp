#include "qfloer/spectral_sequence.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace qfloer::complexes {

const PageEntry* Page::entry(int degree, int level) const {
    for (const auto& e : entries) {
        if (e.degree == degree && e.level == level) return &e;
    }
    return nullptr;
}

std::size_t Page::dimension(int degree, int level) const {
    const PageEntry* e = entry(degree, level);
    return e ? e->dimension : 0;
}

std::size_t Page::total(int degree) const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        if (e.degree == degree) n += e.dimension;
    }
    return n;
}

bool Page::differentials_vanish() const {
    return std::all_of(differentials.begin(), differentials.end(),
                       [](const PageDifferential& d) { return d.matrix.is_zero(); });
}

namespace {

class Engine {
public:
    explicit Engine(const GradedFilteredComplex& c) : c_(c), smin_(c.min_filtration()), smax_(c.max_filtration()) {}

    int min_level() const { return smin_; }
    int max_level() const { return smax_; }

    // Basis of Z^r_s in degree j. For s below the lowest level F^s is the
    // whole complex but the condition on dx still refers to F^{s+r}.
    const std::vector<Chain>& cycles(int r, int s, int j) {
        const auto key = std::make_tuple(r, s, j);
        if (auto it = z_.find(key); it != z_.end()) return it->second;

        std::vector<Chain> out;
        if (s <= smax_) {
            std::vector<std::size_t> cols;
            for (std::size_t i : c_.indices_in_degree(j)) {
                if (c_.element(i).filtration >= s) cols.push_back(i);
            }
            // Rows: degree j-1 elements at levels s .. s+r-1, which dx must avoid.
            std::map<std::size_t, std::size_t> row_pos;
            for (std::size_t i : c_.indices_in_degree(j - 1)) {
                const int lv = c_.element(i).filtration;
                if (lv >= s && lv < s + r) row_pos.emplace(i, row_pos.size());
            }
            linalg::SparseMatrix m(row_pos.size(), cols.size());
            for (std::size_t k = 0; k < cols.size(); ++k) {
                for (const auto& [t, v] : c_.boundary(cols[k])) {
                    if (auto it = row_pos.find(t); it != row_pos.end()) m.set(it->second, k, v);
                }
            }
            for (const auto& v : linalg::kernel_basis(m)) {
                Chain g;
                for (const auto& [k, x] : v) g.emplace(cols[k], x);
                out.push_back(std::move(g));
            }
        }
        return z_.emplace(key, std::move(out)).first->second;
    }

    // Z^{r-1}_{s+1} + d Z^{r-1}_{s-r+1} in degree j.
    std::vector<Chain> denominator(int r, int s, int j) {
        std::vector<Chain> out = cycles(r - 1, s + 1, j);
        for (const auto& x : cycles(r - 1, s - r + 1, j + 1)) {
            Chain dx = c_.apply(x);
            if (!dx.empty()) out.push_back(std::move(dx));
        }
        return out;
    }

    PageEntry entry(int r, int s, int j) {
        PageEntry e;
        e.degree = j;
        e.level = s;
        const auto denom = denominator(r, s, j);
        auto q = linalg::quotient_dimension(denom, cycles(r, s, j));
        e.dimension = q.dimension;
        e.representatives = std::move(q.representatives);
        return e;
    }

    PageDifferential differential(int r, const PageEntry& src, const PageEntry* tgt) {
        PageDifferential d;
        d.degree = src.degree;
        d.source_level = src.level;
        const std::size_t rows = tgt ? tgt->dimension : 0;
        d.matrix = linalg::SparseMatrix(rows, src.dimension);
        if (!tgt || rows == 0) return d;
        linalg::EchelonBasis basis;
        for (const auto& v : denominator(r, tgt->level, tgt->degree)) basis.insert(v);
        const std::size_t offset = basis.inserted();
        for (const auto& v : tgt->representatives) basis.insert(v);
        for (std::size_t c = 0; c < src.representatives.size(); ++c) {
            const Chain y = c_.apply(src.representatives[c]);
            auto combo = basis.express(y);
            if (!combo) throw ChainComplexError("page differential leaves Z^r of the target");
            for (const auto& [tag, v] : *combo) {
                if (tag >= offset) d.matrix.set(tag - offset, c, v);
            }
        }
        return d;
    }

private:
    const GradedFilteredComplex& c_;
    int smin_;
    int smax_;
    std::map<std::tuple<int, int, int>, std::vector<Chain>> z_;
};

}  // namespace

SpectralSequencePages spectral_sequence(const GradedFilteredComplex& complex, int max_page) {
    const auto report = validate(complex);
    if (!report.valid()) {
        throw ChainComplexError("spectral_sequence: invalid complex (" + report.issues.front().message + ")");
    }
    SpectralSequencePages out;
    if (complex.size() == 0) {
        out.pages.push_back(Page{1, {}, {}});
        return out;
    }

    Engine engine(complex);
    out.min_level = engine.min_level();
    out.max_level = engine.max_level();
    const int levels = out.max_level - out.min_level + 1;
    const int last = std::max(max_page, levels + 1);
    const auto degrees = complex.degrees();

    for (int r = 1; r <= last; ++r) {
        Page page;
        page.r = r;
        for (int j : degrees) {
            for (int s = out.min_level; s <= out.max_level; ++s) {
                auto e = engine.entry(r, s, j);
                if (e.dimension > 0) page.entries.push_back(std::move(e));
            }
        }
        for (const auto& e : page.entries) {
            page.differentials.push_back(engine.differential(r, e, page.entry(e.degree - 1, e.level + r)));
        }
        out.pages.push_back(std::move(page));
    }

    int degeneration = last;
    while (degeneration > 1 && out.page(degeneration - 1).differentials_vanish()) --degeneration;
    if (!out.page(last).differentials_vanish()) {
        throw ChainComplexError("spectral_sequence: differentials survive past the filtration length");
    }
    out.degeneration_page = degeneration;
    return out;
}

}  // namespace qfloer::complexes
