#pragma once

// Spectral sequence of the filtration by level: F^s = span{elements of level >= s}.
//
// Each F^s is a subcomplex because d never lowers the level. With
//   Z^r_s = { x in F^s : dx in F^{s+r} },
//   E^r_s = Z^r_s / (Z^{r-1}_{s+1} + d Z^{r-1}_{s-r+1}),
// the page differential d^r maps E^r_s (degree j) to E^r_{s+r} (degree j-1).
// E^1_s is the homology of the level-s slice.

#include "qfloer/complexes.hpp"

#include <cstddef>
#include <vector>

namespace qfloer::complexes {

struct PageEntry {
    int degree = 0;
    int level = 0;
    std::size_t dimension = 0;
    std::vector<Chain> representatives;
};

struct PageDifferential {
    int degree = 0;        // source total degree
    int source_level = 0;  // target level is source_level + r
    linalg::SparseMatrix matrix;  // rows: target representatives, cols: source representatives
};

struct Page {
    int r = 0;
    std::vector<PageEntry> entries;
    std::vector<PageDifferential> differentials;

    const PageEntry* entry(int degree, int level) const;
    std::size_t dimension(int degree, int level) const;
    std::size_t total(int degree) const;
    bool differentials_vanish() const;
};

struct SpectralSequencePages {
    std::vector<Page> pages;  // pages[i].r == i + 1
    /// Least r with d^{r'} = 0 for every r' >= r.
    int degeneration_page = 1;
    int min_level = 0;
    int max_level = 0;

    const Page& page(int r) const { return pages.at(static_cast<std::size_t>(r - 1)); }
    const Page& infinity() const { return pages.back(); }
};

/// Computes pages 1 .. max(max_page, L + 1) where L is the number of levels;
/// from page L on all differentials vanish for degree reasons. Throws
/// ChainComplexError when the complex fails validation.
SpectralSequencePages spectral_sequence(const GradedFilteredComplex& complex, int max_page);

}  // namespace qfloer::complexes
