#pragma once

// Graded, filtered chain complexes over Q with a finite basis.
//
// Every basis element carries a homological degree, a filtration level s >= 0
// (the power of t^{-1}) and an action value. The differential lowers degree
// by one, never lowers the filtration level, squares to zero and strictly
// lowers action; `validate` reports every entry that breaks one of these.

#include "qfloer/linalg.hpp"
#include "qfloer/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qfloer::complexes {

using Chain = linalg::SparseVector;  // keyed by basis index

struct BasisElement {
    std::string label;
    int degree = 0;
    int filtration = 0;
    Rational action;

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct DifferentialEntry {
    std::size_t from;
    std::size_t to;
    Rational coefficient;

    friend bool operator==(const DifferentialEntry&, const DifferentialEntry&) = default;
};

class ChainComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GradedFilteredComplex {
public:
    GradedFilteredComplex() = default;
    /// Duplicate entries are summed; zero sums are dropped. Labels must be
    /// unique and filtration levels non-negative.
    GradedFilteredComplex(std::vector<BasisElement> basis, const std::vector<DifferentialEntry>& entries);

    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(std::size_t i) const { return basis_.at(i); }
    std::size_t size() const { return basis_.size(); }

    /// d(e_i).
    const Chain& boundary(std::size_t i) const { return boundaries_.at(i); }
    Chain apply(const Chain& c) const;

    /// All nonzero entries sorted by (from, to).
    std::vector<DifferentialEntry> entries() const;

    std::optional<std::size_t> find(std::string_view label) const;
    std::size_t index_of(std::string_view label) const;

    std::vector<std::size_t> indices_in_degree(int degree) const;
    std::vector<int> degrees() const;
    int min_filtration() const;
    int max_filtration() const;

    /// Matrix of d restricted to degree `degree`: rows index the degree-1
    /// elements, columns the degree elements, both in basis order.
    linalg::SparseMatrix differential_matrix(int degree) const;

private:
    std::vector<BasisElement> basis_;
    std::vector<Chain> boundaries_;
    std::unordered_map<std::string, std::size_t> by_label_;
};

enum class ViolationKind { degree, filtration, square, action };

std::string_view to_string(ViolationKind kind);

struct ValidationIssue {
    ViolationKind kind;
    std::size_t from;
    std::size_t to;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool valid() const { return issues.empty(); }
    std::size_t count(ViolationKind kind) const;
};

ValidationReport validate(const GradedFilteredComplex& complex);

struct HomologyGroup {
    int degree = 0;
    std::size_t dimension = 0;
    std::vector<Chain> representatives;
};

/// ker d_j / im d_{j+1}. Representatives are chosen greedily from the
/// elimination kernel basis, so they are reproducible. Throws
/// ChainComplexError when d^2 != 0 at this degree.
HomologyGroup homology(const GradedFilteredComplex& complex, int degree);

bool is_cycle(const GradedFilteredComplex& complex, const Chain& c);
bool is_boundary(const GradedFilteredComplex& complex, int degree, const Chain& c);

/// True when a and b are cycles defining nonzero classes with [a] = c[b] for
/// some nonzero scalar c.
bool homologous_up_to_scalar(const GradedFilteredComplex& complex, int degree, const Chain& a,
                             const Chain& b);

/// Keeps the elements accepted by `keep` and the entries between them. This
/// is the quotient by the dropped elements when they span a subcomplex.
GradedFilteredComplex induced_on(const GradedFilteredComplex& complex,
                                 const std::function<bool(const BasisElement&)>& keep);

/// C / D with D spanned by the elements of action < threshold.
GradedFilteredComplex quotient_above_action(const GradedFilteredComplex& complex, const Rational& threshold);

/// C / C^{(mu)}: drops every element of filtration level >= mu + 1.
GradedFilteredComplex truncate_filtration(const GradedFilteredComplex& complex, int mu);

/// Elements with lo <= degree <= hi. Homology is unchanged in degrees
/// lo + 1 .. hi - 1.
GradedFilteredComplex restrict_degrees(const GradedFilteredComplex& complex, int lo, int hi);

/// The associated graded piece at level s: its elements with the
/// level-preserving part of d.
GradedFilteredComplex slice(const GradedFilteredComplex& complex, int level);

/// A linear map of the given degree between two complexes: `matrix` has one
/// row per target basis element and one column per source basis element.
struct ChainMap {
    int degree_shift = 0;
    linalg::SparseMatrix matrix;
};

/// Map that sends each source element to the target element with the same
/// label (or to zero).
ChainMap label_map(const GradedFilteredComplex& source, const GradedFilteredComplex& target);

/// Checks d f = (-1)^shift f d on every source element.
bool is_chain_map(const ChainMap& map, const GradedFilteredComplex& source,
                  const GradedFilteredComplex& target);

/// Matrix of H_degree(source) -> H_{degree+shift}(target) in the bases
/// returned by `homology`. Throws ChainComplexError when `map` is not a
/// chain map.
linalg::SparseMatrix induced_map_on_homology(const ChainMap& map, const GradedFilteredComplex& source,
                                             const GradedFilteredComplex& target, int degree);

/// Chain as "2*Mc1 + -1*mc2" using basis labels.
std::string describe(const GradedFilteredComplex& complex, const Chain& c);

}  // namespace qfloer::complexes
