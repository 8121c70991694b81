#include "qfloer/bo_differential.hpp"

#include "qfloer/spectral_sequence.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace qfloer::bo {

using complexes::BasisElement;
using complexes::Chain;
using complexes::ChainComplexError;
using complexes::ChainMap;
using complexes::DifferentialEntry;

namespace {

void add_term(BChain& c, const BGenerator& g, const Rational& v) {
    Rational& slot = c[g];
    slot += v;
    if (slot == 0) c.erase(g);
}

BChain apply_linear(const DifferentialTable& table, Part part, const BChain& c) {
    BChain out;
    for (const auto& [g, coeff] : c) {
        for (const auto& [h, v] : table.apply(part, g)) add_term(out, h, coeff * v);
    }
    return out;
}

int morse_weight(const BGenerator& g) {
    switch (g.kind) {
        case BKind::x0: return 0;
        case BKind::x2: return 2;
        case BKind::orbit: return floer::morse_index(g.point);
    }
    return 0;
}

Rational unperturbed(const BGenerator& g, int s, const HamiltonianParams& p) {
    if (g.kind != BKind::orbit) return p.energy - s;
    return p.energy + g.k * (p.r - p.eps) - s;
}

Chain to_chain(const GradedFilteredComplex& c, const BChain& b, int s) {
    Chain out;
    for (const auto& [g, v] : b) out[c.index_of(level_label(g, s))] = v;
    return out;
}

std::size_t rank_of(const linalg::SparseMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : linalg::rank(m); }

// The part of d that goes from the elements of `a` to the elements of `b`,
// read off the ambient complex through labels.
ChainMap component_map(const GradedFilteredComplex& ambient, const GradedFilteredComplex& a,
                       const GradedFilteredComplex& b, int shift) {
    ChainMap map{shift, linalg::SparseMatrix(b.size(), a.size())};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t full = ambient.index_of(a.element(i).label);
        for (const auto& [j, v] : ambient.boundary(full)) {
            if (auto target = b.find(ambient.element(j).label)) map.matrix.set(*target, i, v);
        }
    }
    return map;
}

int checked_int(const Integer& v, const char* what) {
    if (!v.fits_sint_p() || v > 1000000 || v < -1000000) {
        throw std::out_of_range(std::string(what) + " is too large to enumerate");
    }
    return static_cast<int>(v.get_si());
}

}  // namespace

BGenerator BGenerator::orbit(CriticalPoint p, int k) {
    if (k < 1) throw std::invalid_argument("orbit multiplicity must be >= 1");
    return {BKind::orbit, p, k};
}

int BGenerator::degree() const {
    switch (kind) {
        case BKind::x0: return 0;
        case BKind::x2: return 2;
        case BKind::orbit: return 2 * k + floer::upper_offset(point);
    }
    return 0;
}

std::string BGenerator::label() const {
    switch (kind) {
        case BKind::x0: return "x0";
        case BKind::x2: return "x2";
        case BKind::orbit: return floer::short_name(point) + std::to_string(k);
    }
    return "?";
}

std::vector<BGenerator> generators_in_degree(int n) {
    if (n < 0) return {};
    if (n == 0) return {BGenerator::x0()};
    if (n == 1) return {BGenerator::mc(1)};
    if (n == 2) return {BGenerator::x2(), BGenerator::mh(1)};
    if (n % 2 == 1) {
        const int k = (n - 1) / 2;
        return {BGenerator::Mc(k), BGenerator::mc(k + 1)};
    }
    const int k = (n - 2) / 2;
    return {BGenerator::Mh(k), BGenerator::mh(k + 1)};
}

BGenerator parse_generator(const std::string& label) {
    if (label == "x0") return BGenerator::x0();
    if (label == "x2") return BGenerator::x2();
    if (label.size() >= 3) {
        const std::string head = label.substr(0, 2);
        const std::string tail = label.substr(2);
        if (std::all_of(tail.begin(), tail.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            const int k = std::stoi(tail);
            for (int j = -1; j <= 2; ++j) {
                const auto pt = *floer::point_from_upper_offset(j);
                if (floer::short_name(pt) == head) return BGenerator::orbit(pt, k);
            }
        }
    }
    throw std::invalid_argument("not a generator of B: '" + label + "'");
}

std::string describe(const BChain& c) {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [g, v] : c) {
        if (!out.empty()) out += " + ";
        if (v != 1) out += to_display_string(v) + "*";
        out += g.label();
    }
    return out;
}

BChain standard_d0(const BGenerator& g) {
    BChain out;
    if (g.kind != BKind::orbit) return out;
    const int k = g.k;
    switch (g.point) {
        case CriticalPoint::min_hat:
        case CriticalPoint::max_hat: break;
        case CriticalPoint::min_check:
            if (k == 2) {
                out[BGenerator::mh(1)] = 2;
                out[BGenerator::x2()] = 2;
            } else if (k >= 3) {
                out[BGenerator::mh(k - 1)] = 2;
                out[BGenerator::Mh(k - 2)] = 2;
            }
            break;
        case CriticalPoint::max_check:
            out[BGenerator::mh(k)] = 2;
            if (k == 1) {
                out[BGenerator::x2()] = 2;
            } else {
                out[BGenerator::Mh(k - 1)] = 2;
            }
            break;
    }
    return out;
}

BChain standard_d1(const BGenerator& g) {
    BChain out;
    if (g.kind != BKind::orbit) return out;
    if (g.point == CriticalPoint::min_check) out[BGenerator::mh(g.k + 1)] = 1;
    if (g.point == CriticalPoint::max_check) out[BGenerator::Mh(g.k + 1)] = 1;
    return out;
}

std::string to_string(Part part) { return part == Part::d0 ? "d0" : "d1"; }

BChain DifferentialTable::apply(Part part, const BGenerator& g) const {
    BChain out = part == Part::d0 ? standard_d0(g) : standard_d1(g);
    const auto lo = overrides_.lower_bound({part, g, BGenerator::x0()});
    for (auto it = lo; it != overrides_.end(); ++it) {
        const auto& [p, from, to] = it->first;
        if (p != part || from != g) break;
        if (it->second == 0) {
            out.erase(to);
        } else {
            out[to] = it->second;
        }
    }
    return out;
}

Rational DifferentialTable::coefficient(Part part, const BGenerator& from, const BGenerator& to) const {
    const BChain c = apply(part, from);
    const auto it = c.find(to);
    return it == c.end() ? Rational(0) : it->second;
}

void DifferentialTable::set(Part part, const BGenerator& from, const BGenerator& to, const Rational& value) {
    overrides_[{part, from, to}] = value;
}

std::vector<BGenerator> degree_admissible_targets(Part part, const BGenerator& from) {
    return generators_in_degree(from.degree() + (part == Part::d0 ? -1 : 3));
}

std::vector<SymbolicDefect> d0_square_defects(const DifferentialTable& table, int max_degree) {
    std::vector<SymbolicDefect> out;
    for (int n = 0; n <= max_degree; ++n) {
        for (const auto& g : generators_in_degree(n)) {
            BChain v = apply_linear(table, Part::d0, table.d0(g));
            if (!v.empty()) out.push_back({g, std::move(v)});
        }
    }
    return out;
}

std::vector<SymbolicDefect> anticommutator_defects(const DifferentialTable& table, int max_degree) {
    std::vector<SymbolicDefect> out;
    for (int n = 0; n <= max_degree; ++n) {
        for (const auto& g : generators_in_degree(n)) {
            BChain v = apply_linear(table, Part::d1, table.d0(g));
            for (const auto& [h, c] : apply_linear(table, Part::d0, table.d1(g))) add_term(v, h, c);
            if (!v.empty()) out.push_back({g, std::move(v)});
        }
    }
    return out;
}

Rational morse_step(const HamiltonianParams& p) {
    const Rational gap = p.r - p.eps;
    return (p.eps < gap ? p.eps : gap) / 1000;
}

int required_k_max(int top, int mu) {
    const int need = top + 4 * mu;
    return std::max(1, (need + 1) / 2);
}

std::string level_label(const BGenerator& g, int s) {
    if (s == 0) return g.label();
    return g.label() + "*t^-" + std::to_string(s);
}

QbComplex build_qb(const DifferentialTable& table, const QbOptions& options, const HamiltonianParams& p) {
    if (options.mu < 0) throw std::invalid_argument("mu must be >= 0");
    if (options.k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    floer::validate(p);

    QbComplex out;
    out.mu = options.mu;
    out.k_max = options.k_max;
    out.top_degree = 2 * options.k_max - 4 * options.mu;
    if (options.max_degree) out.top_degree = std::min(out.top_degree, *options.max_degree);
    out.bottom_degree = options.min_degree.value_or(-4 * options.mu);
    if (out.top_degree < out.bottom_degree) {
        throw std::invalid_argument("empty degree window: k_max " + std::to_string(options.k_max) +
                                    " is too small for mu " + std::to_string(options.mu));
    }

    const Rational step = morse_step(p);
    std::vector<BasisElement> basis;
    std::map<std::pair<BGenerator, int>, std::size_t> index;
    for (int s = 0; s <= options.mu; ++s) {
        for (int n = std::max(0, out.bottom_degree + 4 * s); n <= out.top_degree + 4 * s; ++n) {
            for (const auto& g : generators_in_degree(n)) {
                const Rational a = unperturbed(g, s, p);
                index[{g, s}] = basis.size();
                basis.push_back({level_label(g, s), n - 4 * s, s, a + step * morse_weight(g)});
                out.generators.emplace_back(g, s);
                out.unperturbed_action.push_back(a);
            }
        }
    }

    std::vector<DifferentialEntry> entries;
    auto link = [&](std::size_t from, const BGenerator& to, int s, const Rational& v) {
        const auto it = index.find({to, s});
        if (it != index.end()) {
            entries.push_back({from, it->second, v});
            return;
        }
        const int total = to.degree() - 4 * s;
        if (total >= out.bottom_degree && total <= out.top_degree && s <= options.mu) {
            throw std::logic_error("target " + level_label(to, s) + " missing from the truncation");
        }
    };
    for (std::size_t i = 0; i < out.generators.size(); ++i) {
        const auto& [g, s] = out.generators[i];
        for (const auto& [h, v] : table.d0(g)) link(i, h, s, v);
        if (s + 1 <= options.mu) {
            for (const auto& [h, v] : table.d1(g)) link(i, h, s + 1, v);
        }
    }
    out.complex = GradedFilteredComplex(std::move(basis), entries);
    return out;
}

QbComplex assemble_qb(const DifferentialTable& table, const QbOptions& options, const HamiltonianParams& p) {
    QbComplex out = build_qb(table, options, p);
    const auto report = complexes::validate(out.complex);
    if (!report.valid()) {
        throw ChainComplexError("QB failed validation with " + std::to_string(report.issues.size()) +
                                " issues; first: " + report.issues.front().message);
    }
    return out;
}

HamiltonianParams reference_params() {
    return HamiltonianParams::make(Rational(2, 5), Rational(1, 100), Rational(100));
}

bool BHomologyReport::passed() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const BHomologyRow& r) { return r.matches; });
}

BChain expected_b_class(int degree) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    if (degree == 0) return {{BGenerator::x0(), 1}};
    if (degree == 1) return {{BGenerator::mc(1), 1}};
    if (degree == 2) return {{BGenerator::x2(), 1}};
    if (degree % 2 == 1) {
        const int k = (degree - 1) / 2;
        return {{BGenerator::Mc(k), 1}, {BGenerator::mc(k + 1), -1}};
    }
    return {{BGenerator::Mh((degree - 2) / 2), 1}};
}

BHomologyReport homology_of_B(int j_max, std::optional<int> k_max, const DifferentialTable& table) {
    if (j_max < 0) throw std::invalid_argument("j_max must be >= 0");
    BHomologyReport report;
    report.j_max = j_max;
    report.k_max = k_max.value_or(required_k_max(j_max + 1, 0));
    if (2 * report.k_max < j_max + 1) {
        throw std::invalid_argument("k_max " + std::to_string(report.k_max) + " cannot resolve degree " +
                                    std::to_string(j_max) + "; need k_max >= " +
                                    std::to_string(required_k_max(j_max + 1, 0)));
    }
    const QbComplex b = build_qb(table, {0, report.k_max, std::nullopt, std::nullopt}, reference_params());
    for (int j = 0; j <= j_max; ++j) {
        BHomologyRow row;
        row.degree = j;
        const BChain expected = expected_b_class(j);
        row.expected = describe(expected);
        const auto h = complexes::homology(b.complex, j);
        row.dimension = h.dimension;
        if (!h.representatives.empty()) row.representative = complexes::describe(b.complex, h.representatives[0]);
        row.matches = h.dimension == 1 && complexes::homologous_up_to_scalar(b.complex, j, h.representatives[0],
                                                                            to_chain(b.complex, expected, 0));
        report.rows.push_back(std::move(row));
    }
    return report;
}

bool SqueezeCheck::passed() const {
    return applicable && problems.empty() && h2_dimension == 1 && generated_by_x2 && sandwich && isomorphism &&
           factors;
}

bool MainLemmaReport::pieces_ok() const {
    return !pieces.empty() &&
           std::all_of(pieces.begin(), pieces.end(), [](const PieceCheck& p) { return p.passed(); });
}

bool MainLemmaReport::passed() const { return direct_ok() && spectral_ok() && pieces_ok() && squeeze.passed(); }

SqueezeCheck verify_squeeze(const HamiltonianParams& p, const DifferentialTable& table) {
    SqueezeCheck out;
    const auto w = floer::mu_window(p);
    out.mu_minus = w.mu_minus;
    out.mu_plus = w.mu_plus;
    out.applicable = w.mu_minus < w.mu_plus && w.mu_minus >= 0;
    if (!out.applicable) {
        out.problems.push_back("mu window is empty or negative");
        return out;
    }
    const int mu_minus = checked_int(w.mu_minus, "mu_-");
    const int mu_plus = checked_int(w.mu_plus, "mu_+");
    out.levels = mu_plus + 2;

    const int levels = mu_plus + 1;
    const QbComplex q = assemble_qb(table, {levels, required_k_max(3, levels), 1, 3}, p);
    out.basis_size = q.complex.size();

    std::unordered_set<std::string> below_one;
    out.sandwich = true;
    for (std::size_t i = 0; i < q.complex.size(); ++i) {
        const int s = q.generators[i].second;
        const Rational& a = q.unperturbed_action[i];
        const std::string& label = q.complex.element(i).label;
        if (a < 1) below_one.insert(label);
        if (s <= mu_minus && !(a > 1)) {
            out.sandwich = false;
            out.problems.push_back(label + " sits at level <= mu_- with action " + to_display_string(a));
        }
        if (s > mu_plus && !(a < 1)) {
            out.sandwich = false;
            out.problems.push_back(label + " sits above mu_+ with action " + to_display_string(a));
        }
    }
    for (std::size_t i = 0; i < q.complex.size(); ++i) {
        if (!below_one.count(q.complex.element(i).label)) continue;
        for (const auto& [j, v] : q.complex.boundary(i)) {
            if (!below_one.count(q.complex.element(j).label)) {
                out.problems.push_back("QD is not a subcomplex at " + q.complex.element(i).label);
            }
        }
    }

    const auto qd = complexes::induced_on(q.complex, [&](const BasisElement& e) { return !below_one.count(e.label); });
    const auto upper = complexes::truncate_filtration(q.complex, mu_plus);
    const auto lower = complexes::truncate_filtration(q.complex, mu_minus);

    const auto h = complexes::homology(qd, 2);
    out.h2_dimension = h.dimension;
    if (h.dimension == 1) {
        if (auto x2 = qd.find("x2")) {
            out.generated_by_x2 = complexes::homologous_up_to_scalar(qd, 2, h.representatives[0], Chain{{*x2, 1}});
        }
    }

    auto invertible_1x1 = [&](const GradedFilteredComplex& a, const GradedFilteredComplex& b) {
        const auto map = complexes::label_map(a, b);
        if (!complexes::is_chain_map(map, a, b)) {
            out.problems.push_back("projection is not a chain map");
            return false;
        }
        const auto m = complexes::induced_map_on_homology(map, a, b, 2);
        return m.rows() == 1 && m.cols() == 1 && m.at(0, 0) != 0;
    };
    out.isomorphism = invertible_1x1(upper, lower);
    out.factors = invertible_1x1(upper, qd) && invertible_1x1(qd, lower);
    return out;
}

MainLemmaReport verify_main_lemma(int mu, const HamiltonianParams& p, std::optional<int> k_max,
                                  const DifferentialTable& table) {
    if (mu < 1) throw std::invalid_argument("mu must be >= 1");
    MainLemmaReport report;
    report.mu = mu;
    report.k_max = k_max.value_or(required_k_max(4, mu));
    if (2 * report.k_max - 4 * mu < 4) {
        throw std::invalid_argument("k_max " + std::to_string(report.k_max) + " is below the padding bound " +
                                    std::to_string(required_k_max(4, mu)) + " for mu " + std::to_string(mu));
    }
    const QbComplex q = assemble_qb(table, {mu, report.k_max, std::nullopt, std::nullopt}, p);
    const auto& c = q.complex;
    report.top_degree = q.top_degree;
    report.basis_size = c.size();

    const auto h = complexes::homology(c, 2);
    report.h2_dimension = h.dimension;
    if (!h.representatives.empty()) {
        report.h2_representative = complexes::describe(c, h.representatives[0]);
        report.generated_by_x2 = h.dimension == 1 &&
                                 complexes::homologous_up_to_scalar(c, 2, h.representatives[0],
                                                                    Chain{{c.index_of("x2"), 1}});
    }

    const auto ss = complexes::spectral_sequence(c, 2);
    report.degeneration_page = ss.degeneration_page;
    report.e_infinity_h2 = ss.infinity().total(2);
    report.e_infinity_h2_level0 = ss.infinity().dimension(2, 0);

    std::vector<GradedFilteredComplex> slices;
    for (int s = 0; s <= mu; ++s) slices.push_back(complexes::slice(c, s));
    for (int s = 0; s <= mu; ++s) {
        PieceCheck piece;
        piece.s = s;
        const auto& mid = slices[static_cast<std::size_t>(s)];
        piece.h2 = complexes::homology(mid, 2).dimension;
        if (s > 0) {
            const auto& prev = slices[static_cast<std::size_t>(s - 1)];
            piece.h3_previous = complexes::homology(prev, 3).dimension;
            piece.left_rank = rank_of(complexes::induced_map_on_homology(component_map(c, prev, mid, -1), prev, mid, 3));
        }
        if (s < mu) {
            const auto& next = slices[static_cast<std::size_t>(s + 1)];
            piece.h1_next = complexes::homology(next, 1).dimension;
            piece.right_rank = rank_of(complexes::induced_map_on_homology(component_map(c, mid, next, -1), mid, next, 2));
        }
        piece.homology = piece.h2 - piece.left_rank - piece.right_rank;
        piece.expected = s == 0 ? 1 : 0;
        piece.left_onto = piece.left_rank == piece.h2;
        piece.right_zero = piece.right_rank == 0;
        report.pieces.push_back(piece);
    }

    report.squeeze = verify_squeeze(p, table);
    return report;
}

std::pair<std::size_t, bool> quick_h2(const DifferentialTable& table, int mu, int k_max, const HamiltonianParams& p) {
    try {
        const QbComplex q = build_qb(table, {mu, k_max, 1, 3}, p);
        const auto h = complexes::homology(q.complex, 2);
        const bool x2 = h.dimension == 1 && complexes::homologous_up_to_scalar(q.complex, 2, h.representatives[0],
                                                                              Chain{{q.complex.index_of("x2"), 1}});
        return {h.dimension, x2};
    } catch (const ChainComplexError&) {
        return {0, false};
    }
}

DifferentialTable table_with_signs(int sign_mc, int sign_Mc, int k_max) {
    DifferentialTable t;
    for (int k = 1; k <= k_max; ++k) {
        t.set(Part::d1, BGenerator::mc(k), BGenerator::mh(k + 1), sign_mc);
        t.set(Part::d1, BGenerator::Mc(k), BGenerator::Mh(k + 1), sign_Mc);
    }
    return t;
}

SignPatternStudy sign_pattern_study(int mu, int k_max, int lo, int hi) {
    SignPatternStudy study{mu, k_max, lo, hi, {}};
    const auto p = reference_params();
    if (hi >= 2 * k_max - 4 * mu || lo > hi) throw std::invalid_argument("degree range outside the truncation");
    std::vector<std::size_t> standard;
    for (int sm : {1, -1}) {
        for (int sM : {1, -1}) {
            SignPatternResult r;
            r.sign_mc = sm;
            r.sign_Mc = sM;
            const auto q = build_qb(table_with_signs(sm, sM, k_max + 1), {mu, k_max, std::nullopt, std::nullopt}, p);
            r.valid = complexes::validate(q.complex).valid();
            if (r.valid) {
                for (int j = lo; j <= hi; ++j) r.homology.push_back(complexes::homology(q.complex, j).dimension);
            }
            if (sm == 1 && sM == 1) standard = r.homology;
            r.matches_standard = r.valid && r.homology == standard;
            study.patterns.push_back(std::move(r));
        }
    }
    return study;
}

std::string Mutation::describe() const {
    return to_string(part) + "(" + from.label() + " -> " + to.label() + "): " + to_display_string(original) + " -> " +
           to_display_string(mutated);
}

std::vector<const MutationOutcome*> MutationSuiteReport::undetected() const {
    std::vector<const MutationOutcome*> out;
    for (const auto& o : outcomes) {
        if (!o.detected()) out.push_back(&o);
    }
    return out;
}

std::vector<Mutation> enumerate_mutations(int slot_max_degree) {
    const DifferentialTable standard;
    std::vector<Mutation> out;
    for (int n = 0; n <= slot_max_degree; ++n) {
        for (const auto& g : generators_in_degree(n)) {
            for (Part part : {Part::d0, Part::d1}) {
                for (const auto& t : degree_admissible_targets(part, g)) {
                    const Rational original = standard.coefficient(part, g, t);
                    for (int delta : {1, -1}) out.push_back({part, g, t, original, original + delta});
                }
            }
        }
    }
    return out;
}

MutationOutcome evaluate_mutation(const Mutation& m, const MutationSuiteOptions& options) {
    MutationOutcome out;
    out.mutation = m;
    DifferentialTable table;
    table.set(m.part, m.from, m.to, m.mutated);

    const int symbolic_degree = 2 * options.k_max;
    out.d0_square = !d0_square_defects(table, symbolic_degree).empty();
    out.anticommutator = !anticommutator_defects(table, symbolic_degree).empty();

    const QbComplex q = build_qb(table, {options.mu, options.k_max, std::nullopt, std::nullopt}, options.params);
    std::set<std::string> kinds;
    for (const auto& issue : complexes::validate(q.complex).issues) kinds.insert(std::string(complexes::to_string(issue.kind)));
    out.validation.assign(kinds.begin(), kinds.end());

    const QbComplex b = build_qb(table, {0, options.k_max, std::nullopt, std::nullopt}, options.params);
    try {
        const auto h1 = complexes::homology(b.complex, 1);
        out.h1_changed = !(h1.dimension == 1 &&
                           complexes::homologous_up_to_scalar(b.complex, 1, h1.representatives[0],
                                                              Chain{{b.complex.index_of("mc1"), 1}}));
    } catch (const ChainComplexError&) {
        out.h1_changed = false;
    }
    for (int j = 0; j < 2 * options.k_max; ++j) {
        try {
            if (complexes::homology(b.complex, j).dimension != 1) out.b_homology_changed.push_back(j);
        } catch (const ChainComplexError&) {
            out.b_homology_changed.push_back(j);
        }
    }
    const auto [dim, x2] = quick_h2(table, options.mu, options.k_max, options.params);
    out.main_lemma_changed = !(dim == 1 && x2);
    return out;
}

MutationSuiteReport mutation_suite(const MutationSuiteOptions& options) {
    MutationSuiteReport report;
    report.options = options;
    for (const auto& m : enumerate_mutations(options.slot_max_degree)) {
        report.outcomes.push_back(evaluate_mutation(m, options));
    }
    return report;
}

}  // namespace qfloer::bo
