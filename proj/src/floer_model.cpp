#include "qfloer/floer_model.hpp"

#include <algorithm>
#include <array>

namespace qfloer::floer {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

constexpr std::array<CriticalPoint, 4> kPoints = {CriticalPoint::min_check, CriticalPoint::min_hat,
                                                  CriticalPoint::max_check, CriticalPoint::max_hat};

// CZ before the t-shift.
int base_cz(const GeneratorFamily& f) {
    switch (f.kind) {
        case FamilyKind::x0: return 0;
        case FamilyKind::x2: return 2;
        case FamilyKind::y0: return 0;
        case FamilyKind::y_minus2: return -2;
        case FamilyKind::upper: return 2 * f.multiplicity + upper_offset(f.point);
        case FamilyKind::lower: return 2 * f.multiplicity + upper_offset(f.point) - 1;
    }
    return 0;
}

}  // namespace

int morse_index(CriticalPoint p) { return static_cast<int>(p); }

int upper_offset(CriticalPoint p) { return morse_index(p) - 1; }

std::optional<CriticalPoint> point_from_upper_offset(int j) {
    if (j < -1 || j > 2) return std::nullopt;
    return kPoints[static_cast<std::size_t>(j + 1)];
}

std::string short_name(CriticalPoint p) {
    switch (p) {
        case CriticalPoint::min_check: return "mc";
        case CriticalPoint::min_hat: return "mh";
        case CriticalPoint::max_check: return "Mc";
        case CriticalPoint::max_hat: return "Mh";
    }
    return "?";
}

GeneratorFamily GeneratorFamily::upper(CriticalPoint p, int k) {
    if (k < 1) throw std::invalid_argument("orbit multiplicity must be >= 1");
    return {FamilyKind::upper, p, k};
}

GeneratorFamily GeneratorFamily::lower(CriticalPoint p, int k) {
    if (k < 1) throw std::invalid_argument("orbit multiplicity must be >= 1");
    return {FamilyKind::lower, p, k};
}

std::string label(const Generator& g) {
    std::string base;
    switch (g.family.kind) {
        case FamilyKind::x0: base = "x0"; break;
        case FamilyKind::x2: base = "x2"; break;
        case FamilyKind::y0: base = "y0"; break;
        case FamilyKind::y_minus2: base = "y-2"; break;
        case FamilyKind::upper:
            base = short_name(g.family.point) + std::to_string(g.family.multiplicity) + "+";
            break;
        case FamilyKind::lower:
            base = short_name(g.family.point) + std::to_string(g.family.multiplicity) + "-";
            break;
    }
    if (g.t_degree == 0) return base;
    return base + "*t^" + std::to_string(-g.t_degree);
}

HamiltonianParams HamiltonianParams::make(const Rational& r, const Rational& eps, const Rational& energy) {
    HamiltonianParams p{r, eps, energy};
    validate(p);
    return p;
}

HamiltonianParams HamiltonianParams::parse(const std::string& r, const std::string& eps, const std::string& energy) {
    try {
        return make(parse_rational(r), parse_rational(eps), parse_rational(energy));
    } catch (const InvalidParameters&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw InvalidParameters(ex.what());
    }
}

std::vector<std::string> HamiltonianParams::resonances() const {
    std::vector<std::string> out;
    if (r != 0 && is_integer(Rational(1 / r))) out.push_back("1/r is an integer");
    if (eps != 0 && is_integer(Rational((energy + eps) / eps))) out.push_back("(E+eps)/eps is an integer");
    return out;
}

void validate(const HamiltonianParams& p) {
    if (!(p.r > 0) || !(p.r < Rational(1, 2))) {
        throw InvalidParameters("r must satisfy 0 < r < 1/2 (got " + to_display_string(p.r) + ")");
    }
    if (!(p.eps > 0) || !(p.eps < p.r)) {
        throw InvalidParameters("eps must satisfy 0 < eps < r (got " + to_display_string(p.eps) + ")");
    }
    if (!(p.energy > 1)) {
        throw InvalidParameters("E must exceed 1 (got " + to_display_string(p.energy) + ")");
    }
}

int cz_index(const Generator& g) { return base_cz(g.family) - 4 * g.t_degree; }

Rational action(const Generator& g, const HamiltonianParams& p) {
    const Rational n = g.t_degree;
    const Rational k = g.family.multiplicity;
    switch (g.family.kind) {
        case FamilyKind::x0:
        case FamilyKind::x2: return p.energy - n;
        case FamilyKind::y0:
        case FamilyKind::y_minus2: return -p.eps - n;
        case FamilyKind::upper: return p.energy + k * (p.r - p.eps) - n;
        case FamilyKind::lower: return k * p.r - p.eps - n;
    }
    return 0;
}

Integer multiplicity_bound(const HamiltonianParams& p) { return floor(Rational((p.energy + p.eps) / p.eps)); }

bool multiplicity_admissible(long k, const HamiltonianParams& p) {
    if (k < 1) throw std::invalid_argument("multiplicity must be >= 1");
    return Rational(k) <= (p.energy + p.eps) / p.eps;
}

Rational kappa(const HamiltonianParams& p) { return 1 - 2 * p.r + 2 * p.eps; }

MuWindow mu_window(const HamiltonianParams& p) {
    MuWindow w;
    w.kappa = kappa(p);
    w.lower_bound = (p.energy - 1) / w.kappa;
    w.upper_bound = (p.energy - w.kappa) / w.kappa;
    w.mu_minus = floor_strict(w.lower_bound);
    w.mu_plus = ceil_strict(w.upper_bound);
    return w;
}

std::vector<Generator> enumerate_generators(int cz_lo, int cz_hi, int upper_k_limit, int lower_k_limit) {
    std::vector<Generator> out;
    auto add_family = [&](const GeneratorFamily& f) {
        const int c0 = base_cz(f);
        // c0 - 4N in [cz_lo, cz_hi]
        for (int n = ceil_div(c0 - cz_hi, 4); n <= floor_div(c0 - cz_lo, 4); ++n) out.push_back({f, n});
    };
    add_family(GeneratorFamily::x0());
    add_family(GeneratorFamily::x2());
    add_family(GeneratorFamily::y0());
    add_family(GeneratorFamily::y_minus2());
    for (int k = 1; k <= upper_k_limit; ++k) {
        for (auto pt : kPoints) add_family(GeneratorFamily::upper(pt, k));
    }
    for (int k = 1; k <= lower_k_limit; ++k) {
        for (auto pt : kPoints) add_family(GeneratorFamily::lower(pt, k));
    }
    return out;
}

bool Lemma0Report::passed() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed(); });
}

Lemma0Report verify_lemma0(const HamiltonianParams& p) {
    validate(p);
    Lemma0Report report;
    report.params = p;
    report.multiplicity_bound = multiplicity_bound(p);
    report.window = mu_window(p);

    // Past k = 2(mu_+ + 2) + 2 every upper generator of index 1..3 has
    // t-degree beyond mu_+, so the enumeration covers both sides of the window.
    const Integer upper_limit = 2 * (report.window.mu_plus + 2) + 2;
    report.upper_k_limit = static_cast<int>(upper_limit.get_si());
    report.lower_k_limit = static_cast<int>(std::max<Integer>(report.multiplicity_bound, upper_limit).get_si());

    const auto gens = enumerate_generators(1, 3, report.upper_k_limit, report.lower_k_limit);
    report.generators_enumerated = gens.size();

    ClauseResult low{"(i)", "lower and V generators of CZ 1..3 have action < 1", 0, {}};
    ClauseResult up{"(ii)", "upper and U generators of CZ 1..3 have action < E+1 and t-degree >= 0", 0, {}};
    ClauseResult bound{"(iii)", "upper generators of CZ 1..3 with action > 1 satisfy k < (E+eps)/eps", 0, {}};
    ClauseResult window{"(iv)",
                        "upper and U generators of CZ 1..3: action > 1 for N <= mu_-, action < 1 for N > mu_+", 0,
                        {}};
    if (!(report.window.mu_minus < report.window.mu_plus)) {
        window.counterexamples.push_back("mu_- >= mu_+");
    }

    const Rational k_ceiling = (p.energy + p.eps) / p.eps;
    for (const auto& g : gens) {
        const Rational a = action(g, p);
        const auto kind = g.family.kind;
        const bool is_orbit = g.family.is_orbit();
        if (is_orbit) {
            const int spread = 2 * g.family.multiplicity - 4 * g.t_degree;
            if (spread < 0 || spread > 4) {
                throw std::logic_error("enumeration broke 0 <= 2k - 4N <= 4 at " + label(g));
            }
        }
        const std::string where = label(g) + " (CZ " + std::to_string(cz_index(g)) + ", action " +
                                  to_display_string(a) + ")";
        if (kind == FamilyKind::lower || kind == FamilyKind::y0 || kind == FamilyKind::y_minus2) {
            ++low.checked;
            if (!(a < 1)) low.counterexamples.push_back(where);
            continue;
        }
        ++up.checked;
        if (!(a < p.energy + 1) || g.t_degree < 0) up.counterexamples.push_back(where);
        if (kind == FamilyKind::upper && a > 1) {
            ++bound.checked;
            if (!(Rational(g.family.multiplicity) < k_ceiling)) bound.counterexamples.push_back(where);
        }
        ++window.checked;
        const Integer n = g.t_degree;
        if (n <= report.window.mu_minus && !(a > 1)) window.counterexamples.push_back(where + " below mu_-");
        if (n > report.window.mu_plus && !(a < 1)) window.counterexamples.push_back(where + " above mu_+");
    }
    report.clauses = {low, up, bound, window};
    return report;
}

std::vector<IndexSolution> index_case_analysis(LPlusConstraint constraint) {
    std::vector<IndexSolution> out;
    for (int h = -3; h <= 3; ++h) {
        if ((1 - h) % 2 != 0) continue;
        const int half = (1 - h) / 2;
        for (int delta = 0; 2 * delta <= half; ++delta) {
            const int total = half - 2 * delta;
            for (int lp = 0; lp <= total; ++lp) {
                if (!constraint.admits(lp)) continue;
                IndexSolution s;
                s.h = h;
                s.delta = delta;
                s.l_plus = lp;
                s.l_minus = total - lp;
                mpz_ui_pow_ui(s.weight.get_mpz_t(), 2, static_cast<unsigned long>(s.l_minus));
                if (h == -3 && delta == 0) s.flags.emplace_back(kFlagFiberCircle);
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

std::vector<DifferentialSlot> admissible_slots(const std::vector<IndexSolution>& solutions) {
    std::vector<DifferentialSlot> out;
    for (const auto& s : solutions) {
        if (s.excluded()) continue;
        for (int jp = -1; jp <= 2; ++jp) {
            const auto src = point_from_upper_offset(jp);
            const auto dst = point_from_upper_offset(jp - s.h);
            if (!src || !dst) continue;
            out.push_back({*src, *dst, s.k_shift(), s.l_plus, s.l_minus});
        }
    }
    return out;
}

}  // namespace qfloer::floer
