// qfloer: command-line front end for the verification pipelines.
//
// Exit codes: 0 when every requested check passes, 1 when a check fails,
// 2 for invalid or (with --strict) resonant parameters and for usage errors.

#include "qfloer/bo_differential.hpp"
#include "qfloer/complex_json.hpp"
#include "qfloer/floer_model.hpp"
#include "qfloer/quantum.hpp"
#include "qfloer/rational.hpp"
#include "qfloer/semitoric.hpp"
#include "qfloer/spectral_sequence.hpp"
#include "qfloer/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace qfloer;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string r = "2/5";
    std::string eps = "1/100";
    std::string energy = "100";
    int mu = 1;
    int k_max = 0;  // 0: pick the padding bound
    int j_max = 20;
    int max_page = 3;
    std::string l_plus = ">=1";
    std::string a = "0";
    std::string b = "-1/2";
    std::size_t n = 20000;
    std::size_t points = 50;
    std::uint64_t seed = 1;
    std::string format;
    std::string out;
    bool strict = false;
    int list_k = 0;
};

using Clock = std::chrono::steady_clock;

json rational_json(const Rational& q) { return to_string(q); }

json params_json(const floer::HamiltonianParams& p) {
    return {{"r", rational_json(p.r)}, {"eps", rational_json(p.eps)}, {"E", rational_json(p.energy)}};
}

json envelope(const std::string& command) {
    return {{"schema_version", kReportSchemaVersion}, {"tool", "qfloer"}, {"version", kVersion}, {"command", command}};
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open " + cfg.out);
    f << text;
}

void emit_json(const Config& cfg, const json& report) { emit(cfg, report.dump(2) + "\n"); }

floer::HamiltonianParams load_params(const Config& cfg, json& report) {
    auto p = floer::HamiltonianParams::parse(cfg.r, cfg.eps, cfg.energy);
    auto res = p.resonances();
    report["params"] = params_json(p);
    report["warnings"] = res;
    if (cfg.strict && !res.empty()) throw floer::InvalidParameters("resonant parameters: " + res.front());
    for (const auto& w : res) std::cerr << "warning: resonant parameters: " << w << "\n";
    return p;
}

double parse_real(const std::string& text, const char* name) {
    try {
        return to_double(parse_rational(text));
    } catch (const std::invalid_argument&) {
        throw floer::InvalidParameters(std::string("--") + name + ": not a number: " + text);
    }
}

std::string require_format(const Config& cfg, std::initializer_list<const char*> allowed, const char* fallback) {
    std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw UsageError("unsupported --format " + f);
}

// ---------------------------------------------------------------------------

int cmd_generators(const Config& cfg) {
    auto start = Clock::now();
    json report = envelope("generators");
    auto p = load_params(cfg, report);
    auto lemma = floer::verify_lemma0(p);

    report["bounds"] = {{"multiplicity_bound", lemma.multiplicity_bound.get_str()},
                        {"upper_k_limit", lemma.upper_k_limit},
                        {"lower_k_limit", lemma.lower_k_limit}};
    report["mu_window"] = {{"kappa", rational_json(lemma.window.kappa)},
                           {"lower_bound", rational_json(lemma.window.lower_bound)},
                           {"upper_bound", rational_json(lemma.window.upper_bound)},
                           {"mu_minus", lemma.window.mu_minus.get_str()},
                           {"mu_plus", lemma.window.mu_plus.get_str()}};
    report["generators_enumerated"] = lemma.generators_enumerated;
    json clauses = json::array();
    for (const auto& c : lemma.clauses) {
        json ce = json::array();
        for (std::size_t i = 0; i < c.counterexamples.size() && i < 20; ++i) ce.push_back(c.counterexamples[i]);
        clauses.push_back({{"name", c.name},
                           {"statement", c.statement},
                           {"checked", c.checked},
                           {"passed", c.passed()},
                           {"counterexample_count", c.counterexamples.size()},
                           {"counterexamples", ce}});
    }
    report["clauses"] = clauses;

    if (cfg.list_k > 0) {
        json list = json::array();
        for (const auto& g : floer::enumerate_generators(1, 3, cfg.list_k, cfg.list_k)) {
            list.push_back({{"label", floer::label(g)},
                            {"cz", floer::cz_index(g)},
                            {"action", rational_json(floer::action(g, p))}});
        }
        report["generators"] = list;
    }
    report["passed"] = lemma.passed();
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return lemma.passed() ? kExitPass : kExitFail;
}

int cmd_homology_b(const Config& cfg) {
    auto start = Clock::now();
    if (cfg.j_max < 0) throw floer::InvalidParameters("--j-max must be >= 0");
    std::optional<int> k_max;
    if (cfg.k_max > 0) k_max = cfg.k_max;
    auto rep = bo::homology_of_B(cfg.j_max, k_max);
    auto format = require_format(cfg, {"json", "csv"}, "json");
    if (format == "csv") {
        std::ostringstream os;
        os << "degree,dimension,representative,expected,matches\n";
        for (const auto& row : rep.rows)
            os << row.degree << ',' << row.dimension << ",\"" << row.representative << "\",\"" << row.expected
               << "\"," << (row.matches ? 1 : 0) << "\n";
        emit(cfg, os.str());
        return rep.passed() ? kExitPass : kExitFail;
    }
    json report = envelope("homology-b");
    report["bounds"] = {{"j_max", rep.j_max}, {"k_max", rep.k_max}};
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"degree", row.degree},
                        {"dimension", row.dimension},
                        {"representative", row.representative},
                        {"expected", row.expected},
                        {"matches", row.matches}});
    report["rows"] = rows;
    report["passed"] = rep.passed();
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return rep.passed() ? kExitPass : kExitFail;
}

json squeeze_json(const bo::SqueezeCheck& sq) {
    return {{"applicable", sq.applicable},
            {"mu_minus", sq.mu_minus.get_str()},
            {"mu_plus", sq.mu_plus.get_str()},
            {"levels", sq.levels},
            {"basis_size", sq.basis_size},
            {"h2_dimension", sq.h2_dimension},
            {"generated_by_x2", sq.generated_by_x2},
            {"sandwich", sq.sandwich},
            {"isomorphism", sq.isomorphism},
            {"factors", sq.factors},
            {"problems", sq.problems},
            {"passed", sq.passed()}};
}

int cmd_main_lemma(const Config& cfg) {
    auto start = Clock::now();
    json report = envelope("main-lemma");
    auto p = load_params(cfg, report);
    if (cfg.mu < 1) throw floer::InvalidParameters("--mu must be >= 1");
    std::optional<int> k_max;
    if (cfg.k_max > 0) k_max = cfg.k_max;
    auto rep = bo::verify_main_lemma(cfg.mu, p, k_max);

    report["bounds"] = {{"mu", rep.mu}, {"k_max", rep.k_max}, {"top_degree", rep.top_degree}};
    report["basis_size"] = rep.basis_size;
    report["direct"] = {{"h2_dimension", rep.h2_dimension},
                        {"representative", rep.h2_representative},
                        {"generated_by_x2", rep.generated_by_x2},
                        {"passed", rep.direct_ok()}};
    report["spectral"] = {{"degeneration_page", rep.degeneration_page},
                          {"e_infinity_h2", rep.e_infinity_h2},
                          {"e_infinity_h2_level0", rep.e_infinity_h2_level0},
                          {"passed", rep.spectral_ok()}};
    json pieces = json::array();
    for (const auto& pc : rep.pieces)
        pieces.push_back({{"s", pc.s},
                          {"h3_previous", pc.h3_previous},
                          {"h2", pc.h2},
                          {"h1_next", pc.h1_next},
                          {"left_rank", pc.left_rank},
                          {"right_rank", pc.right_rank},
                          {"left_onto", pc.left_onto},
                          {"right_zero", pc.right_zero},
                          {"homology", pc.homology},
                          {"expected", pc.expected},
                          {"passed", pc.passed()}});
    report["pieces"] = {{"slices", pieces}, {"passed", rep.pieces_ok()}};
    report["squeeze"] = squeeze_json(rep.squeeze);
    report["passed"] = rep.passed();
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return rep.passed() ? kExitPass : kExitFail;
}

int cmd_spectral(const Config& cfg) {
    auto start = Clock::now();
    json report = envelope("spectral");
    auto p = load_params(cfg, report);
    if (cfg.mu < 0) throw floer::InvalidParameters("--mu must be >= 0");
    bo::QbOptions opt;
    opt.mu = cfg.mu;
    opt.k_max = cfg.k_max > 0 ? cfg.k_max : bo::required_k_max(4, cfg.mu);
    auto qb = bo::assemble_qb(bo::DifferentialTable::standard(), opt, p);
    auto ss = complexes::spectral_sequence(qb.complex, cfg.max_page);

    report["bounds"] = {{"mu", qb.mu}, {"k_max", qb.k_max}, {"top_degree", qb.top_degree},
                        {"bottom_degree", qb.bottom_degree}};
    report["exact_degrees"] = {{"lo", qb.bottom_degree + 1}, {"hi", qb.top_degree - 1}};
    report["basis_size"] = qb.complex.size();
    json pages = json::array();
    for (const auto& page : ss.pages) {
        json entries = json::array();
        for (const auto& e : page.entries) {
            if (e.dimension == 0) continue;
            json reps = json::array();
            for (const auto& c : e.representatives) reps.push_back(complexes::describe(qb.complex, c));
            entries.push_back({{"degree", e.degree}, {"level", e.level}, {"dimension", e.dimension},
                               {"representatives", reps}});
        }
        json diffs = json::array();
        for (const auto& d : page.differentials) {
            auto rk = linalg::rank(d.matrix);
            if (rk == 0) continue;
            diffs.push_back({{"degree", d.degree}, {"source_level", d.source_level},
                             {"target_level", d.source_level + page.r}, {"rank", rk}});
        }
        pages.push_back({{"r", page.r}, {"entries", entries}, {"nonzero_differentials", diffs}});
    }
    report["pages"] = pages;
    report["degeneration_page"] = ss.degeneration_page;
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return kExitPass;
}

floer::LPlusConstraint parse_l_plus(const std::string& text) {
    try {
        if (text.rfind(">=", 0) == 0) return floer::LPlusConstraint::at_least(std::stoi(text.substr(2)));
        if (text.rfind("=", 0) == 0) return floer::LPlusConstraint::exactly(std::stoi(text.substr(1)));
        return floer::LPlusConstraint::exactly(std::stoi(text));
    } catch (const std::logic_error&) {
        throw floer::InvalidParameters("--l-plus: expected N, =N or >=N, got " + text);
    }
}

int cmd_index_cases(const Config& cfg) {
    auto start = Clock::now();
    auto constraint = parse_l_plus(cfg.l_plus);
    if (constraint.min < 0) throw floer::InvalidParameters("--l-plus must be non-negative");
    auto sols = floer::index_case_analysis(constraint);
    json report = envelope("index-cases");
    report["constraint"] = cfg.l_plus;
    json list = json::array();
    for (const auto& s : sols)
        list.push_back({{"h", s.h},
                        {"delta", s.delta},
                        {"l_plus", s.l_plus},
                        {"l_minus", s.l_minus},
                        {"weight", s.weight.get_str()},
                        {"k_shift", s.k_shift()},
                        {"excluded", s.excluded()},
                        {"flags", s.flags}});
    report["solutions"] = list;
    json slots = json::array();
    for (const auto& sl : floer::admissible_slots(sols))
        slots.push_back({{"source", floer::short_name(sl.source)},
                         {"target", floer::short_name(sl.target)},
                         {"k_shift", sl.k_shift},
                         {"l_plus", sl.l_plus},
                         {"l_minus", sl.l_minus}});
    report["slots"] = slots;
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return kExitPass;
}

int cmd_quantum(const Config& cfg) {
    auto start = Clock::now();
    json report = envelope("quantum");
    auto [ep, em] = quantum::idempotents();
    auto idem = quantum::check_idempotents();
    auto axioms = quantum::check_algebra_axioms();
    auto derived = quantum::derive_pt_square();
    bool pt_square_ok = derived && derived->first == 1 && derived->second == 0;

    report["idempotents"] = {{"e_plus", quantum::to_string(ep)}, {"e_minus", quantum::to_string(em)}};
    report["checks"] = {{"sum_is_unit", idem.sum_is_unit},
                        {"difference_is_pt", idem.difference_is_pt},
                        {"orthogonal", idem.orthogonal},
                        {"plus_idempotent", idem.plus_idempotent},
                        {"minus_idempotent", idem.minus_idempotent},
                        {"commutative", axioms.commutative},
                        {"associative", axioms.associative},
                        {"unital", axioms.unital}};
    if (derived)
        report["pt_square"] = {{"constant", rational_json(derived->first)},
                               {"pt_coefficient", rational_json(derived->second)},
                               {"is_unit", pt_square_ok}};
    else
        report["pt_square"] = nullptr;
    auto lp = quantum::pt_eigenvalue(ep);
    auto lm = quantum::pt_eigenvalue(em);
    report["eigenvalues"] = {{"e_plus", lp ? json(rational_json(*lp)) : json(nullptr)},
                             {"e_minus", lm ? json(rational_json(*lm)) : json(nullptr)}};
    report["grading"] = {{"Pt", quantum::grading_check(0, 1)}, {"unit", quantum::grading_check(4, 0)}};
    bool ok = idem.passed() && axioms.passed() && pt_square_ok;
    report["passed"] = ok;
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return ok ? kExitPass : kExitFail;
}

int cmd_fiber(const Config& cfg) {
    auto start = Clock::now();
    double a = parse_real(cfg.a, "a");
    double b = parse_real(cfg.b, "b");
    auto fib = semitoric::classify_fiber(a, b);
    json report = envelope("fiber");
    report["fiber"] = {{"a", cfg.a}, {"b", cfg.b}};
    report["kind"] = semitoric::to_string(fib.kind);
    report["displaceability"] = semitoric::to_string(fib.displaceability);
    report["witness_area"] = fib.witness_area ? json(*fib.witness_area) : json(nullptr);
    report["note"] = fib.note;
    if (fib.kind != semitoric::FiberKind::empty) {
        auto cert = semitoric::involution_displaces(a, b, 100, cfg.seed);
        report["involution"] = {{"displaced", cert.displaced},
                                {"samples", cert.samples},
                                {"max_deviation", cert.max_deviation}};
    }
    report["seed"] = cfg.seed;
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return kExitPass;
}

int cmd_alpha_area(const Config& cfg) {
    auto format = require_format(cfg, {"text", "json", "csv"}, "text");
    if (format == "csv") {
        if (cfg.points < 2) throw floer::InvalidParameters("--points must be >= 2");
        std::vector<double> bs;
        for (std::size_t i = 0; i < cfg.points; ++i)
            bs.push_back(-1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.points));
        std::ostringstream os;
        semitoric::write_area_csv(os, bs);
        emit(cfg, os.str());
        return kExitPass;
    }
    double b = parse_real(cfg.b, "b");
    if (!(b > -1 && b < 1)) throw floer::InvalidParameters("--b must lie in (-1, 1)");
    auto start = Clock::now();
    auto area = semitoric::alpha_area(b);
    if (format == "text") {
        std::ostringstream os;
        os << std::fixed << std::setprecision(10) << area.value << "\n";
        emit(cfg, os.str());
        return kExitPass;
    }
    json report = envelope("alpha-area");
    report["b"] = cfg.b;
    report["area"] = area.value;
    report["error_estimate"] = area.error_estimate;
    report["tolerance"] = semitoric::kQuadratureTolerance;
    report["wall_time_s"] = seconds_since(start);
    emit_json(cfg, report);
    return kExitPass;
}

int cmd_moment_svg(const Config& cfg) {
    if (cfg.n < 1) throw floer::InvalidParameters("--n must be >= 1");
    auto format = require_format(cfg, {"svg", "csv"}, "svg");
    auto sample = semitoric::moment_image_sample(cfg.n, cfg.seed);
    std::ostringstream os;
    if (format == "svg") {
        semitoric::write_moment_svg(os, sample);
    } else {
        os << "F,G\n" << std::setprecision(17);
        for (const auto& v : sample.cloud) os << v.f << ',' << v.g << "\n";
    }
    emit(cfg, os.str());
    return kExitPass;
}

// ---------------------------------------------------------------------------

void add_params(CLI::App* sub, Config& cfg) {
    sub->add_option("--r", cfg.r, "radius r as p/q, 0 < r < 1/2")->capture_default_str();
    sub->add_option("--eps", cfg.eps, "epsilon as p/q, 0 < eps < r")->capture_default_str();
    sub->add_option("--E", cfg.energy, "slope E as p/q, E > 1")->capture_default_str();
    sub->add_flag("--strict", cfg.strict, "treat resonant parameters as invalid");
}

void add_output(CLI::App* sub, Config& cfg, const char* formats) {
    sub->add_option("--format", cfg.format, formats);
    sub->add_option("--out", cfg.out, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"qfloer: exact checks for the Floer model of the quadric and its semitoric picture"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generators", "enumerate generators of CZ 1..3 and check the action lemma");
    add_params(gen, cfg);
    add_output(gen, cfg, "json");
    gen->add_option("--list-k", cfg.list_k, "also list generators with multiplicity up to this k");

    auto* hb = app.add_subcommand("homology-b", "homology of (B, d0) by degree");
    hb->add_option("--j-max", cfg.j_max, "highest degree")->capture_default_str();
    hb->add_option("--k-max", cfg.k_max, "orbit multiplicity truncation (default: padding bound)");
    add_output(hb, cfg, "json or csv");

    auto* ml = app.add_subcommand("main-lemma", "H_2 of QB/QB^(mu) by three routes plus the squeeze");
    add_params(ml, cfg);
    ml->add_option("--mu", cfg.mu, "levels 0..mu")->capture_default_str();
    ml->add_option("--k-max", cfg.k_max, "orbit multiplicity truncation (default: padding bound)");
    add_output(ml, cfg, "json");

    auto* sp = app.add_subcommand("spectral", "pages of the level spectral sequence of QB/QB^(mu)");
    add_params(sp, cfg);
    sp->add_option("--mu", cfg.mu, "levels 0..mu")->capture_default_str();
    sp->add_option("--k-max", cfg.k_max, "orbit multiplicity truncation (default: padding bound)");
    sp->add_option("--max-page", cfg.max_page, "compute at least this many pages")->capture_default_str();
    add_output(sp, cfg, "json");

    auto* ic = app.add_subcommand("index-cases", "solutions of the index and Chern class relations");
    ic->add_option("--l-plus", cfg.l_plus, "constraint on l+: N, =N or >=N")->capture_default_str();
    add_output(ic, cfg, "json");

    auto* qu = app.add_subcommand("quantum", "idempotent splitting of QH_4");
    add_output(qu, cfg, "json");

    auto* fi = app.add_subcommand("fiber", "classify the moment fiber over (a, b)");
    fi->add_option("--a", cfg.a, "value of F")->capture_default_str();
    fi->add_option("--b", cfg.b, "value of G")->capture_default_str();
    fi->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    add_output(fi, cfg, "json");

    auto* aa = app.add_subcommand("alpha-area", "sigma-area enclosed by alpha_b");
    aa->add_option("--b", cfg.b, "b in (-1, 1)")->capture_default_str();
    aa->add_option("--points", cfg.points, "grid size for --format csv")->capture_default_str();
    add_output(aa, cfg, "text, json or csv (b,area over a midpoint grid)");

    auto* ms = app.add_subcommand("moment-svg", "sampled image of the moment map");
    ms->add_option("--n", cfg.n, "number of sample points")->capture_default_str();
    ms->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    add_output(ms, cfg, "svg or csv (F,G per point)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*gen) return cmd_generators(cfg);
        if (*hb) return cmd_homology_b(cfg);
        if (*ml) return cmd_main_lemma(cfg);
        if (*sp) return cmd_spectral(cfg);
        if (*ic) return cmd_index_cases(cfg);
        if (*qu) return cmd_quantum(cfg);
        if (*fi) return cmd_fiber(cfg);
        if (*aa) return cmd_alpha_area(cfg);
        if (*ms) return cmd_moment_svg(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitInvalid;
}
