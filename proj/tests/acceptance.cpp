#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "dlal/encodings.hpp"
#include "dlal/report.hpp"
#include "dlal/solver.hpp"
#include "dlal/verify.hpp"

using namespace dlal;

namespace {

// Tolerances.
constexpr double kRev1010Seconds = 5.0;
constexpr double kPaperEquations = 177, kPaperVariables = 79, kCountTolerance = 0.5;
constexpr int kSearchBound = 2;
constexpr int kOracleMaxParams = 6;
constexpr int kOracleSamples = 1000;
constexpr int kRoundTrips = 100;
constexpr int kBooleanMaxParams = 15;
constexpr int kRandomBooleanStores = 200;
constexpr double kQuadraticExponentSlack = 0.15;

const char* kNumDlal = "forall a. (a -o a) => §(a -o a)";

int failures = 0;

CheckOptions verified() {
    CheckOptions o;
    o.verify = true;
    return o;
}

CheckOptions with_goal(const std::string& goal) {
    CheckOptions o;
    o.goal = goal;
    return o;
}

void verdict(int n, bool pass, const std::string& summary) {
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << summary << "\n";
    if (!pass) ++failures;
}

void info(const std::string& s) { std::cout << "    " << s << "\n"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double x, int digits = 3) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << x;
    return s.str();
}

bool within(double value, double reference) {
    return value >= reference * (1 - kCountTolerance) && value <= reference * (1 + kCountTolerance);
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// First application below the root, skipping doors.
NodeId top_application(const PseudoTerm& t) {
    NodeId n = t.root();
    while (t.node(n).kind == SNode::Kind::Door || t.node(n).kind == SNode::Kind::AuxDoor) n = t.node(n).child[0];
    return t.node(n).kind == SNode::Kind::App ? n : kNoNode;
}

std::string alternating(std::size_t n, std::size_t phase = 0) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i) w += ((i + phase) % 2) ? '0' : '1';
    return w;
}

bool admissible_and_solves(const PTerm& t, const ConstraintStore& store, const Instantiation& phi) {
    return !admissibility_violation(t, phi) && !store.first_violation(phi);
}

bool verifies(const PTerm& t, const Instantiation& phi) {
    if (admissibility_violation(t, phi)) return false;
    return !verify_all(instantiate(t, phi));
}

// Raises bang combinations to 1 where their boolean is set.
void make_admissible(const PTerm& t, Instantiation& phi) {
    struct Fix : PTypeVisitor {
        Instantiation* phi;
        void bang(const BangPType& d) override {
            if (phi->get(d.b) && phi->eval(d.c) < 1) phi->integers[d.c.terms().begin()->first] = 1;
        }
    } fix;
    fix.phi = &phi;
    for (const auto& [x, d] : t.variables()) walk(d, fix);
    for (NodeId n = 0; n < t.size(); ++n)
        if (t.node(n).kind == PNode::Kind::TApp) walk(t.node(n).type_arg, fix);
}

// ---------------------------------------------------------------------------

void criterion1() {
    FTermPtr m = encodings::rev_applied("1010");
    auto t0 = std::chrono::steady_clock::now();
    Report r = run_check(m, verified());
    double secs = seconds_since(t0);
    if (r.status != Status::Typable) {
        verdict(1, false, "rev(1010) returned " + std::string(to_string(r.status)) + ": " + r.diagnostic);
        return;
    }
    bool erasure = alpha_equal(erase(*r.decoration), m);
    FTypePtr w = encodings::word_type();
    bool whole = alpha_equal(erase(r.type), w) && r.depth == 1;

    ConcreteTyping lt = check_local_typing(*r.decoration);
    NodeId app = top_application(*r.decoration);
    bool rev_type = false;
    std::string rev_shown = "?";
    if (!lt.violation && app != kNoNode) {
        DTypePtr f = star_inverse(lt.type(r.decoration->node(app).child[0]));
        rev_shown = to_string(f);
        rev_type = alpha_equal(erase(f), FType::arrow(w, w)) && depth(f) <= 1;
    }
    bool verified = r.verify && *r.verify == "pass";
    std::size_t equations = r.lp_rows;
    bool counts = within(static_cast<double>(equations), kPaperEquations) &&
                  within(static_cast<double>(r.int_params), kPaperVariables);
    bool fast = secs < kRev1010Seconds;

    verdict(1, erasure && whole && rev_type && verified && counts && fast,
            "typable, verify " + r.verify.value_or("-") + ", " + fixed(secs) + " s");
    info("decoration erases to the input: " + std::string(erasure ? "yes" : "no"));
    info("conclusion " + to_string(r.type) + " (erases to W_F: " + (alpha_equal(erase(r.type), w) ? "yes" : "no") +
         ", depth " + std::to_string(r.depth) + ")");
    info("rev operator type " + rev_shown + " (erases to W_F -> W_F: " + (rev_type ? "yes" : "no") + ")");
    info("linear system " + std::to_string(equations) + " (in)equations on " + std::to_string(r.int_params) +
         " integer parameters; paper 177 on 79; tolerance ±50%");
    info("store " + std::to_string(r.boolean + r.linear + r.mixed) + " atoms (boolean " + std::to_string(r.boolean) +
         ", linear " + std::to_string(r.linear) + ", mixed " + std::to_string(r.mixed) + "), " +
         std::to_string(r.bool_params) + " boolean parameters");
}

void criterion2() {
    std::vector<std::pair<std::string, FTermPtr>> cases = {
        {"id", encodings::identity()},         {"rev", encodings::rev()},
        {"concat", encodings::concat()},       {"compose", encodings::compose()},
        {"revrev", encodings::rev_twice()},    {"concat-words", encodings::lookup("concat-words")},
    };
    std::mt19937 rng(1016);
    std::vector<std::string> words;
    for (std::size_t n = 0; n <= 16; ++n) {
        words.push_back(alternating(n));
        std::string w;
        for (std::size_t i = 0; i < n; ++i) w += (rng() % 2) ? '1' : '0';
        words.push_back(w);
    }
    std::size_t ok = 0, total = 0, word_types = 0;
    std::vector<std::string> bad;
    FTypePtr wf = encodings::word_type();
    auto run = [&](const std::string& name, const FTermPtr& m, bool word) {
        ++total;
        Report r = run_check(m, verified());
        bool pass = r.status == Status::Typable && r.verify == "pass";
        if (pass && word) {
            bool w = alpha_equal(erase(r.type), wf);
            word_types += w;
            pass = w;
        }
        if (pass) ++ok;
        else bad.push_back(name);
    };
    for (const auto& [name, m] : cases) run(name, m, false);
    for (const auto& w : words) run("word:" + w, encodings::word(w), true);
    std::string summary = std::to_string(ok) + "/" + std::to_string(total) + " typable with verify pass, " +
                          std::to_string(word_types) + "/" + std::to_string(words.size()) +
                          " words conclude in a type erasing to W_F";
    verdict(2, ok == total, summary);
    for (const auto& b : bad) info("failed: " + b);
}

void criterion3() {
    FTermPtr m = encodings::exp();
    Report r = run_check(m, verified());
    bool untypable = r.status == Status::Untypable;
    std::string search;
    bool empty = false;
    try {
        empty = bounded_search(m, SearchOptions{kSearchBound}).empty();
        search = empty ? "empty" : "nonempty";
    } catch (const SearchCapExceeded& e) {
        search = std::string("not run: ") + e.what();
    }
    verdict(3, untypable && empty,
            std::string("exp returned ") + to_string(r.status) + "; bounded_search at bound 2: " + search);
    if (r.status == Status::Typable) {
        info("decoration " + to_string(*r.decoration));
        info("conclusion " + to_string(r.type) + ", verify " + r.verify.value_or("-"));
        std::int64_t lo = 0, hi = 0;
        Generated g = gen_all(m);
        Solution s = solve_all(g.store);
        for (const auto& [p, v] : s.phi.integers) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        info("solver parameters lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
             "], so a bound-2 search would contain this solution");
    }
    std::string goal = "(" + std::string(kNumDlal) + ") -o " + kNumDlal;
    Report g = run_check(m, with_goal(goal));
    info("with goal N_DLAL -o N_DLAL: " + std::string(to_string(g.status)) + (g.phase.empty() ? "" : " (" + g.phase + ")"));
}

void criterion4() {
    std::vector<std::pair<std::string, FTermPtr>> small;
    std::size_t exhaustive_checked = 0, exhaustive_mismatch = 0;
    std::size_t sampled = 0, sampled_mismatch = 0, sampled_valid = 0;
    std::vector<std::string> notes;
    std::mt19937 rng(4);

    for (const auto& e : encodings::corpus()) {
        Generated g = gen_all(e.term);
        const PTerm& t = g.typed.term;
        std::set<IntParam> int_set = t.int_params();
        std::set<BoolParam> bool_set = t.bool_params();
        std::vector<IntParam> ints(int_set.begin(), int_set.end());
        std::vector<BoolParam> bools(bool_set.begin(), bool_set.end());
        auto compare = [&](const Instantiation& phi, std::size_t& count, std::size_t& mismatch) {
            ++count;
            bool lhs = admissible_and_solves(t, g.store, phi);
            bool rhs = verifies(t, phi);
            sampled_valid += (&count == &sampled) && rhs;
            if (lhs != rhs) {
                ++mismatch;
                if (notes.size() < 5) {
                    auto v = admissibility_violation(t, phi) ? std::nullopt : verify_all(instantiate(t, phi));
                    auto c = g.store.first_violation(phi);
                    notes.push_back(e.name + ": store " + (lhs ? "holds" : "fails") + ", verify " +
                                    (rhs ? "passes" : "fails") +
                                    (c ? " [" + to_string(c->atom) + " | " + c->rule + "]" : "") +
                                    (v ? " [" + to_string(*v) + "]" : ""));
                }
            }
        };
        if (ints.size() + bools.size() <= static_cast<std::size_t>(kOracleMaxParams)) {
            small.push_back({e.name, e.term});
            Instantiation phi;
            std::vector<std::int64_t> v(ints.size(), -kSearchBound);
            for (;;) {
                for (std::uint32_t mask = 0; mask < (1u << bools.size()); ++mask) {
                    for (std::size_t i = 0; i < ints.size(); ++i) phi.integers[ints[i]] = v[i];
                    for (std::size_t i = 0; i < bools.size(); ++i) phi.booleans[bools[i]] = (mask >> i) & 1;
                    compare(phi, exhaustive_checked, exhaustive_mismatch);
                }
                std::size_t i = 0;
                while (i < v.size() && v[i] == kSearchBound) v[i++] = -kSearchBound;
                if (i == v.size()) break;
                ++v[i];
            }
            continue;
        }
        // Sampled: uniform draws and perturbations of the solver's solution.
        Solution s = solve_all(g.store);
        std::uniform_int_distribution<std::int64_t> value(-kSearchBound, kSearchBound);
        for (int k = 0; k < kOracleSamples; ++k) {
            Instantiation phi;
            bool perturb = s.status == Solution::Status::Solved && k % 2 == 0;
            if (perturb) {
                phi = s.phi;
                for (int j = 0, changes = 1 + static_cast<int>(rng() % 3); j < changes; ++j) {
                    if (!bools.empty() && rng() % 3 == 0) {
                        BoolParam b = bools[rng() % bools.size()];
                        phi.booleans[b] = !phi.get(b);
                    } else {
                        phi.integers[ints[rng() % ints.size()]] = value(rng);
                    }
                }
            } else {
                for (IntParam p : ints) phi.integers[p] = value(rng);
                for (BoolParam b : bools) phi.booleans[b] = rng() % 2;
            }
            compare(phi, sampled, sampled_mismatch);
        }
    }
    std::string names;
    for (const auto& [n, m] : small) names += (names.empty() ? "" : ", ") + n;
    verdict(4, !small.empty() && exhaustive_mismatch == 0,
            std::to_string(exhaustive_checked) + " exhaustive assignments over {" + names + "}, " +
                std::to_string(exhaustive_mismatch) + " mismatches");
    info("sampled above 6 parameters: " + std::to_string(sampled) + " draws (" + std::to_string(sampled_valid) +
         " verify-valid), " + std::to_string(sampled_mismatch) + " mismatches");
    for (const auto& n : notes) info(n);
}

void criterion5() {
    std::mt19937 rng(5);
    std::size_t total = 0, failed = 0;
    for (const auto& e : encodings::corpus()) {
        ParamPool pool;
        PTerm t = free_decoration(e.term, pool);
        for (int k = 0; k < kRoundTrips; ++k) {
            Instantiation phi;
            for (BoolParam b : t.bool_params()) phi.booleans[b] = rng() % 2;
            for (IntParam p : t.int_params())
                phi.integers[p] = p.door ? static_cast<int>(rng() % 5) - 2 : static_cast<int>(rng() % 3);
            make_admissible(t, phi);
            ++total;
            if (admissibility_violation(t, phi) || !alpha_equal(erase(instantiate(t, phi)), e.term)) ++failed;
        }
    }
    verdict(5, failed == 0,
            std::to_string(total) + " admissible instantiations (" + std::to_string(kRoundTrips) +
                " per corpus term), " + std::to_string(failed) + " erasure failures");
}

void criterion6() {
    std::vector<std::pair<std::string, std::vector<Constraint>>> stores;
    for (const auto& e : encodings::corpus()) stores.push_back({e.name, gen_all(e.term).store.boolean()});
    {
        Generated g = gen_all(encodings::exp());
        std::string goal = "(" + std::string(kNumDlal) + ") -o " + kNumDlal;
        for (const auto& a : *match_goal(g.typed.conclusion(), star(parse_dtype(goal))))
            g.store.add(Constraint{a, "goal", {}});
        stores.push_back({"exp with goal", g.store.boolean()});
    }
    std::mt19937 rng(6);
    for (int k = 0; k < kRandomBooleanStores; ++k) {
        std::uint32_t n = 1 + rng() % kBooleanMaxParams;
        std::vector<Constraint> cs;
        for (std::uint32_t i = 0, atoms = rng() % 20; i < atoms; ++i) {
            BoolParam x{1 + static_cast<std::uint32_t>(rng() % n)}, y{1 + static_cast<std::uint32_t>(rng() % n)};
            switch (rng() % 5) {
                case 0: cs.push_back({Atom::bool_eq(x, y), "random", {}}); break;
                case 1:
                case 2: cs.push_back({Atom::bool_impl(x, y), "random", {}}); break;
                case 3: cs.push_back({Atom::bool_const(x, true), "random", {}}); break;
                default: cs.push_back({Atom::bool_const(x, false), "random", {}}); break;
            }
        }
        stores.push_back({"random", cs});
    }

    std::size_t checked = 0, skipped = 0, mismatches = 0, unsat = 0;
    for (const auto& [name, cs] : stores) {
        std::set<BoolParam> params;
        for (const auto& c : cs) {
            params.insert(c.atom.b1);
            if (c.atom.kind == Atom::Kind::BoolEq || c.atom.kind == Atom::Kind::BoolImpl) params.insert(c.atom.b2);
        }
        if (params.size() > static_cast<std::size_t>(kBooleanMaxParams)) {
            ++skipped;
            continue;
        }
        ++checked;
        std::vector<BoolParam> ps(params.begin(), params.end());
        BooleanResult r = solve_boolean_minimal(cs);
        bool any = false, bad = false;
        for (std::uint32_t mask = 0; mask < (1u << ps.size()); ++mask) {
            Instantiation phi;
            for (std::size_t i = 0; i < ps.size(); ++i) phi.booleans[ps[i]] = (mask >> i) & 1;
            bool sat = true;
            for (const auto& c : cs) sat = sat && holds(c.atom, phi);
            if (!sat) continue;
            any = true;
            if (!r.assignment) continue;
            for (const auto& [b, v] : *r.assignment)
                if (v && !phi.get(b)) bad = true;
        }
        if (r.assignment) {
            Instantiation psi;
            psi.booleans = *r.assignment;
            for (const auto& c : cs) bad = bad || !holds(c.atom, psi);
        }
        unsat += !any;
        if (bad || any != r.assignment.has_value()) ++mismatches;
    }
    verdict(6, mismatches == 0,
            std::to_string(checked) + " stores with <= 15 boolean parameters (" + std::to_string(unsat) +
                " unsatisfiable), " + std::to_string(mismatches) + " mismatches");
    info(std::to_string(skipped) + " corpus stores skipped for having more than 15 boolean parameters");
}

void criterion7() {
    std::size_t solved = 0, failed = 0, fractional = 0;
    auto check = [&](const ConstraintStore& store, const SolveOptions& o) {
        Solution s = solve_all(store, o);
        if (s.status != Solution::Status::Solved) return;
        ++solved;
        if (store.first_violation(s.phi)) ++failed;
    };
    for (const auto& e : encodings::corpus()) {
        Generated g = gen_all(e.term);
        check(g.store, {false});
        check(g.store, {true});
    }
    for (std::size_t n = 9; n <= 16; ++n) check(gen_all(encodings::word(alternating(n))).store, {});

    // Homogeneous random systems, where vertices are often fractional.
    std::mt19937 rng(7);
    for (int k = 0; k < 300; ++k) {
        ConstraintStore store;
        std::uint32_t n = 2 + rng() % 4;
        auto comb = [&] {
            LinComb c;
            for (std::uint32_t i = 1; i <= n; ++i)
                for (int j = static_cast<int>(rng() % 5) - 2; j != 0; j += j > 0 ? -1 : 1)
                    c += j > 0 ? LinComb(IntParam{i, false}) : LinComb();
            return c;
        };
        for (std::uint32_t i = 0, atoms = 1 + rng() % 5; i < atoms; ++i) {
            LinComb a = comb(), b = comb();
            switch (rng() % 3) {
                case 0: store.add({Atom::lin_eq(a, b), "random", {}}); break;
                case 1: store.add({Atom::lin_geq(a, 1), "random", {}}); break;
                default: store.add({Atom::lin_geq(a, 0), "random", {}}); break;
            }
        }
        std::vector<LinearRow> rows;
        for (const auto& c : store.linear()) rows.push_back(to_row(c.atom, &c));
        LpResult lp = lp_feasible(rows);
        if (!lp.feasible) continue;
        for (const auto& [p, v] : lp.values)
            if (v.get_den() != 1) {
                ++fractional;
                break;
            }
        check(store, {});
    }
    verdict(7, failed == 0,
            std::to_string(solved) + " solved instances re-checked exactly (" + std::to_string(fractional) +
                " with a fractional vertex), " + std::to_string(failed) + " failures");
}

void criterion8() {
    struct Case {
        const char* name;
        const char* term;
        const char* expected;
    };
    std::vector<Case> cases = {
        {"dereliction", "\\x:§a. §- x", "bracketing (iii)"},
        {"digging", "\\x:§a. § x", "bracketing (iii)"},
        {"monoidalness !A (x) !B", "\\x:!(a -o b). \\y:!b -o c. \\z:!a. y (§ (§- x (§- z)))", "bang (i)"},
        {"monoidalness §A to !A", "\\x:§a. \\y:!a -o b. y (§ (§- x))", "bang (i)"},
        {"t2 (Barcan)", "\\x:forall a. §(a -o a). § /\\a. §- (x [a])", "scope"},
        {"t1", "\\x:§(forall a. a -o a). /\\a. § (§- x [a])", "pass"},
    };
    std::size_t ok = 0;
    std::vector<std::string> lines;
    for (const auto& c : cases) {
        auto v = verify_all(parse_pseudo(c.term));
        std::string got = v ? v->condition + (v->clause.empty() ? "" : " (" + v->clause + ")") : "pass";
        ok += got == c.expected;
        lines.push_back(std::string(c.name) + ": " + got + (got == c.expected ? "" : " (expected " + std::string(c.expected) + ")"));
    }
    verdict(8, ok == cases.size(), std::to_string(ok) + "/" + std::to_string(cases.size()) + " at the named clause");
    for (const auto& l : lines) info(l);
}

void criterion9() {
    std::vector<double> sizes, steps;
    std::string table;
    for (std::size_t n : {4u, 8u, 16u}) {
        FTermPtr w = encodings::word(alternating(n));
        NormalForm nf = beta_normalize(FTerm::app(encodings::rev(), w), 10'000'000);
        sizes.push_back(static_cast<double>(term_size(w)));
        steps.push_back(static_cast<double>(nf.steps));
        table += (table.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " |input|=" +
                 std::to_string(term_size(w)) + " steps=" + std::to_string(nf.steps);
    }
    double c = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) c = std::max(c, steps[i] / (sizes[i] * sizes[i]));
    double slope = loglog_slope(sizes, steps);
    verdict(9, slope <= 2 + kQuadraticExponentSlack,
            "steps <= " + fixed(c, 4) + " |input|^2 on all three inputs; log-log growth exponent " + fixed(slope, 2));
    info(table);
}

void criterion10() {
    std::vector<double> ns, atoms;
    double max_ratio = 0, last_ratio = 0;
    for (std::size_t n = 2; n <= 32; ++n) {
        std::size_t a = gen_all(encodings::word(alternating(n))).store.size();
        ns.push_back(static_cast<double>(n));
        atoms.push_back(static_cast<double>(a));
        last_ratio = static_cast<double>(a) / static_cast<double>(n * n);
        max_ratio = std::max(max_ratio, last_ratio);
    }
    double slope = loglog_slope(ns, atoms);
    verdict(10, slope <= 2 + kQuadraticExponentSlack,
            "atoms/n^2 <= " + fixed(max_ratio, 2) + " for n = 2..32 (" + fixed(last_ratio, 2) +
                " at n = 32); log-log growth exponent " + fixed(slope, 2));
    info("atoms at n = 2, 8, 16, 32: " + std::to_string(static_cast<long>(atoms[0])) + ", " +
         std::to_string(static_cast<long>(atoms[6])) + ", " + std::to_string(static_cast<long>(atoms[14])) + ", " +
         std::to_string(static_cast<long>(atoms[30])));
}

}  // namespace

int main() {
    std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9, criterion10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            verdict(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
        }
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass\n";
    return failures == 0 ? 0 : 1;
}
