#include "dlal/report.hpp"

#include <json.hpp>
#include <sstream>

#include "dlal/encodings.hpp"
#include "dlal/solver.hpp"
#include "dlal/verify.hpp"

namespace dlal {

const char* to_string(Status s) {
    switch (s) {
        case Status::Typable: return "typable";
        case Status::Untypable: return "untypable";
        case Status::IllTyped: return "ill-typed";
        case Status::Error: return "error";
    }
    return "error";
}

int exit_code(Status s) {
    switch (s) {
        case Status::Typable: return 0;
        case Status::Untypable: return 1;
        case Status::IllTyped: return 2;
        case Status::Error: return 3;
    }
    return 3;
}

FTermPtr resolve_term(std::string_view text) {
    try {
        return encodings::lookup(text);
    } catch (const std::invalid_argument&) {
        return parse_term(text);
    }
}

namespace {

using clock = std::chrono::steady_clock;

std::chrono::microseconds since(clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
}

std::string line(const Constraint& c) { return to_string(c.atom) + " | " + c.rule + " | " + to_string(c.path); }

void fail(Report& r, Status s, std::string phase, std::string diagnostic) {
    r.status = s;
    r.phase = std::move(phase);
    r.diagnostic = std::move(diagnostic);
}

}  // namespace

Report run_check(const FTermPtr& term, const CheckOptions& options) {
    Report r;
    r.term = term;
    try {
        r.system_f_type = typecheck(term);
    } catch (const TypeError& e) {
        fail(r, Status::IllTyped, "typecheck", e.what());
        return r;
    }

    try {
        auto t0 = clock::now();
        Generated g = gen_all(term);
        if (options.goal) {
            DTypePtr goal;
            try {
                goal = star(parse_dtype(encodings::expand_dlal_abbreviations(*options.goal)));
            } catch (const std::exception& e) {
                fail(r, Status::Error, "goal", std::string("bad goal type: ") + e.what());
                return r;
            }
            if (!alpha_equal(erase(goal), r.system_f_type)) {
                fail(r, Status::IllTyped, "goal",
                     "goal erases to " + to_string(erase(goal)) + " but the term has type " +
                         to_string(r.system_f_type));
                return r;
            }
            auto atoms = match_goal(g.typed.conclusion(), goal);
            if (!atoms) {
                fail(r, Status::Untypable, "goal", "the goal does not match the shape of the conclusion");
                return r;
            }
            for (const auto& a : *atoms) g.store.add(Constraint{a, "goal", {}});
        }
        r.generation = since(t0);
        r.boolean = g.store.boolean().size();
        r.linear = g.store.linear().size();
        r.mixed = g.store.mixed().size();
        r.int_params = g.store.int_params().size();
        r.bool_params = g.store.bool_params().size();
        if (options.dump_constraints) {
            std::istringstream in(dump(g.store));
            for (std::string l; std::getline(in, l);) r.constraints.push_back(l);
        }

        Solution s = solve_all(g.store, SolveOptions{options.minimize});
        r.boolean_time = s.boolean_time;
        r.linear_time = s.linear_time;
        r.scaling_time = s.scaling_time;
        r.lp_rows = s.lp_rows;
        if (s.status != Solution::Status::Solved) {
            for (const auto& c : s.certificate) r.violations.push_back(line(c));
            if (s.status == Solution::Status::BooleanUnsat)
                fail(r, Status::Untypable, "boolean", to_string(s.conflict) + " is forced to both 0 and 1");
            else
                fail(r, Status::Untypable, "linear", "the linear system is infeasible");
        } else {
            r.status = Status::Typable;
            r.decoration = instantiate(g.typed.term, s.phi);
            r.type = star_inverse(instantiate(g.typed.conclusion(), s.phi));
            r.depth = depth(r.type);
            r.pi1 = is_pi1(r.type);
            if (options.verify) {
                t0 = clock::now();
                auto v = verify_all(*r.decoration);
                r.verify_time = since(t0);
                r.verify = v ? to_string(*v) : "pass";
                if (v) r.violations.push_back(*r.verify);
            }
        }

        if (options.normalize) {
            FTermPtr applied = term;
            for (const auto& a : *options.normalize) applied = FTerm::app(applied, resolve_term(a));
            typecheck(applied);
            try {
                NormalForm nf = beta_normalize(applied, options.fuel);
                r.steps = nf.steps;
                r.normal_form = nf.term;
            } catch (const FuelExhausted& e) {
                r.diagnostic = e.what();
            }
        }

        if (options.bound) {
            try {
                r.search_found = bounded_search(term, SearchOptions{*options.bound, options.search_cap}).size();
            } catch (const SearchCapExceeded& e) {
                r.search_note = e.what();
            }
        }
    } catch (const ParseError& e) {
        fail(r, Status::IllTyped, "parse", e.what());
    } catch (const TypeError& e) {
        fail(r, Status::IllTyped, "typecheck", e.what());
    } catch (const std::exception& e) {
        fail(r, Status::Error, "internal", e.what());
    }
    return r;
}

Report run_check_source(std::string_view source, const CheckOptions& options) {
    FTermPtr term;
    try {
        term = parse_term(source);
    } catch (const ParseError& e) {
        Report r;
        fail(r, Status::IllTyped, "parse", e.what());
        return r;
    }
    return run_check(term, options);
}

std::string bound_statement(const Report& r) {
    if (!r.pi1) return "typable; step bound theorem not applicable (non-Π1 type)";
    return "normalizes in O(|M|^" + std::to_string(1u << r.depth) + ") steps";
}

namespace {

std::string emit_json(const Report& r) {
    using nlohmann::json;
    json j;
    j["status"] = to_string(r.status);
    if (!r.phase.empty()) j["phase"] = r.phase;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    if (r.status == Status::Typable) {
        j["type"] = {{"pretty", to_string(r.type)}, {"starred", to_string(star(r.type))},
                     {"erased", to_string(erase(r.type))}};
        j["depth"] = r.depth;
        j["pi1"] = r.pi1;
        j["bound_exponent"] = r.pi1 ? json(1u << r.depth) : json(nullptr);
        j["bound"] = bound_statement(r);
        j["decoration"] = to_string(*r.decoration);
    } else {
        j["type"] = nullptr;
        j["depth"] = nullptr;
        j["pi1"] = nullptr;
        j["bound_exponent"] = nullptr;
        j["decoration"] = nullptr;
    }
    j["counts"] = {{"boolean", r.boolean}, {"linear", r.linear}, {"mixed", r.mixed},
                   {"integer_parameters", r.int_params}, {"boolean_parameters", r.bool_params},
                   {"lp_rows", r.lp_rows}};
    j["violations"] = r.violations;
    if (r.verify) j["verify"] = *r.verify;
    if (!r.constraints.empty()) j["constraints"] = r.constraints;
    if (r.steps) j["normalization"] = {{"steps", *r.steps}, {"normal_form", to_string(r.normal_form)}};
    if (r.search_found) j["search"] = {{"found", *r.search_found}};
    else if (!r.search_note.empty()) j["search"] = {{"note", r.search_note}};
    auto ms = [](std::chrono::microseconds t) { return static_cast<double>(t.count()) / 1000.0; };
    j["timings"] = {{"generation_ms", ms(r.generation)}, {"boolean_ms", ms(r.boolean_time)},
                    {"linear_ms", ms(r.linear_time)}, {"scaling_ms", ms(r.scaling_time)},
                    {"verify_ms", ms(r.verify_time)}};
    return j.dump(2) + "\n";
}

std::string emit_text(const Report& r) {
    std::ostringstream out;
    out << "status: " << to_string(r.status);
    if (!r.phase.empty()) out << " (" << r.phase << ")";
    out << "\n";
    if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << "\n";
    if (r.status == Status::Typable || r.status == Status::Untypable)
        out << "constraints: " << r.boolean + r.linear + r.mixed << " (boolean " << r.boolean << ", linear " << r.linear
            << ", mixed " << r.mixed << ") on " << r.int_params + r.bool_params << " parameters ("
            << r.int_params << " integer, " << r.bool_params << " boolean); " << r.lp_rows << " linear rows solved\n";
    if (r.status == Status::Typable) {
        out << "decoration:\n  " << to_string(*r.decoration) << "\n";
        out << "type: " << to_string(r.type) << "\n";
        out << "depth: " << r.depth << "\n";
        out << "pi1: " << (r.pi1 ? "yes" : "no") << "\n";
        out << "bound: " << bound_statement(r) << "\n";
    }
    if (r.verify) out << "verify: " << *r.verify << "\n";
    if (r.status == Status::Untypable && !r.violations.empty()) {
        out << "certificate:\n";
        for (const auto& v : r.violations) out << "  " << v << "\n";
    }
    if (r.steps) out << "normalization: " << *r.steps << " steps to " << to_string(r.normal_form) << "\n";
    if (r.search_found) out << "bounded search: " << *r.search_found << " instantiations\n";
    else if (!r.search_note.empty()) out << "bounded search: " << r.search_note << "\n";
    if (r.status == Status::Typable || r.status == Status::Untypable)
        out << "timings (ms): generation " << r.generation.count() / 1000.0 << ", boolean "
            << r.boolean_time.count() / 1000.0 << ", linear " << r.linear_time.count() / 1000.0 << ", scaling "
            << r.scaling_time.count() / 1000.0 << ", verify " << r.verify_time.count() / 1000.0 << "\n";
    if (!r.constraints.empty()) {
        out << "constraint dump:\n";
        for (const auto& c : r.constraints) out << c << "\n";
    }
    return out.str();
}

}  // namespace

std::string emit_report(const Report& r, Format format) {
    return format == Format::Json ? emit_json(r) : emit_text(r);
}

}  // namespace dlal
