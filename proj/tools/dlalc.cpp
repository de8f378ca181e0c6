#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dlal/encodings.hpp"
#include "dlal/report.hpp"

using namespace dlal;

namespace {

// File contents, or a built-in corpus entry when no such file exists.
std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    if (!std::filesystem::exists(path)) return to_string(encodings::lookup(path));
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Type inference for Dual Light Affine Logic over System F terms"};
    app.require_subcommand(1);

    std::string file;
    CheckOptions options;
    std::string emit = "text";
    std::vector<std::string> args;
    std::int64_t bound = 0;
    std::uint64_t cap = options.search_cap;

    auto* check = app.add_subcommand("check", "infer a DLAL decoration and report it");
    check->add_option("file", file, "System F term file (or a corpus name)")->required();
    check->add_flag("--verify", options.verify, "check the decoration against the typing conditions");
    check->add_option("--goal", options.goal, "plain DLAL type the conclusion must take");
    check->add_flag("--minimize", options.minimize, "minimize the sum of type parameters");
    check->add_option("--emit", emit, "output format")->check(CLI::IsMember({"text", "json"}));
    check->add_flag("--dump-constraints", options.dump_constraints, "include the constraint store");
    auto* bound_opt = check->add_option("--bound", bound, "cross-check with bounded search at this bound");
    check->add_option("--cap", cap, "candidate cap for --bound");
    check->add_option("--normalize", args, "apply to these arguments (corpus names or terms) and normalize");
    check->add_option("--fuel", options.fuel, "beta step budget");

    auto* dump_cmd = app.add_subcommand("dump", "print the constraint store");
    dump_cmd->add_option("file", file, "System F term file (or a corpus name)")->required();

    std::uint64_t fuel = options.fuel;
    auto* normalize = app.add_subcommand("normalize", "normalize a term applied to arguments");
    normalize->add_option("file", file, "System F term file (or a corpus name)")->required();
    normalize->add_option("args", args, "arguments (corpus names or terms)");
    normalize->add_option("--fuel", fuel, "beta step budget");

    auto* corpus = app.add_subcommand("corpus", "list the built-in encodings");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*corpus) {
            for (const auto& e : encodings::corpus())
                std::cout << e.name << "\t" << e.description << "\t" << to_string(e.term) << "\n";
            return 0;
        }

        std::string source = read_input(file);

        if (*dump_cmd) {
            FTermPtr term = parse_term(source);
            typecheck(term);
            std::cout << dump(gen_all(term).store);
            return 0;
        }

        if (*normalize) {
            FTermPtr term = parse_term(source);
            for (const auto& a : args) term = FTerm::app(term, resolve_term(a));
            typecheck(term);
            NormalForm nf = beta_normalize(term, fuel);
            std::cout << "steps: " << nf.steps << "\n" << to_string(nf.term) << "\n";
            return 0;
        }

        if (!args.empty()) options.normalize = args;
        if (bound_opt->count() > 0) options.bound = bound;
        options.search_cap = cap;
        Report r = run_check_source(source, options);
        std::cout << emit_report(r, emit == "json" ? Format::Json : Format::Text);
        return exit_code(r.status);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_code(Status::IllTyped);
    } catch (const TypeError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return exit_code(Status::IllTyped);
    } catch (const FuelExhausted& e) {
        std::cerr << e.what() << "\n";
        return exit_code(Status::Error);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(Status::Error);
    }
}
