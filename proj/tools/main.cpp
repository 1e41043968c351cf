#include "polycontract/commands.hpp"
#include "polycontract/demos.hpp"
#include "polycontract/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace polycontract;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

int emit(const CommandResult& result, bool machine) {
    if (machine) {
        std::cout << result.machine.dump(2) << "\n";
    } else {
        std::cout << result.human;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificate toolkit for polynomial-type contraction conditions"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string format = "human";
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"human", "machine"}))
            ->capture_default_str();
    };

    std::string path;
    std::string start;
    std::string tolerance = "0";
    std::string lambda_tol;
    std::size_t max_iter = 100000;
    bool bound_check = false;
    unsigned k = 1;
    std::string mode = "full";
    std::string demo_name;
    bool emit_document = false;

    CLI::App* validate = app.add_subcommand("validate", "check metric axioms and document shape");
    validate->add_option("document", path, "problem document (JSON, '-' for stdin)")->required();
    add_format(validate);

    CLI::App* verify = app.add_subcommand("verify", "verify the document's contraction condition");
    verify->add_option("document", path, "problem document (JSON, '-' for stdin)")->required();
    add_format(verify);

    CLI::App* iterate = app.add_subcommand("iterate", "run Picard iteration from a start point");
    iterate->add_option("document", path, "problem document (JSON, '-' for stdin)")->required();
    iterate->add_option("--start", start, "start point (label or rational)")->required();
    iterate->add_option("--tolerance", tolerance, "stop threshold on interval spaces (rational)")
        ->capture_default_str();
    iterate->add_option("--max-iter", max_iter, "iteration cap on interval spaces")
        ->capture_default_str();
    iterate->add_flag("--bound-check", bound_check,
                      "compare observed distances against the a-priori bound");
    add_format(iterate);

    CLI::App* search = app.add_subcommand("search", "synthesize a certificate (finite spaces)");
    search->add_option("document", path, "problem document (JSON, '-' for stdin)")->required();
    search->add_option("--k", k, "family degree")->capture_default_str();
    search->add_option("--mode", mode, "coefficient search space (polynomial kind)")
        ->check(CLI::IsMember({"constant", "full"}))
        ->capture_default_str();
    search->add_option("--lambda-tol", lambda_tol, "bisection tolerance (rational, default 2^-20)");
    add_format(search);

    CLI::App* demo = app.add_subcommand("demo", "run a built-in demo problem");
    demo->add_option("name", demo_name, "one of: ex2.7 ex2.9 ex2.10 ex3.6 ex3.7")->required();
    demo->add_flag("--emit-document", emit_document, "print the embedded problem document");
    add_format(demo);

    CLI11_PARSE(app, argc, argv);
    const bool machine = format == "machine";

    try {
        if (validate->parsed()) {
            return emit(cmd_validate(parse_document(read_input(path))), machine);
        }
        if (verify->parsed()) {
            return emit(cmd_verify(parse_document(read_input(path))), machine);
        }
        if (iterate->parsed()) {
            IterateOptions opts;
            opts.start = start;
            opts.tolerance = parse_rational(tolerance);
            opts.max_iter = max_iter;
            opts.bound_check = bound_check;
            return emit(cmd_iterate(parse_document(read_input(path)), opts), machine);
        }
        if (search->parsed()) {
            SearchOptions opts;
            opts.k = k;
            opts.mode = mode == "constant" ? FamilyMode::constant : FamilyMode::full;
            if (!lambda_tol.empty()) opts.lambda_tol = parse_rational(lambda_tol);
            return emit(cmd_search(parse_document(read_input(path)), opts), machine);
        }
        if (demo->parsed()) {
            if (emit_document) {
                std::cout << demos::document(demo_name) << "\n";
                return 0;
            }
            return emit(cmd_demo(demo_name), machine);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
