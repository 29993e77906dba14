#include <iostream>

#include "CLI11.hpp"

#include "foldcheck/cli.hpp"

int main(int argc, char** argv)
{
    foldcheck::cli::Request req;
    std::string target;

    CLI::App app{"Characteristic-class invariants and fold map existence for closed manifolds", "foldcheck"};
    app.add_option("command", req.command, "invariants | decide | thom | span | catalog")
        ->required()
        ->check(CLI::IsMember({"invariants", "decide", "thom", "span", "catalog"}));
    app.add_option("manifold", req.manifold, "expression such as \"2#RP4 # (S2 x S2)\", or a .json document");
    app.add_option("--target", target, "R<p> | sphere:<p> | self | pullback:<file>");
    app.add_flag("--tame", req.tame, "ask about tame fold maps");
    app.add_option("--format", req.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--explain", req.explain, "print the full rule trace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 1;
    }
    if (!target.empty())
        req.target = target;

    const auto res = foldcheck::cli::run(req);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
