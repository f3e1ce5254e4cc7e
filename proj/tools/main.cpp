// cff: Bernoulli-Carlitz scans, L-values, verification suites and Fitting data
// for the Carlitz cyclotomic field of a prime P over F_q[T].

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cli.hpp"

int main(int argc, char** argv) {
    using cff::cli::RunConfig;
    RunConfig cfg;
    CLI::App app{"Cyclotomic function field computations over F_q[T]"};
    app.set_config("--config", "", "read option defaults from a TOML/INI file");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--q", cfg.q, "size of the constant field, as q or p^e")->capture_default_str();
    app.add_option("--P", cfg.P, "monic irreducible polynomial in T, e.g. \"T^2+T+1\"");
    app.add_option("--depth", cfg.inf_depth, "degree depth of the sums at infinity (0: automatic)")->capture_default_str();
    app.add_option("--N", cfg.padic_N, "P-adic precision exponent")->capture_default_str();
    app.add_option("--guard", cfg.guard, "guard digits for integral recognition")->capture_default_str();
    app.add_option("--threads", cfg.threads, "maximum worker threads")->capture_default_str();
    app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();

    auto* bc = app.add_subcommand("bc-scan", "irregular indices n with BC'_n = 0 mod P");
    bc->add_option("--max-n", cfg.max_n, "list only n <= max-n (0: all)");

    auto* lv = app.add_subcommand("l-values", "per-character L(1, chi) at infinity or P-adically");
    lv->add_option("--place", cfg.place, "inf or P")->check(CLI::IsMember({"inf", "P"}))->capture_default_str();

    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("--suites", cfg.suites, "cnf, anderson, b1, cong, euler, charpoly, padic-explog or all")->delimiter(',')->capture_default_str();
    ver->add_option("--max-deg-f", cfg.max_deg_f, "degree bound for the Euler-factor check")->capture_default_str();
    ver->add_option("--max-m", cfg.max_m, "Anderson identities for m = 1..max-m")->capture_default_str();
    ver->add_option("--euler-depth", cfg.euler_B, "degree bound B for the Euler product")->capture_default_str();

    app.add_subcommand("fitting", "odd-part Fitting generators and the even-part P-adic ledger");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    cfg.command = app.get_subcommands().front()->get_name();

    cff::cli::Report rep;
    try {
        rep = cff::cli::run(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: work limit: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "error: cannot write " << cfg.out << '\n';
            return 2;
        }
    }
    std::ostream& os = cfg.out.empty() ? std::cout : file;
    if (cfg.format == "json") cff::cli::write_json(os, rep);
    else if (cfg.format == "csv") cff::cli::write_csv(os, rep);
    else cff::cli::write_text(os, rep);
    return cff::cli::exit_status(rep);
}
