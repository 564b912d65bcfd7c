// zs: exact-arithmetic toolkit for the perfect matching association scheme,
// its zonal character tables, and intersecting-family bound certificates.
#include "zs/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for the perfect matching association scheme"};
  app.require_subcommand(1);
  app.fallthrough();

  zs::RunConfig cfg;
  std::string formatStr;
  std::string alphaStr = "2";
  std::string cacheDirStr;

  app.add_option("--cache-dir", cacheDirStr, "directory for cached transition matrices")
      ->envname("ZS_CACHE_DIR");

  const auto addFormat = [&](CLI::App* sub) {
    sub->add_option("--format", formatStr, "output format")
        ->check(CLI::IsMember({"csv", "json", "pretty"}));
  };

  CLI::App* partitions = app.add_subcommand("partitions", "list partitions of n with scheme data");
  partitions->add_option("--n", cfg.n, "weight")->required();
  addFormat(partitions);
  partitions->callback([&] { cfg.command = zs::Command::partitions; });

  CLI::App* matchings = app.add_subcommand("matchings", "enumerate perfect matchings of K_2n");
  matchings->add_option("--n", cfg.n, "half the vertex count")->required();
  addFormat(matchings);
  matchings->callback([&] { cfg.command = zs::Command::matchings; });

  CLI::App* matrix = app.add_subcommand("matrix", "emit a symmetric-function transition matrix");
  matrix->add_option("--kind", cfg.kind, "perm | kostka | alpha-kostka | zonal | char")
      ->required();
  matrix->add_option("--n", cfg.n, "weight")->required();
  matrix->add_option("--alpha", alphaStr, "Jack parameter for alpha-kostka (rational)");
  addFormat(matrix);
  matrix->callback([&] { cfg.command = zs::Command::matrix; });

  CLI::App* scheme = app.add_subcommand("scheme", "build the scheme and print its character table");
  scheme->add_option("--n", cfg.n, "half the vertex count")->required();
  scheme->add_option("--emit", cfg.emit, "p-table | json");
  scheme->callback([&] { cfg.command = zs::Command::scheme; });

  CLI::App* certify = app.add_subcommand("certify", "assemble the ratio-bound certificate");
  certify->add_option("--n", cfg.n, "half the vertex count")->required();
  certify->add_option("--t", cfg.t, "intersection size")->required();
  addFormat(certify);
  certify->callback([&] { cfg.command = zs::Command::certify; });

  CLI::App* scan = app.add_subcommand("scan", "certificate verdicts over a window of n");
  scan->add_option("--t", cfg.t, "intersection size")->required();
  scan->add_option("--n-min", cfg.n_min, "window start")->required();
  scan->add_option("--n-max", cfg.n_max, "window end")->required();
  addFormat(scan);
  scan->callback([&] { cfg.command = zs::Command::scan; });

  CLI::App* brute = app.add_subcommand("brute", "exact maximum-family search / cross checks");
  brute->add_option("--n", cfg.n, "half the vertex count")->required();
  brute->add_option("--t", cfg.t, "intersection size")->required();
  brute->add_flag("--force-brute", cfg.force_brute,
                  "search even when the certificate already proves the bound");
  brute->add_flag("--cross", cfg.cross, "run the cross-intersecting product check instead");
  brute->add_option("--seed", cfg.seed, "sampling seed for --cross");
  brute->add_option("--samples", cfg.samples, "sample count for --cross")
      ->check(CLI::PositiveNumber);
  addFormat(brute);
  brute->callback([&] { cfg.command = zs::Command::brute; });

  CLI::App* derange = app.add_subcommand("derange", "count matchings sharing < t edges with the base");
  derange->add_option("--n", cfg.n, "half the vertex count")->required();
  derange->add_option("--t", cfg.t, "intersection size (default 1)");
  addFormat(derange);
  derange->callback([&] { cfg.command = zs::Command::derange; });

  CLI::App* oracle = app.add_subcommand("oracle", "group-averaging spherical table, checked");
  oracle->add_option("--n", cfg.n, "half the vertex count")->required();
  addFormat(oracle);
  oracle->callback([&] { cfg.command = zs::Command::oracle; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 64;
  }

  try {
    cfg.alpha = zs::parse_rat(alphaStr);
    cfg.cache_dir = cacheDirStr;
    if (!formatStr.empty()) {
      cfg.format_set = true;
      cfg.format = formatStr == "csv"    ? zs::Format::csv
                   : formatStr == "json" ? zs::Format::json
                                         : zs::Format::pretty;
    }
    const zs::RunResult result = zs::run(cfg);
    std::cout << result.out;
    std::cerr << result.err;
    return result.code;
  } catch (const zs::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
