#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "app.hpp"
#include "fracgreen/errors.hpp"

int main(int argc, char** argv) {
  using namespace fracgreen::cli;

  CLI::App app{"Green-function solver for the time-fractional telegraph equation on a strip"};
  Overrides o;
  app.add_option("command", o.command,
                 "gamma | green | solve | oracle | verify | convergence | identities");
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--out", o.out_dir, "output directory");
  app.add_option("--tol", o.tol, "verification tolerance");
  app.add_option("--threads", o.threads, "worker threads for grid evaluation");
  app.add_option("--seed", o.seed, "reserved; no stochastic paths");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = resolve_config(o);
  } catch (const fracgreen::Error& e) {
    std::cerr << "config invalid: " << e.what() << "\n";
    return 2;
  }
  return run(cfg, std::cout, std::cerr);
}
