#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "qdyn/cli/commands.hpp"
#include "qdyn/cli/parse_poly.hpp"
#include "qdyn/error.hpp"

namespace {

using qdyn::cli::CommandResult;
using qdyn::cli::ExitCode;

struct Args {
  std::string f, g, a0 = "0", mode, mask, per_prime;
  unsigned depth = 4;
  unsigned height = 3;
  unsigned bound_depth = 0;
  std::uint64_t limit = 10000;
  std::uint64_t trials = 100000;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic dynamics of quadratic recurrences: orbits, stability, certificates, densities"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too
  app.set_version_flag("--version", qdyn::cli::kVersion);

  qdyn::cli::RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--effort", cfg.effort.rho_iterations, "Pollard-rho iteration budget per factorization")
      ->capture_default_str();
  app.add_option("--trial-bound", cfg.effort.trial_bound, "Trial division bound")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (results do not depend on this)")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  Args a;
  auto* orbit = app.add_subcommand("orbit", "Factor g(f^n(gamma)) for n = 1..depth and classify primes");
  auto* stability = app.add_subcommand("stability", "Irreducibility of g(f^n(x)) for n = 0..depth");
  auto* certify = app.add_subcommand("certify", "Maximality certificates and rigid divisibility");
  auto* density = app.add_subcommand("density", "Fraction of primes up to a limit dividing the orbit of a0");
  auto* bound = app.add_subcommand("bound", "Mod-p preimage upper bounds P(X_n > 0)");
  auto* galois = app.add_subcommand("galois", "Fixed-point process on the iterated wreath product");
  auto* classify = app.add_subcommand("classify", "Match f against the density-zero families");

  for (auto* sub : {orbit, stability, certify, density, bound, classify}) {
    sub->add_option("--f", a.f, "Polynomial f, e.g. \"x^2 + 5\"")->required();
  }
  for (auto* sub : {orbit, stability, certify, density, bound}) {
    sub->add_option("--g", a.g, "Polynomial g (default x)");
  }
  for (auto* sub : {orbit, stability, certify, bound}) {
    sub->add_option("--depth", a.depth, "Depth N")->required()->check(CLI::Range(0u, 64u));
  }
  density->add_option("--a0", a.a0, "Starting value")->required();
  for (auto* sub : {density, bound}) {
    sub->add_option("--limit", a.limit, "Prime bound X")->required()->check(CLI::Range(2.0, 4294967295.0));
  }
  density->add_option("--per-prime", a.per_prime, "Write p,member,steps,cycle_len rows to this CSV path (- for stdout)");
  density->add_option("--bound-depth", a.bound_depth, "Also report preimage upper bounds up to this depth")
      ->check(CLI::Range(0u, 20u));
  galois->add_option("--mode", a.mode, "enumerate, recursion or sample")
      ->required()
      ->check(CLI::IsMember({"enumerate", "recursion", "sample"}));
  galois->add_option("--height", a.height, "Tree height N")->required()->check(CLI::Range(1u, 62u));
  galois->add_option("--trials", a.trials, "Monte Carlo trials")->capture_default_str();
  galois->add_option("--mask", a.mask, "Per-level layer kinds: m = full, o = order two");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  try {
    CommandResult r;
    if (*orbit) {
      r = qdyn::cli::cmd_orbit(a.f, a.g, a.depth, cfg);
    } else if (*stability) {
      r = qdyn::cli::cmd_stability(a.f, a.g, a.depth, cfg);
    } else if (*certify) {
      r = qdyn::cli::cmd_certify(a.f, a.g, a.depth, cfg);
    } else if (*density) {
      r = qdyn::cli::cmd_density(a.f, a.a0, a.limit, a.g, !a.per_prime.empty(), a.bound_depth, cfg);
    } else if (*bound) {
      r = qdyn::cli::cmd_bound(a.f, a.g, a.depth, a.limit, cfg);
    } else if (*galois) {
      r = qdyn::cli::cmd_galois(a.mode, a.height, a.trials, a.mask, cfg);
    } else {
      r = qdyn::cli::cmd_classify(a.f, cfg);
    }
    if (!a.per_prime.empty()) {
      if (a.per_prime == "-") {
        std::cout << r.csv;
      } else {
        std::ofstream out(a.per_prime);
        if (!out) throw std::runtime_error("cannot write " + a.per_prime);
        out << r.csv;
      }
    }
    std::cout << qdyn::cli::render(r.doc, cfg.format);
    return static_cast<int>(r.exit);
  } catch (const qdyn::parse_error& e) {
    std::cerr << "qdyn: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  } catch (const std::invalid_argument& e) {
    std::cerr << "qdyn: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  } catch (const qdyn::unsupported_size& e) {
    std::cerr << "qdyn: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  } catch (const std::exception& e) {
    std::cerr << "qdyn: error: " << e.what() << "\n";
    return 3;
  }
}
