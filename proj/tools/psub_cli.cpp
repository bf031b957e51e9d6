// psub: command-line front end for the p-subgroup poset library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psub/psub.hpp"

namespace
{

using namespace psub;

std::string opt_str(std::optional<bool> b)
{
  return b ? (*b ? "true" : "false") : "skipped";
}

void print_report(std::ostream &os, HomotopyReport const &r)
{
  os << "group            " << r.name << " (order " << r.order << ")\n";
  os << "prime            " << r.p << ", |G|_p = " << r.p_part << "\n";
  os << "|S_p|, |A_p|     " << r.sp_size << ", " << r.ap_size << "\n";
  os << "core sizes       " << r.sp_core << ", " << r.ap_core << "\n";
  os << "same type        " << (r.same_type ? "yes" : "no") << "\n";
  os << "|O_p(G)|         " << r.op_order << "\n";
  os << "contractible     S_p " << (r.sp_contractible ? "yes" : "no") << ", A_p "
     << (r.ap_contractible ? "yes" : "no") << "\n";
  os << "heights          " << r.sp_height << ", " << r.ap_height << "\n";
  if (r.steps_computed)
    os << "A_p steps        " << (r.ap_steps ? std::to_string(*r.ap_steps) : "none") << "\n";
  else
    os << "A_p steps        skipped\n";
  os << "step predicates ";
  for (unsigned n = 0; n < 4; ++n)
    os << " n=" << n << ":" << opt_str(r.predicates[n]);
  os << "\n";
  os << "filter A         "
     << (r.propA.case_hit ? "case " + std::to_string(*r.propA.case_hit) : "none")
     << (r.propA.retract ? " (A_p is a retract of S_p)" : "") << "\n";
  os << "filter B         " << (r.propB ? "case " + std::to_string(*r.propB) : "none") << "\n";
  os << "euler            " << r.sp_euler << ", " << r.ap_euler << "\n";
  if (r.sp_homology)
    os << "homology         S_p " << r.sp_homology->serialize() << ", A_p "
       << r.ap_homology->serialize() << "\n";
  else
    os << "homology         skipped\n";
  auto cand = r.candidate();
  if (!cand.empty())
    os << "candidate        " << cand << "\n";
  for (auto const &v : report_violations(r))
    os << "VIOLATION        " << v << "\n";
}

std::vector<unsigned> parse_primes(std::string const &spec)
{
  std::vector<unsigned> out;
  if (spec == "all" || spec.empty())
    return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = std::stoul(item, &pos);
    if (pos != item.size() || !is_prime(v))
      throw std::invalid_argument("not a prime: " + item);
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

/// Loads a group and checks p. Empty (after printing) when p does not
/// divide |G|.
std::optional<Group> load(std::string const &file, unsigned p, GroupFile &gf)
{
  gf = load_group_file(file);
  if (!is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  Group G = gf.to_group();
  if (G.order() % p != 0) {
    std::cout << gf.name << ": " << p << " does not divide |G| = " << G.order()
              << ", both posets empty\n";
    return std::nullopt;
  }
  return G;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"p-subgroup posets of finite permutation groups"};
  app.require_subcommand(1);

  std::string file;
  unsigned prime = 0;

  auto *analyze_cmd = app.add_subcommand("analyze", "full homotopy report for (G, p)");
  bool skip_homology = false, skip_steps = false;
  analyze_cmd->add_option("file", file, "group file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--prime,-p", prime, "prime")->required();
  analyze_cmd->add_flag("--skip-homology", skip_homology, "skip homology");
  analyze_cmd->add_flag("--skip-steps", skip_steps, "skip steps and step predicates");

  auto *batch_cmd = app.add_subcommand("batch", "report for every group file in a directory");
  std::string dir, primes_spec = "all", out;
  unsigned jobs = 1;
  double timeout = 120.0;
  batch_cmd->add_option("dir", dir, "directory of .grp files")
    ->required()
    ->check(CLI::ExistingDirectory);
  batch_cmd->add_option("--primes", primes_spec, "all, or a comma list of primes");
  batch_cmd->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--timeout", timeout, "seconds per (group, p)")
    ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--out,-o", out, "CSV output file")->required();
  batch_cmd->add_flag("--skip-homology", skip_homology, "skip homology");
  batch_cmd->add_flag("--skip-steps", skip_steps, "skip steps and step predicates");

  auto *dot_cmd = app.add_subcommand("dot", "Hasse diagram in Graphviz format");
  std::string view_name;
  dot_cmd->add_option("file", file, "group file")->required()->check(CLI::ExistingFile);
  dot_cmd->add_option("--prime,-p", prime, "prime")->required();
  dot_cmd->add_option("--poset", view_name, "Sp, Ap, core_Sp, core_Ap or i_Ap")
    ->required()
    ->check(CLI::IsMember({"Sp", "Ap", "core_Sp", "core_Ap", "i_Ap"}));

  auto *oracle_cmd = app.add_subcommand("oracle", "exhaustive beat-point search on A_p");
  std::size_t limit = kDefaultOracleLimit;
  oracle_cmd->add_option("file", file, "group file")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--prime,-p", prime, "prime")->required();
  oracle_cmd->add_option("--limit", limit, "largest poset searched");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) {
      GroupFile gf;
      auto G = load(file, prime, gf);
      if (!G)
        return 0;
      auto r = analyze(*G, gf.name, prime, {skip_homology, skip_steps});
      print_report(std::cout, r);
      return report_violations(r).empty() ? 0 : 3;
    }
    if (*batch_cmd) {
      BatchOptions opt;
      opt.primes = parse_primes(primes_spec);
      opt.jobs = jobs;
      opt.timeout_seconds = timeout;
      opt.analyze = {skip_homology, skip_steps};
      auto result = run_batch(std::filesystem::path(dir), opt);
      std::ofstream os(out, std::ios::binary);
      if (!os)
        throw std::runtime_error("cannot write " + out);
      write_csv(os, result);
      std::cout << result.rows.size() << " rows, " << result.count("ok") << " ok, "
                << result.count("timeout") << " timeout, " << result.count("error")
                << " error, " << result.count("rejected") << " rejected, "
                << result.candidates() << " candidates\n";
      return result.count("error") + result.count("rejected") ? 2 : 0;
    }
    if (*dot_cmd) {
      GroupFile gf;
      auto G = load(file, prime, gf);
      if (!G)
        return 0;
      auto ctx = PrimeContext::build(*G, prime);
      std::cout << export_dot(ctx, *parse_poset_view(view_name), gf.name + " " + view_name);
      return 0;
    }
    if (*oracle_cmd) {
      GroupFile gf;
      auto G = load(file, prime, gf);
      if (!G)
        return 0;
      auto ctx = PrimeContext::build(*G, prime);
      auto changes = min_changes_oracle(ctx.ap, limit);
      auto steps = steps_to_contract(ctx.ap);
      std::cout << "|A_p| = " << ctx.ap.size() << "\n";
      std::cout << "oracle changes   " << (changes ? std::to_string(*changes) : "none") << "\n";
      std::cout << "steps            " << (steps ? std::to_string(*steps) : "none") << "\n";
      return 0;
    }
  } catch (ParseError const &e) {
    std::cerr << file << ": " << e.what() << "\n";
    return 1;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
