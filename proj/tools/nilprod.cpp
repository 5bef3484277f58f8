// nilprod — cosmash products, tensor products and lower central series for
// groups, 2-step nilpotent operad algebras, structure-constant algebras and
// crossed modules.
//
//   nilprod run manifest.np [--seed N] [--json out.json]
//   nilprod check [suite ...] [--cases N] [--seed N]
//   nilprod table1 --ring Q --dims 2 3
//
// Exit codes: 0 success, 1 a verdict failed, 2 usage or input error.

#include "CLI11.hpp"
#include "nilprod/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int emit(const nilprod::cli::ResultDocument& rd, const std::string& json_path) {
  const std::string text = rd.doc.dump(2);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "error: cannot write '" << json_path << "'\n";
      return 2;
    }
    out << text << '\n';
  }
  std::cout << text << '\n';
  return rd.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bilinear products in semi-abelian varieties"};
  app.require_subcommand(1);

  std::string manifest_path, json_path;
  std::uint64_t seed = 0;
  CLI::App* run = app.add_subcommand("run", "execute a manifest");
  run->add_option("manifest", manifest_path, "manifest file")->required();
  run->add_option("--seed", seed, "random seed (default 0)");
  run->add_option("--json", json_path, "also write the report to a file");

  std::vector<std::string> suites;
  int cases = 25;
  CLI::App* check = app.add_subcommand("check", "run property suites");
  check->add_option("suites", suites, "suites (default: all)");
  check->add_option("--cases", cases, "cases per suite")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "random seed (default 0)");

  std::string ring_word = "Q";
  std::vector<int> dims;
  CLI::App* table = app.add_subcommand("table1", "free-generator dimension table");
  table->add_option("--ring", ring_word, "Z, Q or F<p> (default Q)");
  table->add_option("--dims", dims, "generator counts a b")->expected(2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      std::ifstream in(manifest_path);
      if (!in) {
        std::cerr << "error: cannot read '" << manifest_path << "'\n";
        return 2;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      const nilprod::cli::Manifest m = nilprod::cli::parse_manifest(buf.str());
      return emit(nilprod::cli::run(m, seed), json_path);
    }
    if (check->parsed()) {
      if (suites.empty()) suites = nilprod::cli::kSuiteNames;
      return emit(nilprod::cli::check_suites(suites, seed, cases), "");
    }
    nilprod::cli::ResultDocument rd;
    rd.doc["schema"] = "nilprod/1";
    rd.doc["ring"] = ring_word;
    rd.doc["dims"] = dims;
    rd.doc["rows"] =
        nilprod::cli::table1_rows(nilprod::cli::parse_ring_word(ring_word), dims[0], dims[1]);
    return emit(rd, "");
  } catch (const nilprod::Error& e) {
    std::cerr << "error: " << e.what() << '\n';  // what() already carries the code
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
