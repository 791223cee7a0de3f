#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gerbecalc.h"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// writes to the path when given, otherwise to stdout; false on I/O failure
bool emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::cout << text;
    return bool(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return bool(out);
}

int fail(const std::string& msg) {
  std::cerr << "gerbecalc: " << msg << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorial differential calculus for non-abelian gerbes"};
  app.require_subcommand(1);

  std::string input, output;
  std::string suite = "all", report = "text", mode = "trivial", flavor = "u3";
  int jobs = 0, base_dim = 2, trunc = 2;
  unsigned long long seed = 0;

  CLI::App* cmd_check = app.add_subcommand("check", "run equation suites over a dataset");
  cmd_check->add_option("--input", input, "dataset file")->required();
  cmd_check->add_option("--suite", suite, "suite selector")
      ->check(CLI::IsMember(
          {"group", "torsor", "gerbe", "triple", "rho", "equivalence", "cm", "all"}));
  cmd_check->add_option("--report", report, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_check->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  cmd_check->add_option("--output", output, "write the report here instead of stdout");

  CLI::App* cmd_generate = app.add_subcommand("generate", "emit a deterministic dataset");
  cmd_generate->add_option("--mode", mode, "dataset kind")
      ->check(CLI::IsMember({"trivial", "coboundary", "abelian", "torsor"}));
  cmd_generate->add_option("--seed", seed, "generator seed");
  cmd_generate->add_option("--base-dim", base_dim, "base coordinates");
  cmd_generate->add_option("--trunc", trunc, "base-degree budget");
  cmd_generate->add_option("--flavor", flavor, "matrix group")
      ->check(CLI::IsMember({"u2", "u3", "gl3"}));
  cmd_generate->add_option("--output", output, "dataset file (default stdout)");

  CLI::App* cmd_derive = app.add_subcommand("derive", "fill the derived gerbe fields");
  cmd_derive->add_option("--input", input, "dataset file")->required();
  cmd_derive->add_option("--output", output, "dataset file (default stdout)");

  CLI::App* cmd_normalize =
      app.add_subcommand("normalize", "reduce a crossed-module form to normal shape");
  cmd_normalize->add_option("--input", input, "dataset file")->required();
  cmd_normalize->add_option("--output", output, "dataset file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  gc_engine* eng = gc_engine_new();
  char* out_text = nullptr;
  gc_status st = GC_ERROR;

  if (cmd_check->parsed()) {
    std::string text;
    if (!read_file(input, text)) {
      gc_engine_free(eng);
      return fail("cannot read " + input);
    }
    st = gc_check(eng, text.c_str(), suite.c_str(), jobs, report.c_str(), &out_text);
  } else if (cmd_generate->parsed()) {
    st = gc_generate(eng, mode.c_str(), seed, base_dim, trunc, flavor.c_str(), &out_text);
  } else {
    std::string text;
    if (!read_file(input, text)) {
      gc_engine_free(eng);
      return fail("cannot read " + input);
    }
    st = cmd_derive->parsed() ? gc_derive(eng, text.c_str(), &out_text)
                              : gc_normalize(eng, text.c_str(), &out_text);
  }

  int rc;
  if (st == GC_ERROR) {
    rc = fail(gc_last_error(eng));
  } else {
    rc = emit(output, out_text) ? int(st) : fail("cannot write " + output);
    gc_string_free(out_text);
  }
  gc_engine_free(eng);
  return rc;
}
