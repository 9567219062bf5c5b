#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homlab/session.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HOMLAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring HOMLAB_SEED='" << s << "'\n";
    }
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const homlab::Report& r, bool json) {
  if (json) {
    std::cout << r.doc.dump(2) << "\n";
  } else {
    std::cout << r.text;
  }
  return r.exit_code;
}

homlab::script::Option opt(std::string name, std::optional<std::string> value = std::nullopt) {
  return homlab::script::Option{std::move(name), std::move(value), {}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homlab: graded Hom/Ext computations and theorem campaigns over small rings"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false, timing = false, verdicts = false;
  std::uint64_t seed = default_seed();
  std::size_t budget = 256;
  unsigned jobs = 1;
  std::string oracle = "on";
  app.add_flag("--json", json, "print the report as JSON");
  app.add_option("--seed", seed, "campaign seed (default: HOMLAB_SEED or 1)");
  app.add_option("--budget", budget, "isomorphism-search budget per instance");
  app.add_option("--jobs", jobs, "worker threads for campaign instances")->check(CLI::PositiveNumber);
  app.add_option("--oracle", oracle, "oracle confirmation of fails")->check(CLI::IsMember({"on", "off", "referee"}));
  app.add_flag("--timing", timing, "include timing fields");
  app.add_flag("--verdicts", verdicts, "include every verdict in campaign reports");

  std::string file;
  auto* compute = app.add_subcommand("compute", "run a script");
  compute->add_option("file", file, "script file")->required();

  auto* format = app.add_subcommand("format", "print a script in canonical form");
  format->add_option("file", file, "script file")->required();

  std::string suite, ring;
  std::size_t samples = 100, max_dim = 3;
  bool exhaustive = false;
  auto* verify = app.add_subcommand("verify", "run a theorem campaign");
  verify->add_option("--suite", suite, "statement id, or all")->required();
  verify->add_option("--ring", ring, "builtin ring name or ring literal");
  verify->add_option("--samples", samples, "random instances");
  verify->add_flag("--exhaustive", exhaustive, "add every enumerated module (Artinian rings)");
  verify->add_option("--max-dim", max_dim, "enumeration bound on k-dimension");

  auto* search = app.add_subcommand("search", "look for a counterexample, stopping at the first");
  search->add_option("--statement", suite, "statement id")->required();
  search->add_option("--ring", ring, "builtin ring name or ring literal");
  search->add_option("--samples", samples, "random instances");
  search->add_flag("--exhaustive", exhaustive, "add every enumerated module (Artinian rings)");
  search->add_option("--max-dim", max_dim, "enumeration bound on k-dimension");

  std::size_t top = 4, oracle_samples = 200;
  auto* check = app.add_subcommand("oracle-check", "compare Ext dimensions from both engines");
  check->add_option("--samples", oracle_samples, "random pairs per ring");
  check->add_option("--ring", ring, "one ring instead of the default three");
  check->add_option("--top", top, "highest Ext index");

  app.add_subcommand("list", "list statements and builtin rings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  homlab::RunOptions run;
  run.seed = seed;
  run.budget = budget;
  run.jobs = jobs;
  run.oracle = *homlab::parse_oracle_mode(oracle);
  run.timing = timing;
  run.verdicts = verdicts;

  try {
    if (app.got_subcommand("list")) {
      for (auto& s : homlab::statements()) {
        std::cout << s.id << " [" << s.default_ring << "]:";
        for (auto& r : s.roles) std::cout << " " << r;
        if (!s.parameter.empty()) std::cout << " " << s.parameter;
        std::cout << "\n    " << s.summary << "\n";
      }
      for (auto& r : homlab::builtin_rings()) std::cout << "ring " << r.name << " = " << homlab::ring_to_string(*r.make()) << "\n";
      return 0;
    }
    if (*compute || *format) {
      std::string text = read_file(file);
      homlab::script::Script sc;
      try {
        sc = homlab::script::parse(text);
      } catch (const homlab::script::ScriptError& e) {
        std::cerr << file << ":" << e.pos().line << ":" << e.pos().column << ": error: " << e.message() << "\n";
        return 1;
      }
      if (*format) {
        std::cout << homlab::script::print(sc);
        return 0;
      }
      homlab::Session session(run);
      auto report = session.run(sc);
      int code = emit(report, json);
      if (code == 1 && !json)
        for (auto& r : report.doc["results"])
          if (r["kind"] == "error") std::cerr << file << ": error: " << r["message"].get<std::string>() << "\n";
      return code;
    }

    homlab::script::Command cmd;
    if (*verify || *search) {
      cmd.verb = *verify ? "verify" : "search";
      cmd.target = suite;
      cmd.options.push_back(opt("samples", std::to_string(samples)));
      if (!ring.empty()) cmd.options.push_back(opt("ring", ring));
      if (exhaustive) {
        cmd.options.push_back(opt("exhaustive"));
        cmd.options.push_back(opt("max-dim", std::to_string(max_dim)));
      }
    } else {
      cmd.verb = "oracle-check";
      cmd.options.push_back(opt("samples", std::to_string(oracle_samples)));
      cmd.options.push_back(opt("top", std::to_string(top)));
      if (!ring.empty()) cmd.options.push_back(opt("ring", ring));
    }
    homlab::Session session(run);
    auto report = session.run(cmd);
    int code = emit(report, json);
    if (code == 1 && !json)
      for (auto& r : report.doc["results"])
        if (r["kind"] == "error") std::cerr << "error: " << r["message"].get<std::string>() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
