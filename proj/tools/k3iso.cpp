#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "k3iso/cli.hpp"

namespace {

using k3iso::Json;
namespace cli = k3iso::cli;

struct Options {
  std::string input = "-";
  std::string out = "-";
  std::string format;
  std::string bound = "10000";
  unsigned jobs = 1;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw k3iso::Error(k3iso::ErrorCode::InvalidInput, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw k3iso::Error(k3iso::ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw k3iso::Error(k3iso::ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

int emit(const Options& opt, const cli::Output& result) {
  write_output(opt.out, result.body.dump(2) + "\n");
  return result.exit_code;
}

int run_scan(const Options& opt) {
  cli::ScanSpec spec = cli::parse_scan_spec(parse_json(read_input(opt.input)));
  k3iso::Int bound = k3iso::parse_int(Json(opt.bound), "--bound");
  if (bound < 0) throw k3iso::Error(k3iso::ErrorCode::InvalidInput, "--bound must be >= 0");
  std::vector<cli::ScanRow> rows = cli::run_scan(spec, bound, opt.jobs);
  if (opt.format == "json") {
    write_output(opt.out, cli::scan_json(rows).dump(2) + "\n");
  } else {
    write_output(opt.out, cli::scan_csv(rows));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decides isomorphisms between K3 surfaces and moduli of sheaves on them"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "JSON input file, - for stdin");
    sub->add_option("--out", opt.out, "output file, - for stdout");
    sub->add_option("--format", opt.format, "json or csv (csv only applies to scan)")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--bound", opt.bound, "oracle scan bound");
    sub->add_option("--jobs", opt.jobs, "worker threads for scans")->check(CLI::PositiveNumber);
  };
  CLI::App* decide = app.add_subcommand("decide", "decide one instance");
  CLI::App* scan = app.add_subcommand("scan", "scan a grid of instances");
  CLI::App* solve = app.add_subcommand("solve-form", "solve gamma x^2 - delta y^2 = m");
  CLI::App* model = app.add_subcommand("verify-model", "check the rank-one Mukai lattice model");
  for (CLI::App* sub : {decide, scan, solve, model}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) return run_scan(opt);
    Json input = parse_json(read_input(opt.input));
    if (*decide) return emit(opt, cli::run_decide(input));
    if (*solve) return emit(opt, cli::run_solve_form(input));
    return emit(opt, cli::run_verify_model(input));
  } catch (const k3iso::Error& e) {
    std::cout << cli::error_json(e).dump(2) << "\n";
    return cli::kExitError;
  }
}
