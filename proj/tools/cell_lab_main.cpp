#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "celllab/cli.hpp"

namespace {

std::vector<long> parse_weights(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

std::vector<std::string> parse_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cell-lab: exact Kazhdan-Lusztig cells, the asymptotic ring, and the "
      "longest-element action for finite Coxeter groups"};
  app.get_formatter()->column_width(28);

  std::string type, matrix, weights, format = "json", cache_dir, check;
  int jobs = 1;
  std::string command;

  app.add_option("--type", type, "named Coxeter type (A3, B2, H3, I2(7), ...)");
  app.add_option("--matrix", matrix,
                 "JSON file with a coxeter_matrix (and optional weights)");
  app.add_option("--weights", weights,
                 "comma-separated positive generator weights, e.g. 2,1");
  app.add_option("--format", format, "output format: json or table");
  app.add_option("--cache-dir", cache_dir, "directory for the table cache");
  app.add_option("--jobs", jobs, "worker threads for table fills");
  app.add_option("--check", check,
                 "verify subset, e.g. 2.3,2.5,2.8,2.9,2.10,P");
  app.add_option("command", command,
                 "elements | kl | cells | afn | gamma | dinv | star | "
                 "phi-w0 | verify")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  celllab::cli::RunConfig cfg;
  cfg.type_name = type;
  cfg.matrix_path = matrix;
  cfg.format = format;
  cfg.cache_dir = cache_dir;
  cfg.jobs = jobs;
  cfg.command = command;
  try {
    if (!weights.empty()) cfg.weights = parse_weights(weights);
  } catch (...) {
    std::cerr << "cannot parse --weights '" << weights << "'\n";
    return 2;
  }
  if (!check.empty()) cfg.checks = parse_list(check);

  return celllab::cli::run(cfg, std::cout, std::cerr);
}
