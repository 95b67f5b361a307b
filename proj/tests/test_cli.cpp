#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "celllab/cli.hpp"

using namespace celllab;
using celllab::cli::RunConfig;

namespace {

struct RunResult {
  int code;
  nlohmann::json json;
  std::string err;
};

RunResult run_cfg(RunConfig cfg) {
  std::ostringstream out, err;
  int code = celllab::cli::run(cfg, out, err);
  RunResult r{code, nlohmann::json(), err.str()};
  if (cfg.format == "json" && !out.str().empty())
    r.json = nlohmann::json::parse(out.str());
  return r;
}

RunConfig base(const std::string& type, const std::string& command) {
  RunConfig cfg;
  cfg.type_name = type;
  cfg.command = command;
  return cfg;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("celllab_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int counter() {
    static int c = 0;
    return ++c;
  }
};

}  // namespace

TEST_CASE("star command on A2") {
  RunResult r = run_cfg(base("A2", "star"));
  REQUIRE(r.code == 0);
  CHECK(r.json["group"]["order"] == 6);
  REQUIRE(r.json["cells"].size() == 3);
  // the middle cell has size 4, a = a' = 1, and the known star pairs
  bool found_mid = false;
  for (const auto& c : r.json["cells"]) {
    if (c["size"] != 4) continue;
    found_mid = true;
    CHECK(c["a"] == 1);
    CHECK(c["a_prime"] == 1);
    std::map<std::string, std::pair<std::string, long long>> star;
    for (const auto& p : c["star"])
      star[p[0].get<std::string>()] = {p[1].get<std::string>(),
                                       p[2].get<long long>()};
    CHECK(star.at("1") == std::make_pair(std::string("2.1"), 1ll));
    CHECK(star.at("2") == std::make_pair(std::string("1.2"), 1ll));
  }
  CHECK(found_mid);
}

TEST_CASE("phi-w0 command on A1") {
  RunConfig cfg = base("A1", "phi-w0");
  cfg.weights = {1};
  RunResult r = run_cfg(cfg);
  REQUIRE(r.code == 0);
  nlohmann::json expect;
  expect[""] = {{"1", 1}};
  expect["1"] = {{"-1", -1}};
  CHECK(r.json["phi_t_w0"] == expect);
}

TEST_CASE("verify command with a check selection") {
  RunConfig cfg = base("B2", "verify");
  cfg.weights = {2, 1};
  cfg.checks = {"2.3", "2.5", "2.8", "2.9", "2.10", "P"};
  RunResult r = run_cfg(cfg);
  CHECK(r.code == 0);
  CHECK(r.json["all_pass"] == true);
  for (const auto& chk : r.json["checks"]) CHECK(chk["pass"] == true);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cfg(base("A2", "florble")).code == 2);
  CHECK(run_cfg(base("Q9", "cells")).code == 2);
  {
    RunConfig cfg = base("A2", "verify");
    cfg.checks = {"9.9"};
    CHECK(run_cfg(cfg).code == 2);
  }
  {
    RunConfig cfg = base("", "cells");
    CHECK(run_cfg(cfg).code == 2);
  }
  {
    // infinite group is a rejected input
    RunConfig cfg = base("", "cells");
    TempDir tmp;
    auto mpath = tmp.path / "aff.json";
    std::ofstream f(mpath);
    f << R"({"coxeter_matrix": [[1,3,3],[3,1,3],[3,3,1]]})";
    f.close();
    cfg.matrix_path = mpath.string();
    CHECK(run_cfg(cfg).code == 2);
  }
}

TEST_CASE("matrix file input matches the named type") {
  TempDir tmp;
  auto mpath = tmp.path / "b2.json";
  {
    std::ofstream f(mpath);
    f << R"({"coxeter_matrix": [[1,4],[4,1]], "weights": [2,1]})";
  }
  RunConfig by_file = base("", "cells");
  by_file.matrix_path = mpath.string();
  RunConfig by_type = base("B2", "cells");
  by_type.weights = {2, 1};
  RunResult a = run_cfg(by_file), b = run_cfg(by_type);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.json == b.json);
}

TEST_CASE("deterministic output") {
  RunResult a = run_cfg(base("A3", "cells"));
  RunResult b = run_cfg(base("A3", "cells"));
  CHECK(a.json == b.json);

  // table format renders without error
  RunConfig cfg = base("A2", "cells");
  cfg.format = "table";
  std::ostringstream out, err;
  CHECK(celllab::cli::run(cfg, out, err) == 0);
  CHECK(out.str().find("two_sided_cells") != std::string::npos);
}

TEST_CASE("cache round trip") {
  TempDir tmp;
  CoxeterDatum datum = datum_from_type("A3");
  auto path = CacheFile::path_for(tmp.path.string(), datum);

  // first run writes the cache (afn builds the KL table and the scans)
  RunConfig cfg = base("A3", "afn");
  cfg.cache_dir = tmp.path.string();
  RunResult first = run_cfg(cfg);
  REQUIRE(first.code == 0);
  REQUIRE(std::filesystem::exists(path));
  auto written = CacheFile::read(path);
  REQUIRE(written.has_value());

  // priming a fresh session from the file reproduces the tables exactly
  Session plain(datum);
  Session primed(datum, 1, [&](HeckeAlgebra& H) {
    CacheLoadResult res = prime_from_cache(*written, datum, H.group(), H);
    CHECK(res.usable);
    CHECK(res.kl_loaded);
    CHECK(res.gamma_loaded);
  });
  for (Elt x = 0; x < plain.W().size; ++x)
    CHECK(plain.hecke().kl_row(x) == primed.hecke().kl_row(x));
  for (Elt z = 0; z < plain.W().size; ++z)
    CHECK(plain.asym().a_value[z] == primed.asym().a_value[z]);
  CHECK(plain.asym().distinguished == primed.asym().distinguished);

  // saving the primed session reproduces the file bit for bit
  CacheFile again = CacheFile::from_session(primed);
  CHECK(again.canonical_text() == written->canonical_text());

  // tampered fingerprint: cache ignored, recompute succeeds
  {
    CacheFile bad = *written;
    bad.doc["fingerprint"]["weights"] = {7, 7, 7};
    bad.write(path);
    RunResult r = run_cfg(cfg);
    CHECK(r.code == 0);
    Session check_session(datum, 1, [&](HeckeAlgebra& H) {
      CacheLoadResult res = prime_from_cache(bad, datum, H.group(), H);
      CHECK_FALSE(res.usable);
    });
  }

  // version mismatch: ignored
  {
    CacheFile bad = *written;
    bad.doc["format_version"] = 999;
    Session s2(datum, 1, [&](HeckeAlgebra& H) {
      CacheLoadResult res = prime_from_cache(bad, datum, H.group(), H);
      CHECK_FALSE(res.usable);
    });
  }

  // missing gamma section: the rest still loads
  {
    CacheFile partial = *written;
    partial.doc.erase("gamma");
    Session s3(datum, 1, [&](HeckeAlgebra& H) {
      CacheLoadResult res = prime_from_cache(partial, datum, H.group(), H);
      CHECK(res.usable);
      CHECK(res.kl_loaded);
      CHECK_FALSE(res.gamma_loaded);
    });
    for (Elt z = 0; z < plain.W().size; ++z)
      CHECK(plain.asym().a_value[z] == s3.asym().a_value[z]);
  }

  // corrupt kl section: skipped, gamma still loads
  {
    CacheFile corrupt = *written;
    corrupt.doc["kl"]["zzz"] = 42;
    Session s4(datum, 1, [&](HeckeAlgebra& H) {
      CacheLoadResult res = prime_from_cache(corrupt, datum, H.group(), H);
      CHECK(res.usable);
      CHECK_FALSE(res.kl_loaded);
      CHECK(!res.notes.empty());
    });
  }
}
