#pragma once

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "celllab/cache.hpp"
#include "celllab/session.hpp"

namespace celllab::cli {

struct RunConfig {
  std::string type_name;    // named type, e.g. "A3", "B2", "I2(7)"
  std::string matrix_path;  // or an explicit Coxeter matrix file
  std::vector<long> weights;
  std::string command;
  std::string format = "json";  // json | table
  std::string cache_dir;
  std::vector<std::string> checks;  // verify subsets; empty = all
  int jobs = 1;
};

inline const std::set<std::string>& known_commands() {
  static const std::set<std::string> cmds = {
      "elements", "kl",     "cells",  "afn", "gamma",
      "dinv",     "star",   "phi-w0", "verify"};
  return cmds;
}

namespace detail {

inline std::string elt_key(const GroupTables& W, Elt x) {
  return W.word_string(x);
}

inline nlohmann::json group_header(const Session& S) {
  nlohmann::json g;
  g["type"] = S.W().type.name;
  g["order"] = S.W().size;
  g["rank"] = S.W().rank;
  g["weights"] = S.W().datum.weights;
  g["longest_element"] = elt_key(S.W(), S.W().w0());
  return g;
}

inline nlohmann::json cmd_elements(const Session& S) {
  const GroupTables& W = S.W();
  nlohmann::json arr = nlohmann::json::array();
  for (Elt x = 0; x < W.size; ++x) {
    nlohmann::json e;
    e["word"] = elt_key(W, x);
    e["length"] = W.length(x);
    e["weight"] = W.weight(x);
    std::vector<int> ld, rd;
    for (int s = 0; s < W.rank; ++s) {
      if (W.left_descents(x) & (1u << s)) ld.push_back(s + 1);
      if (W.right_descents(x) & (1u << s)) rd.push_back(s + 1);
    }
    e["left_descents"] = ld;
    e["right_descents"] = rd;
    e["inverse"] = elt_key(W, W.inverse(x));
    e["sigma"] = elt_key(W, W.sigma(x));
    arr.push_back(std::move(e));
  }
  nlohmann::json out;
  out["group"] = group_header(S);
  out["elements"] = std::move(arr);
  return out;
}

inline nlohmann::json cmd_kl(const Session& S) {
  const GroupTables& W = S.W();
  const HeckeAlgebra& H = S.hecke();
  S.ensure_kl();
  nlohmann::json kl = nlohmann::json::object();
  for (Elt x = 0; x < W.size; ++x) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto& [y, p] : H.kl_row(x))
      row[elt_key(W, y)] = CacheFile::laurent_to_json(p);
    kl[elt_key(W, x)] = std::move(row);
  }
  nlohmann::json out;
  out["group"] = group_header(S);
  out["kl"] = std::move(kl);
  return out;
}

inline nlohmann::json cmd_cells(const Session& S) {
  const GroupTables& W = S.W();
  const CellDecomposition& cd = S.cells();
  auto cells_json = [&](const std::vector<std::vector<Elt>>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cell : cells) {
      nlohmann::json c = nlohmann::json::array();
      for (Elt x : cell) c.push_back(elt_key(W, x));
      arr.push_back(std::move(c));
    }
    return arr;
  };
  nlohmann::json out;
  out["group"] = group_header(S);
  out["left_cells"] = cells_json(cd.left_cells);
  out["right_cells"] = cells_json(cd.right_cells);
  out["two_sided_cells"] = cells_json(cd.two_cells);
  nlohmann::json aval = nlohmann::json::array();
  for (uint32_t c = 0; c < cd.num_two; ++c)
    aval.push_back(S.asym().a(cd.two_cells[c].front()));
  out["a_of_two_sided_cell"] = std::move(aval);
  // covering-free order description: all comparable pairs a <= b
  nlohmann::json leq = nlohmann::json::array();
  for (uint32_t a = 0; a < cd.num_two; ++a)
    for (uint32_t b = 0; b < cd.num_two; ++b)
      if (a != b && cd.two_leq[a][b]) leq.push_back({a, b});
  out["two_sided_leq"] = std::move(leq);
  return out;
}

inline nlohmann::json cmd_afn(const Session& S) {
  const GroupTables& W = S.W();
  nlohmann::json a = nlohmann::json::object();
  nlohmann::json delta = nlohmann::json::object();
  for (Elt z = 0; z < W.size; ++z) {
    a[elt_key(W, z)] = S.asym().a_value[z];
    delta[elt_key(W, z)] = S.asym().delta_value[z];
  }
  nlohmann::json out;
  out["group"] = group_header(S);
  out["a"] = std::move(a);
  out["delta"] = std::move(delta);
  return out;
}

inline nlohmann::json cmd_gamma(const Session& S) {
  const GroupTables& W = S.W();
  const AsymptoticTables& at = S.asym();
  std::vector<std::pair<Elt, Elt>> pairs = at.scanned_pairs;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [x, y] : pairs)
    for (const auto& [z, g] : at.gamma_row(x, y))
      arr.push_back(
          {elt_key(W, x), elt_key(W, y), elt_key(W, W.inverse(z)), g});
  nlohmann::json out;
  out["group"] = group_header(S);
  out["scan"] = at.full_scan ? "full" : "cell";
  out["gamma"] = std::move(arr);
  return out;
}

inline nlohmann::json cmd_dinv(const Session& S) {
  const GroupTables& W = S.W();
  S.jring().verify_unit(S.jobs());
  nlohmann::json arr = nlohmann::json::array();
  for (Elt d : S.asym().distinguished) {
    nlohmann::json e;
    e["d"] = elt_key(W, d);
    e["n"] = S.asym().n_of(d);
    e["delta"] = S.asym().delta_value[d];
    e["a"] = S.asym().a_value[d];
    arr.push_back(std::move(e));
  }
  nlohmann::json out;
  out["group"] = group_header(S);
  out["distinguished"] = std::move(arr);
  return out;
}

inline nlohmann::json cmd_star(const Session& S) {
  const GroupTables& W = S.W();
  nlohmann::json arr = nlohmann::json::array();
  for (const StarData& sd : S.stars()) {
    nlohmann::json c;
    c["representative"] = elt_key(W, sd.members.front());
    c["size"] = sd.members.size();
    c["a"] = sd.a;
    c["a_prime"] = sd.a_prime;
    nlohmann::json pairs = nlohmann::json::array();
    for (Elt u : sd.members)
      pairs.push_back({elt_key(W, u), elt_key(W, sd.star.at(u)),
                       sd.sign.at(u)});
    c["star"] = std::move(pairs);
    arr.push_back(std::move(c));
  }
  nlohmann::json out;
  out["group"] = group_header(S);
  out["cells"] = std::move(arr);
  return out;
}

inline nlohmann::json cmd_phi_w0(const Session& S) {
  const GroupTables& W = S.W();
  JElement img = S.jring().phi_of_longest();
  nlohmann::json o = nlohmann::json::object();
  for (const auto& [z, f] : img.coords)
    o[elt_key(W, z)] = CacheFile::laurent_to_json(f);
  nlohmann::json out;
  out["group"] = group_header(S);
  out["phi_t_w0"] = std::move(o);
  return out;
}

inline nlohmann::json cmd_verify(const Session& S,
                                 const std::vector<std::string>& checks,
                                 bool& all_pass) {
  std::set<std::string> sel(checks.begin(), checks.end());
  VerificationOutcome out = run_verifications(S, sel);
  all_pass = out.all_pass();
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckReport& rep : out.reports) {
    nlohmann::json r;
    r["name"] = rep.name;
    r["pass"] = rep.pass;
    r["skipped"] = rep.skipped;
    r["violations"] = rep.violations;
    arr.push_back(std::move(r));
  }
  nlohmann::json j;
  j["group"] = group_header(S);
  j["checks"] = std::move(arr);
  j["all_pass"] = all_pass;
  return j;
}

// plain-text rendering: a formatting layer over the same JSON data
inline void render_table(const nlohmann::json& j, std::ostream& os,
                         int indent = 0) {
  std::string pad(static_cast<size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_table(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_table(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

inline CoxeterDatum datum_from_config(const RunConfig& cfg) {
  if (!cfg.matrix_path.empty()) {
    std::ifstream f(cfg.matrix_path);
    require(f.good(), ErrorCode::InvalidMatrix,
            "cannot read matrix file " + cfg.matrix_path);
    nlohmann::json j;
    try {
      f >> j;
    } catch (...) {
      fail(ErrorCode::InvalidMatrix, "matrix file is not valid JSON");
    }
    CoxeterDatum d;
    require(j.contains("coxeter_matrix"), ErrorCode::InvalidMatrix,
            "matrix file needs a coxeter_matrix entry");
    d.coxeter_matrix =
        j["coxeter_matrix"].get<std::vector<std::vector<int>>>();
    d.rank = static_cast<int>(d.coxeter_matrix.size());
    if (!cfg.weights.empty())
      d.weights = cfg.weights;
    else if (j.contains("weights"))
      d.weights = j["weights"].get<std::vector<long>>();
    else
      d.weights.assign(static_cast<size_t>(d.rank), 1);
    return d;
  }
  require(!cfg.type_name.empty(), ErrorCode::InvalidMatrix,
          "either --type or --matrix is required");
  return datum_from_type(cfg.type_name, cfg.weights);
}

}  // namespace detail

// Dispatch a parsed command.  Exit status: 0 success, 1 verification
// failure, 2 usage error, 3 internal inconsistency.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!known_commands().count(cfg.command)) {
      err << "unknown command '" << cfg.command << "'\n";
      return 2;
    }
    if (cfg.format != "json" && cfg.format != "table") {
      err << "unknown format '" << cfg.format << "'\n";
      return 2;
    }
    for (const std::string& c : cfg.checks) {
      const auto& keys = verification_stage_keys();
      if (std::find(keys.begin(), keys.end(), c) == keys.end()) {
        err << "unknown check '" << c << "'\n";
        return 2;
      }
    }
    CoxeterDatum datum = detail::datum_from_config(cfg);
    datum.validate();

    std::function<void(HeckeAlgebra&)> hook;
    if (!cfg.cache_dir.empty()) {
      auto path = CacheFile::path_for(cfg.cache_dir, datum);
      hook = [path, datum, &err](HeckeAlgebra& H) {
        auto cf = CacheFile::read(path);
        if (!cf) return;
        CacheLoadResult res = prime_from_cache(*cf, datum, H.group(), H);
        for (const std::string& note : res.notes) err << "cache: " << note
                                                      << "\n";
      };
    }
    Session S(datum, cfg.jobs, hook);

    bool all_pass = true;
    nlohmann::json j;
    if (cfg.command == "elements") j = detail::cmd_elements(S);
    else if (cfg.command == "kl") j = detail::cmd_kl(S);
    else if (cfg.command == "cells") j = detail::cmd_cells(S);
    else if (cfg.command == "afn") j = detail::cmd_afn(S);
    else if (cfg.command == "gamma") j = detail::cmd_gamma(S);
    else if (cfg.command == "dinv") j = detail::cmd_dinv(S);
    else if (cfg.command == "star") j = detail::cmd_star(S);
    else if (cfg.command == "phi-w0") j = detail::cmd_phi_w0(S);
    else if (cfg.command == "verify")
      j = detail::cmd_verify(S, cfg.checks, all_pass);

    if (!cfg.cache_dir.empty() && (S.kl_built() || S.asym_built())) {
      auto path = CacheFile::path_for(cfg.cache_dir, datum);
      CacheFile cf = CacheFile::from_session(S);
      // identical or richer content on disk is left untouched
      auto existing = CacheFile::read(path);
      bool richer = existing && existing->doc.contains("gamma") &&
                    !cf.doc.contains("gamma");
      if (!richer && (!existing || existing->doc != cf.doc)) cf.write(path);
    }

    if (cfg.format == "json") {
      out << j.dump(1) << "\n";
    } else {
      detail::render_table(j, out);
    }
    return all_pass ? 0 : 1;
  } catch (const CellLabError& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidMatrix:
      case ErrorCode::InvalidWeights:
      case ErrorCode::InvalidElement:
      case ErrorCode::InfiniteGroup:
      case ErrorCode::GroupTooLarge:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace celllab::cli
