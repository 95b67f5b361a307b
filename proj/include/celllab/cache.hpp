#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "celllab/session.hpp"

namespace celllab {

/*
  Persistent cache: one JSON document per group fingerprint holding the
  KL table, the a-values, the scanned structure-constant leading rows,
  and the distinguished involutions.  A version or fingerprint mismatch
  means the cache is ignored; sections are individually optional and a
  corrupt section is skipped.  Elements are keyed by their canonical
  reduced word, Laurent polynomials serialized as {"exp": coeff}.
*/
struct CacheFile {
  static constexpr int kFormatVersion = 1;
  nlohmann::json doc;

  static nlohmann::json laurent_to_json(const LaurentInt& p) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [e, c] : p.terms()) {
      require(c >= std::numeric_limits<int64_t>::min() &&
                  c <= std::numeric_limits<int64_t>::max(),
              ErrorCode::Internal, "cache coefficient exceeds 64 bits");
      o[std::to_string(e)] = static_cast<int64_t>(c);
    }
    return o;
  }

  static LaurentInt laurent_from_json(const nlohmann::json& o) {
    LaurentInt p;
    for (auto it = o.begin(); it != o.end(); ++it)
      p += LaurentInt::monomial(it.value().get<int64_t>(),
                                std::stoi(it.key()));
    return p;
  }

  static nlohmann::json fingerprint_of(const CoxeterDatum& d) {
    nlohmann::json fp;
    fp["coxeter_matrix"] = d.coxeter_matrix;
    fp["weights"] = d.weights;
    return fp;
  }

  static std::string fingerprint_hash(const CoxeterDatum& d) {
    std::string text = fingerprint_of(d).dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  static std::filesystem::path path_for(const std::string& cache_dir,
                                        const CoxeterDatum& d) {
    return std::filesystem::path(cache_dir) /
           (fingerprint_hash(d) + ".json");
  }

  // Snapshot of the stages a session has built: deterministic for the
  // group and weights (the gamma section covers exactly the canonical
  // scan pairs).
  static CacheFile from_session(const Session& S) {
    const GroupTables& W = S.W();
    const HeckeAlgebra& H = S.hecke();
    CacheFile cf;
    cf.doc["format_version"] = kFormatVersion;
    cf.doc["fingerprint"] = fingerprint_of(W.datum);

    if (S.kl_built()) {
      nlohmann::json kl = nlohmann::json::object();
      for (Elt x = 0; x < W.size; ++x) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [y, p] : H.kl_row(x))
          row[W.word_string(y)] = laurent_to_json(p);
        kl[W.word_string(x)] = std::move(row);
      }
      cf.doc["kl"] = std::move(kl);
    }
    if (!S.asym_built()) return cf;
    const AsymptoticTables& at = S.asym();

    nlohmann::json a = nlohmann::json::object();
    for (Elt z = 0; z < W.size; ++z) a[W.word_string(z)] = at.a_value[z];
    cf.doc["a"] = std::move(a);

    {
      std::vector<std::pair<Elt, Elt>> pairs = at.scanned_pairs;
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      nlohmann::json gp = nlohmann::json::array();
      for (const auto& [x, y] : pairs) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [z, le] : H.leading_row(x, y))
          entries.push_back({W.word_string(z), le.deg, le.top});
        gp.push_back({W.word_string(x), W.word_string(y), entries});
      }
      nlohmann::json g;
      g["mode"] = at.full_scan ? "full" : "cell";
      g["pairs"] = std::move(gp);
      cf.doc["gamma"] = std::move(g);
    }

    nlohmann::json dinv = nlohmann::json::array();
    for (Elt d : at.distinguished)
      dinv.push_back({W.word_string(d), at.n_of(d), at.delta_value[d]});
    cf.doc["dinv"] = std::move(dinv);
    return cf;
  }

  bool has_payload() const {
    return doc.contains("kl") || doc.contains("a") || doc.contains("gamma") ||
           doc.contains("dinv");
  }

  std::string canonical_text() const { return doc.dump(1); }

  void write(const std::filesystem::path& p) const {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    require(f.good(), ErrorCode::Internal,
            "cannot open cache file for writing: " + p.string());
    f << canonical_text() << "\n";
  }

  static std::optional<CacheFile> read(const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f.good()) return std::nullopt;
    CacheFile cf;
    try {
      f >> cf.doc;
    } catch (...) {
      return std::nullopt;
    }
    return cf;
  }
};

struct CacheLoadResult {
  bool usable = false;  // version and fingerprint both match
  bool kl_loaded = false;
  bool gamma_loaded = false;
  std::vector<std::string> notes;
};

// Prime the Hecke tables from a cache document.  Unusable or corrupt
// sections are skipped and recomputed later.
inline CacheLoadResult prime_from_cache(const CacheFile& cf,
                                        const CoxeterDatum& datum,
                                        const GroupTables& W,
                                        const HeckeAlgebra& H) {
  CacheLoadResult res;
  if (!cf.doc.contains("format_version") ||
      cf.doc["format_version"] != CacheFile::kFormatVersion) {
    res.notes.push_back("VersionMismatch: cache ignored");
    return res;
  }
  if (!cf.doc.contains("fingerprint") ||
      cf.doc["fingerprint"] != CacheFile::fingerprint_of(datum)) {
    res.notes.push_back("FingerprintMismatch: cache ignored");
    return res;
  }
  res.usable = true;

  if (cf.doc.contains("kl")) {
    try {
      for (auto it = cf.doc["kl"].begin(); it != cf.doc["kl"].end(); ++it) {
        Elt x = W.element_from_word_string(it.key());
        SparseRow row;
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
          row.emplace_back(W.element_from_word_string(jt.key()),
                           CacheFile::laurent_from_json(jt.value()));
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        H.prime_kl_row(x, std::move(row));
      }
      res.kl_loaded = true;
    } catch (...) {
      res.notes.push_back("CorruptSection: kl section skipped");
    }
  }
  if (cf.doc.contains("gamma")) {
    try {
      for (const auto& entry : cf.doc["gamma"].at("pairs")) {
        Elt x = W.element_from_word_string(entry.at(0).get<std::string>());
        Elt y = W.element_from_word_string(entry.at(1).get<std::string>());
        LeadingRow row;
        for (const auto& t : entry.at(2))
          row.emplace_back(
              W.element_from_word_string(t.at(0).get<std::string>()),
              LeadingEntry{t.at(1).get<int32_t>(), t.at(2).get<long long>()});
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        H.prime_leading_row(x, y, std::move(row));
      }
      res.gamma_loaded = true;
    } catch (...) {
      res.notes.push_back("CorruptSection: gamma section skipped");
    }
  }
  return res;
}

}  // namespace celllab
