#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "celllab/theorems.hpp"

namespace celllab {

/*
  One group with its table stack.  The stages build lazily in order
  (group enumeration at construction; KL table, cells, asymptotics and
  the J-ring on first use), so cheap queries never pay for the scans.
  Owns the storage the other layers reference, so it is pinned in place.
  Stage construction is not thread-safe; share a Session across threads
  only after the stages it needs are built.
*/
class Session {
 public:
  explicit Session(const CoxeterDatum& datum, int jobs = 1,
                   const std::function<void(HeckeAlgebra&)>& prime_hook = {})
      : jobs_(jobs), W_(build_group(datum)) {
    H_ = std::make_unique<HeckeAlgebra>(W_);
    if (prime_hook) prime_hook(*H_);
  }

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const GroupTables& W() const { return W_; }
  const HeckeAlgebra& hecke() const { return *H_; }
  int jobs() const { return jobs_; }

  void ensure_kl() const {
    if (kl_built_) return;
    H_->ensure_all_kl();
    kl_built_ = true;
  }
  bool kl_built() const { return kl_built_; }

  const CellDecomposition& cells() const {
    if (!cells_built_) {
      ensure_kl();
      cells_ = compute_cells(*H_, jobs_);
      cells_built_ = true;
    }
    return cells_;
  }

  const AsymptoticTables& asym() const {
    if (!asym_built_) {
      asym_ = build_asymptotics(*H_, cells(), jobs_);
      asym_built_ = true;
    }
    return asym_;
  }
  bool asym_built() const { return asym_built_; }

  const JRing& jring() const {
    ensure_verifier();
    return *J_;
  }
  const Verifier& verifier() const {
    ensure_verifier();
    return *V_;
  }

  // star and theta data per two-sided cell, computed once; the per-cell
  // computations are independent and run on the worker pool
  const std::vector<StarData>& stars() const {
    ensure_verifier();
    if (stars_.empty()) {
      std::vector<StarData> tmp(cells_.num_two);
      std::exception_ptr failure;
      std::mutex fail_mutex;
      HeckeAlgebra::parallel_for(cells_.num_two, jobs_, [&](size_t c) {
        try {
          tmp[c] = V_->star_data(static_cast<uint32_t>(c));
        } catch (...) {
          std::lock_guard<std::mutex> lk(fail_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
      if (failure) std::rethrow_exception(failure);
      stars_ = std::move(tmp);
    }
    return stars_;
  }
  const std::vector<ThetaData>& thetas() const {
    if (thetas_.empty()) {
      const auto& st = stars();
      std::vector<ThetaData> tmp(st.size());
      std::exception_ptr failure;
      std::mutex fail_mutex;
      HeckeAlgebra::parallel_for(st.size(), jobs_, [&](size_t c) {
        try {
          tmp[c] = V_->theta_data(st[c]);
        } catch (...) {
          std::lock_guard<std::mutex> lk(fail_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
      if (failure) std::rethrow_exception(failure);
      thetas_ = std::move(tmp);
    }
    return thetas_;
  }

 private:
  void ensure_verifier() const {
    if (V_) return;
    asym();
    J_ = std::make_unique<JRing>(*H_, cells_, asym_);
    V_ = std::make_unique<Verifier>(*H_, cells_, asym_, *J_);
  }

  int jobs_;
  GroupTables W_;
  std::unique_ptr<HeckeAlgebra> H_;
  mutable bool kl_built_ = false;
  mutable bool cells_built_ = false;
  mutable bool asym_built_ = false;
  mutable CellDecomposition cells_;
  mutable AsymptoticTables asym_;
  mutable std::unique_ptr<JRing> J_;
  mutable std::unique_ptr<Verifier> V_;
  mutable std::vector<StarData> stars_;
  mutable std::vector<ThetaData> thetas_;
};

// ---- structural spot checks used by the verify pipeline ----

inline CheckReport check_bar_and_triangularity(const Session& S) {
  const GroupTables& W = S.W();
  const HeckeAlgebra& H = S.hecke();
  CheckReport rep("structural: bar involution and KL triangularity");
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Elt> pick(0, static_cast<Elt>(W.size - 1));
  for (int i = 0; i < 40; ++i) {
    HeckeElement h;
    for (int k = 0; k < 3; ++k) {
      h += HeckeElement::basis_vector(Basis::T, pick(rng))
               .scaled(LaurentInt::monomial(
                   static_cast<long>(rng() % 9) - 4,
                   static_cast<int32_t>(rng() % 7) - 3));
    }
    if (H.bar_involution(H.bar_involution(h)) != h) {
      rep.flag("bar is not an involution on a sample");
      break;
    }
  }
  for (Elt x = 0; x < W.size; ++x) {
    HeckeElement cx = H.kl_element(x);
    if (H.bar_involution(cx) != cx) rep.flag("bar(c_x) != c_x at " +
                                             W.word_string(x));
    for (const auto& [y, p] : cx.coords) {
      if (!W.bruhat_leq(y, x))
        rep.flag("KL support outside the interval at " + W.word_string(x));
      if (y != x && (p.is_zero() || p.degree() >= 0))
        rep.flag("KL correction not negative at " + W.word_string(x));
    }
    if (H.kl_polynomial(x, x) != LaurentInt::one())
      rep.flag("p_{x,x} != 1 at " + W.word_string(x));
  }
  return rep;
}

inline CheckReport check_j_ring(const Session& S, int triples = 200,
                                uint64_t seed = 0xbead) {
  const GroupTables& W = S.W();
  const JRing& J = S.jring();
  CheckReport rep("structural: J associativity and unit");
  try {
    J.verify_unit(S.jobs());
  } catch (const CellLabError& e) {
    rep.flag(e.what());
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> pick(0, static_cast<Elt>(W.size - 1));
  for (int i = 0; i < triples; ++i) {
    JElement a = JElement::basis(pick(rng));
    JElement b = JElement::basis(pick(rng));
    JElement c = JElement::basis(pick(rng));
    if (!(J.multiply(J.multiply(a, b), c) == J.multiply(a, J.multiply(b, c)))) {
      rep.flag("associativity fails on a sampled triple");
      break;
    }
  }
  return rep;
}

inline CheckReport check_phi_multiplicative(const Session& S,
                                            int pairs = 100,
                                            uint64_t seed = 0xfeed) {
  const GroupTables& W = S.W();
  const HeckeAlgebra& H = S.hecke();
  const JRing& J = S.jring();
  CheckReport rep("structural: phi is multiplicative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> pick(0, static_cast<Elt>(W.size - 1));
  for (int i = 0; i < pairs; ++i) {
    Elt x = pick(rng), y = pick(rng);
    HeckeElement cx{Basis::T, H.cdag_row(x)};
    HeckeElement cy{Basis::T, H.cdag_row(y)};
    JElement lhs = J.phi(H.t_multiply(cx, cy));
    JElement rhs = J.multiply(J.phi(HeckeElement::basis_vector(Basis::CDag, x)),
                              J.phi(HeckeElement::basis_vector(Basis::CDag, y)));
    if (!(lhs == rhs)) {
      rep.flag("phi(c_x# c_y#) != phi(c_x#) phi(c_y#) at (" +
               W.word_string(x) + "," + W.word_string(y) + ")");
      if (rep.violations.size() >= 3) break;
    }
  }
  return rep;
}

// ---- the ordered verification pipeline ----

struct VerificationOutcome {
  std::vector<CheckReport> reports;

  bool all_pass() const {
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

inline const std::vector<std::string>& verification_stage_keys() {
  static const std::vector<std::string> keys = {
      "P",   "1.2", "2.2", "2.3", "2.4",  "2.5",       "2.6",
      "2.7", "2.8", "1.12", "1.13", "2.9", "2.10", "structural"};
  return keys;
}

/*
  Runs the selected checks in dependency order; a failing stage halts the
  later ones with a structured skip entry.  An empty selection runs
  everything.
*/
inline VerificationOutcome run_verifications(
    const Session& S, std::set<std::string> selected = {}) {
  const bool run_all = selected.empty();
  auto want = [&](const std::string& key) {
    return run_all || selected.count(key) > 0;
  };
  VerificationOutcome out;
  bool halted = false;

  auto submit = [&](CheckReport rep) {
    if (!rep.pass) halted = true;
    out.reports.push_back(std::move(rep));
  };
  auto skip = [&](const std::string& name) {
    CheckReport rep(name);
    rep.pass = false;
    rep.skipped = true;
    rep.violations.push_back("skipped: an earlier stage failed");
    out.reports.push_back(std::move(rep));
  };

  // P-consequences gate everything after them
  if (want("P")) {
    PReport p = check_P_consequences(S.hecke(), S.cells(), S.asym());
    for (auto& item : p.items) {
      CheckReport rep("P " + item.name);
      rep.pass = item.pass;
      rep.violations = item.violations;
      submit(std::move(rep));
    }
  }
  if (want("1.2")) {
    if (halted) skip("1.2 sigma preserves two-sided cells");
    else submit(S.verifier().verify_lemma_1_2());
  }

  // stages needing star data
  auto star_stage = [&](const std::string& key, auto&& fn) {
    if (!want(key)) return;
    if (halted) {
      skip(key);
      return;
    }
    try {
      fn();
    } catch (const CellLabError& e) {
      CheckReport rep(key);
      rep.flag(e.what());
      submit(std::move(rep));
    }
  };

  star_stage("2.2", [&] {
    for (const StarData& sd : S.stars()) submit(S.verifier().verify_2_2(sd));
  });
  star_stage("2.3", [&] {
    for (uint32_t c = 0; c < S.cells().num_two; ++c) {
      StarData sd;
      submit(S.verifier().verify_2_3(c, sd));
    }
  });
  star_stage("2.4", [&] {
    for (const StarData& sd : S.stars()) submit(S.verifier().verify_2_4(sd));
  });
  star_stage("2.5", [&] {
    for (const StarData& sd : S.stars())
      submit(S.verifier().verify_2_5(sd, S.thetas()[sd.cell]));
  });
  star_stage("2.6",
             [&] { submit(S.verifier().verify_2_6(S.stars(), S.thetas())); });
  if (want("2.7") || want("2.8")) {
    star_stage(want("2.7") ? "2.7" : "2.8", [&] {
      submit(S.verifier().verify_2_7_2_8(S.stars(), S.thetas()));
    });
  }
  if (want("1.12") || want("1.13")) {
    star_stage(want("1.12") ? "1.12" : "1.13", [&] {
      for (const StarData& sd : S.stars())
        submit(S.verifier().verify_1_12_1_13(sd));
    });
  }
  star_stage("2.9", [&] {
    for (const StarData& sd : S.stars())
      submit(S.verifier().verify_2_9(sd, S.thetas()[sd.cell]));
  });
  star_stage("2.10",
             [&] { submit(S.verifier().verify_2_10(S.stars())); });

  if (want("structural")) {
    if (halted) {
      skip("structural");
    } else {
      submit(check_bar_and_triangularity(S));
      submit(check_j_ring(S));
      submit(check_phi_multiplicative(S));
    }
  }
  return out;
}

}  // namespace celllab
