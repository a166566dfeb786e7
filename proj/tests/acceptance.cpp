// Copyright 2026 The bctk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: one PASS/FAIL line per criterion with its wall time and
// time budget. Exits nonzero if any criterion fails or runs over budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bctk/bctk.hpp"
#include "bctk/cli.hpp"

namespace {

using namespace bctk;
using Q = Rational;
using classical::ClassicalMap;

// Collects the first few reasons a criterion failed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (notes_.size() < 5) notes_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(failed_) + " failed check(s)";
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

 private:
  std::size_t failed_ = 0;
  std::vector<std::string> notes_;
};

Label composite_rule(Label n, Label m) { return n == 1 ? m : m == 1 ? n : 2 * n * m; }

void dimension_rule(Checks& c) {
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (std::uint32_t m = 1; m <= 6; ++m) {
      const std::string at = "n=" + std::to_string(n) + " m=" + std::to_string(m);
      c.expect(composite_dim(n, m) == composite_rule(n, m), "composite_dim " + at);
      c.expect(concat(SystemShape{n}, SystemShape{m}).dim() == composite_rule(n, m), "shape dim " + at);
    }
  }
}

Q ontic_value(const ClassicalMap<Q>& state, const ClassicalMap<Q>& effect) {
  return classical::compose_seq(state, effect).at(0, 0);
}

void pairing_tables(Checks& c) {
  for (std::uint32_t n = 2; n <= 3; ++n) {
    const SystemShape a{n};
    for (Label i = 1; i <= n; ++i) {
      for (Label i2 = 1; i2 <= n; ++i2) {
        const Q expected = i == i2 ? 1 : 0;
        c.expect(bct::pair(bct::pure_effect<Q>(a, i2), bct::pure_state<Q>(a, i)) == expected, "single delta");
        c.expect(ontic_value(ontic::xi_state(bct::pure_state<Q>(a, i)), ontic::xi_effect(bct::pure_effect<Q>(a, i2))) ==
                     expected,
                 "single delta (ontic)");
      }
    }
    for (std::uint32_t m = 2; m <= 3; ++m) {
      const SystemShape b{m}, ab{n, m};
      const std::string at = " n=" + std::to_string(n) + " m=" + std::to_string(m);
      // ((i'j')_{s'} | (ij)_s) = δ δ δ
      for (Label qs = 1; qs <= ab.dim(); ++qs) {
        const auto rho = bct::pure_state<Q>(ab, qs);
        const auto x_rho = ontic::xi_state(rho);
        const auto d = split_label(a, b, qs);
        for (Label qe = 1; qe <= ab.dim(); ++qe) {
          const auto e = bct::pure_effect<Q>(ab, qe);
          const Q expected = split_label(a, b, qe) == d ? 1 : 0;
          c.expect(bct::pair(e, rho) == expected, "joint delta" + at);
          c.expect(ontic_value(x_rho, ontic::xi_effect(e)) == expected, "joint delta (ontic)" + at);
        }
        // (i'| ⊠ id on (ij)_s gives δ_{ii'} |j)
        for (Label i2 = 1; i2 <= n; ++i2) {
          const auto local = bct::measure_left(bct::pure_effect<Q>(a, i2), b);
          std::vector<Q> expected(m, Q(0));
          if (d.i == i2) expected[d.j - 1] = 1;
          c.expect(bct::apply(local, rho).weights == expected, "local effect" + at);
          c.expect(classical::compose_seq(x_rho, ontic::xi_transformation(local)) ==
                       ontic::xi_state(bct::BctState<Q>(b, expected)),
                   "local effect (ontic)" + at);
        }
      }
      // |i) ⊠ |j) on ((i'j')_{s'}| gives ½ δ δ
      for (Label i = 1; i <= n; ++i) {
        for (Label j = 1; j <= m; ++j) {
          const auto si = bct::pure_state<Q>(a, i);
          const auto sj = bct::pure_state<Q>(b, j);
          const auto prod = bct::par_states(si, sj);
          const auto x_prod = classical::compose_par(ontic::xi_state(si), ontic::xi_state(sj));
          c.expect(ontic::xi_state(prod) == x_prod, "product image" + at);
          for (Label qe = 1; qe <= ab.dim(); ++qe) {
            const auto e = split_label(a, b, qe);
            const Q expected = e.i == i && e.j == j ? Q(1, 2) : Q(0);
            const auto eff = bct::pure_effect<Q>(ab, qe);
            c.expect(bct::pair(eff, prod) == expected, "half law" + at);
            c.expect(ontic_value(x_prod, ontic::xi_effect(eff)) == expected, "half law (ontic)" + at);
          }
        }
      }
    }
  }
}

void uniqueness(Checks& c) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    rng::Rng rng(1001, "acceptance-decompose", k);
    const auto in = rng::random_shape(rng, 4);
    const auto out = rng::random_shape(rng, 4);
    const auto t = rng::random_tensor<Q>(rng, in, out, rng.bit() != 0);
    c.expect(t.is_valid(0.0), "generated tensor invalid");
    c.expect(bct::recompose(in, out, bct::decompose(t)) == t, "decompose/recompose trial " + std::to_string(k));
  }
  // No collisions: the atomic terms n -> m act independently on pure probes
  // once an ancilla is present, i.e. the probe matrix has full row rank.
  for (std::uint32_t n = 2; n <= 3; ++n) {
    for (std::uint32_t m = 2; m <= 3; ++m) {
      for (std::uint32_t anc = 2; anc <= 3; ++anc) {
        const auto rank = classical::rank(verify::probe_matrix<Q>(n, m, anc), 0.0);
        c.expect(rank == 2U * n * m, "probe rank n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                         " ancilla=" + std::to_string(anc) + " is " + std::to_string(rank));
      }
    }
  }
}

verify::Config suite_config(std::size_t trials, std::uint32_t max_dim) {
  verify::Config cfg;
  cfg.seed = 2026;
  cfg.trials = trials;
  cfg.max_dim = max_dim;
  return cfg;
}

void expect_suite(Checks& c, const verify::Report& r) {
  c.expect(r.ok(), r.suite + ": " + std::to_string(r.failure_count) + " failure(s)" +
                       (r.failures.empty() ? "" : " first " + r.failures.front().witness.dump()));
  c.expect(r.max_abs_dev == 0.0, r.suite + ": nonzero deviation");
}

void consistency_suites(Checks& c) {
  const auto all = verify::run("all", suite_config(200, 4));
  c.expect(all.parts.size() == verify::suite_names().size(), "missing suites");
  for (const auto& part : all.parts) {
    c.expect(part.trials >= 200, part.suite + ": fewer than 200 trials");
    expect_suite(c, part);
  }
}

void merging(Checks& c) {
  for (std::uint32_t n = 2; n <= 3; ++n) {
    for (std::uint32_t m = 2; m <= 3; ++m) {
      const SystemShape a{n}, b{m}, ab{n, m};
      const auto mu = ontic::mu<Q>(a, b);
      const auto nu = bct::nu<Q>(a, b);
      c.expect(ontic::xi_transformation(nu) == mu, "xi(nu) != mu");
      for (Label q = 1; q <= ab.dim(); ++q) {
        const auto rho = bct::pure_state<Q>(ab, q);
        c.expect(ontic::xi_state(bct::apply(nu, rho)) == classical::compose_seq(ontic::xi_state(rho), mu),
                 "mu on pure state q=" + std::to_string(q));
      }
    }
  }
  expect_suite(c, verify::run("atomicity", suite_config(200, 3)));
}

void reversible(Checks& c) {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1U);
    const auto id = bct::identity<Q>(SystemShape{static_cast<std::uint32_t>(n)});
    do {
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        bct::ReversibleSpec spec{perm, {}};
        for (std::size_t k = 0; k < n; ++k) spec.sigma.push_back(static_cast<Bit>((mask >> k) & 1U));
        const auto r = bct::reversible<Q>(spec);
        const auto r_inv = bct::reversible<Q>(spec.inverse());
        const auto x = ontic::xi_transformation(r);
        // (i, b) ↦ (π(i), b ⊕ σ_i)
        ClassicalMap<Q> expected(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
          for (Bit b = 0; b <= 1; ++b) expected.at(2 * (perm[i] - 1) + (b ^ spec.sigma[i]), 2 * i + b) = 1;
        }
        const bool ok = r.is_channel(0.0) && bct::compose_seq(r, r_inv) == id && bct::compose_seq(r_inv, r) == id &&
                        x.is_permutation(0.0) && x == expected;
        c.expect(ok, "reversible n=" + std::to_string(n) + " mask=" + std::to_string(mask));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

void swap_soundness(Checks& c) {
  for (std::uint32_t n = 2; n <= 3; ++n) {
    for (std::uint32_t m = 2; m <= 3; ++m) {
      const SystemShape a{n}, b{m};
      const auto lifted_base = bct::swap<Q>(a, b);
      for (std::uint32_t k = 2; k <= 3; ++k) {
        const SystemShape e{k};
        const auto lifted = bct::par_with_identity(lifted_base, e);
        // ((ij)_s k)_t  ↦  ((ji)_s k)_{s⊕t}
        for (std::uint32_t i = 1; i <= n; ++i) {
          for (std::uint32_t j = 1; j <= m; ++j) {
            for (std::uint32_t x = 1; x <= k; ++x) {
              for (Bit s = 0; s <= 1; ++s) {
                for (Bit t = 0; t <= 1; ++t) {
                  const Label from = join_label(concat(a, b), e, join_label(a, b, i, j, s), x, t);
                  const Label to = join_label(concat(b, a), e, join_label(b, a, j, i, s), x, s ^ t);
                  c.expect(bct::apply(lifted, bct::pure_state<Q>(lifted.in_shape(), from)).weights ==
                               bct::pure_state<Q>(lifted.out_shape(), to).weights,
                           "swap relation");
                }
              }
            }
          }
        }
      }
    }
  }
  expect_suite(c, verify::run("swap", suite_config(200, 3)));
}

void latent(Checks& c) {
  const auto inst = lct::default_instance<Q>();
  for (const auto& row : lct::annihilation_table(inst)) {
    for (const auto& x : row) c.expect(x == 0, "product state not annihilated");
  }
  c.expect(lct::pairing_value(inst, lct::default_beta(inst)) == 1, "pairing value != 1");
  auto trace_identity = [&](const lct::CandidateModel<Q>& m, const std::string& what) {
    c.expect(classical::choi_close(lct::jellyfish_matrix(m)) == lct::dot(m.xi_b, m.xi_beta), "trace identity " + what);
  };
  const auto bct_style = lct::bct_style_candidate(inst);
  c.expect(!lct::falsify(bct_style).empty(), "bct-style candidate survived");
  trace_identity(bct_style, "bct-style");
  trace_identity(lct::fabricated_candidate<Q>(), "fabricated");
  std::size_t violated = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    rng::Rng rng(1008, "lct", k);
    const auto cand = lct::random_candidate<Q>(rng, Q(1));
    const auto cert = lct::falsify(cand);
    violated += cert.empty() ? 0 : 1;
    trace_identity(cand, "random " + std::to_string(k));
    c.expect(cert.trace_identity, "certificate trace identity");
  }
  c.expect(violated == 1000, std::to_string(violated) + "/1000 random candidates violated");
}

void backends(Checks& c) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    rng::Rng rng(1009, "dsl", k);
    const auto text = dsl::random_circuit(rng, 3);
    const auto prog = dsl::parse_and_check(text);
    const auto r = dsl::evaluate<Q>(prog, "c");
    c.expect(r.bct.is_scalar() && r.ontic.in_dim() == 1 && r.ontic.out_dim() == 1, "circuit " + std::to_string(k) +
                                                                                          " is not closed");
    c.expect(r.agree && r.bct.as_scalar() == r.ontic.at(0, 0), "circuit " + std::to_string(k) + " disagrees");
  }
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bctk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

void negative_controls(Checks& c) {
  const int swap_code = run_cli({"verify", "--suite", "all", "--seed", "7", "--trials", "50", "--max-dim", "3",
                                 "--inject", "corrupt-swap"});
  c.expect(swap_code == cli::kVerificationFailure, "corrupt swap exit " + std::to_string(swap_code));
  const int fab_code = run_cli({"lct", "refute", "--candidate", "builtin:fabricated"});
  c.expect(fab_code == cli::kNoViolation, "fabricated candidate exit " + std::to_string(fab_code));
  const int file_code = run_cli({"lct", "refute", "--model", "circuits/candidate_fabricated.json"});
  c.expect(file_code == cli::kNoViolation, "fabricated candidate file exit " + std::to_string(file_code));
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Checks&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dimension rule for n,m <= 6", 1, dimension_rule},
      {2, "pairing tables, local action and half law in both semantics", 5, pairing_tables},
      {3, "decomposition round trip and probe rank", 30, uniqueness},
      {4, "all suites, 200 trials, dims <= 4, exact", 60, consistency_suites},
      {5, "merging gate and composite atomicity", 30, merging},
      {6, "reversible transformations n <= 6", 5, reversible},
      {7, "swap defining relation n,m,ancilla <= 3", 10, swap_soundness},
      {8, "latent theory refutation and trace identity", 30, latent},
      {9, "100 random closed circuits, both backends", 30, backends},
      {10, "negative controls exit 3 and 4", 60, negative_controls},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= cr.budget_s;
    const bool pass = checks.ok() && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%.3f s, budget %.0f s)", pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(), seconds,
                cr.budget_s);
    if (!checks.ok()) std::printf(" -- %s", checks.summary().c_str());
    if (!in_time) std::printf(" -- over budget");
    std::printf("\n");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
