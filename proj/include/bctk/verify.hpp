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

// Consistency suites for the ontological model. Each suite runs a fixed set
// of exhaustive checks followed by `trials` seeded random checks spread over a
// worker pool. Mathematical failures never throw: they are recorded with a
// witness and the two sides that disagreed.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "bctk/bct.hpp"
#include "bctk/classical.hpp"
#include "bctk/ontic.hpp"
#include "bctk/process.hpp"
#include "bctk/random.hpp"
#include "bctk/systems.hpp"

namespace bctk::verify {

using nlohmann::json;

enum class Backend { rational, floating };
enum class Fault { none, corrupt_swap };

struct Config {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::uint32_t max_dim = 4;
  Backend backend = Backend::rational;
  double tol = kDefaultTolerance;
  Fault fault = Fault::none;
  unsigned threads = 0;  // 0: hardware concurrency

  double tolerance() const { return backend == Backend::rational ? 0.0 : tol; }
};

struct Failure {
  json witness;
  json lhs;
  json rhs;
};

/// Failures beyond this many are counted but not listed.
inline constexpr std::size_t kMaxListedFailures = 50;

struct Report {
  Report() = default;
  Report(std::string name, std::uint64_t s, std::size_t n) : suite(std::move(name)), seed(s), trials(n) {}

  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<Failure> failures;
  std::size_t failure_count = 0;
  double max_abs_dev = 0.0;
  std::vector<Report> parts;

  bool ok() const { return failure_count == 0; }

  void absorb(const Report& other) {
    failure_count += other.failure_count;
    max_abs_dev = std::max(max_abs_dev, other.max_abs_dev);
    for (const auto& f : other.failures) {
      if (failures.size() >= kMaxListedFailures) break;
      Failure tagged = f;
      tagged.witness["suite"] = other.suite;
      failures.push_back(std::move(tagged));
    }
  }

  json to_json() const {
    json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["trials"] = trials;
    json fs = json::array();
    for (const auto& f : failures) fs.push_back({{"witness", f.witness}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    j["failures"] = std::move(fs);
    j["failure_count"] = failure_count;
    j["max_abs_dev"] = max_abs_dev;
    if (!parts.empty()) {
      json ps = json::array();
      for (const auto& p : parts) ps.push_back(p.to_json());
      j["suites"] = std::move(ps);
    }
    return j;
  }
};

/// Collects the outcome of one trial (or of the exhaustive block).
class Recorder {
 public:
  Recorder(double tol, std::optional<std::size_t> trial) : tol_(tol), trial_(trial) {}

  bool holds(const std::string& check, json detail, bool condition, json lhs = true, json rhs = true) {
    if (condition) return true;
    fail(check, std::move(detail), std::move(lhs), std::move(rhs));
    return false;
  }

  template <class S>
  bool scalars(const std::string& check, json detail, const S& lhs, const S& rhs) {
    const double dev = std::fabs(ScalarTraits<S>::to_double(S(lhs - rhs)));
    max_abs_dev_ = std::max(max_abs_dev_, dev);
    if (ScalarTraits<S>::equal(lhs, rhs, tol_)) return true;
    fail(check, std::move(detail), ScalarTraits<S>::to_json(lhs), ScalarTraits<S>::to_json(rhs));
    return false;
  }

  template <class S>
  bool maps(const std::string& check, json detail, const classical::ClassicalMap<S>& lhs,
            const classical::ClassicalMap<S>& rhs) {
    if (lhs.in_dim() != rhs.in_dim() || lhs.out_dim() != rhs.out_dim()) {
      fail(check, std::move(detail), lhs.shape_string(), rhs.shape_string());
      return false;
    }
    std::optional<std::pair<std::size_t, std::size_t>> first;
    for (std::size_t r = 0; r < lhs.out_dim(); ++r) {
      for (std::size_t c = 0; c < lhs.in_dim(); ++c) {
        const S diff = lhs.at(r, c) - rhs.at(r, c);
        max_abs_dev_ = std::max(max_abs_dev_, std::fabs(ScalarTraits<S>::to_double(diff)));
        if (!first && !ScalarTraits<S>::equal(lhs.at(r, c), rhs.at(r, c), tol_)) first = {r, c};
      }
    }
    if (!first) return true;
    auto [r, c] = *first;
    fail(check, std::move(detail), entry_json(r, c, lhs.at(r, c)), entry_json(r, c, rhs.at(r, c)));
    return false;
  }

  template <class S>
  bool tensors(const std::string& check, json detail, const bct::TransformationTensor<S>& lhs,
               const bct::TransformationTensor<S>& rhs) {
    if (!(lhs.in_shape() == rhs.in_shape()) || !(lhs.out_shape() == rhs.out_shape())) {
      fail(check, std::move(detail), lhs.type_string(), rhs.type_string());
      return false;
    }
    std::set<bct::TermKey> keys;
    for (const auto& [k, w] : lhs.coeffs()) keys.insert(k);
    for (const auto& [k, w] : rhs.coeffs()) keys.insert(k);
    std::optional<bct::TermKey> first;
    for (const auto& k : keys) {
      const S a = lhs.coefficient(k.in, k.out, k.tau);
      const S b = rhs.coefficient(k.in, k.out, k.tau);
      max_abs_dev_ = std::max(max_abs_dev_, std::fabs(ScalarTraits<S>::to_double(S(a - b))));
      if (!first && !ScalarTraits<S>::equal(a, b, tol_)) first = k;
    }
    if (!first) return true;
    auto term = [&](const bct::TransformationTensor<S>& t) {
      return json{{"i0", first->in},
                  {"l", first->out},
                  {"tau", first->tau},
                  {"w", ScalarTraits<S>::to_json(t.coefficient(first->in, first->out, first->tau))}};
    };
    fail(check, std::move(detail), term(lhs), term(rhs));
    return false;
  }

  template <class S>
  bool weights(const std::string& check, json detail, const std::vector<S>& lhs, const std::vector<S>& rhs) {
    if (lhs.size() != rhs.size()) {
      fail(check, std::move(detail), lhs.size(), rhs.size());
      return false;
    }
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      max_abs_dev_ = std::max(max_abs_dev_, std::fabs(ScalarTraits<S>::to_double(S(lhs[k] - rhs[k]))));
    }
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      if (!ScalarTraits<S>::equal(lhs[k], rhs[k], tol_)) {
        fail(check, std::move(detail), entry_json(k, 0, lhs[k]), entry_json(k, 0, rhs[k]));
        return false;
      }
    }
    return true;
  }

  double tol() const { return tol_; }
  const std::vector<Failure>& failures() const { return failures_; }
  std::size_t failure_count() const { return failure_count_; }
  double max_abs_dev() const { return max_abs_dev_; }

 private:
  template <class S>
  static json entry_json(std::size_t r, std::size_t c, const S& x) {
    return {{"entry", {r, c}}, {"value", ScalarTraits<S>::to_json(x)}};
  }

  void fail(const std::string& check, json detail, json lhs, json rhs) {
    ++failure_count_;
    if (failures_.size() >= kMaxListedFailures) return;
    json witness = {{"check", check}};
    if (trial_) witness["trial"] = *trial_;
    if (!detail.is_null()) witness["detail"] = std::move(detail);
    failures_.push_back({std::move(witness), std::move(lhs), std::move(rhs)});
  }

  double tol_;
  std::optional<std::size_t> trial_;
  std::vector<Failure> failures_;
  std::size_t failure_count_ = 0;
  double max_abs_dev_ = 0.0;
};

inline json shape_json(const SystemShape& s) { return s.elems(); }

/// Runs `per_trial(rng, recorder, k)` for k in [0, trials) on a worker pool
/// and merges the results in trial order.
template <class F>
void run_trials(const Config& cfg, const std::string& stream, Report& report, F per_trial) {
  const std::size_t n = cfg.trials;
  std::vector<std::optional<Recorder>> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < n; k = next++) {
      Recorder rec(cfg.tolerance(), k);
      rng::Rng rng(cfg.seed, stream, k);
      try {
        per_trial(rng, rec, k);
      } catch (const std::exception& e) {
        rec.holds("no-exception", json{{"what", e.what()}}, false);
      }
      results[k].emplace(std::move(rec));
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& r : results) {
    report.failure_count += r->failure_count();
    report.max_abs_dev = std::max(report.max_abs_dev, r->max_abs_dev());
    for (const auto& f : r->failures()) {
      if (report.failures.size() < kMaxListedFailures) report.failures.push_back(f);
    }
  }
}

template <class F>
void run_exhaustive(const Config& cfg, Report& report, F body) {
  Recorder rec(cfg.tolerance(), std::nullopt);
  try {
    body(rec);
  } catch (const std::exception& e) {
    rec.holds("no-exception", json{{"what", e.what()}}, false);
  }
  report.failure_count += rec.failure_count();
  report.max_abs_dev = std::max(report.max_abs_dev, rec.max_abs_dev());
  for (const auto& f : rec.failures()) {
    if (report.failures.size() < kMaxListedFailures) report.failures.push_back(f);
  }
}

/// The swap under test. With Fault::corrupt_swap every section-bit shift is
/// dropped, which is the negative control for the swap and diagram suites.
template <class S>
bct::TransformationTensor<S> swap_under_test(const SystemShape& a, const SystemShape& b, const Config& cfg) {
  if (cfg.fault != Fault::corrupt_swap) return bct::swap<S>(a, b);
  bct::TransformationTensor<S> out(concat(a, b), concat(b, a));
  for (Label i = 1; i <= a.dim(); ++i) {
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit s = 0; s <= 1; ++s) out.add(join_label(a, b, i, j, s), join_label(b, a, j, i, s), 0, S(1));
    }
  }
  return out;
}

/// Smallest of max_dim and the cap used by exhaustive checks.
inline std::uint32_t capped(const Config& cfg, std::uint32_t cap) {
  return std::max<std::uint32_t>(2, std::min(cfg.max_dim, cap));
}

// ---------------------------------------------------------------------------
// codec

template <class S>
Report suite_codec(const Config& cfg) {
  Report report{"codec", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    for (std::uint32_t n = 1; n <= 6; ++n) {
      for (std::uint32_t m = 1; m <= 6; ++m) {
        const Label expected = (n != 1 && m != 1) ? Label{2} * n * m : (n == 1 ? m : n);
        rec.holds("dimension-rule", json{{"n", n}, {"m", m}}, composite_dim(n, m) == expected,
                  composite_dim(n, m), expected);
        rec.holds("dimension-rule-shape", json{{"n", n}, {"m", m}}, SystemShape{n, m}.dim() == expected,
                  SystemShape{n, m}.dim(), expected);
      }
    }
    for (Label n1 = 1; n1 <= 8; ++n1) {
      for (Label n2 = 1; n2 <= 8; ++n2) {
        std::vector<bool> hit(2 * n1 * n2, false);
        bool ok = true;
        for (Label i = 1; i <= n1; ++i) {
          for (Label j = 1; j <= n2; ++j) {
            for (Bit s = 0; s <= 1; ++s) {
              const Label q = q_encode(n1, n2, i, j, s);
              ok = ok && q >= 1 && q <= 2 * n1 * n2 && !hit[q - 1] && q_decode(n1, n2, q) == Decoded{i, j, s};
              if (q >= 1 && q <= 2 * n1 * n2) hit[q - 1] = true;
            }
          }
        }
        ok = ok && std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
        rec.holds("q-bijection", json{{"N1", n1}, {"N2", n2}}, ok);
      }
    }
  });
  run_trials(cfg, "codec", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    const std::size_t parts = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<std::uint32_t> elems;
    for (std::size_t k = 0; k < parts; ++k) elems.push_back(rng::random_elem(rng, capped(cfg, 4)));
    const SystemShape shape(elems);
    const Label q = static_cast<Label>(rng.uniform(1, static_cast<std::int64_t>(shape.dim())));
    const auto label = unflatten_label(shape, q);
    const json detail = {{"shape", shape_json(shape)}, {"q", q}};
    rec.holds("flatten-roundtrip", detail, flatten_label(shape, label) == q);
    rec.holds("label-text-roundtrip", detail, parse_label(label.to_string()) == label, label.to_string());
    if (parts >= 2) {
      const std::size_t cut = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(parts) - 1));
      const auto a = shape.prefix(cut);
      const SystemShape b(std::vector<std::uint32_t>(elems.begin() + static_cast<long>(cut), elems.end()));
      const auto d = split_label(a, b, q);
      rec.holds("join-split-roundtrip", detail, join_label(a, b, d.i, d.j, d.s) == q);
    }
    // Both groupings of a tripartite label name the same global label.
    const std::uint32_t n1 = rng::random_elem(rng, capped(cfg, 3));
    const std::uint32_t n2 = rng::random_elem(rng, capped(cfg, 3));
    const std::uint32_t n3 = rng::random_elem(rng, capped(cfg, 3));
    const LeftNested left{static_cast<std::uint32_t>(rng.uniform(1, n1)), static_cast<std::uint32_t>(rng.uniform(1, n2)),
                          static_cast<std::uint32_t>(rng.uniform(1, n3)), rng.bit(), rng.bit()};
    const auto right = reassoc_label(n1, n2, n3, left);
    const SystemShape e1{n1}, e2{n2}, e3{n3};
    const Label via_left =
        join_label(concat(e1, e2), e3, join_label(e1, e2, left.i, left.j, left.inner), left.k, left.outer);
    const Label via_right =
        join_label(e1, concat(e2, e3), right.i, join_label(e2, e3, right.j, right.k, right.inner), right.outer);
    const json tri = {{"dims", {n1, n2, n3}}, {"ijk", {left.i, left.j, left.k}}, {"st", {left.inner, left.outer}}};
    rec.holds("reassociation", tri, via_left == via_right, via_left, via_right);
    rec.holds("reassociation-inverse", tri, reassoc_label_inv(n1, n2, n3, right) == left);
  });
  return report;
}

// ---------------------------------------------------------------------------
// linearity

/// Probe matrix rows: every atomic term n -> m. Columns: pure states on n⊠E
/// paired with pure effects on m⊠E after the term acts with id_E (or, with
/// no ancilla, pure states on n and pure effects on m).
template <class S>
std::vector<std::vector<S>> probe_matrix(std::uint32_t n, std::uint32_t m, std::uint32_t ancilla) {
  const SystemShape a{n}, b{m};
  std::vector<std::vector<S>> rows;
  for (Label i0 = 1; i0 <= n; ++i0) {
    for (Label l = 1; l <= m; ++l) {
      for (Bit tau = 0; tau <= 1; ++tau) {
        bct::TransformationTensor<S> atom(a, b);
        atom.add(i0, l, tau, S(1));
        std::vector<S> row;
        if (ancilla <= 1) {
          for (Label q = 1; q <= n; ++q) {
            const auto out = bct::apply(atom, bct::pure_state<S>(a, q));
            row.insert(row.end(), out.weights.begin(), out.weights.end());
          }
        } else {
          const SystemShape e{ancilla};
          const auto lifted = bct::par_with_identity(atom, e);
          for (Label q = 1; q <= lifted.in_shape().dim(); ++q) {
            const auto out = bct::apply(lifted, bct::pure_state<S>(lifted.in_shape(), q));
            row.insert(row.end(), out.weights.begin(), out.weights.end());
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

template <class S>
Report suite_linearity(const Config& cfg) {
  Report report{"linearity", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    const auto cap = capped(cfg, 3);
    for (std::uint32_t n = 2; n <= cap; ++n) {
      for (std::uint32_t m = 2; m <= cap; ++m) {
        const json detail = {{"n", n}, {"m", m}};
        const std::size_t atoms = 2 * n * m;
        const auto with = classical::rank(probe_matrix<S>(n, m, 2), rec.tol());
        rec.holds("probe-rank-with-ancilla", detail, with == atoms, with, atoms);
        const auto without = classical::rank(probe_matrix<S>(n, m, 1), rec.tol());
        rec.holds("probe-rank-without-ancilla", detail, without == n * m, without, n * m);
      }
    }
  });
  run_trials(cfg, "linearity", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    const auto a = rng::random_shape(rng, cfg.max_dim);
    const auto b = rng::random_shape(rng, cfg.max_dim);
    const json detail = {{"in", shape_json(a)}, {"out", shape_json(b)}};
    const auto t1 = rng::random_tensor<S>(rng, a, b, false);
    const auto t2 = rng::random_tensor<S>(rng, a, b, false);
    const auto x1 = ontic::xi_transformation(t1);
    const auto x2 = ontic::xi_transformation(t2);

    auto sum = t1;
    sum += t2;
    auto x_sum = x1;
    x_sum += x2;
    rec.maps("additivity", detail, ontic::xi_transformation(sum), x_sum);

    const S lambda = scalar<S>(rng.uniform(1, 7), 7);
    auto x_scaled = x1;
    x_scaled *= lambda;
    rec.maps("homogeneity", detail, ontic::xi_transformation(t1.scaled(lambda)), x_scaled);

    rec.tensors("decompose-recompose", detail, bct::recompose(a, b, bct::decompose(t1)), t1);
    rec.tensors("faithfulness", detail, ontic::recover_coefficients(x1, a, b), t1);

    // Column sums of the image equal the row sums of the tensor.
    const auto table = ontic::unfuse_table(a);
    for (Label i = 1; i <= a.dim(); ++i) {
      for (Bit c = 0; c <= 1; ++c) {
        rec.scalars("column-sum", json{{"in", shape_json(a)}, {"i", i}, {"b", c}},
                    x1.column_sum(table[ontic::fused_index(i, c)]), t1.row_sum(i));
      }
    }
  });
  return report;
}

// ---------------------------------------------------------------------------
// diagram

template <class S>
Report suite_diagram(const Config& cfg) {
  Report report{"diagram", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    std::vector<SystemShape> shapes;
    for (std::uint32_t n = 2; n <= cfg.max_dim; ++n) shapes.push_back(SystemShape{n});
    shapes.push_back(SystemShape{2, 2});
    shapes.push_back(SystemShape{2, 3});
    for (const auto& s : shapes) {
      rec.maps("identity", json{{"shape", shape_json(s)}}, ontic::xi_transformation(bct::identity<S>(s)),
               classical::ClassicalMap<S>::identity(ontic::xi_system(s).dim));
    }
    std::vector<SystemShape> small;
    for (std::uint32_t n = 2; n <= capped(cfg, 3); ++n) small.push_back(SystemShape{n});
    small.push_back(SystemShape{2, 2});
    for (const auto& a : small) {
      for (const auto& b : small) {
        rec.maps("swap", json{{"a", shape_json(a)}, {"b", shape_json(b)}},
                 ontic::xi_transformation(swap_under_test<S>(a, b, cfg)), ontic::ontic_swap<S>(a, b));
      }
    }
    // Every pair of atomic terms n -> m -> k.
    const auto cap = capped(cfg, 3);
    for (std::uint32_t n = 2; n <= cap; ++n) {
      for (std::uint32_t m = 2; m <= cap; ++m) {
        for (std::uint32_t k = 2; k <= cap; ++k) {
          bool ok = true;
          for (Label i0 = 1; i0 <= n && ok; ++i0) {
            for (Label l = 1; l <= m && ok; ++l) {
              for (Bit tau = 0; tau <= 1 && ok; ++tau) {
                bct::TransformationTensor<S> first(SystemShape{n}, SystemShape{m});
                first.add(i0, l, tau, S(1));
                const auto x_first = ontic::xi_transformation(first);
                for (Label l2 = 1; l2 <= k && ok; ++l2) {
                  for (Bit tau2 = 0; tau2 <= 1 && ok; ++tau2) {
                    bct::TransformationTensor<S> second(SystemShape{m}, SystemShape{k});
                    second.add(l, l2, tau2, S(1));
                    ok = rec.maps("atomic-sequential",
                                  json{{"dims", {n, m, k}}, {"first", {i0, l, tau}}, {"second", {l, l2, tau2}}},
                                  ontic::xi_transformation(bct::compose_seq(first, second)),
                                  classical::compose_seq(x_first, ontic::xi_transformation(second)));
                  }
                }
              }
            }
          }
        }
      }
    }
  });
  run_trials(cfg, "diagram", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    const auto a = rng::random_shape(rng, cfg.max_dim);
    const auto b = rng::random_shape(rng, cfg.max_dim);
    const auto c = rng::random_shape(rng, cfg.max_dim);
    const bool channels = rng.bit();
    const auto t1 = rng::random_tensor<S>(rng, a, b, channels);
    const auto t2 = rng::random_tensor<S>(rng, b, c, channels);
    const json seq = {{"a", shape_json(a)}, {"b", shape_json(b)}, {"c", shape_json(c)}};
    const auto x1 = ontic::xi_transformation(t1);
    rec.maps("sequential", seq, ontic::xi_transformation(bct::compose_seq(t1, t2)),
             classical::compose_seq(x1, ontic::xi_transformation(t2)));

    // Parallel: keep one side elementary so ontic spaces stay small.
    const bool composite = rng.chance(20);
    const auto pa = composite ? rng::random_shape(rng, 3, 100) : SystemShape{rng::random_elem(rng, cfg.max_dim)};
    const auto pb = composite ? SystemShape{2} : SystemShape{rng::random_elem(rng, cfg.max_dim)};
    const auto pc = SystemShape{rng::random_elem(rng, composite ? 2 : cfg.max_dim)};
    const auto pd = SystemShape{rng::random_elem(rng, composite ? 3 : cfg.max_dim)};
    const auto u1 = rng::random_tensor<S>(rng, pa, pb, channels);
    const auto u2 = rng::random_tensor<S>(rng, pc, pd, channels);
    const json par_detail = {{"t1", {shape_json(pa), shape_json(pb)}}, {"t2", {shape_json(pc), shape_json(pd)}}};
    rec.maps("parallel", par_detail, ontic::xi_transformation(bct::compose_par(u1, u2)),
             classical::compose_par(ontic::xi_transformation(u1), ontic::xi_transformation(u2)));

    const auto rho = rng::random_state<S>(rng, a);
    const auto sigma = rng::random_state<S>(rng, pc);
    const auto e = rng::random_effect<S>(rng, b);
    const auto f = rng::random_effect<S>(rng, pc);
    rec.maps("state-transport", seq, ontic::xi_state(bct::apply(t1, rho)),
             classical::compose_seq(ontic::xi_state(rho), x1));
    rec.maps("effect-transport", seq, ontic::xi_effect(bct::pull(e, t1)),
             classical::compose_seq(x1, ontic::xi_effect(e)));
    rec.maps("state-product", seq, ontic::xi_state(bct::par_states(rho, sigma)),
             classical::compose_par(ontic::xi_state(rho), ontic::xi_state(sigma)));
    rec.maps("effect-product", seq, ontic::xi_effect(bct::par_effects(e, f)),
             classical::compose_par(ontic::xi_effect(e), ontic::xi_effect(f)));
    rec.maps("state-beside-transformation", par_detail, xi(par(Process<S>(sigma), Process<S>(u1))),
             classical::compose_par(ontic::xi_state(sigma), ontic::xi_transformation(u1)));
    rec.maps("effect-beside-transformation", par_detail, xi(par(Process<S>(u1), Process<S>(f))),
             classical::compose_par(ontic::xi_transformation(u1), ontic::xi_effect(f)));
  });
  return report;
}

// ---------------------------------------------------------------------------
// probability

template <class S>
Report suite_probability(const Config& cfg) {
  Report report{"probability", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    const auto cap = capped(cfg, 3);
    auto ontic_pair = [](const bct::BctEffect<S>& e, const bct::BctState<S>& rho) {
      return classical::compose_seq(ontic::xi_state(rho), ontic::xi_effect(e)).at(0, 0);
    };
    for (std::uint32_t n = 2; n <= cap; ++n) {
      const SystemShape a{n};
      for (Label i = 1; i <= n; ++i) {
        for (Label k = 1; k <= n; ++k) {
          const auto e = bct::pure_effect<S>(a, k);
          const auto rho = bct::pure_state<S>(a, i);
          const S delta = i == k ? S(1) : S(0);
          const json detail = {{"n", n}, {"state", i}, {"effect", k}};
          rec.scalars("single-delta", detail, bct::pair(e, rho), delta);
          rec.scalars("single-delta-ontic", detail, ontic_pair(e, rho), delta);
        }
      }
      for (std::uint32_t m = 2; m <= cap; ++m) {
        const SystemShape b{m};
        const auto ab = concat(a, b);
        for (Label q = 1; q <= ab.dim(); ++q) {
          const auto rho = bct::pure_state<S>(ab, q);
          for (Label q2 = 1; q2 <= ab.dim(); ++q2) {
            const auto e = bct::pure_effect<S>(ab, q2);
            const S delta = q == q2 ? S(1) : S(0);
            const json detail = {{"n", n}, {"m", m}, {"state", q}, {"effect", q2}};
            rec.scalars("bipartite-delta", detail, bct::pair(e, rho), delta);
            rec.scalars("bipartite-delta-ontic", detail, ontic_pair(e, rho), delta);
          }
          // Local effect (i'| on the left leaves δ_{i,i'} |j) on the right.
          const auto d = split_label(a, b, q);
          for (Label ip = 1; ip <= n; ++ip) {
            const auto local = bct::pure_effect<S>(a, ip);
            const auto out = bct::apply(bct::measure_left(local, b), rho);
            auto expected = bct::pure_state<S>(b, d.j);
            if (d.i != ip) expected = bct::BctState<S>(b, std::vector<S>(b.dim(), S(0)));
            const json detail = {{"n", n}, {"m", m}, {"state", q}, {"local_effect", ip}};
            rec.weights("local-effect", detail, out.weights, expected.weights);
            rec.maps("local-effect-ontic", detail,
                     classical::compose_seq(ontic::xi_state(rho),
                                            classical::compose_par(ontic::xi_effect(local),
                                                                   classical::ClassicalMap<S>::identity(2 * m))),
                     ontic::xi_state(expected));
          }
        }
        // ½-law: ((i,j)_s| after a local pure state |i') on the left.
        for (Label ip = 1; ip <= n; ++ip) {
          const auto local = bct::pure_state<S>(a, ip);
          for (Label q = 1; q <= ab.dim(); ++q) {
            const auto e = bct::pure_effect<S>(ab, q);
            const auto d = split_label(a, b, q);
            std::vector<S> expected(m, S(0));
            if (d.i == ip) expected[d.j - 1] = scalar<S>(1, 2);
            const json detail = {{"n", n}, {"m", m}, {"local_state", ip}, {"effect", q}};
            rec.weights("half-law", detail, bct::pull(e, bct::prepare_left(local, b)).weights, expected);
            rec.maps("half-law-ontic", detail,
                     classical::compose_seq(classical::compose_par(ontic::xi_state(local),
                                                                   classical::ClassicalMap<S>::identity(2 * m)),
                                            ontic::xi_effect(e)),
                     ontic::xi_effect(bct::BctEffect<S>(b, expected)));
          }
        }
      }
    }
    const S p = scalar<S>(3, 7);
    rec.maps("scalar", json{{"p", "3/7"}}, xi(Process<S>(p)), classical::ClassicalMap<S>::scalar(p));
  });
  run_trials(cfg, "probability", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    const auto a = rng::random_shape(rng, capped(cfg, 3));
    const auto c = rng::random_shape(rng, capped(cfg, 3));
    const SystemShape e_shape{rng::random_elem(rng, 3)};
    const auto t = rng::random_tensor<S>(rng, a, c, rng.bit());
    const auto rho = rng::random_state<S>(rng, concat(a, e_shape), false);
    const auto e = rng::random_effect<S>(rng, concat(c, e_shape));
    const json detail = {{"in", shape_json(a)}, {"out", shape_json(c)}, {"ancilla", shape_json(e_shape)}};
    const S theory = bct::pair(e, bct::apply(bct::par_with_identity(t, e_shape), rho));
    const auto lifted = classical::compose_par(ontic::xi_transformation(t),
                                               classical::ClassicalMap<S>::identity(ontic::xi_system(e_shape).dim));
    const S model =
        classical::compose_seq(classical::compose_seq(ontic::xi_state(rho), lifted), ontic::xi_effect(e)).at(0, 0);
    rec.scalars("probability", detail, theory, model);
    rec.holds("probability-range", detail,
              !ScalarTraits<S>::is_negative(theory, rec.tol()) &&
                  !ScalarTraits<S>::is_negative(S(1) - theory, rec.tol()),
              ScalarTraits<S>::to_json(theory));
  });
  return report;
}

// ---------------------------------------------------------------------------
// determinacy

template <class S>
Report suite_determinacy(const Config& cfg) {
  Report report{"determinacy", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    for (const auto& s : {SystemShape{2}, SystemShape{3}, SystemShape{2, 2}, SystemShape{2, 3}}) {
      const auto dim = ontic::xi_system(s).dim;
      rec.maps("deterministic-effect", json{{"shape", shape_json(s)}},
               ontic::xi_effect(bct::deterministic_effect<S>(s)),
               classical::ClassicalMap<S>::effect(std::vector<S>(dim, S(1))));
      const bct::TransformationTensor<S> null(s, s);
      const auto x = ontic::xi_transformation(null);
      rec.holds("null-transformation", json{{"shape", shape_json(s)}}, x.is_zero(0.0) && x.is_substochastic(0.0));
    }
  });
  run_trials(cfg, "determinacy", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    const auto a = rng::random_shape(rng, cfg.max_dim);
    const auto b = rng::random_shape(rng, cfg.max_dim);
    const json detail = {{"in", shape_json(a)}, {"out", shape_json(b)}};
    const auto channel = rng::random_tensor<S>(rng, a, b, true);
    const auto xc = ontic::xi_transformation(channel);
    rec.holds("channel-stochastic", detail, channel.is_channel(rec.tol()) && xc.is_stochastic(rec.tol()));
    const auto sub = rng::random_tensor<S>(rng, a, b, false);
    const auto xs = ontic::xi_transformation(sub);
    rec.holds("validity-equivalence", detail, sub.is_valid(rec.tol()) == xs.is_substochastic(rec.tol()));
    rec.holds("channel-equivalence", detail, sub.is_channel(rec.tol()) == xs.is_stochastic(rec.tol()));
    const auto over = sub.scaled(S(3));
    rec.holds("invalid-equivalence", detail,
              over.is_valid(rec.tol()) == ontic::xi_transformation(over).is_substochastic(rec.tol()));

    const auto instr = rng::random_instrument<S>(rng, a, b, 3);
    classical::ClassicalMap<S> total(xc.in_dim(), xc.out_dim());
    bool members_ok = true;
    for (const auto& m : instr.members) {
      const auto xm = ontic::xi_transformation(m);
      members_ok = members_ok && xm.is_substochastic(rec.tol());
      total += xm;
    }
    rec.holds("instrument-members", detail, members_ok);
    rec.holds("instrument-total", detail, total.is_stochastic(rec.tol()) && bct::is_valid_instrument(instr, rec.tol()));
    rec.maps("instrument-coarse-grain", detail, ontic::xi_transformation(bct::coarse_grain(instr)), total);

    const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 6));
    const auto spec = rng::random_reversible_spec(rng, n);
    const auto r = bct::reversible<S>(spec);
    const auto r_inv = bct::reversible<S>(spec.inverse());
    const json rev = {{"perm", spec.perm}, {"sigma", spec.sigma}};
    const auto id = bct::identity<S>(SystemShape{static_cast<std::uint32_t>(n)});
    rec.holds("reversible-channel", rev, r.is_channel(rec.tol()));
    rec.tensors("reversible-left-inverse", rev, bct::compose_seq(r, r_inv), id);
    rec.tensors("reversible-right-inverse", rev, bct::compose_seq(r_inv, r), id);
    const auto xr = ontic::xi_transformation(r);
    rec.maps("reversible-closed-form", rev, xr, ontic::reversible_closed_form<S>(spec));
    rec.holds("reversible-permutation", rev, xr.is_permutation(rec.tol()));

    const SystemShape pair_shape{2, 2};
    const auto spec2 = rng::random_reversible_spec(rng, pair_shape.dim());
    rec.holds("reversible-composite-permutation", json{{"perm", spec2.perm}, {"sigma", spec2.sigma}},
              ontic::xi_transformation(bct::reversible<S>(pair_shape, spec2)).is_permutation(rec.tol()));
  });
  return report;
}

// ---------------------------------------------------------------------------
// atomicity

/// ν conjugation of an atomic term on the fused systems, which must give the
/// atomic term with the same labels on the composite systems.
template <class S>
bct::TransformationTensor<S> atomic_via_fusion(const SystemShape& in, const SystemShape& out, Label i0, Label l,
                                               Bit tau) {
  const auto fuse_in = bct::fuse_chain<S>(in);
  const auto fuse_out = bct::fuse_chain<S>(out);
  bct::TransformationTensor<S> single(fuse_in.out_shape(), fuse_out.out_shape());
  single.add(i0, l, tau, S(1));
  // fuse_chain is a relabelling with τ = 0, so its inverse is its transpose.
  bct::TransformationTensor<S> unfuse_out(fuse_out.out_shape(), out);
  for (const auto& [k, w] : fuse_out.coeffs()) unfuse_out.add(k.out, k.in, k.tau, w);
  return bct::compose_seq(bct::compose_seq(fuse_in, single), unfuse_out);
}

template <class S>
Report suite_atomicity(const Config& cfg) {
  Report report{"atomicity", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    const auto cap = capped(cfg, 3);
    // μ pinned against ξ(ν).
    for (std::uint32_t n = 2; n <= cap; ++n) {
      for (std::uint32_t m = 2; m <= cap; ++m) {
        const SystemShape a{n}, b{m};
        const json detail = {{"n", n}, {"m", m}};
        const auto mu = ontic::mu<S>(a, b);
        const auto x_nu = ontic::xi_transformation(bct::nu<S>(a, b));
        rec.maps("mu-equals-xi-nu", detail, x_nu, mu);
        rec.holds("mu-permutation", detail, mu.is_permutation(0.0));
        rec.maps("mu-inverse", detail, classical::compose_seq(mu, ontic::mu_inv<S>(a, b)),
                 classical::ClassicalMap<S>::identity(mu.in_dim()));
        const auto ab = concat(a, b);
        for (Label q = 1; q <= ab.dim(); ++q) {
          const auto rho = bct::pure_state<S>(ab, q);
          rec.maps("mu-on-pure-states", json{{"n", n}, {"m", m}, {"q", q}},
                   ontic::xi_state(bct::apply(bct::nu<S>(a, b), rho)),
                   classical::compose_seq(ontic::xi_state(rho), mu));
        }
      }
    }
    // Composite atomicity law, bipartite in/out with dims 2, ancilla 2..3.
    const std::vector<SystemShape> sides = {SystemShape{2}, SystemShape{2, 2}};
    for (const auto& in : sides) {
      for (const auto& out : sides) {
        for (Label i0 = 1; i0 <= in.dim(); ++i0) {
          for (Label l = 1; l <= out.dim(); ++l) {
            for (Bit tau = 0; tau <= 1; ++tau) {
              bct::TransformationTensor<S> atom(in, out);
              atom.add(i0, l, tau, S(1));
              const json term = {{"in", shape_json(in)}, {"out", shape_json(out)}, {"i0", i0}, {"l", l}, {"tau", tau}};
              rec.tensors("atomic-via-fusion", term, atomic_via_fusion<S>(in, out, i0, l, tau), atom);
              for (std::uint32_t ne = 2; ne <= capped(cfg, 3); ++ne) {
                const SystemShape e{ne};
                const auto lifted = bct::par_with_identity(atom, e);
                const auto x_lifted = ontic::xi_transformation(lifted);
                const auto x_lifted_product =
                    classical::compose_par(ontic::xi_transformation(atom), classical::ClassicalMap<S>::identity(2 * ne));
                rec.maps("atomic-with-ancilla-ontic", term, x_lifted, x_lifted_product);
                for (Label i = 1; i <= in.dim(); ++i) {
                  for (Label j = 1; j <= ne; ++j) {
                    for (Bit s = 0; s <= 1; ++s) {
                      const auto rho = bct::pure_state<S>(lifted.in_shape(), join_label(in, e, i, j, s));
                      std::vector<S> expected(lifted.out_shape().dim(), S(0));
                      if (i == i0) expected[join_label(out, e, l, j, static_cast<Bit>(s ^ tau)) - 1] = S(1);
                      const json witness = {{"term", term}, {"ancilla", ne}, {"i", i}, {"j", j}, {"s", s}};
                      rec.weights("atomic-law", witness, bct::apply(lifted, rho).weights, expected);
                      rec.maps("atomic-law-ontic", witness,
                               classical::compose_seq(ontic::xi_state(rho), x_lifted),
                               ontic::xi_state(bct::BctState<S>(lifted.out_shape(), expected)));
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  });
  run_trials(cfg, "atomicity", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    // The ν chain of a random shape is imaged onto the μ-chain relabelling.
    const std::size_t parts = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<std::uint32_t> elems;
    for (std::size_t k = 0; k < parts; ++k) elems.push_back(rng::random_elem(rng, parts == 3 ? 2 : capped(cfg, 3)));
    const SystemShape shape(elems);
    const auto space = ontic::xi_system(shape);
    classical::ClassicalMap<S> relabel(space.dim, space.dim);
    for (std::size_t o = 0; o < space.dim; ++o) {
      auto [x, c] = ontic::fuse(shape, o);
      relabel.at(ontic::fused_index(x, c), o) = S(1);
    }
    rec.maps("nu-chain-image", json{{"shape", shape_json(shape)}},
             ontic::xi_transformation(bct::fuse_chain<S>(shape)), relabel);

    // Random atomic term on random small shapes against ν conjugation.
    const auto in = rng::random_shape(rng, capped(cfg, 3), 50);
    const auto out = rng::random_shape(rng, capped(cfg, 3), 50);
    const Label i0 = static_cast<Label>(rng.uniform(1, static_cast<std::int64_t>(in.dim())));
    const Label l = static_cast<Label>(rng.uniform(1, static_cast<std::int64_t>(out.dim())));
    const Bit tau = rng.bit();
    bct::TransformationTensor<S> atom(in, out);
    atom.add(i0, l, tau, S(1));
    rec.tensors("atomic-via-fusion", json{{"in", shape_json(in)}, {"out", shape_json(out)}, {"i0", i0}, {"l", l}},
                atomic_via_fusion<S>(in, out, i0, l, tau), atom);
  });
  return report;
}

// ---------------------------------------------------------------------------
// swap

template <class S>
Report suite_swap(const Config& cfg) {
  Report report{"swap", cfg.seed, cfg.trials};
  run_exhaustive(cfg, report, [&](Recorder& rec) {
    const auto cap = capped(cfg, 3);
    for (std::uint32_t n = 2; n <= cap; ++n) {
      for (std::uint32_t m = 2; m <= cap; ++m) {
        const SystemShape a{n}, b{m};
        const auto sw = swap_under_test<S>(a, b, cfg);
        const json pair_detail = {{"n", n}, {"m", m}};
        rec.maps("swap-image", pair_detail, ontic::xi_transformation(sw), ontic::ontic_swap<S>(a, b));
        rec.tensors("swap-involution", pair_detail, bct::compose_seq(sw, swap_under_test<S>(b, a, cfg)),
                    bct::identity<S>(concat(a, b)));
        for (std::uint32_t k = 2; k <= cap; ++k) {
          const SystemShape e{k};
          // ((ij)_s k)_t  ->  ((ji)_s k)_{s⊕t}
          const auto lifted = bct::par_with_identity(sw, e);
          for (Label i = 1; i <= n; ++i) {
            for (Label j = 1; j <= m; ++j) {
              for (Label x = 1; x <= k; ++x) {
                for (Bit s = 0; s <= 1; ++s) {
                  for (Bit t = 0; t <= 1; ++t) {
                    const Label q = flatten_label(concat(concat(a, b), e), PureLabel{{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(x)}, {s, t}});
                    const Label q2 = flatten_label(concat(concat(b, a), e), PureLabel{{static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(x)}, {s, static_cast<Bit>(s ^ t)}});
                    rec.weights("swap-defining-relation",
                                json{{"dims", {n, m, k}}, {"ijk", {i, j, x}}, {"st", {s, t}}},
                                bct::apply(lifted, bct::pure_state<S>(lifted.in_shape(), q)).weights,
                                bct::pure_state<S>(lifted.out_shape(), q2).weights);
                  }
                }
              }
            }
          }
          // Hexagon: swap_{A,B⊠C} = (swap_{A,B} ⊠ id_C) then (id_B ⊠ swap_{A,C}).
          const auto hex = bct::compose_seq(bct::par_with_identity(sw, e),
                                            bct::identity_par(b, swap_under_test<S>(a, e, cfg)));
          rec.tensors("swap-hexagon", json{{"dims", {n, m, k}}}, swap_under_test<S>(a, concat(b, e), cfg), hex);
        }
      }
    }
  });
  run_trials(cfg, "swap", report, [&](rng::Rng& rng, Recorder& rec, std::size_t) {
    const SystemShape a{rng::random_elem(rng, capped(cfg, 3))}, a2{rng::random_elem(rng, capped(cfg, 3))};
    const SystemShape b{rng::random_elem(rng, capped(cfg, 3))}, b2{rng::random_elem(rng, capped(cfg, 3))};
    const auto t1 = rng::random_tensor<S>(rng, a, a2, false);
    const auto t2 = rng::random_tensor<S>(rng, b, b2, false);
    const json detail = {{"t1", {shape_json(a), shape_json(a2)}}, {"t2", {shape_json(b), shape_json(b2)}}};
    rec.tensors("swap-naturality", detail,
                bct::compose_seq(swap_under_test<S>(a, b, cfg), bct::compose_par(t2, t1)),
                bct::compose_seq(bct::compose_par(t1, t2), swap_under_test<S>(a2, b2, cfg)));
  });
  return report;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"codec",       "linearity", "diagram", "probability",
                                                 "determinacy", "atomicity", "swap"};
  return names;
}

template <class S>
Report run_suite(const std::string& name, const Config& cfg) {
  if (name == "codec") return suite_codec<S>(cfg);
  if (name == "linearity") return suite_linearity<S>(cfg);
  if (name == "diagram") return suite_diagram<S>(cfg);
  if (name == "probability") return suite_probability<S>(cfg);
  if (name == "determinacy") return suite_determinacy<S>(cfg);
  if (name == "atomicity") return suite_atomicity<S>(cfg);
  if (name == "swap") return suite_swap<S>(cfg);
  if (name == "all") {
    Report all{"all", cfg.seed, cfg.trials};
    for (const auto& n : suite_names()) {
      all.parts.push_back(run_suite<S>(n, cfg));
      all.absorb(all.parts.back());
    }
    return all;
  }
  throw Error("unknown suite '" + name + "'");
}

inline Report run(const std::string& name, const Config& cfg) {
  if (cfg.max_dim < 2) throw Error("max-dim must be at least 2");
  return cfg.backend == Backend::rational ? run_suite<Rational>(name, cfg) : run_suite<double>(name, cfg);
}

}  // namespace bctk::verify
