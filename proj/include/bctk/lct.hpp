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

// Bipartite latent classical systems and a falsifier for candidate
// ontological models of them.
//
// The composite of C₁ (dim d₁) and C₂ (dim d₂) is L ⊗ C₁ ⊗ C₂, indexed
// latent-outer, and products of states carry the latent state κ:
// σ ⊠ τ = κ ⊗ σ ⊗ τ. When κ has a zero entry, b = κ⊥ ⊗ Tr ⊗ Tr kills every
// product state but not β = κ̄ ⊗ ρ₁ ⊗ ρ₂.
//
// A candidate model supplies the images ξβ and ξb on Λ₁ ⊗ Λ₂. Closing the
// C₂ wire of the jellyfish map M[y,x] = Σ_a ξβ[a,y]·ξb[a,x] with the Choi pair
// gives tr M = ξb·ξβ. A faithful model would need M = 0 and ξb·ξβ = (b|β) ≠ 0
// at once, so every candidate breaks at least one of the two.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bctk/classical.hpp"
#include "bctk/random.hpp"
#include "bctk/scalar.hpp"

namespace bctk::lct {

using nlohmann::json;

template <class S>
struct LctInstance {
  std::uint32_t d1 = 2;
  std::uint32_t d2 = 2;
  std::uint32_t dl = 2;
  std::vector<S> kappa;
  std::vector<S> kappa_perp;
  std::vector<S> kappa_bar;

  std::size_t composite_dim() const { return static_cast<std::size_t>(dl) * d1 * d2; }
};

/// κ⊥ and κ̄ sit on the first zero entry of κ.
template <class S>
LctInstance<S> make_instance(std::uint32_t d1, std::uint32_t d2, std::uint32_t dl, std::vector<S> kappa) {
  if (d1 < 2 || d2 < 2 || dl < 2) throw Error("latent instance dimensions must be at least 2");
  if (kappa.size() != dl) throw DimensionError("latent state must have " + std::to_string(dl) + " entries");
  S total(0);
  std::optional<std::size_t> zero;
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    if (ScalarTraits<S>::is_negative(kappa[k], 0.0)) throw Error("latent state entries must be nonnegative");
    if (!zero && ScalarTraits<S>::is_zero(kappa[k], 0.0)) zero = k;
    total += kappa[k];
  }
  if (!ScalarTraits<S>::equal(total, S(1), kDefaultTolerance)) throw Error("latent state must be normalised");
  if (!zero) throw Error("latent state is full-rank; the annihilating effect needs a zero entry");
  LctInstance<S> inst{d1, d2, dl, std::move(kappa), std::vector<S>(dl, S(0)), std::vector<S>(dl, S(0))};
  inst.kappa_perp[*zero] = S(1);
  inst.kappa_bar[*zero] = S(1);
  return inst;
}

template <class S>
LctInstance<S> default_instance() {
  return make_instance<S>(2, 2, 2, {S(1), S(0)});
}

/// Composite vector l ⊗ x ⊗ y, latent outer.
template <class S>
std::vector<S> composite(const std::vector<S>& l, const std::vector<S>& x, const std::vector<S>& y) {
  std::vector<S> out;
  out.reserve(l.size() * x.size() * y.size());
  for (const auto& a : l) {
    for (const auto& b : x) {
      for (const auto& c : y) out.push_back(a * b * c);
    }
  }
  return out;
}

template <class S>
std::vector<S> uniform(std::size_t n) {
  return std::vector<S>(n, scalar<S>(1, static_cast<std::int64_t>(n)));
}

template <class S>
std::vector<S> point(std::size_t n, std::size_t k) {
  std::vector<S> v(n, S(0));
  v.at(k) = S(1);
  return v;
}

/// σ ⊠ τ = κ ⊗ σ ⊗ τ.
template <class S>
std::vector<S> product_state(const LctInstance<S>& inst, const std::vector<S>& sigma, const std::vector<S>& tau) {
  if (sigma.size() != inst.d1 || tau.size() != inst.d2) throw DimensionError("product state factors have wrong size");
  return composite(inst.kappa, sigma, tau);
}

/// b = κ⊥ ⊗ Tr ⊗ Tr.
template <class S>
std::vector<S> annihilator(const LctInstance<S>& inst) {
  return composite(inst.kappa_perp, std::vector<S>(inst.d1, S(1)), std::vector<S>(inst.d2, S(1)));
}

/// β = κ̄ ⊗ uniform ⊗ uniform.
template <class S>
std::vector<S> default_beta(const LctInstance<S>& inst) {
  return composite(inst.kappa_bar, uniform<S>(inst.d1), uniform<S>(inst.d2));
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.size() != b.size()) throw DimensionError("covector and vector sizes differ");
  S total(0);
  for (std::size_t k = 0; k < a.size(); ++k) total += a[k] * b[k];
  return total;
}

template <class S>
S pairing_value(const LctInstance<S>& inst, const std::vector<S>& beta) {
  if (beta.size() != inst.composite_dim()) throw DimensionError("composite state has wrong size");
  return dot(annihilator(inst), beta);
}

/// b applied to κ ⊗ |i⟩ ⊗ |j⟩ for every pure pair, as a d₁ × d₂ table.
template <class S>
std::vector<std::vector<S>> annihilation_table(const LctInstance<S>& inst) {
  const auto b = annihilator(inst);
  std::vector<std::vector<S>> table(inst.d1, std::vector<S>(inst.d2));
  for (std::size_t i = 0; i < inst.d1; ++i) {
    for (std::size_t j = 0; j < inst.d2; ++j) {
      table[i][j] = dot(b, product_state(inst, point<S>(inst.d1, i), point<S>(inst.d2, j)));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Candidate models

template <class S>
struct CandidateModel {
  std::size_t l1 = 1;
  std::size_t l2 = 1;
  std::vector<S> xi_beta;         // over Λ₁·Λ₂, Λ₁ outer
  std::vector<S> xi_b;            // over Λ₁·Λ₂
  S theory_pairing = S(0);        // the declared (b|β)
  std::vector<std::vector<S>> xi_sigma;  // optional images of pure states of C₁, over Λ₁
  std::vector<std::vector<S>> xi_tau;    // optional images of pure states of C₂, over Λ₂

  void validate(double tol = kDefaultTolerance) const {
    const std::size_t n = l1 * l2;
    if (l1 == 0 || l2 == 0) throw DimensionError("ontic dimensions must be positive");
    if (xi_beta.size() != n || xi_b.size() != n) {
      throw DimensionError("candidate images must have L1*L2 = " + std::to_string(n) + " entries");
    }
    S total(0);
    for (const auto& x : xi_beta) {
      if (ScalarTraits<S>::is_negative(x, tol)) throw Error("xi_beta must be nonnegative");
      total += x;
    }
    if (ScalarTraits<S>::is_negative(S(1) - total, tol)) throw Error("xi_beta must be subnormalised");
    for (const auto& x : xi_b) {
      if (ScalarTraits<S>::is_negative(x, tol) || ScalarTraits<S>::is_negative(S(1) - x, tol)) {
        throw Error("xi_b entries must lie in [0,1]");
      }
    }
    for (const auto& v : xi_sigma) {
      if (v.size() != l1) throw DimensionError("xi_sigma images must have L1 entries");
    }
    for (const auto& v : xi_tau) {
      if (v.size() != l2) throw DimensionError("xi_tau images must have L2 entries");
    }
  }
};

namespace detail {

template <class S>
json vector_json(const std::vector<S>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(ScalarTraits<S>::to_json(x));
  return out;
}

template <class S>
std::vector<S> vector_from_json(const json& j) {
  std::vector<S> out;
  for (const auto& x : j) out.push_back(ScalarTraits<S>::from_json(x));
  return out;
}

}  // namespace detail

template <class S>
json to_json(const CandidateModel<S>& c) {
  json j = {{"L1", c.l1},
            {"L2", c.l2},
            {"xi_beta", detail::vector_json(c.xi_beta)},
            {"xi_b", detail::vector_json(c.xi_b)},
            {"theory_pairing", ScalarTraits<S>::to_json(c.theory_pairing)}};
  if (!c.xi_sigma.empty()) {
    j["xi_sigma"] = json::array();
    for (const auto& v : c.xi_sigma) j["xi_sigma"].push_back(detail::vector_json(v));
  }
  if (!c.xi_tau.empty()) {
    j["xi_tau"] = json::array();
    for (const auto& v : c.xi_tau) j["xi_tau"].push_back(detail::vector_json(v));
  }
  return j;
}

/// A missing "theory_pairing" defaults to `fallback_pairing`.
template <class S>
CandidateModel<S> candidate_from_json(const json& j, const S& fallback_pairing) {
  CandidateModel<S> c;
  c.l1 = j.at("L1").get<std::size_t>();
  c.l2 = j.at("L2").get<std::size_t>();
  c.xi_beta = detail::vector_from_json<S>(j.at("xi_beta"));
  c.xi_b = detail::vector_from_json<S>(j.at("xi_b"));
  c.theory_pairing = j.contains("theory_pairing") ? ScalarTraits<S>::from_json(j["theory_pairing"]) : fallback_pairing;
  if (j.contains("xi_sigma")) {
    for (const auto& v : j["xi_sigma"]) c.xi_sigma.push_back(detail::vector_from_json<S>(v));
  }
  if (j.contains("xi_tau")) {
    for (const auto& v : j["xi_tau"]) c.xi_tau.push_back(detail::vector_from_json<S>(v));
  }
  c.validate();
  return c;
}

/// The C₂ -> C₂ jellyfish image M[y,x] = Σ_a ξβ[a,y]·ξb[a,x].
template <class S>
classical::ClassicalMap<S> jellyfish_matrix(const CandidateModel<S>& c) {
  if (c.xi_beta.size() != c.l1 * c.l2 || c.xi_b.size() != c.l1 * c.l2) {
    throw DimensionError("candidate images do not match L1*L2");
  }
  classical::ClassicalMap<S> m(c.l2, c.l2);
  for (std::size_t a = 0; a < c.l1; ++a) {
    for (std::size_t y = 0; y < c.l2; ++y) {
      const S& beta = c.xi_beta[a * c.l2 + y];
      if (ScalarTraits<S>::is_zero(beta, 0.0)) continue;
      for (std::size_t x = 0; x < c.l2; ++x) m.at(y, x) += beta * c.xi_b[a * c.l2 + x];
    }
  }
  return m;
}

struct Violation {
  std::string axiom;  // jellyfish-nullity | probability-preservation | product-annihilation
  json witness;
  json lhs;
  json rhs;
};

template <class S>
struct ViolationCertificate {
  std::vector<Violation> violations;
  S trace = S(0);           // choi_close(M)
  S model_pairing = S(0);   // ξb·ξβ
  S theory_pairing = S(0);  // declared (b|β)
  bool trace_identity = true;

  bool empty() const { return violations.empty(); }

  json to_json() const {
    json vs = json::array();
    for (const auto& v : violations) {
      vs.push_back({{"axiom", v.axiom}, {"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    }
    return {{"violations", std::move(vs)},
            {"nonempty", !violations.empty()},
            {"trace_identity",
             {{"choi_close", ScalarTraits<S>::to_json(trace)},
              {"model_pairing", ScalarTraits<S>::to_json(model_pairing)},
              {"holds", trace_identity}}},
            {"theory_pairing", ScalarTraits<S>::to_json(theory_pairing)}};
  }
};

/// Lists every axiom the candidate breaks. An empty certificate contradicts
/// the no-go result and is treated by callers as a fatal inconsistency.
template <class S>
ViolationCertificate<S> falsify(const CandidateModel<S>& c, double tol = 0.0) {
  c.validate(tol > 0.0 ? tol : kDefaultTolerance);
  if (tol <= 0.0 && !ScalarTraits<S>::exact) tol = kDefaultTolerance;
  ViolationCertificate<S> cert;
  const auto m = jellyfish_matrix(c);
  cert.trace = classical::choi_close(m);
  cert.model_pairing = dot(c.xi_b, c.xi_beta);
  cert.theory_pairing = c.theory_pairing;
  cert.trace_identity = ScalarTraits<S>::equal(cert.trace, cert.model_pairing, tol);

  // Product states must be killed by the image of b.
  for (std::size_t i = 0; i < c.xi_sigma.size(); ++i) {
    for (std::size_t j = 0; j < c.xi_tau.size(); ++j) {
      S value(0);
      for (std::size_t a = 0; a < c.l1; ++a) {
        for (std::size_t y = 0; y < c.l2; ++y) value += c.xi_b[a * c.l2 + y] * c.xi_sigma[i][a] * c.xi_tau[j][y];
      }
      if (!ScalarTraits<S>::is_zero(value, tol)) {
        cert.violations.push_back(
            {"product-annihilation", json{{"sigma", i + 1}, {"tau", j + 1}}, ScalarTraits<S>::to_json(value), 0});
      }
    }
  }
  if (!ScalarTraits<S>::equal(cert.model_pairing, cert.theory_pairing, tol)) {
    cert.violations.push_back({"probability-preservation", json{{"quantity", "xi_b . xi_beta"}},
                               ScalarTraits<S>::to_json(cert.model_pairing),
                               ScalarTraits<S>::to_json(cert.theory_pairing)});
  }
  for (std::size_t y = 0; y < c.l2; ++y) {
    bool found = false;
    for (std::size_t x = 0; x < c.l2; ++x) {
      if (ScalarTraits<S>::is_zero(m.at(y, x), tol)) continue;
      cert.violations.push_back({"jellyfish-nullity", json{{"entry", {y, x}}}, ScalarTraits<S>::to_json(m.at(y, x)), 0});
      found = true;
      break;
    }
    if (found) break;
  }
  return cert;
}

/// Parity-bit construction transplanted from the bilocal model: every
/// classical wire gets a hidden bit, the latent factor rides along with C₁,
/// β's two bits are perfectly correlated and b ignores the bits.
/// Λ₁ = d_L·d₁·2, Λ₂ = d₂·2.
template <class S>
CandidateModel<S> bct_style_candidate(const LctInstance<S>& inst) {
  CandidateModel<S> c;
  c.l1 = static_cast<std::size_t>(inst.dl) * inst.d1 * 2;
  c.l2 = static_cast<std::size_t>(inst.d2) * 2;
  c.xi_beta.assign(c.l1 * c.l2, S(0));
  c.xi_b.assign(c.l1 * c.l2, S(0));
  const auto rho1 = uniform<S>(inst.d1);
  const auto rho2 = uniform<S>(inst.d2);
  const S half = scalar<S>(1, 2);
  for (std::size_t l = 0; l < inst.dl; ++l) {
    for (std::size_t i = 0; i < inst.d1; ++i) {
      for (std::size_t b1 = 0; b1 < 2; ++b1) {
        const std::size_t a = (l * inst.d1 + i) * 2 + b1;
        for (std::size_t j = 0; j < inst.d2; ++j) {
          for (std::size_t b2 = 0; b2 < 2; ++b2) {
            const std::size_t y = j * 2 + b2;
            c.xi_b[a * c.l2 + y] = inst.kappa_perp[l];
            if (b1 == b2) c.xi_beta[a * c.l2 + y] = half * inst.kappa_bar[l] * rho1[i] * rho2[j];
          }
        }
      }
    }
  }
  // Pure states: κ ⊗ |i⟩ ⊗ ½(|0⟩+|1⟩) on Λ₁ and |j⟩ ⊗ ½(|0⟩+|1⟩) on Λ₂.
  for (std::size_t i = 0; i < inst.d1; ++i) {
    std::vector<S> v(c.l1, S(0));
    for (std::size_t l = 0; l < inst.dl; ++l) {
      for (std::size_t b = 0; b < 2; ++b) v[(l * inst.d1 + i) * 2 + b] = half * inst.kappa[l];
    }
    c.xi_sigma.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < inst.d2; ++j) {
    std::vector<S> v(c.l2, S(0));
    for (std::size_t b = 0; b < 2; ++b) v[j * 2 + b] = half;
    c.xi_tau.push_back(std::move(v));
  }
  c.theory_pairing = pairing_value(inst, default_beta(inst));
  return c;
}

/// A candidate that claims (b|β) = 0 and maps everything to zero. It breaks
/// nothing the falsifier can see, which only happens when the declared theory
/// value is false.
template <class S>
CandidateModel<S> fabricated_candidate() {
  CandidateModel<S> c;
  c.l1 = 2;
  c.l2 = 2;
  c.xi_beta.assign(4, S(0));
  c.xi_b.assign(4, S(0));
  c.theory_pairing = S(0);
  return c;
}

/// Random candidates from three families: generic, disjoint supports
/// (M = 0), and ξb = 1 on the support of ξβ (ξb·ξβ = 1).
template <class S>
CandidateModel<S> random_candidate(rng::Rng& rng, const S& theory_pairing) {
  CandidateModel<S> c;
  c.l1 = static_cast<std::size_t>(rng.uniform(1, 4));
  c.l2 = static_cast<std::size_t>(rng.uniform(1, 4));
  const std::size_t n = c.l1 * c.l2;
  auto counts = rng::random_counts(rng, n, 40);
  std::int64_t total = 0;
  for (auto x : counts) total += x;
  c.xi_beta.resize(n);
  for (std::size_t k = 0; k < n; ++k) c.xi_beta[k] = scalar<S>(counts[k], total);
  c.xi_b.resize(n);
  const auto family = rng.uniform(0, 2);
  for (std::size_t a = 0; a < c.l1; ++a) {
    for (std::size_t y = 0; y < c.l2; ++y) {
      const std::size_t k = a * c.l2 + y;
      if (family == 0) {
        c.xi_b[k] = rng::random_weight<S>(rng);
      } else if (family == 1) {
        // ξb lives on Λ₁ rows where ξβ vanishes.
        bool row_used = false;
        for (std::size_t z = 0; z < c.l2; ++z) row_used = row_used || counts[a * c.l2 + z] != 0;
        c.xi_b[k] = row_used ? S(0) : rng::random_weight<S>(rng);
      } else {
        c.xi_b[k] = counts[k] != 0 ? S(1) : rng::random_weight<S>(rng);
      }
    }
  }
  c.theory_pairing = theory_pairing;
  return c;
}

}  // namespace bctk::lct
