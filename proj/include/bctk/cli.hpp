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

// The bctk command line. JSON goes to `out`, diagnostics to `err`.
//
// Exit codes:
//   0  success
//   1  usage, parse, type or I/O error
//   2  the two circuit backends disagree
//   3  a verification suite recorded failures
//   4  an LCT candidate survived the falsifier

#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bctk/dsl/check.hpp"
#include "bctk/dsl/eval.hpp"
#include "bctk/lct.hpp"
#include "bctk/verify.hpp"

namespace bctk::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kBackendDisagreement = 2,
  kVerificationFailure = 3,
  kNoViolation = 4,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline dsl::CheckedProgram load_program(const std::string& path, std::ostream& err) {
  try {
    return dsl::parse_and_check(read_file(path));
  } catch (const dsl::ParseError& e) {
    for (const auto& d : e.diagnostics()) err << path << ":" << d.to_string() << "\n";
    throw;
  }
}

template <class S>
std::vector<S> parse_csv(const std::string& text) {
  std::vector<S> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_fraction<S>(item));
  return out;
}

template <class S>
json table_json(const std::vector<std::vector<S>>& table) {
  json rows = json::array();
  for (const auto& row : table) {
    json r = json::array();
    for (const auto& x : row) r.push_back(ScalarTraits<S>::to_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

struct EvalArgs {
  std::string file;
  std::string name;
  std::string backend = "rational";
  double tol = kDefaultTolerance;
};

template <class S>
int eval_with(const dsl::CheckedProgram& prog, const EvalArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (!args.name.empty()) {
    names.push_back(args.name);
  } else {
    names = prog.evals;
    if (names.empty()) throw Error("no eval directive and no --name");
  }
  json results = json::array();
  bool agree = true;
  for (const auto& n : names) {
    const auto r = dsl::evaluate<S>(prog, n, args.tol);
    if (!r.agree) err << "backends disagree on '" << n << "' (max deviation " << r.max_abs_dev << ")\n";
    agree = agree && r.agree;
    results.push_back(r.to_json());
  }
  out << (args.name.empty() ? results : results.front()).dump(2) << "\n";
  return agree ? kOk : kBackendDisagreement;
}

inline int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const auto prog = load_program(args.file, err);
  return args.backend == "float" ? eval_with<double>(prog, args, out, err) : eval_with<Rational>(prog, args, out, err);
}

inline int cmd_embed(const std::string& file, const std::string& gate, std::ostream& out, std::ostream& err) {
  const auto prog = load_program(file, err);
  out << dsl::embed<Rational>(prog, gate).dump(2) << "\n";
  return kOk;
}

struct VerifyArgs {
  verify::Config cfg;
  std::string suite = "all";
  std::string backend = "rational";
  std::string report_path;
  std::string inject = "none";
};

inline int cmd_verify(VerifyArgs args, std::ostream& out, std::ostream& err) {
  args.cfg.backend = args.backend == "float" ? verify::Backend::floating : verify::Backend::rational;
  args.cfg.fault = args.inject == "corrupt-swap" ? verify::Fault::corrupt_swap : verify::Fault::none;
  const auto report = verify::run(args.suite, args.cfg);
  const auto text = report.to_json().dump(2) + "\n";
  out << text;
  if (!args.report_path.empty()) {
    std::ofstream file(args.report_path, std::ios::binary);
    if (!file) throw Error("cannot write '" + args.report_path + "'");
    file << text;
  }
  if (!report.ok()) {
    err << "suite '" << args.suite << "': " << report.failure_count << " failure(s)\n";
    return kVerificationFailure;
  }
  return kOk;
}

struct LctArgs {
  std::uint32_t d1 = 2, d2 = 2, dl = 2;
  std::string kappa = "1,0";
  std::string model;
  std::size_t random = 0;
  std::string candidate = "builtin:bct-style";
  std::uint64_t seed = 0;
};

inline lct::LctInstance<Rational> lct_instance(const LctArgs& args) {
  return lct::make_instance<Rational>(args.d1, args.d2, args.dl, parse_csv<Rational>(args.kappa));
}

inline json instance_json(const lct::LctInstance<Rational>& inst) {
  return {{"d1", inst.d1},
          {"d2", inst.d2},
          {"dl", inst.dl},
          {"kappa", lct::detail::vector_json(inst.kappa)},
          {"kappa_perp", lct::detail::vector_json(inst.kappa_perp)},
          {"kappa_bar", lct::detail::vector_json(inst.kappa_bar)}};
}

inline int cmd_lct_demo(const LctArgs& args, std::ostream& out) {
  const auto inst = lct_instance(args);
  const auto table = lct::annihilation_table(inst);
  bool all_zero = true;
  for (const auto& row : table) {
    for (const auto& x : row) all_zero = all_zero && sgn(x) == 0;
  }
  const json j = {{"instance", instance_json(inst)},
                  {"annihilation_table", table_json(table)},
                  {"annihilates_products", all_zero},
                  {"pairing_value", ScalarTraits<Rational>::to_json(lct::pairing_value(inst, lct::default_beta(inst)))}};
  out << j.dump(2) << "\n";
  return kOk;
}

inline int cmd_lct_refute(const LctArgs& args, std::ostream& out, std::ostream& err) {
  const auto inst = lct_instance(args);
  const Rational pairing = lct::pairing_value(inst, lct::default_beta(inst));
  if (args.random > 0) {
    std::size_t violated = 0;
    bool trace_identity = true;
    json survivors = json::array();
    for (std::size_t k = 0; k < args.random; ++k) {
      rng::Rng rng(args.seed, "lct", k);
      const auto c = lct::random_candidate<Rational>(rng, pairing);
      const auto cert = lct::falsify(c);
      trace_identity = trace_identity && cert.trace_identity;
      if (!cert.empty()) {
        ++violated;
      } else if (survivors.size() < 10) {
        survivors.push_back({{"trial", k}, {"candidate", lct::to_json(c)}});
      }
    }
    const json j = {{"candidates", args.random},
                    {"seed", args.seed},
                    {"violated", violated},
                    {"trace_identity", trace_identity},
                    {"survivors", survivors}};
    out << j.dump(2) << "\n";
    if (violated != args.random) {
      err << args.random - violated << " candidate(s) produced no violation\n";
      return kNoViolation;
    }
    return kOk;
  }

  lct::CandidateModel<Rational> c;
  std::string source;
  if (!args.model.empty()) {
    source = args.model;
    json j;
    try {
      j = json::parse(read_file(args.model));
    } catch (const json::exception& e) {
      throw Error(args.model + ": " + e.what());
    }
    c = lct::candidate_from_json(j, pairing);
  } else if (args.candidate == "builtin:bct-style") {
    source = args.candidate;
    c = lct::bct_style_candidate(inst);
  } else if (args.candidate == "builtin:fabricated") {
    source = args.candidate;
    c = lct::fabricated_candidate<Rational>();
  } else {
    throw Error("unknown candidate '" + args.candidate + "'");
  }
  const auto cert = lct::falsify(c);
  json j = cert.to_json();
  j["candidate"] = source;
  out << j.dump(2) << "\n";
  if (cert.empty()) {
    err << "candidate '" << source << "' produced no violation\n";
    return kNoViolation;
  }
  return kOk;
}

}  // namespace detail

/// Entry point of the bctk binary.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bctk: bilocal classical theory toolkit"};
  app.require_subcommand(1);

  detail::EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a circuit under both backends");
  eval->add_option("file", eval_args.file, "Circuit source")->required();
  eval->add_option("--name", eval_args.name, "Circuit to evaluate (default: every eval directive)");
  eval->add_option("--backend", eval_args.backend)->check(CLI::IsMember({"rational", "float"}));
  eval->add_option("--tol", eval_args.tol, "Tolerance of the float backend")->check(CLI::NonNegativeNumber);

  detail::VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run consistency suites");
  std::vector<std::string> suites = verify::suite_names();
  suites.push_back("all");
  verify->add_option("--suite", verify_args.suite)->check(CLI::IsMember(suites));
  verify->add_option("--seed", verify_args.cfg.seed);
  verify->add_option("--trials", verify_args.cfg.trials);
  verify->add_option("--max-dim", verify_args.cfg.max_dim);
  verify->add_option("--backend", verify_args.backend)->check(CLI::IsMember({"rational", "float"}));
  verify->add_option("--tol", verify_args.cfg.tol, "Tolerance of the float backend")->check(CLI::NonNegativeNumber);
  verify->add_option("--threads", verify_args.cfg.threads, "Worker threads (0: all cores)");
  verify->add_option("--report", verify_args.report_path, "Also write the report here");
  verify->add_option("--inject", verify_args.inject)->check(CLI::IsMember({"none", "corrupt-swap"}))->group("");

  std::string embed_file, embed_gate;
  auto* embed = app.add_subcommand("embed", "Print the classical image of a gate");
  embed->add_option("file", embed_file, "Circuit source")->required();
  embed->add_option("--gate", embed_gate)->required();

  detail::LctArgs lct_args;
  auto* lct = app.add_subcommand("lct", "Latent classical theory demo and falsifier");
  lct->require_subcommand(1);
  auto* demo = lct->add_subcommand("demo", "Annihilation table and pairing value");
  auto* refute = lct->add_subcommand("refute", "Look for axiom violations of a candidate model");
  for (auto* sub : {demo, refute}) {
    sub->add_option("--d1", lct_args.d1);
    sub->add_option("--d2", lct_args.d2);
    sub->add_option("--dl", lct_args.dl);
    sub->add_option("--kappa", lct_args.kappa, "Latent state, comma separated");
  }
  auto* model = refute->add_option("--model", lct_args.model, "Candidate JSON file");
  auto* random = refute->add_option("--random", lct_args.random, "Number of random candidates");
  auto* candidate = refute->add_option("--candidate", lct_args.candidate)
                        ->check(CLI::IsMember({"builtin:bct-style", "builtin:fabricated"}));
  model->excludes(random)->excludes(candidate);
  random->excludes(candidate);
  refute->add_option("--seed", lct_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*eval) return detail::cmd_eval(eval_args, out, err);
    if (*verify) return detail::cmd_verify(verify_args, out, err);
    if (*embed) return detail::cmd_embed(embed_file, embed_gate, out, err);
    if (*demo) return detail::cmd_lct_demo(lct_args, out);
    return detail::cmd_lct_refute(lct_args, out, err);
  } catch (const dsl::ParseError&) {
    return kInputError;  // diagnostics were already printed with the file name
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace bctk::cli
