// qfock: batch front-end for the Q-function / Virasoro toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qfock/qfock.hpp"

namespace {

using qfock::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "json";
  std::string output;
  unsigned jobs = 1;
};

class Emitter {
 public:
  explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

  bool json() const { return cfg_.format == "json"; }

  void emit(const Json& j) { write(j.dump(2) + "\n"); }

  void write(const std::string& text) {
    if (cfg_.output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(cfg_.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + cfg_.output);
    out << text;
  }

 private:
  const RunConfig& cfg_;
};

qfock::StrictPartition parse_partition(const std::vector<int>& parts) {
  try {
    return qfock::StrictPartition(parts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("malformed partition: ") + e.what());
  }
}

std::string label_text(const std::vector<int>& parts) {
  std::ostringstream os;
  os << qfock::IndexSequence(parts);
  return os.str();
}

// ---- qfun ------------------------------------------------------------------

int cmd_qfun(const std::vector<int>& seq, Emitter& out) {
  for (int v : seq) {
    if (v < 0) throw UsageError("qfun: label entries must be non-negative");
  }
  const auto poly = qfock::Q_of_sequence(qfock::IndexSequence(seq));
  if (out.json()) {
    out.emit(Json{{"label", seq}, {"polynomial", qfock::io::to_json(poly)}});
  } else {
    out.write("Q" + label_text(seq) + " = " + qfock::to_text(poly) + "\n");
  }
  return kExitOk;
}

// ---- act -------------------------------------------------------------------

int cmd_act(int k, const std::vector<int>& parts, const std::string& method, Emitter& out) {
  const auto lambda = parse_partition(parts);
  const qfock::QExpansion basis{{lambda, 1}};
  const bool want_diff = method != "closed";
  const bool want_closed = method != "diff";
  qfock::QExpansion by_diff;
  qfock::QExpansion by_closed;
  if (want_diff) by_diff = qfock::expand_in_Q(qfock::act_diff(k, qfock::Q(lambda)));
  if (want_closed) by_closed = qfock::act_closed(k, basis);
  const bool agree = by_diff == by_closed;

  if (out.json()) {
    Json j{{"k", k}, {"partition", qfock::io::to_json(lambda)}, {"method", method}};
    if (want_diff) j["diff"] = qfock::io::to_json(by_diff);
    if (want_closed) j["closed"] = qfock::io::to_json(by_closed);
    if (want_diff && want_closed) j["agree"] = agree;
    out.emit(j);
  } else {
    std::ostringstream os;
    os << "L_" << k << " Q" << lambda << '\n';
    if (want_diff) os << "  diff:   " << by_diff << '\n';
    if (want_closed) os << "  closed: " << by_closed << '\n';
    if (want_diff && want_closed) os << "  agree:  " << (agree ? "true" : "false") << '\n';
    out.write(os.str());
  }
  return (want_diff && want_closed && !agree) ? kExitFailed : kExitOk;
}

// ---- matrix ----------------------------------------------------------------

int cmd_matrix(int k, int n, const RunConfig& cfg, Emitter& out) {
  if (n < 0) throw UsageError("matrix: degree must be non-negative");
  const auto m = qfock::matrix_of_L(k, n, cfg.jobs);
  if (out.json()) {
    out.emit(qfock::io::to_json(m));
    return kExitOk;
  }
  std::ostringstream os;
  os << "L_" << k << " : V(" << n << ") -> V(" << m.target_degree() << ")\n";
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    os << m.rows[i] << ':';
    for (const auto& v : m.entries[i]) os << ' ' << qfock::to_string(v);
    os << '\n';
  }
  out.write(os.str());
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct SuiteTally {
  std::string suite;
  std::size_t checks = 0;
  std::vector<std::string> failed;

  void record(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failed.push_back(what);
  }
};

struct VerifyBounds {
  int max_weight = 9;
  int n = 8;
  int kmax = 3;
  int mmax = 4;
  int ext_length = 4;
};

void run_identities(const VerifyBounds& b, SuiteTally& t) {
  for (int n = 0; n <= b.max_weight; ++n) {
    for (const auto& lambda : qfock::strict_partitions_of(n)) {
      std::ostringstream os;
      os << "quadratic " << lambda;
      t.record(qfock::check_quadratic_relation(lambda), os.str());
    }
  }
  std::vector<int> current;
  auto rec = [&](auto& self, int len, int budget) -> void {
    if (static_cast<int>(current.size()) == len) {
      const qfock::IndexSequence alpha(current);
      const bool odd = len % 2 == 1;
      for (int x = 0; x <= budget; ++x) {
        for (int y = 0; x + y <= budget; ++y) {
          for (int which = 1; which <= 4; ++which) {
            if ((which == 1 || which == 3) != odd) continue;
            if (which <= 2 && y > 0) continue;
            std::ostringstream os;
            os << "extension" << which << ' ' << alpha << " x=" << x << " y=" << y;
            t.record(qfock::check_extension_identity(which, alpha, x, y), os.str());
          }
        }
      }
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      current.push_back(v);
      self(self, len, budget - v);
      current.pop_back();
    }
  };
  for (int len = 1; len <= b.ext_length; ++len) rec(rec, len, b.max_weight);
  for (int m = 1; m <= b.mmax; ++m) t.record(qfock::check_odd_pair_sum(m), "odd-pair sum m=" + std::to_string(m));
}

void run_bracket(const VerifyBounds& b, unsigned jobs, SuiteTally& t) {
  for (int n = 0; n <= b.n; ++n) {
    for (int k = -b.kmax; k <= b.kmax; ++k) {
      for (int l = -b.kmax; l <= b.kmax; ++l) {
        t.record(qfock::check_virasoro_bracket(k, l, n, jobs),
                 "bracket k=" + std::to_string(k) + " l=" + std::to_string(l) + " n=" + std::to_string(n));
      }
    }
  }
}

void run_gram(const VerifyBounds& b, SuiteTally& t) {
  for (int n = 0; n <= b.n; ++n) {
    const auto basis = qfock::strict_partitions_of(n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        std::ostringstream os;
        os << "orthogonal " << basis[i] << ' ' << basis[j];
        t.record(qfock::inner_product(qfock::Q(basis[i]), qfock::Q(basis[j])) == 0, os.str());
      }
    }
    for (int k = 1; k <= b.kmax; ++k) {
      t.record(qfock::check_contravariance(k, n),
               "contravariance k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
  }
}

void run_even(const VerifyBounds& b, SuiteTally& t) {
  for (int n = 0; n <= b.n; ++n) t.record(qfock::check_even_invariance(n), "even n=" + std::to_string(n));
}

int cmd_verify(const std::string& suite, const VerifyBounds& bounds, const RunConfig& cfg, Emitter& out) {
  SuiteTally tally;
  tally.suite = suite;
  if (suite == "identities") {
    run_identities(bounds, tally);
  } else if (suite == "bracket") {
    run_bracket(bounds, cfg.jobs, tally);
  } else if (suite == "gram") {
    run_gram(bounds, tally);
  } else if (suite == "even") {
    run_even(bounds, tally);
  } else {
    throw UsageError("unknown suite: " + suite);
  }
  const bool ok = tally.failed.empty();
  if (out.json()) {
    out.emit(Json{{"suite", tally.suite},
                  {"checks", tally.checks},
                  {"failures", tally.failed.size()},
                  {"failed", tally.failed},
                  {"pass", ok}});
  } else {
    std::ostringstream os;
    os << tally.suite << ": " << tally.checks << " checks, " << tally.failed.size() << " failures\n";
    for (const auto& f : tally.failed) os << "  FAILED " << f << '\n';
    out.write(os.str());
  }
  return ok ? kExitOk : kExitFailed;
}

// ---- probe -----------------------------------------------------------------

std::vector<qfock::SolitonParam> parse_solitons(const std::string& list) {
  std::vector<qfock::SolitonParam> params;
  if (list == "none" || list.empty()) return params;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    qfock::SolitonParam p;
    try {
      const auto colon = item.find(':');
      p.p = qfock::parse_rational(item.substr(0, colon));
      if (colon != std::string::npos) p.c = qfock::parse_rational(item.substr(colon + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad soliton parameter '") + item + "': " + e.what());
    }
    params.push_back(p);
  }
  return params;
}

int cmd_probe(const std::string& list, int max_weight, int support, Emitter& out) {
  if (max_weight < 0) throw UsageError("probe: --max must be non-negative");
  if (support <= 0) support = std::max(1, max_weight % 2 == 0 ? max_weight - 1 : max_weight);
  const auto tau = qfock::kdv_tau(parse_solitons(list), support);
  const auto report = qfock::conjecture_probe(tau, max_weight);
  if (out.json()) {
    out.emit(qfock::io::to_json(report));
  } else {
    std::ostringstream os;
    for (const auto& r : report.records) {
      os << r.partition << (r.in_esp ? " even " : " odd  ") << (r.is_zero ? "zero" : "nonzero")
         << " terms=" << r.residual_terms << '\n';
    }
    os << "non-even nonzero: " << report.non_esp_nonzero() << '\n';
    if (report.non_esp_nonzero() > 0) os << qfock::kNormalizationNote << '\n';
    out.write(os.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur Q-functions and the reduced Fock representation of the Virasoro algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Optional TOML/INI file with the same keys as the flags");

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", cfg.output, "Write output to this file instead of stdout");
  app.add_option("-j,--jobs", cfg.jobs, "Worker threads for matrix assembly")->check(CLI::Range(1U, 256U));

  std::vector<int> qfun_label;
  auto* qfun = app.add_subcommand("qfun", "Print Q_label as a polynomial in t1, t3, ...");
  qfun->add_option("label", qfun_label, "Index sequence, e.g. 3 1")->required();

  int act_k = 0;
  std::vector<int> act_parts;
  std::string act_method = "diff";
  auto* act = app.add_subcommand("act", "Apply L_k to Q_lambda");
  act->add_option("k", act_k, "Virasoro index")->required();
  act->add_option("partition", act_parts, "Strict partition (may be empty)");
  act->add_option("--method", act_method, "diff, closed or both")->check(CLI::IsMember({"diff", "closed", "both"}));

  int mat_k = 0;
  int mat_n = 0;
  auto* matrix = app.add_subcommand("matrix", "Matrix of L_k on V(n) in the Q basis");
  matrix->add_option("k", mat_k, "Virasoro index")->required();
  matrix->add_option("n", mat_n, "Source degree")->required();

  VerifyBounds bounds;
  std::string suite;
  auto add_bounds = [&bounds](CLI::App* sub) {
    sub->add_option("--max", bounds.max_weight, "Weight bound for identity sweeps");
    sub->add_option("--n", bounds.n, "Degree bound");
    sub->add_option("--kmax", bounds.kmax, "Bound on |k|");
    sub->add_option("--mmax", bounds.mmax, "Bound on m for the t-t identity");
    sub->add_option("--ext-length", bounds.ext_length, "Longest alpha in the extension sweep");
  };
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "identities, bracket, gram or even")
      ->required()
      ->check(CLI::IsMember({"identities", "bracket", "gram", "even"}));
  add_bounds(verify);
  auto* identities = app.add_subcommand("identities", "Same as: verify identities");
  add_bounds(identities);
  auto* bracket = app.add_subcommand("bracket", "Same as: verify bracket");
  add_bounds(bracket);
  auto* gram = app.add_subcommand("gram", "Same as: verify gram");
  add_bounds(gram);

  std::string solitons = "none";
  int probe_max = 8;
  int probe_support = 0;
  auto* probe = app.add_subcommand("probe", "Evaluate Q_lambda(D) tau.tau on KdV soliton taus");
  probe->add_option("--solitons", solitons, "Comma list of p or p:c, or 'none'");
  probe->add_option("--max", probe_max, "Largest |lambda|");
  probe->add_option("--support", probe_support, "Largest odd time in the tau function (default: covers --max)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Emitter out(cfg);
  try {
    if (*qfun) return cmd_qfun(qfun_label, out);
    if (*act) return cmd_act(act_k, act_parts, act_method, out);
    if (*matrix) return cmd_matrix(mat_k, mat_n, cfg, out);
    if (*verify) return cmd_verify(suite, bounds, cfg, out);
    if (*identities) return cmd_verify("identities", bounds, cfg, out);
    if (*bracket) return cmd_verify("bracket", bounds, cfg, out);
    if (*gram) return cmd_verify("gram", bounds, cfg, out);
    if (*probe) return cmd_probe(solitons, probe_max, probe_support, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
