#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbd/error.hpp"
#include "qbd/exactla.hpp"
#include "qbd/json_io.hpp"
#include "qbd/qmatrices.hpp"
#include "qbd/tree.hpp"
#include "qbd/verify.hpp"

namespace {

using namespace qbd;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct CliConfig {
  std::string tree_path;
  std::optional<int> p;
  std::uint64_t seed = 1;
  std::string matrix;
  std::string at;
  std::string format = "json";
  std::string out_path;
  unsigned threads = 0;
  bool oracle = false;
  int enumerate_upto = 0;
  int full_upto = 0;
  std::string random;
  int trials = 5;
  int upto = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// All output goes through one buffer so that it is written once, in order.
void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw UsageError("cannot write " + cfg.out_path);
  out << text;
}

std::optional<Rational> point(const CliConfig& cfg) {
  if (cfg.at.empty()) return std::nullopt;
  return parse_rational(cfg.at);
}

Tree load_tree(const CliConfig& cfg) {
  if (!cfg.tree_path.empty() && cfg.p) throw UsageError("--tree and --p are mutually exclusive");
  if (!cfg.tree_path.empty()) return tree_from_json(parse_json(read_file(cfg.tree_path)));
  if (cfg.p) return random_nonsingular(*cfg.p, cfg.seed).tree();
  throw UsageError("a tree is required: --tree PATH or --p N [--seed S]");
}

MatchedTree load_matched(const CliConfig& cfg) {
  if (!cfg.tree_path.empty() && cfg.p) throw UsageError("--tree and --p are mutually exclusive");
  if (!cfg.tree_path.empty()) return matched_tree_from_json(parse_json(read_file(cfg.tree_path)));
  if (cfg.p) return random_nonsingular(*cfg.p, cfg.seed);
  throw UsageError("a tree is required: --tree PATH or --p N [--seed S]");
}

template <class T>
std::string pretty(const Matrix<T>& m) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>) {
        cells.push_back(format_rational(m(i, j)));
      } else {
        cells.push_back(m(i, j).to_string());
      }
      width = std::max(width, cells.back().size());
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string& c = cells[i * m.cols() + j];
      out << (j == 0 ? "" : "  ") << std::string(width - c.size(), ' ') << c;
    }
    out << '\n';
  }
  return out.str();
}

std::string symbolic_csv(const PolyMat& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j == 0 ? "" : ",") << m(i, j).to_string();
    out << '\n';
  }
  return out.str();
}

std::string symbolic_csv(const RatMat& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j == 0 ? "" : ",") << m(i, j).to_string();
    out << '\n';
  }
  return out.str();
}

template <class M>
std::string render(const CliConfig& cfg, const M& m, const std::optional<Rational>& q0) {
  if (q0) {
    const QMat v = eval_matrix(m, *q0);
    if (cfg.format == "csv") return to_csv(v);
    if (cfg.format == "pretty") return pretty(v);
    return to_json(v).dump() + "\n";
  }
  if (cfg.format == "csv") return symbolic_csv(m);
  if (cfg.format == "pretty") return pretty(m);
  return to_json(m).dump() + "\n";
}

PolyMat vector_as_column(const PolyVec& v) {
  PolyMat m(v.size(), 1, v.kind, IndexKind::Plain);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

int cmd_show(const CliConfig& cfg) {
  const auto q0 = point(cfg);
  const std::string& name = cfg.matrix;
  if (name == "qD" || name == "eD") {
    const Tree t = load_tree(cfg);
    emit(cfg, render(cfg, name == "qD" ? build_full_qD(t) : build_full_eD(t), q0));
    return kOk;
  }
  const MatchedTree mt = load_matched(cfg);
  if (name == "qB") {
    emit(cfg, render(cfg, build_qB(mt), q0));
  } else if (name == "E") {
    emit(cfg, render(cfg, build_E(mt), q0));
  } else if (name == "qL") {
    emit(cfg, render(cfg, build_qL(mt), q0));
  } else if (name == "tau") {
    const TauVectors tau = qtau(mt);
    if (cfg.format == "json" && !q0) {
      emit(cfg, Json{{"l", to_json(tau.l)}, {"r", to_json(tau.r)}}.dump() + "\n");
    } else {
      emit(cfg, render(cfg, vector_as_column(tau.l), q0) + render(cfg, vector_as_column(tau.r), q0));
    }
  } else if (name.rfind("mu:", 0) == 0) {
    Vertex v = -1;
    try {
      v = std::stoi(name.substr(3));
    } catch (const std::exception&) {
      throw UsageError("mu needs a vertex id, e.g. mu:3");
    }
    if (v < 0 || v >= mt.size()) throw UsageError("vertex " + name.substr(3) + " is not in the tree");
    const PolyVec mu = qsigned_degree_vector(mt, v);
    if (cfg.format == "json" && !q0) {
      emit(cfg, to_json(mu).dump() + "\n");
    } else {
      emit(cfg, render(cfg, vector_as_column(mu), q0));
    }
  } else {
    throw UsageError("unknown matrix '" + name + "' (qB, E, qL, qD, eD, tau, mu:<v>)");
  }
  return kOk;
}

int cmd_invert(const CliConfig& cfg) {
  if (cfg.matrix != "qB" && cfg.matrix != "E") throw UsageError("invert supports --matrix qB or E");
  const MatchedTree mt = load_matched(cfg);
  const auto q0 = point(cfg);
  const bool is_e = cfg.matrix == "E";
  Poly bd;
  if (!is_e) bd = bdq_det(mt);
  if (q0) {
    if (is_e && (*q0 == 0 || *q0 == 1 || *q0 == -1)) {
      throw UsageError("E is invertible only for q != 0, 1, -1; got q = " + cfg.at);
    }
    if (!is_e && (*q0 == 0 || *q0 == -1)) {
      throw UsageError("qB is invertible only for q != 0, -1 and bd_q(q) != 0; got q = " + cfg.at);
    }
    if (!is_e && bd.eval(*q0) == 0) {
      throw UsageError("qB is invertible only for bd_q(q) != 0; bd_q = " + bd.to_string() + " vanishes at q = " +
                       cfg.at);
    }
  }
  const PolyMat m = is_e ? build_E(mt) : build_qB(mt);
  const RatMat inv = is_e ? inverse_E_formula(mt) : inverse_qB_formula(mt, bd);
  std::optional<RatMat> oracle;
  if (cfg.oracle) oracle = inverse_gauss(m);

  if (cfg.format != "json") {
    std::string text = render(cfg, inv, q0);
    if (oracle) text += "oracle:\n" + render(cfg, *oracle, q0) + "equal=" + (*oracle == inv ? "true" : "false") + "\n";
    emit(cfg, text);
    return kOk;
  }
  Json out{{"matrix", cfg.matrix}};
  if (q0) {
    out["at"] = format_rational(*q0);
    out["inverse"] = to_json(eval_matrix(inv, *q0));
    if (oracle) out["oracle"] = to_json(eval_matrix(*oracle, *q0));
  } else {
    out["inverse"] = to_json(inv);
    if (oracle) out["oracle"] = to_json(*oracle);
  }
  if (oracle) out["equal"] = *oracle == inv;
  emit(cfg, out.dump() + "\n");
  return kOk;
}

std::pair<int, int> parse_random_arg(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stoi(text), -1};
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--random expects p,trials");
  }
}

int cmd_verify(const CliConfig& cfg) {
  const int sources = (!cfg.tree_path.empty() || cfg.p ? 1 : 0) + (cfg.enumerate_upto > 0 ? 1 : 0) +
                      (!cfg.random.empty() ? 1 : 0) + (cfg.full_upto > 0 ? 1 : 0);
  if (sources != 1) {
    throw UsageError("verify needs exactly one of --tree/--p, --enumerate-upto, --random, --full-upto");
  }
  std::vector<VerificationReport> reports;
  if (cfg.enumerate_upto > 0) {
    SuiteOptions options;
    options.oracle = cfg.oracle || cfg.enumerate_upto <= 10;
    reports = run_enumerated(cfg.enumerate_upto, cfg.threads, options);
  } else if (cfg.full_upto > 0) {
    reports = run_full_matrices(cfg.full_upto, cfg.threads);
  } else if (!cfg.random.empty()) {
    auto [p, trials] = parse_random_arg(cfg.random);
    if (trials < 0) trials = cfg.trials;
    std::vector<Rational> points = default_q_points();
    if (const auto q0 = point(cfg)) points = {*q0};
    reports = run_random(p, trials, cfg.seed, points, cfg.threads);
  } else {
    reports.push_back(run_suite(load_matched(cfg)));
  }

  if (!cfg.out_path.empty()) {
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(to_json(r));
    emit(cfg, all.dump(2) + "\n");
  }
  std::cout << summary_line(reports) << '\n';
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      if (c.pass) continue;
      Json failure = to_json(r);
      failure["checks"] = Json::array({to_json(c)});
      std::cout << "FIRST FAILURE " << failure.dump() << '\n';
      return kCheckFailed;
    }
  }
  return kOk;
}

int cmd_enum(const CliConfig& cfg) {
  if (!cfg.p) throw UsageError("enum needs --p");
  if (*cfg.p < 1 || *cfg.p > 8) throw UsageError("enum supports 1 <= p <= 8");
  std::string text;
  for (const auto& mt : enumerate_nonsingular(*cfg.p)) {
    Json line = to_json(mt);
    line["code"] = to_hex(canonical_code(mt.tree()));
    text += line.dump() + "\n";
  }
  emit(cfg, text);
  return kOk;
}

int cmd_gen(const CliConfig& cfg) {
  if (!cfg.p) throw UsageError("gen needs --p");
  if (*cfg.p < 1 || *cfg.p > 100000) throw UsageError("gen supports 1 <= p <= 100000");
  emit(cfg, to_json(random_nonsingular(*cfg.p, cfg.seed)).dump() + "\n");
  return kOk;
}

int cmd_conjecture(const CliConfig& cfg) {
  if (cfg.upto < 2 || cfg.upto > 16) throw UsageError("conjecture needs 2 <= --upto <= 16");
  const auto rows = run_conjecture(cfg.upto, cfg.threads);
  std::string text;
  const ConjectureRow* counterexample = nullptr;
  for (const auto& row : rows) {
    const auto& ev = row.evidence;
    if (cfg.format == "pretty") {
      text += to_hex(row.tree_code) + "  p=" + std::to_string(row.p) +
              "  diagonalizable=" + (ev.diagonalizable ? "true" : "false") +
              "  nonneg=" + (ev.all_eigen_nonneg ? "true" : "false") + "  charpoly=" + ev.charpoly.to_string('x') +
              "\n";
    } else {
      Json line{{"tree", to_hex(row.tree_code)},
                {"p", row.p},
                {"diagonalizable", ev.diagonalizable},
                {"nonneg", ev.all_eigen_nonneg},
                {"charpoly", to_json(ev.charpoly)}};
      text += line.dump() + "\n";
    }
    if (!counterexample && !(ev.diagonalizable && ev.all_eigen_nonneg)) counterexample = &row;
  }
  emit(cfg, text);
  if (counterexample) {
    Json full = to_json(counterexample->tree);
    full["charpoly"] = to_json(counterexample->evidence.charpoly);
    full["squarefree"] = to_json(counterexample->evidence.squarefree);
    full["diagonalizable"] = counterexample->evidence.diagonalizable;
    full["nonneg"] = counterexample->evidence.all_eigen_nonneg;
    std::cout << "COUNTEREXAMPLE " << full.dump() << '\n';
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-analogue bipartite distance matrices of nonsingular trees"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_tree = [&](CLI::App* sub) {
    sub->add_option("--tree", cfg.tree_path, "tree JSON file");
    sub->add_option("--p", cfg.p, "generate a random nonsingular tree with p pairs");
    sub->add_option("--seed", cfg.seed, "generator seed");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--out", cfg.out_path, "write output to this file");
  };

  auto* show = app.add_subcommand("show", "print a matrix or vector of a tree");
  add_tree(show);
  add_output(show);
  show->add_option("--matrix", cfg.matrix, "qB, E, qL, qD, eD, tau or mu:<vertex>")->required();
  show->add_option("--at", cfg.at, "evaluate at q = a/b");

  auto* invert = app.add_subcommand("invert", "closed-form inverse of qB or E");
  add_tree(invert);
  add_output(invert);
  invert->add_option("--matrix", cfg.matrix, "qB or E")->required();
  invert->add_option("--at", cfg.at, "evaluate at q = a/b");
  invert->add_flag("--oracle", cfg.oracle, "also compute the Gauss-Jordan inverse");

  auto* verify = app.add_subcommand("verify", "run the identity checks");
  add_tree(verify);
  verify->add_option("--out", cfg.out_path, "write the full JSON report here");
  verify->add_option("--enumerate-upto", cfg.enumerate_upto, "all nonsingular trees with 2p <= N");
  verify->add_option("--full-upto", cfg.full_upto, "full-matrix determinants for all trees with n <= N");
  verify->add_option("--random", cfg.random, "p,trials: random trees checked at exact q points");
  verify->add_option("--trials", cfg.trials, "trials when --random gives only p");
  verify->add_option("--at", cfg.at, "single q point for --random");
  verify->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  verify->add_flag("--oracle", cfg.oracle, "compare inverses with Gauss-Jordan (default for 2p <= 10)");

  auto* enumerate = app.add_subcommand("enum", "all nonsingular trees on 2p vertices, one JSON per line");
  enumerate->add_option("--p", cfg.p)->required();
  enumerate->add_option("--out", cfg.out_path);

  auto* gen = app.add_subcommand("gen", "one random nonsingular tree");
  gen->add_option("--p", cfg.p)->required();
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--out", cfg.out_path);

  auto* conjecture = app.add_subcommand("conjecture", "diagonalizability and eigenvalue signs of L at q = 1");
  conjecture->add_option("--upto", cfg.upto, "all nonsingular trees with 2p <= N")->required();
  conjecture->add_option("--threads", cfg.threads);
  add_output(conjecture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*show) return cmd_show(cfg);
    if (*invert) return cmd_invert(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*enumerate) return cmd_enum(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*conjecture) return cmd_conjecture(cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
