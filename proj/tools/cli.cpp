#include "cli.hpp"

#include <chrono>
#include <functional>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "apolar/clifford.hpp"
#include "apolar/detect.hpp"
#include "apolar/io.hpp"
#include "apolar/subset_convolution.hpp"

namespace apolar::cli {

namespace {

struct CommonFlags {
  std::string engine;
  std::uint64_t prime = 0;
  std::string report;
};

void add_common(CLI::App* sub, CommonFlags& flags, bool with_engine) {
  if (with_engine) {
    sub->add_option("--engine", flags.engine, "Evaluation engine")->check(CLI::IsMember({"general", "hankel"}));
  }
  sub->add_option("--mod", flags.prime, "Work modulo this odd prime (one-sided error)");
  sub->add_option("--report", flags.report, "Print a report after the result")->check(CLI::IsMember({"json", "text"}));
}

Arithmetic arithmetic_of(const CommonFlags& flags) {
  return flags.prime ? Arithmetic::modular(flags.prime) : Arithmetic::exact();
}

RunReport decision(const DetectResult& r, const std::string& engine, const Arithmetic& a) {
  RunReport rep;
  rep.result = r.found ? "yes" : "no";
  rep.engine = engine;
  rep.basis_dim = r.stats.basis_dim;
  rep.gates = r.stats.gates;
  rep.mode = a.name();
  rep.extra.emplace_back("inner_product", r.value.to_string());
  return rep;
}

// Builds the matrix named by an `inner -x` argument. Hankel-shaped targets also
// produce the arrangement.
struct InnerTarget {
  SymbolicMatrix matrix;
  std::unique_ptr<HankelArrangement> hankel;
};

int parse_positive(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, what + " must be a positive integer, got '" + text + "'");
}

InnerTarget inner_target(const std::string& arg) {
  InnerTarget t;
  auto colon = arg.find(':');
  const std::string kind = arg.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : arg.substr(colon + 1);
  if (kind == "generic" && colon != std::string::npos) {
    t.matrix = SymbolicMatrix::generic(parse_positive(rest, "matrix size"));
  } else if (kind == "hankel" && colon != std::string::npos) {
    t.hankel = std::make_unique<HankelArrangement>(HankelArrangement::generic(parse_positive(rest, "matrix size")));
    t.matrix = t.hankel->materialize();
  } else if (kind == "vandermonde" && colon != std::string::npos) {
    auto second = rest.find(':');
    if (second == std::string::npos) fail(ErrorKind::InvalidArgument, "expected vandermonde:<n>:<d>");
    const int n = parse_positive(rest.substr(0, second), "node count");
    const int d = parse_positive(rest.substr(second + 1), "matrix size");
    t.hankel = std::make_unique<HankelArrangement>(vandermonde_hankel(n, d));
    t.matrix = t.hankel->materialize();
  } else {
    t.matrix = parse_symbolic_matrix(read_file(arg));
  }
  return t;
}

void print(const RunReport& rep, const std::string& format, std::ostream& out) {
  out << rep.result << "\n";
  if (format == "json") {
    nlohmann::json j{{"result", rep.result}, {"engine", rep.engine},   {"basis_dim", rep.basis_dim},
                     {"gates", rep.gates},   {"micros", rep.micros}, {"mode", rep.mode}};
    if (!rep.extra.empty()) {
      nlohmann::json details = nlohmann::json::object();
      for (const auto& [k, v] : rep.extra) details[k] = v;
      j["details"] = details;
    }
    out << j.dump() << "\n";
  } else if (format == "text") {
    if (!rep.engine.empty()) out << "engine:     " << rep.engine << "\n";
    if (!rep.mode.empty()) out << "arithmetic: " << rep.mode << "\n";
    if (rep.basis_dim) out << "basis dim:  " << rep.basis_dim << "\n";
    if (rep.gates) out << "gates:      " << rep.gates << "\n";
    for (const auto& [k, v] : rep.extra) out << k << ": " << v << "\n";
    out << "time:       " << rep.micros << " us\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential-operator engines for determinant inner products", "apolar"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::function<RunReport()> action;

  std::string graph_file, circuit_file, matrix_file, target_arg;
  int d = 0, s = 0, t = 0, n = 0;
  bool naive = false;

  auto* cycle = app.add_subcommand("cycle", "Simple directed cycle on exactly d vertices");
  cycle->add_option("-g,--graph", graph_file, "Graph file")->required();
  cycle->add_option("-d", d, "Cycle length")->required();
  add_common(cycle, flags, true);
  cycle->callback([&] {
    action = [&] {
      const DetectOptions o{flags.engine.empty() ? Engine::hankel : parse_engine(flags.engine), arithmetic_of(flags)};
      return decision(detect_cycle(parse_graph(read_file(graph_file)), d, o), to_string(o.engine), o.arithmetic);
    };
  });

  auto* path = app.add_subcommand("path", "Simple s-t path on exactly d vertices");
  path->add_option("-g,--graph", graph_file, "Graph file")->required();
  path->add_option("-s", s, "Start vertex")->required();
  path->add_option("-t", t, "End vertex")->required();
  path->add_option("-d", d, "Number of vertices on the path")->required();
  add_common(path, flags, true);
  path->callback([&] {
    action = [&] {
      const DetectOptions o{flags.engine.empty() ? Engine::hankel : parse_engine(flags.engine), arithmetic_of(flags)};
      return decision(detect_path(parse_graph(read_file(graph_file)), s, t, d, o), to_string(o.engine), o.arithmetic);
    };
  });

  auto* squarefree = app.add_subcommand("squarefree", "Square-free monomial in a nonnegative skew circuit");
  squarefree->add_option("-c,--circuit", circuit_file, "Circuit file")->required();
  squarefree->add_option("-d", d, "Degree")->required();
  squarefree->add_option("-n", n, "Number of variables")->required();
  add_common(squarefree, flags, true);
  squarefree->callback([&] {
    action = [&] {
      const DetectOptions o{flags.engine.empty() ? Engine::hankel : parse_engine(flags.engine), arithmetic_of(flags)};
      return decision(detect_squarefree(parse_circuit(read_file(circuit_file)), d, n, o), to_string(o.engine),
                      o.arithmetic);
    };
  });

  auto* sing = app.add_subcommand("sing", "Does the span of the matrices contain an invertible one");
  sing->add_option("-m,--matrices", matrix_file, "Matrix-list file")->required();
  add_common(sing, flags, false);
  sing->callback([&] {
    action = [&] {
      const Arithmetic a = arithmetic_of(flags);
      return decision(sing_decide(parse_matrix_list(read_file(matrix_file)), a), "general", a);
    };
  });

  auto* parity = app.add_subcommand("matroid-parity", "Some m parts with independent union");
  parity->add_option("-f,--file", matrix_file, "Matroid file")->required();
  add_common(parity, flags, false);
  parity->callback([&] {
    action = [&] {
      const Arithmetic a = arithmetic_of(flags);
      const MatroidInstance inst = parse_matroid(read_file(matrix_file));
      return decision(matroid_parity_decide(inst.b, inst.parts, a), "general", a);
    };
  });

  auto* intersect = app.add_subcommand("matroid-intersect", "Common base of k linear matroids");
  intersect->add_option("-f,--file", matrix_file, "Matrix-family file")->required();
  add_common(intersect, flags, false);
  intersect->callback([&] {
    action = [&] {
      const Arithmetic a = arithmetic_of(flags);
      return decision(matroid_intersection_decide(parse_matrix_family(read_file(matrix_file)), a), "general", a);
    };
  });

  auto* inner = app.add_subcommand("inner", "Exact <det X, g> for a skew circuit g");
  inner->add_option("-x", target_arg, "generic:<d>, hankel:<d>, vandermonde:<n>:<d> or a symbolic-matrix file")->required();
  inner->add_option("-c,--circuit", circuit_file, "Circuit file")->required();
  add_common(inner, flags, true);
  inner->callback([&] {
    action = [&] {
      const Arithmetic a = arithmetic_of(flags);
      const InnerTarget target = inner_target(target_arg);
      const SkewCircuit c = parse_circuit(read_file(circuit_file));
      Engine engine = target.hankel ? Engine::hankel : Engine::general;
      if (!flags.engine.empty()) engine = parse_engine(flags.engine);
      if (engine == Engine::hankel && !target.hankel) {
        fail(ErrorKind::InvalidArgument, "the hankel engine needs a hankel:<d> or vandermonde:<n>:<d> matrix");
      }
      EvaluationStats stats;
      const ExactScalar v = engine == Engine::hankel ? hankeldiff_evaluate(*target.hankel, c, a, &stats)
                                                     : gendiff_evaluate(target.matrix, c, a, &stats);
      RunReport rep;
      rep.result = v.to_string();
      rep.engine = to_string(engine);
      rep.basis_dim = stats.basis_dim;
      rep.gates = stats.gates;
      rep.mode = a.name();
      return rep;
    };
  });

  auto* convolve = app.add_subcommand("convolve", "Subset convolution of two set functions");
  convolve->add_option("-f,--file", matrix_file, "Convolution input file")->required();
  convolve->add_flag("--naive", naive, "Use the direct O(3^n) sum");
  add_common(convolve, flags, false);
  convolve->callback([&] {
    action = [&] {
      const ConvolutionInput in = parse_convolution(read_file(matrix_file));
      ConvolutionStats stats;
      const auto values = naive ? subset_convolution_naive(in.sigma, in.tau)
                                : subset_convolution_fast(in.sigma, in.tau, &stats);
      RunReport rep;
      for (std::size_t i = 0; i < values.size(); ++i) rep.result += (i ? " " : "") + to_string(values[i]);
      rep.engine = naive ? "naive" : "ranked-transform";
      rep.mode = "exact";
      if (!naive) rep.extra.emplace_back("multiplications", std::to_string(stats.multiplications));
      return rep;
    };
  });

  auto* lab = app.add_subcommand("lab", "Tensor decomposition checks");
  lab->require_subcommand(1);
  auto* clifford = lab->add_subcommand("clifford", "Clifford route to the determinant algebra");
  n = 2;
  clifford->add_option("-n", n, "Matrix size (even)");
  add_common(clifford, flags, false);
  clifford->callback([&] {
    action = [&] {
      const CliffordReport r = clifford_det_decomposition(n);
      RunReport rep;
      rep.result = "ok";
      rep.basis_dim = r.algebra_dim;
      rep.mode = "exact";
      rep.extra = {{"clifford_products", std::to_string(r.clifford_entries)},
                   {"iso_pairs_checked", std::to_string(r.iso_pairs_checked)},
                   {"matrix_terms", std::to_string(r.matrix_terms)},
                   {"product_terms", std::to_string(r.product_terms)},
                   {"nodes", std::to_string(r.nodes)},
                   {"terms", std::to_string(r.term_count)},
                   {"max_exponent", std::to_string(r.max_exponent)}};
      return rep;
    };
  });
  auto* waring = lab->add_subcommand("waring", "Structure tensor of x1 x2 x3 from its four-term Waring identity");
  add_common(waring, flags, false);
  waring->callback([&] {
    action = [&] {
      const SparsePoly f = SparsePoly::variable(1, 3) * SparsePoly::variable(2, 3) * SparsePoly::variable(3, 3);
      auto form = [](int a, int b, int c) { return LinearForm({{1, a}, {2, b}, {3, c}}); };
      const std::vector<WaringTerm> terms{{Rational(1, 24), form(1, 1, 1)},
                                          {Rational(-1, 24), form(1, 1, -1)},
                                          {Rational(-1, 24), form(1, -1, 1)},
                                          {Rational(1, 24), form(1, -1, -1)}};
      const TensorDecomposition dec = waring_to_tensor(f, terms);
      RunReport rep;
      rep.result = "ok";
      rep.basis_dim = dec.dim;
      rep.mode = "exact";
      rep.extra = {{"waring_terms", std::to_string(terms.size())}, {"terms", std::to_string(dec.size())}};
      return rep;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return 2;
  }
  if (!action) {
    err << "usage error: no subcommand\n";
    return 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    RunReport rep = action();
    rep.micros =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    print(rep, flags.report, out);
    return rep.result == "no" ? 1 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace apolar::cli
