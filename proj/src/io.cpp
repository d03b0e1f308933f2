#include "apolar/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace apolar {

namespace {

struct Token {
  std::string_view text;
  int line;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) {
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '\n') {
        ++line;
        ++i;
      } else if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else {
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') ++i;
        tokens_.push_back({text.substr(start, i - start), line});
      }
    }
    last_line_ = line;
  }

  bool done() const { return pos_ == tokens_.size(); }

  const Token& next(const std::string& what) {
    if (done()) fail(ErrorKind::SyntaxError, where() + "unexpected end of input, expected " + what);
    return tokens_[pos_++];
  }

  int next_int(const std::string& what, int min = 0) {
    const Token& t = next(what);
    int value = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || end != t.text.data() + t.text.size()) {
      fail(ErrorKind::SyntaxError, at(t) + "expected integer " + what + ", got '" + std::string(t.text) + "'");
    }
    if (value < min) {
      fail(ErrorKind::SyntaxError, at(t) + what + " must be at least " + std::to_string(min));
    }
    return value;
  }

  Rational next_rational(const std::string& what) {
    const Token& t = next(what);
    return rethrow(t, [&] { return parse_rational(t.text); });
  }

  LinearForm next_form(const std::string& what) {
    const Token& t = next(what);
    return rethrow(t, [&] { return parse_linear_form(t.text); });
  }

  void expect_end() {
    if (!done()) {
      const Token& t = tokens_[pos_];
      fail(ErrorKind::SyntaxError, at(t) + "unexpected trailing token '" + std::string(t.text) + "'");
    }
  }

  std::string at(const Token& t) const { return "line " + std::to_string(t.line) + ": "; }
  std::string current() const { return done() ? where() : at(tokens_[pos_]); }

 private:
  template <class F>
  auto rethrow(const Token& t, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      fail(e.kind(), at(t) + e.message());
    }
  }

  std::string where() const { return "line " + std::to_string(last_line_) + ": "; }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 1;
};

RationalMatrix read_matrix(Tokenizer& tok, int rows, int cols, const std::string& what) {
  RationalMatrix m(rows, std::vector<Rational>(cols));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = tok.next_rational(what + " entry");
  }
  return m;
}

void write_matrix(std::ostringstream& os, const RationalMatrix& m) {
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << to_string(row[j]);
    os << "\n";
  }
}

}  // namespace

DirectedGraph parse_graph(std::string_view text) {
  Tokenizer tok(text);
  const int n = tok.next_int("vertex count");
  const int m = tok.next_int("edge count");
  DirectedGraph g(n);
  for (int e = 0; e < m; ++e) {
    const std::string where = tok.current();
    const int u = tok.next_int("edge tail", 1);
    const int v = tok.next_int("edge head", 1);
    if (u > n || v > n) {
      fail(ErrorKind::IndexOutOfRange, where + "edge " + std::to_string(u) + " " + std::to_string(v) +
                                           " outside 1.." + std::to_string(n));
    }
    g.add_edge(u, v);
  }
  tok.expect_end();
  return g;
}

std::string serialize_graph(const DirectedGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
  return os.str();
}

std::vector<RationalMatrix> parse_matrix_list(std::string_view text) {
  Tokenizer tok(text);
  const int n = tok.next_int("matrix count", 1);
  const int d = tok.next_int("matrix size", 1);
  std::vector<RationalMatrix> out;
  for (int i = 0; i < n; ++i) out.push_back(read_matrix(tok, d, d, "matrix " + std::to_string(i + 1)));
  tok.expect_end();
  return out;
}

std::string serialize_matrix_list(const std::vector<RationalMatrix>& matrices) {
  std::ostringstream os;
  os << matrices.size() << " " << (matrices.empty() ? 0 : matrices[0].size()) << "\n";
  for (const auto& m : matrices) write_matrix(os, m);
  return os.str();
}

MatroidInstance parse_matroid(std::string_view text) {
  Tokenizer tok(text);
  const std::string header = tok.current();
  MatroidInstance inst;
  const int rows = tok.next_int("row count", 1);
  const int cols = tok.next_int("column count", 1);
  inst.k = tok.next_int("part size", 1);
  inst.m = tok.next_int("number of parts to choose", 1);
  if (rows != inst.k * inst.m) fail(ErrorKind::BadDims, header + "row count must equal k * m");
  if (cols % inst.k != 0) fail(ErrorKind::BadDims, header + "column count must be a multiple of k");
  inst.b = read_matrix(tok, rows, cols, "matroid matrix");
  for (int p = 0; p < cols / inst.k; ++p) {
    std::vector<int> part;
    for (int j = 0; j < inst.k; ++j) part.push_back(tok.next_int("partition element", 1));
    inst.parts.push_back(std::move(part));
  }
  tok.expect_end();
  validate_partition(inst.parts);
  return inst;
}

std::string serialize_matroid(const MatroidInstance& inst) {
  std::ostringstream os;
  os << inst.b.size() << " " << (inst.b.empty() ? 0 : inst.b[0].size()) << " " << inst.k << " " << inst.m << "\n";
  write_matrix(os, inst.b);
  for (const auto& part : inst.parts) {
    for (std::size_t j = 0; j < part.size(); ++j) os << (j ? " " : "") << part[j];
    os << "\n";
  }
  return os.str();
}

std::vector<RationalMatrix> parse_matrix_family(std::string_view text) {
  Tokenizer tok(text);
  const int k = tok.next_int("matrix count", 1);
  const int rows = tok.next_int("row count", 1);
  const int cols = tok.next_int("column count", 1);
  std::vector<RationalMatrix> out;
  for (int i = 0; i < k; ++i) out.push_back(read_matrix(tok, rows, cols, "matrix " + std::to_string(i + 1)));
  tok.expect_end();
  return out;
}

std::string serialize_matrix_family(const std::vector<RationalMatrix>& matrices) {
  std::ostringstream os;
  const std::size_t rows = matrices.empty() ? 0 : matrices[0].size();
  const std::size_t cols = rows ? matrices[0][0].size() : 0;
  os << matrices.size() << " " << rows << " " << cols << "\n";
  for (const auto& m : matrices) write_matrix(os, m);
  return os.str();
}

SymbolicMatrix parse_symbolic_matrix(std::string_view text) {
  Tokenizer tok(text);
  const int d = tok.next_int("matrix size", 1);
  std::vector<std::vector<LinearForm>> e(d, std::vector<LinearForm>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) e[i][j] = tok.next_form("matrix entry");
  }
  tok.expect_end();
  return SymbolicMatrix(std::move(e));
}

std::string serialize_symbolic_matrix(const SymbolicMatrix& x) {
  std::ostringstream os;
  os << x.dim() << "\n";
  for (const auto& row : x.entries()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j].to_string();
    os << "\n";
  }
  return os.str();
}

ConvolutionInput parse_convolution(std::string_view text) {
  Tokenizer tok(text);
  ConvolutionInput in;
  in.n = tok.next_int("ground set size");
  if (in.n > 20) fail(ErrorKind::SizeLimit, "ground set size above 20");
  const std::size_t size = std::size_t{1} << in.n;
  for (std::size_t s = 0; s < size; ++s) in.sigma.push_back(tok.next_rational("sigma value"));
  for (std::size_t s = 0; s < size; ++s) in.tau.push_back(tok.next_rational("tau value"));
  tok.expect_end();
  return in;
}

std::string serialize_convolution(const ConvolutionInput& in) {
  std::ostringstream os;
  os << in.n << "\n";
  for (const auto* values : {&in.sigma, &in.tau}) {
    for (std::size_t s = 0; s < values->size(); ++s) os << (s ? " " : "") << to_string((*values)[s]);
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace apolar
