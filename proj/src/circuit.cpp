#include "apolar/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace apolar {

// ------------------------------------------------------------ LinearForm

LinearForm::LinearForm(std::vector<std::pair<int, Rational>> coeffs) {
  std::sort(coeffs.begin(), coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [v, c] : coeffs) {
    c.canonicalize();
    if (v < 1) fail(ErrorKind::IndexOutOfRange, "variables are 1-based");
    if (!terms_.empty() && terms_.back().first == v) {
      terms_.back().second += c;
      if (terms_.back().second == 0) terms_.pop_back();
    } else if (c != 0) {
      terms_.emplace_back(v, c);
    }
  }
}

LinearForm LinearForm::variable(int var, const Rational& c) { return LinearForm({{var, c}}); }

Rational LinearForm::coefficient(int var) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                             [](const auto& t, int v) { return t.first < v; });
  return (it != terms_.end() && it->first == var) ? it->second : Rational(0);
}

bool LinearForm::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.get_den() == 1; });
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  auto merged = terms_;
  merged.insert(merged.end(), o.terms_.begin(), o.terms_.end());
  return LinearForm(std::move(merged));
}

LinearForm LinearForm::operator*(const Rational& c) const {
  auto scaled = terms_;
  for (auto& t : scaled) t.second *= c;
  return LinearForm(std::move(scaled));
}

SparsePoly LinearForm::to_poly() const {
  SparsePoly p(max_variable());
  for (const auto& [v, c] : terms_) p.add_term(Monomial::variable(v), c);
  return p;
}

std::string LinearForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [v, c] : terms_) {
    if (!out.empty()) out += ',';
    out += c.get_str() + ":" + std::to_string(v);
  }
  return out;
}

namespace {

int parse_index(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorKind::SyntaxError, "expected an integer, got '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

LinearForm parse_linear_form(std::string_view text) {
  if (text == "0") return {};
  std::vector<std::pair<int, Rational>> coeffs;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      fail(ErrorKind::SyntaxError, "linear form term '" + std::string(item) + "' lacks ':'");
    }
    int var = parse_index(item.substr(colon + 1));
    if (var < 1) fail(ErrorKind::SyntaxError, "variables are 1-based");
    coeffs.emplace_back(var, parse_rational(item.substr(0, colon)));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return LinearForm(std::move(coeffs));
}

// ----------------------------------------------------------- SkewCircuit

void SkewCircuit::check_operand(std::size_t g) const {
  if (g >= gates_.size()) fail(ErrorKind::UndefinedGate, "operand gate " + std::to_string(g) + " not defined");
}

std::size_t SkewCircuit::push(Gate g) {
  gates_.push_back(std::move(g));
  return gates_.size() - 1;
}

std::size_t SkewCircuit::input(int var) {
  if (var < 1) fail(ErrorKind::IndexOutOfRange, "variables are 1-based");
  nvars_ = std::max(nvars_, var);
  Gate g;
  g.kind = GateKind::Input;
  g.var = var;
  g.degree = 1;
  return push(std::move(g));
}

std::size_t SkewCircuit::constant(const Rational& c) {
  Gate g;
  g.kind = GateKind::Const;
  g.constant = c;
  g.constant.canonicalize();
  g.degree = 0;
  return push(std::move(g));
}

std::size_t SkewCircuit::add(std::size_t a, std::size_t b) {
  check_operand(a);
  check_operand(b);
  if (gates_[a].degree != gates_[b].degree) {
    fail(ErrorKind::DegreeMismatch, "add of degrees " + std::to_string(gates_[a].degree) + " and " +
                                        std::to_string(gates_[b].degree));
  }
  Gate g;
  g.kind = GateKind::Add;
  g.lhs = a;
  g.rhs = b;
  g.degree = gates_[a].degree;
  return push(std::move(g));
}

std::size_t SkewCircuit::add_all(std::span<const std::size_t> operands) {
  if (operands.empty()) fail(ErrorKind::InvalidArgument, "empty sum");
  std::size_t acc = operands[0];
  for (std::size_t i = 1; i < operands.size(); ++i) acc = add(acc, operands[i]);
  return acc;
}

std::size_t SkewCircuit::mul_linear(const LinearForm& form, std::size_t a) {
  check_operand(a);
  nvars_ = std::max(nvars_, form.max_variable());
  Gate g;
  g.kind = GateKind::MulLin;
  g.form = form;
  g.lhs = a;
  g.degree = gates_[a].degree + 1;
  return push(std::move(g));
}

std::size_t SkewCircuit::scale(const Rational& c, std::size_t a) {
  check_operand(a);
  Gate g;
  g.kind = GateKind::Scale;
  g.constant = c;
  g.constant.canonicalize();
  g.lhs = a;
  g.degree = gates_[a].degree;
  return push(std::move(g));
}

std::size_t SkewCircuit::mul(std::size_t a, std::size_t b) {
  check_operand(a);
  check_operand(b);
  Gate g;
  g.kind = GateKind::Mul;
  g.lhs = a;
  g.rhs = b;
  g.degree = gates_[a].degree + gates_[b].degree;
  return push(std::move(g));
}

std::size_t SkewCircuit::zero(int degree) {
  std::size_t g = constant(degree == 0 ? 0 : 1);
  for (int i = 0; i < degree; ++i) g = mul_linear(LinearForm(), g);
  return g;
}

void SkewCircuit::set_output(std::size_t g) {
  check_operand(g);
  output_ = g;
  output_set_ = true;
}

std::size_t SkewCircuit::output() const {
  if (gates_.empty()) fail(ErrorKind::UndefinedGate, "circuit has no gates");
  return output_set_ ? output_ : gates_.size() - 1;
}

bool SkewCircuit::is_skew() const {
  auto live = live_gates();
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (live[i] && gates_[i].kind == GateKind::Mul) return false;
  }
  return true;
}

bool SkewCircuit::is_integral() const {
  for (const auto& g : gates_) {
    if ((g.kind == GateKind::Const || g.kind == GateKind::Scale) && g.constant.get_den() != 1) return false;
    if (g.kind == GateKind::MulLin && !g.form.is_integral()) return false;
  }
  return true;
}

std::vector<bool> SkewCircuit::live_gates() const {
  std::vector<bool> live(gates_.size(), false);
  if (gates_.empty()) return live;
  live[output()] = true;
  for (std::size_t i = gates_.size(); i-- > 0;) {
    if (!live[i]) continue;
    const Gate& g = gates_[i];
    switch (g.kind) {
      case GateKind::Add:
      case GateKind::Mul:
        live[g.lhs] = live[g.rhs] = true;
        break;
      case GateKind::MulLin:
      case GateKind::Scale:
        live[g.lhs] = true;
        break;
      default:
        break;
    }
  }
  return live;
}

std::vector<std::size_t> SkewCircuit::use_counts() const {
  std::vector<std::size_t> uses(gates_.size(), 0);
  if (gates_.empty()) return uses;
  auto live = live_gates();
  uses[output()] = 1;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = gates_[i];
    switch (g.kind) {
      case GateKind::Add:
      case GateKind::Mul:
        ++uses[g.lhs];
        ++uses[g.rhs];
        break;
      case GateKind::MulLin:
      case GateKind::Scale:
        ++uses[g.lhs];
        break;
      default:
        break;
    }
  }
  return uses;
}

std::string SkewCircuit::serialize() const {
  std::ostringstream os;
  auto id = [](std::size_t g) { return "g" + std::to_string(g + 1); };
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    os << id(i) << " = ";
    switch (g.kind) {
      case GateKind::Input: os << "var " << g.var; break;
      case GateKind::Const: os << "const " << g.constant.get_str(); break;
      case GateKind::Add: os << "add " << id(g.lhs) << ' ' << id(g.rhs); break;
      case GateKind::MulLin: os << "mullin " << g.form.to_string() << ' ' << id(g.lhs); break;
      case GateKind::Scale: os << "scale " << g.constant.get_str() << ' ' << id(g.lhs); break;
      case GateKind::Mul: os << "mul " << id(g.lhs) << ' ' << id(g.rhs); break;
    }
    os << '\n';
  }
  if (!gates_.empty()) os << "out " << id(output()) << '\n';
  return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class CircuitParser {
 public:
  CircuitParser(std::string_view text, CircuitDialect dialect) : text_(text), dialect_(dialect) {}

  SkewCircuit run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      auto nl = text_.find('\n', pos);
      std::string_view line = text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no_;
      try {
        parse_line(line);
      } catch (const Error& e) {
        throw Error(e.kind(), "line " + std::to_string(line_no_) + ": " + e.message());
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (circuit_.size() == 0) fail(ErrorKind::SyntaxError, "circuit text defines no gates");
    return std::move(circuit_);
  }

 private:
  std::size_t gate_ref(std::string_view tok) const {
    if (tok.size() < 2 || tok[0] != 'g') fail(ErrorKind::SyntaxError, "expected gate id, got '" + std::string(tok) + "'");
    long id = parse_index(tok.substr(1));
    auto it = ids_.find(id);
    if (it == ids_.end()) fail(ErrorKind::UndefinedGate, "gate g" + std::to_string(id) + " used before definition");
    return it->second;
  }

  void expect_args(const std::vector<std::string_view>& toks, std::size_t n) const {
    if (toks.size() != n) fail(ErrorKind::SyntaxError, "wrong number of operands for '" + std::string(toks[2]) + "'");
  }

  void parse_line(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) return;
    if (toks[0] == "out") {
      if (toks.size() != 2) fail(ErrorKind::SyntaxError, "expected 'out g<id>'");
      circuit_.set_output(gate_ref(toks[1]));
      return;
    }
    if (toks.size() < 3 || toks[1] != "=") fail(ErrorKind::SyntaxError, "expected 'g<id> = <op> ...'");
    if (toks[0].size() < 2 || toks[0][0] != 'g') fail(ErrorKind::SyntaxError, "gate ids look like g<number>");
    long id = parse_index(toks[0].substr(1));
    if (ids_.count(id)) fail(ErrorKind::DuplicateGateId, "gate g" + std::to_string(id) + " defined twice");

    std::string_view op = toks[2];
    std::size_t g = 0;
    if (op == "var") {
      expect_args(toks, 4);
      int v = parse_index(toks[3]);
      if (v < 1) fail(ErrorKind::SyntaxError, "variables are 1-based");
      g = circuit_.input(v);
    } else if (op == "const") {
      expect_args(toks, 4);
      g = circuit_.constant(parse_rational(toks[3]));
    } else if (op == "add") {
      expect_args(toks, 5);
      g = circuit_.add(gate_ref(toks[3]), gate_ref(toks[4]));
    } else if (op == "mullin") {
      expect_args(toks, 5);
      g = circuit_.mul_linear(parse_linear_form(toks[3]), gate_ref(toks[4]));
    } else if (op == "scale") {
      expect_args(toks, 5);
      g = circuit_.scale(parse_rational(toks[3]), gate_ref(toks[4]));
    } else if (op == "mul") {
      expect_args(toks, 5);
      g = parse_mul(gate_ref(toks[3]), gate_ref(toks[4]));
    } else {
      fail(ErrorKind::SyntaxError, "unknown operation '" + std::string(op) + "'");
    }
    ids_.emplace(id, g);
  }

  // A product with a variable or scalar leaf is skew and is lowered to
  // MulLin / Scale; anything else is a general product.
  std::size_t parse_mul(std::size_t a, std::size_t b) {
    for (auto [leaf, other] : {std::pair{a, b}, std::pair{b, a}}) {
      const Gate& g = circuit_.gate(leaf);
      if (g.kind == GateKind::Input) return circuit_.mul_linear(LinearForm::variable(g.var), other);
      if (g.kind == GateKind::Const) return circuit_.scale(g.constant, other);
    }
    if (dialect_ == CircuitDialect::skew) {
      fail(ErrorKind::NonSkewMul, "mul needs a var or const operand in a skew circuit");
    }
    return circuit_.mul(a, b);
  }

  std::string_view text_;
  CircuitDialect dialect_;
  SkewCircuit circuit_;
  std::unordered_map<long, std::size_t> ids_;
  std::size_t line_no_ = 0;
};

}  // namespace

SkewCircuit parse_circuit(std::string_view text, CircuitDialect dialect) {
  return CircuitParser(text, dialect).run();
}

// -------------------------------------------------------------- expansion

SparsePoly expand_circuit(const SkewCircuit& c, const ExpandLimits& limits) {
  const auto& gates = c.gates();
  auto live = c.live_gates();
  auto uses = c.use_counts();
  std::vector<SparsePoly> value(gates.size());
  auto check = [&](std::size_t projected) {
    if (projected > limits.max_terms) {
      fail(ErrorKind::SizeLimit, "expansion exceeds " + std::to_string(limits.max_terms) + " terms");
    }
  };
  auto release = [&](std::size_t g) {
    if (--uses[g] == 0) value[g] = SparsePoly();
  };
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::Input:
        value[i] = SparsePoly::variable(g.var, c.nvars());
        break;
      case GateKind::Const:
        value[i] = SparsePoly::constant(g.constant, c.nvars());
        break;
      case GateKind::Add:
        check(value[g.lhs].size() + value[g.rhs].size());
        value[i] = value[g.lhs] + value[g.rhs];
        release(g.lhs);
        release(g.rhs);
        break;
      case GateKind::MulLin:
        check(value[g.lhs].size() * std::max<std::size_t>(1, g.form.support()));
        value[i] = value[g.lhs] * g.form.to_poly();
        release(g.lhs);
        break;
      case GateKind::Scale:
        value[i] = value[g.lhs] * g.constant;
        release(g.lhs);
        break;
      case GateKind::Mul:
        check(value[g.lhs].size() * value[g.rhs].size());
        value[i] = value[g.lhs] * value[g.rhs];
        release(g.lhs);
        release(g.rhs);
        break;
    }
  }
  SparsePoly out = value[c.output()];
  out.set_nvars(c.nvars());
  return out;
}

}  // namespace apolar
