#include "apolar/apolar_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace apolar {

StructureTensor::StructureTensor(std::size_t dim, std::vector<std::string> labels)
    : dim_(dim), labels_(std::move(labels)) {}

void StructureTensor::add(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
  if (i >= dim_ || j >= dim_ || k >= dim_) fail(ErrorKind::IndexOutOfRange, "tensor index out of range");
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(Key{i, j, k}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational StructureTensor::get(std::size_t i, std::size_t j, std::size_t k) const {
  auto it = entries_.find(Key{i, j, k});
  return it == entries_.end() ? Rational(0) : it->second;
}

std::size_t StructureTensor::nonzero_pairs() const {
  std::size_t count = 0;
  std::optional<std::pair<std::size_t, std::size_t>> last;
  for (const auto& [key, v] : entries_) {
    std::pair<std::size_t, std::size_t> ij{std::get<0>(key), std::get<1>(key)};
    if (last != ij) {
      ++count;
      last = ij;
    }
  }
  return count;
}

std::optional<std::string> StructureTensor::first_difference(const StructureTensor& o) const {
  if (dim_ != o.dim_) return "dimension " + std::to_string(dim_) + " vs " + std::to_string(o.dim_);
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  auto describe = [](const Key& k, const Rational& x, const Rational& y) {
    std::ostringstream os;
    os << "(" << std::get<0>(k) << "," << std::get<1>(k) << "," << std::get<2>(k) << "): " << to_string(x) << " vs "
       << to_string(y);
    return os.str();
  };
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      return describe(a->first, a->second, Rational(0));
    }
    if (a == entries_.end() || b->first < a->first) return describe(b->first, Rational(0), b->second);
    if (a->second != b->second) return describe(a->first, a->second, b->second);
    ++a;
    ++b;
  }
  return std::nullopt;
}

StructureTensor TensorDecomposition::sum() const {
  const std::size_t r = dim;
  std::vector<Rational> dense(r * r * r, Rational(0));
  for (const auto& t : terms) {
    if (t.x.size() != r || t.y.size() != r || t.z.size() != r) {
      fail(ErrorKind::BadDims, "simple term does not match the tensor dimension");
    }
    std::vector<std::size_t> zs;
    for (std::size_t k = 0; k < r; ++k) {
      if (t.z[k] != 0) zs.push_back(k);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (t.x[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (t.y[j] == 0) continue;
        const Rational xy = t.x[i] * t.y[j];
        for (std::size_t k : zs) dense[(i * r + j) * r + k] += xy * t.z[k];
      }
    }
  }
  StructureTensor out(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) out.add(i, j, k, dense[(i * r + j) * r + k]);
    }
  }
  return out;
}

ApolarAlgebra::ApolarAlgebra(const SparsePoly& f, const ApolarLimits& limits) : f_(f) {
  if (f.is_zero() || !f.is_homogeneous()) fail(ErrorKind::InvalidArgument, "apolar algebra needs a nonzero homogeneous f");
  auto derivs = all_derivatives(f, DiffSpanLimits{limits.max_derivatives});
  std::stable_sort(derivs.begin(), derivs.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return b.first < a.first;
  });
  for (auto& [alpha, image] : derivs) {
    if (span_.insert(image)) {
      basis_.push_back(alpha);
      images_.push_back(std::move(image));
    }
  }
  finish();
}

ApolarAlgebra::ApolarAlgebra(const SparsePoly& f, std::vector<Monomial> basis, const ApolarLimits& limits)
    : f_(f), basis_(std::move(basis)) {
  if (f.is_zero() || !f.is_homogeneous()) fail(ErrorKind::InvalidArgument, "apolar algebra needs a nonzero homogeneous f");
  for (const auto& alpha : basis_) {
    images_.push_back(f.derivative(alpha));
    if (!span_.insert(images_.back())) {
      fail(ErrorKind::InvalidArgument, "basis image of " + alpha.to_string("d") + " is dependent on earlier ones");
    }
  }
  const std::size_t expected = diff_span_dim(f, DiffSpanLimits{limits.max_derivatives});
  if (basis_.size() != expected) {
    fail(ErrorKind::InvalidArgument, "basis has " + std::to_string(basis_.size()) + " elements but Diff(f) has dimension " +
                                         std::to_string(expected));
  }
  finish();
}

void ApolarAlgebra::finish() {
  const int d = f_.degree();
  bool have_unit = false;
  bool have_top = false;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].is_one()) {
      unit_ = i;
      have_unit = true;
    }
    if (basis_[i].degree() == d) {
      top_ = i;
      have_top = true;
    }
  }
  if (!have_unit || !have_top) fail(ErrorKind::InvalidArgument, "basis lacks the unit or a top-degree operator");
  top_pairing_ = images_[top_].coefficient(Monomial());
}

std::vector<std::size_t> ApolarAlgebra::degree_one() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].degree() == 1) out.push_back(i);
  }
  return out;
}

std::string ApolarAlgebra::label(std::size_t i) const { return basis_.at(i).to_string("d"); }

std::vector<std::string> ApolarAlgebra::labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(label(i));
  return out;
}

std::vector<Rational> ApolarAlgebra::coordinates(const SparsePoly& p) const { return span_.coordinates(p); }

std::vector<Rational> ApolarAlgebra::project(const SparsePoly& p) const { return span_.project(p); }

std::vector<Rational> ApolarAlgebra::operator_element(const Monomial& alpha) const {
  return coordinates(f_.derivative(alpha));
}

SparsePoly ApolarAlgebra::realize(const std::vector<Rational>& a) const {
  if (a.size() != dim()) fail(ErrorKind::BadDims, "element has the wrong length");
  SparsePoly p(f_.nvars());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) p += images_[i] * a[i];
  }
  return p;
}

std::vector<Rational> ApolarAlgebra::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  if (a.size() != dim()) fail(ErrorKind::BadDims, "element has the wrong length");
  const SparsePoly p = realize(b);
  SparsePoly q(f_.nvars());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) q += p.derivative(basis_[i]) * a[i];
  }
  return coordinates(q);
}

StructureTensor structure_tensor(const ApolarAlgebra& a) {
  StructureTensor t(a.dim(), a.labels());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const SparsePoly image = a.images()[j].derivative(a.basis()[i]);
      if (image.is_zero()) continue;
      const auto coords = a.coordinates(image);
      for (std::size_t k = 0; k < coords.size(); ++k) t.add(i, j, k, coords[k]);
    }
  }
  return t;
}

std::vector<Rational> tensor_multiply(const StructureTensor& t, const std::vector<Rational>& a,
                                      const std::vector<Rational>& b) {
  if (a.size() != t.dim() || b.size() != t.dim()) fail(ErrorKind::BadDims, "element has the wrong length");
  std::vector<Rational> out(t.dim(), Rational(0));
  for (const auto& [key, v] : t.entries()) {
    const auto [i, j, k] = key;
    if (a[i] == 0 || b[j] == 0) continue;
    out[k] += a[i] * b[j] * v;
  }
  return out;
}

ExactScalar algebra_evaluate(const ApolarAlgebra& a, const SkewCircuit& c) {
  return algebra_evaluate(a, structure_tensor(a), c);
}

ExactScalar algebra_evaluate(const ApolarAlgebra& a, const StructureTensor& t, const SkewCircuit& c) {
  using Element = std::vector<Rational>;
  if (!c.has_output() || c.degree() != a.polynomial().degree()) {
    fail(ErrorKind::DegreeMismatch, "circuit degree differs from deg f = " + std::to_string(a.polynomial().degree()));
  }
  const std::size_t r = a.dim();
  std::map<int, Element> var_cache;
  auto variable = [&](int v) -> const Element& {
    auto it = var_cache.find(v);
    if (it == var_cache.end()) it = var_cache.emplace(v, a.operator_element(Monomial::variable(v))).first;
    return it->second;
  };
  auto form_element = [&](const LinearForm& form) {
    Element e(r, Rational(0));
    for (const auto& [v, coeff] : form.terms()) {
      const Element& x = variable(v);
      for (std::size_t i = 0; i < r; ++i) {
        if (x[i] != 0) e[i] += coeff * x[i];
      }
    }
    return e;
  };

  const auto live = c.live_gates();
  auto uses = c.use_counts();
  std::vector<std::optional<Element>> value(c.size());
  auto release = [&](std::size_t g) {
    if (--uses[g] == 0) value[g].reset();
  };
  for (std::size_t g = 0; g < c.size(); ++g) {
    if (!live[g]) continue;
    const Gate& gate = c.gate(g);
    Element out;
    switch (gate.kind) {
      case GateKind::Const:
        out.assign(r, Rational(0));
        out[a.unit()] = gate.constant;
        break;
      case GateKind::Input:
        out = variable(gate.var);
        break;
      case GateKind::MulLin:
        out = tensor_multiply(t, form_element(gate.form), *value[gate.lhs]);
        release(gate.lhs);
        break;
      case GateKind::Scale:
        out = *value[gate.lhs];
        for (auto& x : out) x *= gate.constant;
        release(gate.lhs);
        break;
      case GateKind::Add:
        out = *value[gate.lhs];
        for (std::size_t i = 0; i < r; ++i) out[i] += (*value[gate.rhs])[i];
        release(gate.lhs);
        release(gate.rhs);
        break;
      case GateKind::Mul:
        out = tensor_multiply(t, *value[gate.lhs], *value[gate.rhs]);
        release(gate.lhs);
        release(gate.rhs);
        break;
    }
    value[g] = std::move(out);
  }
  return ExactScalar((*value[c.output()])[a.top()] * a.top_pairing());
}

TensorDecomposition waring_to_tensor(const SparsePoly& f, const std::vector<WaringTerm>& decomposition) {
  if (f.is_zero() || !f.is_homogeneous()) fail(ErrorKind::InvalidArgument, "f must be nonzero and homogeneous");
  const int d = f.degree();
  SparsePoly check(f.nvars());
  std::vector<std::vector<SparsePoly>> powers;  // powers[i][e] = l_i^e
  for (const auto& term : decomposition) {
    std::vector<SparsePoly> p{SparsePoly::constant(1, f.nvars())};
    const SparsePoly l = term.form.to_poly();
    for (int e = 1; e <= d; ++e) p.push_back(p.back() * l);
    check += p[d] * term.coefficient;
    powers.push_back(std::move(p));
  }
  if (!(check == f)) fail(ErrorKind::NotADecomposition, "sum of powers is " + check.to_string());

  const ApolarAlgebra algebra(f);
  const std::size_t r = algebra.dim();
  const int nodes = 3 * d + 1;

  // w solves sum_t w_t eps_t^j = [j == d] for j = 0..3d with eps_t = t + 1;
  // the products below are polynomials in eps of degree <= 3d whose eps^d
  // coefficient is the wanted entry.
  std::vector<std::vector<Rational>> vander(nodes, std::vector<Rational>(nodes));
  std::vector<Rational> rhs(nodes, Rational(0));
  rhs[d] = 1;
  for (int j = 0; j < nodes; ++j) {
    for (int t = 0; t < nodes; ++t) {
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(t + 1), static_cast<unsigned long>(j));
      vander[j][t] = Rational(p);
    }
  }
  const auto weights = solve_linear(vander, rhs);
  if (!weights) fail(ErrorKind::VerificationFailure, "interpolation system is singular");

  std::vector<Rational> falling(d + 1);  // d! / (d - j)!
  falling[0] = 1;
  for (int j = 1; j <= d; ++j) falling[j] = falling[j - 1] * (d - j + 1);

  TensorDecomposition out{r, {}};
  for (std::size_t i = 0; i < decomposition.size(); ++i) {
    const WaringTerm& term = decomposition[i];
    for (int t = 0; t < nodes; ++t) {
      const Rational eps = t + 1;
      // d^alpha evaluated at eps * a, where a are the coefficients of l_i.
      std::vector<Rational> point(r);
      for (std::size_t b = 0; b < r; ++b) {
        Rational v = 1;
        for (auto [var, e] : algebra.basis()[b].powers()) {
          for (int s = 0; s < e; ++s) v *= term.form.coefficient(var) * eps;
        }
        point[b] = v;
      }
      SparsePoly z(f.nvars());
      Rational eps_pow = 1;  // eps^(d - j), built from j = d down
      for (int j = d; j >= 0; --j) {
        z += powers[i][d - j] * (term.coefficient * falling[j] * eps_pow);
        eps_pow *= eps;
      }
      SimpleTerm simple{point, point, algebra.project(z)};
      for (auto& x : simple.x) x *= (*weights)[t];
      out.terms.push_back(std::move(simple));
    }
  }

  const StructureTensor expected = structure_tensor(algebra);
  if (auto diff = out.sum().first_difference(expected)) {
    fail(ErrorKind::VerificationFailure, "decomposition differs from the structure tensor at " + *diff);
  }
  return out;
}

std::string DetBasisLabel::to_string() const {
  auto join = [](const IndexSequence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s[i]);
    }
    return out;
  };
  return "(" + join(rows) + "|" + join(cols) + ")";
}

namespace {

bool disjoint(const IndexSequence& a, const IndexSequence& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

IndexSequence sorted_union(const IndexSequence& a, const IndexSequence& b) {
  IndexSequence out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SignedLabel det_basis_product(const DetBasisLabel& p, const DetBasisLabel& q) {
  if (!disjoint(p.rows, q.rows) || !disjoint(p.cols, q.cols)) return {};
  return {merge_sign(p.rows, q.rows) * merge_sign(p.cols, q.cols),
          {sorted_union(p.rows, q.rows), sorted_union(p.cols, q.cols)}};
}

std::vector<DetBasisLabel> det_label_basis(int n) {
  std::vector<DetBasisLabel> out;
  for (int k = 0; k <= n; ++k) {
    const auto seqs = increasing_sequences(n, k);
    for (const auto& rows : seqs) {
      for (const auto& cols : seqs) out.push_back({rows, cols});
    }
  }
  return out;
}

std::size_t det_label_index(const DetBasisLabel& l, int n) {
  const int k = static_cast<int>(l.rows.size());
  if (static_cast<int>(l.cols.size()) != k || k > n) fail(ErrorKind::IndexOutOfRange, "label sizes do not match");
  std::size_t offset = 0;
  for (int s = 0; s < k; ++s) offset += binomial(n, s) * binomial(n, s);
  return offset + colex_rank(l.rows) * binomial(n, k) + colex_rank(l.cols);
}

Monomial det_label_monomial(const DetBasisLabel& l, int n) {
  std::vector<std::pair<int, int>> powers;
  for (std::size_t t = 0; t < l.rows.size(); ++t) powers.emplace_back(det_variable(l.rows[t], l.cols[t], n), 1);
  return Monomial(std::move(powers));
}

StructureTensor det_label_tensor(int n) {
  const auto labels = det_label_basis(n);
  std::vector<std::string> names;
  for (const auto& l : labels) names.push_back(l.to_string());
  StructureTensor t(labels.size(), std::move(names));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const SignedLabel p = det_basis_product(labels[i], labels[j]);
      if (p.sign != 0) t.add(i, j, det_label_index(p.label, n), Rational(p.sign));
    }
  }
  return t;
}

}  // namespace apolar
