#pragma once

// Shared gate loop for the differential-operator engines. A kernel supplies
//   block_size(k)                 slots in block k (k = d - gate degree)
//   coeffs(form)                  kernel-specific coefficient table for a form
//   apply(in, k, coeffs, out)     out += (sum_v c_v d/dx_v) applied to block k
// and the loop threads per-gate state through the circuit in topological
// order, releasing each state after its last use.

#include <optional>
#include <utility>
#include <vector>

#include "apolar/circuit.hpp"
#include "apolar/error.hpp"
#include "apolar/minor_engine.hpp"

namespace apolar::detail {

template <class Ring, class Kernel>
ExactScalar run_engine(const SkewCircuit& c, int d, const Ring& ring, Kernel& kernel, EvaluationStats* stats) {
  using Value = typename Ring::value_type;
  using Block = std::vector<Value>;

  if (!c.has_output()) fail(ErrorKind::DegreeMismatch, "empty circuit");
  if (!c.is_skew()) fail(ErrorKind::NonSkewMul, "circuit has a product of two non-leaf gates");
  if (c.degree() != d) {
    fail(ErrorKind::DegreeMismatch,
         "circuit degree " + std::to_string(c.degree()) + " differs from matrix dimension " + std::to_string(d));
  }

  const auto live = c.live_gates();
  auto uses = c.use_counts();
  std::vector<std::optional<Block>> state(c.size());
  std::size_t calls = 0;

  auto zero_block = [&](int k) { return Block(kernel.block_size(k), ring.zero()); };
  // The full minor of size d represents the operator "1" applied to the start polynomial.
  auto unit_block = [&](const Value& v) {
    Block b = zero_block(d);
    b[0] = v;
    return b;
  };
  auto release = [&](std::size_t g) {
    if (--uses[g] == 0) state[g].reset();
  };
  // Takes the operand's state, moving it out when this is its last use.
  auto take = [&](std::size_t g) -> Block {
    if (uses[g] == 1) {
      Block b = std::move(*state[g]);
      state[g].reset();
      uses[g] = 0;
      return b;
    }
    --uses[g];
    return *state[g];
  };

  for (std::size_t g = 0; g < c.size(); ++g) {
    if (!live[g]) continue;
    const Gate& gate = c.gate(g);
    const int k = d - gate.degree;
    switch (gate.kind) {
      case GateKind::Const:
        state[g] = unit_block(ring.from(gate.constant));
        break;
      case GateKind::Input: {
        Block out = zero_block(k);
        auto table = kernel.coeffs(LinearForm::variable(gate.var));
        kernel.apply(unit_block(ring.from(Rational(1))), k + 1, table, out);
        ++calls;
        state[g] = std::move(out);
        break;
      }
      case GateKind::MulLin: {
        Block out = zero_block(k);
        if (!gate.form.is_zero()) {
          auto table = kernel.coeffs(gate.form);
          kernel.apply(*state[gate.lhs], k + 1, table, out);
          ++calls;
        }
        release(gate.lhs);
        state[g] = std::move(out);
        break;
      }
      case GateKind::Scale: {
        Block out = take(gate.lhs);
        const Value factor = ring.from(gate.constant);
        for (auto& v : out) ring.scale(v, factor);
        state[g] = std::move(out);
        break;
      }
      case GateKind::Add: {
        if (gate.lhs == gate.rhs) {
          Block out = take(gate.lhs);
          Block copy = out;
          for (std::size_t i = 0; i < out.size(); ++i) ring.add(out[i], copy[i]);
          release(gate.rhs);
          state[g] = std::move(out);
          break;
        }
        Block out = take(gate.lhs);
        const Block& rhs = *state[gate.rhs];
        for (std::size_t i = 0; i < out.size(); ++i) {
          if (!Ring::is_zero(rhs[i])) ring.add(out[i], rhs[i]);
        }
        release(gate.rhs);
        state[g] = std::move(out);
        break;
      }
      case GateKind::Mul:
        fail(ErrorKind::NonSkewMul, "general multiplication gate in a skew evaluation");
    }
  }

  if (stats) {
    std::size_t dim = 0;
    for (int k = 0; k <= d; ++k) dim += kernel.block_size(k);
    stats->basis_dim = dim;
    stats->gates = c.size();
    stats->derivative_calls = calls;
  }
  const Block& result = *state[c.output()];
  return ring.to_scalar(result.at(0));
}

}  // namespace apolar::detail
