#include "qd/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {
namespace {

using Index = Eigen::Index;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("state: " + msg); }

void check_bijection(std::span<const int> map, int d) {
  std::vector<bool> hit(d, false);
  for (int x = 0; x < d; ++x) {
    if (map[x] < 0 || map[x] >= d || hit[map[x]]) fail("digit map is not a bijection");
    hit[map[x]] = true;
  }
}

}  // namespace

QState::QState(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_)
    if (d < 1) fail("register dimension must be positive");
  recompute_strides();
  std::size_t n = 1;
  for (int d : dims_) n *= static_cast<std::size_t>(d);
  amps_ = Eigen::VectorXcd::Zero(static_cast<Index>(n));
  amps_(0) = 1.0;
}

void QState::recompute_strides() {
  strides_.assign(dims_.size(), 1);
  for (int r = static_cast<int>(dims_.size()) - 2; r >= 0; --r)
    strides_[r] = strides_[r + 1] * static_cast<std::size_t>(dims_[r + 1]);
}

void QState::set_basis(std::span<const int> digits) {
  if (digits.size() != dims_.size()) fail("set_basis digit count mismatch");
  std::size_t idx = 0;
  for (int r = 0; r < num_regs(); ++r) {
    if (digits[r] < 0 || digits[r] >= dims_[r]) fail("set_basis digit out of range");
    idx += static_cast<std::size_t>(digits[r]) * strides_[r];
  }
  amps_.setZero();
  amps_(static_cast<Index>(idx)) = 1.0;
}

void QState::apply_unary(int reg, const Eigen::MatrixXcd& u) {
  const int d = dims_[reg];
  if (u.rows() != d || u.cols() != d) fail("apply_unary dimension mismatch");
  const std::size_t st = strides_[reg];
  const std::size_t block = st * static_cast<std::size_t>(d);
  Eigen::VectorXcd v(d), w(d);
  for (std::size_t hi = 0; hi < size(); hi += block)
    for (std::size_t lo = 0; lo < st; ++lo) {
      const std::size_t base = hi + lo;
      for (int k = 0; k < d; ++k) v(k) = amps_(static_cast<Index>(base + k * st));
      w.noalias() = u * v;
      for (int k = 0; k < d; ++k) amps_(static_cast<Index>(base + k * st)) = w(k);
    }
}

void QState::apply_map(int reg, std::span<const int> map) {
  const int d = dims_[reg];
  if (static_cast<int>(map.size()) != d) fail("apply_map size mismatch");
  check_bijection(map, d);
  const std::size_t st = strides_[reg];
  const std::size_t block = st * static_cast<std::size_t>(d);
  Eigen::VectorXcd v(d);
  for (std::size_t hi = 0; hi < size(); hi += block)
    for (std::size_t lo = 0; lo < st; ++lo) {
      const std::size_t base = hi + lo;
      for (int k = 0; k < d; ++k) v(map[k]) = amps_(static_cast<Index>(base + k * st));
      for (int k = 0; k < d; ++k) amps_(static_cast<Index>(base + k * st)) = v(k);
    }
}

void QState::apply_controlled_map(int ctrl, int tgt, const std::vector<std::vector<int>>& map) {
  if (ctrl == tgt) fail("controlled map needs distinct registers");
  const int dc = dims_[ctrl], dt = dims_[tgt];
  if (static_cast<int>(map.size()) != dc) fail("controlled map family size mismatch");
  for (const auto& m : map) check_bijection(m, dt);
  const std::size_t st = strides_[tgt];
  const std::size_t block = st * static_cast<std::size_t>(dt);
  Eigen::VectorXcd v(dt);
  for (std::size_t hi = 0; hi < size(); hi += block)
    for (std::size_t lo = 0; lo < st; ++lo) {
      const std::size_t base = hi + lo;
      const int c = digit(base, ctrl);
      const std::vector<int>& m = map[c];
      for (int k = 0; k < dt; ++k) v(m[k]) = amps_(static_cast<Index>(base + k * st));
      for (int k = 0; k < dt; ++k) amps_(static_cast<Index>(base + k * st)) = v(k);
    }
}

void QState::apply_controlled_unitary(int ctrl, int tgt,
                                      const std::function<Eigen::MatrixXcd(int)>& u) {
  if (ctrl == tgt) fail("controlled unitary needs distinct registers");
  const int dc = dims_[ctrl], dt = dims_[tgt];
  std::vector<Eigen::MatrixXcd> us;
  us.reserve(dc);
  for (int c = 0; c < dc; ++c) {
    us.push_back(u(c));
    if (us.back().rows() != dt || us.back().cols() != dt)
      fail("controlled unitary dimension mismatch");
  }
  const std::size_t st = strides_[tgt];
  const std::size_t block = st * static_cast<std::size_t>(dt);
  Eigen::VectorXcd v(dt), w(dt);
  for (std::size_t hi = 0; hi < size(); hi += block)
    for (std::size_t lo = 0; lo < st; ++lo) {
      const std::size_t base = hi + lo;
      const int c = digit(base, ctrl);
      for (int k = 0; k < dt; ++k) v(k) = amps_(static_cast<Index>(base + k * st));
      w.noalias() = us[c] * v;
      for (int k = 0; k < dt; ++k) amps_(static_cast<Index>(base + k * st)) = w(k);
    }
}

void QState::apply_controlled_unitary(
    std::span<const int> ctrls, int tgt,
    const std::function<Eigen::MatrixXcd(std::span<const int>)>& u) {
  const int dt = dims_[tgt];
  std::size_t nc = 1;
  for (int c : ctrls) {
    if (c == tgt) fail("controlled unitary needs distinct registers");
    nc *= static_cast<std::size_t>(dims_[c]);
  }
  std::vector<Eigen::MatrixXcd> us;
  us.reserve(nc);
  std::vector<int> digs(ctrls.size());
  for (std::size_t key = 0; key < nc; ++key) {
    std::size_t rest = key;
    for (int i = static_cast<int>(ctrls.size()) - 1; i >= 0; --i) {
      digs[i] = static_cast<int>(rest % dims_[ctrls[i]]);
      rest /= dims_[ctrls[i]];
    }
    us.push_back(u(digs));
    if (us.back().rows() != dt || us.back().cols() != dt)
      fail("controlled unitary dimension mismatch");
  }
  const std::size_t st = strides_[tgt];
  const std::size_t block = st * static_cast<std::size_t>(dt);
  Eigen::VectorXcd v(dt), w(dt);
  for (std::size_t hi = 0; hi < size(); hi += block)
    for (std::size_t lo = 0; lo < st; ++lo) {
      const std::size_t base = hi + lo;
      std::size_t key = 0;
      for (int c : ctrls) key = key * static_cast<std::size_t>(dims_[c]) + digit(base, c);
      for (int k = 0; k < dt; ++k) v(k) = amps_(static_cast<Index>(base + k * st));
      w.noalias() = us[key] * v;
      for (int k = 0; k < dt; ++k) amps_(static_cast<Index>(base + k * st)) = w(k);
    }
}

void QState::apply_phase(std::span<const int> regs,
                         const std::function<cx(std::span<const int>)>& ph) {
  std::vector<int> digs(regs.size());
  for (std::size_t idx = 0; idx < size(); ++idx) {
    for (std::size_t i = 0; i < regs.size(); ++i) digs[i] = digit(idx, regs[i]);
    amps_(static_cast<Index>(idx)) *= ph(digs);
  }
}

void QState::apply_multi_map(std::span<const int> regs,
                             const std::function<void(std::span<int>)>& f) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps_.size());
  std::vector<int> digs(regs.size()), before(regs.size());
  for (std::size_t idx = 0; idx < size(); ++idx) {
    std::ptrdiff_t delta = 0;
    for (std::size_t i = 0; i < regs.size(); ++i) digs[i] = digit(idx, regs[i]);
    before = digs;
    f(digs);
    for (std::size_t i = 0; i < regs.size(); ++i) {
      if (digs[i] < 0 || digs[i] >= dims_[regs[i]]) fail("multi map digit out of range");
      delta += (static_cast<std::ptrdiff_t>(digs[i]) - before[i]) *
               static_cast<std::ptrdiff_t>(strides_[regs[i]]);
    }
    out(static_cast<Index>(idx) + delta) += amps_(static_cast<Index>(idx));
  }
  if ((out.array() != out.array()).any()) fail("multi map produced NaN");
  amps_.swap(out);
}

std::vector<double> QState::distribution(int reg) const {
  std::vector<double> p(dims_[reg], 0.0);
  for (std::size_t idx = 0; idx < size(); ++idx)
    p[digit(idx, reg)] += std::norm(amps_(static_cast<Index>(idx)));
  return p;
}

std::vector<double> QState::joint_distribution(std::span<const int> regs) const {
  std::size_t n = 1;
  for (int r : regs) n *= static_cast<std::size_t>(dims_[r]);
  std::vector<double> p(n, 0.0);
  for (std::size_t idx = 0; idx < size(); ++idx) {
    std::size_t key = 0;
    for (int r : regs) key = key * static_cast<std::size_t>(dims_[r]) + digit(idx, r);
    p[key] += std::norm(amps_(static_cast<Index>(idx)));
  }
  return p;
}

double QState::project(int reg, int value, bool renormalize) {
  double kept = 0.0;
  for (std::size_t idx = 0; idx < size(); ++idx) {
    if (digit(idx, reg) == value)
      kept += std::norm(amps_(static_cast<Index>(idx)));
    else
      amps_(static_cast<Index>(idx)) = 0.0;
  }
  if (renormalize && kept > 0.0) amps_ /= std::sqrt(kept);
  return kept;
}

double QState::project_out(int reg, int value, bool renormalize) {
  double kept = project(reg, value, renormalize);
  if (kept == 0.0) {
    // Zero state: still drop the register to keep shapes consistent.
    std::vector<int> dims = dims_;
    dims.erase(dims.begin() + reg);
    QState fresh(dims);
    fresh.amps_.setZero();
    *this = std::move(fresh);
    return kept;
  }
  remove_reg(reg, value);
  return kept;
}

int QState::measure(int reg, Rng& rng) {
  std::vector<double> p = distribution(reg);
  std::discrete_distribution<int> pick(p.begin(), p.end());
  int outcome = pick(rng);
  project(reg, outcome, true);
  return outcome;
}

void QState::insert_reg(int pos, int dim, int value) {
  if (dim < 1 || value < 0 || value >= dim) fail("insert_reg bad dimension or value");
  std::vector<int> dims = dims_;
  dims.insert(dims.begin() + pos, dim);
  QState out(dims);
  out.amps_.setZero();
  // Old index splits as hi * B + lo with B the joint size of regs pos..end.
  const std::size_t hi_block = (pos == 0) ? size() : strides_[pos - 1];
  for (std::size_t idx = 0; idx < size(); ++idx) {
    const std::size_t hi = idx / hi_block;
    const std::size_t lo = idx % hi_block;
    const std::size_t nidx = (hi * static_cast<std::size_t>(dim) + value) * hi_block + lo;
    out.amps_(static_cast<Index>(nidx)) = amps_(static_cast<Index>(idx));
  }
  *this = std::move(out);
}

void QState::remove_reg(int reg, int value) {
  double kept = 0.0, dropped = 0.0;
  for (std::size_t idx = 0; idx < size(); ++idx) {
    double w = std::norm(amps_(static_cast<Index>(idx)));
    (digit(idx, reg) == value ? kept : dropped) += w;
  }
  if (dropped > 1e-18 * std::max(kept, 1.0))
    fail("remove_reg: register is not in the expected basis state");
  std::vector<int> dims = dims_;
  dims.erase(dims.begin() + reg);
  QState out(dims);
  out.amps_.setZero();
  const std::size_t st = strides_[reg];
  const std::size_t block = st * static_cast<std::size_t>(dims_[reg]);
  for (std::size_t hi = 0; hi < size(); hi += block)
    for (std::size_t lo = 0; lo < st; ++lo)
      out.amps_(static_cast<Index>(hi / block * st + lo)) =
          amps_(static_cast<Index>(hi + static_cast<std::size_t>(value) * st + lo));
  *this = std::move(out);
}

double QState::bell_contract(int reg_a, int reg_b) {
  if (reg_a == reg_b || dims_[reg_a] != dims_[reg_b]) fail("bell_contract register mismatch");
  if (reg_a > reg_b) std::swap(reg_a, reg_b);
  const int d = dims_[reg_a];
  std::vector<int> dims = dims_;
  dims.erase(dims.begin() + reg_b);
  dims.erase(dims.begin() + reg_a);
  if (dims.empty()) dims.push_back(1);
  QState out(dims);
  out.amps_.setZero();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t idx = 0; idx < size(); ++idx) {
    if (digit(idx, reg_a) != digit(idx, reg_b)) continue;
    std::size_t nidx = 0;
    for (int r = 0; r < num_regs(); ++r) {
      if (r == reg_a || r == reg_b) continue;
      nidx = nidx * static_cast<std::size_t>(dims_[r]) + digit(idx, r);
    }
    out.amps_(static_cast<Index>(nidx)) += scale * amps_(static_cast<Index>(idx));
  }
  double prob = out.amps_.squaredNorm();
  if (prob > 0.0) out.amps_ /= std::sqrt(prob);
  *this = std::move(out);
  return prob;
}

void QState::normalize() {
  double n = std::sqrt(norm2());
  if (n > 0.0) amps_ /= n;
}

int word_value(const FiniteGroup& g, const Lattice& l, Corner c,
               std::span<const int> edge_digits) {
  int w = g.identity();
  for (WordFactor f : l.word(c)) {
    int v = edge_digits[f.edge];
    w = g.op(w, f.incoming ? v : g.inverse(v));
  }
  return w;
}

void apply_face_mult(QState& psi, const FiniteGroup& g, const Lattice& l, int face, int h) {
  const int n = g.order();
  std::vector<int> map(n);
  for (const Dart& d : l.face(face).boundary) {
    if (d.fwd) {
      for (int x = 0; x < n; ++x) map[x] = g.op(h, x);
    } else {
      for (int x = 0; x < n; ++x) map[x] = g.op(x, g.inverse(h));
    }
    psi.apply_map(d.edge, map);
  }
}

namespace {

// acc[pi_h(j)] += psi[j] for the A_p(h) index permutation, in one pass. The
// permutation shifts each boundary edge's digit independently, so the index
// delta is tracked incrementally by an odometer instead of decoded per index.
void accumulate_face_mult(Eigen::VectorXcd& acc, const QState& psi, const FiniteGroup& g,
                          const Lattice& l, int face, int h) {
  const int regs = psi.num_regs();
  std::vector<std::vector<std::ptrdiff_t>> delta(regs);
  const int n = g.order();
  for (const Dart& d : l.face(face).boundary) {
    std::vector<int> map(n);
    if (d.fwd) {
      for (int x = 0; x < n; ++x) map[x] = g.op(h, x);
    } else {
      for (int x = 0; x < n; ++x) map[x] = g.op(x, g.inverse(h));
    }
    std::vector<std::ptrdiff_t>& dl = delta[d.edge];
    if (dl.empty()) {
      dl.resize(n);
      for (int x = 0; x < n; ++x)
        dl[x] = (static_cast<std::ptrdiff_t>(map[x]) - x) *
                static_cast<std::ptrdiff_t>(psi.stride(d.edge));
    } else {
      // Edge visited twice by this face: compose the two digit maps.
      std::vector<std::ptrdiff_t> prev = dl;
      const std::ptrdiff_t st = static_cast<std::ptrdiff_t>(psi.stride(d.edge));
      for (int x = 0; x < n; ++x) {
        int mid = x + static_cast<int>(prev[x] / st);
        dl[x] = prev[x] + (static_cast<std::ptrdiff_t>(map[mid]) - mid) * st;
      }
    }
  }
  std::vector<int> dig(regs, 0);
  std::ptrdiff_t dsum = 0;
  for (int r = 0; r < regs; ++r)
    if (!delta[r].empty()) dsum += delta[r][0];
  const std::size_t n_amp = psi.size();
  for (std::size_t idx = 0;; ++idx) {
    acc(static_cast<Eigen::Index>(static_cast<std::ptrdiff_t>(idx) + dsum)) +=
        psi.amps()(static_cast<Eigen::Index>(idx));
    if (idx + 1 == n_amp) break;
    int r = regs - 1;
    for (;;) {
      if (!delta[r].empty()) dsum -= delta[r][dig[r]];
      if (++dig[r] < psi.dim(r)) {
        if (!delta[r].empty()) dsum += delta[r][dig[r]];
        break;
      }
      dig[r] = 0;
      if (!delta[r].empty()) dsum += delta[r][0];
      --r;
    }
  }
}

}  // namespace

void apply_plaquette_projector(QState& psi, const FiniteGroup& g, const Lattice& l, int face) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(psi.amps().size());
  for (int h = 0; h < g.order(); ++h) accumulate_face_mult(acc, psi, g, l, face, h);
  psi.amps() = acc / static_cast<double>(g.order());
}

double plaquette_expectation(const QState& psi, const FiniteGroup& g, const Lattice& l,
                             int face) {
  QState proj = psi;
  apply_plaquette_projector(proj, g, l, face);
  return psi.inner(proj).real();
}

double vertex_expectation(const QState& psi, const FiniteGroup& g, const Lattice& l, int vertex) {
  return word_distribution(psi, g, l, {vertex, 0})[g.identity()];
}

std::vector<double> word_distribution(const QState& psi, const FiniteGroup& g, const Lattice& l,
                                      Corner corner) {
  std::vector<double> p(g.order(), 0.0);
  std::vector<int> digs(l.edge_count());
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    double w = std::norm(psi.amps()(static_cast<Eigen::Index>(idx)));
    if (w == 0.0) continue;
    for (int e = 0; e < l.edge_count(); ++e) digs[e] = psi.digit(idx, e);
    p[word_value(g, l, corner, digs)] += w;
  }
  return p;
}

QState ground_state(const FiniteGroup& g, const Lattice& l) {
  std::vector<int> dims(l.edge_count(), g.order());
  QState psi(dims);
  for (int f = 0; f < l.face_count(); ++f) apply_plaquette_projector(psi, g, l, f);
  psi.normalize();
  return psi;
}

}  // namespace qd
