// SPDX-License-Identifier: Apache-2.0
#include "qpriv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qpriv/parallel.hpp"

namespace qpriv {

namespace {

// Largest matrix side we are willing to eigendecompose or assemble densely.
constexpr std::uint64_t kEigSideCap = 1 << 12;
// Largest scratch matrix (entries) for the reshaped-family computation.
constexpr std::uint64_t kScratchCap = std::uint64_t{1} << 23;

void check_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (const std::string& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw std::invalid_argument("register sets overlap on: " + x);
    }
  }
}

std::vector<std::string> set_union(std::initializer_list<const std::vector<std::string>*> sets) {
  std::vector<std::string> out;
  for (const auto* s : sets) {
    for (const std::string& name : *s) out.push_back(name);
  }
  return out;
}

}  // namespace

PureState tensor(const PureState& a, const PureState& b) {
  RegisterLayout layout = RegisterLayout::concat(a.layout(), b.layout());
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto db = static_cast<Eigen::Index>(b.dim());
  Vector v(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    v.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
  }
  return PureState(std::move(layout), std::move(v));
}

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}
}  // namespace

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  RegisterLayout layout = RegisterLayout::concat(a.layout(), b.layout());
  return DensityMatrix(std::move(layout), kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const PureState& b) {
  return tensor(a, b.to_density());
}

DensityMatrix tensor(const PureState& a, const DensityMatrix& b) {
  return tensor(a.to_density(), b);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  const RegisterLayout& layout = rho.layout();
  RegisterLayout kept = layout.sub_layout(keep);
  std::vector<std::string> rest = layout.complement(kept.names());
  FieldIndexer fk(layout, kept.names());
  FieldIndexer fr(layout, rest);

  const std::uint64_t dk = fk.dim();
  const std::uint64_t dr = fr.dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::uint64_t i = 0; i < dk; ++i) {
    for (std::uint64_t j = 0; j < dk; ++j) {
      Complex sum = 0;
      for (std::uint64_t t = 0; t < dr; ++t) {
        std::uint64_t row = fk.deposit(i, fr.deposit(t, 0));
        std::uint64_t col = fk.deposit(j, fr.deposit(t, 0));
        sum += rho.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return DensityMatrix(std::move(kept), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, const std::vector<std::string>& keep) {
  const RegisterLayout& layout = psi.layout();
  RegisterLayout kept = layout.sub_layout(keep);
  std::vector<std::string> rest = layout.complement(kept.names());
  FieldIndexer fk(layout, kept.names());
  FieldIndexer fr(layout, rest);

  const auto dk = static_cast<Eigen::Index>(fk.dim());
  const auto dr = static_cast<Eigen::Index>(fr.dim());
  Matrix w(dk, dr);
  const std::uint64_t dim = psi.dim();
  for (std::uint64_t f = 0; f < dim; ++f) {
    w(static_cast<Eigen::Index>(fk.extract(f)), static_cast<Eigen::Index>(fr.extract(f))) =
        psi.amplitudes()[static_cast<Eigen::Index>(f)];
  }
  Matrix out = w * w.adjoint();
  return DensityMatrix(std::move(kept), std::move(out));
}

namespace detail {

std::vector<double> hermitian_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  for (double& v : out) {
    if (v < kEigFloor) {
      throw std::domain_error("matrix has eigenvalue " + std::to_string(v) +
                              " below the validity floor");
    }
    if (v < 0) v = 0;
  }
  return out;
}

double weighted_pure_block_entropy(const RegisterLayout& layout,
                                   const std::vector<std::pair<double, const Vector*>>& members,
                                   const std::vector<std::string>& block) {
  RegisterLayout kept = layout.sub_layout(block);
  const std::uint64_t m = members.size();
  if (m == 0) throw std::invalid_argument("empty ensemble");

  // Full-width block: the nonzero spectrum is that of the weighted Gram
  // matrix of the member vectors, no reshaping needed.
  if (kept.total_width() == layout.total_width()) {
    Matrix gram(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::uint64_t i = 0; i < m; ++i) {
      for (std::uint64_t j = i; j < m; ++j) {
        Complex inner = members[j].second->dot(*members[i].second);
        Complex v = std::sqrt(members[i].first * members[j].first) * inner;
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::conj(v);
        gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      }
    }
    return entropy_of_spectrum(hermitian_spectrum(gram));
  }

  std::vector<std::string> rest = layout.complement(kept.names());
  FieldIndexer fk(layout, kept.names());
  FieldIndexer fr(layout, rest);
  const std::uint64_t d_t = fk.dim();
  const std::uint64_t d_r = fr.dim();
  const std::uint64_t cols = m * d_r;

  if (std::min<std::uint64_t>(d_t, cols) > kEigSideCap || d_t * cols > kScratchCap) {
    throw std::invalid_argument("block entropy exceeds the dense computation budget");
  }

  // Stack the weighted reshapes side by side; both Gram forms of the stack
  // share the nonzero spectrum of the reduced state.
  Matrix w(static_cast<Eigen::Index>(d_t), static_cast<Eigen::Index>(cols));
  const std::uint64_t dim = layout.dim();
  for (std::uint64_t i = 0; i < m; ++i) {
    const double scale = std::sqrt(members[i].first);
    const Vector& amp = *members[i].second;
    const std::uint64_t base = i * d_r;
    for (std::uint64_t f = 0; f < dim; ++f) {
      w(static_cast<Eigen::Index>(fk.extract(f)),
        static_cast<Eigen::Index>(base + fr.extract(f))) =
          scale * amp[static_cast<Eigen::Index>(f)];
    }
  }
  Matrix gram = (d_t <= cols) ? Matrix(w * w.adjoint()) : Matrix(w.adjoint() * w);
  return entropy_of_spectrum(hermitian_spectrum(gram));
}

}  // namespace detail

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  return detail::hermitian_spectrum(rho.matrix());
}

double entropy_of_spectrum(const std::vector<double>& spectrum) {
  double s = 0;
  for (double p : spectrum) {
    if (p < kEigClip) continue;
    s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(eigenvalues(rho));
}

double cq_entropy(const CqState& cq, const std::vector<std::string>& regs) {
  std::vector<std::string> classical;
  std::vector<std::string> quantum;
  for (const std::string& name : regs) {
    if (cq.is_classical_name(name)) {
      classical.push_back(name);
    } else if (cq.quantum_layout().has(name)) {
      quantum.push_back(name);
    } else {
      throw std::invalid_argument("unknown register or label: " + name);
    }
  }

  // Positions of the requested classical components within the label tuple.
  std::vector<std::size_t> label_pos;
  for (const std::string& name : classical) {
    for (std::size_t i = 0; i < cq.label_names().size(); ++i) {
      if (cq.label_names()[i] == name) label_pos.push_back(i);
    }
  }

  std::map<std::vector<std::string>, std::vector<const CqState::Member*>> groups;
  for (const CqState::Member& m : cq.members()) {
    std::vector<std::string> key;
    key.reserve(label_pos.size());
    for (std::size_t p : label_pos) key.push_back(m.label[p]);
    groups[key].push_back(&m);
  }

  std::vector<std::pair<double, const std::vector<const CqState::Member*>*>> work;
  work.reserve(groups.size());
  double label_entropy = 0;
  for (const auto& [key, group] : groups) {
    double pg = 0;
    for (const auto* m : group) pg += m->prob;
    if (pg < kEigClip) continue;
    label_entropy -= pg * std::log2(pg);
    work.emplace_back(pg, &group);
  }
  if (quantum.empty()) return label_entropy;

  std::vector<double> block_entropy(work.size(), 0.0);
  parallel_for(work.size(), [&](std::size_t w) {
    const auto& [pg, group_ptr] = work[w];
    const auto& group = *group_ptr;
    bool group_pure = true;
    for (const auto* m : group) {
      if (!std::holds_alternative<PureState>(m->state)) group_pure = false;
    }
    if (group_pure) {
      std::vector<std::pair<double, const Vector*>> family;
      family.reserve(group.size());
      for (const auto* m : group) {
        family.emplace_back(m->prob / pg, &std::get<PureState>(m->state).amplitudes());
      }
      block_entropy[w] = detail::weighted_pure_block_entropy(cq.quantum_layout(), family, quantum);
    } else {
      RegisterLayout kept = cq.quantum_layout().sub_layout(quantum);
      if (kept.dim() > kEigSideCap) {
        throw std::invalid_argument("mixed-member block exceeds the dense assembly budget");
      }
      Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(kept.dim()),
                                static_cast<Eigen::Index>(kept.dim()));
      for (const auto* m : group) {
        DensityMatrix red = std::holds_alternative<PureState>(m->state)
                                ? partial_trace(std::get<PureState>(m->state), quantum)
                                : partial_trace(std::get<DensityMatrix>(m->state), quantum);
        sum += (m->prob / pg) * red.matrix();
      }
      block_entropy[w] = entropy_of_spectrum(detail::hermitian_spectrum(sum));
    }
  });

  double avg_block_entropy = 0;
  for (std::size_t w = 0; w < work.size(); ++w) {
    avg_block_entropy += work[w].first * block_entropy[w];
  }
  return label_entropy + avg_block_entropy;
}

namespace {

double density_block_entropy(const DensityMatrix& rho, const std::vector<std::string>& regs) {
  if (regs.empty()) return 0;
  if (rho.layout().sub_layout(regs).total_width() == rho.width()) {
    return von_neumann_entropy(rho);
  }
  return von_neumann_entropy(partial_trace(rho, regs));
}

}  // namespace

double conditional_mutual_information(const DensityMatrix& rho,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c) {
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  double s_ac = density_block_entropy(rho, set_union({&a, &c}));
  double s_bc = density_block_entropy(rho, set_union({&b, &c}));
  double s_c = density_block_entropy(rho, c);
  double s_abc = density_block_entropy(rho, set_union({&a, &b, &c}));
  return s_ac + s_bc - s_c - s_abc;
}

double conditional_mutual_information(const CqState& cq,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c) {
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  double s_ac = cq_entropy(cq, set_union({&a, &c}));
  double s_bc = cq_entropy(cq, set_union({&b, &c}));
  double s_c = cq_entropy(cq, c);
  double s_abc = cq_entropy(cq, set_union({&a, &b, &c}));
  return s_ac + s_bc - s_c - s_abc;
}

double mutual_information(const DensityMatrix& rho,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  return conditional_mutual_information(rho, a, b, {});
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.layout() == sigma.layout())) {
    throw std::invalid_argument("trace distance requires matching layouts");
  }
  Matrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double fidelity(const PureState& a, const PureState& b) {
  if (!(a.layout() == b.layout())) {
    throw std::invalid_argument("fidelity requires matching layouts");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

}  // namespace qpriv
