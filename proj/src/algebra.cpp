#include "su6/algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "su6/error.hpp"

namespace su6 {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

std::string describe(const GeneratorBasis& basis, std::size_t i) {
  std::ostringstream os;
  os << "#" << (i + 1);
  if (i < basis.labels().size()) os << " (" << basis.labels()[i].name() << ")";
  return os.str();
}

} // namespace


bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs(a - b) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() &&
         max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::array<ComplexMatrix, 3> pauli_matrices() {
  std::array<ComplexMatrix, 3> s;
  for (auto& m : s) m = ComplexMatrix::Zero(2, 2);
  s[0](0, 1) = 1.0;
  s[0](1, 0) = 1.0;
  s[1](0, 1) = -kI;
  s[1](1, 0) = kI;
  s[2](0, 0) = 1.0;
  s[2](1, 1) = -1.0;
  return s;
}

std::array<ComplexMatrix, 8> gell_mann_matrices() {
  // Rows/columns: 0 = L, 1 = R, 2 = O.
  std::array<ComplexMatrix, 8> l;
  for (auto& m : l) m = ComplexMatrix::Zero(3, 3);
  l[0](0, 1) = 1.0;
  l[0](1, 0) = 1.0;
  l[1](0, 1) = -kI;
  l[1](1, 0) = kI;
  l[2](0, 0) = 1.0;
  l[2](1, 1) = -1.0;
  l[3](0, 2) = 1.0;
  l[3](2, 0) = 1.0;
  l[4](0, 2) = -kI;
  l[4](2, 0) = kI;
  l[5](1, 2) = 1.0;
  l[5](2, 1) = 1.0;
  l[6](1, 2) = -kI;
  l[6](2, 1) = kI;
  const double r3 = 1.0 / std::sqrt(3.0);
  l[7](0, 0) = r3;
  l[7](1, 1) = r3;
  l[7](2, 2) = -2.0 * r3;
  return l;
}

std::string_view to_string(GeneratorFamily f) {
  switch (f) {
  case GeneratorFamily::spin: return "spin";
  case GeneratorFamily::oam: return "oam";
  case GeneratorFamily::coupled: return "coupled";
  }
  return "?";
}

std::string GeneratorLabel::name() const {
  std::string out;
  if (spin_index > 0) out += "sigma" + std::to_string(spin_index);
  else out += "1";
  out += "(x)";
  if (oam_index > 0) out += "lambda" + std::to_string(oam_index);
  else out += "1";
  return out;
}

GeneratorBasis::GeneratorBasis(std::vector<ComplexMatrix> generators,
                               std::vector<GeneratorLabel> labels)
    : generators_(std::move(generators)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != generators_.size())
    throw InvalidArgument("GeneratorBasis: label count does not match generator count");
}

std::vector<std::string> GeneratorBasis::validate(double tol) const {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto& b = generators_[i];
    if (b.rows() != b.cols()) {
      problems.push_back("generator " + describe(*this, i) + " is not square");
      continue;
    }
    if (!is_hermitian(b, tol))
      problems.push_back("generator " + describe(*this, i) + " is not Hermitian");
    if (std::abs(b.trace()) > tol)
      problems.push_back("generator " + describe(*this, i) + " is not traceless");
  }
  for (std::size_t l = 0; l < size(); ++l) {
    for (std::size_t m = l; m < size(); ++m) {
      const Complex t = (generators_[l] * generators_[m]).trace();
      const double expected = l == m ? 2.0 : 0.0;
      if (std::abs(t - expected) > tol) {
        std::ostringstream os;
        os << "pair (" << describe(*this, l) << ", " << describe(*this, m)
           << ") violates tr(b_l b_m) = 2 delta_lm: trace = " << t.real()
           << (t.imag() >= 0 ? "+" : "") << t.imag() << "i";
        problems.push_back(os.str());
      }
    }
  }
  return problems;
}

GeneratorBasis su6_basis() {
  const auto sigma = pauli_matrices();
  const auto lambda = gell_mann_matrices();
  const ComplexMatrix one2 = identity(2);
  const ComplexMatrix one3 = identity(3);
  const double spin_scale = 1.0 / std::sqrt(3.0); // tr((sigma x 1)^2) = 6
  const double oam_scale = 1.0 / std::sqrt(2.0);  // tr((1 x lambda)^2) = 4

  std::vector<ComplexMatrix> gens;
  std::vector<GeneratorLabel> labels;
  gens.reserve(kAlgebraDim);
  labels.reserve(kAlgebraDim);
  for (int i = 0; i < 3; ++i) {
    gens.push_back(spin_scale * kron(sigma[i], one3));
    labels.push_back({GeneratorFamily::spin, i + 1, 0});
  }
  for (int j = 0; j < 8; ++j) {
    gens.push_back(oam_scale * kron(one2, lambda[j]));
    labels.push_back({GeneratorFamily::oam, 0, j + 1});
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 8; ++j) {
      gens.push_back(oam_scale * kron(sigma[i], lambda[j]));
      labels.push_back({GeneratorFamily::coupled, i + 1, j + 1});
    }
  }
  return GeneratorBasis(std::move(gens), std::move(labels));
}

double structure_constant(const ComplexMatrix& a, const ComplexMatrix& b,
                          const ComplexMatrix& c) {
  const Complex t = (commutator(a, b) * c).trace();
  return (-kI * t / 4.0).real();
}

StructureConstants::StructureConstants(std::size_t n)
    : n_(n), values_(n * n * n, 0.0) {}

double StructureConstants::antisymmetry_residual() const {
  double worst = 0.0;
  for (std::size_t l = 0; l < n_; ++l)
    for (std::size_t m = 0; m < n_; ++m)
      for (std::size_t k = 0; k < n_; ++k) {
        const double v = (*this)(l, m, k);
        worst = std::max({worst, std::abs(v + (*this)(m, l, k)),
                          std::abs(v + (*this)(l, k, m)),
                          std::abs(v + (*this)(k, m, l))});
      }
  return worst;
}

StructureConstants structure_constants(const GeneratorBasis& basis, double tol) {
  if (const auto problems = basis.validate(tol); !problems.empty())
    throw InvalidArgument("structure_constants: " + problems.front());

  const std::size_t n = basis.size();
  StructureConstants g(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = l + 1; m < n; ++m) {
      const ComplexMatrix c = commutator(basis[l], basis[m]);
      for (std::size_t k = 0; k < n; ++k) {
        const double v = (-kI * (c * basis[k]).trace() / 4.0).real();
        g(l, m, k) = v;
        g(m, l, k) = -v;
      }
    }
  }
  return g;
}

double commutator_closure_residual(const GeneratorBasis& basis,
                                   const StructureConstants& g) {
  double worst = 0.0;
  const std::size_t n = basis.size();
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = l + 1; m < n; ++m) {
      ComplexMatrix rhs = ComplexMatrix::Zero(basis[l].rows(), basis[l].cols());
      for (std::size_t k = 0; k < n; ++k)
        if (g(l, m, k) != 0.0) rhs += g(l, m, k) * basis[k];
      worst = std::max(worst, max_abs(commutator(basis[l], basis[m]) - 2.0 * kI * rhs));
    }
  }
  return worst;
}

namespace {

RealMatrix adjoint_combination(const AdjointRep& adj, const StructureConstants& g,
                               std::size_t l, std::size_t m) {
  const auto n = static_cast<Eigen::Index>(g.dimension());
  RealMatrix rhs = RealMatrix::Zero(n, n);
  for (std::size_t k = 0; k < g.dimension(); ++k)
    if (g(l, m, k) != 0.0) rhs += g(l, m, k) * adj.generators[k];
  return rhs;
}

} // namespace

AdjointRep adjoint_matrices(const StructureConstants& g) {
  const std::size_t n = g.dimension();
  AdjointRep adj;
  adj.generators.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    RealMatrix G(n, n);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k)
        G(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = -g(l, m, k);
    adj.generators.push_back(std::move(G));
  }

  // Least-squares fit of c in [G_l, G_m] = c * sum_k g_lmk G_k.
  std::vector<std::pair<RealMatrix, RealMatrix>> pairs;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = l + 1; m < n; ++m) {
      RealMatrix lhs = adj.generators[l] * adj.generators[m] -
                       adj.generators[m] * adj.generators[l];
      RealMatrix rhs = adjoint_combination(adj, g, l, m);
      num += (lhs.array() * rhs.array()).sum();
      den += rhs.squaredNorm();
      pairs.emplace_back(std::move(lhs), std::move(rhs));
    }
  }
  adj.closure_constant = den > 0.0 ? num / den : 0.0;
  for (const auto& [lhs, rhs] : pairs)
    adj.closure_residual =
        std::max(adj.closure_residual, max_abs(RealMatrix(lhs - adj.closure_constant * rhs)));
  return adj;
}

double adjoint_closure_factor(const AdjointRep& adj, const StructureConstants& g,
                              std::size_t l, std::size_t m) {
  const RealMatrix lhs = adj.generators[l] * adj.generators[m] -
                         adj.generators[m] * adj.generators[l];
  const RealMatrix rhs = adjoint_combination(adj, g, l, m);
  const double den = rhs.squaredNorm();
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (lhs.array() * rhs.array()).sum() / den;
}

std::array<ComplexMatrix, 3> skyrmion_generators() {
  const auto s = pauli_matrices();
  const auto l = gell_mann_matrices();
  const ComplexMatrix one2 = identity(2);
  const ComplexMatrix one3 = identity(3);
  const double r3 = std::sqrt(3.0);
  return {
      0.5 * (kron(s[0], l[3]) + kron(s[1], l[4])),
      0.5 * (-kron(s[0], l[4]) + kron(s[1], l[3])),
      kron(s[2], one3 / 3.0 + l[2] / 4.0 - r3 / 12.0 * l[7]) -
          kron(one2, l[2] / 4.0 + r3 / 4.0 * l[7]),
  };
}

std::array<ComplexMatrix, 3> antiskyrmion_generators() {
  const auto s = pauli_matrices();
  const auto l = gell_mann_matrices();
  const ComplexMatrix one2 = identity(2);
  const ComplexMatrix one3 = identity(3);
  const double r3 = std::sqrt(3.0);
  return {
      0.5 * (kron(s[0], l[5]) + kron(s[1], l[6])),
      0.5 * (-kron(s[0], l[6]) + kron(s[1], l[5])),
      kron(s[2], one3 / 3.0 - l[2] / 4.0 - r3 / 12.0 * l[7]) +
          kron(one2, l[2] / 4.0 - r3 / 4.0 * l[7]),
  };
}

ComplexMatrix exp_generator(const ComplexMatrix& generator, double dphi) {
  const double scale = std::max(1.0, max_abs(generator));
  if (!is_hermitian(generator, kMatrixTolerance * scale))
    throw InvalidArgument("exp_generator: generator is not Hermitian");
  // Symmetrize so the eigensolver sees an exactly Hermitian matrix.
  const ComplexMatrix h = 0.5 * (generator + generator.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * (-kI * dphi / 2.0)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix combine_generators(const GeneratorBasis& basis,
                                 std::span<const double> direction) {
  if (direction.size() != basis.size())
    throw InvalidArgument("combine_generators: direction has " +
                          std::to_string(direction.size()) + " components, basis has " +
                          std::to_string(basis.size()));
  ComplexMatrix out = ComplexMatrix::Zero(basis[0].rows(), basis[0].cols());
  for (std::size_t l = 0; l < basis.size(); ++l) out += direction[l] * basis[l];
  return out;
}

RealMatrix exp_adjoint(const AdjointRep& adj, std::span<const double> direction,
                       double dphi) {
  if (direction.size() != adj.generators.size())
    throw InvalidArgument("exp_adjoint: direction has " + std::to_string(direction.size()) +
                          " components, expected " +
                          std::to_string(adj.generators.size()));
  double norm2 = 0.0;
  for (double v : direction) norm2 += v * v;
  if (norm2 == 0.0) throw InvalidArgument("exp_adjoint: zero direction vector");
  if (std::abs(std::sqrt(norm2) - 1.0) > kMatrixTolerance)
    throw InvalidArgument("exp_adjoint: direction is not a unit vector (norm " +
                          std::to_string(std::sqrt(norm2)) + ")");

  const auto n = adj.generators.front().rows();
  RealMatrix k = RealMatrix::Zero(n, n);
  for (std::size_t l = 0; l < direction.size(); ++l)
    if (direction[l] != 0.0) k += direction[l] * adj.generators[l];
  k *= dphi;
  k = 0.5 * (k - k.transpose());

  // i K is Hermitian for real antisymmetric K, so exp(K) = V exp(-i w) V^dagger.
  const ComplexMatrix h = kI * k.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * (-kI)).array().exp();
  const ComplexMatrix r = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return r.real();
}

} // namespace su6
