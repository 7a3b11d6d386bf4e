#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace su6 {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kMatrixTolerance = 1e-12;

/// Number of generators of su(6).
inline constexpr std::size_t kAlgebraDim = 35;
/// Dimension of the spin (x) OAM Hilbert space.
inline constexpr std::size_t kStateDim = 6;

/// Identifies the generator ordering used by su6_basis(); written into every
/// exported file so downstream tools can detect a reordering.
inline constexpr std::string_view kBasisOrderingVersion =
    "su6-basis/1 spin(sigma_i x 1)/sqrt3, oam(1 x lambda_j)/sqrt2, "
    "coupled(sigma_i x lambda_j)/sqrt2 lexicographic (i,j)";

/// Largest entry modulus, 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kMatrixTolerance);
bool is_hermitian(const ComplexMatrix& m, double tol = kMatrixTolerance);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// sigma_1, sigma_2, sigma_3 in the (up, down) spin basis.
std::array<ComplexMatrix, 3> pauli_matrices();

/// lambda_1 .. lambda_8 in the (L, R, O) OAM basis. lambda_1..3 act on the
/// (L, R) chirality pair, lambda_4/5 couple L and O, lambda_6/7 couple R and O.
std::array<ComplexMatrix, 8> gell_mann_matrices();

enum class GeneratorFamily { spin, oam, coupled };

std::string_view to_string(GeneratorFamily f);

/// Provenance of one basis element: sigma_{spin} (x) lambda_{oam}, where an
/// index of 0 stands for the identity factor.
struct GeneratorLabel {
  GeneratorFamily family = GeneratorFamily::spin;
  int spin_index = 0;
  int oam_index = 0;

  std::string name() const;
};

/// Ordered list of 6x6 generators with their family labels.
///
/// The constructor does not validate; call validate() (or let
/// structure_constants() do it) to check Hermiticity, tracelessness and
/// trace-orthonormality tr(b_l b_m) = 2 delta_lm.
class GeneratorBasis {
public:
  GeneratorBasis(std::vector<ComplexMatrix> generators,
                 std::vector<GeneratorLabel> labels);

  std::size_t size() const { return generators_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }
  const std::vector<GeneratorLabel>& labels() const { return labels_; }

  /// Human-readable diagnostics, empty when the basis is valid.
  std::vector<std::string> validate(double tol = kMatrixTolerance) const;

private:
  std::vector<ComplexMatrix> generators_;
  std::vector<GeneratorLabel> labels_;
};

/// The 35-element trace-orthonormal su(6) basis: spin family (indices 0-2),
/// OAM family (3-10), coupled family (11-34) in lexicographic (i, j) order.
GeneratorBasis su6_basis();

/// g = -i tr([a, b] c) / 4 for any three matrices of equal size.
double structure_constant(const ComplexMatrix& a, const ComplexMatrix& b,
                          const ComplexMatrix& c);

/// Dense n x n x n real tensor, zero-based indices.
class StructureConstants {
public:
  explicit StructureConstants(std::size_t n);

  std::size_t dimension() const { return n_; }
  double operator()(std::size_t l, std::size_t m, std::size_t k) const {
    return values_[(l * n_ + m) * n_ + k];
  }
  double& operator()(std::size_t l, std::size_t m, std::size_t k) {
    return values_[(l * n_ + m) * n_ + k];
  }

  /// Largest |g_lmn + g_mln|, |g_lmn + g_lnm|, |g_lmn + g_nml| over all triples.
  double antisymmetry_residual() const;

private:
  std::size_t n_;
  std::vector<double> values_;
};

/// Structure constants of an orthonormal basis via the trace formula.
/// Throws InvalidArgument naming the first offending generator or pair when
/// the basis is not Hermitian, traceless and trace-orthonormal.
StructureConstants structure_constants(const GeneratorBasis& basis,
                                       double tol = kMatrixTolerance);

/// Largest entrywise residual of [b_l, b_m] - 2i sum_n g_lmn b_n over l < m.
double commutator_closure_residual(const GeneratorBasis& basis,
                                   const StructureConstants& g);

/// Adjoint matrices (G_l)_mn = -g_lmn.
///
/// closure_constant is the single factor c with [G_l, G_m] = c sum_n g_lmn G_n,
/// fitted by least squares over every pair; closure_residual is the largest
/// entrywise deviation from that law.
struct AdjointRep {
  std::vector<RealMatrix> generators;
  double closure_constant = 0.0;
  double closure_residual = 0.0;
};

AdjointRep adjoint_matrices(const StructureConstants& g);

/// Closure factor measured on a single pair, NaN when sum_n g_lmn G_n = 0.
double adjoint_closure_factor(const AdjointRep& adj, const StructureConstants& g,
                              std::size_t l, std::size_t m);

/// Skyrmionic triple: Pauli action on span{|3>, |4>}, zero elsewhere.
std::array<ComplexMatrix, 3> skyrmion_generators();
/// Antiskyrmionic triple: Pauli action on span{|3>, |5>}, zero elsewhere.
std::array<ComplexMatrix, 3> antiskyrmion_generators();

/// exp(-i M dphi / 2) by Hermitian eigendecomposition.
ComplexMatrix exp_generator(const ComplexMatrix& generator, double dphi);

/// exp(dphi * sum_l n_l G_l); the direction must be a unit vector.
RealMatrix exp_adjoint(const AdjointRep& adj, std::span<const double> direction,
                       double dphi);

/// sum_l n_l b_l for a direction in generator space.
ComplexMatrix combine_generators(const GeneratorBasis& basis,
                                 std::span<const double> direction);

} // namespace su6
