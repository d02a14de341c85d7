#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diophlab/core/config.hpp"
#include "diophlab/dagroups/dagroups.hpp"
#include "diophlab/lattice/relation.hpp"
#include "diophlab/polyapprox/polyapprox.hpp"

namespace diophlab::numfield {

// Coordinates in the field's integral basis.
struct FieldElement {
  RatVector coords;
  bool integral() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.coords == b.coords; }
};

// Totally real field from an integral basis (alpha_1 = 1), its exact
// multiplication table and one real embedding per place.
class NumberField {
 public:
  static NumberField rationals();
  // Q(sqrt D) for squarefree D > 1, basis {1, sqrt D} or {1, (1 + sqrt D)/2}.
  static NumberField quadratic(const Integer& d);
  // Q(2cos(2pi/7)) with basis {1, c, c^2}.
  static NumberField maxreal7();
  static NumberField from_toml(const std::string& document);
  static NumberField from_toml_file(const std::string& path);
  // "Q", "Q(sqrt 2)", "Q(sqrt(5))", "maxreal7", or a path to a TOML file.
  static NumberField parse(std::string_view name);

  std::size_t degree() const { return names_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  // E[nu][j] = nu(alpha_j).
  const RealOracle& embedding(std::size_t place, std::size_t j) const { return embed_[place][j]; }
  const RatVector& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  // Known automorphisms besides the identity; entry j holds the coordinates
  // of sigma(alpha_j).
  const std::vector<RatMatrix>& automorphisms() const { return autos_; }

  FieldElement element(RatVector coords) const;
  FieldElement zero() const;
  FieldElement basis(std::size_t j) const;
  FieldElement from_integer(const Integer& n) const;
  // 1_A = sum of the basis elements.
  FieldElement one_a() const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement scale(const FieldElement& a, const Rational& q) const;
  // Column j = coordinates of x * alpha_j.
  RatMatrix multiplication_matrix(const FieldElement& x) const;
  Rational trace(const FieldElement& x) const;
  Rational norm(const FieldElement& x) const;
  // Tr(x^2), the squared Minkowski norm.
  Rational minkowski_norm2(const FieldElement& x) const;
  std::vector<PrecisionReal> embed(const FieldElement& x, long bits = 256) const;
  RealOracle place_oracle(const FieldElement& x, std::size_t place) const;
  // Image of x under the linear map alpha_j -> sigma[j].
  FieldElement apply(const RatMatrix& sigma, const FieldElement& x) const;

  // "3+3w", "2 - c + 4*c2" over the basis names, or a JSON coordinate list.
  FieldElement parse_element(std::string_view text) const;
  std::string format(const FieldElement& x) const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<RatVector>> table_;
  OracleMatrix embed_;
  std::vector<RatMatrix> autos_;
  void validate() const;
};

// ||x||_A: Euclidean norm of the basis coordinates, squared.
Rational a_norm2(const FieldElement& x);
bool a_positive(const FieldElement& x);

struct OApproxSequence {
  std::vector<FieldElement> entries;
  std::optional<std::vector<FieldElement>> duals;
  std::optional<std::string> theta;
  std::string method;
  // Bounds max over places |eps_nu,i| <= C 2^(-lambda i).
  std::vector<dagroups::DecayCertificate> certificates;
  // Bounds on |eps_nu,i| at one place (0-based), which take precedence there.
  std::map<std::size_t, dagroups::DecayCertificate> local_certificates;
  std::size_t size() const { return entries.size(); }
};

// Entries sum_j s_j alpha_j from per-coordinate sequences bound to theta.
OApproxSequence o_sequence_from(const NumberField& k, const RealOracle& theta,
                                const std::vector<dagroups::ApproxSequence>& coordinates, const Config& config = {});
OApproxSequence diagonal_sequence(const NumberField& k, const dagroups::ApproxSequence& seq);
// m_i theta - m_i' -> 1/2 and n_i w theta - n_i' w -> -1/2 at the first place,
// for a quadratic field with basis {1, w}.
OApproxSequence half_shift_sequence(const NumberField& k, const RealOracle& theta, std::size_t n,
                                    const Config& config = {});

struct OProfiles {
  std::vector<std::vector<PrecisionReal>> eps;  // [place][i]
  std::vector<FieldElement> duals;
};
// Duals default to the nearest element of O in basis coordinates.
OProfiles o_error_profiles(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq,
                           const Config& config = {});

struct OVerdict {
  dagroups::MembershipStatus global = dagroups::MembershipStatus::NotMember;
  std::vector<dagroups::MembershipVerdict> places;
  OProfiles profiles;
  double tau = 0;
  std::optional<std::size_t> witness_place;  // 1-based, when not a global member
  bool member() const { return global != dagroups::MembershipStatus::NotMember; }
};

OVerdict o_membership(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq, double tau,
                      const Config& config = {});

struct KRationalResult {
  bool rational = false;
  std::size_t place = 0;  // 0-based
  FieldElement alpha, beta;  // nu(alpha) theta = nu(beta)
  lattice::CertificateStatus status = lattice::CertificateStatus::NoneUpTo;
  Integer height;
  double residual_floor = 0;
};

KRationalResult krational_test(const NumberField& k, const RealOracle& theta, const Integer& height,
                               const Config& config = {});

struct KDirichletResult {
  FieldElement gamma, gamma_perp;
  FieldElement beta_new, beta_old;
  bool collided_with_one_a = false;
  bool trivial = false;               // eta = 1_A
  std::size_t enumerated = 0;         // elements of [0, eta) visited
  Rational gamma_norm2, eta_norm2;    // exact ||.||_A^2
  PrecisionReal error_norm2;          // ||gamma theta - gamma_perp||_A^2
  Rational bound_norm2;               // ||eta^-1_A||_A^2 = sum 1/n_j^2
  bool certified = false;
  KRationalResult irrationality;      // the bounded precondition check
};

KDirichletResult k_dirichlet(const NumberField& k, const RealOracle& theta, const FieldElement& eta,
                             const Config& config = {});

// Entrywise trace with duals Tr(alpha_perp), bound to theta.
dagroups::ApproxSequence trace_push(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq,
                                    const Config& config = {});

// Throws NotAutomorphism unless sigma respects the multiplication table.
void check_automorphism(const NumberField& k, const RatMatrix& sigma);
// map[nu] = mu with nu(sigma x) = mu(x).
std::vector<std::size_t> place_permutation(const NumberField& k, const RatMatrix& sigma);

struct GaloisResult {
  OApproxSequence sequence;
  std::vector<std::size_t> place_map;  // profile of the image at nu = input profile at place_map[nu]
};
GaloisResult galois_apply(const NumberField& k, const RatMatrix& sigma, const RealOracle& theta,
                          const OApproxSequence& seq, const Config& config = {});

// f_i(X) = prod_nu (nu(alpha_i) X - nu(alpha_perp_i)), exactly.
polyapprox::PolySequence conjugate_poly(const NumberField& k, const RealOracle& theta, const OApproxSequence& seq,
                                        const Config& config = {});

struct ClearedDenominator {
  IntVector monic;  // ascending minimal polynomial of a * alpha
  Integer a;        // leading coefficient of the primitive minimal polynomial
  std::optional<RealOracle> integral;
};
ClearedDenominator clear_denominator(const IntVector& minpoly);
// Minimal polynomial from the oracle's exact data, else from a bounded search.
ClearedDenominator clear_denominator(const RealOracle& alpha, const Config& config = {});

}  // namespace diophlab::numfield
