#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "diophlab/numeric/oracle.hpp"

namespace diophlab::lattice {

enum class CertificateStatus { ExactVerified, Empirical, NoneUpTo };
std::string_view status_name(CertificateStatus s);

struct RelationCertificate {
  CertificateStatus status = CertificateStatus::NoneUpTo;
  IntVector relation;  // empty for NoneUpTo
  Integer height_bound;
  // Enclosures of each row's residual sum_j m_j x_ij at doubled precision.
  std::vector<PrecisionReal> residuals;
  // NoneUpTo only: smallest |sum m x| among reduced vectors with m != 0.
  double residual_floor = 0;
  // NoneUpTo only: the exact kernel is trivial, so no relation of any height.
  bool proven_none = false;
  // Set by polynomial searches: NoneUpTo covers every degree up to this.
  std::optional<unsigned> degree_bound;
  long precision_bits = 0;

  bool found() const { return status != CertificateStatus::NoneUpTo; }
};

struct RelationOptions {
  Integer height = 10000;
  long precision = 256;
  long precision_cap = 4096;
  Rational delta = Rational(99, 100);
};

// Relations m in Z^n with sum_j m_j x_ij = 0 for every row i.
struct RelationLattice {
  std::vector<RelationCertificate> basis;  // independent found relations
  bool exact = false;                      // every entry lies in an exact domain
  Integer height_bound;
  double residual_floor = 0;
  long precision_bits = 0;
};

RelationLattice relation_lattice(const OracleMatrix& rows, const RelationOptions& options);
RelationCertificate integer_relation(const OracleVector& xs, const RelationOptions& options);

// Exact route alone: nullopt when an entry has no exact linear form.
std::optional<RelationLattice> exact_relation_lattice(const OracleMatrix& rows, const Integer& height);

}  // namespace diophlab::lattice
