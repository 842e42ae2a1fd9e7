#pragma once

#include <span>
#include <string>
#include <vector>

#include <minkspec/secular.hpp>

namespace minkspec {

/// The four block types of the canonical form for one negative square:
///   1  A_j = x,         H_j = +-1
///   2  A_j = x + iy (+) x - iy, H_j = [[0,1],[1,0]]
///   3  A_j = J_2(x),    H_j = +-[[0,1],[1,0]]
///   4  A_j = J_3(x),    H_j = the 3x3 sip matrix
enum class BlockType { Simple = 1, ComplexPair = 2, Jordan2 = 3, Jordan3 = 4 };

struct SignedBlock {
  BlockType type = BlockType::Simple;
  Complex eigenvalue;  ///< for type 2 the upper member x + iy (y > 0)
  int size = 1;        ///< 1, 2 (type 2 counts the pair, type 3) or 3
  /// -1 or +1; 0 for a complex pair. Type 4 blocks carry +1 as a label only.
  int epsilon = 0;
  /// False when H_j has no free sign (types 2 and 4).
  bool sign_in_h = true;
  /// True for eigenvalues of J split off as unobservable.
  bool detached = false;

  /// (positive, negative) inertia of H_j.
  std::pair<int, int> inertia() const noexcept;
};

struct CanonicalForm {
  std::vector<SignedBlock> blocks;
  CaseLabel case_label = CaseLabel::DegenerateSmall;

  std::size_t order() const noexcept;
  std::pair<int, int> signature() const noexcept;
};

/// Sign characteristic of the solved eigenvalues.
/// simple x: epsilon = sign(g'(x) - 1); double x: epsilon = sign(g''(x));
/// triple: type 4 labelled +1; complex pair: type 2.
/// Throws AmbiguousSign when the deciding quantity is within tolerance of zero.
std::vector<SignedBlock> assign_signs(const EigenStructure& e, const SecularFunction& s);

/// Appends a +1 type-1 block per detached eigenvalue and validates the form:
/// at most one block of type 2, 3 or 4; at most one negative type-1 block;
/// H inertia (order - 1, 1). Throws CanonicalViolation naming the failed rule.
CanonicalForm assemble_canonical_form(std::vector<SignedBlock> blocks, std::span<const double> detached,
                                      CaseLabel case_label);

/// Checks where the single negative sign sits for the classified case
/// (1a: smallest, 3a: largest, 4a: middle of the host interval; 1b/4c: +1 on
/// the double, 3b/4b: -1; no negative type-1 block otherwise). Returns an empty
/// string when consistent, otherwise a description of the mismatch.
std::string check_sign_census(const CanonicalForm& form, const EigenStructure& e, const InterlacingReport& report);

}  // namespace minkspec
