#pragma once

// Conversion of a block SdpProblem into the real standard form
//
//   minimize ⟨C, Z⟩  s.t.  ⟨A_k, Z⟩ = b_k,  Z ⪰ 0
//   maximize bᵀy     s.t.  C − Σ y_k A_k = S ⪰ 0
//
// over block-diagonal real symmetric Z. Hermitian blocks of dimension n > 1
// are embedded as [[Re, −Im], [Im, Re]]; 1×1 blocks (and all blocks when the
// data is real) stay real. One constraint per orthonormal Hermitian basis
// element of each output block.

#include <vector>

#include "entroscope/sdp.hpp"

namespace entroscope::sdp::detail {

struct Entry {
  int row;
  int col;
  double value;
};

struct SparseBlock {
  std::size_t block;
  std::vector<Entry> entries;  // both triangles listed
};

struct RealBlock {
  Index complex_dim = 0;
  Index dim = 0;  // real dimension
  bool embedded = false;
  bool slack = false;      // slack of a ≥ output block
  std::size_t source = 0;  // input or output block index
};

enum class BasisKind { Diagonal, Symmetric, AntiSymmetricImag };

struct BasisRef {
  std::size_t out;
  Index a;
  Index b;
  BasisKind kind;
};

struct StandardForm {
  std::vector<RealBlock> blocks;
  std::vector<std::vector<SparseBlock>> constraints;
  RealVector b;
  std::vector<RealMatrix> C;
  std::vector<BasisRef> basis;  // constraint k ↔ basis element of output block
  std::vector<std::size_t> input_block;  // input i → real block index
  bool real_mode = false;
  bool trivially_infeasible = false;  // a zero constraint row with nonzero rhs
};

StandardForm build_standard_form(const SdpProblem& p);

/// Orthonormal Hermitian basis element in an output block of dimension dim.
Matrix basis_element(const BasisRef& ref, Index dim);

RealMatrix embed(const Matrix& h, bool embedded);
Matrix unembed(const RealMatrix& z, bool embedded);

}  // namespace entroscope::sdp::detail
