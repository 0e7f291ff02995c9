#pragma once

#include <iosfwd>

#include "pseudoatom/band_matrix.hpp"
#include "pseudoatom/bspline.hpp"
#include "pseudoatom/catalog.hpp"
#include "pseudoatom/model.hpp"

namespace pseudoatom::radial {

  /// Galerkin matrices of the reduced radial one-electron Hamiltonian
  ///
  ///   h = -1/2 d^2/dr^2 + l(l+1)/(2 r^2) + V(r)
  ///
  /// in the boundary-trimmed B-spline basis.
  struct OperatorPair {
    linalg::SymmetricBandMatrix h_matrix;
    linalg::SymmetricBandMatrix s_matrix;
    int channel_l = 0;
    PotentialModel model = PotentialModel::BareCoulomb;
    AtomSpec atom;

    std::size_t dimension() const { return s_matrix.size(); }
  };

  struct BandProfile {
    std::size_t dimension;
    std::size_t bandwidth;
  };

  /// H_ij = 1/2 int B'_i B'_j + int B_i B_j [l(l+1)/(2r^2) + V(r)],  S_ij = int B_i B_j,
  /// with every integral taken by `quad`.
  OperatorPair assemble(const bspline::KnotBasis& basis, const bspline::QuadratureRule& quad,
                        const AtomSpec& atom, int l, PotentialModel model);

  /// Same layout as `assemble`, but only the centrifugal term l(l+1)/(2r^2).
  linalg::SymmetricBandMatrix centrifugal_matrix(const bspline::KnotBasis& basis,
                                                 const bspline::QuadratureRule& quad, int l);

  BandProfile band_profile(const OperatorPair& pair);

  /// Debug dump of both matrices in the band text format of SymmetricBandMatrix::write.
  void write_pair(std::ostream& os, const OperatorPair& pair);

} // namespace pseudoatom::radial
