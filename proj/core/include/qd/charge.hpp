#pragma once

#include <vector>

#include "qd/anyon.hpp"
#include "qd/group.hpp"
#include "qd/lattice.hpp"
#include "qd/state.hpp"

namespace qd {

/// H-partial charge probe on a face.
///
/// Attaches an |H|-dimensional ancilla in uniform superposition, entangles it
/// with the face through a controlled holonomy multiplication and rotates it
/// into the character basis of H. Afterwards the returned register measures
/// the chi_H content of the face: outcome k is the k-th entry of
/// subgroup_irreps(g, h). All irreps of H must be one dimensional.
int attach_charge_probe(QState& psi, const FiniteGroup& g, const Lattice& l, int face,
                        const Subgroup& h);

/// Joint outcome distribution of an ancilla register and the boundary word at
/// a corner: entry (a, w) is the probability of reading ancilla value a
/// together with word value w. Rows: psi.dim(anc); columns: |G|.
Eigen::MatrixXd probe_word_joint(const QState& psi, const FiniteGroup& g, const Lattice& l, int anc,
                                 Corner site);

/// Anyons compatible with measuring flux w and H-character eta (index into
/// subgroup_irreps(g, h)) on the same site. Empty when H is not contained in
/// the centralizer of w; such runs are discarded.
std::vector<int> consistent_anyons(const QuantumDouble& qd, const Subgroup& h, int eta, int w);

}  // namespace qd
