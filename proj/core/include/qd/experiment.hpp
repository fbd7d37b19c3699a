#pragma once

#include <string>
#include <vector>

#include "qd/anyon.hpp"
#include "qd/charge.hpp"
#include "qd/lattice.hpp"
#include "qd/ribbon.hpp"
#include "qd/state.hpp"

namespace qd {

/// One step of an anyon protocol. Paths are move strings ("I:e X:f ...")
/// traced from `start`; `ribbon` numbers the handles in creation order.
struct RibbonAction {
  enum class Kind { create, extend_front, extend_back, bell };
  Kind kind = Kind::create;
  int ribbon = 0;
  Corner start{0, 0};
  std::string moves;
};

/// Declarative anyon experiment: a list of ribbon actions followed by a
/// partial charge probe and a flux readout on the fusion site.
struct ProtocolSpec {
  std::string name;
  std::string anyon = "Psi_m";
  std::vector<RibbonAction> actions;
  std::string probe_face = "p1";
  std::vector<std::string> subgroup_gens{"mr", "r2"};
  Corner flux_site{1, 1};
};

struct ProtocolResult {
  std::vector<double> bell_probs;  // per finalized ribbon, in order
  double post_prob = 1.0;          // product of the above
  Eigen::MatrixXd joint;           // P(chi_H, flux word | all bells succeed)
  std::vector<std::string> char_names;
  Subgroup subgroup;
};

/// Runs the protocol on the exact state simulator starting from the ground
/// state of the lattice.
ProtocolResult run_protocol_exact(const QuantumDouble& qd, const Lattice& l,
                                  const ProtocolSpec& spec);

/// Resolves a generator list ("m", "r2", ...) into a subgroup of g.
Subgroup subgroup_from_gens(const FiniteGroup& g, const std::vector<std::string>& gens);

/// Two Psi_m pairs created on the n=2 ladder and fused at the middle site.
ProtocolSpec fusion_ladder_preset();
/// The same experiment on the three-vertex planar graph, fused at the corner
/// shared by both creation paths.
ProtocolSpec fusion_planar_preset();
/// Braiding on the n=2 ladder; `order12_first` selects the exchange order:
/// true runs sigma_12 before sigma_23 (linked worldlines, four fusion
/// outcomes), false the reverse (unlinked, vacuum only).
ProtocolSpec braid_ladder_preset(bool order12_first);

}  // namespace qd
