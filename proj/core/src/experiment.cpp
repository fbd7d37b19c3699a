#include "qd/experiment.hpp"

#include <algorithm>
#include <stdexcept>

namespace qd {

Subgroup subgroup_from_gens(const FiniteGroup& g, const std::vector<std::string>& gens) {
  std::vector<int> idx;
  idx.reserve(gens.size());
  for (const auto& n : gens) idx.push_back(g.index_of(n));
  return g.generated(idx);
}

ProtocolResult run_protocol_exact(const QuantumDouble& qd, const Lattice& l,
                                  const ProtocolSpec& spec) {
  const FiniteGroup& g = qd.group();
  QState psi = ground_state(g, l);
  RibbonEngine eng(qd, l);
  const int anyon = qd.find(spec.anyon);

  ProtocolResult res;
  std::vector<RibbonHandle> handles;
  std::vector<bool> alive;
  for (const auto& act : spec.actions) {
    switch (act.kind) {
      case RibbonAction::Kind::create: {
        if (act.ribbon != static_cast<int>(handles.size()))
          throw std::invalid_argument("ribbons must be created in order");
        auto path = RibbonPath::parse(l, act.start, act.moves);
        handles.push_back(eng.create_pair(psi, anyon, path));
        alive.push_back(true);
        break;
      }
      case RibbonAction::Kind::extend_front: {
        auto path = RibbonPath::parse(l, act.start, act.moves);
        eng.extend_front(psi, handles.at(act.ribbon), path);
        break;
      }
      case RibbonAction::Kind::extend_back: {
        auto path = RibbonPath::parse(l, act.start, act.moves);
        eng.extend_back(psi, handles.at(act.ribbon), path);
        break;
      }
      case RibbonAction::Kind::bell: {
        RibbonHandle& h = handles.at(act.ribbon);
        if (!alive.at(act.ribbon)) throw std::invalid_argument("ribbon already finalized");
        const std::array<int, 2> removed{h.anc_back, h.anc_front};
        const double p = eng.finalize(psi, h);
        res.bell_probs.push_back(p);
        res.post_prob *= p;
        alive[act.ribbon] = false;
        for (std::size_t j = 0; j < handles.size(); ++j)
          if (alive[j]) RibbonEngine::shift_for_removed(handles[j], removed);
        break;
      }
    }
  }
  for (bool a : alive)
    if (a) throw std::invalid_argument("protocol left an unfinalized ribbon");

  res.subgroup = subgroup_from_gens(g, spec.subgroup_gens);
  const int face = l.face_index(spec.probe_face);
  const int anc = attach_charge_probe(psi, g, l, face, res.subgroup);
  res.joint = probe_word_joint(psi, g, l, anc, spec.flux_site);
  for (const auto& ir : subgroup_irreps(g, res.subgroup)) res.char_names.push_back(ir.name);
  return res;
}

namespace {

RibbonAction create(int r, Corner c, std::string moves) {
  return {RibbonAction::Kind::create, r, c, std::move(moves)};
}
RibbonAction front(int r, Corner c, std::string moves) {
  return {RibbonAction::Kind::extend_front, r, c, std::move(moves)};
}
RibbonAction back(int r, Corner c, std::string moves) {
  return {RibbonAction::Kind::extend_back, r, c, std::move(moves)};
}
RibbonAction bell(int r) { return {RibbonAction::Kind::bell, r, Corner{0, 0}, ""}; }

}  // namespace

ProtocolSpec fusion_ladder_preset() {
  ProtocolSpec s;
  s.name = "fusion-ladder";
  s.actions = {
      create(0, {0, 0}, "I:b1 X:b1"),
      bell(0),
      create(1, {1, 1}, "X:t1 I:t2"),
      bell(1),
  };
  return s;
}

ProtocolSpec fusion_planar_preset() {
  ProtocolSpec s;
  s.name = "fusion-planar";
  s.actions = {
      create(0, {0, 0}, "I:e2 X:e2"),
      bell(0),
      create(1, {1, 2}, "X:e3 I:e4"),
      bell(1),
  };
  s.flux_site = {1, 2};
  return s;
}

ProtocolSpec braid_ladder_preset(bool order12_first) {
  // Two flux pairs on the n=2 ladder: pair 0 spans (v0,0)-(v1,1), pair 1 spans
  // (v1,3)-(v2,1). An interchange routes one anyon over the top rail and the
  // other under the bottom rail with a fixed handedness; the two protocols
  // apply the same interchanges in opposite order, which leaves the pair
  // worldlines linked in one case and unlinked in the other.
  ProtocolSpec s;
  s.name = order12_first ? "braid-12-23" : "braid-23-12";
  s.actions.push_back(create(0, {0, 0}, "I:b1 X:b1"));
  s.actions.push_back(create(1, {1, 3}, "I:t2 X:b2"));
  if (order12_first) {
    // sigma_12: the pair-0 ends swap; front over the top, rear under the bottom.
    s.actions.push_back(front(0, {1, 1}, "X:t1 I:t1"));
    s.actions.push_back(back(0, {1, 1}, "X:b1 I:b1"));
    // sigma_23: occupants of (v1,1) and (v1,3) swap; rear of 0 under, rear of 1 over.
    s.actions.push_back(back(0, {1, 3}, "X:b2 X:b1"));
    s.actions.push_back(back(1, {1, 1}, "X:t1 X:t2"));
    // Each ribbon ends open with one end left at v1 on a corner of p1 or p2;
    // the probe reads the joint channel of those two anyons, which the linked
    // braid spreads over all four fusion outcomes.
  } else {
    // sigma_23: front of 0 under the bottom, rear of 1 over the top.
    s.actions.push_back(front(0, {1, 1}, "X:b1 X:b2"));
    s.actions.push_back(back(1, {1, 1}, "X:t1 X:t2"));
    // sigma_12: rear of 1 over the top, rear of 0 under the bottom.
    s.actions.push_back(back(1, {0, 0}, "I:t1 X:t1"));
    s.actions.push_back(back(0, {1, 2}, "I:b1"));
    // Pair 0 is rejoined on the two v1 corners outside p1 and pair 1 spans the
    // outer corners of v0 and v2, so no charge is left inside the probed
    // region: the unlinked braid reads back the vacuum with certainty.
  }
  s.actions.push_back(bell(0));
  s.actions.push_back(bell(1));
  return s;
}

}  // namespace qd
