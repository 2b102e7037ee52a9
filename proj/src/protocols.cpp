// Copyright 2026 The satqr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "satqr/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "satqr/errors.hpp"

namespace satqr {

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Scenario1: return "scenario1";
    case Scenario::Scenario2: return "scenario2";
    case Scenario::OneSatMemory: return "one_sat_memory";
    case Scenario::OneSatBaseline: return "one_sat_baseline";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "scenario1") return Scenario::Scenario1;
  if (name == "scenario2") return Scenario::Scenario2;
  if (name == "one_sat_memory") return Scenario::OneSatMemory;
  if (name == "one_sat_baseline") return Scenario::OneSatBaseline;
  throw InvalidArgument("unknown scenario '" + std::string(name) + "'");
}

void ProtocolConfig::validate() const {
  if (!(clock_rate_hz > 0)) throw InvalidArgument("clock rate must be > 0");
  if (cutoff_s && !(*cutoff_s > 0)) throw InvalidArgument("cutoff time must be > 0");
  if (memory_modes < 1) throw InvalidArgument("memory needs at least one mode");
  if (!(dephasing_time_s > 0)) throw InvalidArgument("dephasing time must be > 0");
}

void ChainSpec::validate() const {
  if (nodes.size() < 3) throw InvalidArgument("chain needs at least one repeater node");
  if (links.size() + 1 != nodes.size()) throw InvalidArgument("chain needs nodes.size()-1 links");
  if (nodes.front().has_memory || nodes.back().has_memory)
    throw InvalidArgument("end stations measure on arrival and carry no memory");
  if (memory_modes < 1) throw InvalidArgument("memory needs at least one mode");
  if (cutoff_s && !(*cutoff_s > 0)) throw InvalidArgument("cutoff time must be > 0");
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (!nodes[i].has_memory) throw InvalidArgument("interior node " + nodes[i].name + " needs memory");
    if (!(nodes[i].dephasing_time_s > 0)) throw InvalidArgument("dephasing time must be > 0");
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    const LinkSpec& l = links[i];
    if (!(l.p_success > 0 && l.p_success <= 1))
      throw SimulationError("link " + std::to_string(i) + " never succeeds (p=" +
                            std::to_string(l.p_success) + ")");
    if (l.kind == LinkKind::SlottedSource) {
      if (!(l.p_load > 0 && l.p_load <= 1))
        throw SimulationError("link " + std::to_string(i) + " never loads its memory");
      if (!(l.slot_period_s > 0)) throw InvalidArgument("slotted link needs a slot period > 0");
      if (!(l.confirm_delay_s >= 0)) throw InvalidArgument("confirmation delay must be >= 0");
      if (nodes[i].has_memory == nodes[i + 1].has_memory)
        throw InvalidArgument("slotted link needs exactly one memory end");
    } else if (!(l.trial_time_s >= 0)) {
      throw InvalidArgument("trial time must be >= 0");
    }
    for (double a : l.alpha)
      if (!(a >= 0 && a <= 1)) throw InvalidArgument("alpha must lie in [0,1]");
  }
}

double LinkStats::mean() const {
  return established ? sum_duration_s / static_cast<double>(established) : 0.0;
}

double LinkStats::std_error() const {
  if (established < 2) return 0.0;
  const double n = static_cast<double>(established);
  const double m = mean();
  const double var = std::max(0.0, (sum_duration_sq - n * m * m) / (n - 1.0));
  return std::sqrt(var / n);
}

double t_mem(double d_sa_a_km, double d_sa_sc_km, double d_a_sc_km, double c_km_s) {
  if (!(d_sa_a_km >= 0 && d_sa_sc_km >= 0 && d_a_sc_km >= 0))
    throw DomainError("distances must be >= 0");
  const double path = d_sa_a_km - d_sa_sc_km + d_a_sc_km;
  const double scale = std::max({d_sa_a_km, d_sa_sc_km, d_a_sc_km, 1.0});
  if (path < -1e-9 * scale) throw DomainError("t_mem is negative: distances violate geometry");
  return std::max(path, 0.0) / c_km_s;
}

CutoffDecision apply_cutoff(const TimedPair& pair, double now, std::optional<double> cutoff_s) {
  if (!cutoff_s) return CutoffDecision::Keep;
  return now - pair.confirmed_at > *cutoff_s ? CutoffDecision::Discard : CutoffDecision::Keep;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNoMode = std::numeric_limits<std::uint32_t>::max();

struct QubitSlot {
  std::uint32_t node = 0;
  std::uint32_t mode = kNoMode;
  bool in_memory = false;
  double confirmed = 0.0;
};

struct LivePair {
  TimedPair timed;
  std::array<QubitSlot, 2> q;  // q[0] toward A, q[1] toward B
  double info_time = 0.0;
  std::uint64_t generation = 0;
  bool alive = false;
};

struct Trial {
  std::uint32_t link = 0;
  std::uint32_t left_mode = kNoMode;
  std::uint32_t right_mode = kNoMode;
  double start = 0.0;
};

class ChainSimulation {
 public:
  ChainSimulation(const ChainSpec& chain, const RunOptions& opts) : chain_(chain), opts_(opts) {
    chain_.validate();
    const std::size_t n_nodes = chain_.nodes.size();
    banks_.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
      if (chain_.nodes[i].has_memory)
        banks_[i] = {MemoryBank(chain_.memory_modes), MemoryBank(chain_.memory_modes)};
    for (std::size_t l = 0; l < chain_.links.size(); ++l) rngs_.push_back(make_stream(opts.seed, l));
    out_.links.resize(chain_.links.size());
  }

  RunOutput run() {
    if (opts_.target_samples == 0) return std::move(out_);
    for (std::uint32_t l = 0; l < chain_.links.size(); ++l) start_trials(l, 0.0, true);
    while (out_.records.size() < opts_.target_samples) {
      if (queue_.empty())
        throw SimulationError("event queue drained before the sample target was reached");
      if (opts_.max_time_s && queue_.next_time() > *opts_.max_time_s) {
        out_.hit_time_limit = true;
        break;
      }
      if (queue_.resolved() >= opts_.max_events)
        throw SimulationError("event budget exhausted after " + std::to_string(queue_.resolved()) +
                              " events");
      const SimEvent ev = queue_.resolve_next();
      if (opts_.eager_dephasing) eager_update(ev.time);
      dispatch(ev);
      if (opts_.audit) check_invariants();
    }
    out_.events = queue_.resolved();
    if (out_.hit_time_limit)
      out_.total_time_s = *opts_.max_time_s;
    else
      out_.total_time_s = out_.records.empty() ? 0.0 : out_.records.back().time;
    return std::move(out_);
  }

 private:
  MemoryBank* bank(std::uint32_t node, int side) {
    if (!chain_.nodes[node].has_memory) return nullptr;
    return &banks_[node][side];
  }

  // Banks at the two ends of link l: right-facing bank of node l and
  // left-facing bank of node l+1.
  MemoryBank* left_bank(std::uint32_t l) { return bank(l, 1); }
  MemoryBank* right_bank(std::uint32_t l) { return bank(l + 1, 0); }

  double dephasing_of(const QubitSlot& q) const {
    return q.in_memory ? chain_.nodes[q.node].dephasing_time_s : 0.0;
  }

  void update_pair(LivePair& p, double now) {
    lazy_update(p.timed, now, {dephasing_of(p.q[0]), dephasing_of(p.q[1])});
  }

  void start_trials(std::uint32_t l, double now, bool initial = false) {
    const LinkSpec& spec = chain_.links[l];
    MemoryBank* lb = left_bank(l);
    MemoryBank* rb = right_bank(l);
    while (true) {
      std::optional<std::uint32_t> lm, rm;
      if (lb && !(lm = lb->lowest_free())) return;
      if (rb && !(rm = rb->lowest_free())) return;
      Trial t;
      t.link = l;
      t.start = now;
      if (lm) {
        lb->reserve(*lm);
        t.left_mode = *lm;
      }
      if (rm) {
        rb->reserve(*rm);
        t.right_mode = *rm;
      }
      Rng& rng = rngs_[l];
      double established = 0.0;
      if (spec.kind == LinkKind::SlottedSource) {
        const std::uint32_t mode = lm ? *lm : *rm;
        // Mode i owns every modes-th clock slot, starting with slot i.
        if (initial) t.start = spec.slot_period_s * mode;
        const double period = spec.slot_period_s * chain_.memory_modes;
        const std::uint64_t rounds = sample_geometric(spec.p_success, rng);
        const std::uint64_t loads = sample_geometric_sum(rounds, spec.p_load, rng);
        established = t.start + static_cast<double>(rounds) * spec.confirm_delay_s +
                      static_cast<double>(loads) * period;
      } else {
        const std::uint64_t k = sample_geometric(spec.p_success, rng);
        established = t.start + static_cast<double>(k) * spec.trial_time_s;
      }
      const std::uint64_t id = store_trial(t);
      queue_.schedule({established, 0, EventKind::PairEstablished, l, 0, id});
    }
  }

  std::uint64_t store_trial(const Trial& t) {
    if (!free_trials_.empty()) {
      const std::uint64_t id = free_trials_.back();
      free_trials_.pop_back();
      trials_[id] = t;
      return id;
    }
    trials_.push_back(t);
    return trials_.size() - 1;
  }

  std::uint64_t store_pair(LivePair p) {
    p.alive = true;
    if (!free_pairs_.empty()) {
      const std::uint64_t id = free_pairs_.back();
      free_pairs_.pop_back();
      p.generation = pairs_[id].generation + 1;
      pairs_[id] = std::move(p);
      return id;
    }
    pairs_.push_back(std::move(p));
    return pairs_.size() - 1;
  }

  void kill_pair(std::uint64_t id) {
    pairs_[id].alive = false;
    free_pairs_.push_back(id);
  }

  void dispatch(const SimEvent& ev) {
    switch (ev.kind) {
      case EventKind::PairEstablished: on_established(ev); break;
      case EventKind::DiscardCutoff: on_cutoff(ev); break;
      case EventKind::ConfirmationArrival: on_delivery(ev); break;
      default: throw SimulationError("unexpected event kind");
    }
  }

  void on_established(const SimEvent& ev) {
    const double now = ev.time;
    const Trial t = trials_[ev.c];
    free_trials_.push_back(ev.c);
    const std::uint32_t l = t.link;
    const LinkSpec& spec = chain_.links[l];

    LinkStats& st = out_.links[l];
    const double duration = now - t.start;
    ++st.established;
    st.sum_duration_s += duration;
    st.sum_duration_sq += duration * duration;

    LivePair p;
    p.timed.state = BellDiagonalState::phi_plus();
    p.timed.nodes = {l, l + 1};
    p.timed.confirmed_at = now;
    p.info_time = now;
    const std::array<std::uint32_t, 2> modes{t.left_mode, t.right_mode};
    for (int side = 0; side < 2; ++side) {
      QubitSlot& q = p.q[side];
      q.node = l + side;
      q.mode = modes[side];
      q.in_memory = chain_.nodes[q.node].has_memory;
      q.confirmed = now;
      p.timed.last_update[side] = q.in_memory ? now - spec.stored_at_confirm_s[side] : now;
      if (spec.alpha[side] < 1.0) p.timed.state = white_noise(p.timed.state, side, spec.alpha[side]);
    }
    const std::uint64_t id = store_pair(std::move(p));
    if (MemoryBank* lb = left_bank(l)) lb->occupy(t.left_mode, id, now);
    if (MemoryBank* rb = right_bank(l)) rb->occupy(t.right_mode, id, now);
    schedule_cutoff(id, now);

    try_swap(l, now);
    try_swap(l + 1, now);
  }

  double memory_confirmed(const LivePair& p) const {
    double c = std::numeric_limits<double>::infinity();
    for (const QubitSlot& q : p.q)
      if (q.in_memory) c = std::min(c, q.confirmed);
    return c;
  }

  void schedule_cutoff(std::uint64_t id, double now) {
    if (!chain_.cutoff_s) return;
    const LivePair& p = pairs_[id];
    const double deadline = p.timed.confirmed_at + *chain_.cutoff_s;
    const double when = std::max(now, std::nextafter(deadline, kInf));
    queue_.schedule({when, 0, EventKind::DiscardCutoff, static_cast<std::uint32_t>(p.generation),
                     static_cast<std::uint32_t>(p.generation >> 32), id});
  }

  void on_cutoff(const SimEvent& ev) {
    const std::uint64_t id = ev.c;
    LivePair& p = pairs_[id];
    const std::uint64_t gen = (static_cast<std::uint64_t>(ev.b) << 32) | ev.a;
    if (!p.alive || p.generation != gen) return;
    if (apply_cutoff(p.timed, ev.time, chain_.cutoff_s) == CutoffDecision::Keep) {
      queue_.schedule({std::nextafter(ev.time, kInf), 0, EventKind::DiscardCutoff, ev.a, ev.b, id});
      return;
    }
    ++out_.discarded;
    std::vector<std::uint32_t> restart;
    for (const QubitSlot& q : p.q) {
      if (!q.in_memory) continue;
      // A stored qubit sits in the bank facing its partner.
      const int facing = (&q == &p.q[0]) ? 1 : 0;
      banks_[q.node][facing].release(q.mode);
      restart.push_back(facing == 1 ? q.node : q.node - 1);
    }
    kill_pair(id);
    for (std::uint32_t l : restart) start_trials(l, ev.time);
  }

  void try_swap(std::uint32_t node, double now) {
    if (node == 0 || node + 1 >= chain_.nodes.size()) return;
    MemoryBank& lb = banks_[node][0];
    MemoryBank& rb = banks_[node][1];
    while (auto lm = lb.oldest()) {
      auto rm = rb.oldest();
      if (!rm) return;
      const std::uint64_t lid = static_cast<std::uint64_t>(lb.slot(*lm));
      const std::uint64_t rid = static_cast<std::uint64_t>(rb.slot(*rm));
      LivePair& lp = pairs_[lid];
      LivePair& rp = pairs_[rid];
      if (opts_.audit) audit_swap(node, lb, *lm, lp, rb, *rm, rp, now);

      update_pair(lp, now);
      update_pair(rp, now);
      LivePair merged;
      merged.timed = swap(lp.timed, rp.timed);
      merged.q = {lp.q[0], rp.q[1]};
      const ChainNode& here = chain_.nodes[node];
      merged.info_time = std::max({lp.info_time, rp.info_time,
                                   now + std::max(here.delay_to_a_s, here.delay_to_b_s)});
      merged.timed.confirmed_at = memory_confirmed(merged);

      lb.release(*lm);
      rb.release(*rm);
      kill_pair(lid);
      kill_pair(rid);
      ++out_.swaps;

      if (!merged.q[0].in_memory && !merged.q[1].in_memory) {
        deliveries_.push_back(merged.timed.state);
        queue_.schedule({merged.info_time, 0, EventKind::ConfirmationArrival, 0, 0,
                         deliveries_.size() - 1});
      } else {
        const std::uint64_t id = store_pair(std::move(merged));
        const LivePair& m = pairs_[id];
        if (m.q[0].in_memory) banks_[m.q[0].node][1].repoint(m.q[0].mode, id);
        if (m.q[1].in_memory) banks_[m.q[1].node][0].repoint(m.q[1].mode, id);
        schedule_cutoff(id, now);
      }
      start_trials(node - 1, now);
      start_trials(node, now);
    }
  }

  void on_delivery(const SimEvent& ev) {
    out_.records.push_back({ev.time, deliveries_[ev.c]});
  }

  void eager_update(double now) {
    for (LivePair& p : pairs_)
      if (p.alive) update_pair(p, now);
  }

  void audit_swap(std::uint32_t node, const MemoryBank& lb, std::uint32_t lm, const LivePair& lp,
                  const MemoryBank& rb, std::uint32_t rm, const LivePair& rp, double now) const {
    if (!lp.alive || !rp.alive) throw SimulationError("swap would use a discarded pair");
    if (lp.q[1].node != node || rp.q[0].node != node || lp.q[1].mode != lm || rp.q[0].mode != rm)
      throw SimulationError("swap pair does not sit in the selected mode");
    if (lp.q[1].confirmed > now || rp.q[0].confirmed > now)
      throw SimulationError("swap would use an unconfirmed pair");
    for (const auto& [c, m] : lb.eligible())
      if (c < lp.q[1].confirmed) throw SimulationError("left selection is not the oldest");
    for (const auto& [c, m] : rb.eligible())
      if (c < rp.q[0].confirmed) throw SimulationError("right selection is not the oldest");
  }

  void check_invariants() const {
    std::uint64_t referenced = 0;
    for (std::size_t node = 0; node < banks_.size(); ++node) {
      if (!chain_.nodes[node].has_memory) continue;
      for (int side = 0; side < 2; ++side) {
        const MemoryBank& b = banks_[node][side];
        if (b.occupied_count() > b.modes()) throw SimulationError("bank over capacity");
        for (std::uint32_t m = 0; m < b.modes(); ++m) {
          const std::int64_t s = b.slot(m);
          if (s < 0) continue;
          ++referenced;
          const LivePair& p = pairs_.at(static_cast<std::size_t>(s));
          const QubitSlot& q = p.q[side == 1 ? 0 : 1];
          if (!p.alive || q.node != node || q.mode != m || !q.in_memory)
            throw SimulationError("bank slot references a freed or foreign pair");
        }
      }
    }
    std::uint64_t stored = 0;
    for (const LivePair& p : pairs_)
      if (p.alive)
        for (const QubitSlot& q : p.q) stored += q.in_memory ? 1 : 0;
    if (stored != referenced) throw SimulationError("stored qubits and bank slots disagree");
  }

  ChainSpec chain_;
  RunOptions opts_;
  EventQueue queue_;
  std::vector<std::array<MemoryBank, 2>> banks_;
  std::vector<Rng> rngs_;
  std::vector<LivePair> pairs_;
  std::vector<std::uint64_t> free_pairs_;
  std::vector<Trial> trials_;
  std::vector<std::uint64_t> free_trials_;
  std::vector<BellDiagonalState> deliveries_;
  RunOutput out_;
};

}  // namespace

namespace {

void require_visible(const StationNode& ground, const StationNode& sat, const GeometryConfig& geo) {
  if (!(elevation_between(ground, sat, geo) > 0.0))
    throw VisibilityError(sat.name + " is below the horizon of " + ground.name);
}

double dif(const StationNode& x, const StationNode& y, const OpticalParams& o) {
  return diffraction_efficiency(pair_distance(x, y) * 1e3, o);
}

// Classical delays from every chain node to both ends, following the chain.
void fill_delays(std::vector<ChainNode>& nodes, const std::vector<const StationNode*>& where,
                 double c_km_s) {
  const std::size_t n = nodes.size();
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) cum[i] = cum[i - 1] + pair_distance(*where[i - 1], *where[i]);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].delay_to_a_s = cum[i] / c_km_s;
    nodes[i].delay_to_b_s = (cum[n - 1] - cum[i]) / c_km_s;
  }
}

ChainNode memory_node(const std::string& name, const ProtocolConfig& proto) {
  return {name, true, proto.dephasing_time_s, 0.0, 0.0};
}

ChainNode ground_station(const std::string& name) { return {name, false, 0.0, 0.0, 0.0}; }

// Emissive memory on `sat` sending to ground detector `ground`.
LinkSpec ground_emissive(const StationNode& ground, const StationNode& sat, bool ground_is_left,
                         const PhysicalSetup& s) {
  const StationNode path[2] = {ground, sat};
  const LinkBudget lb = link_budget(LinkClass::GroundSatellite, path, s.optics, s.background,
                                    s.geometry);
  const EffectiveClick click = effective_click(lb.total, lb.noise_prob);
  LinkSpec l;
  l.kind = LinkKind::Emissive;
  l.p_success = click.eta_eff;
  l.trial_time_s = 2.0 * pair_distance(ground, sat) / s.geometry.speed_of_light_km_s();
  const int g = ground_is_left ? 0 : 1;
  l.alpha[g] = click.alpha;
  l.stored_at_confirm_s[1 - g] = l.trial_time_s;
  return l;
}

// Emissive memory `emitter` sending to absorptive memory `absorber`.
LinkSpec sat_sat(const StationNode& emitter, const StationNode& absorber, bool emitter_is_left,
                 const PhysicalSetup& s) {
  const StationNode path[2] = {emitter, absorber};
  const LinkBudget lb = link_budget(LinkClass::SatelliteSatellite, path, s.optics, s.background,
                                    s.geometry);
  LinkSpec l;
  l.kind = LinkKind::Emissive;
  l.p_success = lb.total;
  l.trial_time_s = 2.0 * pair_distance(emitter, absorber) / s.geometry.speed_of_light_km_s();
  const int e = emitter_is_left ? 0 : 1;
  l.stored_at_confirm_s[e] = l.trial_time_s;
  l.stored_at_confirm_s[1 - e] = 0.5 * l.trial_time_s;
  return l;
}

// Source on `source` feeding ground `ground` and the central memory `mem`.
LinkSpec slotted(const StationNode& ground, const StationNode& source, const StationNode& mem,
                 bool ground_is_left, const PhysicalSetup& s, const ProtocolConfig& proto) {
  const GeometryConfig& geo = s.geometry;
  const OpticalParams& o = s.optics;
  const double eta_ground = o.detector_efficiency *
                            atmospheric_efficiency(elevation_between(ground, source, geo),
                                                   o.zenith_transmittance) *
                            dif(source, ground, o);
  const EffectiveClick click = effective_click(eta_ground, noise_click_prob(o, s.background));
  LinkSpec l;
  l.kind = LinkKind::SlottedSource;
  l.p_success = click.eta_eff;
  l.p_load = dif(source, mem, o) * o.memory_efficiency;
  l.slot_period_s = 1.0 / proto.clock_rate_hz;
  l.confirm_delay_s = t_mem(pair_distance(source, ground), pair_distance(source, mem),
                            pair_distance(ground, mem), geo.speed_of_light_km_s());
  const int g = ground_is_left ? 0 : 1;
  l.alpha[g] = click.alpha;
  l.stored_at_confirm_s[1 - g] = l.confirm_delay_s;
  return l;
}

void check_setup(const PhysicalSetup& s, const ProtocolConfig& proto) {
  s.geometry.validate();
  s.layout.validate();
  s.optics.validate();
  s.background.validate();
  proto.validate();
}

ChainSpec base_chain(const ProtocolConfig& proto) {
  ChainSpec c;
  c.memory_modes = proto.memory_modes;
  c.cutoff_s = proto.cutoff_s;
  return c;
}

}  // namespace

ChainSpec make_scenario1_chain(const PhysicalSetup& s, const ProtocolConfig& proto) {
  check_setup(s, proto);
  Constellation c = node_positions(s.layout, s.geometry);
  c.sat_c.role = NodeRole::AbsorptiveMemory;
  require_visible(c.a, c.sat_a, s.geometry);
  require_visible(c.b, c.sat_b, s.geometry);
  ChainSpec chain = base_chain(proto);
  chain.nodes = {ground_station("A"), memory_node("S_C", proto), ground_station("B")};
  chain.links = {slotted(c.a, c.sat_a, c.sat_c, true, s, proto),
                 slotted(c.b, c.sat_b, c.sat_c, false, s, proto)};
  fill_delays(chain.nodes, {&c.a, &c.sat_c, &c.b}, s.geometry.speed_of_light_km_s());
  // S_C learns of a pair through the ground stations: route via the sources.
  const double ck = s.geometry.speed_of_light_km_s();
  chain.nodes[1].delay_to_a_s = (pair_distance(c.sat_c, c.sat_a) + pair_distance(c.sat_a, c.a)) / ck;
  chain.nodes[1].delay_to_b_s = (pair_distance(c.sat_c, c.sat_b) + pair_distance(c.sat_b, c.b)) / ck;
  return chain;
}

ChainSpec make_scenario2_chain(const PhysicalSetup& s, const ProtocolConfig& proto) {
  check_setup(s, proto);
  Constellation c = node_positions(s.layout, s.geometry);
  c.sat_a.role = NodeRole::EmissiveMemory;
  c.sat_b.role = NodeRole::EmissiveMemory;
  c.sat_c.role = NodeRole::AbsorptiveMemory;
  require_visible(c.a, c.sat_a, s.geometry);
  require_visible(c.b, c.sat_b, s.geometry);
  ChainSpec chain = base_chain(proto);
  chain.nodes = {ground_station("A"), memory_node("S_A", proto), memory_node("S_C", proto),
                 memory_node("S_B", proto), ground_station("B")};
  chain.links = {ground_emissive(c.a, c.sat_a, true, s), sat_sat(c.sat_a, c.sat_c, true, s),
                 sat_sat(c.sat_b, c.sat_c, false, s), ground_emissive(c.b, c.sat_b, false, s)};
  fill_delays(chain.nodes, {&c.a, &c.sat_a, &c.sat_c, &c.sat_b, &c.b},
              s.geometry.speed_of_light_km_s());
  return chain;
}

ChainSpec make_one_sat_memory_chain(const PhysicalSetup& s, const ProtocolConfig& proto) {
  check_setup(s, proto);
  Constellation c = node_positions(s.layout, s.geometry);
  c.sat_c.role = NodeRole::EmissiveMemory;
  require_visible(c.a, c.sat_c, s.geometry);
  require_visible(c.b, c.sat_c, s.geometry);
  ChainSpec chain = base_chain(proto);
  chain.nodes = {ground_station("A"), memory_node("S", proto), ground_station("B")};
  chain.links = {ground_emissive(c.a, c.sat_c, true, s), ground_emissive(c.b, c.sat_c, false, s)};
  fill_delays(chain.nodes, {&c.a, &c.sat_c, &c.b}, s.geometry.speed_of_light_km_s());
  return chain;
}

double run_one_sat_baseline(const PhysicalSetup& s, const ProtocolConfig& proto) {
  check_setup(s, proto);
  const Constellation c = node_positions(s.layout, s.geometry);
  require_visible(c.a, c.sat_c, s.geometry);
  require_visible(c.b, c.sat_c, s.geometry);
  const StationNode pa[2] = {c.a, c.sat_c};
  const StationNode pb[2] = {c.b, c.sat_c};
  const double eta_a =
      link_budget(LinkClass::GroundSatellite, pa, s.optics, s.background, s.geometry).total;
  const double eta_b =
      link_budget(LinkClass::GroundSatellite, pb, s.optics, s.background, s.geometry).total;
  return proto.clock_rate_hz * eta_a * eta_b;
}

ChainSpec make_chain(const PhysicalSetup& s, const ProtocolConfig& proto) {
  switch (proto.scenario) {
    case Scenario::Scenario1: return make_scenario1_chain(s, proto);
    case Scenario::Scenario2: return make_scenario2_chain(s, proto);
    case Scenario::OneSatMemory: return make_one_sat_memory_chain(s, proto);
    case Scenario::OneSatBaseline: break;
  }
  throw InvalidArgument("the memoryless baseline has no chain");
}

RunOutput run_chain(const ChainSpec& chain, const RunOptions& opts) {
  return ChainSimulation(chain, opts).run();
}

RunOutput run_scenario1(const PhysicalSetup& s, const ProtocolConfig& proto, const RunOptions& o) {
  return run_chain(make_scenario1_chain(s, proto), o);
}

RunOutput run_scenario2(const PhysicalSetup& s, const ProtocolConfig& proto, const RunOptions& o) {
  return run_chain(make_scenario2_chain(s, proto), o);
}

RunOutput run_one_sat_memory(const PhysicalSetup& s, const ProtocolConfig& proto,
                             const RunOptions& o) {
  return run_chain(make_one_sat_memory_chain(s, proto), o);
}

}  // namespace satqr
