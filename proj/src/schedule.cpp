#include "macari/schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include "macari/errors.hpp"

namespace macari {

Micros sync_slot_duration_us(int n_coordinators) {
  if (n_coordinators <= 0) throw std::domain_error("sync period needs n >= 1");
  return 320LL * n_coordinators + 8000LL;
}

Micros sync_period_duration_us(int n_coordinators) {
  return static_cast<Micros>(n_coordinators) * sync_slot_duration_us(n_coordinators);
}

std::vector<Star> star_order(const Tree& tree) {
  std::vector<Star> stars = tree.stars();
  std::stable_sort(stars.begin(), stars.end(), [&](const Star& a, const Star& b) {
    const Node& ca = tree.node(a.coordinator);
    const Node& cb = tree.node(b.coordinator);
    if (ca.depth != cb.depth) return ca.depth > cb.depth;
    return ca.address < cb.address;
  });
  return stars;
}

GlobalCycle build_cycle(const Tree& tree, Micros collect_per_star_us, Micros relay_us,
                        Micros gts_per_ed_us, double rho, Micros inactive_us,
                        std::uint32_t seq) {
  if (collect_per_star_us < 0 || relay_us < 0 || gts_per_ed_us < 0 || inactive_us < 0)
    throw std::invalid_argument("cycle durations must be nonnegative");
  if (rho < 0) throw std::invalid_argument("rho must be nonnegative");

  GlobalCycle cycle;
  cycle.seq = seq;
  const int n = tree.coordinator_count();
  cycle.d_t0t1_us = sync_period_duration_us(n);

  Micros at = 0;
  for (const Star& s : star_order(tree)) {
    StarSlot slot;
    slot.coordinator = s.coordinator;
    slot.start_us = at;
    const Micros gts_block =
        static_cast<Micros>(s.end_devices.size()) * gts_per_ed_us;
    if (gts_block > collect_per_star_us)
      throw GtsOverflowError("GTS block exceeds the collect duration");
    slot.cap_duration_us = collect_per_star_us - gts_block;
    Micros g = at + slot.cap_duration_us;
    for (NodeId ed : s.end_devices) {  // ascending id
      slot.gts.push_back(GtsSlot{ed, g, gts_per_ed_us});
      g += gts_per_ed_us;
    }
    slot.relay_start_us = at + collect_per_star_us;
    slot.relay_duration_us = relay_us;
    at += collect_per_star_us + relay_us;
    cycle.star_slots.push_back(std::move(slot));
  }

  cycle.d_t2t3_us = static_cast<Micros>(std::llround(rho * static_cast<double>(at)));
  cycle.d_t3t0_us = inactive_us;

  const Micros slot_len = sync_slot_duration_us(n);
  std::vector<const Node*> coords;
  for (const Node& x : tree.nodes)
    if (x.is_coordinator()) coords.push_back(&x);
  std::sort(coords.begin(), coords.end(),
            [](const Node* a, const Node* b) { return a->address < b->address; });
  Micros b = 0;
  for (const Node* c : coords) {
    cycle.beacon_order.push_back(BeaconSlot{c->id, b, slot_len});
    b += slot_len;
  }
  return cycle;
}

nlohmann::ordered_json cycle_to_json(const GlobalCycle& cycle) {
  nlohmann::ordered_json j;
  j["seq"] = cycle.seq;
  j["d_t0t1_us"] = cycle.d_t0t1_us;
  j["d_t1t2_us"] = cycle.d_t1t2_us();
  j["d_t2t3_us"] = cycle.d_t2t3_us;
  j["d_t3t0_us"] = cycle.d_t3t0_us;
  j["cycle_duration_us"] = cycle.duration_us();
  nlohmann::ordered_json beacons = nlohmann::ordered_json::array();
  for (const BeaconSlot& b : cycle.beacon_order)
    beacons.push_back({{"coordinator", b.coordinator},
                       {"start_us", b.start_us},
                       {"duration_us", b.duration_us}});
  j["beacon_order"] = std::move(beacons);
  nlohmann::ordered_json slots = nlohmann::ordered_json::array();
  for (const StarSlot& s : cycle.star_slots) {
    nlohmann::ordered_json js;
    js["coordinator"] = s.coordinator;
    js["start_us"] = s.start_us;
    js["cap_duration_us"] = s.cap_duration_us;
    nlohmann::ordered_json gts = nlohmann::ordered_json::array();
    for (const GtsSlot& g : s.gts)
      gts.push_back({{"end_device", g.end_device},
                     {"start_us", g.start_us},
                     {"duration_us", g.duration_us}});
    js["gts"] = std::move(gts);
    js["relay_start_us"] = s.relay_start_us;
    js["relay_duration_us"] = s.relay_duration_us;
    slots.push_back(std::move(js));
  }
  j["star_slots"] = std::move(slots);
  return j;
}

}  // namespace macari
