#pragma once

#include <cstdint>
#include <vector>

#include "macari/time.hpp"
#include "macari/topology.hpp"

#include "json.hpp"

namespace macari {

/// Guaranteed slot for one end-device's high-priority uplink.
struct GtsSlot {
  NodeId end_device{0};
  Micros start_us{0};  // offset from T1
  Micros duration_us{0};
};

/// Activity period of one star inside [T1;T2]: CAP, then the GTS block, then
/// the relay interval.
struct StarSlot {
  NodeId coordinator{0};
  Micros start_us{0};  // offset from T1
  Micros cap_duration_us{0};
  std::vector<GtsSlot> gts;
  Micros relay_start_us{0};  // offset from T1
  Micros relay_duration_us{0};

  Micros gts_total_us() const {
    Micros t = 0;
    for (const GtsSlot& g : gts) t += g.duration_us;
    return t;
  }
  Micros duration_us() const { return cap_duration_us + gts_total_us() + relay_duration_us; }
  Micros end_us() const { return start_us + duration_us(); }
};

struct BeaconSlot {
  NodeId coordinator{0};
  Micros start_us{0};  // offset from T0
  Micros duration_us{0};
};

/// The full timetable of one global cycle:
/// [T0;T1] synchronization, [T1;T2] star slots, [T2;T3] routed period,
/// [T3;T0] inactivity.
struct GlobalCycle {
  std::uint32_t seq{0};
  Micros d_t0t1_us{0};
  std::vector<StarSlot> star_slots;
  Micros d_t2t3_us{0};
  Micros d_t3t0_us{0};
  std::vector<BeaconSlot> beacon_order;

  Micros d_t1t2_us() const {
    Micros t = 0;
    for (const StarSlot& s : star_slots) t += s.duration_us();
    return t;
  }
  Micros duration_us() const { return d_t0t1_us + d_t1t2_us() + d_t2t3_us + d_t3t0_us; }
};

/// Synchronization period length for n coordinators: n * (0.32 ms * n + 8 ms).
/// Each coordinator's sync slot lasts (0.32 ms * n + 8 ms).
Micros sync_period_duration_us(int n_coordinators);
Micros sync_slot_duration_us(int n_coordinators);
inline double sync_period_duration_s(int n) { return us_to_seconds(sync_period_duration_us(n)); }

/// Stars ordered bottom-up: strictly decreasing coordinator depth, ties by
/// ascending coordinator address. The PAN coordinator's star comes last.
std::vector<Star> star_order(const Tree& tree);

GlobalCycle build_cycle(const Tree& tree, Micros collect_per_star_us, Micros relay_us,
                        Micros gts_per_ed_us, double rho, Micros inactive_us,
                        std::uint32_t seq);

nlohmann::ordered_json cycle_to_json(const GlobalCycle& cycle);

}  // namespace macari
