#pragma once

#include <vector>

#include "macari/time.hpp"

namespace macari {

inline constexpr int kPhyHeaderBytes = 6;  // synchronization header + PHY header
inline constexpr int kAckMpduBytes = 11;
inline constexpr int kLifsThresholdBytes = 18;

/// 802.15.4-style radio with ITU indoor propagation.
struct RadioParams {
  double tx_power_dbm{0.0};
  double sensitivity_dbm{-92.0};
  double capture_threshold_db{10.0};
  double frequency_mhz{2400.0};
  double path_loss_coeff_n{30.0};  // ITU distance power coefficient (office, 2.4 GHz)
  long data_rate_bps{250000};

  void validate() const;
};

/// ITU indoor total path loss, floor term fixed at zero:
///   L = 20*log10(f_MHz) + N*log10(d) - 28, distances below 1 m clamp to 1 m.
double path_loss_db(double distance_m, const RadioParams& params);

double rx_power_dbm(double distance_m, const RadioParams& params);

/// Distance at which received power meets the sensitivity floor.
double radio_range_m(const RadioParams& params);

/// Raw time on air for an MPDU of `mpdu_len` bytes (header included).
Micros frame_airtime_us(int mpdu_len, const RadioParams& params);

/// Medium occupancy: airtime rounded up to whole backoff periods.
Micros frame_occupancy_us(int mpdu_len, const RadioParams& params);

/// Full transaction: data occupancy + turnaround + acknowledgment occupancy.
Micros transaction_time_us(int mpdu_len, const RadioParams& params);

/// Inter-frame spacing after an acknowledged transaction.
Micros ifs_us(int mpdu_len);

enum class RxOutcome { decoded, collision, below_sensitivity };

struct Interferer {
  double rx_dbm{0.0};
  Micros start_us{0};
};

/// Reception decision with capture effect. The candidate is decoded when it
/// is above sensitivity and either nothing audible overlaps it, or it beats
/// the linear-scale sum of all overlapping audible powers by at least the
/// capture threshold while having started no later than any of them.
RxOutcome decide_reception(double candidate_dbm, Micros candidate_start_us,
                           const std::vector<Interferer>& overlapping,
                           const RadioParams& params);

}  // namespace macari
