#include "macari/phy.hpp"

#include <algorithm>
#include <cmath>

#include "macari/errors.hpp"

namespace macari {

void RadioParams::validate() const {
  if (sensitivity_dbm >= tx_power_dbm)
    throw ConfigError("sensitivity must lie below the transmit power");
  if (capture_threshold_db <= 0) throw ConfigError("capture threshold must be positive");
  if (frequency_mhz <= 0 || path_loss_coeff_n <= 0 || data_rate_bps <= 0)
    throw ConfigError("radio parameters must be positive");
}

double path_loss_db(double distance_m, const RadioParams& params) {
  const double d = std::max(distance_m, 1.0);
  return 20.0 * std::log10(params.frequency_mhz) +
         params.path_loss_coeff_n * std::log10(d) - 28.0;
}

double rx_power_dbm(double distance_m, const RadioParams& params) {
  return params.tx_power_dbm - path_loss_db(distance_m, params);
}

double radio_range_m(const RadioParams& params) {
  const double budget = params.tx_power_dbm - params.sensitivity_dbm -
                        20.0 * std::log10(params.frequency_mhz) + 28.0;
  return std::pow(10.0, budget / params.path_loss_coeff_n);
}

Micros frame_airtime_us(int mpdu_len, const RadioParams& params) {
  const long long bits = static_cast<long long>(kPhyHeaderBytes + mpdu_len) * 8;
  return (bits * 1000000LL + params.data_rate_bps - 1) / params.data_rate_bps;
}

Micros frame_occupancy_us(int mpdu_len, const RadioParams& params) {
  return ceil_to_backoff(frame_airtime_us(mpdu_len, params));
}

Micros transaction_time_us(int mpdu_len, const RadioParams& params) {
  return frame_occupancy_us(mpdu_len, params) + kTurnaroundUs +
         frame_occupancy_us(kAckMpduBytes, params);
}

Micros ifs_us(int mpdu_len) { return mpdu_len > kLifsThresholdBytes ? kLifsUs : kSifsUs; }

RxOutcome decide_reception(double candidate_dbm, Micros candidate_start_us,
                           const std::vector<Interferer>& overlapping,
                           const RadioParams& params) {
  if (candidate_dbm < params.sensitivity_dbm) return RxOutcome::below_sensitivity;
  double sum_mw = 0.0;
  bool started_first = true;
  for (const Interferer& o : overlapping) {
    if (o.rx_dbm < params.sensitivity_dbm) continue;
    sum_mw += std::pow(10.0, o.rx_dbm / 10.0);
    if (o.start_us < candidate_start_us) started_first = false;
  }
  if (sum_mw == 0.0) return RxOutcome::decoded;
  const double margin_db = candidate_dbm - 10.0 * std::log10(sum_mw);
  if (started_first && margin_db >= params.capture_threshold_db) return RxOutcome::decoded;
  return RxOutcome::collision;
}

}  // namespace macari
