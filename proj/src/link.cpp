#include "orbitfed/link.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbitfed {

void LinkBudget::validate() const {
    if (!std::isfinite(tx_power_sat_dbm) || !std::isfinite(tx_power_gs_dbm) ||
        !std::isfinite(gain_sat_dbi) || !std::isfinite(gain_gs_dbi)) {
        throw std::domain_error("link powers/gains must be finite");
    }
    if (carrier_freq <= 0) throw std::domain_error("carrier_freq must be positive");
    if (noise_temp <= 0) throw std::domain_error("noise_temp must be positive");
    if (total_bandwidth <= 0) throw std::domain_error("total_bandwidth must be positive");
    if (num_resource_blocks < 1) throw std::domain_error("num_resource_blocks must be >= 1");
    if (isl_bandwidth <= 0 || isl_spectral_efficiency <= 0) {
        throw std::domain_error("ISL rate parameters must be positive");
    }
    if (fixed_rate_override && *fixed_rate_override <= 0) {
        throw std::domain_error("fixed_rate_override must be positive");
    }
}

double free_space_path_loss(double distance_m, double freq_hz,
                            const PhysicalConstants& c) {
    if (distance_m <= 0) throw std::domain_error("distance must be positive");
    if (freq_hz <= 0) throw std::domain_error("frequency must be positive");
    const double x = 4.0 * std::numbers::pi * distance_m * freq_hz / c.light_speed;
    return x * x;
}

double free_space_path_loss_db(double distance_m, double freq_hz,
                               const PhysicalConstants& c) {
    return linear_to_db(free_space_path_loss(distance_m, freq_hz, c));
}

namespace {

// Thermal noise power in dBm for the given bandwidth.
double noise_dbm(const LinkBudget& b, double bandwidth_hz,
                 const PhysicalConstants& c) {
    return linear_to_db(c.boltzmann * b.noise_temp * bandwidth_hz) + 30.0;
}

} // namespace

double snr_symmetric(const LinkBudget& b, double distance_m,
                     const PhysicalConstants& c) {
    const double pt_w = db_to_linear(b.tx_power_sat_dbm - 30.0);
    const double gains = db_to_linear(b.gain_sat_dbi + b.gain_gs_dbi);
    const double loss = free_space_path_loss(distance_m, b.carrier_freq, c);
    const double noise = c.boltzmann * b.noise_temp * b.total_bandwidth;
    return pt_w * gains / (noise * loss);
}

double snr_uplink_db(const LinkBudget& b, double distance_m,
                     const PhysicalConstants& c) {
    return b.tx_power_gs_dbm + b.gain_sat_dbi + b.gain_gs_dbi -
           free_space_path_loss_db(distance_m, b.carrier_freq, c) -
           noise_dbm(b, b.total_bandwidth, c);
}

double snr_downlink_db(const LinkBudget& b, double distance_m,
                       const PhysicalConstants& c) {
    return b.tx_power_sat_dbm + b.gain_sat_dbi + b.gain_gs_dbi -
           free_space_path_loss_db(distance_m, b.carrier_freq, c) -
           noise_dbm(b, b.rb_bandwidth(), c);
}

double shannon_rate(double bandwidth_hz, double snr_linear) {
    if (snr_linear < 0) throw std::domain_error("SNR must be non-negative");
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

double comm_time(const PayloadSpec& payload, double rate_bps,
                 double distance_m, const PhysicalConstants& c) {
    if (rate_bps <= 0) throw std::domain_error("rate must be positive");
    return payload.total_bits() / rate_bps + distance_m / c.light_speed;
}

double uplink_rate(const LinkBudget& b, double distance_m,
                   const PhysicalConstants& c) {
    if (b.fixed_rate_override) return *b.fixed_rate_override;
    return shannon_rate(b.total_bandwidth,
                        db_to_linear(snr_uplink_db(b, distance_m, c)));
}

double downlink_rate(const LinkBudget& b, double distance_m,
                     const PhysicalConstants& c) {
    if (b.fixed_rate_override) return *b.fixed_rate_override;
    return shannon_rate(b.rb_bandwidth(),
                        db_to_linear(snr_downlink_db(b, distance_m, c)));
}

double uplink_latency(const LinkBudget& b, const PayloadSpec& payload,
                      double distance_m, const PhysicalConstants& c) {
    if (distance_m <= 0) throw std::domain_error("distance must be positive");
    return comm_time(payload, uplink_rate(b, distance_m, c), distance_m, c);
}

double downlink_latency(const LinkBudget& b, const PayloadSpec& payload,
                        double distance_m, const PhysicalConstants& c) {
    if (distance_m <= 0) throw std::domain_error("distance must be positive");
    return comm_time(payload, downlink_rate(b, distance_m, c), distance_m, c);
}

double isl_hop_time(const PayloadSpec& payload, const LinkBudget& b) {
    const double rate = b.isl_bandwidth * b.isl_spectral_efficiency;
    if (rate <= 0) throw std::domain_error("ISL rate must be positive");
    return payload.total_bits() / rate;
}

} // namespace orbitfed
