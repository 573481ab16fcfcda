#pragma once

#include <cmath>
#include <optional>

#include "orbitfed/constants.hpp"

namespace orbitfed {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// RF parameters for the satellite<->GS links and the intra-plane ISL.
// Powers in dBm, gains in dBi; everything else SI.
struct LinkBudget {
    double tx_power_sat_dbm = 40.0;
    double tx_power_gs_dbm = 40.0;
    double gain_sat_dbi = 6.98;
    double gain_gs_dbi = 6.98;
    double carrier_freq = 2.4e9;       // Hz
    double noise_temp = 354.81;        // K
    double total_bandwidth = 1.0e6;    // B, Hz
    int num_resource_blocks = 5;       // N; B = N * B^D
    double isl_bandwidth = 16.0e6;     // B^h, Hz
    double isl_spectral_efficiency = 1.0; // beta_h, bits/s/Hz
    std::optional<double> fixed_rate_override = 16.0e6; // bits/s

    double rb_bandwidth() const {
        return total_bandwidth / num_resource_blocks;
    }
    void validate() const;
};

// Serialized model payload: z bits per sample times |N| samples.
struct PayloadSpec {
    double sample_bits = 8.0e6;
    double num_samples = 1.0;

    double total_bits() const { return sample_bits * num_samples; }
};

double free_space_path_loss(double distance_m, double freq_hz,
                            const PhysicalConstants& c = {});
double free_space_path_loss_db(double distance_m, double freq_hz,
                               const PhysicalConstants& c = {});

// Symmetric-channel SNR, linear units.
double snr_symmetric(const LinkBudget& b, double distance_m,
                     const PhysicalConstants& c = {});

// GS transmits the global model on the full band B.
double snr_uplink_db(const LinkBudget& b, double distance_m,
                     const PhysicalConstants& c = {});
// A sink transmits its partial model on one resource block B^D.
double snr_downlink_db(const LinkBudget& b, double distance_m,
                       const PhysicalConstants& c = {});

double shannon_rate(double bandwidth_hz, double snr_linear);

// Transmission plus propagation time; processing delays are zero.
double comm_time(const PayloadSpec& payload, double rate_bps,
                 double distance_m, const PhysicalConstants& c = {});

double uplink_rate(const LinkBudget& b, double distance_m,
                   const PhysicalConstants& c = {});
double downlink_rate(const LinkBudget& b, double distance_m,
                     const PhysicalConstants& c = {});

double uplink_latency(const LinkBudget& b, const PayloadSpec& payload,
                      double distance_m, const PhysicalConstants& c = {});
double downlink_latency(const LinkBudget& b, const PayloadSpec& payload,
                        double distance_m, const PhysicalConstants& c = {});

// One intra-plane ISL hop: payload bits over B^h * beta_h.
double isl_hop_time(const PayloadSpec& payload, const LinkBudget& b);

} // namespace orbitfed
