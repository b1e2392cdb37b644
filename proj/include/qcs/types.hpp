#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qcs {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Waveform and timing constants shared by every module.
struct RadarParams {
    double carrier_freq = 0.0;      // f_c, informational
    double intermediate_freq = 0.0; // f_0
    double bandwidth = 0.0;         // B
    double pulse_width = 0.0;       // T_b
    double pri = 0.0;               // T
    int num_pulses = 1;             // L
    int oversample_factor = 4;      // analog-grid samples per 1/(2(f0+B/2))

    double range_resolution_delay() const { return 1.0 / bandwidth; }  // tau_0

    void validate() const {
        if (bandwidth <= 0.0) throw config_error("bandwidth must be positive");
        if (pulse_width <= 0.0 || pulse_width >= pri)
            throw config_error("pulse width must satisfy 0 < T_b < T");
        if (intermediate_freq <= bandwidth / 2.0)
            throw config_error("intermediate frequency must exceed B/2");
        if (num_pulses < 1) throw config_error("need at least one pulse");
        if (oversample_factor < 1) throw config_error("oversample factor must be >= 1");
    }
};

// One point scatterer (stop-and-hop: delay fixed within a CPI).
struct Target {
    double delay = 0.0;         // t_k, seconds
    double doppler = 0.0;       // f_k^d, Hz
    double reflectivity = 0.0;  // rho_k >= 0
    double init_phase = 0.0;    // phi_k, radians
};

struct NoiseParams {
    double n0 = 0.0;        // PSD is N0/2 two-sided over the IF band
    double bandwidth = 0.0; // B
};

struct ClutterParams {
    double avg_power = 0.0;    // rho_c^2
    double doppler_beta = 4.3; // decay constant of S_c(v) = (beta/2) exp(-beta |v|)
};

// Uniform analog grid with exact integer rate.
struct TimeGrid {
    std::int64_t rate_hz = 0;
    std::int64_t samples = 0;

    double dt() const { return 1.0 / static_cast<double>(rate_hz); }
    double duration() const { return static_cast<double>(samples) / static_cast<double>(rate_hz); }
};

// Round a time to an exact sample count, rejecting off-grid values.
inline std::int64_t to_samples(double seconds, std::int64_t rate_hz, const char* what) {
    const double x = seconds * static_cast<double>(rate_hz);
    const auto n = static_cast<std::int64_t>(std::llround(x));
    if (std::abs(x - static_cast<double>(n)) > 1e-6)
        throw config_error(std::string(what) + " is not an integer number of grid samples");
    return n;
}

}  // namespace qcs
