#pragma once

#include "qcs/rng.hpp"
#include "qcs/types.hpp"
#include "qcs/waveform.hpp"

#include <string>

namespace qcs {

// Bandpass sampling rate (4 f_L + 2 B)/(4l + 1) with f_L = f0 - B/2.
// Throws unless 1 <= l <= floor(f_L / (2B)).
double bandpass_sample_rate(double f0, double bandwidth, int l);
int max_l_index(double f0, double bandwidth);

// Front-end description plus every derived quantity the discrete chain needs.
// Frequencies must be integer Hz so the analog grid can be chosen commensurate
// with both the chip rate and the sampling instants.
struct QuadCSConfig {
    // configuration
    double cs_bandwidth = 0.0;   // B_cs
    double chip_rate = 0.0;      // = B
    std::uint64_t chip_seed = 0;
    int l_index = 0;             // bandpass sampling index
    double t_min = 0.0;          // sampling window start = dictionary span start
    double window = 0.0;         // T_window

    // derived
    RadarParams radar;
    double f_if = 0.0;           // f_IF^cs
    double t_cs = 0.0;           // 2 / f_IF^cs
    int m_samples = 0;           // M
    TimeGrid grid;
    std::int64_t sample_step = 0;   // t_cs * rate, exact
    std::int64_t window_offset = 0; // t_min * rate
    std::int64_t pad = 0;           // zero padding per side, ~4/B_cs

    std::uint64_t hash() const;
    std::string describe() const;
};

// Builds a validated config. l_index = -1 selects the largest admissible l
// (lowest sampling rate). t_min/t_max default to the dictionary span; the
// sampling window is min(T - t_min, span + T_b) so every atom response is
// observed. The analog grid is the smallest multiple of B at or above
// oversample_factor x IF-Nyquist that is also a multiple of f_IF^cs.
QuadCSConfig make_quadcs_config(const RadarParams& params, double cs_bandwidth,
                                std::uint64_t chip_seed, double t_min, double t_max,
                                int l_index = -1);

// +-1 chip values (one per chip of width 1/chip_rate), reproducible from seed.
std::vector<double> chip_values(std::uint64_t seed, std::int64_t n_chips);

// Piecewise-constant chipping waveform p(t) on the grid. The grid rate must be
// an integer multiple of the chip rate.
rvec gen_chipping(const QuadCSConfig& cfg, const TimeGrid& grid);

// Compressive sampling of one pulse, complex-envelope model: chip the envelope,
// brick-wall lowpass to |f| <= B_cs/2, sample at t_min + m t_cs. This is the
// chain of the measurement model; the matrix is built through it column by
// column.
cvec front_end_envelope(const cvec& envelope, const QuadCSConfig& cfg);

// Compressive sampling of one pulse given the real IF waveform: the analytic
// envelope is extracted first (exact for bandpass signals), then the chain
// above runs. Finite-duration pulses carry spectral tails beyond the IF band,
// so this path reproduces the envelope model only to ~1e-2 relative error.
cvec front_end(const rvec& r_if, const QuadCSConfig& cfg);

struct GramMetrics {
    double coherence = 0.0;      // max off-diagonal |Gram| of normalized columns
    double energy_spread = 0.0;  // max/min column energy
};

struct MeasurementMatrix {
    cmat m;                      // M x N
    QuadCSConfig config;
    std::uint64_t config_hash = 0;

    rvec column_energy() const { return m.colwise().squaredNorm(); }
    // Largest squared singular value, cached after the first call (used for
    // solver step sizes).
    double op_norm_sq() const;

  private:
    mutable double op_norm_sq_ = 0.0;
};

MeasurementMatrix build_measurement_matrix(const QuadCSConfig& cfg, const Dictionary& dict);

// Compressive samples of an arbitrary (grid-aligned) delay: the atom at that
// delay pushed through the same chain. Equals a matrix column when the delay
// is on a dictionary bin.
cvec target_column(const QuadCSConfig& cfg, const Dictionary& dict, double delay);

// M~ rho + CN(0, noise_var) per element.
cvec sample_matrix_domain(const cvec& rho, const MeasurementMatrix& mm,
                          double noise_var, Rng& rng);

GramMetrics gram_metrics(const cmat& m);

// Flat binary cache: header (magic, M, N, chip seed, config hash) + entries.
void save_matrix(const std::string& path, const MeasurementMatrix& mm);
MeasurementMatrix load_matrix(const std::string& path);

}  // namespace qcs
