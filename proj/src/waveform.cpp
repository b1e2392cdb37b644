#include "qcs/waveform.hpp"

#include <cmath>

namespace qcs {

cvec lfm_baseband(const RadarParams& params, const TimeGrid& grid) {
    params.validate();
    const double nyq = 2.0 * (params.intermediate_freq + params.bandwidth / 2.0);
    if (static_cast<double>(grid.rate_hz) < nyq - 1e-9)
        throw config_error("analog grid rate below IF Nyquist rate");
    cvec out = cvec::Zero(grid.samples);
    const std::int64_t n_pulse = to_samples(params.pulse_width, grid.rate_hz, "pulse width");
    const double dt = grid.dt();
    const double b = params.bandwidth;
    const double tb = params.pulse_width;
    for (std::int64_t i = 0; i < n_pulse && i < grid.samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double phase = M_PI * b * t * (t / tb - 1.0);
        out[i] = cplx(std::cos(phase), std::sin(phase));
    }
    return out;
}

Dictionary build_dictionary(const RadarParams& params, const TimeGrid& grid,
                            double t_min, double t_max) {
    params.validate();
    if (t_min < 0.0) throw config_error("dictionary span must start at t_min >= 0");
    if (t_max <= t_min) throw config_error("empty dictionary delay span");
    if (t_max + params.pulse_width > params.pri + 1e-12)
        throw config_error("dictionary span violates t_max + T_b <= T");

    Dictionary d;
    d.grid = grid;
    d.base_atom = lfm_baseband(params, grid);
    d.tau0 = params.range_resolution_delay();
    d.size = static_cast<int>(std::ceil((t_max - t_min) / d.tau0 - 1e-9));
    d.t_min = t_min;
    d.shift_samples = to_samples(d.tau0, grid.rate_hz, "tau0");
    d.offset_samples = to_samples(t_min, grid.rate_hz, "t_min");
    if (d.offset_samples + (d.size - 1) * d.shift_samples +
            to_samples(params.pulse_width, grid.rate_hz, "pulse width") > grid.samples)
        throw config_error("dictionary atoms extend past the grid");
    return d;
}

void Dictionary::atom_into(int n, cvec& out) const {
    if (n < 0 || n >= size) throw config_error("atom index out of range");
    out = cvec::Zero(grid.samples);
    const std::int64_t shift = offset_samples + static_cast<std::int64_t>(n) * shift_samples;
    const std::int64_t count = grid.samples - shift;
    out.segment(shift, count) = base_atom.head(count);
}

cvec Dictionary::atom(int n) const {
    cvec out;
    atom_into(n, out);
    return out;
}

}  // namespace qcs
