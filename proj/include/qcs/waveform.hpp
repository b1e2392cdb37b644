#pragma once

#include "qcs/types.hpp"

namespace qcs {

// Delay dictionary: all atoms are exact grid shifts of the base waveform, so
// the base is stored once and atoms are materialized on demand.
struct Dictionary {
    TimeGrid grid;
    cvec base_atom;                 // s~_0 on the grid, support [0, T_b)
    double tau0 = 0.0;              // 1/B
    int size = 0;                   // N
    double t_min = 0.0;             // delay of atom 0
    std::int64_t shift_samples = 0; // tau0 * rate
    std::int64_t offset_samples = 0;// t_min * rate

    double delay_of(int n) const { return t_min + n * tau0; }

    // Writes atom n into out (resized to grid.samples).
    void atom_into(int n, cvec& out) const;
    cvec atom(int n) const;
};

// Unit-modulus LFM sweeping -B/2 -> +B/2 across [0, T_b), zero elsewhere.
// Throws if the grid rate is below 2(f0 + B/2).
cvec lfm_baseband(const RadarParams& params, const TimeGrid& grid);

// N = ceil((t_max - t_min)/tau0) delayed replicas; requires t_min >= 0 and
// t_max + T_b <= T (unambiguous range) and grid-aligned tau0/t_min.
Dictionary build_dictionary(const RadarParams& params, const TimeGrid& grid,
                            double t_min, double t_max);

}  // namespace qcs
