#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace qcs {

// Deterministic RNG with explicit stream derivation. Monte-Carlo code derives
// one stream per (experiment, trial, purpose) so results are independent of
// scheduling and reproducible from the master seed alone. Gaussian variates
// use an explicit Box-Muller so the byte stream does not depend on the
// standard library's distribution implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        return splitmix(a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2)));
    }

    // Stable stream id from a master seed and a path of tags.
    static Rng derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = splitmix(master);
        for (auto tag : path) s = mix(s, tag);
        return Rng(s);
    }

    std::uint64_t u64() { return eng_(); }

    double uniform() {  // [0, 1)
        return (eng_() >> 11) * 0x1.0p-53;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(eng_() % span);
    }

    int sign() { return (eng_() & 1) ? 1 : -1; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // CN(0, var): E|z|^2 = var.
    std::complex<double> cnormal(double var) {
        const double s = std::sqrt(var / 2.0);
        return {s * normal(), s * normal()};
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qcs
