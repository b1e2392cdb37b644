#include "qcs/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>

namespace qcs::fft {
namespace {

std::mutex plan_mutex;

fftw_plan get_plan(std::size_t n, int sign) {
    // Separate caches per direction. FFTW_UNALIGNED lets the cached plan run
    // on any caller buffer via fftw_execute_dft.
    static std::unordered_map<std::size_t, fftw_plan> fwd, inv;
    auto& cache = (sign == FFTW_FORWARD) ? fwd : inv;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(n, p);
    return p;
}

void run(std::complex<double>* data, std::size_t n, int sign) {
    if (n == 0) return;
    fftw_plan p = get_plan(n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward(std::complex<double>* data, std::size_t n) { run(data, n, FFTW_FORWARD); }
void inverse(std::complex<double>* data, std::size_t n) { run(data, n, FFTW_BACKWARD); }
void forward(std::vector<std::complex<double>>& data) { run(data.data(), data.size(), FFTW_FORWARD); }
void inverse(std::vector<std::complex<double>>& data) { run(data.data(), data.size(), FFTW_BACKWARD); }

}  // namespace qcs::fft
