#include "qcs/quadcs.hpp"

#include "qcs/fft.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace qcs {
namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::int64_t exact_hz(double f, const char* what) {
    const auto n = static_cast<std::int64_t>(std::llround(f));
    if (std::abs(f - static_cast<double>(n)) > 1e-6)
        throw config_error(std::string(what) + " must be an integer number of Hz");
    return n;
}

}  // namespace

int max_l_index(double f0, double bandwidth) {
    const double fl = f0 - bandwidth / 2.0;
    if (fl <= 0.0) throw config_error("bandpass sampling needs f0 > B/2");
    return static_cast<int>(std::floor(fl / (2.0 * bandwidth) + 1e-12));
}

double bandpass_sample_rate(double f0, double bandwidth, int l) {
    const double fl = f0 - bandwidth / 2.0;
    if (fl <= 0.0) throw config_error("bandpass sampling needs f0 > B/2");
    if (l < 1 || l > max_l_index(f0, bandwidth))
        throw config_error("bandpass sampling index l out of range");
    return (4.0 * fl + 2.0 * bandwidth) / (4.0 * l + 1.0);
}

QuadCSConfig make_quadcs_config(const RadarParams& params, double cs_bandwidth,
                                std::uint64_t chip_seed, double t_min, double t_max,
                                int l_index) {
    params.validate();
    if (cs_bandwidth <= 0.0 || cs_bandwidth >= params.bandwidth)
        throw config_error("need 0 < B_cs < B");
    if (l_index == -1) l_index = max_l_index(params.intermediate_freq, cs_bandwidth);

    QuadCSConfig cfg;
    cfg.radar = params;
    cfg.cs_bandwidth = cs_bandwidth;
    cfg.chip_rate = params.bandwidth;
    cfg.chip_seed = chip_seed;
    cfg.l_index = l_index;
    cfg.t_min = t_min;
    cfg.f_if = bandpass_sample_rate(params.intermediate_freq, cs_bandwidth, l_index);
    cfg.t_cs = 2.0 / cfg.f_if;
    cfg.window = std::min(params.pri - t_min, (t_max - t_min) + params.pulse_width);
    if (cfg.window <= 0.0) throw config_error("empty sampling window");

    // Grid: smallest multiple of B at or above oversample x IF-Nyquist that
    // divides evenly into both the chip width and the sampling interval.
    // f_IF = 4 f0/(4l+1), so G must satisfy (4l+1) G = 0 mod 4 f0.
    const std::int64_t b_hz = exact_hz(params.bandwidth, "bandwidth");
    const std::int64_t f0x4 = 4 * exact_hz(params.intermediate_freq, "intermediate frequency");
    const double min_rate =
        params.oversample_factor * 2.0 * (params.intermediate_freq + params.bandwidth / 2.0);
    std::int64_t rate = 0;
    const auto k0 = static_cast<std::int64_t>(std::ceil(min_rate / params.bandwidth - 1e-9));
    for (std::int64_t k = k0; k < k0 + 65536; ++k) {
        const std::int64_t g = k * b_hz;
        if ((g * (4 * l_index + 1)) % f0x4 == 0) {
            rate = g;
            break;
        }
    }
    if (rate == 0) throw config_error("no analog grid commensurate with f_IF^cs");
    cfg.grid.rate_hz = rate;
    cfg.grid.samples = to_samples(params.pri, rate, "PRI");

    cfg.sample_step = 2 * rate * (4 * l_index + 1) / f0x4;
    cfg.window_offset = to_samples(t_min, rate, "sampling window start");
    const std::int64_t window_samples = to_samples(cfg.window, rate, "sampling window");
    cfg.m_samples = static_cast<int>(window_samples / cfg.sample_step);
    cfg.pad = static_cast<std::int64_t>(std::llround(4.0 * rate / cs_bandwidth));
    return cfg;
}

std::uint64_t QuadCSConfig::hash() const { return fnv1a(describe()); }

std::string QuadCSConfig::describe() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "B=%.0f f0=%.0f Tb=%.9f T=%.9f Bcs=%.0f l=%d seed=%llu tmin=%.9f "
                  "win=%.9f grid=%lld M=%d",
                  radar.bandwidth, radar.intermediate_freq, radar.pulse_width, radar.pri,
                  cs_bandwidth, l_index, static_cast<unsigned long long>(chip_seed), t_min,
                  window, static_cast<long long>(grid.rate_hz), m_samples);
    return buf;
}

std::vector<double> chip_values(std::uint64_t seed, std::int64_t n_chips) {
    Rng rng = Rng::derive(seed, {0x63686970ull});  // "chip"
    std::vector<double> v(static_cast<std::size_t>(n_chips));
    for (auto& x : v) x = static_cast<double>(rng.sign());
    return v;
}

rvec gen_chipping(const QuadCSConfig& cfg, const TimeGrid& grid) {
    const double ratio = static_cast<double>(grid.rate_hz) / cfg.chip_rate;
    const auto chip_len = static_cast<std::int64_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(chip_len)) > 1e-9 || chip_len < 1)
        throw config_error("grid rate is not an integer multiple of the chip rate");
    const std::int64_t n_chips = (grid.samples + chip_len - 1) / chip_len;
    const auto chips = chip_values(cfg.chip_seed, n_chips);
    rvec p(grid.samples);
    for (std::int64_t i = 0; i < grid.samples; ++i) p[i] = chips[static_cast<std::size_t>(i / chip_len)];
    return p;
}

namespace {

// Chip -> brick-wall lowpass |f| <= B_cs/2 -> sample. Assumes env is already
// chipped; works on a zero-padded copy so filter ringing does not wrap into
// the record.
cvec filter_and_sample(cvec chipped, const QuadCSConfig& cfg) {
    const std::int64_t r = cfg.grid.samples;
    const std::int64_t n = r + 2 * cfg.pad;
    std::vector<cplx> buf(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    std::memcpy(buf.data() + cfg.pad, chipped.data(), sizeof(cplx) * static_cast<std::size_t>(r));
    fft::forward(buf.data(), buf.size());
    const double df = static_cast<double>(cfg.grid.rate_hz) / static_cast<double>(n);
    const auto kmax = static_cast<std::int64_t>(std::floor(cfg.cs_bandwidth / 2.0 / df + 1e-9));
    for (std::int64_t k = kmax + 1; k < n - kmax; ++k) buf[static_cast<std::size_t>(k)] = 0.0;
    fft::inverse(buf.data(), buf.size());
    const double scale = 1.0 / static_cast<double>(n);
    cvec out(cfg.m_samples);
    for (int m = 0; m < cfg.m_samples; ++m) {
        const std::int64_t idx = cfg.pad + cfg.window_offset + m * cfg.sample_step;
        out[m] = buf[static_cast<std::size_t>(idx)] * scale;
    }
    return out;
}

}  // namespace

cvec front_end_envelope(const cvec& envelope, const QuadCSConfig& cfg) {
    if (envelope.size() != cfg.grid.samples)
        throw config_error("envelope length does not match the analog grid");
    if (!envelope.allFinite()) throw config_error("non-finite envelope");
    const rvec p = gen_chipping(cfg, cfg.grid);
    cvec chipped = envelope.cwiseProduct(p.cast<cplx>());
    return filter_and_sample(std::move(chipped), cfg);
}

cvec front_end(const rvec& r_if, const QuadCSConfig& cfg) {
    if (r_if.size() != cfg.grid.samples)
        throw config_error("IF record length does not match the analog grid");
    const std::int64_t r = cfg.grid.samples;
    const std::int64_t n = r + 2 * cfg.pad;
    // analytic envelope: keep (0, 2 f0), double, shift down by f0
    std::vector<cplx> buf(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    for (std::int64_t i = 0; i < r; ++i) buf[static_cast<std::size_t>(i + cfg.pad)] = r_if[i];
    fft::forward(buf.data(), buf.size());
    const double df = static_cast<double>(cfg.grid.rate_hz) / static_cast<double>(n);
    const auto k2f0 =
        static_cast<std::int64_t>(std::floor(2.0 * cfg.radar.intermediate_freq / df - 1e-9));
    for (std::int64_t k = 0; k < n; ++k) {
        if (k >= 1 && k <= k2f0)
            buf[static_cast<std::size_t>(k)] *= 2.0;
        else
            buf[static_cast<std::size_t>(k)] = 0.0;
    }
    fft::inverse(buf.data(), buf.size());
    const double w = -2.0 * M_PI * cfg.radar.intermediate_freq * cfg.grid.dt();
    const double scale = 1.0 / static_cast<double>(n);
    cvec env(r);
    for (std::int64_t i = 0; i < r; ++i) {
        const double ph = w * static_cast<double>(i);
        env[i] = buf[static_cast<std::size_t>(i + cfg.pad)] * scale * cplx(std::cos(ph), std::sin(ph));
    }
    return front_end_envelope(env, cfg);
}

MeasurementMatrix build_measurement_matrix(const QuadCSConfig& cfg, const Dictionary& dict) {
    if (dict.grid.rate_hz != cfg.grid.rate_hz || dict.grid.samples != cfg.grid.samples)
        throw config_error("dictionary and QuadCS config use different grids");
    if (cfg.m_samples >= dict.size)
        throw config_error("undersampling requires M < N");
    MeasurementMatrix mm;
    mm.config = cfg;
    mm.config_hash = cfg.hash();
    mm.m.resize(cfg.m_samples, dict.size);
    cvec atom;
    for (int n = 0; n < dict.size; ++n) {
        dict.atom_into(n, atom);
        mm.m.col(n) = front_end_envelope(atom, cfg);
    }
    return mm;
}

cvec target_column(const QuadCSConfig& cfg, const Dictionary& dict, double delay) {
    const std::int64_t shift = to_samples(delay, dict.grid.rate_hz, "target delay");
    if (shift < 0 || shift >= dict.grid.samples) throw config_error("target delay outside the PRI");
    cvec env = cvec::Zero(dict.grid.samples);
    const std::int64_t count = dict.grid.samples - shift;
    env.segment(shift, count) = dict.base_atom.head(count);
    return front_end_envelope(env, cfg);
}

cvec sample_matrix_domain(const cvec& rho, const MeasurementMatrix& mm, double noise_var,
                          Rng& rng) {
    if (rho.size() != mm.m.cols()) throw config_error("coefficient vector has wrong length");
    cvec out = mm.m * rho;
    if (noise_var > 0.0)
        for (int i = 0; i < out.size(); ++i) out[i] += rng.cnormal(noise_var);
    return out;
}

GramMetrics gram_metrics(const cmat& m) {
    const rvec energy = m.colwise().squaredNorm();
    if (energy.minCoeff() <= 0.0) throw config_error("gram metrics undefined for a zero column");
    cmat unit = m;
    for (int j = 0; j < m.cols(); ++j) unit.col(j) /= std::sqrt(energy[j]);
    GramMetrics g;
    g.energy_spread = energy.maxCoeff() / energy.minCoeff();
    const cmat gram = unit.adjoint() * unit;
    for (int j = 0; j < gram.cols(); ++j)
        for (int i = 0; i < gram.rows(); ++i)
            if (i != j) g.coherence = std::max(g.coherence, std::abs(gram(i, j)));
    return g;
}

double MeasurementMatrix::op_norm_sq() const {
    if (op_norm_sq_ > 0.0) return op_norm_sq_;
    // power iteration on M^H M from a deterministic start
    cvec v = cvec::Ones(m.cols());
    v /= v.norm();
    double lam = 0.0;
    for (int it = 0; it < 60; ++it) {
        cvec w = m.adjoint() * (m * v);
        const double nw = w.norm();
        if (nw == 0.0) return op_norm_sq_ = 0.0;
        w /= nw;
        const double next = nw;
        if (it > 4 && std::abs(next - lam) < 1e-9 * next) {
            lam = next;
            break;
        }
        lam = next;
        v.swap(w);
    }
    return op_norm_sq_ = lam;
}

namespace {
constexpr char kMagic[8] = {'Q', 'C', 'S', 'M', 'A', 'T', '0', '1'};
}

void save_matrix(const std::string& path, const MeasurementMatrix& mm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open matrix file for writing: " + path);
    out.write(kMagic, sizeof(kMagic));
    const std::int64_t rows = mm.m.rows(), cols = mm.m.cols();
    const std::uint64_t seed = mm.config.chip_seed, hash = mm.config_hash;
    out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
    out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
    out.write(reinterpret_cast<const char*>(&seed), sizeof(seed));
    out.write(reinterpret_cast<const char*>(&hash), sizeof(hash));
    const std::string desc = mm.config.describe();
    const std::uint64_t dlen = desc.size();
    out.write(reinterpret_cast<const char*>(&dlen), sizeof(dlen));
    out.write(desc.data(), static_cast<std::streamsize>(dlen));
    out.write(reinterpret_cast<const char*>(mm.m.data()),
              static_cast<std::streamsize>(sizeof(cplx) * static_cast<std::size_t>(rows * cols)));
    if (!out) throw std::runtime_error("failed writing matrix file: " + path);
}

MeasurementMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a matrix cache file: " + path);
    std::int64_t rows = 0, cols = 0;
    std::uint64_t seed = 0, hash = 0, dlen = 0;
    in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
    in.read(reinterpret_cast<char*>(&cols), sizeof(cols));
    in.read(reinterpret_cast<char*>(&seed), sizeof(seed));
    in.read(reinterpret_cast<char*>(&hash), sizeof(hash));
    in.read(reinterpret_cast<char*>(&dlen), sizeof(dlen));
    if (!in || rows <= 0 || cols <= 0 || dlen > 4096)
        throw std::runtime_error("corrupt matrix cache header: " + path);
    std::string desc(dlen, '\0');
    in.read(desc.data(), static_cast<std::streamsize>(dlen));
    MeasurementMatrix mm;
    mm.m.resize(rows, cols);
    mm.config.chip_seed = seed;
    mm.config_hash = hash;
    mm.config.m_samples = static_cast<int>(rows);
    in.read(reinterpret_cast<char*>(mm.m.data()),
            static_cast<std::streamsize>(sizeof(cplx) * static_cast<std::size_t>(rows * cols)));
    if (!in) throw std::runtime_error("truncated matrix cache: " + path);
    return mm;
}

}  // namespace qcs
