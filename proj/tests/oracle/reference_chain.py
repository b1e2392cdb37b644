#!/usr/bin/env python3
"""Independent numpy reference for the QuadCS chain and related constants.

This script is a development-time oracle: it re-derives, with plain numpy
and scipy only, the quantities that the C++ test suites assert as frozen
literals (column energies, Gram coherence at desk scale, chipped-noise
variance factor, LFM spectral facts, Taylor window coefficients, Marcum-Q
values). It shares no code with the C++ implementation.

Run:  python3 tests/oracle/reference_chain.py
"""

import json
import numpy as np
from scipy import special, stats

rng = np.random.default_rng(20240811)

# ---------------------------------------------------------------- desk setup
B = 10e6          # chirp bandwidth, Hz
Tb = 6.4e-6       # pulse width, s
T = 32e-6         # PRI, s
f0 = 16.25e6      # intermediate frequency, Hz
tmin = 0.0
tmax = 25.6e-6    # dictionary span end; tmax + Tb == T
tau0 = 1.0 / B
N = int(np.ceil((tmax - tmin) / tau0))


def lfm(tb, bw, t):
    """Unit-modulus LFM sweeping -bw/2 -> +bw/2 over [0, tb)."""
    inside = (t >= 0.0) & (t < tb)
    ph = np.pi * bw * t * (t / tb - 1.0)
    return np.where(inside, np.exp(1j * ph), 0.0)


def quadcs_chain(grid_rate, b_cs, f_if, chips, envelope):
    """Push one complex-envelope pulse record through chip->BPF->sample->demod."""
    R = envelope.size
    chip_len = int(round(grid_rate / B))
    # chip waveform on the grid
    p = np.repeat(chips, chip_len)[:R]
    r_if = np.real(envelope * np.exp(2j * np.pi * f0 * np.arange(R) / grid_rate)) * p
    pad = int(round(4 * grid_rate / b_cs))
    x = np.concatenate([np.zeros(pad), r_if, np.zeros(pad)])
    X = np.fft.fft(x)
    freqs = np.fft.fftfreq(x.size, 1.0 / grid_rate)
    mask = (np.abs(np.abs(freqs) - f0) <= b_cs / 2)
    y = np.real(np.fft.ifft(X * mask))
    # bandpass sampling at f_if, window [0, T)
    step = int(round(grid_rate / f_if))
    Q = int(np.floor(T * f_if))
    yk = y[pad + step * np.arange(Q)]
    # digital quadrature demodulation: f0 sits at f_if/4
    z = 2.0 * yk * np.exp(-0.5j * np.pi * np.arange(Q))
    Z = np.fft.fft(z)
    nu = np.fft.fftfreq(Q)
    Z[np.abs(nu) >= 0.25] = 0.0
    zl = np.fft.ifft(Z)
    return zl[0::2][: Q // 2]


def build_matrix(grid_rate, b_cs, f_if, chips):
    R = int(round(T * grid_rate))
    t = np.arange(R) / grid_rate
    cols = []
    shift = int(round(tau0 * grid_rate))
    base = lfm(Tb, B, t)
    for n in range(N):
        atom = np.roll(base, n * shift)
        atom[: n * shift] = 0.0
        cols.append(quadcs_chain(grid_rate, b_cs, f_if, chips, atom))
    return np.stack(cols, axis=1)


out = {}

# --- configuration arithmetic -------------------------------------------------
# B_cs = B/4: f_L = 15 MHz, l_max = 3, f_IF = 4*f0/13 = 5 MHz, grid 170 MHz
# B_cs = B/8: f_L = 15.625 MHz, l_max = 6, f_IF = 4*f0/25 = 2.6 MHz, grid 260 MHz
cfg = {
    "quarter": dict(b_cs=2.5e6, l=3, f_if=65e6 / 13, grid=170e6),
    "eighth": dict(b_cs=1.25e6, l=6, f_if=65e6 / 25, grid=260e6),
}
for name, c in cfg.items():
    fl = f0 - c["b_cs"] / 2
    assert int(np.floor(fl / (2 * c["b_cs"]))) >= c["l"]
    assert abs((4 * fl + 2 * c["b_cs"]) / (4 * c["l"] + 1) - c["f_if"]) < 1e-6
    M = int(np.floor(T * c["f_if"])) // 2
    out[f"M_{name}"] = M
out["N"] = N

# --- measurement matrix facts -------------------------------------------------
for name, c in cfg.items():
    n_chips = int(np.ceil(T * B))
    chips = rng.integers(0, 2, n_chips) * 2 - 1
    Mt = build_matrix(c["grid"], c["b_cs"], c["f_if"], chips)
    en = np.sum(np.abs(Mt) ** 2, axis=0)
    nominal = Tb * c["b_cs"] ** 2 / B
    G = Mt / np.sqrt(en)
    Gram = np.abs(G.conj().T @ G)
    np.fill_diagonal(Gram, 0.0)
    out[f"colenergy_over_nominal_{name}"] = [
        float(en.min() / nominal), float(en.mean() / nominal), float(en.max() / nominal)]
    out[f"coherence_{name}"] = float(Gram.max())
    out[f"energy_spread_{name}"] = float(en.max() / en.min())

    # oracle equivalence: random sparse scene through the analog chain
    rho = np.zeros(N, complex)
    sup = rng.choice(N, 3, replace=False)
    rho[sup] = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    R = int(round(T * c["grid"]))
    t = np.arange(R) / c["grid"]
    env = sum(rho[n] * np.roll(lfm(Tb, B, t), n * int(round(tau0 * c["grid"]))) for n in sup)
    direct = quadcs_chain(c["grid"], c["b_cs"], c["f_if"], chips, env)
    out[f"oracle_rel_err_{name}"] = float(
        np.linalg.norm(direct - Mt @ rho) / np.linalg.norm(Mt @ rho))

# --- chipped bandlimited noise variance factor ---------------------------------
# theory: \int_{-1/2}^{1/2} sinc^2(u) du
u = np.linspace(-0.5, 0.5, 20001)
out["sinc2_band_integral"] = float(np.trapz(np.sinc(u) ** 2, u))

c = cfg["eighth"]
grid_rate = c["grid"]
R = int(round(T * grid_rate))
acc = []
for _ in range(400):
    spec = np.zeros(R, complex)
    freqs = np.fft.fftfreq(R, 1.0 / grid_rate)
    band = (np.abs(np.abs(freqs) - f0) <= B / 2) & (freqs > 0)
    nb = band.sum()
    N0 = 1e-7
    v = N0 * B * R * R / (2 * nb)
    g = (rng.standard_normal(nb) + 1j * rng.standard_normal(nb)) * np.sqrt(v / 2)
    spec[band] = g
    spec[np.isin(np.arange(R), np.where(band)[0])] = g
    full = np.zeros(R, complex)
    full[band] = g
    idx = np.where(band)[0]
    full[(R - idx) % R] = np.conj(g)
    nt = np.real(np.fft.ifft(full))
    n_chips = int(np.ceil(T * B))
    chips = rng.integers(0, 2, n_chips) * 2 - 1
    env = nt * 0j  # feed as real IF directly: reuse chain with envelope trick
    # chain expects an envelope; emulate by dividing out the carrier is wrong for
    # noise, so inline the IF part here:
    chip_len = int(round(grid_rate / B))
    p = np.repeat(chips, chip_len)[:R]
    x = nt * p
    pad = int(round(4 * grid_rate / c["b_cs"]))
    xx = np.concatenate([np.zeros(pad), x, np.zeros(pad)])
    X = np.fft.fft(xx)
    fr = np.fft.fftfreq(xx.size, 1.0 / grid_rate)
    mask = (np.abs(np.abs(fr) - f0) <= c["b_cs"] / 2)
    y = np.real(np.fft.ifft(X * mask))
    step = int(round(grid_rate / c["f_if"]))
    Q = int(np.floor(T * c["f_if"]))
    yk = y[pad + step * np.arange(Q)]
    z = 2.0 * yk * np.exp(-0.5j * np.pi * np.arange(Q))
    Z = np.fft.fft(z)
    nu = np.fft.fftfreq(Q)
    Z[np.abs(nu) >= 0.25] = 0.0
    sm = np.fft.ifft(Z)[0::2][: Q // 2]
    acc.append(np.mean(np.abs(sm[4:-4]) ** 2))
out["noise_var_over_2N0Bcs_eighth"] = float(np.mean(acc) / (2 * 1e-7 * c["b_cs"]))

# --- LFM spectral facts ---------------------------------------------------------
grid = 64
n_tb = int(Tb * B) * grid            # fine grid, 64 samples per 1/B
t = np.arange(4 * n_tb) / (B * grid)
s = lfm(Tb, B, t)
S = np.fft.fft(s)
f = np.fft.fftfreq(t.size, 1.0 / (B * grid))
P = np.abs(S) ** 2
Ptot = P.sum()
inside = np.abs(f) <= B / 2 + 2 / Tb
out["lfm_energy_in_band"] = float(P[inside].sum() / Ptot)
inside2 = np.abs(f) <= B / 2
out["lfm_energy_in_halfband"] = float(P[inside2].sum() / Ptot)
# flatness over +-0.4B, smoothed over 1/Tb-wide boxcar (physical resolution)
df = f[1] - f[0]
w = int(round((1 / Tb) / df))
kern = np.ones(w) / w
Ps = np.convolve(np.fft.fftshift(P), kern, mode="same")
fs_ = np.fft.fftshift(f)
core = np.abs(fs_) <= 0.4 * B
ripple_db = 10 * np.log10(Ps[core].max() / Ps[core].min())
out["lfm_flatness_db_smoothed"] = float(ripple_db)
raw_core = P[np.abs(f) <= 0.4 * B]
out["lfm_flatness_db_raw"] = float(10 * np.log10(raw_core.max() / raw_core.min()))

# --- Taylor window (nbar=11, -70 dB) -------------------------------------------
def taylor(nsamp, nbar=11, sll_db=-70.0):
    A = np.arccosh(10 ** (-sll_db / 20)) / np.pi
    s2 = nbar ** 2 / (A ** 2 + (nbar - 0.5) ** 2)
    k = np.arange(nsamp)
    w = np.ones(nsamp)
    for m in range(1, nbar):
        num = 1.0
        for n in range(1, nbar):
            num *= 1 - m ** 2 / (s2 * (A ** 2 + (n - 0.5) ** 2))
        den = 1.0
        for n in range(1, nbar):
            if n != m:
                den *= 1 - m ** 2 / n ** 2
        fm = ((-1) ** (m + 1) / 2) * num / den
        w += 2 * fm * np.cos(2 * np.pi * m * (k - (nsamp - 1) / 2) / nsamp)
    return w

L = 32
w = taylor(L)
out["taylor32_first4"] = [float(x) for x in w[:4]]
out["taylor32_mean"] = float(w.mean())
W = np.abs(np.fft.fft(w / w.mean(), 4096))
peak = W.max()
# peak sidelobe outside the mainlobe (mainlobe ~ nbar bins wide here)
ml = int(4096 / L * 8)
sl = np.concatenate([W[ml:4096 - ml]])
out["taylor32_psl_db"] = float(20 * np.log10(sl.max() / peak))
w128 = taylor(128)
W2 = np.abs(np.fft.fft(w128 / w128.mean(), 16384))
ml2 = int(16384 / 128 * 13)
out["taylor128_psl_db"] = float(20 * np.log10(W2[ml2:16384 - ml2].max() / W2.max()))

# --- Marcum Q / Rician CDF spot values ------------------------------------------
for a, b in [(0.0, 1.0), (1.0, 2.0), (3.0, 4.0), (6.0, 5.0), (6.3, 8.0)]:
    # CDF of Rician(nu=a, sigma=1) at b is 1 - MarcumQ1(a, b)
    out[f"rice_cdf_a{a}_b{b}"] = float(stats.rice.cdf(b, a))

# λ0 for per-bin joint P_F = 1e-2 / 1e-1 at N=256; paper consistency at N=2694
for pf, nn in [(1e-2, 256), (1e-1, 256), (1e-2, 2694)]:
    pc = 1 - (1 - pf) ** (1.0 / nn)
    out[f"lambda0_pf{pf}_N{nn}"] = float(np.sqrt(-2 * np.log(pc)))

# phase advance per pulse for f_d = 1/(4T)
out["phase_advance_quarter_prf"] = float(2 * np.pi * (1 / (4 * T)) * T)

print(json.dumps(out, indent=2, sort_keys=True))
with open("tests/oracle/frozen.json", "w") as fh:
    json.dump(out, fh, indent=2, sort_keys=True)
