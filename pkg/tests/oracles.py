"""Independent oracle implementations used to freeze expected test values.

Everything here is deliberately written from the ground truth definitions
(complex sums, term-by-term formulas, brute-force time stepping) rather
than by calling the production code, so the two routes check each other.
"""

import cmath
import math

C_LIGHT = 2.99792458e8
PLANCK = 6.62607015e-34
BOLTZMANN = 1.380649e-23


# --- channel -----------------------------------------------------------

def sub6_los_db(d_m: float, f_ghz: float) -> float:
    return 28.0 + 22.0 * math.log10(d_m) + 20.0 * math.log10(f_ghz)


def sub6_nlos_db(h_u: float, d3_m: float, f_ghz: float) -> float:
    return (
        -17.5
        + (46.0 - 7.0 * math.log10(h_u)) * math.log10(d3_m)
        + 20.0 * math.log10(40.0 * math.pi * f_ghz / 3.0)
    )


def mmwave_los_db(d3_m: float, f_ghz: float, h_b: float) -> float:
    return (
        20.0 * math.log10(40.0 * math.pi * d3_m * f_ghz / 3.0)
        + min(0.03 * h_b**1.72, 10.0) * math.log10(d3_m)
        - min(0.044 * h_b**1.72, 14.77)
        + 0.002 * math.log10(h_b) * d3_m
    )


def mmwave_nlos_candidate_db(h_u, h_bs, d3_m, f_ghz, h_b, w) -> float:
    return (
        161.04
        - 7.1 * math.log10(w)
        + 7.5 * math.log10(h_b)
        - (24.37 - 3.7 * (h_b / h_u) ** 2) * math.log10(h_u)
        + (43.42 - 3.1 * math.log10(h_u)) * (math.log10(d3_m) - 3.0)
        + 20.0 * math.log10(f_ghz)
        - (3.2 * math.log10(11.75 * h_bs) ** 2 - 4.97)
    )


def buck_vapor_pressure_hpa(t_k: float, p_pa: float) -> float:
    t_c = t_k - 273.15
    p_hpa = p_pa / 100.0
    return 6.1121 * (1.0007 + 3.46e-6 * p_hpa) * math.exp(17.502 * t_c / (240.94 + t_c))


def kappa_terms(f_hz: float, t_k: float, p_pa: float, phi_pct: float) -> dict:
    """Absorption coefficient assembled term by term."""
    p_w = buck_vapor_pressure_hpa(t_k, p_pa)
    mu = phi_pct * p_w / (100.0 * (p_pa / 100.0))
    nu = f_hz / (100.0 * C_LIGHT)  # wavenumber, 1/cm
    k1 = 0.2205 * mu * (0.1303 * mu + 0.0294) / ((0.4093 * mu + 0.0925) ** 2 + (nu - 10.835) ** 2)
    k2 = 2.014 * mu * (0.1702 * mu + 0.0303) / ((0.537 * mu + 0.0956) ** 2 + (nu - 12.664) ** 2)
    k3 = 5.54e-37 * f_hz**3 - 3.94e-25 * f_hz**2 + 9.06e-14 * f_hz - 6.36e-3
    return {"mu": mu, "k1": k1, "k2": k2, "k3": k3, "kappa": k1 + k2 + k3}


def thz_los_db(d_m: float, f_hz: float, t_k: float, p_pa: float, phi_pct: float) -> float:
    kappa = kappa_terms(f_hz, t_k, p_pa, phi_pct)["kappa"]
    return 20.0 * math.log10(4.0 * math.pi * d_m * f_hz / C_LIGHT) + 4.34 * kappa * d_m


# --- antenna -----------------------------------------------------------

def af_double_sum(theta_deg, phi_deg, m, n, d_h, d_v, beta_h, beta_v) -> float:
    """|AF| from the raw complex double sum over elements, normalized to 1."""
    theta = math.radians(theta_deg)
    phi = math.radians(phi_deg)
    psi_h = 2.0 * math.pi * d_h * math.sin(theta) * math.sin(phi) + beta_h
    psi_v = 2.0 * math.pi * d_v * math.cos(theta) + beta_v
    acc = 0.0 + 0.0j
    for i in range(m):
        for j in range(n):
            acc += cmath.exp(1j * (i * psi_h + j * psi_v))
    return abs(acc) / (m * n)


def pattern_mean_pair_sum(m, n, d_h, d_v) -> float:
    """Exact sphere average of |AF|^2 for the unsteered array.

    Expands |AF|^2 into element pairs; each pair integrates to the
    spherical Bessel j0 of (2 pi / lambda) times the pair separation.
    """
    total = 0.0
    for dm in range(-(m - 1), m):
        for dn in range(-(n - 1), n):
            w = (m - abs(dm)) * (n - abs(dn))
            x = 2.0 * math.pi * math.hypot(dm * d_h, dn * d_v)
            j0 = 1.0 if x == 0.0 else math.sin(x) / x
            total += w * j0
    return total / (m * n) ** 2


# --- noise -------------------------------------------------------------

def planck_noise_w(bw_hz: float, f_hz: float, t_k: float) -> float:
    x = PLANCK * f_hz / (BOLTZMANN * t_k)
    return bw_hz * PLANCK * f_hz / (math.exp(x) - 1.0)


# --- propulsion --------------------------------------------------------

def motor_power_w(v, m_u, g, c_t, c_d, c0, c1, c2, c3, c4) -> float:
    w0 = math.sqrt(m_u * g / (4.0 * c_t))
    w = w0 * (1.0 + (c_d**2) * v**4 / (m_u * g) ** 2) ** 0.25
    return 4.0 * (c4 * w**4 + c3 * w**3 + c2 * w**2 + c1 * w + c0)


# --- move-and-return ---------------------------------------------------

def mr_time_stepped(rate_fn, r0, r_min, v, q_bits, dt=1e-3) -> dict:
    """Brute-force integration of the outbound half at fixed step dt.

    Accumulates bits with midpoint sampling of the rate until half the
    workload is delivered, interpolating the final partial step. Returns
    the same timing dict shape as the production solver.
    """
    half_q = q_bits / 2.0
    t_reach = max(0.0, (r0 - r_min) / v)
    bits = 0.0
    t = 0.0
    while True:
        r_mid = max(r0 - v * (t + dt / 2.0), r_min)
        step_bits = rate_fn(r_mid) * dt
        if bits + step_bits >= half_q:
            t += dt * (half_q - bits) / step_bits
            break
        bits += step_bits
        t += dt
        if t > 1e7:
            raise RuntimeError("time-stepped oracle did not terminate")
    t_mr = 2.0 * t
    t_m = t_mr if (r0 - v * t_mr / 2.0) > r_min else 2.0 * t_reach
    return {"t_mr": t_mr, "t_m": t_m, "t_h": t_mr - t_m, "reach_time": t_reach}
