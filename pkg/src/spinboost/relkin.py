"""Relativistic kinematics and boosted-field geometry.

A uniform magnetic field B = B ez in the lab frame appears, to a spin
moving with rapidity ``xi`` at polar angle ``theta`` (azimuth ``phi``),
as an amplified and tilted field B' = B * d. This module computes the
Lorentz transformation of (E, B), the effective-field geometry d,
kappa = |d|, the unit axis n = d/kappa, and the two geometry-derived
modulation factors

    eta = 1 - n_z**2        (in-plane weight of the axis)
    chi = n_z * sqrt(n_x**2 + n_y**2)

together with the closed-form maximum of eta over theta.

Sign convention: d is fixed by the geometry (independent of the field
amplitude B); for theta < pi/2 its in-plane part points *opposite* to
the velocity azimuth, so the signed in-plane component n_perp =
(1 - cosh xi) cos(theta) sin(theta) / kappa is negative there. chi is
reported non-negative; channel code that needs the signed product reads
it off the axis vector ``n`` directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BoostParams:
    """Boost rapidity and velocity direction.

    xi >= 0 is the rapidity (cosh xi = Lorentz factor), theta in [0, pi]
    the polar angle of the velocity against ez, phi in [0, 2*pi) its
    azimuth.
    """

    xi: float
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (self.xi >= 0.0 and math.isfinite(self.xi)):
            raise ValueError(f"rapidity must be finite and >= 0, got {self.xi!r}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi!r}")

    @property
    def beta(self) -> float:
        """Speed in units of c: tanh(xi) in [0, 1)."""
        return math.tanh(self.xi)

    @property
    def cosh_xi(self) -> float:
        """Lorentz factor 1/sqrt(1 - beta**2)."""
        return math.cosh(self.xi)

    @property
    def velocity_unit(self) -> np.ndarray:
        """Unit vector along the velocity."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


@dataclass(frozen=True, eq=False)
class EffectiveField:
    """Boosted-field geometry seen by the moving spin.

    ``d`` is B'/B, ``kappa = |d| >= 1`` the amplification, ``n = d/kappa``
    the unit rotation axis, ``tilt`` the angle between n and ez (this is
    *not* the velocity azimuth; it is stored separately to avoid the
    symbol clash), and ``eta_mod``/``chi_mod`` the modulation factors.
    """

    d: np.ndarray
    kappa: float
    n: np.ndarray
    tilt: float
    eta_mod: float
    chi_mod: float

    def __post_init__(self):
        for name in ("d", "n"):
            a = np.array(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)


def rapidity_from_beta(beta: float) -> float:
    """Rapidity xi with tanh(xi) = beta, for beta in [0, 1)."""
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta!r}")
    return math.atanh(beta)


def boost_em_field(e_field, b_field, boost: BoostParams) -> tuple[np.ndarray, np.ndarray]:
    """Lorentz-transform static (E, B) into the frame moving with ``boost``.

    Components parallel to the velocity are unchanged; perpendicular
    parts pick up cosh(xi) and the (v/c) cross terms:

        E'_perp = cosh(xi) * (E + (v/c) x B)_perp
        B'_perp = cosh(xi) * (B - (v/c) x E)_perp

    Written as E + (cosh(xi)-1)*E_perp + ... so that a field exactly
    parallel to v passes through bit-exact.
    """
    e = np.asarray(e_field, dtype=float)
    b = np.asarray(b_field, dtype=float)
    if not (np.isfinite(e).all() and np.isfinite(b).all()):
        raise ValueError("field components must be finite")
    v_hat = boost.velocity_unit
    ch = boost.cosh_xi
    beta = boost.beta
    e_perp = e - np.dot(e, v_hat) * v_hat
    b_perp = b - np.dot(b, v_hat) * v_hat
    e_prime = e + (ch - 1.0) * e_perp + ch * beta * np.cross(v_hat, b)
    b_prime = b + (ch - 1.0) * b_perp - ch * beta * np.cross(v_hat, e)
    return e_prime, b_prime


def effective_field(boost: BoostParams) -> EffectiveField:
    """Geometry of the boosted field direction d = B'/B.

    d_x = (1-cosh xi) cos(theta) sin(theta) cos(phi)
    d_y = (1-cosh xi) cos(theta) sin(theta) sin(phi)
    d_z = cos(theta)**2 + cosh(xi) sin(theta)**2

    kappa**2 = cos(theta)**2 + cosh(xi)**2 sin(theta)**2. The scalars
    (kappa, tilt, eta, chi) are computed from (xi, theta) alone, so they
    are bit-exactly independent of the azimuth.
    """
    ch = boost.cosh_xi
    ct, st = math.cos(boost.theta), math.sin(boost.theta)
    d_perp = (1.0 - ch) * ct * st
    d_z = ct * ct + ch * st * st
    kappa = math.hypot(d_perp, d_z)
    n_perp = d_perp / kappa
    n_z = d_z / kappa
    cp, sp = math.cos(boost.phi), math.sin(boost.phi)
    d = np.array([d_perp * cp, d_perp * sp, d_z])
    n = np.array([n_perp * cp, n_perp * sp, n_z])
    # atan2 keeps full precision for nearly axis-aligned geometries,
    # where acos(n_z) would lose ~sqrt(eps)
    tilt = math.atan2(abs(n_perp), n_z)
    eta = n_perp * n_perp
    chi = n_z * abs(n_perp)
    return EffectiveField(d=d, kappa=kappa, n=n, tilt=tilt, eta_mod=eta, chi_mod=chi)


def eta_profile(xi: float, theta):
    """Closed-form eta as a function of rapidity and polar angle.

    eta = (cosh(xi) - 1)**2 (1 - cos(2 theta)**2)
          / (2 [(cosh(xi)**2 + 1) - (cosh(xi)**2 - 1) cos(2 theta)])

    Agrees with 1 - n_z**2 of :func:`effective_field` within 1e-12.
    ``theta`` may be an array; the profile broadcasts over it.
    """
    if xi < 0:
        raise ValueError(f"rapidity must be >= 0, got {xi!r}")
    a = math.cosh(xi)
    c = np.cos(2.0 * np.asarray(theta, dtype=float))
    num = (a - 1.0) ** 2 * (1.0 - c * c)
    den = 2.0 * ((a * a + 1.0) - (a * a - 1.0) * c)
    out = num / den
    return float(out) if np.isscalar(theta) else out


@dataclass(frozen=True)
class EtaMax:
    """Maximum of eta over theta at fixed rapidity, with its location."""

    eta_max: float
    theta_opt: float
    chi_at_opt: float


def eta_max(xi: float) -> EtaMax:
    """Maximise eta over theta for a given rapidity.

    cos(2 theta_opt) = (cosh xi - 1)/(cosh xi + 1) with theta_opt in
    (0, pi/4], eta_max = ((cosh xi - 1)/(cosh xi + 1))**2 and the other
    modulation factor at the optimum is
    chi = 2 sqrt(cosh xi) (cosh xi - 1)/(cosh xi + 1)**2.

    For xi = 0 the profile is identically zero; theta_opt is reported as
    pi/4 by convention.
    """
    if xi < 0:
        raise ValueError(f"rapidity must be >= 0, got {xi!r}")
    a = math.cosh(xi)
    ratio = (a - 1.0) / (a + 1.0)
    if ratio == 0.0:
        return EtaMax(eta_max=0.0, theta_opt=math.pi / 4.0, chi_at_opt=0.0)
    theta_opt = 0.5 * math.acos(ratio)
    chi = 2.0 * math.sqrt(a) * (a - 1.0) / (a + 1.0) ** 2
    return EtaMax(eta_max=ratio * ratio, theta_opt=theta_opt, chi_at_opt=chi)
