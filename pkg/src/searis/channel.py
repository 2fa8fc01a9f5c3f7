"""Maritime channel generation for the offshore downlink scenario.

Everything here is deterministic geometry plus seeded Rician draws:
two-ray sea-surface path loss, planar-array steering, rank-1 LOS
components, and the feed-horn irradiation transfer vector of a
reflect-array. All quantities are SI internally; dB only appears at
config boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class UpaGeometry:
    """Uniform planar array: n_h x n_v elements on a spacing-d grid."""

    n_h: int
    n_v: int
    spacing: float  # meters

    def __post_init__(self) -> None:
        if self.n_h < 1 or self.n_v < 1:
            raise ValueError(f"element counts must be >= 1, got {self.n_h}x{self.n_v}")
        if not self.spacing > 0:
            raise ValueError(f"element spacing must be > 0, got {self.spacing}")

    @property
    def n_elements(self) -> int:
        return self.n_h * self.n_v

    def element_offsets(self) -> np.ndarray:
        """In-plane element coordinates, shape (N, 2), centered on the array.

        Row order is horizontal-major: index i = m * n_v + n for horizontal
        index m and vertical index n, matching upa_steering.
        """
        m = np.arange(self.n_h) - (self.n_h - 1) / 2.0
        n = np.arange(self.n_v) - (self.n_v - 1) / 2.0
        xx, yy = np.meshgrid(m, n, indexing="ij")
        return self.spacing * np.column_stack([xx.ravel(), yy.ravel()])


@dataclass(frozen=True)
class RraFeedModel:
    """Feed horn over a reflect-array surface.

    The feed sits at height ``feed_height`` above the array center; each
    element sees it at distance S_i and off-axis angle w_i = arccos(z/S_i).
    ``pattern_exponent`` shapes the cos^q amplitude taper.
    """

    geometry: UpaGeometry
    feed_height: float  # meters, z above the array plane
    pattern_exponent: float = 6.5

    def __post_init__(self) -> None:
        if not self.feed_height > 0:
            raise ValueError(f"feed height must be > 0, got {self.feed_height}")
        if self.pattern_exponent < 0:
            raise ValueError("pattern exponent must be >= 0")

    def feed_distances(self) -> np.ndarray:
        """Per-element feed-to-element distance S_i, shape (N,). S_i >= z."""
        offsets = self.geometry.element_offsets()
        return np.sqrt(np.sum(offsets**2, axis=1) + self.feed_height**2)


@dataclass(frozen=True)
class RicianConfig:
    """Small-scale fading setup. The factor is linear (dB is converted at
    config parse time); per-link angles are derived from scenario geometry."""

    rician_factor: float

    def __post_init__(self) -> None:
        if self.rician_factor < 0:
            raise ValueError(f"Rician factor must be >= 0, got {self.rician_factor}")


@dataclass
class ScenarioGeometry:
    """Positions (2-D, meters) and antenna heights of the BS, the RIS and
    the vessels, plus carrier/bandwidth."""

    bs_position: np.ndarray
    ris_position: np.ndarray
    vessel_positions: np.ndarray  # (K, 2)
    h_bs: float
    h_ris: float
    h_vessel: float
    carrier_freq: float
    bandwidth: float

    def __post_init__(self) -> None:
        self.bs_position = np.asarray(self.bs_position, dtype=float).reshape(2)
        self.ris_position = np.asarray(self.ris_position, dtype=float).reshape(2)
        self.vessel_positions = np.atleast_2d(
            np.asarray(self.vessel_positions, dtype=float)
        )
        if self.vessel_positions.shape[0] < 1 or self.vessel_positions.shape[1] != 2:
            raise ValueError("vessel_positions must be a (K, 2) array with K >= 1")
        for name, h in (("h_bs", self.h_bs), ("h_ris", self.h_ris), ("h_vessel", self.h_vessel)):
            if not h > 0:
                raise ValueError(f"{name} must be > 0, got {h}")
        if not (self.carrier_freq > 0 and self.bandwidth > 0):
            raise ValueError("carrier_freq and bandwidth must be > 0")
        if not (
            np.all(np.isfinite(self.bs_position))
            and np.all(np.isfinite(self.ris_position))
            and np.all(np.isfinite(self.vessel_positions))
        ):
            raise ValueError("positions must be finite")

    @property
    def n_vessels(self) -> int:
        return self.vessel_positions.shape[0]

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq


@dataclass
class ChannelSet:
    """One snapshot's channels plus the effective per-vessel quantities.

    h[k] is the BS->vessel k channel (length N, path-loss scaled), g[k] the
    RIS->vessel k channel (length M), F the BS->RIS matrix (M x N), r the
    feed transfer vector (length N). A[k] = R^H F^H G_k and c[k] = R^H h[k]
    with R = diag(r), G_k = diag(g[k]).
    """

    h: np.ndarray  # (K, N)
    g: np.ndarray  # (K, M)
    F: np.ndarray  # (M, N)
    r: np.ndarray  # (N,)
    A: np.ndarray = field(init=False)  # (K, N, M)
    c: np.ndarray = field(init=False)  # (K, N)

    def __post_init__(self) -> None:
        self.A, self.c = effective_quantities(self.h, self.g, self.F, self.r)

    @property
    def n_vessels(self) -> int:
        return self.h.shape[0]

    @property
    def n_bs(self) -> int:
        return self.h.shape[1]

    @property
    def n_ris(self) -> int:
        return self.g.shape[1]


def effective_quantities(
    h: np.ndarray, g: np.ndarray, F: np.ndarray, r: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """A_k = R^H F^H G_k (N x M) and c_k = R^H h_k (N,) for every vessel."""
    r_conj = np.conj(r)
    fh = F.conj().T  # (N, M)
    A = r_conj[None, :, None] * fh[None, :, :] * g[:, None, :]
    c = r_conj[None, :] * h
    return A, c


def two_ray_path_loss(distance: float, wavelength: float, h_t: float, h_r: float) -> float:
    """Two-ray sea-reflection power gain (lambda/4pi l)^2 sin^2(2pi h_t h_r / lambda l).

    Interference nulls (sine argument hitting multiples of pi) are real
    features of the model and are returned as-is.
    """
    if not distance > 0:
        raise ValueError(f"distance must be > 0, got {distance}")
    if not (wavelength > 0 and h_t > 0 and h_r > 0):
        raise ValueError("wavelength and antenna heights must be > 0")
    free_space = (wavelength / (4.0 * np.pi * distance)) ** 2
    return free_space * np.sin(2.0 * np.pi * h_t * h_r / (wavelength * distance)) ** 2


def radio_horizon_km(h_t: float, h_r: float) -> float:
    """Line-of-sight horizon 4.1 (sqrt(h_t) + sqrt(h_r)), heights in m, result in km."""
    if h_t < 0 or h_r < 0:
        raise ValueError("antenna heights must be >= 0")
    return 4.1 * (np.sqrt(h_t) + np.sqrt(h_r))


def upa_steering(
    geom: UpaGeometry, azimuth: float, elevation: float, wavelength: float
) -> np.ndarray:
    """Unit-norm planar-array response for azimuth/elevation (radians).

    Entry (m, n) is exp(j 2pi/lambda d (m sin(az) sin(el) + n cos(el))) / sqrt(N),
    flattened horizontal-major to match UpaGeometry.element_offsets.
    """
    if not wavelength > 0:
        raise ValueError("wavelength must be > 0")
    m = np.arange(geom.n_h)
    n = np.arange(geom.n_v)
    phase_m = m * (np.sin(azimuth) * np.sin(elevation))
    phase_n = n * np.cos(elevation)
    phase = (2.0 * np.pi / wavelength) * geom.spacing * (phase_m[:, None] + phase_n[None, :])
    return np.exp(1j * phase).ravel() / np.sqrt(geom.n_elements)


def los_channel(rx_steering: np.ndarray, tx_steering: np.ndarray) -> np.ndarray:
    """Rank-1 LOS component a_r a_t^H (unit Frobenius norm for unit inputs)."""
    return np.outer(rx_steering, np.conj(tx_steering))


def rician_channel(los: np.ndarray, rician_factor: float, rng: np.random.Generator) -> np.ndarray:
    """Rician mix sqrt(a/(1+a)) LOS + sqrt(1/(1+a)) NLOS.

    NLOS entries are i.i.d. circular complex Gaussian, zero mean, unit
    variance per entry.
    """
    if rician_factor < 0:
        raise ValueError("Rician factor must be >= 0")
    shape = np.shape(los)
    nlos = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    a = rician_factor
    return np.sqrt(a / (1.0 + a)) * np.asarray(los) + np.sqrt(1.0 / (1.0 + a)) * nlos


def rra_transfer_vector(feed: RraFeedModel, wavelength: float) -> np.ndarray:
    """Feed-to-surface irradiation vector r, normalized to ||r||_2 = 1.

    Per element: phase 2pi S_i / lambda from the feed-path delay, amplitude
    cos^q(w_i) from the horn pattern, with the normalizer absorbing gamma.
    """
    if not wavelength > 0:
        raise ValueError("wavelength must be > 0")
    distances = feed.feed_distances()
    cos_w = feed.feed_height / distances  # cos of the off-axis angle, in (0, 1]
    amplitude = cos_w**feed.pattern_exponent
    amplitude /= np.linalg.norm(amplitude)
    return amplitude * np.exp(1j * 2.0 * np.pi * distances / wavelength)


def link_angles(
    from_position: np.ndarray,
    from_height: float,
    to_position: np.ndarray,
    to_height: float,
) -> tuple[float, float]:
    """Azimuth in [0, 2pi) and zenith elevation in [0, pi] of the from->to ray.

    Azimuth is the plane bearing; elevation is measured from the vertical,
    so co-altitude links get pi/2 (purely horizontal phase progression).
    """
    delta = np.asarray(to_position, dtype=float) - np.asarray(from_position, dtype=float)
    ground = float(np.hypot(delta[0], delta[1]))
    azimuth = float(np.arctan2(delta[1], delta[0])) % (2.0 * np.pi)
    rise = to_height - from_height
    elevation = float(np.arccos(rise / np.hypot(ground, rise))) if ground > 0 or rise != 0 else 0.0
    return azimuth, elevation


def build_channel_set(
    geometry: ScenarioGeometry,
    bs_array: UpaGeometry,
    ris_array: UpaGeometry,
    feed: RraFeedModel,
    rician: RicianConfig,
    rng: np.random.Generator,
) -> ChannelSet:
    """Draw one snapshot: deterministic LOS/path-loss from geometry, fresh
    NLOS per link from ``rng``.

    Path loss enters as amplitude sqrt(L): the direct link uses the
    BS->vessel ground distance with (h_bs, h_vessel); the reflected link
    uses the summed BS->RIS->vessel distance with (h_ris, h_vessel).
    Draw order is fixed (F, then h_k, then g_k, vessel-major) so a seeded
    generator reproduces the snapshot bit-for-bit.
    """
    lam = geometry.wavelength
    bs_pos, ris_pos = geometry.bs_position, geometry.ris_position
    l_bs_ris = float(np.linalg.norm(ris_pos - bs_pos))
    if l_bs_ris <= 0:
        raise ValueError("RIS colocated with BS")

    # BS -> RIS matrix channel
    az_dep, el_dep = link_angles(bs_pos, geometry.h_bs, ris_pos, geometry.h_ris)
    az_arr, el_arr = link_angles(ris_pos, geometry.h_ris, bs_pos, geometry.h_bs)
    a_bs_to_ris = upa_steering(bs_array, az_dep, el_dep, lam)
    a_ris_from_bs = upa_steering(ris_array, az_arr, el_arr, lam)
    F = rician_channel(los_channel(a_ris_from_bs, a_bs_to_ris), rician.rician_factor, rng)

    K = geometry.n_vessels
    h = np.empty((K, bs_array.n_elements), dtype=complex)
    g = np.empty((K, ris_array.n_elements), dtype=complex)
    for k in range(K):
        vessel = geometry.vessel_positions[k]
        l_direct = float(np.linalg.norm(vessel - bs_pos))
        l_ris_vessel = float(np.linalg.norm(vessel - ris_pos))
        if l_direct <= 0:
            raise ValueError(f"vessel {k} colocated with the BS")
        if l_ris_vessel <= 0:
            raise ValueError(f"vessel {k} colocated with the RIS")

        delta_d = two_ray_path_loss(l_direct, lam, geometry.h_bs, geometry.h_vessel)
        delta_r = two_ray_path_loss(
            l_bs_ris + l_ris_vessel, lam, geometry.h_ris, geometry.h_vessel
        )

        az_h, el_h = link_angles(bs_pos, geometry.h_bs, vessel, geometry.h_vessel)
        h_bar = rician_channel(
            upa_steering(bs_array, az_h, el_h, lam), rician.rician_factor, rng
        )
        az_g, el_g = link_angles(ris_pos, geometry.h_ris, vessel, geometry.h_vessel)
        g_bar = rician_channel(
            upa_steering(ris_array, az_g, el_g, lam), rician.rician_factor, rng
        )
        h[k] = np.sqrt(delta_d) * h_bar
        g[k] = np.sqrt(delta_r) * g_bar

    r = rra_transfer_vector(feed, lam)
    return ChannelSet(h=h, g=g, F=F, r=r)
