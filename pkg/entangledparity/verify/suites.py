"""Verification checks, grouped into suites.

Every check takes the run config and returns its measured residual, or a
(residual, detail) pair. The registrar records which tolerance the residual
is judged against.
"""
from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from omegaconf import DictConfig

from entangledparity.core.decorators import function_register
from entangledparity.core.fock import (
    OperatorMatrix,
    TwoModeState,
    block_projector,
    cross_sector_leakage,
    expectation,
    mode_operators,
    quadrature_operators,
    total_photon_mask,
)
from entangledparity.core.quadrature import (
    QuadratureGrid,
    gauss1d_closed,
    gauss1d_quadrature,
    gauss2d_closed,
    gauss2d_general_closed,
    gauss2d_general_conditions,
    gauss2d_quadrature,
    integrate,
)
from entangledparity.metrology.closed_form import (
    cs_sv_parity_closed,
    noon_parity_closed,
)
from entangledparity.metrology.interferometer import (
    FirstBeamSplitter,
    Interferometer,
    InterferometerSpec,
    noon_pipeline_check,
    phase_shifter,
)
from entangledparity.metrology.sweep import sensitivity
from entangledparity.projectors.parity import (
    BsParams,
    beam_splitter,
    beam_splitter_generator,
    compare_projectors,
    mu_conjugation,
    mu_coherent_matrix_element,
    mu_fock,
    mu_fock_eta_form,
    mu_fock_xi_form,
    parity_matrix,
    parity_op,
    swap_operator,
)
from entangledparity.projectors.quadrature import (
    completeness_operator,
    mu_coherent_quadrature,
    mu_from_eta_quadrature,
    mu_from_xi_quadrature,
    parity_from_coherent_quadrature,
)
from entangledparity.states.entangled import (
    EtaParams,
    XiParams,
    eigen_residual,
    eta_state,
    eta_state_from_series,
    xi_state,
    xi_state_from_series,
)
from entangledparity.states.fock import (
    coherent_amplitudes,
    coherent_state,
    squeezed_vacuum,
    squeezed_vacuum_from_integral,
)
from entangledparity.states.hermite import HermiteTable, hermite_mn, hermite_mn_explicit
from entangledparity.states.spec import StateSpec

logger = logging.getLogger(__name__)

gaussians = function_register()
hermite = function_register()
states = function_register()
projectors = function_register()
metrology = function_register()

SUITES = {
    "gaussians": gaussians,
    "hermite": hermite,
    "states": states,
    "projectors": projectors,
    "metrology": metrology,
}

RANDOM_DRAWS = 50


def _grid(cfg: DictConfig) -> QuadratureGrid:
    return QuadratureGrid(cfg.grid.radius, cfg.grid.step)


def _relative(closed: complex, approx: complex) -> float:
    return abs(closed - approx) / max(1.0, abs(closed))


def _disk(rng: np.random.Generator, radius: float) -> complex:
    return complex(radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def _zeta(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-2.0, -1.0), rng.uniform(-0.5, 0.5))


# Gaussian integrals


@gaussians(tolerance="gaussian")
def check_gauss1d_examples(cfg):
    cases = [(1.0, 0.0), (1.0, 2.0), (1 + 0.5j, 0.3j)]
    exact = [np.sqrt(np.pi), np.sqrt(np.pi) * np.e, None]
    residual = 0.0
    for (alpha, beta), value in zip(cases, exact):
        closed = gauss1d_closed(alpha, beta)
        residual = max(residual, _relative(closed, gauss1d_quadrature(alpha, beta)))
        if value is not None:
            residual = max(residual, _relative(value, closed))
    return residual


@gaussians(tolerance="gaussian")
def check_gauss1d_random(cfg):
    rng = np.random.default_rng(cfg.seed)
    residual = 0.0
    for _ in range(RANDOM_DRAWS):
        alpha = complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5))
        beta = _disk(rng, 1.0)
        closed = gauss1d_closed(alpha, beta)
        residual = max(residual, _relative(closed, gauss1d_quadrature(alpha, beta)))
    return residual, f"{RANDOM_DRAWS} draws"


@gaussians(tolerance="gaussian")
def check_gaussian_plane_integral(cfg):
    value = integrate(lambda x, y: np.exp(-(x * x + y * y)), _grid(cfg))
    return _relative(np.pi, value)


@gaussians(tolerance="gaussian")
def check_gauss2d_examples(cfg):
    grid = _grid(cfg)
    residual = max(
        _relative(1.0, gauss2d_closed(-1.0, 0.0, 0.0)),
        _relative(np.e, gauss2d_closed(-1.0, 1.0, 1.0)),
    )
    for args in [(-1.0, 1.0, 1.0), (-2.0, 1j, -1j)]:
        residual = max(
            residual, _relative(gauss2d_closed(*args), gauss2d_quadrature(*args, grid))
        )
    return residual


@gaussians(tolerance="gaussian")
def check_gauss2d_random(cfg):
    rng = np.random.default_rng(cfg.seed + 1)
    grid = _grid(cfg)
    residual = 0.0
    for _ in range(RANDOM_DRAWS):
        zeta, xi, eta = _zeta(rng), _disk(rng, 0.5), _disk(rng, 0.5)
        closed = gauss2d_closed(zeta, xi, eta)
        approx = gauss2d_quadrature(zeta, xi, eta, grid)
        residual = max(residual, _relative(closed, approx))
    return residual, f"{RANDOM_DRAWS} draws"


@gaussians(tolerance="gaussian")
def check_gauss2d_general_examples(cfg):
    grid = _grid(cfg)
    residual = _relative(
        gauss2d_closed(-1.3, 0.2, 0.4), gauss2d_general_closed(-1.3, 0.2, 0.4, 0.0, 0.0)
    )
    residual = max(
        residual,
        _relative(1 / np.sqrt(1 - 0.16), gauss2d_general_closed(-1.0, 0, 0, 0.2, 0.2)),
    )
    for args in [(-1.0, 0.0, 0.0, 0.2, 0.2), (-1.5, 0.3, 0.1, 0.1, -0.2)]:
        zeta, xi, eta, f, g = args
        quad = gauss2d_quadrature(zeta, xi, eta, grid, f=f, g=g)
        residual = max(residual, _relative(gauss2d_general_closed(*args), quad))
    return residual


@gaussians(tolerance="gaussian")
def check_gauss2d_general_random(cfg):
    rng = np.random.default_rng(cfg.seed + 2)
    grid = _grid(cfg)
    residual, draws = 0.0, 0
    while draws < RANDOM_DRAWS:
        zeta, xi, eta = _zeta(rng), _disk(rng, 0.5), _disk(rng, 0.5)
        f, g = _disk(rng, 0.1), _disk(rng, 0.1)
        if gauss2d_general_conditions(zeta, f, g):
            continue
        draws += 1
        closed = gauss2d_general_closed(zeta, xi, eta, f, g)
        quad = gauss2d_quadrature(zeta, xi, eta, grid, f=f, g=g)
        residual = max(residual, _relative(closed, quad))
    return residual, f"{RANDOM_DRAWS} draws"


@gaussians(tolerance="branch")
def check_gauss2d_general_branch(cfg):
    grid = _grid(cfg)
    residual = 0.0
    for t in np.linspace(-0.8, 0.8, 10):
        args = (complex(-1.0, t), 0.3, -0.2, 0.2, 0.15)
        quad = gauss2d_quadrature(*args[:3], grid, f=args[3], g=args[4])
        residual = max(residual, _relative(gauss2d_general_closed(*args), quad))
    return residual, "zeta = -1 + it, t in [-0.8, 0.8]"


@gaussians(tolerance="exact")
def check_step_halving(cfg):
    grid = _grid(cfg)
    residual = 0.0
    for args in [(-1.0, 1.0, 1.0), (-1.5, 0.3j, 0.2), (-2.0, 1j, -1j)]:
        coarse = gauss2d_quadrature(*args, grid)
        fine = gauss2d_quadrature(*args, grid.halved())
        residual = max(residual, abs(coarse - fine))
    return residual


# Hermite polynomials


@hermite(tolerance="hermite")
def check_recurrence_vs_expansion(cfg):
    rng = np.random.default_rng(cfg.seed + 3)
    residual = 0.0
    for _ in range(10):
        xi, eta = _disk(rng, 2.0), _disk(rng, 2.0)
        table = HermiteTable.compute(6, 6, xi, eta)
        for m in range(7):
            for n in range(7):
                expected = hermite_mn_explicit(m, n, xi, eta)
                residual = max(
                    residual, abs(table[m, n] - expected) / max(1.0, abs(expected))
                )
    return residual


@hermite(tolerance="exact")
def check_low_orders(cfg):
    xi, eta = 0.4 - 1.1j, -0.7 + 0.2j
    return max(
        abs(hermite_mn(0, 0, xi, eta) - 1),
        abs(hermite_mn(1, 1, xi, eta) - (xi * eta - 1)),
        abs(hermite_mn(2, 1, xi, eta) - (xi ** 2 * eta - 2 * xi)),
        abs(hermite_mn(3, 0, xi, eta) - xi ** 3),
        abs(hermite_mn(0, 4, xi, eta) - eta ** 4),
    )


@hermite(tolerance="hermite")
def check_table_recurrence(cfg):
    return max(
        HermiteTable.compute(40, 40, xi, eta).recurrence_residual()
        for xi, eta in [(0.5 + 0.5j, 0.5 - 0.5j), (1.5, -0.3j)]
    )


# States


def _block_diff(first: TwoModeState, second: TwoModeState, max_total: int) -> float:
    mask = total_photon_mask(first.cutoff, max_total)
    return float(np.max(np.abs(first.amplitudes[mask] - second.amplitudes[mask])))


@states(tolerance="series")
def check_eta_series(cfg):
    p = EtaParams(0.7, 0.3)
    return _block_diff(eta_state(p, 16), eta_state_from_series(p, 16), 8)


@states(tolerance="series")
def check_xi_series(cfg):
    p = XiParams(0.5, -0.2)
    return _block_diff(xi_state(p, 16), xi_state_from_series(p, 16), 8)


@states(tolerance="completeness")
def check_completeness(cfg):
    grid = _grid(cfg)
    mask = total_photon_mask(10, 6)
    residual = 0.0
    for family in ("eta", "xi"):
        M = completeness_operator(family, grid, 10)
        residual = max(residual, M.max_abs_diff(OperatorMatrix.identity(10), mask))
    return residual


@states(tolerance="eigenvector")
def check_eigenvectors(cfg):
    cutoff = 20
    X1, P1, X2, P2 = quadrature_operators(cutoff)
    residual = 0.0
    for value in (0.3 + 0.4j, -0.7 + 0.2j, 0.5 - 0.8j):
        eta = eta_state(EtaParams.from_complex(value), cutoff)
        xi = xi_state(XiParams.from_complex(value), cutoff)
        residual = max(
            residual,
            eigen_residual(eta, X1 - X2, np.sqrt(2) * value.real, 8),
            eigen_residual(eta, P1 + P2, np.sqrt(2) * value.imag, 8),
            eigen_residual(xi, X1 + X2, np.sqrt(2) * value.real, 8),
            eigen_residual(xi, P1 - P2, np.sqrt(2) * value.imag, 8),
        )
    return residual


@states(tolerance="exact")
def check_coherent_norm(cfg):
    state = coherent_state(1.0, 30)
    return max(abs(np.vdot(state, state) - 1), abs(state[0] - np.exp(-0.5)))


@states(tolerance="squeezed_integral")
def check_squeezed_integral(cfg):
    exact = squeezed_vacuum(0.5, 20)
    integral = squeezed_vacuum_from_integral(0.5, 20, _grid(cfg))
    return float(np.max(np.abs(exact - integral)))


# Projectors


BS_ANGLES = [
    (t, p) for t in (np.pi / 4, np.pi / 2, np.pi) for p in (0.0, np.pi / 2, -np.pi / 2)
]


@projectors(tolerance="exact")
def check_bs_generator_skew(cfg):
    generators = (beam_splitter_generator(BsParams(t, p), 12) for t, p in BS_ANGLES)
    return max(float(np.max(np.abs((G + G.adjoint()).entries))) for G in generators)


@projectors(tolerance="unitarity")
def check_bs_unitarity(cfg):
    residual = max(
        beam_splitter(BsParams(t, p), 12).unitarity_residual() for t, p in BS_ANGLES
    )
    large = beam_splitter(BsParams(np.pi / 2, 0.0), 24)
    return max(residual, large.unitarity_residual())


@projectors(tolerance="block_structure")
def check_bs_block_structure(cfg):
    return max(
        cross_sector_leakage(beam_splitter(BsParams(t, p), 12)) for t, p in BS_ANGLES
    )


@projectors(tolerance="transformation")
def check_bs_transformation(cfg):
    cutoff = 12
    A, B = mode_operators(cutoff)
    P = block_projector(cutoff, cutoff - 2)
    residual = 0.0
    for theta, phi in BS_ANGLES:
        U = beam_splitter(BsParams(theta, phi), cutoff)
        expected = A * np.cos(theta / 2) + B * (np.exp(1j * phi) * np.sin(theta / 2))
        diff = (U.adjoint() @ A @ U - expected) @ P
        residual = max(residual, float(np.max(np.abs(diff.entries))))
    return residual


@projectors(tolerance="exact")
def check_conjugation_vs_fock(cfg):
    cutoff = 12
    return max(
        compare_projectors(
            mu_conjugation(BsParams(np.pi / 2, phi), cutoff),
            mu_fock(phi, cutoff),
            cutoff - 1,
        )
        for phi in (0.0, np.pi / 2, -np.pi / 2)
    )


@projectors(tolerance="exact")
def check_swap_forms(cfg):
    cutoff = 12
    return max(
        mu_fock(0.0, cutoff).max_abs_diff(swap_operator(cutoff)),
        mu_fock_eta_form(cutoff).max_abs_diff(mu_fock(-np.pi / 2, cutoff)),
        mu_fock_xi_form(cutoff).max_abs_diff(mu_fock(np.pi / 2, cutoff)),
        mu_conjugation(BsParams(0.0, 0.3), cutoff).max_abs_diff(parity_op(cutoff)),
    )


@projectors(tolerance="exact")
def check_mu_fock_involution(cfg):
    cutoff = 12
    identity = OperatorMatrix.identity(cutoff)
    residual = 0.0
    for phi in (0.0, 0.3, -np.pi / 2, np.pi / 2, 1.1):
        M = mu_fock(phi, cutoff)
        residual = max(
            residual,
            (M @ M).max_abs_diff(identity),
            mu_fock(-phi, cutoff).max_abs_diff(M.conj()),
        )
    return residual


@projectors(tolerance="spectrum")
def check_mu_fock_spectrum(cfg):
    residual = 0.0
    for phi in (0.0, 0.3, -np.pi / 2):
        eigenvalues = np.linalg.eigvalsh(mu_fock(phi, 12).entries)
        residual = max(residual, float(np.max(np.abs(np.abs(eigenvalues) - 1))))
    return residual


@projectors(tolerance="exact")
def check_exact_hermiticity(cfg):
    cutoff = 12
    routes = [
        mu_conjugation(BsParams(np.pi / 2, 0.0), cutoff),
        mu_conjugation(BsParams(np.pi / 4, 0.3), cutoff),
        mu_fock(0.7, cutoff),
        mu_fock_eta_form(cutoff),
        mu_fock_xi_form(cutoff),
        parity_op(cutoff),
    ]
    return max(M.hermiticity_residual() for M in routes)


@projectors(tolerance="quadrature")
def check_parity_from_coherent_integral(cfg):
    parity = parity_from_coherent_quadrature(QuadratureGrid(6.0, 0.05), 8)
    return parity.max_abs_diff(parity_matrix(8))


@lru_cache(maxsize=4)
def _quadrature_projector(family: str, cutoff: int, radius: float, step: float):
    build = mu_from_eta_quadrature if family == "eta" else mu_from_xi_quadrature
    return build(QuadratureGrid(radius, step), cutoff)


def _quadrature_setup(cfg):
    cutoff = cfg.cutoff or 16
    block = cfg.block if cfg.block is not None else 6
    return cutoff, block, cfg.grid.radius, cfg.grid.step


@projectors(tolerance="quadrature")
def check_eta_quadrature(cfg):
    cutoff, block, radius, step = _quadrature_setup(cfg)
    M = _quadrature_projector("eta", cutoff, radius, step)
    residual = compare_projectors(M, mu_fock(-np.pi / 2, cutoff), block)
    return residual, f"cutoff={cutoff}, block={block}"


@projectors(tolerance="quadrature")
def check_xi_quadrature(cfg):
    cutoff, block, radius, step = _quadrature_setup(cfg)
    M = _quadrature_projector("xi", cutoff, radius, step)
    residual = compare_projectors(M, mu_fock(np.pi / 2, cutoff), block)
    return residual, f"cutoff={cutoff}, block={block}"


@projectors(tolerance="quadrature")
def check_xi_is_conjugate_eta(cfg):
    cutoff, block, radius, step = _quadrature_setup(cfg)
    eta = _quadrature_projector("eta", cutoff, radius, step)
    xi = _quadrature_projector("xi", cutoff, radius, step)
    return compare_projectors(xi, eta.conj(), block)


@projectors(tolerance="quadrature")
def check_quadrature_hermiticity(cfg):
    cutoff, _, radius, step = _quadrature_setup(cfg)
    return max(
        _quadrature_projector(family, cutoff, radius, step).hermiticity_residual()
        for family in ("eta", "xi")
    )


@projectors(tolerance="coherent_quadrature")
def check_coherent_quadrature(cfg):
    M = mu_coherent_quadrature(QuadratureGrid(4.0, 0.1, dimension=4), 3)
    return max(M.max_abs_diff(swap_operator(3)), M.hermiticity_residual())


def _coherent_ket(alpha: complex, beta: complex, cutoff: int) -> np.ndarray:
    return np.kron(
        coherent_amplitudes(alpha, cutoff), coherent_amplitudes(beta, cutoff)
    )


@projectors(tolerance="quadrature")
def check_coherent_matrix_elements(cfg):
    rng = np.random.default_rng(cfg.seed + 4)
    cutoff = 25
    residual = 0.0
    for k in range(20):
        p = BsParams((np.pi / 4, np.pi / 3)[k % 2], rng.uniform(-np.pi, np.pi))
        alpha, beta, alpha_p, beta_p = (_disk(rng, 1.0) for _ in range(4))
        M = mu_conjugation(p, cutoff)
        bra = _coherent_ket(alpha_p, beta_p, cutoff)
        numeric = np.vdot(bra, M @ _coherent_ket(alpha, beta, cutoff))
        closed = mu_coherent_matrix_element(p, alpha, beta, alpha_p, beta_p)
        residual = max(residual, abs(numeric - closed))
    return residual, "20 random tuples"


@projectors(tolerance="exact")
def check_coherent_matrix_element_parity(cfg):
    cutoff = 25
    residual = 0.0
    for beta in (0.0, 0.4 + 0.3j, -0.9j):
        alpha = 0.5 - 0.2j
        closed = mu_coherent_matrix_element(
            BsParams(0.0, 0.0), alpha, beta, alpha, beta
        )
        state = TwoModeState(_coherent_ket(alpha, beta, cutoff), cutoff)
        residual = max(
            residual,
            abs(closed - np.exp(-2 * abs(beta) ** 2)),
            abs(closed - expectation(state, parity_op(cutoff))),
        )
    return residual


# Metrology


def _noon(N: int, cutoff: int = 12) -> Interferometer:
    return Interferometer(InterferometerSpec.from_tokens(f"noon:{N}", cutoff=cutoff))


@metrology(tolerance="noon_signal")
def check_noon_closed_form(cfg):
    phis = np.linspace(0, 2 * np.pi, 50)
    residual = 0.0
    for N in range(1, 7):
        interferometer = _noon(N)
        residual = max(
            residual,
            max(
                abs(interferometer(phi) - noon_parity_closed(N, phi).real)
                for phi in phis
            ),
        )
    return residual, "N=1..6, 50 phases, cutoff 12"


@metrology(tolerance="exact")
def check_noon_periodicity(cfg):
    residual = 0.0
    for N in range(1, 7):
        interferometer = _noon(N)
        for phi in (0.1, 0.77, 2.0):
            shifted = interferometer(phi + 2 * np.pi / N)
            residual = max(residual, abs(interferometer(phi) - shifted))
    return residual


@metrology(tolerance="sensitivity")
def check_noon_sensitivity(cfg):
    residual = 0.0
    for N in range(1, 5):
        interferometer = _noon(N)
        phi, step = np.pi / (4 * N), 1e-4
        slope = (interferometer(phi + step) - interferometer(phi - step)) / (2 * step)
        value = sensitivity(interferometer(phi), slope)
        residual = max(residual, abs(value - 1 / N) * N)
    return residual


@metrology(tolerance="pipeline")
def check_noon_representation(cfg):
    residual = 0.0
    for N, phi in [(0, 0.3), (1, 0.0), (2, np.pi / 4), (3, 0.4)]:
        value = noon_pipeline_check(N, phi, 8, _grid(cfg), cfg.tolerances.pipeline)
        residual = max(residual, abs(value - noon_parity_closed(N, phi).real))
    return residual


CS_SV_CASES = [(abs_z, r) for abs_z in (0.5, 1.0) for r in (0.2, 0.5)]


def _cs_sv(abs_z: float, r: float, cutoff: int) -> Interferometer:
    z = abs_z * np.exp(0.3j)
    state = StateSpec("cs-sv", (float(z.real), float(z.imag), float(r)))
    return Interferometer(
        InterferometerSpec(
            state, FirstBeamSplitter.parse("symmetric-i"), cutoff=cutoff
        )
    )


@metrology(tolerance="cs_sv_signal")
def check_cs_sv_closed_form(cfg):
    phis = np.linspace(-np.pi, np.pi, 20)
    residual = 0.0
    for abs_z, r in CS_SV_CASES:
        interferometer = _cs_sv(abs_z, r, 30)
        z = abs_z * np.exp(0.3j)
        residual = max(
            residual,
            max(
                abs(interferometer(phi) - cs_sv_parity_closed(z, r, phi))
                for phi in phis
            ),
        )
    return residual, "|z| in {0.5, 1}, r in {0.2, 0.5}, 20 phases, cutoff 30"


@metrology(tolerance="cutoff_convergence")
def check_cs_sv_cutoff_convergence(cfg):
    small, large = _cs_sv(1.0, 0.5, 30), _cs_sv(1.0, 0.5, 40)
    return max(abs(small(phi) - large(phi)) for phi in np.linspace(-np.pi, np.pi, 7))


@metrology(tolerance="pipeline")
def check_detection_routes(cfg):
    cutoff = 12
    rng = np.random.default_rng(cfg.seed + 5)
    mask = total_photon_mask(cutoff, cutoff // 2)
    size = cutoff ** 2
    amplitudes = (rng.normal(size=size) + 1j * rng.normal(size=size)) * mask
    state = TwoModeState(amplitudes / np.linalg.norm(amplitudes), cutoff)
    routes = [
        mu_conjugation(BsParams(np.pi / 2, -np.pi / 2), cutoff),
        mu_fock(-np.pi / 2, cutoff),
        _quadrature_projector("eta", cutoff, cfg.grid.radius, cfg.grid.step),
    ]
    residual = 0.0
    for phi in (0.0, 0.9, -2.1):
        psi = phase_shifter(phi, cutoff) @ state
        values = [expectation(psi, M) for M in routes]
        residual = max(residual, max(abs(v - values[0]) for v in values[1:]))
    return residual


@metrology(tolerance="signal_reality")
def check_signal_reality(cfg):
    residual = 0.0
    for interferometer in (_noon(2), _cs_sv(0.8, 0.4, 30)):
        phis = np.linspace(-np.pi, np.pi, 25)
        readings = [interferometer.measure(phi) for phi in phis]
        residual = max(
            residual,
            max(reading.imag_residual for reading in readings),
            max(abs(reading.value) for reading in readings) - 1.0,
        )
    return residual
