"""Two-component (Dirac-type) form of the relativistic heat equation.

Squaring out the root in ``d_t F = (1 - sqrt(1 - d_x^2)) F`` gives the
telegrapher equation ``(d_t - 1)^2 F = (1 - d_x^2) F``.  With Pauli matrices,
``(sigma_1 + i sigma_2 z)^2 = (1 - z^2) 1``, so ``d_t Phi = (1 + sigma_1 + i sigma_2 d_x) Phi``
is a first-order system whose components solve the telegrapher equation.

The half-coupled two-component matrix ``M(z) = [[1, (1+z)/2], [(1-z)/2, 1]]`` satisfies
``4 (M - 1)^2 = (1 - z^2) 1`` instead; its components obey
``(d_t - 1)^2 phi = (1 - d_x^2) phi / 4``.  Both generators are available; the
evolution defaults to the one consistent with the scalar equation.

All algebra is exact (sympy) with ``z`` standing for ``d_x`` and ``z = ik`` in
Fourier space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy as sp

from .evolution import InitialCondition
from .grid import Grid, GridFunction
from .quadrature import DEFAULT_SPEC, QuadratureSpec, fourier_inverse

z, k = sp.symbols("z k")
I2 = sp.eye(2)
SIGMA = (
    sp.Matrix([[0, 1], [1, 0]]),
    sp.Matrix([[0, -sp.I], [sp.I, 0]]),
    sp.Matrix([[1, 0], [0, -1]]),
)
GENERATORS = ("dirac", "half")


def _is_zero(m: sp.Matrix) -> bool:
    return all(sp.expand(e) == 0 for e in m)


def pauli_identities() -> dict[str, bool]:
    """Exact checks of the Pauli algebra and of the squared first-order form."""
    report = {}
    for i, s in enumerate(SIGMA, start=1):
        report[f"sigma{i}^2 = 1"] = _is_zero(s * s - I2)
    for a in range(3):
        for b in range(a + 1, 3):
            sa, sb = SIGMA[a], SIGMA[b]
            report[f"{{sigma{a + 1}, sigma{b + 1}}} = 0"] = _is_zero(sa * sb + sb * sa)
    for a in range(3):
        for b in range(3):
            if a == b:
                continue
            c = 3 - a - b
            eps = sp.LeviCivita(a, b, c)
            comm = SIGMA[a] * SIGMA[b] - SIGMA[b] * SIGMA[a]
            report[f"[sigma{a + 1}, sigma{b + 1}] = 2i eps sigma{c + 1}"] = _is_zero(
                comm - 2 * sp.I * eps * SIGMA[c]
            )
    root = SIGMA[0] + sp.I * SIGMA[1] * z
    report["(sigma1 + i sigma2 z)^2 = (1 - z^2) 1"] = _is_zero(root * root - (1 - z**2) * I2)
    return report


def unit_commutator_holds() -> bool:
    """Whether ``[sigma_l, sigma_m] = i eps_lmn sigma_n`` (no factor 2) holds; it does not."""
    comm = SIGMA[0] * SIGMA[1] - SIGMA[1] * SIGMA[0]
    return _is_zero(comm - sp.I * SIGMA[2])


def half_coupling_generator(var=z) -> sp.Matrix:
    """``[[1, (1+z)/2], [(1-z)/2, 1]]``."""
    return sp.Matrix([[1, (1 + var) / 2], [(1 - var) / 2, 1]])


def dirac_generator(var=z) -> sp.Matrix:
    """``1 + sigma_1 + i sigma_2 z = [[1, 1+z], [1-z, 1]]``."""
    return I2 + SIGMA[0] + sp.I * SIGMA[1] * var


def generator(which: str = "dirac", var=z) -> sp.Matrix:
    if which not in GENERATORS:
        raise ValueError(f"generator must be one of {GENERATORS}")
    return dirac_generator(var) if which == "dirac" else half_coupling_generator(var)


def squared_identities() -> dict[str, bool]:
    """Symbol-level factorisation checks with ``k`` a formal real symbol."""
    m = half_coupling_generator(sp.I * k) - I2
    d = dirac_generator(sp.I * k) - I2
    return {
        "4 (M(ik) - 1)^2 = (1 + k^2) 1": _is_zero(4 * m * m - (1 + k**2) * I2),
        "(D(ik) - 1)^2 = (1 + k^2) 1": _is_zero(d * d - (1 + k**2) * I2),
    }


def eigenvalues(which: str = "dirac") -> list:
    """Eigenvalues of the generator at ``z = ik``, as sympy expressions in ``k``."""
    lam = sp.symbols("lam")
    a = generator(which, sp.I * sp.Symbol("k", real=True))
    poly = sp.expand((a - lam * I2).det())
    return sorted(sp.solve(poly, lam), key=sp.default_sort_key)


def eigenvalue_check(ks, which: str = "dirac") -> float:
    """Largest distance of the numeric eigenvalues from ``1 +/- sqrt(1 + k^2)``."""
    worst = 0.0
    for kv in np.asarray(ks, dtype=float):
        a = np.array(generator(which, sp.I * sp.Float(kv)).evalf(), dtype=complex)
        ev = np.sort_complex(np.linalg.eigvals(a))
        expected = np.sort_complex(np.array([1 - math.sqrt(1 + kv * kv), 1 + math.sqrt(1 + kv * kv)]))
        worst = max(worst, float(np.max(np.abs(ev - expected))))
    return worst


# -- evolution ---------------------------------------------------------------

@dataclass
class TwoComponentGrid:
    phi1: GridFunction
    phi2: GridFunction
    time: float = 0.0

    def __post_init__(self):
        if self.phi1.grid != self.phi2.grid:
            raise ValueError("components must share a grid")
        if self.phi1.time != self.phi2.time:
            raise ValueError("components must share a time stamp")

    @property
    def grid(self) -> Grid:
        return self.phi1.grid

    @property
    def x(self) -> np.ndarray:
        return self.phi1.x


def _scale(which: str) -> float:
    if which not in GENERATORS:
        raise ValueError(f"generator must be one of {GENERATORS}")
    return 1.0 if which == "dirac" else 0.5


def propagator(kv, t: float, which: str = "dirac"):
    """``exp(t A(ik))`` as arrays ``(P11, P12, P21, P22)``.

    ``A = 1 + c N`` with ``N = [[0, 1+ik], [1-ik, 0]]`` and ``N^2 = (1 + k^2) 1``, so
    ``exp(tA) = e^t [cosh(t w) 1 + sinh(t w) / w c N]`` with ``w = c sqrt(1 + k^2)``.
    """
    c = _scale(which)
    kv = np.asarray(kv, dtype=float)
    w = c * np.sqrt(1.0 + kv * kv)
    et = math.exp(t)
    ch = et * np.cosh(t * w)
    sh = et * np.sinh(t * w) / w * c
    return ch, sh * (1 + 1j * kv), sh * (1 - 1j * kv), ch


def _as_initial(phi) -> InitialCondition:
    if isinstance(phi, InitialCondition):
        return phi
    if isinstance(phi, GridFunction):
        return InitialCondition.tabulated(phi)
    raise TypeError("components must be InitialCondition or GridFunction")


def two_component_evolve(phi0, t: float, grid: Grid, quad: QuadratureSpec = DEFAULT_SPEC,
                         which: str = "dirac") -> TwoComponentGrid:
    """Evolve ``Phi`` under ``d_t Phi = A(d_x) Phi`` by the exact Fourier-space exponential.

    ``phi0`` is a :class:`TwoComponentGrid` or a pair of initial conditions; the
    second component defaults to zero when ``phi0`` is a single initial condition.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if isinstance(phi0, TwoComponentGrid):
        a, b = _as_initial(phi0.phi1), _as_initial(phi0.phi2)
    elif isinstance(phi0, tuple):
        a, b = (_as_initial(p) for p in phi0)
    else:
        a, b = _as_initial(phi0), InitialCondition.zero()
    if t == 0:
        return TwoComponentGrid(GridFunction.on(grid, a(grid.x)), GridFunction.on(grid, b(grid.x)))
    _scale(which)

    def component(row):
        def khat(kv):
            p = propagator(kv, t, which)
            return p[2 * row] * a.fourier(kv) + p[2 * row + 1] * b.fourier(kv)
        return fourier_inverse(khat, grid, quad, time=t)

    return TwoComponentGrid(component(0), component(1), t)


_STENCILS = {
    2: (np.array([-0.5, 0.0, 0.5]), np.array([1.0, -2.0, 1.0])),
    4: (np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0, np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0),
}


def telegrapher_fd_residual(phi0=None, t: float = 1.0, delta: float = 1.0 / 64,
                            x_range=(-4.0, 4.0), order: int = 4, which: str = "dirac",
                            quad: QuadratureSpec = DEFAULT_SPEC) -> dict[str, float]:
    """Largest centred finite-difference residual of ``phi_tt - 2 phi_t + phi_xx``.

    The residual vanishes for solutions of ``(d_t - 1)^2 phi = (1 - d_x^2) phi``.
    Steps ``delta`` in both ``t`` and ``x``; ``order`` is 2 or 4 (stencil accuracy).
    The default initial data are a Gaussian first component and a zero second one.
    """
    if order not in _STENCILS:
        raise ValueError("order must be 2 or 4")
    d1, d2 = _STENCILS[order]
    half = len(d1) // 2
    if t - half * delta < 0:
        raise ValueError("t must exceed the stencil half-width")
    phi0 = phi0 if phi0 is not None else (InitialCondition.gaussian(), InitialCondition.zero())
    lo, hi = x_range
    n_inner = int(round((hi - lo) / delta)) + 1
    grid = Grid(lo - half * delta, lo + (n_inner - 1 + half) * delta, n_inner + 2 * half)
    slices = [two_component_evolve(phi0, t + j * delta, grid, quad, which)
              for j in range(-half, half + 1)]
    out = {}
    for name in ("phi1", "phi2"):
        f = np.array([getattr(s, name).samples for s in slices])
        inner = slice(half, half + n_inner)
        f_t = d1 @ f[:, inner] / delta
        f_tt = d2 @ f[:, inner] / delta**2
        now = f[half]
        f_xx = sum(c * now[half + j - half: half + j - half + n_inner] for j, c in enumerate(d2)) / delta**2
        out[name] = float(np.max(np.abs(f_tt - 2.0 * f_t + f_xx)))
    return out
