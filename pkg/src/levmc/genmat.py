"""Synthetic rank-r test matrices with controlled conditioning and coherence.

Two families cover the (incoherent ... coherent) x (well ... poorly
conditioned) grid at n=100, r=5:

* power-law matrices P1-P8: a random bilinear form is squeezed by a
  diagonal i^(-gamma) weighting on both sides, truncated to rank r, and
  given an exact target spectrum (flat, or linearly spaced between 1
  and n). Larger gamma concentrates energy on early rows/columns and
  drives the coherence up.
* block-diagonal matrices B1-B4: constant blocks of sizes b_k and
  values v_k. Singular values are b_k * v_k and every row or column of
  block k has leverage score (n/r) / b_k, so a single size-2 block
  pushes the coherence to n/(2r).

All constructions are normalized to unit Frobenius norm (leverage
scores are scale-invariant, so this only fixes the spectrum's scale).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._mix import mix64
from .leverage import LeverageScores, coherence, exact_leverage_scores

WELL_CONDITIONED = "well_conditioned"
LIN_SPACED = "lin_spaced"

RANK_TOL = 1e-8


@dataclass(frozen=True)
class PowerLaw:
    """Power-law family parameters: decay exponent and spectrum shape."""

    gamma: float
    conditioning: str = WELL_CONDITIONED


@dataclass(frozen=True)
class BlockDiag:
    """Block-diagonal family parameters: (size, value) per block."""

    blocks: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class Explicit:
    """Marker for matrices supplied directly by the caller."""

    source: str = "user"


GeneratorSpec = PowerLaw | BlockDiag | Explicit


@dataclass(frozen=True)
class TestMatrix:
    """Dense rank-r test matrix plus generator metadata.

    ``values`` has unit Frobenius norm; ``spectrum`` holds the r
    nonzero singular values (descending, post-normalization) and
    ``kappa = spectrum[0] / spectrum[r-1]``. ``exact_scores`` are
    computed from the dense matrix at construction.
    """

    n: int
    r: int
    values: np.ndarray
    spectrum: np.ndarray
    kappa: float
    generator: GeneratorSpec
    exact_scores: LeverageScores
    preset: str | None = None
    seed: int | None = None

    @property
    def eta(self) -> float:
        return coherence(self.exact_scores)

    def scaled(self, c: float) -> np.ndarray:
        """Dense copy scaled by c (for scale-invariance checks)."""
        return c * self.values


def random_orthonormal(n: int, r: int, seed: int) -> np.ndarray:
    """Deterministic n x r matrix with orthonormal columns.

    Standard-normal fill followed by thin QR; the R diagonal's signs
    are folded into Q so the result is unique given the seed.
    """
    if not 1 <= r <= n:
        raise ValueError(f"require 1 <= r <= n; got r={r}, n={n}")
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, r)))
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


def _finish(
    n: int,
    r: int,
    left: np.ndarray,
    target: np.ndarray,
    right_t: np.ndarray,
    generator: GeneratorSpec,
    preset: str | None,
    seed: int | None,
) -> TestMatrix:
    """Assemble, normalize, and annotate a matrix from rank-r factors."""
    M = (left * target) @ right_t
    M /= np.linalg.norm(M)
    spectrum = target / np.linalg.norm(target)
    scores = exact_leverage_scores(M, rank_tol=RANK_TOL)
    if scores.r != r:
        raise ValueError(f"construction produced numeric rank {scores.r}, expected {r}")
    return TestMatrix(
        n=n,
        r=r,
        values=M,
        spectrum=spectrum,
        kappa=float(spectrum[0] / spectrum[-1]),
        generator=generator,
        exact_scores=scores,
        preset=preset,
        seed=seed,
    )


def make_power_law(
    n: int,
    r: int,
    gamma: float,
    conditioning: str = WELL_CONDITIONED,
    seed: int = 0,
    preset: str | None = None,
) -> TestMatrix:
    """Build a rank-r power-law test matrix.

    Forms M' = D U S V* D with U, V random orthogonal, S flat or
    linspace(1, n) according to ``conditioning``, and D = diag(i^-gamma);
    then truncates M' to rank r, replaces the retained spectrum by the
    exact target (ones, or r values linearly spaced between 1 and n),
    and normalizes.
    """
    if not 1 <= r <= n:
        raise ValueError(f"require 1 <= r <= n; got r={r}, n={n}")
    if gamma < 0:
        raise ValueError(f"require gamma >= 0; got {gamma}")
    if conditioning not in (WELL_CONDITIONED, LIN_SPACED):
        raise ValueError(f"unknown conditioning {conditioning!r}")
    U = random_orthonormal(n, n, mix64(seed, 1))
    V = random_orthonormal(n, n, mix64(seed, 2))
    d = np.arange(1, n + 1, dtype=float) ** -gamma
    if conditioning == WELL_CONDITIONED:
        s = np.ones(n)
        target = np.ones(r)
    else:
        s = np.linspace(1.0, n, n)
        target = np.linspace(1.0, n, r)[::-1].copy()
    Mp = (d[:, None] * U) @ (s[:, None] * V.T) * d[None, :]
    Uf, _, Vt = np.linalg.svd(Mp)
    return _finish(
        n,
        r,
        Uf[:, :r],
        target,
        Vt[:r, :],
        PowerLaw(gamma=gamma, conditioning=conditioning),
        preset,
        seed,
    )


def make_block_diag(
    n: int,
    r: int,
    blocks: list[tuple[int, float]] | tuple[tuple[int, float], ...],
    preset: str | None = None,
) -> TestMatrix:
    """Build a block-diagonal test matrix from r (size, value) pairs.

    Block k is the b_k x b_k constant matrix with entries v_k; sizes
    must sum to n. Pre-normalization singular values are b_k * |v_k|
    and leverage scores are (n/r)/b_k with multiplicity b_k.
    """
    blocks = tuple((int(b), float(v)) for b, v in blocks)
    if len(blocks) != r:
        raise ValueError(f"expected exactly r={r} blocks; got {len(blocks)}")
    sizes = [b for b, _ in blocks]
    if sum(sizes) != n:
        raise ValueError(f"block sizes must sum to n={n}; got {sum(sizes)}")
    if min(sizes) < 1:
        raise ValueError("block sizes must be >= 1")
    if any(v == 0.0 for _, v in blocks):
        raise ValueError("block values must be nonzero")
    M = np.zeros((n, n))
    off = 0
    for b, v in blocks:
        M[off : off + b, off : off + b] = v
        off += b
    sv = np.sort(np.array([b * abs(v) for b, v in blocks]))[::-1]
    M /= np.linalg.norm(M)
    spectrum = sv / np.linalg.norm(sv)
    scores = exact_leverage_scores(M, rank_tol=RANK_TOL)
    if scores.r != r:
        raise ValueError(f"construction produced numeric rank {scores.r}, expected {r}")
    return TestMatrix(
        n=n,
        r=r,
        values=M,
        spectrum=spectrum,
        kappa=float(spectrum[0] / spectrum[-1]),
        generator=BlockDiag(blocks=blocks),
        exact_scores=scores,
        preset=preset,
        seed=None,
    )


def from_dense(values: np.ndarray, rank_tol: float = RANK_TOL) -> TestMatrix:
    """Wrap a caller-supplied dense matrix as a normalized TestMatrix."""
    M = np.asarray(values, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    fro = np.linalg.norm(M)
    if fro <= 0:
        raise ValueError("zero matrix")
    M = M / fro
    n = M.shape[0]
    s = np.linalg.svd(M, compute_uv=False)
    r = int(np.count_nonzero(s > rank_tol * s[0]))
    spectrum = s[:r].copy()
    return TestMatrix(
        n=n,
        r=r,
        values=M,
        spectrum=spectrum,
        kappa=float(spectrum[0] / spectrum[-1]),
        generator=Explicit(),
        exact_scores=exact_leverage_scores(M, rank_tol=rank_tol),
        preset=None,
        seed=None,
    )


_POWER_GAMMAS = {"P1": 0.0, "P2": 0.5, "P3": 1.0, "P4": 2.0,
                 "P5": 0.0, "P6": 0.5, "P7": 1.0, "P8": 2.0}

PRESET_NAMES = tuple(f"P{i}" for i in range(1, 9)) + tuple(f"B{i}" for i in range(1, 5))


def _equal_blocks(n: int, r: int) -> list[int]:
    if n % r != 0:
        raise ValueError(f"preset needs r | n; got n={n}, r={r}")
    return [n // r] * r


def _coherent_blocks(n: int, r: int) -> list[int]:
    """One size-2 block, remaining mass split as evenly as possible."""
    if r < 2 or n - 2 < 3 * (r - 1):
        raise ValueError(f"preset needs n - 2 >= 3 (r - 1); got n={n}, r={r}")
    base, extra = divmod(n - 2, r - 1)
    return [2] + [base] * (r - 1 - extra) + [base + 1] * extra


def preset(name: str, n: int = 100, r: int = 5, seed: int = 0) -> TestMatrix:
    """Build one of the named presets P1-P8 or B1-B4.

    P1-P4 are well-conditioned power-law matrices with gamma = 0, 0.5,
    1, 2; P5-P8 repeat those gammas with spectra linearly spaced
    between 1 and n (kappa = n). B1/B3 use equal blocks (eta = 1) and
    B2/B4 a size-2 block (eta = n/(2r)); B1/B2 are well-conditioned,
    B3/B4 have spectra linearly spaced between 1 and n. Block presets
    are deterministic and ignore the seed.
    """
    if name in _POWER_GAMMAS:
        conditioning = WELL_CONDITIONED if name in ("P1", "P2", "P3", "P4") else LIN_SPACED
        return make_power_law(n, r, _POWER_GAMMAS[name], conditioning, seed, preset=name)
    if name in ("B1", "B2", "B3", "B4"):
        sizes = _equal_blocks(n, r) if name in ("B1", "B3") else _coherent_blocks(n, r)
        ramp = np.linspace(1.0, n, r)
        if name in ("B1", "B2"):
            values = [1.0 / b for b in sizes]
        elif name == "B3":
            values = [float(v) for v in ramp]
        else:
            values = [ramp[k] / sizes[k] for k in range(r)]
        return make_block_diag(n, r, list(zip(sizes, values)), preset=name)
    raise ValueError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def write_matrix_csv(matrix: TestMatrix, path: str | Path) -> None:
    """Write the dense values as CSV plus a JSON metadata sidecar."""
    path = Path(path)
    np.savetxt(path, matrix.values, fmt="%.17g", delimiter=",")
    meta = {
        "n": matrix.n,
        "r": matrix.r,
        "kappa": matrix.kappa,
        "eta": matrix.eta,
        "preset": matrix.preset,
        "seed": matrix.seed,
        "spectrum": [float(s) for s in matrix.spectrum],
    }
    path.with_suffix(path.suffix + ".json").write_text(
        json.dumps(meta, indent=2) + "\n", encoding="utf-8"
    )


def read_matrix_csv(path: str | Path) -> np.ndarray:
    """Read a dense matrix written by :func:`write_matrix_csv`."""
    return np.loadtxt(path, delimiter=",", ndmin=2)
