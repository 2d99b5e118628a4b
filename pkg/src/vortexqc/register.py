"""
Majorana register: 2n Majorana operators acting on the 2^n occupation basis.

Conventions
-----------
* Basis index bit ``k-1`` (little-endian) is the occupation of ``c_k``.
* Jordan-Wigner form: ``gamma_{2k-1} = Z...Z X_k``, ``gamma_{2k} = Z...Z Y_k``.
* ``c_k = (gamma_{2k-1} + i gamma_{2k}) / 2`` so ``{c_k, c_k^dag} = 1`` and
  the empty state of every mode is bit 0.
* Braid generator at site i: ``T_i = exp(pi/4 gamma_{i+1} gamma_i)
  = (1 + gamma_{i+1} gamma_i) / sqrt(2)``; it maps ``gamma_i -> gamma_{i+1}``
  and ``gamma_{i+1} -> -gamma_i``. The inverse generator is the opposite
  exchange.

Dense matrices are built on request (``build_majoranas``,
``braid_generator``); :func:`apply_braid` works matrix-free since each
``gamma_{i+1} gamma_i`` touches at most two occupation bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .braid import BraidWord, Letter

MAX_PAIRS = 12
BASIS_CONVENTION = "little-endian: bit k of the basis index is the occupation of c_(k+1)"

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SQRT_HALF = 1.0 / math.sqrt(2.0)


class SiteError(ValueError):
    """Braid site or Majorana index outside the register."""


def _check_pairs(n: int) -> None:
    if not 1 <= n <= MAX_PAIRS:
        raise ValueError(f"number of pairs must be in [1, {MAX_PAIRS}] (got {n})")


@dataclass(frozen=True, eq=False)
class MajoranaOperator:
    index: int
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class BraidGenerator:
    site: int
    inverse: bool
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class MajoranaRegister:
    n_pairs: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_pairs(self.n_pairs)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** self.n_pairs,):
            raise ValueError(f"expected {2 ** self.n_pairs} amplitudes, got {amps.shape}")
        if abs(np.vdot(amps, amps).real - 1.0) > 1e-10:
            raise ValueError("register state must be normalised")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def vacuum(cls, n_pairs: int) -> "MajoranaRegister":
        _check_pairs(n_pairs)
        amps = np.zeros(2 ** n_pairs, dtype=complex)
        amps[0] = 1.0
        return cls(n_pairs, amps)

    @classmethod
    def basis_state(cls, n_pairs: int, occupations) -> "MajoranaRegister":
        """``occupations[k]`` is the occupation (0/1) of ``c_{k+1}``."""
        _check_pairs(n_pairs)
        occ = list(occupations)
        if len(occ) != n_pairs or any(b not in (0, 1) for b in occ):
            raise ValueError("need one 0/1 occupation per pair")
        amps = np.zeros(2 ** n_pairs, dtype=complex)
        amps[sum(b << k for k, b in enumerate(occ))] = 1.0
        return cls(n_pairs, amps)

    @classmethod
    def random(cls, n_pairs: int, rng: np.random.Generator) -> "MajoranaRegister":
        _check_pairs(n_pairs)
        v = rng.normal(size=2 ** n_pairs) + 1j * rng.normal(size=2 ** n_pairs)
        return cls(n_pairs, v / np.linalg.norm(v))

    @property
    def n_majoranas(self) -> int:
        return 2 * self.n_pairs

    def to_dict(self) -> dict:
        return {
            "n": self.n_pairs,
            "basis": BASIS_CONVENTION,
            "amplitudes": [[a.real, a.imag] for a in self.amplitudes.tolist()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MajoranaRegister":
        if data.get("basis", BASIS_CONVENTION) != BASIS_CONVENTION:
            raise ValueError(f"unsupported basis convention {data['basis']!r}")
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(int(data["n"]), amps)


# ---------------------------------------------------------------------------
# operators

def _kron_modes(factors: list[np.ndarray]) -> np.ndarray:
    # mode 1 is the least significant bit, i.e. the last Kronecker factor
    return reduce(np.kron, reversed(factors))


def majorana_matrix(n: int, index: int) -> np.ndarray:
    _check_pairs(n)
    if not 1 <= index <= 2 * n:
        raise SiteError(f"Majorana index must be in [1, {2 * n}] (got {index})")
    k = (index + 1) // 2
    factors = [_Z] * (k - 1) + [_X if index % 2 else _Y] + [_I2] * (n - k)
    return _kron_modes(factors)


def build_majoranas(n: int) -> list[MajoranaOperator]:
    """gamma_1 ... gamma_2n as dense 2^n x 2^n matrices."""
    _check_pairs(n)
    return [MajoranaOperator(j, majorana_matrix(n, j)) for j in range(1, 2 * n + 1)]


def annihilator(n: int, k: int) -> np.ndarray:
    """c_k = (gamma_{2k-1} + i gamma_{2k}) / 2."""
    return 0.5 * (majorana_matrix(n, 2 * k - 1) + 1j * majorana_matrix(n, 2 * k))


def bond_number_operator(n: int, site: int) -> np.ndarray:
    """d^dag d for the bond fermion d = (gamma_i + i gamma_{i+1}) / 2 at ``site`` i.

    For odd sites this is the occupation of c_{(i+1)/2}; in all cases
    gamma_{i+1} gamma_i = i (2 d^dag d - 1).
    """
    _check_site(n, site)
    d = 0.5 * (majorana_matrix(n, site) + 1j * majorana_matrix(n, site + 1))
    return d.conj().T @ d


def _check_site(n: int, site: int) -> None:
    _check_pairs(n)
    if not 1 <= site <= 2 * n - 1:
        raise SiteError(f"braid site must be in [1, {2 * n - 1}] (got {site})")


def braid_generator(n: int, site: int, inverse: bool = False) -> BraidGenerator:
    """Dense T_i = (1 +- gamma_{i+1} gamma_i) / sqrt(2)."""
    _check_site(n, site)
    g = majorana_matrix(n, site + 1) @ majorana_matrix(n, site)
    sign = -1.0 if inverse else 1.0
    mat = _SQRT_HALF * (np.eye(2 ** n, dtype=complex) + sign * g)
    return BraidGenerator(site, inverse, mat)


def word_unitary(n: int, word: BraidWord) -> np.ndarray:
    """Dense unitary of a word; the first letter acts first (rightmost factor)."""
    _check_pairs(n)
    u = np.eye(2 ** n, dtype=complex)
    for site, inv in word:
        u = braid_generator(n, site, inv).matrix @ u
    return u


# ---------------------------------------------------------------------------
# matrix-free application

def _apply_pair_product(n: int, site: int, psi: np.ndarray) -> np.ndarray:
    """gamma_{site+1} gamma_site applied to psi without forming matrices."""
    idx = np.arange(psi.size)
    if site % 2:
        # gamma_{2k} gamma_{2k-1} = -i Z_k
        k = (site + 1) // 2
        bit = (idx >> (k - 1)) & 1
        return -1j * (1 - 2 * bit) * psi
    # gamma_{2k+1} gamma_{2k} = -i X_k X_{k+1}
    k = site // 2
    mask = (1 << (k - 1)) | (1 << k)
    return -1j * psi[idx ^ mask]


def _apply_letter(n: int, letter: Letter, psi: np.ndarray) -> np.ndarray:
    site, inv = letter
    _check_site(n, site)
    g = _apply_pair_product(n, site, psi)
    return _SQRT_HALF * (psi - g if inv else psi + g)


def apply_braid(state: MajoranaRegister, word: BraidWord) -> MajoranaRegister:
    n = state.n_pairs
    for site, _ in word:
        _check_site(n, site)
    psi = np.array(state.amplitudes)
    for letter in word:
        psi = _apply_letter(n, letter, psi)
    return MajoranaRegister(n, psi)


# ---------------------------------------------------------------------------
# conjugation action

def conjugate_majorana(n: int, word: BraidWord, k: int, atol: float = 1e-10) -> tuple[int, int]:
    """Return (j, sign) with U gamma_k U^dag = sign * gamma_j for the word's unitary U."""
    _check_pairs(n)
    if not 1 <= k <= 2 * n:
        raise SiteError(f"Majorana index must be in [1, {2 * n}] (got {k})")
    u = word_unitary(n, word)
    image = u @ majorana_matrix(n, k) @ u.conj().T
    dim = 2 ** n
    for j in range(1, 2 * n + 1):
        # gammas are orthogonal under <A, B> = tr(A^dag B) / dim
        overlap = np.vdot(majorana_matrix(n, j), image) / dim
        if abs(abs(overlap) - 1.0) < atol:
            sign = int(round(overlap.real))
            if sign in (1, -1) and np.allclose(image, sign * majorana_matrix(n, j), atol=atol, rtol=0):
                return j, sign
    raise ArithmeticError("conjugated operator is not a single signed Majorana")


# ---------------------------------------------------------------------------
# measurement

def bitstring(index: int, n: int) -> str:
    """Occupations n_1 n_2 ... n_n of a basis index (mode 1 leftmost)."""
    return "".join(str((index >> k) & 1) for k in range(n))


def measure_occupations(state: MajoranaRegister) -> dict[str, float]:
    probs = np.abs(state.amplitudes) ** 2
    return {bitstring(i, state.n_pairs): float(p) for i, p in enumerate(probs)}


def parity(state: MajoranaRegister) -> float:
    """Expectation of prod_k (1 - 2 n_k)."""
    idx = np.arange(state.amplitudes.size)
    pop = np.zeros_like(idx)
    for k in range(state.n_pairs):
        pop += (idx >> k) & 1
    signs = 1 - 2 * (pop % 2)
    return float(np.sum(signs * np.abs(state.amplitudes) ** 2))


def sample_occupations(state: MajoranaRegister, shots: int, rng: np.random.Generator) -> dict[str, int]:
    """Histogram of ``shots`` projective occupation measurements."""
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    return {bitstring(i, state.n_pairs): int(c) for i, c in enumerate(counts) if c}
