"""Fusion data of a vertex algebra of CohFT-type.

A :class:`FusionDatum` stores the fully symmetric tensor of three-point
genus-zero ranks ``N[i, j, k]``.  The fusion product is recovered from it
through the contragredient involution::

    h_i * h_j = sum_k N[i, j, dual(k)] h_k

and the pairing is ``eta(h_i, h_j) = [j == dual(i)]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "AxiomError",
    "FusionDatum",
    "FusionVector",
    "SemisimpleData",
    "SemisimpleError",
    "StructuralError",
    "Violation",
    "fuse",
    "pairing",
    "semisimple_decomposition",
    "validate",
]


class StructuralError(ValueError):
    """Raised for malformed fusion data (bad shapes, out-of-range indices)."""


class AxiomError(ValueError):
    """Raised when a well-formed datum violates a Frobenius-algebra axiom."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        lines = [str(v) for v in violations[:10]]
        if len(violations) > 10:
            lines.append(f"... and {len(violations) - 10} more")
        super().__init__("fusion datum violates axioms:\n  " + "\n  ".join(lines))


class SemisimpleError(ArithmeticError):
    """The fusion algebra could not be diagonalized within tolerance."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.axiom} at {self.witness}"
        return f"{s}: {self.detail}" if self.detail else s


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise StructuralError(f"refusing inexact float {x!r}; use a Fraction or 'p/q' string")
    return Fraction(x)


class FusionDatum:
    """Fusion rules, contragredients, conformal dimensions and central charge.

    Parameters
    ----------
    modules : sequence of str
        Labels of the simple modules.
    unit : int
        Index of the adjoint module ``V``.
    dual : sequence of int
        ``dual[i]`` is the index of the contragredient of module ``i``.
    fusion : array_like, shape (m, m, m)
        Nonnegative integer ranks ``N[i, j, k]``.
    conf_dim : sequence of rationals
        Conformal dimension of each module.
    central_charge : rational
    check : bool
        Run :func:`validate` and raise :class:`AxiomError` on failure.
    """

    def __init__(
        self,
        modules: Sequence[str],
        unit: int,
        dual: Sequence[int],
        fusion,
        conf_dim: Sequence,
        central_charge,
        *,
        check: bool = True,
    ):
        self.modules = tuple(str(s) for s in modules)
        m = len(self.modules)
        if m < 1:
            raise StructuralError("a fusion datum needs at least one module")
        if len(set(self.modules)) != m:
            raise StructuralError("module labels must be distinct")
        self.unit = int(unit)
        self.dual = tuple(int(d) for d in dual)
        arr = np.asarray(fusion)
        if arr.shape != (m, m, m):
            raise StructuralError(f"fusion tensor has shape {arr.shape}, expected {(m, m, m)}")
        if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
            raise StructuralError("fusion tensor entries must be integers")
        self.fusion = arr.astype(np.int64)
        self.fusion.setflags(write=False)
        self.conf_dim = tuple(_as_fraction(a) for a in conf_dim)
        self.central_charge = _as_fraction(central_charge)
        self._check_structure()
        if check:
            report = validate(self)
            if report:
                raise AxiomError(report)

    def _check_structure(self) -> None:
        m = self.size
        if not 0 <= self.unit < m:
            raise StructuralError(f"unit index {self.unit} out of range")
        if len(self.dual) != m or any(not 0 <= d < m for d in self.dual):
            raise StructuralError("dual must map every module index into range")
        if len(self.conf_dim) != m:
            raise StructuralError("conf_dim must list one value per module")

    @property
    def size(self) -> int:
        return len(self.modules)

    def index(self, label: str) -> int:
        """Index of a module label; ``'V'`` always names the unit."""
        try:
            return self.modules.index(label)
        except ValueError:
            if label == "V":
                return self.unit
            raise KeyError(label) from None

    def structure_matrix(self, i: int) -> np.ndarray:
        """Matrix of multiplication by ``h_i``: column ``j`` holds ``h_i * h_j``."""
        # L[k, j] = N[i, j, dual(k)]
        return self.fusion[i][:, list(self.dual)].T

    def basis(self, i: int) -> FusionVector:
        coeffs = [Fraction(0)] * self.size
        coeffs[i] = Fraction(1)
        return FusionVector(tuple(coeffs))

    def __repr__(self) -> str:
        return (
            f"FusionDatum(modules={list(self.modules)}, c={self.central_charge}, "
            f"conf_dim={[str(a) for a in self.conf_dim]})"
        )


def validate(datum: FusionDatum) -> list[Violation]:
    """Check the Frobenius-algebra axioms; return the list of violations."""
    N = datum.fusion
    m = datum.size
    u = datum.unit
    dual = datum.dual
    out: list[Violation] = []

    for i in range(m):
        if dual[dual[i]] != i:
            out.append(Violation("dual-involution", (i,), f"dual(dual({i})) = {dual[dual[i]]}"))
    if dual[u] != u:
        out.append(Violation("dual-unit", (u,), "the unit must be self-contragredient"))

    neg = np.argwhere(N < 0)
    for w in neg[:5]:
        out.append(Violation("nonnegativity", tuple(int(x) for x in w)))

    for perm in [(1, 0, 2), (0, 2, 1)]:
        bad = np.argwhere(N != N.transpose(perm))
        if len(bad):
            out.append(Violation("S3-symmetry", tuple(int(x) for x in bad[0]), f"axes {perm}"))

    for i in range(m):
        for j in range(m):
            want = 1 if j == dual[i] else 0
            if N[i, j, u] != want:
                out.append(
                    Violation("DeltaRule", (i, j, u), f"N = {int(N[i, j, u])}, expected {want}")
                )

    # structure constants Nd[i, j, w] = coefficient of h_w in h_i * h_j
    Nd = N[:, :, list(dual)]
    lhs = np.einsum("ijw,wkl->ijkl", Nd, N)
    rhs = np.einsum("jkw,wil->ijkl", Nd, N)
    bad = np.argwhere(lhs != rhs)
    for w in bad[:5]:
        out.append(Violation("associativity", tuple(int(x) for x in w)))

    mats = [datum.structure_matrix(i) for i in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        if not np.array_equal(mats[i] @ mats[j], mats[j] @ mats[i]):
            out.append(Violation("commutativity", (i, j), "fusion matrices do not commute"))

    if datum.conf_dim[u] != 0:
        out.append(Violation("unit-conformal-dimension", (u,), f"a_V = {datum.conf_dim[u]}"))
    for i in range(m):
        if datum.conf_dim[i] < 0:
            out.append(Violation("conformal-dimension-sign", (i,)))
        if datum.conf_dim[i] != datum.conf_dim[dual[i]]:
            out.append(Violation("conformal-dimension-dual", (i, dual[i])))
    return out


@dataclass(frozen=True)
class FusionVector:
    """Element of the rational fusion algebra, in the basis of simple modules."""

    coefficients: tuple[Fraction, ...]

    @classmethod
    def from_mapping(cls, m: int, coeffs: dict[int, object]) -> FusionVector:
        c = [Fraction(0)] * m
        for k, v in coeffs.items():
            c[k] = _as_fraction(v)
        return cls(tuple(c))

    def __add__(self, other: FusionVector) -> FusionVector:
        return FusionVector(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: FusionVector) -> FusionVector:
        return FusionVector(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, q) -> FusionVector:
        q = _as_fraction(q)
        return FusionVector(tuple(q * a for a in self.coefficients))

    def support(self) -> dict[int, Fraction]:
        return {i: a for i, a in enumerate(self.coefficients) if a}

    def __len__(self) -> int:
        return len(self.coefficients)


def fuse(datum: FusionDatum, x: FusionVector, y: FusionVector) -> FusionVector:
    """Fusion product, extended bilinearly."""
    m = datum.size
    N = datum.fusion
    out = [Fraction(0)] * m
    for i, a in x.support().items():
        for j, b in y.support().items():
            ab = a * b
            for k in range(m):
                n = int(N[i, j, datum.dual[k]])
                if n:
                    out[k] += n * ab
    return FusionVector(tuple(out))


def pairing(datum: FusionDatum, x: FusionVector, y: FusionVector) -> Fraction:
    """The bilinear form ``eta(h_i, h_j) = [j == dual(i)]``."""
    ys = y.coefficients
    return sum((a * ys[datum.dual[i]] for i, a in x.support().items()), Fraction(0))


@dataclass(frozen=True)
class SemisimpleData:
    """Idempotent-type basis of the complexified fusion algebra.

    Row ``i`` of ``basis`` holds the coordinates of ``e_i`` in the module
    basis; ``values[i]`` is the semisimple value with ``e_i * e_i = values[i] e_i``.
    """

    basis: np.ndarray
    values: np.ndarray
    residual: float = field(default=0.0)

    def dual_functional(self, datum: FusionDatum) -> np.ndarray:
        """``F[i, M] = e^i(h_M) = eta(e_i, h_M)``."""
        return self.basis[:, list(datum.dual)]


def _complex_pairing(dual: Sequence[int], x: np.ndarray, y: np.ndarray) -> complex:
    return complex(np.sum(x * y[list(dual)]))


def _complex_product(datum: FusionDatum, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    Nd = datum.fusion[:, :, list(datum.dual)].astype(float)
    return np.einsum("i,j,ijk->k", x, y, Nd)


def semisimple_decomposition(datum: FusionDatum, tol: float = 1e-9) -> SemisimpleData:
    """Simultaneously diagonalize the fusion matrices.

    A generic real combination of the (commuting) multiplication operators
    is diagonalized; its eigenvectors are rescaled so ``eta(e_i, e_i) = 1``.
    The sign of each ``e_i`` is fixed so that its value has positive real part
    (ties: nonnegative imaginary part).  Results are sorted by value and then by
    coordinates.
    """
    m = datum.size
    rng = np.random.default_rng(20240531)
    weights = rng.uniform(0.5, 1.5, size=m)
    mats = np.array([datum.structure_matrix(i) for i in range(m)], dtype=float)
    generic = np.einsum("i,ijk->jk", weights, mats)
    _, vecs = np.linalg.eig(generic)

    basis = []
    values = []
    for col in range(m):
        v = vecs[:, col].astype(complex)
        norm = _complex_pairing(datum.dual, v, v)
        if abs(norm) < tol:
            raise SemisimpleError("eigenvector is isotropic for the pairing; algebra not semisimple")
        e = v / np.sqrt(norm)
        ee = _complex_product(datum, e, e)
        k = int(np.argmax(np.abs(e)))
        lam = ee[k] / e[k]
        if lam.real < -tol or (abs(lam.real) <= tol and lam.imag < 0):
            e, lam = -e, -lam
        basis.append(e)
        values.append(lam)

    basis_arr = np.array(basis)
    values_arr = np.array(values)

    def sort_key(i: int):
        lam = values_arr[i]
        coords = tuple(
            (round(z.real, 9), round(z.imag, 9)) for z in basis_arr[i]
        )
        return (round(lam.real, 9), round(lam.imag, 9), coords)

    order = sorted(range(m), key=sort_key)
    basis_arr = basis_arr[order]
    values_arr = values_arr[order]

    resid = 0.0
    for i in range(m):
        for j in range(m):
            eta = _complex_pairing(datum.dual, basis_arr[i], basis_arr[j])
            resid = max(resid, abs(eta - (1.0 if i == j else 0.0)))
            prod = _complex_product(datum, basis_arr[i], basis_arr[j])
            target = values_arr[i] * basis_arr[i] if i == j else 0.0
            resid = max(resid, float(np.max(np.abs(prod - target))))
    if resid > tol:
        raise SemisimpleError(f"semisimple residual {resid:.3g} exceeds tolerance {tol:g}")
    return SemisimpleData(basis_arr, values_arr, resid)


def holomorphic_datum(central_charge=0, label: str = "V") -> FusionDatum:
    """The one-module datum of a holomorphic vertex algebra."""
    return FusionDatum([label], 0, [0], np.ones((1, 1, 1), dtype=np.int64), [0], central_charge)


def group_datum(
    labels: Sequence[str],
    add,
    neg,
    zero: int,
    conf_dim: Iterable,
    central_charge,
) -> FusionDatum:
    """Pointed fusion datum of a finite abelian group.

    ``add(i, j)`` and ``neg(i)`` act on module indices; ``N[i, j, k] = 1``
    exactly when ``i + j + k = 0``.
    """
    m = len(labels)
    N = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            N[i, j, neg(add(i, j))] = 1
    dual = [neg(i) for i in range(m)]
    return FusionDatum(labels, zero, dual, N, list(conf_dim), central_charge)


def cyclic_datum(m: int, conf_dim: Sequence | None = None, central_charge=1) -> FusionDatum:
    """``Z/m`` fusion rules with labels ``'0', ..., 'm-1'``."""
    if conf_dim is None:
        conf_dim = [0] * m
    return group_datum(
        [str(i) for i in range(m)],
        lambda i, j: (i + j) % m,
        lambda i: (-i) % m,
        0,
        conf_dim,
        central_charge,
    )
