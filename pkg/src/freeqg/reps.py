"""Finite-dimensional matrix models and noncommutative polynomial evaluation.

Polynomials in the generators u_ij (family 'A') or v_ij (the self-adjoint
family 'B') are evaluated against concrete matrix representations, and random
draws of such representations separate a nonzero polynomial from zero
numerically.  This module is deliberately floating point: exactness lives in
the combinatorial layers, here defining relations are checked up to explicit
operator-norm tolerances.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "PolyParseError",
    "Gen",
    "NCPoly",
    "MatrixRep",
    "RelationReport",
    "SeparationStrategy",
    "SeparationWitness",
    "parse_poly",
    "evaluate",
    "operator_norm",
    "check_relations",
    "point_rep",
    "orthogonal_point_rep",
    "free_product_rep",
    "block_rep",
    "lift_b_to_a",
    "haar_unitary",
    "haar_orthogonal",
    "separate",
]

_UNITARY_INPUT_TOL = 1e-12

_NUMBER_RE = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_GEN_RE = re.compile(r"[uv]\d\d'?")


class PolyParseError(ValueError):
    """Syntax or index error in a polynomial string; position is 1-based."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (position {position})")


class Gen(NamedTuple):
    """One generator occurrence in a monomial; indices are 1-based."""

    row: int
    col: int
    adjoint: bool


@dataclass(frozen=True)
class NCPoly:
    """Noncommutative polynomial in the n^2 generators of one family.

    family 'A' writes its generators u_ij, family 'B' writes v_ij and their
    images are additionally self-adjoint.  Terms keep the order written; the
    zero polynomial has no terms or only zero coefficients.
    """

    family: str
    n: int
    terms: tuple[tuple[complex, tuple[Gen, ...]], ...]

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise ValueError(f"family must be 'A' or 'B', got {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def __str__(self) -> str:
        letter = "u" if self.family == "A" else "v"
        if not self.terms:
            return "0"
        parts = []
        for coeff, gens in self.terms:
            body = " ".join(
                f"{letter}{g.row}{g.col}" + ("'" if g.adjoint else "") for g in gens
            )
            parts.append(f"({coeff}) {body}".strip())
        return " + ".join(parts)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-":
            tokens.append(("sign", ch, i + 1))
            i += 1
            continue
        if ch in "uv":
            m = _GEN_RE.match(text, i)
            if not m:
                raise PolyParseError(
                    f"malformed generator: expected {ch!r} followed by two digit indices",
                    i + 1,
                )
            tokens.append(("gen", m.group(), i + 1))
            i = m.end()
            continue
        if ch == "i":
            tokens.append(("imag", "i", i + 1))
            i += 1
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(("num", m.group(), i + 1))
            i = m.end()
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i + 1)
    return tokens


def parse_poly(text: str, n: int, family: str) -> NCPoly:
    """Parse a polynomial in the generators of one family.

    Grammar: terms joined by '+'/'-', each term an optional product of
    numeric factors and the imaginary unit 'i' followed by juxtaposed
    generators like u12 or v21', where the apostrophe marks the adjoint.
    Indices are single digits, so this covers n <= 9.  Coefficient factors
    must precede all generators in a term.
    """
    if family not in ("A", "B"):
        raise ValueError(f"family must be 'A' or 'B', got {family!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    letter = "u" if family == "A" else "v"
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial", 1)
    terms = []
    idx = 0
    first = True
    while idx < len(tokens):
        kind, value, pos = tokens[idx]
        term_pos = pos
        if kind == "sign":
            sign = -1.0 if value == "-" else 1.0
            idx += 1
        else:
            if not first:
                raise PolyParseError("expected '+' or '-' between terms", pos)
            sign = 1.0
        coeff = complex(sign)
        gens: list[Gen] = []
        seen_gen = False
        body = False
        while idx < len(tokens) and tokens[idx][0] != "sign":
            kind, value, pos = tokens[idx]
            if kind == "num":
                if seen_gen:
                    raise PolyParseError(
                        "numeric factor after a generator; coefficients come first", pos
                    )
                coeff *= float(value)
            elif kind == "imag":
                if seen_gen:
                    raise PolyParseError(
                        "imaginary unit after a generator; coefficients come first", pos
                    )
                coeff *= 1j
            else:
                if value[0] != letter:
                    raise PolyParseError(
                        f"generator {value[0]!r} does not belong to family {family}"
                        f" (expected {letter!r})",
                        pos,
                    )
                row, col = int(value[1]), int(value[2])
                if not (1 <= row <= n and 1 <= col <= n):
                    raise PolyParseError(
                        f"index out of range in {value!r}: indices must lie in 1..{n}",
                        pos,
                    )
                gens.append(Gen(row, col, value.endswith("'")))
                seen_gen = True
            body = True
            idx += 1
        if not body:
            raise PolyParseError("term has no factors", term_pos)
        terms.append((coeff, tuple(gens)))
        first = False
    return NCPoly(family, n, tuple(terms))


@dataclass(frozen=True)
class MatrixRep:
    """Images of one generator family as d x d blocks.

    images[i, j] is the block representing the (i+1, j+1) generator.  The
    n*d x n*d matrix assembled from the blocks must be unitary along with its
    entrywise adjoint; family 'B' blocks must additionally be self-adjoint.
    Validity is checked by check_relations, not by the constructor.
    """

    family: str
    n: int
    d: int
    images: np.ndarray

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise ValueError(f"family must be 'A' or 'B', got {self.family!r}")
        images = np.asarray(self.images, dtype=complex)
        if images.shape != (self.n, self.n, self.d, self.d):
            raise ValueError(
                f"images shape {images.shape} does not match (n, n, d, d)"
                f" = {(self.n, self.n, self.d, self.d)}"
            )
        object.__setattr__(self, "images", images)

    def big_matrix(self, entrywise_adjoint: bool = False) -> np.ndarray:
        """The n*d x n*d block matrix; with entrywise_adjoint, each block is
        replaced by its own adjoint first."""
        imgs = self.images
        if entrywise_adjoint:
            imgs = np.transpose(imgs.conj(), (0, 1, 3, 2))
        size = self.n * self.d
        return np.transpose(imgs, (0, 2, 1, 3)).reshape(size, size)

    def to_json(self) -> dict:
        """JSON form; complex entries serialize as [re, im] pairs."""
        return {
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "images": [
                [
                    [[[z.real, z.imag] for z in row] for row in self.images[i, j]]
                    for j in range(self.n)
                ]
                for i in range(self.n)
            ],
        }


def operator_norm(mat) -> float:
    """Largest singular value."""
    mat = np.asarray(mat, dtype=complex)
    if mat.size == 0:
        return 0.0
    return float(np.linalg.norm(mat, ord=2))


@dataclass(frozen=True)
class RelationReport:
    """Operator-norm residuals of the defining relations at one representation.

    residuals holds, in order, |u*u - 1|, |uu* - 1|, |ubar*ubar - 1|,
    |ubar ubar* - 1| for the big matrix u and its entrywise adjoint ubar.
    """

    residuals: tuple[float, float, float, float]
    selfadjoint_residual: float | None
    tol: float
    passed: bool

    @property
    def max_residual(self) -> float:
        worst = max(self.residuals)
        if self.selfadjoint_residual is not None:
            worst = max(worst, self.selfadjoint_residual)
        return worst


def check_relations(rep: MatrixRep, tol: float = 1e-10) -> RelationReport:
    """Residuals of unitarity for the big matrix and its entrywise adjoint,
    plus block self-adjointness for family 'B'."""
    big = rep.big_matrix()
    big_adj = rep.big_matrix(entrywise_adjoint=True)
    eye = np.eye(rep.n * rep.d)
    residuals = (
        operator_norm(big.conj().T @ big - eye),
        operator_norm(big @ big.conj().T - eye),
        operator_norm(big_adj.conj().T @ big_adj - eye),
        operator_norm(big_adj @ big_adj.conj().T - eye),
    )
    selfadjoint = None
    if rep.family == "B":
        selfadjoint = max(
            operator_norm(rep.images[i, j] - rep.images[i, j].conj().T)
            for i in range(rep.n)
            for j in range(rep.n)
        )
    worst = max(residuals) if selfadjoint is None else max(max(residuals), selfadjoint)
    return RelationReport(residuals, selfadjoint, tol, worst <= tol)


def _require_unitary(mat, what: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{what} must be a square matrix")
    residual = operator_norm(mat.conj().T @ mat - np.eye(mat.shape[0]))
    if residual > _UNITARY_INPUT_TOL:
        raise ValueError(
            f"{what} is not unitary: residual {residual:.3e} exceeds {_UNITARY_INPUT_TOL}"
        )
    return mat


def point_rep(w) -> MatrixRep:
    """One-dimensional model sending each generator to the matching scalar
    entry of a fixed unitary matrix."""
    w = _require_unitary(w, "point matrix")
    n = w.shape[0]
    return MatrixRep("A", n, 1, w.reshape(n, n, 1, 1))


def orthogonal_point_rep(o) -> MatrixRep:
    """One-dimensional self-adjoint model from a real orthogonal matrix."""
    o = np.asarray(o)
    if np.iscomplexobj(o) and np.abs(o.imag).max(initial=0.0) > 0:
        raise ValueError("orthogonal point matrix must be real")
    o = _require_unitary(o.real if np.iscomplexobj(o) else o, "orthogonal point matrix")
    n = o.shape[0]
    return MatrixRep("B", n, 1, o.reshape(n, n, 1, 1))


def free_product_rep(unitary, points, n: int) -> MatrixRep:
    """Model u_ij -> T . D_ij with D_ij diagonal over a family of point matrices.

    points is a list of m unitaries of size n; T must have size d, a multiple
    of m, and D_ij repeats each point's (i, j) entry along a contiguous run of
    d/m diagonal slots.  With m = d every slot carries its own point matrix.
    """
    twist = _require_unitary(unitary, "twisting unitary")
    d = twist.shape[0]
    points = [
        _require_unitary(p, f"point matrix {k}") for k, p in enumerate(points)
    ]
    if not points:
        raise ValueError("need at least one point matrix")
    for p in points:
        if p.shape[0] != n:
            raise ValueError(f"point matrices must have size {n}, got {p.shape[0]}")
    m = len(points)
    if d % m:
        raise ValueError(f"dimension {d} is not a multiple of the {m} point matrices")
    run = d // m
    images = np.zeros((n, n, d, d), dtype=complex)
    for i in range(n):
        for j in range(n):
            diag = np.concatenate([np.full(run, p[i, j]) for p in points])
            images[i, j] = twist @ np.diag(diag)
    return MatrixRep("A", n, d, images)


def block_rep(first: MatrixRep, second: MatrixRep) -> MatrixRep:
    """Block-diagonal join on the disjoint union of the two index ranges.

    Generators across the two ranges go to zero blocks; both inputs must
    share the family and the block dimension d.
    """
    if first.family != second.family:
        raise ValueError("cannot join representations of different families")
    if first.d != second.d:
        raise ValueError(
            f"block dimensions differ: {first.d} vs {second.d}"
        )
    n = first.n + second.n
    d = first.d
    images = np.zeros((n, n, d, d), dtype=complex)
    images[: first.n, : first.n] = first.images
    images[first.n :, first.n :] = second.images
    return MatrixRep(first.family, n, d, images)


def lift_b_to_a(unitary, brep: MatrixRep, tol: float = 1e-10) -> MatrixRep:
    """Compose a self-adjoint family with one extra unitary: u_ij -> T . v_ij.

    brep must pass the family 'B' relations at the given tolerance.  The
    block sizes of T and brep must agree, except that either side may be
    scalar (d = 1) and is then broadcast.  The result is checked against the
    family 'A' relations at the same tolerance; failures raise.
    """
    twist = _require_unitary(unitary, "twisting unitary")
    if brep.family != "B":
        raise ValueError("lift needs a family 'B' representation")
    report = check_relations(brep, tol)
    if not report.passed:
        raise ValueError(
            f"input fails family 'B' relations: worst residual {report.max_residual:.3e}"
        )
    dt = twist.shape[0]
    if brep.d == dt:
        images = np.einsum("ab,ijbc->ijac", twist, brep.images)
    elif brep.d == 1:
        scalars = brep.images[:, :, 0, 0]
        images = scalars[:, :, None, None] * twist[None, None, :, :]
    elif dt == 1:
        images = twist[0, 0] * brep.images
    else:
        raise ValueError(f"dimension mismatch: unitary is {dt}, representation is {brep.d}")
    lifted = MatrixRep("A", brep.n, max(dt, brep.d), images)
    report = check_relations(lifted, tol)
    if not report.passed:
        raise ValueError(
            f"lifted representation fails family 'A' relations:"
            f" worst residual {report.max_residual:.3e}"
        )
    return lifted


def evaluate(poly: NCPoly, rep: MatrixRep) -> np.ndarray:
    """Value of the polynomial at the representation, a d x d complex matrix."""
    if rep.family != poly.family:
        raise ValueError(
            f"polynomial family {poly.family!r} does not match representation"
            f" family {rep.family!r}"
        )
    if rep.n != poly.n:
        raise ValueError(f"polynomial has n={poly.n}, representation has n={rep.n}")
    total = np.zeros((rep.d, rep.d), dtype=complex)
    for coeff, gens in poly.terms:
        acc = np.eye(rep.d, dtype=complex)
        for g in gens:
            mat = rep.images[g.row - 1, g.col - 1]
            if g.adjoint:
                mat = mat.conj().T
            acc = acc @ mat
        total += coeff * acc
    return total


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phase fixing."""
    z = (
        rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    ) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    return q * (diag / np.abs(diag))


def haar_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed real orthogonal matrix: QR with sign fixing."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    signs = np.sign(np.diagonal(r))
    return q * np.where(signs == 0, 1.0, signs)


@dataclass(frozen=True)
class SeparationStrategy:
    """Recipe for drawing random representations in a separation search.

    kind 'point'        one Haar point model (orthogonal for family 'B')
    kind 'freeproduct'  twisting unitary of size d composed with d Haar points
    kind 'block'        two freeproduct draws on a split of the index range,
                        joined block-diagonally (family 'A', n >= 2)
    kind 'lift'         orthogonal Haar point model composed with one size-d
                        unitary
    """

    kind: str = "freeproduct"
    d: int = 2

    def __post_init__(self):
        if self.kind not in ("point", "freeproduct", "block", "lift"):
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.d < 1:
            raise ValueError("strategy dimension must be >= 1")

    def draw(self, n: int, family: str, rng: np.random.Generator) -> MatrixRep:
        if family == "B":
            if self.kind != "point":
                raise ValueError("family 'B' draws support only the point strategy")
            return orthogonal_point_rep(haar_orthogonal(n, rng))
        if self.kind == "point":
            return point_rep(haar_unitary(n, rng))
        if self.kind == "freeproduct":
            twist = haar_unitary(self.d, rng)
            points = [haar_unitary(n, rng) for _ in range(self.d)]
            return free_product_rep(twist, points, n)
        if self.kind == "lift":
            twist = haar_unitary(self.d, rng)
            return lift_b_to_a(twist, orthogonal_point_rep(haar_orthogonal(n, rng)))
        if n < 2:
            raise ValueError("block strategy needs n >= 2")
        half = n // 2
        parts = []
        for size in (half, n - half):
            twist = haar_unitary(self.d, rng)
            points = [haar_unitary(size, rng) for _ in range(self.d)]
            parts.append(free_product_rep(twist, points, size))
        return block_rep(parts[0], parts[1])


@dataclass(frozen=True)
class SeparationWitness:
    """A representation at which the polynomial is numerically nonzero."""

    trial: int
    norm: float
    rep: MatrixRep


def separate(
    poly: NCPoly,
    strategy: SeparationStrategy = SeparationStrategy(),
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-6,
) -> SeparationWitness | None:
    """Search for a representation separating the polynomial from zero.

    Trial t draws from its own generator seeded with seed + t, so any single
    trial replays in isolation.  The first trial whose evaluated polynomial
    has operator norm above tol wins; None means every trial stayed at or
    below the tolerance.
    """
    for trial in range(trials):
        rng = np.random.default_rng(seed + trial)
        rep = strategy.draw(poly.n, poly.family, rng)
        norm = operator_norm(evaluate(poly, rep))
        if norm > tol:
            return SeparationWitness(trial, norm, rep)
    return None
