"""Classification of generator sets into the five kinematical cases.

A set of generators is accepted when, together with the rotations, it
spans one of the classical kinematical Lie algebras.  After reducing the
input to an orthonormal span, the procedure inspects isotypic content:
scalar or traceless-symmetric contamination is fatal, pure rotation
content is the Aristotle case, and any mixing content must consist of
collinear (b, c) pairs sharing a single ratio sigma.  The sign of sigma
then selects the case:

* sigma > 0   Lorentz
* sigma = 0   Galilei
* sigma < 0   Orthogonal (rotations of one more dimension)
* sigma = inf Carroll (the row vector survives, the column dies)

and no mixing content at all is Aristotle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import isotypic, matcore

__all__ = [
    "CaseLabel",
    "ClassificationResult",
    "NotCollinear",
    "SIGMA_INF",
    "Sigma",
    "ZeroGenerator",
    "as_sigma",
    "bracket_closure_defect",
    "case_label",
    "case_of_sigma",
    "classify_algebra",
    "collinearity_defect",
    "is_closed_under_bracket",
    "rotation_generators",
    "saturate_bracket_span",
    "sigma_agree",
    "sigma_from_m3",
]

DEFAULT_TOL = 1e-9


class NotCollinear(ValueError):
    """The two mixing vectors do not point along a common line."""


class ZeroGenerator(ValueError):
    """Both mixing vectors vanish, so no sigma can be extracted."""


@dataclass(frozen=True)
class Sigma:
    """The causality parameter.  A finite value is stored directly; the
    Carroll case is represented by ``math.inf``."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v == -math.inf:
            raise ValueError("sigma must be a real number or +inf")
        object.__setattr__(self, "value", v)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @property
    def is_infinite(self) -> bool:
        return not self.is_finite

    @property
    def invariant_speed(self) -> float:
        """The speed preserved by the group; only defined for sigma > 0."""
        if not (self.is_finite and self.value > 0):
            raise ValueError("invariant speed needs sigma > 0")
        return 1.0 / math.sqrt(self.value)

    @property
    def rotation_scale(self) -> float:
        """Boost period scale for sigma < 0: boosts of norm 2*pi times this
        return to the identity."""
        if not (self.is_finite and self.value < 0):
            raise ValueError("rotation scale needs sigma < 0")
        return 1.0 / math.sqrt(-self.value)

    def __repr__(self) -> str:
        if self.is_infinite:
            return "Sigma(inf)"
        return f"Sigma({self.value!r})"


SIGMA_INF = Sigma(math.inf)


def as_sigma(value) -> Sigma:
    """Coerce a Sigma, float or int into a Sigma."""
    if isinstance(value, Sigma):
        return value
    return Sigma(float(value))


def sigma_agree(s1: Sigma, s2: Sigma, tol: float = DEFAULT_TOL) -> bool:
    """Whether two sigma values are numerically the same.  A finite and an
    infinite value never agree."""
    if s1.is_infinite or s2.is_infinite:
        return s1.is_infinite and s2.is_infinite
    return abs(s1.value - s2.value) <= tol * (1.0 + abs(s1.value) + abs(s2.value))


class CaseLabel(Enum):
    LORENTZ = "Lorentz"
    GALILEI = "Galilei"
    ORTHOGONAL = "Orthogonal"
    CARROLL = "Carroll"
    ARISTOTLE = "Aristotle"


def case_of_sigma(sigma) -> CaseLabel:
    """Map a sigma value to its case label (never Aristotle)."""
    s = as_sigma(sigma)
    if s.is_infinite:
        return CaseLabel.CARROLL
    if s.value > 0:
        return CaseLabel.LORENTZ
    if s.value < 0:
        return CaseLabel.ORTHOGONAL
    return CaseLabel.GALILEI


OUTCOME_KINEMATICAL = "Kinematical"
OUTCOME_ARISTOTLE = "AristotleOnly"
OUTCOME_NOT_KINEMATICAL = "NotKinematical"


@dataclass
class ClassificationResult:
    """Outcome of :func:`classify_algebra` plus numeric diagnostics.

    outcome is one of "Kinematical" (sigma set), "AristotleOnly" (only
    rotation content) or "NotKinematical" (reason set).  diagnostics holds
    the worst per-component norms seen across the span basis and related
    residuals, all plain floats.
    """

    outcome: str
    sigma: Sigma | None = None
    reason: str | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_kinematical(self) -> bool:
        return self.outcome == OUTCOME_KINEMATICAL


def case_label(result: ClassificationResult) -> CaseLabel:
    """Case label of a successful classification.

    Raises ValueError when the result is NotKinematical.
    """
    if result.outcome == OUTCOME_ARISTOTLE:
        return CaseLabel.ARISTOTLE
    if result.outcome == OUTCOME_KINEMATICAL:
        return case_of_sigma(result.sigma)
    raise ValueError(f"no case label for a NotKinematical result: {result.reason}")


def collinearity_defect(b, c) -> float:
    """2 * (|b|^2 |c|^2 - (b.c)^2), zero exactly when b and c are parallel.

    This is also the corner entry of the doubled commutator of the mixing
    generator with the rotation it generates, which is how the tests pin
    it down from the algebra side.
    """
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    bb = float(b @ b)
    cc = float(c @ c)
    bc = float(b @ c)
    return 2.0 * (bb * cc - bc * bc)


def sigma_from_m3(b, c, tol: float = DEFAULT_TOL) -> Sigma:
    """Extract sigma from a collinear mixing pair (b, c).

    When the column part b dominates, sigma = (b.c)/|b|^2 and the pair
    generates a finite-sigma boost; when b is negligible against c the
    pair is a Carroll generator and sigma is infinite.  Raises
    ZeroGenerator when both vectors vanish and NotCollinear when the pair
    fails the collinearity test.
    """
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    nb = float(np.linalg.norm(b))
    nc = float(np.linalg.norm(c))
    if nb == 0.0 and nc == 0.0:
        raise ZeroGenerator("mixing vectors are both zero")
    defect = collinearity_defect(b, c)
    if defect > tol * (1.0 + nb * nb * nc * nc):
        raise NotCollinear(f"mixing vectors are not collinear (defect {defect:.3e})")
    if nb > tol * nc:
        return Sigma(float(b @ c) / (nb * nb))
    return SIGMA_INF


def rotation_generators(n: int) -> list[np.ndarray]:
    """Standard basis of the rotation algebra, embedded in the top block:
    one generator per coordinate plane."""
    if n < 2:
        raise ValueError("need at least two space dimensions")
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            Z = np.zeros((n + 1, n + 1))
            Z[i, j] = 1.0
            Z[j, i] = -1.0
            out.append(Z)
    return out


def _span_rows(rows: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis (as rows) of the row space, by rank-revealing SVD."""
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return vt[:0]
    keep = s > tol * s[0]
    return vt[keep]


def _span_basis(mats: list[np.ndarray], tol: float) -> list[np.ndarray]:
    """Orthonormal (Frobenius) basis of the span of the given matrices."""
    d = mats[0].shape[0]
    rows = np.array([M.ravel() for M in mats])
    return [v.reshape(d, d) for v in _span_rows(rows, tol)]


def _closure_scan(basis: list[np.ndarray], tol: float) -> tuple[bool, float]:
    """Least-squares test that all pairwise brackets stay in the span.

    Returns (closed, worst raw residual).  The boolean compares each
    residual against tol * (1 + |bracket|); the raw residual is reported
    unnormalized so callers can see how far outside the span a bracket
    lands.
    """
    if not basis:
        raise ValueError("no basis matrices given")
    mats = [matcore.as_square(B) for B in basis]
    d = mats[0].shape[0]
    if any(M.shape[0] != d for M in mats):
        raise ValueError("basis matrices must share one dimension")
    Q = _span_rows(np.array([M.ravel() for M in mats]), tol)
    closed = True
    worst = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            w = matcore.bracket(mats[i], mats[j]).ravel()
            resid = float(np.linalg.norm(w - Q.T @ (Q @ w)))
            worst = max(worst, resid)
            if resid > tol * (1.0 + float(np.linalg.norm(w))):
                closed = False
    return closed, worst


def is_closed_under_bracket(basis, tol: float = DEFAULT_TOL) -> bool:
    """Whether the span of ``basis`` is closed under the bracket.

    Rank-deficient inputs are fine: the span is what is tested.
    """
    closed, _ = _closure_scan(list(basis), tol)
    return closed


def bracket_closure_defect(basis, tol: float = DEFAULT_TOL) -> float:
    """Largest distance of any pairwise bracket from the span of ``basis``."""
    _, worst = _closure_scan(list(basis), tol)
    return worst


def saturate_bracket_span(mats, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Close a list of matrices under brackets, returning an orthonormal
    basis of the generated algebra.

    Iteration stops when the rank is stable, capped at the dimension of
    the full matrix space.
    """
    mats = [matcore.as_square(M) for M in mats]
    if not mats:
        raise ValueError("no matrices given")
    d = mats[0].shape[0]
    basis = _span_basis(mats, tol)
    for _ in range(d * d):
        extended = list(basis)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                extended.append(matcore.bracket(basis[i], basis[j]))
        new_basis = _span_basis(extended, tol)
        if len(new_basis) == len(basis):
            return new_basis
        basis = new_basis
    return basis


def classify_algebra(generators, tol: float = DEFAULT_TOL) -> ClassificationResult:
    """Decide which kinematical algebra the generators span together with
    the rotations.

    Parameters
    ----------
    generators : iterable of square matrices of one common dimension
        n+1 >= 3.  The rotation algebra need not be included; it is
        adjoined implicitly.
    tol : relative tolerance for every internal threshold.

    The steps: orthonormalize the span, split each basis matrix into
    isotypic components, reject scalar or traceless-symmetric content,
    then require all mixing content to be collinear with one shared sigma.
    A final bracket-closure check on rotations plus the mixing span guards
    against numerical accidents.  Failures are reported as a result with
    outcome "NotKinematical", never as an exception.
    """
    mats = [matcore.as_square(G) for G in generators]
    if not mats:
        raise ValueError("no generators given")
    d = mats[0].shape[0]
    if any(M.shape[0] != d for M in mats):
        raise ValueError("generators must share one dimension")
    n = d - 1
    if n < 2:
        raise ValueError("classification needs at least two space dimensions")

    basis = _span_basis(mats, tol)
    diagnostics = {"rank": float(len(basis)), "m0": 0.0, "m1": 0.0, "m2": 0.0, "m3": 0.0}
    if not basis:
        return ClassificationResult(OUTCOME_ARISTOTLE, diagnostics=diagnostics)

    splits = [isotypic.split(B) for B in basis]
    for s in splits:
        for key, value in s.norms().items():
            diagnostics[key] = max(diagnostics[key], value)

    if diagnostics["m0"] > tol:
        return ClassificationResult(
            OUTCOME_NOT_KINEMATICAL,
            reason=f"scalar (m0) content present: norm {diagnostics['m0']:.3e}",
            diagnostics=diagnostics,
        )
    if diagnostics["m2"] > tol:
        return ClassificationResult(
            OUTCOME_NOT_KINEMATICAL,
            reason=f"traceless symmetric (m2) content present: norm {diagnostics['m2']:.3e}",
            diagnostics=diagnostics,
        )

    mixing = [np.concatenate([s.b, s.c]) for s in splits
              if np.linalg.norm(np.concatenate([s.b, s.c])) > tol]
    if not mixing:
        return ClassificationResult(OUTCOME_ARISTOTLE, diagnostics=diagnostics)

    mixing_basis = _span_rows(np.array(mixing), tol)
    sigmas = []
    try:
        for v in mixing_basis:
            sigmas.append(sigma_from_m3(v[:n], v[n:], tol))
    except NotCollinear as exc:
        return ClassificationResult(
            OUTCOME_NOT_KINEMATICAL, reason=str(exc), diagnostics=diagnostics
        )

    spread = 0.0
    for i in range(len(sigmas)):
        for j in range(i + 1, len(sigmas)):
            if not sigma_agree(sigmas[i], sigmas[j], tol):
                return ClassificationResult(
                    OUTCOME_NOT_KINEMATICAL,
                    reason=f"mixing generators disagree on sigma: "
                           f"{sigmas[i]!r} vs {sigmas[j]!r}",
                    diagnostics=diagnostics,
                )
            if sigmas[i].is_finite and sigmas[j].is_finite:
                spread = max(spread, abs(sigmas[i].value - sigmas[j].value))
    diagnostics["sigma_spread"] = spread

    if all(s.is_infinite for s in sigmas):
        sigma = SIGMA_INF
    else:
        # Aggregate least-squares fit of c = sigma * b over the whole
        # mixing span; the per-vector values already agree within tol.
        num = 0.0
        den = 0.0
        for v in mixing_basis:
            num += float(v[:n] @ v[n:])
            den += float(v[:n] @ v[:n])
        sigma = Sigma(num / den)

    # The candidate algebra is the rotations plus the full boost space for
    # the extracted sigma (rotating any one boost direction sweeps out all
    # of them), so the closure guard runs on that.
    boost_span = []
    for i in range(n):
        Z = np.zeros((d, d))
        if sigma.is_infinite:
            Z[n, i] = 1.0
        else:
            Z[i, n] = 1.0
            Z[n, i] = sigma.value
        boost_span.append(Z)
    closed, closure_worst = _closure_scan(rotation_generators(n) + boost_span, tol)
    diagnostics["closure_defect"] = closure_worst
    if not closed:
        return ClassificationResult(
            OUTCOME_NOT_KINEMATICAL,
            reason=f"rotations plus mixing span are not bracket-closed "
                   f"(defect {closure_worst:.3e})",
            diagnostics=diagnostics,
        )

    return ClassificationResult(OUTCOME_KINEMATICAL, sigma=sigma, diagnostics=diagnostics)
