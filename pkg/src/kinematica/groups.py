"""Group elements of the five kinematical groups and their factorizations.

Elements are plain (n+1) x (n+1) arrays.  The building blocks are block
rotations diag(R, eps) and one-parameter boosts exp of a mixing generator,
for which closed forms exist in every sigma regime.  For sigma > 0 the
polar-style Cartan decomposition a = sqrt(lam) * k * exp(Z) is available
and doubles as the Lorentz membership test; the remaining cases reduce to
block-triangular shape checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .classify import CaseLabel, SIGMA_INF, Sigma, as_sigma
from .matcore import Metric, as_square, block_split, op_norm

__all__ = [
    "CartanFactors",
    "LogarithmFailure",
    "NonPositiveLambda",
    "NotInNormalizer",
    "boost_closed_form",
    "cartan_decompose",
    "in_K",
    "in_normalizer",
    "k_element",
    "membership",
    "p_generator",
    "random_element",
    "random_orthogonal",
]

DEFAULT_TOL = 1e-9


class NotInNormalizer(ValueError):
    """The matrix is not a positive multiple of a group element."""


class NonPositiveLambda(ValueError):
    """The scalar part of a^dagger a came out non-positive."""


class LogarithmFailure(ValueError):
    """The positive logarithm inside the Cartan decomposition failed."""


def _metric(sigma: Sigma, sign: int, n: int) -> Metric:
    if not sigma.is_finite or sigma.value == 0.0:
        raise ValueError("this operation needs a finite nonzero sigma")
    return Metric(sigma.value, sign, n)


def k_element(R, eps: int) -> np.ndarray:
    """Block rotation diag(R, eps) with R orthogonal and eps = +1 or -1."""
    R = np.array(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError("R must be a square matrix")
    n = R.shape[0]
    if op_norm(R.T @ R - np.eye(n)) > 1e-10:
        raise ValueError("R must be orthogonal")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = R
    out[n, n] = float(eps)
    return out


def p_generator(b, sigma) -> np.ndarray:
    """Boost generator for the given sigma.

    Finite sigma places b in the last column and sigma * b in the last
    row; infinite sigma (Carroll) places b in the last row only.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 1 or b.size < 1:
        raise ValueError("b must be a nonempty vector")
    s = as_sigma(sigma)
    n = b.size
    Z = np.zeros((n + 1, n + 1))
    if s.is_infinite:
        Z[n, :n] = b
    else:
        Z[:n, n] = b
        Z[n, :n] = s.value * b
    return Z


def boost_closed_form(b, sigma) -> np.ndarray:
    """Exponential of the boost generator for b, in closed form.

    sigma > 0 gives the familiar cosh/sinh boost along b, sigma < 0 a
    rotation mixing b with time (periodic in |b|), and sigma = 0 or
    infinity a shear (the generator squares to zero).  b = 0 returns the
    identity.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 1 or b.size < 1:
        raise ValueError("b must be a nonempty vector")
    s = as_sigma(sigma)
    n = b.size
    if s.is_infinite or s.value == 0.0:
        return np.eye(n + 1) + p_generator(b, s)
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        return np.eye(n + 1)
    u = b / beta
    out = np.eye(n + 1)
    uu = np.outer(u, u)
    if s.value > 0.0:
        w = beta * math.sqrt(s.value)
        out[:n, :n] += (math.cosh(w) - 1.0) * uu
        out[:n, n] = math.sinh(w) / math.sqrt(s.value) * u
        out[n, :n] = math.sinh(w) * math.sqrt(s.value) * u
        out[n, n] = math.cosh(w)
    else:
        theta = beta * math.sqrt(-s.value)
        out[:n, :n] += (math.cos(theta) - 1.0) * uu
        out[:n, n] = math.sin(theta) / math.sqrt(-s.value) * u
        out[n, :n] = -math.sin(theta) * math.sqrt(-s.value) * u
        out[n, n] = math.cos(theta)
    return out


def in_K(a, tol: float = DEFAULT_TOL) -> bool:
    """Whether a is a block rotation: off blocks zero, orthogonal spatial
    block, corner of modulus one, each within tol."""
    a = as_square(a)
    blocks = block_split(a)
    n = blocks.n
    if float(np.linalg.norm(blocks.b)) > tol or float(np.linalg.norm(blocks.c)) > tol:
        return False
    if op_norm(blocks.A.T @ blocks.A - np.eye(n)) > tol:
        return False
    return abs(abs(blocks.d) - 1.0) <= tol


def _scalar_part(a: np.ndarray, sigma: Sigma) -> tuple[float, float, float]:
    """lam, the off-scalar residual and the norm of a^dagger a for the
    spacetime metric."""
    n = a.shape[0] - 1
    q = matcore.dagger(a, _metric(sigma, +1, n)) @ a
    lam = float(np.trace(q)) / (n + 1)
    resid = op_norm(q - lam * np.eye(n + 1))
    return lam, resid, op_norm(q)


def in_normalizer(a, sigma, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Test whether a^dagger a is a positive multiple of the identity.

    Returns (ok, lam) where lam is the mean diagonal of a^dagger a; ok
    requires the off-scalar residual to be below tol * (1 + |a^dagger a|)
    and lam > 0.  Needs a finite nonzero sigma and an invertible a.
    """
    a = as_square(a)
    s = as_sigma(sigma)
    if abs(np.linalg.det(a)) <= tol:
        raise ValueError("matrix is singular")
    lam, resid, qnorm = _scalar_part(a, s)
    ok = resid <= tol * (1.0 + qnorm) and lam > 0.0
    return ok, lam


def _reconstruct(lam: float, k: np.ndarray, Z: np.ndarray) -> np.ndarray:
    return math.sqrt(lam) * k @ matcore.mat_exp(Z)


@dataclass
class CartanFactors:
    """Factors of a = sqrt(lam) * k * exp(Z) with k a block rotation and Z
    a boost generator."""

    lam: float
    k: np.ndarray
    Z: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return _reconstruct(self.lam, self.k, self.Z)


def cartan_decompose(a, sigma, tol: float = DEFAULT_TOL) -> CartanFactors:
    """Factor a normalizer element as sqrt(lam) * k * exp(Z), sigma > 0.

    lam is read off a^dagger a (spacetime metric), exp(2Z) as the positive
    self-adjoint part of a under the companion metric, and k is what is
    left.  The factors are unique, which is what makes this a usable
    membership and coordinate chart for the Lorentz case.

    Raises NotInNormalizer when a^dagger a is not scalar, NonPositiveLambda
    when the scalar is not positive, and LogarithmFailure when the positive
    logarithm cannot be taken.
    """
    a = as_square(a)
    s = as_sigma(sigma)
    if not (s.is_finite and s.value > 0.0):
        raise ValueError("Cartan decomposition needs sigma > 0")
    if abs(np.linalg.det(a)) <= tol:
        raise ValueError("matrix is singular")
    n = a.shape[0] - 1
    lam, resid, qnorm = _scalar_part(a, s)
    if resid > tol * (1.0 + qnorm):
        raise NotInNormalizer(
            f"a^dagger a is not a multiple of the identity (residual {resid:.3e})"
        )
    if lam <= tol:
        raise NonPositiveLambda(f"scalar part is not positive: {lam:.3e}")
    minus = _metric(s, -1, n)
    p = matcore.dagger(a, minus) @ a / lam
    try:
        Z = 0.5 * matcore.mat_log_positive(p, minus.gram)
    except ValueError as exc:
        raise LogarithmFailure(str(exc)) from None
    k = a @ matcore.mat_exp(-Z) / math.sqrt(lam)
    return CartanFactors(lam=lam, k=k, Z=Z)


def _check_pairing(case: CaseLabel, sigma) -> Sigma | None:
    """Validate the case/sigma pairing, returning the effective sigma."""
    s = None if sigma is None else as_sigma(sigma)
    if case is CaseLabel.ARISTOTLE:
        if s is not None:
            raise ValueError("the Aristotle case takes no sigma")
        return None
    if case is CaseLabel.LORENTZ:
        if s is None or not (s.is_finite and s.value > 0):
            raise ValueError("the Lorentz case needs a finite sigma > 0")
        return s
    if case is CaseLabel.ORTHOGONAL:
        if s is None or not (s.is_finite and s.value < 0):
            raise ValueError("the Orthogonal case needs a finite sigma < 0")
        return s
    if case is CaseLabel.GALILEI:
        if s is not None and (s.is_infinite or s.value != 0.0):
            raise ValueError("the Galilei case needs sigma = 0")
        return Sigma(0.0)
    if case is CaseLabel.CARROLL:
        if s is not None and s.is_finite:
            raise ValueError("the Carroll case needs an infinite sigma")
        return SIGMA_INF
    raise ValueError(f"unknown case {case!r}")


def membership(a, case: CaseLabel, sigma=None, tol: float = DEFAULT_TOL) -> bool:
    """Whether a belongs to the kinematical group of the given case.

    For Lorentz the test is that the Cartan decomposition exists with
    lam = 1; for Orthogonal, that a preserves the (positive definite)
    spacetime form; Galilei and Carroll are block-triangular shape tests
    and Aristotle is :func:`in_K`.  sigma must match the case; Galilei,
    Carroll and Aristotle may omit it.
    """
    a = as_square(a)
    s = _check_pairing(case, sigma)
    blocks = block_split(a)
    n = blocks.n

    if case is CaseLabel.ARISTOTLE:
        return in_K(a, tol)

    if case is CaseLabel.LORENTZ:
        if abs(np.linalg.det(a)) <= tol:
            return False
        try:
            factors = cartan_decompose(a, s, tol)
        except (NotInNormalizer, NonPositiveLambda, LogarithmFailure):
            return False
        return abs(factors.lam - 1.0) <= tol

    if case is CaseLabel.ORTHOGONAL:
        g = _metric(s, +1, n).gram
        return op_norm(a.T @ g @ a - g) <= tol * (1.0 + op_norm(g))

    if case is CaseLabel.GALILEI:
        if float(np.linalg.norm(blocks.c)) > tol * (1.0 + op_norm(a)):
            return False
    else:  # Carroll
        if float(np.linalg.norm(blocks.b)) > tol * (1.0 + op_norm(a)):
            return False
    if op_norm(blocks.A.T @ blocks.A - np.eye(n)) > tol:
        return False
    return abs(abs(blocks.d) - 1.0) <= tol


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an orthogonal matrix: orthonormalize a Gaussian sample, then
    randomize the sign of the determinant."""
    M = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(M)
    Q = Q * np.sign(np.diag(R))
    if rng.random() < 0.5:
        Q = Q.copy()
        Q[:, 0] = -Q[:, 0]
    return Q


def random_element(case: CaseLabel, sigma=None, n: int = 2,
                   boost_bound: float = 1.0, seed: int = 0) -> np.ndarray:
    """Deterministic random member of the given group: a random block
    rotation times a boost of norm at most ``boost_bound``.

    The same arguments always produce the same element.
    """
    if n < 2:
        raise ValueError("need at least two space dimensions")
    if boost_bound < 0:
        raise ValueError("boost_bound must be nonnegative")
    s = _check_pairing(case, sigma)
    rng = np.random.default_rng(seed)
    R = random_orthogonal(n, rng)
    eps = 1 if rng.random() < 0.5 else -1
    k = k_element(R, eps)
    if case is CaseLabel.ARISTOTLE:
        return k
    direction = rng.standard_normal(n)
    norm = float(np.linalg.norm(direction))
    if norm == 0.0 or boost_bound == 0.0:
        return k
    b = direction / norm * (boost_bound * rng.random())
    return k @ boost_closed_form(b, s)
