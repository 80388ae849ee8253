"""The symplectic group of 2x2 block matrices over an involutive algebra.

Sp_2(A, sigma) consists of the block matrices M = [[a, b], [c, d]] over A
preserving the sesquilinear form omega(x, y) = sigma(x)^T Omega y on A^2,
Omega = [[0, 1], [-1, 0]].  Membership is equivalent to

    sigma(a) c and sigma(b) d symmetric,   sigma(a) d - sigma(c) b = 1,

which is what the constructor verifies.  The group acts on the tube domain
{x + i y : x symmetric, y positive} inside the complexified algebra by
Moebius transformations (a z + b)(c z + d)^-1; the stabilizer of i*1 is
the maximal compact subgroup KSp_2 = Sp_2 cap U_2, where U_2 is defined by
sigma(M)^T M = Id.
"""

from __future__ import annotations

import numpy as np

from . import algebra as al
from .algebra import AlgebraDescriptor, AlgebraElement
from .errors import (
    DescriptorMismatch,
    MembershipDrift,
    NotInvertible,
    NotSymplectic,
    SingularDenominator,
)


def _sym_resid(p: AlgebraElement) -> float:
    return al.distance(p, p.sigma())


def sp2_residual(a, b, c, d) -> float:
    """Largest scale-normalized deviation from the membership identities."""
    desc = a.descriptor
    one = al.identity(desc)
    r1 = _sym_resid(a.sigma() * c) / max(1.0, 2.0 * a.norm() * c.norm())
    r2 = _sym_resid(b.sigma() * d) / max(1.0, 2.0 * b.norm() * d.norm())
    r3 = al.distance(a.sigma() * d - c.sigma() * b, one) / max(
        1.0, a.norm() * d.norm() + c.norm() * b.norm()
    )
    return max(r1, r2, r3)


def is_sp2(a, b, c, d) -> bool:
    return sp2_residual(a, b, c, d) <= a.descriptor.tol


class SymplecticElement:
    """Verified member of Sp_2(A, sigma); immutable."""

    __slots__ = ("descriptor", "a", "b", "c", "d")

    def __init__(self, a, b, c, d, _drift_check: bool = False):
        desc = a.descriptor
        for blk in (b, c, d):
            if not desc.compatible(blk.descriptor):
                raise DescriptorMismatch("blocks over different algebras")
        resid = sp2_residual(a, b, c, d)
        if resid > desc.tol:
            err = MembershipDrift if _drift_check else NotSymplectic
            raise err(f"membership residual {resid:.3e} exceeds tol {desc.tol:.1e}")
        for name, blk in zip(("descriptor", "a", "b", "c", "d"), (desc, a, b, c, d)):
            object.__setattr__(self, name, blk)

    def __setattr__(self, name, value):
        raise AttributeError("SymplecticElement is immutable")

    @classmethod
    def identity(cls, descriptor: AlgebraDescriptor) -> "SymplecticElement":
        one = al.identity(descriptor)
        zero = al.zeros(descriptor)
        return cls(one, zero, zero, one)

    @classmethod
    def omega(cls, descriptor: AlgebraDescriptor) -> "SymplecticElement":
        """Omega = [[0, 1], [-1, 0]]."""
        one = al.identity(descriptor)
        zero = al.zeros(descriptor)
        return cls(zero, one, -one, zero)

    @classmethod
    def diagonal(cls, x: AlgebraElement) -> "SymplecticElement":
        """diag(x, sigma(x)^-1) for invertible x."""
        zero = al.zeros(x.descriptor)
        return cls(x, zero, zero, x.sigma().inv())

    @classmethod
    def shear(cls, y: AlgebraElement) -> "SymplecticElement":
        """[[1, y], [0, 1]] for symmetric y."""
        one = al.identity(y.descriptor)
        zero = al.zeros(y.descriptor)
        return cls(one, y, zero, one)

    # -- group structure -------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, SymplecticElement):
            return NotImplemented
        if not self.descriptor.compatible(other.descriptor):
            raise DescriptorMismatch("product of elements over different algebras")
        return SymplecticElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            _drift_check=True,
        )

    def inverse(self) -> "SymplecticElement":
        # Omega^-1 sigma(M)^T Omega, written out blockwise
        return SymplecticElement(
            self.d.sigma(),
            -self.b.sigma(),
            -self.c.sigma(),
            self.a.sigma(),
            _drift_check=True,
        )

    def act(self, vec):
        """Apply to a column (x1, x2) of algebra elements."""
        x1, x2 = vec
        return (self.a * x1 + self.b * x2, self.c * x1 + self.d * x2)

    def norm(self) -> float:
        return float(
            np.sqrt(sum(blk.norm() ** 2 for blk in (self.a, self.b, self.c, self.d)))
        )

    def distance(self, other: "SymplecticElement") -> float:
        return float(
            np.sqrt(
                al.distance(self.a, other.a) ** 2
                + al.distance(self.b, other.b) ** 2
                + al.distance(self.c, other.c) ** 2
                + al.distance(self.d, other.d) ** 2
            )
        )

    def blocks(self):
        return (self.a, self.b, self.c, self.d)

    def to_data(self) -> dict:
        return {
            "a": self.a.to_data(),
            "b": self.b.to_data(),
            "c": self.c.to_data(),
            "d": self.d.to_data(),
        }

    @classmethod
    def from_data(cls, descriptor: AlgebraDescriptor, obj: dict) -> "SymplecticElement":
        return cls(
            AlgebraElement.from_data(descriptor, obj["a"]),
            AlgebraElement.from_data(descriptor, obj["b"]),
            AlgebraElement.from_data(descriptor, obj["c"]),
            AlgebraElement.from_data(descriptor, obj["d"]),
        )

    def __repr__(self):
        d = self.descriptor
        return f"SymplecticElement({d.kind}, n={d.n}, norm={self.norm():.4g})"


def omega_form(x, y) -> AlgebraElement:
    """omega(x, y) = sigma(x1) y2 - sigma(x2) y1 on columns of A^2."""
    x1, x2 = x
    y1, y2 = y
    return x1.sigma() * y2 - x2.sigma() * y1


def is_ksp2(m: SymplecticElement) -> bool:
    """Membership in the maximal compact Sp_2 cap U_2 (sigma(M)^T M = Id)."""
    desc = m.descriptor
    one = al.identity(desc)
    zero = al.zeros(desc)
    scale = max(1.0, m.norm() ** 2)
    r1 = al.distance(m.a.sigma() * m.a + m.c.sigma() * m.c, one)
    r2 = al.distance(m.b.sigma() * m.b + m.d.sigma() * m.d, one)
    r3 = al.distance(m.a.sigma() * m.b + m.c.sigma() * m.d, zero)
    return max(r1, r2, r3) <= desc.tol * scale


def is_sp2_lie(x, z, y, w) -> bool:
    """Lie-algebra membership for [[x, z], [y, w]]: z, y symmetric and
    w = -sigma(x)."""
    desc = x.descriptor
    scale = max(1.0, x.norm(), y.norm(), z.norm(), w.norm())
    ok_z = _sym_resid(z) <= desc.tol * max(1.0, z.norm())
    ok_y = _sym_resid(y) <= desc.tol * max(1.0, y.norm())
    ok_w = al.distance(w, -x.sigma()) <= desc.tol * scale
    return ok_z and ok_y and ok_w


# -- tube domain and Moebius action ----------------------------------------


class TubePoint:
    """Point x + i y of the tube domain: x symmetric, y positive definite."""

    __slots__ = ("x", "y")

    def __init__(self, x: AlgebraElement, y: AlgebraElement):
        if not x.descriptor.compatible(y.descriptor):
            raise DescriptorMismatch("tube point parts over different algebras")
        if not al.is_symmetric(x):
            raise ValueError("real part must be symmetric")
        if not al.is_positive(y):
            raise ValueError("imaginary part must be positive definite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("TubePoint is immutable")

    @property
    def descriptor(self):
        return self.x.descriptor

    @classmethod
    def base_point(cls, descriptor: AlgebraDescriptor) -> "TubePoint":
        """i * 1, the point fixed by the maximal compact subgroup."""
        return cls(al.zeros(descriptor), al.identity(descriptor))

    def distance(self, other: "TubePoint") -> float:
        return float(
            np.sqrt(al.distance(self.x, other.x) ** 2 + al.distance(self.y, other.y) ** 2)
        )

    def __repr__(self):
        return f"TubePoint({self.descriptor.kind}, n={self.descriptor.n})"


def _cx_mul(p, q):
    """(p1 + i p2)(q1 + i q2) in the complexified algebra; i is central."""
    p1, p2 = p
    q1, q2 = q
    return (p1 * q1 - p2 * q2, p1 * q2 + p2 * q1)


def _cx_inv(p):
    """Inverse in the complexified algebra via the doubled ground embedding.

    p1 + i p2 acts on A + iA as the block matrix [[p1, -p2], [p2, p1]];
    inverting that block matrix and reading the blocks back gives the
    complexified inverse uniformly over the three kinds.
    """
    p1, p2 = p
    desc = p1.descriptor
    g1, g2 = p1.embed(), p2.embed()
    w = np.block([[g1, -g2], [g2, g1]])
    nrm = np.linalg.norm(w)
    if nrm == 0 or np.linalg.svd(w, compute_uv=False)[-1] <= desc.tol * nrm:
        raise NotInvertible("complexified element is singular")
    wi = np.linalg.inv(w)
    m = g1.shape[0]
    r = (wi[:m, :m] + wi[m:, m:]) / 2.0
    s = (wi[m:, :m] - wi[:m, m:]) / 2.0
    return (al.lift(desc, r), al.lift(desc, s))


def mobius_act(g: SymplecticElement, z: TubePoint) -> TubePoint:
    """(a z + b)(c z + d)^-1; raises SingularDenominator when c z + d is not
    invertible, and re-validates that the image stays in the tube."""
    if not g.descriptor.compatible(z.descriptor):
        raise DescriptorMismatch("group element and tube point disagree")
    num = (g.a * z.x + g.b, g.a * z.y)
    den = (g.c * z.x + g.d, g.c * z.y)
    try:
        den_inv = _cx_inv(den)
    except NotInvertible as exc:
        raise SingularDenominator(str(exc)) from exc
    w1, w2 = _cx_mul(num, den_inv)
    return TubePoint(0.5 * (w1 + w1.sigma()), w2)


# -- sampling ---------------------------------------------------------------


def sample_sp2(descriptor: AlgebraDescriptor, seed, length: int = 8) -> SymplecticElement:
    """Seed-deterministic word in the standard generators.

    Letters are diag(x, sigma(x)^-1) for invertible x, shears [[1, y], [0, 1]]
    for symmetric y, and Omega.  Products are verified eagerly, so the result
    is a certified group element.
    """
    rng = np.random.default_rng(seed)
    g = SymplecticElement.identity(descriptor)
    for _ in range(length):
        kind = rng.integers(0, 3)
        if kind == 0:
            x = al.sample(descriptor, "invertible", rng.integers(0, 2**32))
            letter = SymplecticElement.diagonal(x)
        elif kind == 1:
            y = al.sample(descriptor, "symmetric", rng.integers(0, 2**32))
            letter = SymplecticElement.shear(y)
        else:
            letter = SymplecticElement.omega(descriptor)
        g = g * letter
    return g


def sample_ksp2(descriptor: AlgebraDescriptor, seed, scale: float = 1.0) -> SymplecticElement:
    """Random element of the maximal compact subgroup.

    Exponentiates [[x, -y], [y, x]] with sigma(x) = -x and sigma(y) = y,
    the Lie algebra of Sp_2 cap U_2, inside the ground-field embedding.
    """
    from scipy.linalg import expm

    rng = np.random.default_rng(seed)
    raw_x = al.sample(descriptor, "invertible", rng.integers(0, 2**32))
    x = 0.5 * (raw_x - raw_x.sigma())
    y = al.sample(descriptor, "symmetric", rng.integers(0, 2**32))
    gx, gy = (scale * x).embed(), (scale * y).embed()
    w = expm(np.block([[gx, -gy], [gy, gx]]))
    m = gx.shape[0]
    blocks = [
        al.lift(descriptor, w[:m, :m]),
        al.lift(descriptor, w[:m, m:]),
        al.lift(descriptor, w[m:, :m]),
        al.lift(descriptor, w[m:, m:]),
    ]
    return SymplecticElement(*blocks)
