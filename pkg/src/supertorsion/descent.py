"""The x - T descent map for y^n = f(x) = prod (x + alpha_i) over a finite field.

A point is sent to the classes of x + alpha_i in K^x / K^{x n}, written as
exponents mod n (the k with u^((q-1)/n) = zeta_n^k).  The branch points
W_j = (-alpha_j, 0) use the adjusted element
(-alpha_j - T) + prod_{i != j} (-alpha_i - T)^(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import FqElt, FqField, class_mod, roots_in_extension
from .scurve import INF, Affine, CurveSpec


@dataclass(frozen=True)
class KummerClassVector:
    n: int
    classes: tuple[int, ...]

    def total(self) -> int:
        return sum(self.classes) % self.n

    def normalized(self, d: int) -> "KummerClassVector":
        return KummerClassVector(self.n, normalize_class(self.classes, self.n, d))


def normalize_class(raw, n: int, d: int) -> tuple[int, ...]:
    """Subtract d^{-1} * sum(raw) from every entry, mod n (gcd(n, d) = 1).

    The result sums to 0 mod n; vectors differing by a constant map to the
    same normalized vector.
    """
    shift = pow(d, -1, n) * sum(raw) % n
    return tuple((a - shift) % n for a in raw)


def split_alphas(curve: CurveSpec) -> list[FqElt]:
    """The alpha_i with f = prod (x + alpha_i), sorted canonically; f must split."""
    roots = roots_in_extension(curve.f, 1, base=curve.field)
    if sum(m for _, m in roots) != curve.d:
        raise ValueError("f does not split over the field")
    return sorted((-r for r, _ in roots), key=FqElt.key)


def x_minus_T_image(curve: CurveSpec, P, alphas: list | None = None) -> KummerClassVector:
    """Class vector of x - T at P (the entry order follows `alphas`)."""
    F = curve.field
    n = curve.n
    if (F.order - 1) % n:
        raise ValueError("mu_n must lie in the field")
    alphas = alphas if alphas is not None else split_alphas(curve)
    if P is INF:
        raise ValueError("the image is defined for affine points")
    if not curve.on_curve(P):
        raise ValueError("point not on curve")
    if not P.y.is_zero():
        return KummerClassVector(n, tuple(class_mod(P.x + a, n) for a in alphas))
    j = next(i for i, a in enumerate(alphas) if (P.x + a).is_zero())
    out = []
    for i, a in enumerate(alphas):
        if i != j:
            out.append(class_mod(a - alphas[j], n))
        else:
            prod = F.one
            for k, b in enumerate(alphas):
                if k != j:
                    prod = prod * (alphas[j] - b)
            out.append(class_mod(prod ** (n - 1), n))
    return KummerClassVector(n, tuple(out))


def kummer_generators_1mz_squared(n: int, d: int, alphas: list, field: FqField | None = None):
    """The elements alpha_i - alpha_j (i != j) that generate the extension cut
    out by (1 - zeta_d)^2-division; with a finite field their classes mod n
    are returned too."""
    out = []
    for i, a in enumerate(alphas):
        for j, b in enumerate(alphas):
            if i != j:
                e = a - b
                cls = class_mod(e, n) if field is not None else None
                out.append((i, j, e, cls))
    return out


def descent_scan(curve: CurveSpec):
    """Rows {x, y, classes, sum_mod_n} for every affine point (small fields)."""
    from .scurve import points_over
    alphas = split_alphas(curve)
    rows = []
    for P in points_over(curve):
        v = x_minus_T_image(curve, P, alphas)
        rows.append({"x": P.x.key(), "y": P.y.key(), "classes": " ".join(map(str, v.classes)),
                     "sum_mod_n": v.total()})
    return rows


__all__ = ["KummerClassVector", "normalize_class", "x_minus_T_image", "split_alphas",
           "kummer_generators_1mz_squared", "descent_scan", "Affine"]
