"""Parameter validation for (n, k, d, t) scalar MSCR codes.

A code with ``d > 2k-1-t`` is realised by shortening an inner code with
``delta = d - (2k-1-t)`` extra systematic nodes; the inner parameters
``(n+delta, k+delta, d+delta, t)`` satisfy ``d' = 2k'-1-t`` exactly.
"""

from dataclasses import dataclass, field as dc_field

from .field import FieldSpec


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    t: int
    alpha: int
    B: int
    delta: int
    n_inner: int
    k_inner: int
    d_inner: int
    mu: int
    z: int
    r: int
    field: FieldSpec = dc_field(repr=False)
    beta1: int = 1
    beta2: int = 1

    @property
    def p(self):
        return self.field.modulus

    @property
    def B_inner(self):
        return self.k_inner * self.alpha

    @property
    def repair_bandwidth(self):
        """Symbols downloaded per newcomer: d from helpers, t-1 from peers."""
        return self.d * self.beta1 + (self.t - 1) * self.beta2

    def inner_index(self, outer):
        return outer + self.delta

    def outer_index(self, inner):
        return inner - self.delta

    def point(self, outer):
        """Evaluation point of an outer node."""
        return self.field.point(outer + self.delta)

    def digest(self):
        return (self.n, self.k, self.d, self.t, self.field.modulus)


def derive_params(n, k, d, t, modulus=None, min_modulus=2):
    """Validate ``(n, k, d, t)`` and derive every secondary quantity.

    ``modulus`` pins the field; otherwise the smallest admissible prime not
    below ``min_modulus`` is chosen.
    """
    for name, v in (("n", n), ("k", k), ("d", d), ("t", t)):
        if int(v) != v or v < 1:
            raise ParameterError(f"{name} must be a positive integer, got {v!r}")
    if k < 2:
        raise ParameterError(f"k={k}: need k >= 2")
    if t < 2:
        raise ParameterError(f"t={t}: cooperative repair needs t >= 2 "
                             "(use the MSR reference code for single failures)")
    if t > n - k:
        raise ParameterError(f"t={t} exceeds n-k={n - k}: survivors could not rebuild the data")
    lower = max(2 * k - 1 - t, k)
    if d < lower:
        raise ParameterError(f"d={d} is below max(2k-1-t, k)={lower}")
    if d + t > n:
        raise ParameterError(f"d={d} exceeds the n-t={n - t} nodes surviving a {t}-failure")

    alpha = d - k + t
    delta = d - (2 * k - 1 - t)
    n_i, k_i, d_i = n + delta, k + delta, d + delta
    mu = k_i - t
    z, r = divmod(d_i, mu)
    assert d_i == 2 * k_i - 1 - t
    assert 1 <= mu and t <= k_i - 1
    assert alpha == k_i - 1 == (z - 1) * mu + r

    try:
        fs = FieldSpec.build(n_i, mu, modulus=modulus, min_p=min_modulus)
    except ValueError as e:
        raise ParameterError(f"modulus {modulus}: {e}") from e
    if fs.modulus < min_modulus:
        raise ParameterError(f"modulus {fs.modulus} is below the required minimum {min_modulus}")
    return CodeParams(n=n, k=k, d=d, t=t, alpha=alpha, B=k * alpha, delta=delta,
                      n_inner=n_i, k_inner=k_i, d_inner=d_i, mu=mu, z=z, r=r, field=fs)


def is_admissible(n, k, d, t):
    try:
        derive_params(n, k, d, t)
    except ParameterError:
        return False
    return True
