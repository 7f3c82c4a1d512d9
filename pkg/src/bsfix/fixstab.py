"""Fixed subgroups, stabilizers and fixed closures in BS(1, n).

A morphism fixes ``(gamma, c)`` exactly when

    (alpha - 1) * gamma + beta * mu(c) = 0,        mu(c) = (n**c - 1) / (n - 1)

for the affine kinds; every procedure below is a reading of that equation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import IdentityStabilizer, NotCoprime, PreconditionError
from .group import BsElem, bs_inv, bs_pow, classify_subgroup, format_element
from .lattice import hermite_rows
from .morphisms import (
    Affine,
    Morphism,
    TypeII,
    format_morphism,
    morph_pow,
)
from .oracle import ScanBox, oracle_stab_scan
from .ring import (
    Base,
    ZnElem,
    format_zn,
    in_zn,
    mu,
    mult_order,
    totient,
    zn_coprime_part,
    zn_divides,
    zn_from_fraction,
    zn_gcd,
    zn_unit_decompose,
)

__all__ = [
    "FixResult", "FixDerivation", "StabResult", "StabDerivation",
    "TypeIFamily", "EStabResult", "ClosureResult",
    "fix", "per", "period_two", "stab_aut", "stab_subgroup", "estab",
    "closure", "eclosure", "stab_power_check",
]


def _element_dict(g: BsElem) -> dict:
    return {"gamma": format_zn(g.gamma), "c": g.c}


def _coprime_denominator(q: Fraction, base: Base) -> int:
    return zn_coprime_part(q.denominator, base)


# ---------------------------------------------------------------- results

@dataclass(frozen=True)
class FixDerivation:
    """Intermediate quantities of the fixed-subgroup computation.

    ``kappa`` is the coefficient in ``gamma(c) = kappa * (n**c - 1)``; ``M`` is
    the n-coprime part of its denominator and ``c_tilde = ord_M(n)``.
    ``q_core`` is the n-coprime part of ``num(alpha) - den(alpha)`` and ``c0``
    is ``totient((n - 1) * |q_core|)``, a solution of
    ``n**c == 1 (mod (n - 1) * q_core)``.  ``c0`` needs a factorization of
    ``q_core``, so it is computed on first access only.
    """

    n: int
    kappa: Fraction
    M: int
    c_tilde: int
    q_core: int

    @cached_property
    def c0(self) -> int:
        return totient((self.n - 1) * abs(self.q_core))

    def as_dict(self) -> dict:
        return {
            "kappa": str(self.kappa), "M": self.M, "c_tilde": self.c_tilde,
            "q_core": self.q_core, "c0": self.c0,
        }


@dataclass(frozen=True)
class FixResult:
    """``whole`` | ``kernel`` | ``cyclic`` (with ``generator``, c > 0) | ``trivial``."""

    kind: str
    generator: BsElem | None = None
    derivation: FixDerivation | None = field(default=None, compare=False)

    def as_dict(self, verbose: bool = False) -> dict:
        d = {"type": self.kind}
        if self.generator is not None:
            d["generator"] = _element_dict(self.generator)
        if verbose and self.derivation is not None:
            d["derivation"] = self.derivation.as_dict()
        return d

    def __str__(self):
        if self.kind == "cyclic":
            return f"cyclic generator {format_element(self.generator)}"
        return self.kind


ClosureResult = FixResult


@dataclass(frozen=True)
class StabDerivation:
    mu: ZnElem
    d: int
    gamma_prime: ZnElem
    mu_prime: int
    prime_orders: tuple[int, ...]
    n_order: int
    lsets: dict | None = field(compare=False)
    sign_lsets: dict | None = field(compare=False)
    enumerated_alphas: tuple[ZnElem, ...] = field(compare=False)

    def as_dict(self) -> dict:
        d = {
            "mu": format_zn(self.mu), "d": self.d,
            "gamma_prime": format_zn(self.gamma_prime), "mu_prime": self.mu_prime,
            "prime_orders": list(self.prime_orders), "n_order": self.n_order,
        }
        if self.lsets is None:
            d["L"] = d["L_sign"] = "not enumerated (order box too large)"
        else:
            d["L"] = {str(j): [list(s) for s in v] for j, v in self.lsets.items()}
            d["L_sign"] = {str(j): [list(s) for s in v] for j, v in self.sign_lsets.items()}
        return d


@dataclass(frozen=True)
class StabResult:
    """``trivial`` | ``kernel_translations`` | ``lattice`` (generators, rank)."""

    kind: str
    generators: tuple[Affine, ...] = ()
    rank: int | None = None
    derivation: StabDerivation | None = field(default=None, compare=False)

    def as_dict(self, verbose: bool = False) -> dict:
        d = {"type": self.kind}
        if self.kind == "lattice":
            d["generators"] = [
                {"alpha": format_zn(f.alpha), "beta": format_zn(f.beta)} for f in self.generators
            ]
            d["rank"] = self.rank
        if verbose and self.derivation is not None:
            d["derivation"] = self.derivation.as_dict()
        return d

    def __str__(self):
        if self.kind != "lattice":
            return self.kind
        gens = ", ".join(format_morphism(f) for f in self.generators)
        return f"lattice rank {self.rank} generators {gens}"


@dataclass(frozen=True)
class TypeIFamily:
    """The affine part of an endo-stabilizer.

    * ``all_translations``: ``{[1; beta]}`` for every beta.
    * ``all_scalings``: ``{[alpha; 0]}`` for every nonzero alpha.
    * ``parametric``: ``{[1 - coeff*beta; beta]}`` for beta in ``tau * Z[1/n]``,
      except ``beta = 1/coeff`` where alpha would vanish.  ``coeff = mu(c)/gamma``
      is an exact rational; ``tau`` clears its denominator.
    """

    kind: str
    base: Base
    coeff: Fraction | None = None
    tau: int | None = None

    @property
    def excluded_beta(self) -> ZnElem | None:
        if self.kind != "parametric":
            return None
        q = 1 / self.coeff
        return zn_from_fraction(q, self.base) if in_zn(q, self.base) else None

    def member(self, x: ZnElem) -> Affine:
        """The family member indexed by ``x`` (a beta, or alpha for scalings)."""
        base = self.base
        if self.kind == "all_translations":
            return Affine(base.one(), x)
        if self.kind == "all_scalings":
            return Affine(x, base.zero())
        beta = x * self.tau
        return Affine(zn_from_fraction(1 - self.coeff * beta.to_fraction(), base), beta)

    def as_dict(self) -> dict:
        d = {"type": self.kind}
        if self.kind == "parametric":
            d["coeff"] = str(self.coeff)
            d["tau"] = self.tau
            ex = self.excluded_beta
            if ex is not None:
                d["excluded_beta"] = format_zn(ex)
        return d

    def __str__(self):
        if self.kind == "parametric":
            return f"parametric coeff {self.coeff} tau {self.tau}"
        return self.kind


@dataclass(frozen=True)
class EStabResult:
    type_i: TypeIFamily
    type_ii: TypeII | None

    def as_dict(self, verbose: bool = False) -> dict:
        d = {"type_i": self.type_i.as_dict()}
        if self.type_ii is not None:
            d["type_ii"] = _element_dict(self.type_ii.target)
        return d

    def __str__(self):
        t2 = format_morphism(self.type_ii) if self.type_ii is not None else "none"
        return f"type_i {self.type_i}; type_ii {t2}"


# ---------------------------------------------------------------- fixed subgroups

def _fix_derivation(f: Affine) -> FixDerivation:
    base = f.base
    n = base.n
    a = f.alpha.to_fraction()
    kappa = -f.beta.to_fraction() / ((a - 1) * (n - 1))
    M = _coprime_denominator(kappa, base)
    c_tilde = mult_order(n, M)
    q = a.numerator - a.denominator
    q_core = zn_coprime_part(q, base)
    return FixDerivation(n, kappa, M, c_tilde, q_core)


def fix(f: Morphism) -> FixResult:
    """Fixed subgroup of any endomorphism.

    For affine maps with ``alpha != 1`` the solutions form ``<(kappa*(n**c - 1), c)>``
    over the multiples of ``c_tilde``, the order of ``n`` modulo the n-coprime
    part of ``kappa``'s denominator.
    """
    base = f.base
    if isinstance(f, TypeII):
        if f.target.c == 1:
            return FixResult("cyclic", f.target)
        return FixResult("trivial")
    if f.alpha == base.one():
        return FixResult("whole") if f.beta.is_zero() else FixResult("kernel")
    der = _fix_derivation(f)
    gamma = zn_from_fraction(der.kappa * (base.n**der.c_tilde - 1), base)
    return FixResult("cyclic", BsElem(gamma, der.c_tilde), der)


def per(f: Morphism, check: bool = False) -> FixResult:
    """Periodic subgroup, the union of ``Fix(f**k)`` over ``k >= 1``.

    This is ``Fix(f**2)``.  It equals ``Fix(f)`` except in two families where
    ``f**2`` gains fixed points: affine maps with ``alpha = -1`` (``f**2`` is the
    identity) and Type II maps whose target has ``c = -1`` (``f**2`` sends
    ``t`` to the inverse target, whose ``c`` is 1).

    ``check=True`` asserts ``Fix(f**k)`` is ``Fix(f)`` for odd ``k`` and the
    result for even ``k``, ``k = 1..6``.
    """
    result = fix(morph_pow(f, 2))
    if check:
        once = fix(f)
        for k in range(1, 7):
            expected = result if k % 2 == 0 else once
            assert fix(morph_pow(f, k)) == expected, f"unexpected Fix(f^{k}) for {f}"
    return result


def period_two(f: Morphism) -> bool:
    """Whether ``Fix(f**2)`` is strictly larger than ``Fix(f)``."""
    if isinstance(f, TypeII):
        return f.target.c == -1
    return f.alpha == f.base(-1)


# ---------------------------------------------------------------- stabilizers

def _unit_from_row(row: list[int], base: Base) -> ZnElem:
    """``(-1)**row[-1] * prod p_i**row[i]``."""
    q = Fraction(-1 if row[-1] % 2 else 1)
    for p, e in zip(base.prime_list, row[:-1]):
        q *= Fraction(p) ** e
    return zn_from_fraction(q, base)


def _unit_row(alpha: ZnElem, base: Base) -> list[int]:
    u = zn_unit_decompose(alpha)
    return list(u.exps) + [0 if u.sign > 0 else 1]


def _canonical_unit_basis(rows: list[list[int]], base: Base) -> list[ZnElem]:
    """Free basis in Hermite form followed by ``-1`` when the lattice contains it.

    Rows are unit exponent vectors ``[e_1, ..., e_r, sign_bit]``.
    """
    rows = [list(r) for r in rows] + [[0] * base.r + [2]]
    hnf = hermite_rows(rows)
    free = [row for row in hnf if any(row[:-1])]
    torsion = [row for row in hnf if not any(row[:-1])]
    out = [_unit_from_row(row, base) for row in free]
    if torsion and torsion[0][-1] == 1:
        out.append(_unit_from_row(torsion[0], base))
    return out


def _unit_kernel_rows(modulus: int, base: Base) -> list[list[int]]:
    """Basis of ``{(e, s) : (-1)**s * prod p_i**e_i == 1 (mod modulus)}``.

    Builds the subgroup of ``(Z/modulus)^*`` generated by ``p_1, ..., p_r, -1``
    one generator at a time; each new generator contributes one relation, and
    the relations form a triangular basis of the kernel.
    """
    if math.gcd(modulus, base.n) != 1:
        raise NotCoprime(f"modulus {modulus} shares a factor with n = {base.n}")
    images = [p % modulus for p in base.prime_list] + [-1 % modulus]
    k = len(images)
    table = {1 % modulus: (0,) * k}
    rows = []
    for i, g in enumerate(images):
        step, cur = 1, g
        while cur not in table:
            cur = cur * g % modulus
            step += 1
        row = [-x for x in table[cur]]
        row[i] += step
        rows.append(row)
        grown, pw = {}, 1
        for t in range(step):
            for h, vec in table.items():
                grown[h * pw % modulus] = vec[:i] + (t,) + vec[i + 1:]
            pw = pw * g % modulus
        table = grown
    return rows


LSET_LIMIT = 20_000
"""Largest order box ``prod o(p_i)`` that ``stab_aut`` enumerates explicitly."""


def _stabilizing_beta(alpha: ZnElem, ratio: Fraction, base: Base) -> ZnElem:
    # beta = -(gamma / mu) * (alpha - 1)
    return zn_from_fraction(-ratio * (alpha.to_fraction() - 1), base)


def _l_sets(mu_prime: int, base: Base, prime_orders, n_order):
    """Exponent tuples in the order box hitting each power of ``n`` mod ``mu_prime``.

    Returns ``(plain, signed)`` where ``plain[j]`` holds tuples with
    ``prod p_i**s_i == n**j`` and ``signed[j]`` those with ``-prod == n**j``.
    """
    n = base.n
    power_index = {pow(n, j, mu_prime): j for j in range(n_order)}
    plain: dict[int, list[tuple[int, ...]]] = {j: [] for j in range(n_order)}
    signed: dict[int, list[tuple[int, ...]]] = {j: [] for j in range(n_order)}
    primes = base.prime_list
    for s in itertools.product(*(range(o) for o in prime_orders)):
        v = 1
        for p, e in zip(primes, s):
            v = v * pow(p, e, mu_prime) % mu_prime
        j = power_index.get(v)
        if j is not None:
            plain[j].append(s)
        j = power_index.get((-v) % mu_prime)
        if j is not None:
            signed[j].append(s)
    return plain, signed


def stab_aut(g: BsElem) -> StabResult:
    """Automorphisms fixing ``g``.

    For ``c != 0`` the stabilizer embeds in the unit group via ``alpha`` and the
    result lists a Hermite-reduced basis of that image (free part first, then
    the torsion generator ``alpha = -1`` when present).
    """
    base = g.base
    if g.is_identity():
        raise IdentityStabilizer("every automorphism fixes the identity")
    if g.c == 0:
        return StabResult("kernel_translations")
    if g.c < 0:
        g = bs_inv(g)
    if g.gamma.is_zero():
        alphas = [base(p) for p in base.prime_list] + [base(-1)]
        gens = tuple(Affine(a, base.zero()) for a in alphas)
        return StabResult("lattice", gens, base.r)

    n = base.n
    mu_c = mu(g.c, base)
    d = zn_gcd(g.gamma, mu_c).l
    mu_prime = mu_c.l // d
    gamma_prime = zn_from_fraction(g.gamma.to_fraction() / d, base)
    prime_orders = tuple(mult_order(p, mu_prime) for p in base.prime_list)
    n_order = mult_order(n, mu_prime)
    ratio = g.gamma.to_fraction() / mu_c.to_fraction()

    if math.prod(prime_orders) <= LSET_LIMIT:
        plain, signed = _l_sets(mu_prime, base, prime_orders, n_order)
        alphas = _enumerated_alphas(base, prime_orders, n_order, plain, signed)
        rows = [_unit_row(a, base) for a in alphas]
    else:
        # the order box is too large to enumerate; use the kernel basis instead
        plain = signed = None
        alphas = ()
        rows = _unit_kernel_rows(mu_prime, base)
    basis = _canonical_unit_basis(rows, base)
    gens = tuple(Affine(a, _stabilizing_beta(a, ratio, base)) for a in basis)
    der = StabDerivation(
        mu_c, d, gamma_prime, mu_prime, prime_orders, n_order, plain, signed, tuple(alphas)
    )
    return StabResult("lattice", gens, base.r, der)


def _enumerated_alphas(base: Base, prime_orders, n_order, plain, signed) -> list[ZnElem]:
    """The generating set: ``p_i**o(p_i)``, ``n**o(n)`` and ``+-prod p_i**s_i / n**j``."""
    n = base.n
    alphas = [base(p) ** o for p, o in zip(base.prime_list, prime_orders)]
    alphas.append(base(n) ** n_order)
    for sign, table in ((1, plain), (-1, signed)):
        for j, tuples in table.items():
            for s in tuples:
                q = Fraction(sign, n**j)
                for p, e in zip(base.prime_list, s):
                    q *= p**e
                alphas.append(zn_from_fraction(q, base))
    return alphas


def stab_subgroup(gens: list[BsElem]) -> StabResult:
    """Automorphisms fixing every element of ``<gens>``."""
    cls = classify_subgroup(gens)
    if cls.kind == "finite_index":
        return StabResult("trivial")
    h = cls.generator
    if h.is_identity():
        raise IdentityStabilizer("all generators are trivial")
    return stab_aut(h)


def _typeii_test(g: BsElem) -> bool:
    """Whether ``mu(c)`` divides ``gamma`` in Z[1/n]."""
    return zn_divides(mu(g.c, g.base), g.gamma)


def estab(g: BsElem) -> EStabResult:
    """Endomorphisms fixing ``g``: a Type I family plus at most one Type II map."""
    base = g.base
    if g.is_identity():
        raise IdentityStabilizer("every endomorphism fixes the identity")
    if g.c == 0:
        return EStabResult(TypeIFamily("all_translations", base), None)
    if g.gamma.is_zero():
        return EStabResult(TypeIFamily("all_scalings", base), TypeII(BsElem(base.zero(), 1)))
    mu_c = mu(g.c, base)
    coeff = mu_c.to_fraction() / g.gamma.to_fraction()
    A = abs(zn_coprime_part(g.gamma.l, base))
    mu_core = abs(zn_coprime_part(mu_c.l, base))
    tau = A // math.gcd(mu_core, A)
    type_ii = None
    if _typeii_test(g):
        type_ii = TypeII(BsElem(g.gamma / mu_c, 1))
    return EStabResult(TypeIFamily("parametric", base, coeff, tau), type_ii)


# ---------------------------------------------------------------- closures

def _require_nontrivial(cls) -> None:
    if cls.kind == "cyclic" and cls.generator.is_identity():
        raise IdentityStabilizer("closure of the trivial subgroup is not supported")


def closure(gens: list[BsElem]) -> ClosureResult:
    """Auto-fixed closure: intersection of ``Fix(phi)`` over ``phi`` in ``Stab(H)``."""
    cls = classify_subgroup(gens)
    _require_nontrivial(cls)
    st = stab_subgroup(gens)
    if st.kind == "trivial":
        return ClosureResult("whole")
    if st.kind == "kernel_translations":
        return ClosureResult("kernel")
    base = gens[0].base
    movers = [f for f in st.generators if f.alpha != base.one()]
    c_k = 1
    for f in movers:
        c_k = math.lcm(c_k, fix(f).generator.c)
    f = movers[0]
    a = f.alpha.to_fraction()
    gamma = zn_from_fraction(
        -f.beta.to_fraction() / (a - 1) * mu(c_k, base).to_fraction(), base
    )
    return ClosureResult("cyclic", BsElem(gamma, c_k))


def eclosure(gens: list[BsElem]) -> ClosureResult:
    """Endo-fixed closure.

    For ``H = <(gamma, c)>`` with ``c != 0`` the result is generated by
    ``(rho * mu(e), e)``, ``rho = gamma / mu(c)``, with ``e`` the least positive
    exponent keeping ``rho * mu(e)`` in Z[1/n], namely the order of ``n``
    modulo ``M * (n - 1)`` where ``M`` is the n-coprime part of ``rho``'s
    denominator.
    """
    cls = classify_subgroup(gens)
    _require_nontrivial(cls)
    if cls.kind == "finite_index":
        return ClosureResult("whole")
    h = cls.generator
    if h.c == 0:
        return ClosureResult("kernel")
    base = h.base
    rho = h.gamma.to_fraction() / mu(h.c, base).to_fraction()
    M = _coprime_denominator(rho, base)
    e = mult_order(base.n, M * (base.n - 1))
    gamma = zn_from_fraction(rho * mu(e, base).to_fraction(), base)
    return ClosureResult("cyclic", BsElem(gamma, e))


# ---------------------------------------------------------------- power invariance

def stab_power_check(g: BsElem, kmax: int, exp_bound: int = 3) -> bool:
    """Whether the stabilizer and endo-stabilizer of ``g`` match those of ``g**k``, ``k <= kmax``.

    Automorphism stabilizers are compared through the brute-force unit-box
    scan (or the kernel descriptor when ``c == 0``).
    """
    if g.is_identity():
        raise IdentityStabilizer("identity has no finite stabilizer description")
    if kmax < 1:
        raise PreconditionError("kmax must be >= 1")
    box = ScanBox(c_bound=1, exp_bound=exp_bound, include_sign=True)
    ref_scan = None if g.c == 0 else set(oracle_stab_scan(g, box))
    ref_aut = stab_aut(g)
    ref_end = estab(g)
    for k in range(1, kmax + 1):
        gk = bs_pow(g, k)
        if g.c == 0:
            if stab_aut(gk) != ref_aut:
                return False
        elif set(oracle_stab_scan(gk, box)) != ref_scan:
            return False
        end = estab(gk)
        if end.type_i != ref_end.type_i or end.type_ii != ref_end.type_ii:
            return False
    return True

