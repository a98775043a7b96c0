"""Systems of exponential equations with polynomial coefficients.

A system summand may carry a coefficient polynomial in the unknowns
themselves, as in  n * x^n = 0.  Over F_p such coefficients are periodic
in each unknown with period p, so splitting every unknown into its last
digit and the rest,  n_k = d_k + p * m_k,  turns one equation into p^t
coefficient-free equations, one per last-digit tuple d:

    sum_i  coeff_i(d) * Q_i * prod_k P_ik^{d_k}  *  prod_k (P_ik^p)^{m_k} = 0 .

Each peeled equation is a plain engine instance; its automaton, with the
prefix letter d glued in front, covers exactly the original solutions
whose words start with d.  The union over all p^t prefixes plus a direct
check of the zero tuple (the empty word) yields one equation's language;
the system's language is the intersection over its equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from . import companion as companion_mod
from . import digits, fsa, scalar
from .companion import CompanionSpec, MatrixEde, PolyMatrix, evaluate_at_companion
from .errors import StructureError
from .gfpoly import Poly, PrimeField


@dataclass(frozen=True)
class Summand:
    """coeff(n_1..n_t) * q * P_1^{n_1} .. P_t^{n_t} with optional coeff.

    For scalar systems ``q`` is a Poly and ``bases`` a tuple of Poly; for
    companion systems both hold tuples of Poly, the low-to-high xi
    coefficients of ring elements.
    """

    coeff: Poly | None
    q: object
    bases: tuple

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))


@dataclass(frozen=True)
class SystemSpec:
    """Top-level problem: shared ring data plus one or more equations."""

    field: PrimeField
    r: int
    t: int
    companion: CompanionSpec | None
    equations: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "equations", tuple(tuple(eq) for eq in self.equations)
        )
        if self.r < 1 or self.t < 1:
            raise StructureError("need r >= 1 and t >= 1")
        if not self.equations:
            raise StructureError("need at least one equation")
        if self.companion is not None:
            if self.companion.field != self.field or self.companion.r != self.r:
                raise StructureError("companion spec ring mismatch")
        for eq in self.equations:
            if not eq:
                raise StructureError("empty equation")
            for sm in eq:
                self._check_summand(sm)

    def _check_summand(self, sm: Summand):
        if sm.coeff is not None:
            if sm.coeff.field != self.field or sm.coeff.num_vars != self.t:
                raise StructureError(
                    "coefficient polynomial must have one variable per unknown"
                )
        if len(sm.bases) != self.t:
            raise StructureError(f"each summand needs {self.t} bases")
        if self.companion is None:
            ring_elems = (sm.q, *sm.bases)
            for f in ring_elems:
                if not isinstance(f, Poly) or f.field != self.field or f.num_vars != self.r:
                    raise StructureError("summand entry outside the scalar ring")
        else:
            for coeffs in (sm.q, *sm.bases):
                if not isinstance(coeffs, (tuple, list)) or not coeffs:
                    raise StructureError(
                        "companion summand entries are nonempty xi-coefficient lists"
                    )
                for c in coeffs:
                    if not isinstance(c, Poly) or c.field != self.field or c.num_vars != self.r:
                        raise StructureError("xi coefficient outside the base ring")


def _coeff_at(sm: Summand, point, p: int) -> int:
    if sm.coeff is None:
        return 1
    return sm.coeff.evaluate(point)


def peel_equation(sys: SystemSpec, equation, prefix):
    """The coefficient-free equation governing the digits above ``prefix``.

    Scalar ring: summand i becomes  coeff_i(prefix) * q_i * prod P_ik^{prefix_k}
    with bases P_ik^p; same shape with matrices in the companion ring.
    """
    prefix = digits.check_letter(prefix, sys.field.p, sys.t)
    p = sys.field.p
    if sys.companion is None:
        new_q = []
        new_bases = []
        for sm in equation:
            c = _coeff_at(sm, prefix, p)
            q = sm.q * c
            for base, d in zip(sm.bases, prefix):
                if d:
                    q = q * base**d
            new_q.append(q)
            new_bases.append(tuple(base.frobenius() for base in sm.bases))
        return scalar.ScalarEde(sys.field, sys.r, sys.t, tuple(new_q), tuple(new_bases))
    spec = sys.companion
    new_q = []
    new_bases = []
    for sm in equation:
        c = _coeff_at(sm, prefix, p)
        q = evaluate_at_companion(sm.q, spec) * c
        base_mats = tuple(evaluate_at_companion(b, spec) for b in sm.bases)
        for base, d in zip(base_mats, prefix):
            if d:
                q = q * base**d
        new_q.append(q)
        new_bases.append(tuple(m**p for m in base_mats))
    return MatrixEde(spec, tuple(new_q), tuple(new_bases))


def peel_last_digits(sys: SystemSpec) -> list:
    """[(prefix letter, peeled equations)] for all p^t last-digit tuples."""
    out = []
    for prefix in digits.alphabet(sys.field.p, sys.t):
        out.append(
            (prefix, tuple(peel_equation(sys, eq, prefix) for eq in sys.equations))
        )
    return out


def solves_at_zero(sys: SystemSpec, equation) -> bool:
    """Whether the zero tuple solves one equation.

    At n = 0 every exponential factor is 1, so the left-hand side is just
    sum_i coeff_i(0) * q_i, evaluated directly.
    """
    p = sys.field.p
    zero_pt = (0,) * sys.t
    if sys.companion is None:
        total = Poly.zero(sys.field, sys.r)
        for sm in equation:
            total = total + sm.q * _coeff_at(sm, zero_pt, p)
        return total.is_zero()
    spec = sys.companion
    total = PolyMatrix.zero(sys.field, sys.r, spec.n)
    for sm in equation:
        total = total + evaluate_at_companion(sm.q, spec) * _coeff_at(sm, zero_pt, p)
    return total.is_zero()


def equation_language(sys: SystemSpec, equation, state_cap: int = fsa.DEFAULT_STATE_CAP) -> fsa.Automaton:
    """Automaton for the words solving one equation of the system."""
    build = scalar.build_automaton if sys.companion is None else companion_mod.build_automaton
    parts = []
    for prefix in digits.alphabet(sys.field.p, sys.t):
        ede = peel_equation(sys, equation, prefix)
        parts.append(build(ede, state_cap).prepend_letter(prefix))
    combined = reduce(lambda a, b: a.union(b), parts)
    return combined.with_initial_finality(solves_at_zero(sys, equation))


def solve_system(sys: SystemSpec, state_cap: int = fsa.DEFAULT_STATE_CAP) -> fsa.Automaton:
    """Automaton deciding the whole system (intersection over equations)."""
    langs = [equation_language(sys, eq, state_cap) for eq in sys.equations]
    return reduce(lambda a, b: a.intersect(b), langs)
