"""Digit automata for exponential equations over F_p[x_1..x_r].

An equation instance is

    Q_1 * P_11^{n_1} .. P_1t^{n_t} + ... + Q_s * P_s1^{n_1} .. P_st^{n_t} = 0

with all Q_i, P_ik in F_p[x_1..x_r] and the unknowns n_k ranging over the
naturals.  Writing the unknown tuple in base p, least significant digit
first, the solution words form a regular language, and this module builds
the deciding DFA directly.

The per-digit step works on "residue tuples": s-tuples of polynomials,
starting from (Q_1, .., Q_s).  Consuming the digit letter x under section
letter y maps component i to

    section( f_i * P_i1^{x_1} .. P_it^{x_t} , y ).

An automaton state is the set of residue tuples produced by all section
choices so far; it accepts when every member tuple sums to zero, which by
the section operator's faithfulness happens exactly when the equation
holds at the decoded exponent tuple.  Sections divide degrees by p, so
states stay inside a fixed degree box and the reachable closure is finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from . import digits, fsa
from .errors import StructureError
from .gfpoly import Poly, PrimeField, format_poly


@dataclass(frozen=True)
class ScalarEde:
    """One scalar equation: coefficients ``q`` and an s-by-t grid of bases."""

    field: PrimeField
    r: int
    t: int
    q: tuple
    bases: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "bases", tuple(tuple(row) for row in self.bases))
        if self.r < 1 or self.t < 1:
            raise StructureError("need r >= 1 and t >= 1")
        if not self.q:
            raise StructureError("need at least one summand")
        if len(self.bases) != len(self.q):
            raise StructureError("base grid must have one row per summand")
        for f in self.q:
            self._check_poly(f)
        for row in self.bases:
            if len(row) != self.t:
                raise StructureError(f"each summand needs {self.t} bases")
            for f in row:
                self._check_poly(f)

    def _check_poly(self, f):
        if not isinstance(f, Poly) or f.field != self.field or f.num_vars != self.r:
            raise StructureError("polynomial does not live in the equation's ring")

    @property
    def s(self) -> int:
        return len(self.q)

    @cached_property
    def exponent_alphabet(self) -> tuple:
        return digits.alphabet(self.field.p, self.t)

    @cached_property
    def section_alphabet(self) -> tuple:
        return digits.alphabet(self.field.p, self.r)


def degree_bound(ede: ScalarEde) -> tuple:
    """(N0, N1): the step operator maps degree <= N below N back, N >= N0.

    M is the largest base degree (zero bases count as degree 0).  One digit
    letter multiplies by at most t bases, each raised to a digit < p, so a
    step grows degree by at most (p-1)*t*M before the section divides by p.
    N0 = ceil(p*t*M/(p-1)) dominates the fixed point; N1 additionally covers
    the starting degrees, so every reachable state stays within N1.
    """
    p = ede.field.p
    big_m = 0
    for row in ede.bases:
        for f in row:
            d = f.total_degree()
            if d != float("-inf"):
                big_m = max(big_m, int(d))
    n0 = math.ceil(p * ede.t * big_m / (p - 1))
    max_q = 0
    for f in ede.q:
        d = f.total_degree()
        if d != float("-inf"):
            max_q = max(max_q, int(d))
    return n0, max(max_q, n0)


def base_power(ede: ScalarEde, i: int, x) -> Poly:
    """Product of summand i's bases raised to the digits of letter x.

    ``i`` is the 1-based summand index, matching the equation's order.
    Zero digits contribute the factor 1 even for a zero base.
    """
    if not 1 <= i <= ede.s:
        raise StructureError(f"summand index {i} out of range 1..{ede.s}")
    x = digits.check_letter(x, ede.field.p, ede.t)
    out = Poly.one(ede.field, ede.r)
    for base, d in zip(ede.bases[i - 1], x):
        if d:
            out = out * base**d
    return out


def step(ede: ScalarEde, i: int, x, y, f: Poly) -> Poly:
    """One digit step on summand i: multiply by the base power, section by y."""
    return (f * base_power(ede, i, x)).section(y)


def extend_residues(ede: ScalarEde, residues, x, y) -> tuple:
    """Apply the digit step componentwise, the same (x, y) for every summand."""
    residues = tuple(residues)
    if len(residues) != ede.s:
        raise StructureError(f"expected {ede.s} residues, got {len(residues)}")
    return tuple(step(ede, i + 1, x, y, f) for i, f in enumerate(residues))


def extend_state(ede: ScalarEde, state, x) -> frozenset:
    """All residue tuples reachable from ``state`` by consuming letter x."""
    return frozenset(
        extend_residues(ede, tau, x, y) for tau in state for y in ede.section_alphabet
    )


def is_accepting_residues(residues) -> bool:
    """A residue tuple cancels when its components sum to zero."""
    residues = tuple(residues)
    total = residues[0]
    for f in residues[1:]:
        total = total + f
    return total.is_zero()


def is_accepting_state(state) -> bool:
    """A state accepts when every member cancels (vacuously true if empty)."""
    return all(is_accepting_residues(tau) for tau in state)


def initial_state(ede: ScalarEde) -> frozenset:
    return frozenset({tuple(ede.q)})


def _residues_label(residues) -> str:
    return "(" + "; ".join(format_poly(f) for f in residues) + ")"


def state_label(state) -> str:
    return "{" + " , ".join(sorted(_residues_label(t) for t in state)) + "}"


def explore(ede: ScalarEde, state_cap: int = fsa.DEFAULT_STATE_CAP):
    """Reachable state closure; returns (state keys, transition table)."""
    multipliers = {}
    for x in ede.exponent_alphabet:
        for i in range(1, ede.s + 1):
            multipliers[i, x] = base_power(ede, i, x)
    section_letters = ede.section_alphabet
    # states share members heavily, so extensions are memoized per member
    images: dict = {}

    def member_images(tau, x):
        key = (tau, x)
        got = images.get(key)
        if got is None:
            shifted = tuple(f * multipliers[i + 1, x] for i, f in enumerate(tau))
            got = tuple(
                tuple(f.section(y) for f in shifted) for y in section_letters
            )
            images[key] = got
        return got

    def delta(state, x):
        out = set()
        for tau in state:
            out.update(member_images(tau, x))
        return frozenset(out)

    return fsa.explore_dfa(ede.exponent_alphabet, initial_state(ede), delta, state_cap)


def build_automaton(ede: ScalarEde, state_cap: int = fsa.DEFAULT_STATE_CAP) -> fsa.Automaton:
    """The DFA over exponent letters accepting exactly the solution words."""
    keys, transitions = explore(ede, state_cap)
    finals = {i for i, key in enumerate(keys) if is_accepting_state(key)}
    labels = [state_label(key) for key in keys]
    return fsa.Automaton(ede.field.p, ede.t, labels, transitions, 0, finals)
