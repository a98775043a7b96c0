"""Brute-force verification layer, independent of the automaton engines.

``evaluate`` computes the literal left-hand side of an equation at one
exponent tuple with plain ring arithmetic and repeated-squaring powers.
It never touches the section operator, Frobenius substitution or the
per-digit step machinery, so agreement between ``compare`` and a built
automaton is evidence for the construction rather than for itself.

``compare`` checks every word up to a length bound.  For scalar-ring
inputs it first tabulates the solution set over the whole decoded
exponent grid by incremental dense products (numpy integer arrays, still
literal multiplication, no characteristic-p shortcuts); per-word sparse
evaluation would repeat enormous products once exponents reach p^max_len.
Matrix-ring inputs take the direct per-word path with memoized powers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .companion import MatrixEde, PolyMatrix, evaluate_at_companion
from .digits import DigitWord, alphabet
from .errors import CapacityError, StructureError
from .gfpoly import Poly
from .scalar import ScalarEde
from .systems import SystemSpec

DEFAULT_WORD_CAP = 500_000


def _one_like(elem):
    if isinstance(elem, Poly):
        return Poly.one(elem.field, elem.num_vars)
    return PolyMatrix.identity(elem.field, elem.num_vars, elem.n)


def _pow_cached(base, n: int, cache: dict | None, key):
    """base**n by repeated squaring, memoizing every exponent seen."""
    if cache is None:
        return base**n
    got = cache.get((key, n))
    if got is not None:
        return got
    if n == 0:
        out = _one_like(base)
    elif n == 1:
        out = base
    else:
        half = _pow_cached(base, n >> 1, cache, key)
        out = half * half
        if n & 1:
            out = out * base
    cache[(key, n)] = out
    return out


def evaluate(spec, values, cache: dict | None = None):
    """Literal left-hand side at one exponent tuple.

    Returns a Poly for a scalar equation, a PolyMatrix for a matrix
    equation, and a list with one residue per equation for a system.
    """
    values = tuple(values)
    if any(v < 0 for v in values):
        raise StructureError("exponents must be naturals")
    if isinstance(spec, ScalarEde):
        if len(values) != spec.t:
            raise StructureError(f"expected {spec.t} exponents")
        total = Poly.zero(spec.field, spec.r)
        for i, q in enumerate(spec.q):
            term = q
            for k, n in enumerate(values):
                term = term * _pow_cached(spec.bases[i][k], n, cache, ("b", i, k))
            total = total + term
        return total
    if isinstance(spec, MatrixEde):
        if len(values) != spec.t:
            raise StructureError(f"expected {spec.t} exponents")
        total = PolyMatrix.zero(spec.field, spec.r, spec.base.n)
        for i, q in enumerate(spec.q):
            term = q
            for k, n in enumerate(values):
                term = term * _pow_cached(spec.bases[i][k], n, cache, ("b", i, k))
            total = total + term
        return total
    if isinstance(spec, SystemSpec):
        if len(values) != spec.t:
            raise StructureError(f"expected {spec.t} exponents")
        out = []
        for e, eq in enumerate(spec.equations):
            if spec.companion is None:
                total = Poly.zero(spec.field, spec.r)
            else:
                total = PolyMatrix.zero(spec.field, spec.r, spec.companion.n)
            for i, sm in enumerate(eq):
                c = 1 if sm.coeff is None else sm.coeff.evaluate(values)
                if c == 0:
                    continue
                if spec.companion is None:
                    term = sm.q * c
                    bases = sm.bases
                else:
                    key = ("qm", e, i)
                    if cache is not None and key in cache:
                        qm, bases = cache[key]
                    else:
                        qm = evaluate_at_companion(sm.q, spec.companion)
                        bases = tuple(
                            evaluate_at_companion(b, spec.companion) for b in sm.bases
                        )
                        if cache is not None:
                            cache[key] = (qm, bases)
                    term = qm * c
                for k, n in enumerate(values):
                    term = term * _pow_cached(bases[k], n, cache, ("b", e, i, k))
                total = total + term
            out.append(total)
        return out
    raise StructureError(f"cannot evaluate object of type {type(spec).__name__}")


def is_solution(spec, values, cache: dict | None = None) -> bool:
    residue = evaluate(spec, values, cache)
    if isinstance(residue, list):
        return all(r.is_zero() for r in residue)
    return residue.is_zero()


# ---------------------------------------------------------------------------
# dense solution grids for scalar-ring inputs


def _scalar_equations(spec):
    """Normalize to [[(coeff|None, q, bases)]] with plain Poly entries."""
    if isinstance(spec, ScalarEde):
        return [[(None, q, spec.bases[i]) for i, q in enumerate(spec.q)]]
    return [
        [(sm.coeff, sm.q, sm.bases) for sm in eq]
        for eq in spec.equations
    ]


def _shift_multiply(arr, ext, poly, canvas):
    """arr (extent ext) times poly, on a fresh full-size canvas.

    Entries stay reduced into [0, p); the accumulation before the final
    reduction is bounded by terms * (p-1)^2, far inside int16.
    """
    p = poly.field.p
    out = np.zeros(canvas, dtype=np.int16)
    if all(e > 0 for e in ext) and poly.terms:
        new_ext = tuple(
            e + m for e, m in zip(ext, poly.max_exponents())
        )
        if any(n > c for n, c in zip(new_ext, canvas)):
            raise AssertionError("canvas undersized for the sweep")
        src = arr[tuple(slice(0, e) for e in ext)]
        for exps, coeff in poly.terms.items():
            dst = out[tuple(slice(o, o + e) for o, e in zip(exps, ext))]
            np.add(dst, src * coeff, out=dst)
        region = out[tuple(slice(0, e) for e in new_ext)]
        np.remainder(region, p, out=region)
    else:
        new_ext = (0,) * len(canvas)
    return out, new_ext


def _equation_zero_grid(field, r, t, summands, n_max: int):
    """Boolean grid over [0, n_max)^t: True where the equation vanishes.

    Walks the grid in odometer order keeping, per summand, the running
    dense product q_i * prod_k P_ik^{n_k} for the current index prefix.
    """
    p = field.p
    canvas = []
    for v in range(r):
        need = 1
        for (_, q, bases) in summands:
            ext = q.max_exponents()[v] + (n_max - 1) * sum(
                b.max_exponents()[v] for b in bases
            )
            need = max(need, ext + 1)
        canvas.append(need)
    canvas = tuple(canvas)
    start = []
    for (_, q, _) in summands:
        arr = np.zeros(canvas, dtype=np.int16)
        for exps, coeff in q.terms.items():
            arr[exps] = coeff
        ext = tuple(e + 1 for e in q.max_exponents()) if q.terms else (0,) * r
        start.append((arr, ext))
    result = np.zeros((n_max,) * t, dtype=bool)

    def test(states, idx):
        top = tuple(max(ext[v] for _, ext in states) for v in range(r))
        acc = np.zeros(top if all(top) else (1,) * r, dtype=np.int32)
        for (coeff, _, _), (arr, ext) in zip(summands, states):
            c = 1 if coeff is None else coeff.evaluate(idx)
            if c == 0 or not all(ext):
                continue
            view = acc[tuple(slice(0, e) for e in ext)]
            np.add(view, arr[tuple(slice(0, e) for e in ext)] * c, out=view)
        np.remainder(acc, p, out=acc)
        result[idx] = not acc.any()

    def sweep(states, k, idx):
        if k == t:
            test(states, idx)
            return
        cur = [(arr.copy(), ext) for arr, ext in states]
        for d in range(n_max):
            sweep(cur, k + 1, idx + (d,))
            if d < n_max - 1:
                for i, ((arr, ext), (_, _, bases)) in enumerate(zip(cur, summands)):
                    cur[i] = _shift_multiply(arr, ext, bases[k], canvas)

    sweep(start, 0, ())
    return result


def _scalar_solution_grid(spec, n_max: int):
    field = spec.field
    r = spec.r
    t = spec.t
    grid = None
    for summands in _scalar_equations(spec):
        g = _equation_zero_grid(field, r, t, summands, n_max)
        grid = g if grid is None else (grid & g)
    return grid


# ---------------------------------------------------------------------------
# word-by-word comparison


@dataclass
class Mismatch:
    word: DigitWord
    is_solution: bool
    accepted: bool


@dataclass
class VerificationReport:
    max_len: int
    checked: int
    mismatches: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "max_len": self.max_len,
            "checked": self.checked,
            "mismatches": [
                {
                    "word": [list(l) for l in m.word.letters],
                    "oracle": m.is_solution,
                    "automaton": m.accepted,
                }
                for m in self.mismatches
            ],
        }

    def to_json(self) -> str:
        import json

        return json.dumps(self.as_dict(), indent=2) + "\n"


def _spec_shape(spec):
    if isinstance(spec, (ScalarEde, MatrixEde, SystemSpec)):
        return spec.field, spec.t
    raise StructureError(f"cannot compare object of type {type(spec).__name__}")


def compare(spec, automaton, max_len: int, word_cap: int = DEFAULT_WORD_CAP) -> VerificationReport:
    """Check every word of length <= max_len against the automaton.

    A word mismatches when the automaton's verdict differs from the
    literal evaluation at the decoded exponent tuple.
    """
    field, t = _spec_shape(spec)
    p = field.p
    if automaton.p != p or automaton.t != t:
        raise StructureError("automaton alphabet does not match the equation")
    letters = alphabet(p, t)
    per_len = len(letters)
    total = sum(per_len**l for l in range(max_len + 1))
    if total > word_cap:
        raise CapacityError(f"{total} words exceed cap {word_cap}", discovered=total)

    scalar_ring = isinstance(spec, ScalarEde) or (
        isinstance(spec, SystemSpec) and spec.companion is None
    )
    if scalar_ring:
        grid = _scalar_solution_grid(spec, p**max_len)

        def solves(values):
            return bool(grid[values])

    else:
        cache: dict = {}
        memo: dict = {}

        def solves(values):
            got = memo.get(values)
            if got is None:
                got = memo[values] = is_solution(spec, values, cache)
            return got

    report = VerificationReport(max_len=max_len, checked=total)
    for length in range(max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            word = DigitWord(p, t, combo)
            sol = solves(word.decode())
            acc = automaton.accepts(word)
            if sol != acc:
                report.mismatches.append(Mismatch(word, sol, acc))
    return report
