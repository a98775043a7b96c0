"""How solutions get read off digit by digit.

An exponential term P^n over F_p[theta] only sees the base-p digits of n:
P^n = prod_k (P^{p^k})^{d_k}, and raising to the p-th power is the same as
substituting theta -> theta^p.  The section operator inverts one layer of
that substitution, which is what lets a finite machine consume digits.
"""

from edesolver import DigitWord, Poly, PrimeField, parse_poly, section_table

F2 = PrimeField(2)
theta = Poly.variable(F2, 1, 0)

f = parse_poly("1:3 + 1:2 + 1:0", F2, 1)  # theta^3 + theta^2 + 1
print("f          =", f)

# Splitting by exponent residue mod p and undoing one Frobenius layer:
for y, part in section_table(f).items():
    print(f"section {y} =", part)

# The sections rebuild f exactly: f = sum_y frobenius(section_y(f)) * theta^y
rebuilt = Poly.zero(F2, 1)
for y, part in section_table(f).items():
    rebuilt = rebuilt + part.frobenius() * Poly(F2, 1, {y: 1})
print("rebuilt    =", rebuilt, "(equal:", rebuilt == f, ")")

# f vanishes iff every iterated section chain ends in zero; that is the
# membership test the automata run.  Here f != 0 and indeed a chain survives:
print("f.section((1,)).section((1,)) =", f.section((1,)).section((1,)))

# Digit words are least-significant first; a word is just a number (or a
# tuple of numbers) spelled out in base p.
word = DigitWord.encode((6,), 2, 1)
print("6 in base 2, LSD first:", word, "->", word.decode())
print("padding with zero digits never changes the value:",
      word.with_tail_letter((0,)).decode())
