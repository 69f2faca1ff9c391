"""Words in the coextended double affine Weyl group of type A.

Generators are s_i and s_ibar for i in Z/NZ plus the Dynkin rotation L
(written L or L^k).  Text form: indices 0..N-1, with a leading minus for
barred letters, so "-0" is the barred partner of "0".  Reducedness is not
decided here; downstream consistency checks (face counts, Hamiltonian
counts) catch unusable words.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Generator:
    index: int
    barred: bool = False

    def shifted(self, k: int, rank: int) -> "Generator":
        return Generator((self.index + k) % rank, self.barred)

    def text(self) -> str:
        return ("-" if self.barred else "") + str(self.index)


@dataclass(frozen=True)
class Word:
    letters: tuple[Generator, ...]
    lambda_power: int
    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("rank must be at least 2")
        object.__setattr__(self, "lambda_power", self.lambda_power % self.rank)
        for g in self.letters:
            if not 0 <= g.index < self.rank:
                raise ValueError(f"letter index {g.index} out of range for rank {self.rank}")

    def __len__(self):
        return len(self.letters)

    def text(self) -> str:
        parts = [g.text() for g in self.letters]
        if self.lambda_power == 1:
            parts.append("L")
        elif self.lambda_power:
            parts.append(f"L^{self.lambda_power}")
        return " ".join(parts)


def make_word(letters, lambda_power: int, rank: int) -> Word:
    return Word(tuple(Generator(i % rank, b) for i, b in letters), lambda_power, rank)


def parse_word(text: str, rank: int) -> Word:
    """Parse tokens like "0 1 -0 L^2" into a Word of the given rank."""
    letters = []
    lam = 0
    seen_lambda = False
    for tok in text.split():
        if tok in ("L",) or tok.startswith("L^"):
            if seen_lambda:
                raise ValueError("multiple Lambda tokens")
            seen_lambda = True
            lam = 1 if tok == "L" else int(tok[2:])
            continue
        if seen_lambda:
            raise ValueError("letters after the Lambda token")
        barred = tok.startswith("-")
        body = tok[1:] if barred else tok
        if not body.isdigit():
            raise ValueError(f"malformed token {tok!r}")
        idx = int(body)
        if idx >= rank:
            raise ValueError(f"index {idx} out of range for rank {rank}")
        letters.append(Generator(idx, barred))
    return Word(tuple(letters), lam, rank)


def apply_relation(w: Word, position: int, relation: str) -> Word:
    """Rewrite w by a named relation anchored at `position`.

    braid:        s_i s_j s_i -> s_j s_i s_j for adjacent i, j of one
                  barredness class (requires C_ij = -1, so rank >= 3)
    commute:      swap adjacent letters of opposite barredness or with
                  C_ij = 0
    lambda_shift: move the final letter leftwards across Lambda^k.  In the
                  loop realization used here, conjugation by the rotation
                  matrix lowers the Dynkin index, so s_i L^k = L^k s_{i+k}
                  and the letter arrives at the front with index i - k.
    """
    ls = list(w.letters)
    n = len(ls)
    if relation == "braid":
        if position + 2 >= n:
            raise ValueError("braid needs three letters at position")
        a, b, c = ls[position : position + 3]
        if not (a == c and a.barred == b.barred and _adjacent(a.index, b.index, w.rank)):
            raise ValueError("braid pattern mismatch")
        ls[position : position + 3] = [b, a, b]
        return Word(tuple(ls), w.lambda_power, w.rank)
    if relation == "commute":
        if position + 1 >= n:
            raise ValueError("commute needs two letters at position")
        a, b = ls[position], ls[position + 1]
        if a.barred == b.barred and _adjacent(a.index, b.index, w.rank):
            raise ValueError("letters do not commute")
        if a.barred == b.barred and a.index == b.index:
            raise ValueError("letters do not commute")
        ls[position], ls[position + 1] = b, a
        return Word(tuple(ls), w.lambda_power, w.rank)
    if relation == "lambda_shift":
        if w.lambda_power == 0:
            raise ValueError("word has no Lambda factor")
        if position != n - 1:
            raise ValueError("lambda_shift applies to the final letter")
        g = ls.pop()
        ls.insert(0, g.shifted(-w.lambda_power, w.rank))
        return Word(tuple(ls), w.lambda_power, w.rank)
    raise ValueError(f"unknown relation {relation!r}")


def _adjacent(i: int, j: int, rank: int) -> bool:
    if i == j:
        return False
    if rank == 2:
        return True  # affine A_1: the two indices are doubly linked
    d = (i - j) % rank
    return d == 1 or d == rank - 1


def sort_positive_negative(w: Word) -> Word:
    """Commute all unbarred letters in front of the barred ones (order kept)."""
    pos = [g for g in w.letters if not g.barred]
    neg = [g for g in w.letters if g.barred]
    return Word(tuple(pos + neg), w.lambda_power, w.rank)


def tau_word(w: Word) -> Word:
    """One step of the discrete flow on words: cyclically move the positive
    block past Lambda^k, which shifts its indices (by -k in the matrix
    realization used downstream, where Lambda s_i = s_{i-1} Lambda)."""
    s = sort_positive_negative(w)
    k = w.lambda_power
    pos = [g.shifted(-k, w.rank) for g in s.letters if not g.barred]
    neg = [g for g in s.letters if g.barred]
    return Word(tuple(pos + neg), k, w.rank)


def cyclically_equal(a: Word, b: Word) -> bool:
    """Letter sequences equal up to cyclic rotation (same lambda power and rank)."""
    if (a.rank, a.lambda_power, len(a.letters)) != (b.rank, b.lambda_power, len(b.letters)):
        return False
    la, lb = list(a.letters), list(b.letters)
    n = len(la)
    if n == 0:
        return True
    return any(la[r:] + la[:r] == lb for r in range(n))


def tau_order(w: Word) -> int:
    """N/gcd(k, N): number of tau steps returning to the same cyclic word."""
    from math import gcd

    k = w.lambda_power
    return w.rank // gcd(k, w.rank) if k else 1
