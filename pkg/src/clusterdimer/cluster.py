"""Cluster seeds: exchange matrices from words, mutations, log-constant
Poisson brackets, named discrete flows, and polygon symmetry groups.

The exchange matrix of a word is built by the staff-and-chords rule: one
staff line per affine Dynkin node, a chord per letter (a forward edge along
the letter's line, backward half-weight edges through the neighboring lines,
all reversed for barred letters), lines contracted to one vertex per arc
between consecutive chords.  Closed words wrap the staff on a cylinder; a
Lambda^k power splices line i rightwards into line i-k, matching the loop
realization used by lax_from_word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import RationalFunction as RF
from .loopgroup import NewtonPolygon
from .weyl import Word


class ExchangeMatrix:
    """Skew-symmetric half-integer matrix indexed by string labels."""

    def __init__(self, labels, entries=None):
        self.labels = tuple(labels)
        self._index = {l: i for i, l in enumerate(self.labels)}
        self._eps: dict[tuple[str, str], Fraction] = {}
        if entries:
            for (a, b), v in entries.items():
                self.add(a, b, v)

    def add(self, a: str, b: str, v):
        v = Fraction(v)
        if a == b or v == 0:
            return
        self._eps[(a, b)] = self._eps.get((a, b), Fraction(0)) + v
        self._eps[(b, a)] = self._eps.get((b, a), Fraction(0)) - v
        for k in [(a, b), (b, a)]:
            if self._eps[k] == 0:
                del self._eps[k]

    def get(self, a: str, b: str) -> Fraction:
        return self._eps.get((a, b), Fraction(0))

    def entries(self) -> dict[tuple[str, str], Fraction]:
        return dict(self._eps)

    def column_integral(self, k: str) -> bool:
        return all(self.get(a, k).denominator == 1 for a in self.labels)

    def to_lists(self) -> list[list[Fraction]]:
        return [[self.get(a, b) for b in self.labels] for a in self.labels]

    def __eq__(self, other):
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        if set(self.labels) != set(other.labels):
            return False
        return all(self.get(a, b) == other.get(a, b) for a in self.labels for b in self.labels)

    def is_skew(self) -> bool:
        return all(self.get(a, b) == -self.get(b, a) for a in self.labels for b in self.labels)

    def __repr__(self):
        pos = {k: str(v) for k, v in self._eps.items() if v > 0}
        return f"ExchangeMatrix({self.labels}, {pos})"


@dataclass
class Seed:
    exchange: ExchangeMatrix
    values: dict[str, RF]

    def __post_init__(self):
        if set(self.exchange.labels) != set(self.values):
            raise ValueError("labels of exchange matrix and values differ")

    @staticmethod
    def coordinate(exchange: ExchangeMatrix) -> "Seed":
        return Seed(exchange, {l: RF.var(l) for l in exchange.labels})


def _neighbor_lines(i: int, rank: int):
    """Lines carrying the intermediate chord vertices, with gray weights -C_il/2."""
    if rank == 2:
        return [((i + 1) % 2, Fraction(1))]
    return [((i - 1) % rank, Fraction(1, 2)), ((i + 1) % rank, Fraction(1, 2))]


def exchange_from_word(word: Word, labels: list[str], closed: bool = True) -> ExchangeMatrix:
    """Exchange matrix of the word's cell by the chord construction.

    `labels` names the cluster variables in letter order.  With closed=True
    the staff lives on a cylinder (cells of G/AdH) and the Lambda^k twist
    splices the lines; open words drop the trailing staff segments.
    """
    if len(labels) != len(word.letters):
        raise ValueError("one label per letter required")
    rank = word.rank
    k = word.lambda_power
    # events[line] = ordered list of ("main", pos) / ("s", pos, weight-bearer)
    events: dict[int, list[tuple]] = {i: [] for i in range(rank)}
    letter_line = {}
    for p, g in enumerate(word.letters):
        letter_line[p] = g.index
        events[g.index].append(("main", p))
        for nb, wt in _neighbor_lines(g.index, rank):
            events[nb].append(("s", p, wt))
    for i in range(rank):
        events[i].sort(key=lambda e: e[1])

    # Circuits of lines: closed words follow i -> i-k around the seam.
    circuits: list[list[int]] = []
    if closed:
        seen = set()
        for i in range(rank):
            if i in seen:
                continue
            cyc = []
            j = i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = (j - k) % rank
            circuits.append(cyc)
    else:
        circuits = [[i] for i in range(rank)]

    # Walk each circuit; an arc is named by the letter whose main edge ends it.
    arc_of_main: dict[int, str] = {}          # letter position -> its own label
    arc_after_main: dict[int, str | None] = {}
    arc_of_s: dict[tuple[int, int], str | None] = {}  # (line, letter pos) -> label
    for cyc in circuits:
        stream: list[tuple] = []
        for line in cyc:
            for e in events[line]:
                stream.append((line,) + e)
        mains = [n for n, e in enumerate(stream) if e[1] == "main"]
        if not mains:
            for (line, kind, p, *rest) in [(s[0], s[1], s[2], *s[3:]) for s in stream]:
                arc_of_s[(line, p)] = None
            continue
        # the arc containing event n ends at the next main event (cyclically)
        def next_main(n):
            for m in mains:
                if m >= n:
                    return m
            return mains[0] if closed else None

        for n, ev in enumerate(stream):
            line, kind, p = ev[0], ev[1], ev[2]
            if kind == "main":
                arc_of_main[p] = labels[p]
                nm = next_main(n + 1)
                arc_after_main[p] = labels[stream[nm][2]] if nm is not None else None
            else:
                nm = next_main(n)
                arc_of_s[(line, p)] = labels[stream[nm][2]] if nm is not None else None

    eps = ExchangeMatrix(labels)

    def arrow(a, b, w):
        if a is None or b is None or a == b:
            return
        eps.add(a, b, w)

    for p, g in enumerate(word.letters):
        left = arc_of_main[p]
        right = arc_after_main[p]
        if not g.barred:
            arrow(left, right, 1)
        else:
            arrow(right, left, 1)
        for nb, wt in _neighbor_lines(g.index, rank):
            s = arc_of_s.get((nb, p))
            if not g.barred:
                arrow(right, s, wt)
                arrow(s, left, wt)
            else:
                arrow(left, s, wt)
                arrow(s, right, wt)
    return eps


def poisson_bracket(f: RF, g: RF, eps: ExchangeMatrix) -> RF:
    """{f, g} = sum eps^{ij} x_i x_j (df/dx_i)(dg/dx_j), exactly."""
    fv = f.variables()
    gv = g.variables()
    labels = set(eps.labels)
    foreign = (fv | gv) - labels
    if foreign:
        raise ValueError(f"variables {sorted(foreign)} are not seed coordinates")
    out = RF.const(0)
    dfs = {v: f.diff(v) for v in fv}
    dgs = {v: g.diff(v) for v in gv}
    for a in fv:
        if dfs[a].is_zero():
            continue
        for b in gv:
            e = eps.get(a, b)
            if e == 0 or dgs[b].is_zero():
                continue
            out = out + RF.const(e) * RF.var(a) * RF.var(b) * dfs[a] * dgs[b]
    return out


def check_commuting(hams: list[RF], eps: ExchangeMatrix) -> bool:
    for i in range(len(hams)):
        for j in range(i + 1, len(hams)):
            if not poisson_bracket(hams[i], hams[j], eps).is_zero():
                return False
    return True


def mutate(seed: Seed, k: str) -> Seed:
    """Cluster mutation at label k (requires the k-column to be integral)."""
    eps = seed.exchange
    if k not in eps.labels:
        raise ValueError(f"unknown label {k}")
    if not eps.column_integral(k):
        raise ValueError(f"column {k} is not integral; mutation undefined")
    labels = eps.labels
    new = ExchangeMatrix(labels)
    for a in labels:
        for b in labels:
            if a >= b:
                continue
            if a == k or b == k:
                new.add(a, b, -eps.get(a, b))
            else:
                eik, ekj = eps.get(a, k), eps.get(k, b)
                if eik * ekj > 0:
                    new.add(a, b, eps.get(a, b) + eik * abs(ekj))
                else:
                    new.add(a, b, eps.get(a, b))
    xk = seed.values[k]
    vals = {}
    for a in labels:
        if a == k:
            vals[a] = xk.inverse()
            continue
        e = eps.get(a, k)
        if e > 0:
            vals[a] = seed.values[a] * (RF.const(1) + xk) ** int(e)
        elif e < 0:
            vals[a] = seed.values[a] * (RF.const(1) + xk.inverse()) ** int(e)
        else:
            vals[a] = seed.values[a]
    return Seed(new, vals)


# -- named discrete flows ------------------------------------------------------

_ONE = RF.const(1)


def _flow_triangle() -> dict[str, RF]:
    return {"x": RF.var("y"), "y": RF.var("z"), "z": RF.var("x")}


def _flow_toda2() -> dict[str, RF]:
    x, y, z, w = (RF.var(n) for n in "xyzw")
    return {
        "x": w.inverse(),
        "y": z * w ** 2 * (_ONE + y) ** 2 / (_ONE + w) ** 2,
        "z": y.inverse(),
        "w": x * y ** 2 * (_ONE + w) ** 2 / (_ONE + y) ** 2,
    }


def _flow_toda23() -> dict[str, RF]:
    x, y, z, u, v, w = (RF.var(n) for n in "xyzuvw")
    return {
        "x": y * (_ONE + x) * (_ONE + u) / (_ONE + z.inverse()) ** 2,
        "y": x.inverse(),
        "z": v * (_ONE + u) * (_ONE + z) / (_ONE + x.inverse()) ** 2,
        "u": u.inverse(),
        "v": w * (_ONE + z) * (_ONE + x) / (_ONE + u.inverse()) ** 2,
        "w": z.inverse(),
    }


NAMED_FLOWS = {
    "triangle_rot": _flow_triangle,
    "toda2_tau": _flow_toda2,
    "toda23_tau": _flow_toda23,
}


def apply_named_flow(flow, seed: Seed) -> Seed:
    """Substitute a named flow (or an explicit map label -> RF) into the seed."""
    fmap = NAMED_FLOWS[flow]() if isinstance(flow, str) else dict(flow)
    if set(fmap) - set(seed.exchange.labels):
        raise ValueError("flow variables do not match the seed")
    vals = {l: v.substitute(fmap) for l, v in seed.values.items()}
    return Seed(seed.exchange, vals)


# -- integral linear algebra ---------------------------------------------------


def smith_normal_form(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (d1 | d2 | ...), nonnegative."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    r = 0
    while r < min(rows, cols):
        pr, pc, best = None, None, None
        for i in range(r, rows):
            for j in range(r, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best, pr, pc = abs(m[i][j]), i, j
        if best is None:
            break
        m[r], m[pr] = m[pr], m[r]
        for row in m:
            row[r], row[pc] = row[pc], row[r]
        while True:
            reduced = False
            for i in range(r + 1, rows):
                if m[i][r]:
                    q = m[i][r] // m[r][r]
                    for j in range(r, cols):
                        m[i][j] -= q * m[r][j]
                    if m[i][r]:
                        m[r], m[i] = m[i], m[r]
                        reduced = True
            for j in range(r + 1, cols):
                if m[r][j]:
                    q = m[r][j] // m[r][r]
                    for i in range(r, rows):
                        m[i][j] -= q * m[i][r]
                    if m[r][j]:
                        for i in range(r, rows):
                            m[i][r], m[i][j] = m[i][j], m[i][r]
                        reduced = True
            if not reduced:
                break
        # enforce divisibility d_r | all remaining entries
        bad = None
        for i in range(r + 1, rows):
            for j in range(r + 1, cols):
                if m[i][j] % m[r][r]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(r, cols):
                m[r][j] += m[bad][j]
            continue
        diag.append(abs(m[r][r]))
        r += 1
    return diag


def gcd_of_minors_divisors(mat: list[list[int]]) -> list[int]:
    """Elementary divisors via d_k = gcd of all k x k minors (independent oracle)."""
    from itertools import combinations

    rows, cols = len(mat), len(mat[0]) if mat else 0
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[mat[i][j] for j in ci] for i in ri]
                g = gcd(g, _int_det(sub))
                g = abs(g)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _int_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        sub = [[m[i][c] for c in range(n) if c != j] for i in range(1, n)]
        total += (-1) ** j * m[0][j] * _int_det(sub)
    return total


@dataclass(frozen=True)
class AbelianGroupInvariants:
    rank: int
    torsion: tuple[int, ...]

    def as_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def symmetry_group(polygon: NewtonPolygon) -> AbelianGroupInvariants:
    """Invariants of Z^{|V|} modulo integral affine functions on the vertices:
    Smith normal form of the |V| x 3 matrix with rows (1, X_v, Y_v)."""
    mat = [[1, vx, vy] for (vx, vy) in polygon.vertices]
    diag = smith_normal_form(mat)
    rank = len(polygon.vertices) - len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroupInvariants(rank, torsion)
