"""Link diagrams as canonicalized crossing quadruples over side identifiers.

A *side* is an arc of the diagram between two adjacent crossing points, so a
diagram with c crossings has exactly 2c sides and every side has exactly two
endpoints among the crossings.  Each crossing stores the four incident sides
counterclockwise with the over-strand occupying positions 1 and 3 (0-based
positions 0 and 2).

Two record types are accepted in text input:

* ``X[i,j,k,l]`` -- the usual planar-diagram convention: counterclockwise
  listing starting at the incoming under-strand edge, so the under-strand is
  {i, k} and the over-strand {j, l}.  Parsed by rotating to (j, k, l, i).
* ``Q[a,b,c,d]`` -- already in positional convention (over-strand at slots
  1 and 3 of the quadruple).

Both are then canonicalized to the lexicographically smaller of the two
180-degree-rotation-equivalent tuples (a,b,c,d) and (c,d,a,b).
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class DiagramError(ValueError):
    """Raised for malformed, kinked, or inconsistent diagram input."""


def canonical_quad(quad: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    a, b, c, d = quad
    return min((a, b, c, d), (c, d, a, b))


@dataclass(frozen=True)
class Crossing:
    """One crossing: four incident side ids, over-strand at positions 0 and 2."""

    id: int
    quad: tuple[int, int, int, int]

    def canonical(self) -> "Crossing":
        return Crossing(self.id, canonical_quad(self.quad))

    @property
    def over(self) -> tuple[int, int]:
        return (self.quad[0], self.quad[2])

    @property
    def under(self) -> tuple[int, int]:
        return (self.quad[1], self.quad[3])


@dataclass(frozen=True)
class LinkDiagram:
    """A validated, canonicalized link diagram."""

    crossings: tuple[Crossing, ...]
    n_sides: int
    n_components: int

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def side_ends(self) -> dict[int, list[tuple[int, int]]]:
        """Map side id -> list of (crossing index, quad position)."""
        ends: dict[int, list[tuple[int, int]]] = {}
        for ci, cr in enumerate(self.crossings):
            for pos, s in enumerate(cr.quad):
                ends.setdefault(s, []).append((ci, pos))
        return ends

    def is_alternating(self) -> bool:
        """True iff every side is over at one end and under at the other."""
        for occs in self.side_ends().values():
            roles = {pos % 2 for _, pos in occs}
            if len(roles) != 2:
                return False
        return True


def _components(crossings: list[tuple[int, int, int, int]]) -> int:
    """Count link components by walking strands through the crossings.

    Tokens are side-endpoints (crossing, position).  One step crosses to the
    opposite quad slot (the strand goes straight through) and then walks
    along that side to its other endpoint.  Each component gives exactly two
    orbits of this permutation (one per walking direction).
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(crossings):
        for pos, s in enumerate(quad):
            ends.setdefault(s, []).append((ci, pos))

    def step(tok: tuple[int, int]) -> tuple[int, int]:
        ci, pos = tok
        opp = (pos + 2) % 4
        side = crossings[ci][opp]
        e0, e1 = ends[side]
        return e1 if e0 == (ci, opp) else e0

    seen: set[tuple[int, int]] = set()
    orbits = 0
    for ci, quad in enumerate(crossings):
        for pos in range(4):
            tok = (ci, pos)
            if tok in seen:
                continue
            orbits += 1
            while tok not in seen:
                seen.add(tok)
                tok = step(tok)
    return orbits // 2


def _validate(quads: list[tuple[int, int, int, int]]) -> tuple[int, int]:
    """Check side multiplicities, kinks, and connectivity; return (n, s)."""
    c = len(quads)
    if c == 0:
        raise DiagramError("diagram has no crossings")
    n = 2 * c
    counts: dict[int, int] = {}
    for quad in quads:
        for s in quad:
            if not (1 <= s <= n):
                raise DiagramError(f"side label {s} out of range 1..{n}")
            counts[s] = counts.get(s, 0) + 1
    for s in range(1, n + 1):
        got = counts.get(s, 0)
        if got != 2:
            raise DiagramError(
                f"side {s} appears {got} times; every side must appear exactly twice"
            )
    for quad in quads:
        for i in range(4):
            if quad[i] == quad[(i + 1) % 4]:
                raise DiagramError(
                    f"kink at crossing with sides {quad}: remove kinks from the "
                    "diagram by hand (untwist the loop) before parsing"
                )
    # connectivity of the underlying 4-valent graph (non-split diagram)
    adj: dict[int, set[int]] = {i: set() for i in range(c)}
    where: dict[int, list[int]] = {}
    for ci, quad in enumerate(quads):
        for s in quad:
            where.setdefault(s, []).append(ci)
    for s, cis in where.items():
        a, b = cis
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for nb in adj[cur]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != c:
        raise DiagramError("diagram is split (underlying graph is disconnected)")
    return n, _components(quads)


def from_quads(quads: list[tuple[int, int, int, int]]) -> LinkDiagram:
    """Build a validated diagram from positional quadruples."""
    canon = [canonical_quad(tuple(q)) for q in quads]
    n, s = _validate(canon)
    crossings = tuple(Crossing(i, q) for i, q in enumerate(canon))
    return LinkDiagram(crossings, n, s)


_RECORD_RE = re.compile(r"([XQ])\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_pd(text: str) -> LinkDiagram:
    """Parse X/Q records into a validated LinkDiagram.

    Records may be separated by whitespace or newlines; ``#`` starts a
    comment running to end of line.
    """
    stripped_lines = []
    for line in text.splitlines():
        hash_at = line.find("#")
        if hash_at >= 0:
            line = line[:hash_at]
        stripped_lines.append(line)
    body = "\n".join(stripped_lines)

    quads: list[tuple[int, int, int, int]] = []
    pos = 0
    for m in _RECORD_RE.finditer(body):
        between = body[pos : m.start()]
        if between.strip(" \t\n,;"):
            raise DiagramError(f"malformed diagram text near: {between.strip()!r}")
        pos = m.end()
        kind = m.group(1)
        i, j, k, l = (int(m.group(g)) for g in range(2, 6))
        if kind == "X":
            quad = (j, k, l, i)  # rotate so the over-strand {j, l} sits at 0, 2
        else:
            quad = (i, j, k, l)
        quads.append(quad)
    tail = body[pos:]
    if tail.strip(" \t\n,;"):
        raise DiagramError(f"malformed diagram text near: {tail.strip()!r}")
    if not quads:
        raise DiagramError("no crossing records found")
    return from_quads(quads)


def serialize(d: LinkDiagram) -> str:
    """Emit canonical Q records, one per line."""
    return "\n".join(f"Q[{q[0]},{q[1]},{q[2]},{q[3]}]" for c in d.crossings for q in [c.quad]) + "\n"


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Exchange over/under diagonals (rotate each quadruple one step)."""
    quads = [(q[1], q[2], q[3], q[0]) for c in d.crossings for q in [c.quad]]
    return from_quads(quads)


def twist_knot_diagram(n: int) -> LinkDiagram:
    """The (n+3)-crossing twist-knot diagram with n half-twists and a clasp.

    Sides are numbered in the order (a, b, x_0..x_{n+1}, y_0..y_{n+1}):
    a = 1, b = 2, x_k = 3 + k, y_k = n + 5 + k.  n = 1 gives the
    figure-eight knot, n = 2 the 5_2 knot.
    """
    if n < 1:
        raise ValueError("twist_knot_diagram: n must be >= 1")
    a, b = 1, 2
    x = [3 + k for k in range(n + 2)]
    y = [n + 5 + k for k in range(n + 2)]
    quads = [(b, y[0], y[n + 1], a), (x[0], b, a, x[n + 1])]
    for k in range(n + 1):
        quads.append((x[k + 1], y[k + 1], y[k], x[k]))
    return from_quads(quads)
