"""Planar diagrams, checkerboard colorings and brute-force state sums.

Two encodings share one combinatorial backbone of 4-valent vertices:

* ``PDDiagram`` -- classical crossings, each a 4-tuple of arc ids listed
  counter-clockwise starting from the incoming under-strand, plus a sign.
* ``LockDiagram`` -- bipartite lock tangles with a type in {PV, PH, NV, NH}.
  Arcs are listed counter-clockwise; for V types the strands connect
  positions 0~3 and 1~2, for H types positions 0~1 and 2~3.

Faces are traced from the rotation system; a proper 2-coloring of the faces
drives the matrix extraction.  The state sums enumerate all resolutions and
count loops with a union-find, giving independent oracles for the matrix
invariants.
"""

from __future__ import annotations

from fractions import Fraction

from .bipartite import LockCounts, QuadEntry, QuadGoeritzMatrix
from .goeritz import JonesNormData, UnreducedGoeritz
from .polyring import (BIP, D2_U, DN, LaurentPoly, U, phi_pow, phibar_pow, u_pow)

__all__ = [
    "PDDiagram",
    "LockDiagram",
    "Coloring",
    "faces",
    "checkerboard",
    "extract_goeritz",
    "extract_quad",
    "kauffman_bracket",
    "planar_decomposition",
    "torus_pd",
    "twist_pd",
    "curl_pd",
    "torus_lock",
    "twist_lock",
    "lock_closure",
    "CORPUS_PD",
    "CORPUS_LOCK",
]

LOCK_TYPES = ("PV", "PH", "NV", "NH")
_PHI_FAMILY = {"PV": True, "PH": False, "NV": False, "NH": True}
_V_TYPES = {"PV", "NV"}


class _Diagram:
    """Shared 4-valent planar structure; subclasses add per-vertex data."""

    def __init__(self, tuples):
        self.tuples = tuple(tuple(t) for t in tuples)
        seen = {}
        for ci, t in enumerate(self.tuples):
            if len(t) != 4:
                raise ValueError("each vertex needs exactly 4 arc ids")
            for pos, arc in enumerate(t):
                seen.setdefault(arc, []).append((ci, pos))
        for arc, ends in seen.items():
            if len(ends) != 2:
                raise ValueError(f"arc {arc} appears {len(ends)} times, expected 2")
        self.arc_ends = seen
        if self.tuples:
            self._trace_faces()

    # rotation system: darts are (vertex, position); theta maps a dart to the
    # other end of its arc, rho turns counter-clockwise around the vertex.
    def _theta(self, dart):
        ci, pos = dart
        a, b = self.arc_ends[self.tuples[ci][pos]]
        return b if a == dart else a

    def _trace_faces(self):
        darts = [(ci, pos) for ci in range(len(self.tuples)) for pos in range(4)]
        face_of_dart = {}
        face_corners = []
        for start in darts:
            if start in face_of_dart:
                continue
            face_id = len(face_corners)
            corners = []
            d = start
            while d not in face_of_dart:
                face_of_dart[d] = face_id
                w, r = self._theta(d)
                corners.append((w, r))          # turning corner (w, r)->(w, r+1)
                d = (w, (r + 1) % 4)
            face_corners.append(corners)
        v, e = len(self.tuples), 2 * len(self.tuples)
        if v - e + len(face_corners) != 2:
            raise ValueError("diagram is not a connected planar code "
                             f"(V-E+F = {v - e + len(face_corners)})")
        self._face_of_dart = face_of_dart
        self._face_corners = face_corners
        # corner (vertex, k) = gap between positions k and k+1
        self._corner_face = {}
        for fid, corners in enumerate(face_corners):
            for c in corners:
                self._corner_face[c] = fid

    def n_faces(self):
        if not self.tuples:
            return 2  # a bare unknot bounds two faces
        return len(self._face_corners)

    def corner_face(self, vertex, k):
        return self._corner_face[(vertex, k)]

    def face_arcs(self, fid):
        return sorted({self.tuples[v][k] for v, k in self._face_corners[fid]}
                      | {self.tuples[v][(k + 1) % 4] for v, k in self._face_corners[fid]})


class PDDiagram(_Diagram):
    def __init__(self, crossings, signs):
        super().__init__(crossings)
        self.signs = tuple(signs)
        if len(self.signs) != len(self.tuples):
            raise ValueError("need one sign per crossing")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def crossings(self):
        return self.tuples

    def writhe(self):
        return sum(self.signs)

    def mirror(self):
        # swapping over/under rotates the tuple by one and flips the sign
        return PDDiagram([(b, c, d, a) for a, b, c, d in self.tuples],
                         [-s for s in self.signs])


class LockDiagram(_Diagram):
    def __init__(self, locks):
        records = [(l["type"], tuple(l["arcs"])) for l in locks]
        super().__init__([arcs for _, arcs in records])
        self.types = tuple(t for t, _ in records)
        if any(t not in LOCK_TYPES for t in self.types):
            raise ValueError(f"lock type must be one of {LOCK_TYPES}")

    @property
    def locks(self):
        return [{"type": t, "arcs": list(a)} for t, a in zip(self.types, self.tuples)]

    def strand_pairs(self, i):
        """The two through-strand pairings of lock i, as position pairs."""
        if self.types[i] in _V_TYPES:
            return ((0, 3), (1, 2))
        return ((0, 1), (2, 3))

    def precursor_pd(self):
        """Replace every lock by one crossing of the matching sign.

        The through-strands of a lock become the over-strand of a positive
        precursor crossing and the under-strand of a negative one, matching
        the sign the lock symbols collapse to.
        """
        crossings, signs = [], []
        for i, t in enumerate(self.tuples):
            kind = self.types[i]
            # phi-family locks put the light resolution weight on the caps
            # pairing, phibar-family on the strands pairing; rotating the
            # tuple by one slot swaps which pairing the crossing favours
            if kind in ("PV", "PH"):
                crossings.append((t[1], t[2], t[3], t[0]))
            else:
                crossings.append(t)
            signs.append(1 if kind in ("PV", "PH") else -1)
        return PDDiagram(crossings, signs)


class Coloring:
    """A proper 2-coloring of the faces, with white faces numbered."""

    def __init__(self, diagram, white_faces):
        self.diagram = diagram
        self.white = frozenset(white_faces)
        order = sorted(self.white,
                       key=lambda f: (min(diagram.face_arcs(f)), f))
        self.white_index = {f: i for i, f in enumerate(order)}

    def n_white(self):
        return len(self.white)


def faces(diagram):
    """Face count (the traced faces satisfy Euler's formula by construction)."""
    return diagram.n_faces()


def checkerboard(diagram):
    """Both proper 2-colorings of a connected diagram."""
    if not diagram.tuples:
        raise ValueError("the 0-crossing unknot has no crossings to color against")
    n = diagram.n_faces()
    color = {0: 0}
    queue = [0]
    adj = {}
    for arc, (d1, d2) in diagram.arc_ends.items():
        f1 = diagram._face_of_dart[d1]
        f2 = diagram._face_of_dart[d2]
        adj.setdefault(f1, set()).add(f2)
        adj.setdefault(f2, set()).add(f1)
    while queue:
        f = queue.pop()
        for g in adj.get(f, ()):
            if g in color:
                if color[g] == color[f]:
                    raise ValueError("faces are not 2-colorable")
            else:
                color[g] = 1 - color[f]
                queue.append(g)
    if len(color) != n:
        raise ValueError("diagram is disconnected; color components separately")
    whites0 = [f for f in range(n) if color[f] == 0]
    whites1 = [f for f in range(n) if color[f] == 1]
    return Coloring(diagram, whites0), Coloring(diagram, whites1)


def _corner_pairs(diagram, coloring, vertex):
    """White corner data of a vertex: (white_pair, face ids).

    Returns (pair, fa, fb) where pair is either (0, 2) or (1, 3): the gap
    indices whose corners are white; colors must alternate around a vertex.
    """
    fs = [diagram.corner_face(vertex, k) for k in range(4)]
    w = [f in coloring.white for f in fs]
    if w == [True, False, True, False]:
        return (0, 2), fs[0], fs[2]
    if w == [False, True, False, True]:
        return (1, 3), fs[1], fs[3]
    raise ValueError(f"corners of vertex {vertex} do not alternate colors")


def extract_goeritz(diagram, coloring):
    """Unreduced Goeritz matrix plus writhe metadata from a colored diagram.

    A crossing whose two white corners lie in one white region is invisible
    to the matrix and contributes its sign to Wr instead.
    """
    n = coloring.n_white()
    rows = [[0] * n for _ in range(n)]
    w = wr = 0
    for ci in range(len(diagram.tuples)):
        sign = diagram.signs[ci]
        w += sign
        pair, fa, fb = _corner_pairs(diagram, coloring, ci)
        if fa == fb:
            wr += sign
            continue
        # whites cut off by the {0~1, 2~3} resolution get sigma = +1
        sigma = 1 if pair == (0, 2) else -1
        i, j = coloring.white_index[fa], coloring.white_index[fb]
        rows[i][j] -= sigma
        rows[j][i] -= sigma
    for i in range(n):
        rows[i][i] = -sum(rows[i][j] for j in range(n) if j != i)
    return UnreducedGoeritz(rows), JonesNormData(W=w, Wr=wr)


def _lock_stay_corners(diagram, i):
    """Gap pair cut off by the connectivity-preserving resolution of lock i."""
    return (1, 3) if diagram.types[i] in _V_TYPES else (0, 2)


def extract_quad(diagram, coloring):
    """Unreduced quadruple matrix plus lock counts from a colored lock diagram."""
    n = coloring.n_white()
    rows = [[QuadEntry() for _ in range(n)] for _ in range(n)]
    counts = {"n_pos": 0, "n_neg": 0, "n_pos_v": 0, "n_neg_v": 0,
              "n_pos_h": 0, "n_neg_h": 0}
    for li in range(len(diagram.tuples)):
        phi_family = _PHI_FAMILY[diagram.types[li]]
        counts["n_pos" if phi_family else "n_neg"] += 1
        pair, fa, fb = _corner_pairs(diagram, coloring, li)
        stay = _lock_stay_corners(diagram, li)
        if fa == fb:
            slot = "v" if pair == stay else "h"
            counts[f"n_{'pos' if phi_family else 'neg'}_{slot}"] += 1
            continue
        if pair == stay:
            # separating resolution carries weight f^(-1/2)
            sigma = QuadEntry(t=1) if phi_family else QuadEntry(y=-1)
        else:
            sigma = QuadEntry(x=-1) if phi_family else QuadEntry(z=1)
        i, j = coloring.white_index[fa], coloring.white_index[fb]
        rows[i][j] = rows[i][j] + (-1) * sigma
        rows[j][i] = rows[i][j]
    for i in range(n):
        total = QuadEntry()
        for j in range(n):
            if j != i:
                total = total + rows[i][j]
        rows[i][i] = -1 * total
    return (QuadGoeritzMatrix(rows),
            LockCounts(**counts))


# -- state sums ---------------------------------------------------------------

class _UnionFind(dict):
    def find(self, a):
        root = a
        while self.setdefault(root, root) != root:
            root = self[root]
        while self[a] != root:
            self[a], a = root, self[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self[rb] = ra
            return True
        return False


def _loop_count(tuples, pairings):
    """Number of loops when each vertex's arcs are joined per ``pairings``."""
    uf = _UnionFind()
    loops = 0
    n_nodes = set()
    for t, pairing in zip(tuples, pairings):
        for a, b in pairing:
            if not uf.union(t[a], t[b]):
                loops += 1
            n_nodes.update((t[a], t[b]))
    # every arc has degree 2, so components == independent cycles == loops
    return loops


def kauffman_bracket(diagram, max_crossings=16):
    """Brute-force bracket state sum in the u ring; unknot value q + 1/q."""
    n = len(diagram.tuples)
    if n > max_crossings:
        raise ValueError(f"state sum limited to {max_crossings} crossings")
    if n == 0:
        return D2_U
    total = LaurentPoly.zero(U)
    d2_pows = [LaurentPoly.const(U, 1)]
    for _ in range(n + 1):
        d2_pows.append(d2_pows[-1] * D2_U)
    for mask in range(1 << n):
        upow = 0
        pairings = []
        for ci in range(n):
            if mask >> ci & 1:
                pairings.append(((0, 3), (1, 2)))
                upow += 1
            else:
                pairings.append(((0, 1), (2, 3)))
                upow -= 1
        loops = _loop_count(diagram.tuples, pairings)
        total = total + u_pow(upow) * d2_pows[loops]
    return total


def planar_decomposition(diagram, max_locks=12):
    """Brute-force lock state sum in the symbol ring; unknot value DN."""
    n = len(diagram.tuples)
    if n > max_locks:
        raise ValueError(f"state sum limited to {max_locks} locks")
    if n == 0:
        return DN
    total = LaurentPoly.zero(BIP)
    dn_pows = [LaurentPoly.const(BIP, 1)]
    for _ in range(n + 1):
        dn_pows.append(dn_pows[-1] * DN)
    stays = [diagram.strand_pairs(i) for i in range(n)]
    switches = [((0, 1), (2, 3)) if diagram.types[i] in _V_TYPES
                else ((0, 3), (1, 2)) for i in range(n)]
    for mask in range(1 << n):
        weight = LaurentPoly.const(BIP, 1)
        pairings = []
        for li in range(n):
            phi_family = _PHI_FAMILY[diagram.types[li]]
            half = Fraction(1, 2)
            if mask >> li & 1:
                pairings.append(switches[li])
                weight = weight * (phi_pow(half) if phi_family else phibar_pow(half))
            else:
                pairings.append(stays[li])
                weight = weight * (phi_pow(-half) if phi_family else phibar_pow(-half))
        loops = _loop_count(diagram.tuples, pairings)
        total = total + weight * dn_pows[loops]
    return total


# -- fixtures -----------------------------------------------------------------

def torus_pd(p):
    """Closed 2-braid diagram of T[2, p] with writhe +p (p >= 2)."""
    if p < 2:
        raise ValueError("torus_pd needs p >= 2")
    # arcs: top strand i, bottom strand p+i; crossing i swaps them
    crossings = []
    for i in range(p):
        t_in, b_in = i, p + i
        t_out, b_out = (i + 1) % p, p + (i + 1) % p
        # under-strand enters at the top left, CCW: (NW, SW, SE, NE)
        crossings.append((t_in, b_in, b_out, t_out))
    return PDDiagram(crossings, [1] * p)


def curl_pd(sign=1):
    """One-crossing unknot diagram with the given kink sign."""
    if sign == 1:
        return PDDiagram([(0, 1, 1, 0)], [1])
    return PDDiagram([(0, 0, 1, 1)], [-1])


def _twist_band(n, hand, prefix):
    """Antiparallel band of n crossings in a row, all of one sign.

    Arcs ct/cb run along the two sides; the strands zigzag between them.
    Ports counter-clockwise: (ct0, cb0, cbn, ctn).
    """
    ct = [f"{prefix}t{j}" for j in range(n + 1)]
    cb = [f"{prefix}b{j}" for j in range(n + 1)]
    crossings = []
    for j in range(1, n + 1):
        if hand:
            crossings.append((ct[j - 1], cb[j - 1], cb[j], ct[j]))
        else:
            crossings.append((cb[j - 1], cb[j], ct[j], ct[j - 1]))
    return crossings, (ct[0], cb[0], cb[n], ct[n])


def twist_pd(m):
    """Twist-knot diagram: m-crossing band clasped by a 2-crossing band.

    Writhe is -m + 2 for even m and -m - 2 for odd m.
    """
    if m < 1:
        raise ValueError("twist_pd needs m >= 1")
    cs1, (ct0, cb0, cbm, ctm) = _twist_band(m, 1, "T")
    cs2, (d0, e0, e2, d2) = _twist_band(2, 0, "B")
    # the clasp hangs rotated: its ct-layer picks up both loose ends of the
    # m-band on one side, its cb-layer the two on the other
    ident = {d0: cbm, d2: ctm, e0: cb0, e2: ct0}

    def rz(x):
        while x in ident:
            x = ident[x]
        return x

    crossings = [tuple(rz(x) for x in t) for t in cs1 + cs2]
    names = {}
    crossings = [tuple(names.setdefault(x, len(names)) for x in t)
                 for t in crossings]
    return PDDiagram(crossings, _signs_from_orientation(crossings))


def _signs_from_orientation(crossings):
    """Crossing signs from the strand orientations implied by the PD code.

    The under-strand runs position 0 -> 2; the over-strand occupies 1 and 3
    and its direction is found by tracing the components.
    """
    ends = {}
    for ci, t in enumerate(crossings):
        for pos, arc in enumerate(t):
            ends.setdefault(arc, []).append((ci, pos))
    direction = {}  # dart -> "in" | "out"
    starts = [(ci, pos) for pos in (0, 1) for ci in range(len(crossings))]
    for start in starts:
        if start in direction:
            continue
        # orient this component with an inward flow at the start dart
        frontier = [(start, "in")]
        while frontier:
            (cj, pos), flow = frontier.pop()
            if (cj, pos) in direction:
                continue
            direction[(cj, pos)] = flow
            # strand continues through the crossing: 0<->2, 1<->3
            mate = (cj, (pos + 2) % 4)
            direction[mate] = "out" if flow == "in" else "in"
            for dart, f in ((mate, direction[mate]), ((cj, pos), flow)):
                arc = crossings[dart[0]][dart[1]]
                a, b = ends[arc]
                other = b if a == dart else a
                frontier.append((other, "in" if f == "out" else "out"))
    signs = []
    for ci, t in enumerate(crossings):
        # positive iff over exits at 3 and under at 2, or both reversed
        over_out = direction[(ci, 3)] == "out"
        under_out = direction[(ci, 2)] == "out"
        signs.append(1 if over_out == under_out else -1)
    return signs


def lock_closure(kind, variant):
    """Single lock with both strand pairs capped off.

    ``variant`` "through" caps parallel to the strands (a Hopf-like link),
    "across" caps across them (an unknot whose lock is a self-crossing in
    one of the two colorings).
    """
    if variant == "through":
        return LockDiagram([{"type": kind, "arcs": (0, 1, 1, 0)}])
    if variant == "across":
        return LockDiagram([{"type": kind, "arcs": (0, 0, 1, 1)}])
    raise ValueError("variant must be 'through' or 'across'")


def twist_lock(m):
    """Bipartite twist-knot diagram: a bracelet of m/2 + 1 locks (even m)."""
    if m < 2 or m % 2:
        raise ValueError("twist_lock needs even m >= 2")
    k = m // 2 + 1
    locks = []
    top = [i for i in range(k)]
    bot = [k + i for i in range(k)]
    for i in range(k):
        j = (i + 1) % k
        kind = "NV" if i < k - 1 else "NH"
        if i == k - 1:
            kind = "NH"
        locks.append({"type": kind, "arcs": (top[i], bot[i], bot[j], top[j])})
    return LockDiagram(locks)


def torus_lock(p):
    """Bipartite diagram of T[2, p]: the spiral of p - 1 locks (p >= 2)."""
    if p < 2:
        raise ValueError("torus_lock needs p >= 2")
    nxt = [0]

    def fresh():
        nxt[0] += 1
        return nxt[0] - 1

    def new_lock():
        a, b, c, d = fresh(), fresh(), fresh(), fresh()
        return {"type": "PV", "arcs": (a, b, c, d)}, (a, b, c, d)

    lock, (a, b, c, d) = new_lock()
    locks = [lock]
    nw, sw, se, ne = a, b, c, d
    ident = {}
    for _ in range(p - 2):
        # rotate the tangle clockwise, then glue a lock on the right
        nw, ne, se, sw = sw, nw, ne, se
        lock, (la, lb, lc, ld) = new_lock()
        locks.append(lock)
        ident[la] = ne
        ident[lb] = se
        ne, se = ld, lc
    ident[ne] = nw
    ident[se] = sw

    def resolve(x):
        while x in ident:
            x = ident[x]
        return x

    locks = [{"type": l["type"], "arcs": tuple(resolve(x) for x in l["arcs"])}
             for l in locks]
    return LockDiagram(locks)


def _corpus_pd():
    out = {"trefoil": torus_pd(3)}
    for p in (4, 5, 6):
        out[f"torus2_{p}"] = torus_pd(p)
    for m in (2, 3, 4, 5):
        out[f"twist_{m}"] = twist_pd(m)
    out["curl_pos"] = curl_pd(1)
    out["curl_neg"] = curl_pd(-1)
    return out


def _corpus_lock():
    out = {}
    for p in range(2, 9):
        out[f"torus2_{p}"] = torus_lock(p)
    for m in (2, 4, 6):
        out[f"twist_{m}"] = twist_lock(m)
    for kind in LOCK_TYPES:
        out[f"{kind}_through"] = lock_closure(kind, "through")
        out[f"{kind}_across"] = lock_closure(kind, "across")
    return out


CORPUS_PD = _corpus_pd()
CORPUS_LOCK = _corpus_lock()
