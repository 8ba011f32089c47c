"""Bumpless pipedreams on finite regions.

The enumerator scans rows top to bottom and each row right to left, so the
state at a cell is just the pipe coming down from above and the pipe coming in
from the right; that leaves at most two tile choices per cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping

from .perm import Permutation
from .poly import ONE, Polynomial, product


class Tile(Enum):
    BLANK = 0
    H = 1
    V = 2
    R = 3
    J = 4
    X = 5

    @property
    def letter(self) -> str:
        return _LETTERS[self]

    @property
    def glyph(self) -> str:
        return GLYPHS[self]

    @property
    def top(self) -> bool:
        return self in (Tile.V, Tile.J, Tile.X)

    @property
    def bottom(self) -> bool:
        return self in (Tile.V, Tile.R, Tile.X)

    @property
    def left(self) -> bool:
        return self in (Tile.H, Tile.J, Tile.X)

    @property
    def right(self) -> bool:
        return self in (Tile.H, Tile.R, Tile.X)

    @classmethod
    def from_letter(cls, s: str) -> "Tile":
        return _FROM_LETTER[s]


_LETTERS = {Tile.BLANK: "B", Tile.H: "H", Tile.V: "V", Tile.R: "R", Tile.J: "J", Tile.X: "X"}
_FROM_LETTER = {v: k for k, v in _LETTERS.items()}

GLYPHS = {
    Tile.BLANK: "·",  # middle dot
    Tile.H: "─",      # light horizontal
    Tile.V: "│",      # light vertical
    Tile.R: "╭",      # arc down and right
    Tile.J: "╯",      # arc up and left
    Tile.X: "┼",      # light vertical and horizontal
}

Cell = tuple[int, int]


class Region:
    """A finite set of cells whose rows are integer intervals."""

    def __init__(self, cells: Iterable[Cell]):
        self.cells = frozenset((int(r), int(c)) for r, c in cells)
        rows: dict[int, list[int]] = {}
        for r, c in self.cells:
            rows.setdefault(r, []).append(c)
        self.row_bounds: dict[int, tuple[int, int]] = {}
        for r, cs in rows.items():
            lo, hi = min(cs), max(cs)
            if hi - lo + 1 != len(cs):
                raise ValueError(f"row {r} of region is not an interval")
            self.row_bounds[r] = (lo, hi)
        self.rows = sorted(rows)
        self.cols = sorted({c for _, c in self.cells})
        self._order = tuple((r, c) for r in self.rows
                            for c in range(self.row_bounds[r][0], self.row_bounds[r][1] + 1))

    @classmethod
    def rectangle(cls, rows: tuple[int, int], cols: tuple[int, int]) -> "Region":
        return cls((r, c) for r in range(rows[0], rows[1] + 1)
                   for c in range(cols[0], cols[1] + 1))

    @classmethod
    def square(cls, n: int) -> "Region":
        return cls.rectangle((1, n), (1, n))

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def row_major(self) -> tuple[Cell, ...]:
        return self._order

    def col_top(self, c: int) -> int:
        return min(r for r, cc in self.cells if cc == c)

    def col_bottom(self, c: int) -> int:
        return max(r for r, cc in self.cells if cc == c)

    def is_trapezoid(self) -> bool:
        if not self.rows or self.rows != list(range(self.rows[0], self.rows[-1] + 1)):
            return False
        bounds = [self.row_bounds[r] for r in self.rows]
        pairs = list(zip(bounds, bounds[1:]))
        down = all(a[0] >= b[0] and a[1] <= b[1] for a, b in pairs)
        up = all(a[0] <= b[0] and a[1] >= b[1] for a, b in pairs)
        shift = all(max(a[0], b[0]) <= min(a[1], b[1]) for a, b in pairs)
        return down or up or shift


def _frozen(m: Mapping[int, int | None] | None) -> tuple[tuple[int, int], ...]:
    if not m:
        return ()
    return tuple(sorted((int(k), int(v)) for k, v in m.items() if v is not None))


@dataclass(frozen=True)
class BoundaryCondition:
    """Four partial label maps; a missing key means no pipe there."""

    north: tuple[tuple[int, int], ...] = ()
    east: tuple[tuple[int, int], ...] = ()
    south: tuple[tuple[int, int], ...] = ()
    west: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, north=None, east=None, south=None, west=None) -> "BoundaryCondition":
        bc = cls(_frozen(north), _frozen(east), _frozen(south), _frozen(west))
        for name in ("north", "east", "south", "west"):
            labels = [v for _, v in getattr(bc, name)]
            if len(set(labels)) != len(labels):
                raise ValueError(f"repeated label on {name} side")
        return bc

    @property
    def N(self) -> dict[int, int]:
        return dict(self.north)

    @property
    def E(self) -> dict[int, int]:
        return dict(self.east)

    @property
    def S(self) -> dict[int, int]:
        return dict(self.south)

    @property
    def W(self) -> dict[int, int]:
        return dict(self.west)

    def replace(self, **kw) -> "BoundaryCondition":
        maps = {"north": self.N, "east": self.E, "south": self.S, "west": self.W}
        maps.update(kw)
        return BoundaryCondition.make(**maps)

    def to_json(self) -> dict:
        return {side: {str(k): v for k, v in getattr(self, side)}
                for side in ("north", "east", "south", "west")}

    @classmethod
    def from_json(cls, data: dict) -> "BoundaryCondition":
        return cls.make(**{side: {int(k): int(v) for k, v in data.get(side, {}).items()}
                           for side in ("north", "east", "south", "west")})


def gamma_w(w: Permutation, n: int) -> BoundaryCondition:
    """Boundary for BPD_n(w): rows enter labelled by index, columns exit by w^{-1}."""
    winv = w.inverse()
    return BoundaryCondition.make(east={i: i for i in range(1, n + 1)},
                                  south={i: winv(i) for i in range(1, n + 1)})


@dataclass(frozen=True)
class BPD:
    region: Region
    tiles: tuple[tuple[Cell, Tile], ...]

    @classmethod
    def make(cls, region: Region, tiles: Mapping[Cell, Tile]) -> "BPD":
        if set(tiles) != set(region.cells):
            raise ValueError("tiles must cover exactly the region")
        return cls(region, tuple((cell, tiles[cell]) for cell in region.row_major()))

    @property
    def tile_map(self) -> dict[Cell, Tile]:
        return dict(self.tiles)

    def tile(self, r: int, c: int) -> Tile:
        return self.tile_map[(r, c)]

    def blanks(self) -> list[Cell]:
        return [cell for cell, t in self.tiles if t is Tile.BLANK]

    def sort_key(self) -> tuple[int, ...]:
        return tuple(t.value for _, t in self.tiles)

    def restrict(self, cells: Iterable[Cell]) -> "BPD":
        cells = set(cells) & set(self.region.cells)
        tm = self.tile_map
        region = Region(cells)
        return BPD.make(region, {cell: tm[cell] for cell in cells})

    def to_json(self) -> dict:
        return {"region": [list(cell) for cell in self.region.row_major()],
                "tiles": [[r, c, t.letter] for (r, c), t in self.tiles]}

    @classmethod
    def from_json(cls, data: dict) -> "BPD":
        region = Region(tuple(cell) for cell in data["region"])
        return cls.make(region, {(r, c): Tile.from_letter(t) for r, c, t in data["tiles"]})


def weight(D: BPD) -> Polynomial:
    return product(Polynomial.xy(r, c) for r, c in D.blanks()) if D.blanks() else ONE


# ------------------------------------------------------------------ tracing

@dataclass
class Pipe:
    entry: tuple[str, int]
    exit: tuple[str, int]
    cells: list[Cell]
    edges: list[Cell] = field(default_factory=list)   # (r, c): crosses below row r at column c


@dataclass
class Trace:
    pipes: list[Pipe]
    crossings: dict[Cell, tuple[int, int]]           # cell -> (vertical pipe, horizontal pipe)


class TraceError(ValueError):
    pass


def trace(D: BPD) -> Trace:
    region = D.region
    tm = D.tile_map
    pipes: list[Pipe] = []
    vert_at: dict[Cell, int] = {}
    horiz_at: dict[Cell, int] = {}
    entries = []
    for c in region.cols:
        r0 = region.col_top(c)
        if tm[(r0, c)].top:
            entries.append((("N", c), (r0, c), "T"))
    for r in region.rows:
        hi = region.row_bounds[r][1]
        if tm[(r, hi)].right:
            entries.append((("E", r), (r, hi), "R"))
    for entry, cell, came in entries:
        pid = len(pipes)
        pipe = Pipe(entry, ("", 0), [])
        if came == "T":
            pipe.edges.append((cell[0] - 1, cell[1]))
        while True:
            r, c = cell
            t = tm[cell]
            pipe.cells.append(cell)
            if came == "T":
                if not t.top:
                    raise TraceError(f"pipe {entry} cannot enter {cell} from the top")
                vert_at[cell] = pid
                go = "B" if t in (Tile.V, Tile.X) else "L"
            else:
                if not t.right:
                    raise TraceError(f"pipe {entry} cannot enter {cell} from the right")
                horiz_at[cell] = pid
                go = "L" if t in (Tile.H, Tile.X) else "B"
            if go == "B":
                pipe.edges.append((r, c))
                nxt = (r + 1, c)
                if nxt not in region:
                    pipe.exit = ("S", c)
                    break
                cell, came = nxt, "T"
            else:
                nxt = (r, c - 1)
                if nxt not in region:
                    pipe.exit = ("W", r)
                    break
                cell, came = nxt, "R"
        pipes.append(pipe)
    crossings = {cell: (vert_at[cell], horiz_at[cell])
                 for cell, t in D.tiles if t is Tile.X and cell in vert_at and cell in horiz_at}
    return Trace(pipes, crossings)


@dataclass
class Report:
    ok: bool
    kind: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(D: BPD) -> Report:
    """Check consistency, reducedness and the finite form of stabilization."""
    tm = D.tile_map
    for (r, c) in D.region.row_major():
        t = tm[(r, c)]
        right = tm.get((r, c + 1))
        if right is not None and t.right != right.left:
            return Report(False, "consistency", f"edge between {(r, c)} and {(r, c + 1)}")
        below = tm.get((r + 1, c))
        if below is not None and t.bottom != below.top:
            return Report(False, "consistency", f"edge between {(r, c)} and {(r + 1, c)}")
    try:
        tr = trace(D)
    except TraceError as exc:
        return Report(False, "consistency", str(exc))
    seen: dict[tuple[int, int], Cell] = {}
    for cell, (v, h) in sorted(tr.crossings.items()):
        pair = (min(v, h), max(v, h))
        if pair in seen:
            return Report(False, "reduced",
                          f"pipes {tr.pipes[v].entry} and {tr.pipes[h].entry} cross at "
                          f"{seen[pair]} and {cell}")
        seen[pair] = cell
    for p in tr.pipes:
        if p.entry[0] not in ("N", "E") or p.exit[0] not in ("S", "W"):
            return Report(False, "stabilized", f"pipe {p.entry} -> {p.exit}")
    return Report(True)


# ----------------------------------------------------------------- labeling

class DoesNotSatisfy(ValueError):
    pass


@dataclass
class Labeling:
    trace: Trace
    labels: list[int]

    def edge_labels(self) -> dict[Cell, int]:
        out = {}
        for pid, p in enumerate(self.trace.pipes):
            for e in p.edges:
                out[e] = self.labels[pid]
        return out

    def cross_section(self, r: int) -> dict[int, int]:
        """Labels on the edges between rows r and r+1."""
        return {c: lab for (rr, c), lab in self.edge_labels().items() if rr == r}

    def boundary(self) -> BoundaryCondition:
        maps: dict[str, dict[int, int]] = {"N": {}, "E": {}, "S": {}, "W": {}}
        for pid, p in enumerate(self.trace.pipes):
            maps[p.entry[0]][p.entry[1]] = self.labels[pid]
            maps[p.exit[0]][p.exit[1]] = self.labels[pid]
        return BoundaryCondition.make(maps["N"], maps["E"], maps["S"], maps["W"])


def label(D: BPD, gamma: BoundaryCondition, free_north: bool = False) -> Labeling:
    """The labeling forced by ``gamma``; raises DoesNotSatisfy if there is none.

    With ``free_north`` the north side is unconstrained and pipes entering there
    take their label from where they exit.
    """
    tr = trace(D)
    sides = {"N": gamma.N, "E": gamma.E, "S": gamma.S, "W": gamma.W}
    region = D.region
    used = {"N": set(), "E": set(), "S": set(), "W": set()}
    labels = []
    for p in tr.pipes:
        used[p.entry[0]].add(p.entry[1])
        used[p.exit[0]].add(p.exit[1])
        lab_in = sides[p.entry[0]].get(p.entry[1])
        lab_out = sides[p.exit[0]].get(p.exit[1])
        if lab_out is None:
            raise DoesNotSatisfy(f"pipe from {p.entry} exits at {p.exit} where no pipe is allowed")
        if lab_in is None:
            if not (free_north and p.entry[0] == "N"):
                raise DoesNotSatisfy(f"pipe enters at {p.entry} where no pipe is allowed")
            lab_in = lab_out
        if lab_in != lab_out:
            raise DoesNotSatisfy(f"pipe {p.entry}->{p.exit} has labels {lab_in} and {lab_out}")
        labels.append(lab_in)
    for side, m in sides.items():
        if side == "N" and free_north:
            continue
        for k in m:
            if k not in used[side]:
                raise DoesNotSatisfy(f"expected a pipe at {side} {k}")
    if len(set(labels)) != len(labels):
        raise DoesNotSatisfy("labels are not distinct")
    for cell, (v, h) in tr.crossings.items():
        if labels[v] > labels[h]:
            raise DoesNotSatisfy(f"invalid crossing at {cell}")
    del region
    return Labeling(tr, labels)


def satisfies(D: BPD, gamma: BoundaryCondition) -> bool:
    try:
        label(D, gamma)
    except DoesNotSatisfy:
        return False
    return True


# -------------------------------------------------------------------- rothe

def rothe_tile(w: Permutation, winv: Permutation, i: int, j: int) -> Tile:
    wi, wj = w(i), winv(j)
    if j == wi:
        return Tile.R
    if j < wi:
        return Tile.BLANK if i < wj else Tile.V
    return Tile.H if i < wj else Tile.X


def rothe(w: Permutation, rows: tuple[int, int], cols: tuple[int, int] | None = None) -> BPD:
    cols = cols or rows
    winv = w.inverse()
    region = Region.rectangle(rows, cols)
    return BPD.make(region, {(i, j): rothe_tile(w, winv, i, j) for i, j in region.cells})


# --------------------------------------------------------------- enumerator

def enumerate_bpds(region: Region, gamma: BoundaryCondition,
                   free_north: bool = False, max_blanks: int | None = None) -> list[BPD]:
    """All BPDs on ``region`` admitting a valid labeling that satisfies ``gamma``.

    With ``free_north`` the north side of ``gamma`` is ignored and pipes may
    enter anywhere on top. That case is solved on the half-turned picture, where
    every pipe is labelled from the start and only the south exits are free.
    ``max_blanks`` discards tilings with more blank tiles; callers pass it only
    when the bound is known to hold for every BPD they want.
    """
    for side, m, keys in (("north", gamma.N, region.cols), ("south", gamma.S, region.cols),
                          ("east", gamma.E, region.rows), ("west", gamma.W, region.rows)):
        extra = set(m) - set(keys)
        if extra and not (free_north and side == "north"):
            raise ValueError(f"{side} boundary has entries {sorted(extra)} off the region")
    if free_north:
        turned = BoundaryCondition.make(north={-c: lab for c, lab in gamma.S.items()},
                                        west={-r: lab for r, lab in gamma.E.items()},
                                        east={-r: lab for r, lab in gamma.W.items()})
        raw = [half_turn(D) for D in _search(half_turn_region(region), turned, True, max_blanks)]
    else:
        raw = _search(region, gamma, False, max_blanks)
    out = []
    for D in raw:
        try:
            label(D, gamma, free_north=free_north)
        except DoesNotSatisfy:
            continue
        out.append(D)
    out.sort(key=BPD.sort_key)
    return out


_TURN = {Tile.R: Tile.J, Tile.J: Tile.R}


def half_turn_region(region: Region) -> Region:
    return Region((-r, -c) for r, c in region.cells)


def half_turn(D: BPD) -> BPD:
    """Rotate by 180 degrees; pipes are then traversed in the other direction."""
    tiles = {(-r, -c): _TURN.get(t, t) for (r, c), t in D.tiles}
    return BPD.make(half_turn_region(D.region), tiles)


def _search(region: Region, gamma: BoundaryCondition, free_south: bool,
            max_blanks: int | None) -> list[BPD]:
    """Backtracking over cells, rows top to bottom and each row right to left.

    Every pipe carries its label from where it enters. With ``free_south`` a
    label without a prescribed exit may leave through any south edge not listed
    in ``gamma``.
    """
    order = tuple((r, c) for r in region.rows
                  for c in range(region.row_bounds[r][1], region.row_bounds[r][0] - 1, -1))
    ncell = len(order)
    Nmap, Emap, Smap, Wmap = gamma.N, gamma.E, gamma.S, gamma.W
    target: dict[int, tuple[int, int]] = {}      # label -> (kind, index); kind 0 = S, 1 = W
    for c, lab in Smap.items():
        target[lab] = (0, c)
    for r, lab in Wmap.items():
        target[lab] = (1, r)

    cells = region.cells
    has_top = [(r - 1, c) in cells for r, c in order]
    has_bottom = [(r + 1, c) in cells for r, c in order]
    rightmost = [(r, c + 1) not in cells for r, c in order]
    leftmost = [(r, c - 1) not in cells for r, c in order]

    labels: list[int] = []
    owner: set[int] = set()
    crosses: list[list[int]] = []               # pipe id -> pipes it crossed
    vert: dict[int, int | None] = {}
    tiles: list[Tile | None] = [None] * ncell
    blanks = [0]
    results: list[BPD] = []

    def new_pipe(lab: int) -> int | None:
        if lab in owner or (lab not in target and not free_south):
            return None
        owner.add(lab)
        labels.append(lab)
        crosses.append([])
        return len(labels) - 1

    def drop_pipe() -> None:
        owner.discard(labels.pop())
        crosses.pop()

    def can_reach(pid: int, kind: int, r: int, c: int) -> bool:
        # moving down to row r at column c (kind 0) or left into column c of row r (kind 1)
        t = target.get(labels[pid])
        if t is None:
            return True
        tk, ti = t
        if tk == 0:
            return ti <= c
        return ti >= r

    def exit_ok(pid: int | None, side: str, k: int) -> bool:
        m = Smap if side == "S" else Wmap
        expect = m.get(k)
        if pid is None:
            return expect is None
        if expect is None:
            return side == "S" and free_south and labels[pid] not in target
        return labels[pid] == expect

    def step(k: int, hin: int | None) -> None:
        if k == ncell:
            results.append(BPD.make(region, dict(zip(order, tiles))))
            return
        r, c = order[k]
        created_h = False
        if rightmost[k]:
            lab = Emap.get(r)
            hin = None
            if lab is not None:
                hin = new_pipe(lab)
                if hin is None:
                    return
                created_h = True
        created_v = False
        if has_top[k]:
            top = vert.get(c)
        else:
            lab = Nmap.get(c)
            top = None
            if lab is not None:
                top = new_pipe(lab)
                if top is None:
                    if created_h:
                        drop_pipe()
                    return
                created_v = True
        _place(k, r, c, top, hin)
        if created_v:
            drop_pipe()
        if created_h:
            drop_pipe()

    def _place(k: int, r: int, c: int, top: int | None, hin: int | None) -> None:
        if top is None and hin is None:
            if max_blanks is not None and blanks[0] >= max_blanks:
                return
            options = [(Tile.BLANK, None, None)]
        elif top is None:
            options = [(Tile.R, hin, None), (Tile.H, None, hin)]
        elif hin is None:
            options = [(Tile.V, top, None), (Tile.J, None, top)]
        else:
            if hin in crosses[top] or labels[top] > labels[hin]:
                return
            options = [(Tile.X, top, hin)]
        old_vert = vert.get(c)
        for tile, down, left in options:
            if has_bottom[k]:
                ok = down is None or can_reach(down, 0, r + 1, c)
            else:
                ok = exit_ok(down, "S", c)
            nxt_h = None
            if ok:
                if leftmost[k]:
                    ok = exit_ok(left, "W", r)
                else:
                    ok = left is None or can_reach(left, 1, r, c - 1)
                    nxt_h = left
            if not ok:
                continue
            if tile is Tile.X:
                crosses[top].append(hin)
                crosses[hin].append(top)
            if has_bottom[k]:
                vert[c] = down
            tiles[k] = tile
            blanks[0] += tile is Tile.BLANK
            step(k + 1, nxt_h)
            blanks[0] -= tile is Tile.BLANK
            if tile is Tile.X:
                crosses[top].pop()
                crosses[hin].pop()
            vert[c] = old_vert
        tiles[k] = None

    step(0, None)
    return results


def bpds_of(w: Permutation, n: int) -> list[BPD]:
    return enumerate_bpds(Region.square(n), gamma_w(w, n))


def schubert_via_bpd(w: Permutation, n: int) -> Polynomial:
    out = Polynomial()
    for D in bpds_of(w, n):
        out = out + weight(D)
    return out


# ---------------------------------------------------------------- rendering

def render(D: BPD) -> str:
    region = D.region
    tm = D.tile_map
    rows, cols = region.rows, region.cols
    cols = list(range(cols[0], cols[-1] + 1))
    cw = max(len(str(c)) for c in cols)
    rw = max(len(str(r)) for r in rows)
    lines = [" " * rw + " " + " ".join(str(c).rjust(cw) for c in cols)]
    for r in range(rows[0], rows[-1] + 1):
        cells = []
        for c in cols:
            t = tm.get((r, c))
            cells.append((t.glyph if t is not None else " ").rjust(cw))
        lines.append(str(r).rjust(rw) + " " + " ".join(cells))
    return "\n".join(lines) + "\n"


def from_rows(rows: Mapping[int, str], col_lo: int) -> BPD:
    """Build a BPD from strings of tile letters, one string per row."""
    tiles = {}
    for r, s in rows.items():
        for k, ch in enumerate(s):
            if ch != " ":
                tiles[(r, col_lo + k)] = Tile.from_letter(ch)
    return BPD.make(Region(tiles), tiles)


def tile_letters(D: BPD) -> dict[int, str]:
    out: dict[int, str] = {}
    for (r, c), t in D.tiles:
        out[r] = out.get(r, "") + t.letter
    return out


def glue(*parts: BPD) -> BPD:
    tiles: dict[Cell, Tile] = {}
    for P in parts:
        for cell, t in P.tiles:
            if cell in tiles:
                raise ValueError(f"cell {cell} appears twice")
            tiles[cell] = t
    return BPD.make(Region(tiles), tiles)
