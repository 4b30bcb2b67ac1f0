"""Brute-force counts for plane partitions in a box.

Two independent routes: a transfer count over the rows of the array, and
direct enumeration of non-intersecting lattice-path families.  Both are
meant as oracles for the determinant and product evaluations, so they rely
on nothing but counting.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, prod

from .catalog import build_matrix, eval_product
from .detcore import det
from .errors import BadSpecError, SizeLimitError
from .report import FAIL, PASS, CheckResult

BOX_LIMIT = 6
LGV_WORK_LIMIT = 10 ** 11  # product of single-path counts


@dataclass(frozen=True)
class BoxSpec:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise BadSpecError(f"box side {name}={v!r} must be a nonnegative integer")

    def guard(self, limit=BOX_LIMIT):
        if max(self.a, self.b, self.c) > limit:
            raise SizeLimitError(f"box {self.a}x{self.b}x{self.c} exceeds side {limit}")


def _box(box):
    if isinstance(box, BoxSpec):
        return box
    return BoxSpec(*box)


def _rows(length, top):
    """Weakly decreasing tuples of ``length`` with entries in ``[0, top]``."""
    # choose the multiset of entries, then sort descending
    out = []
    for cut in combinations(range(length + top), length):
        out.append(tuple(sorted((c - i for i, c in enumerate(cut)), reverse=True)))
    return out


def count_plane_partitions(box):
    """Number of ``a x b`` arrays with entries in ``[0, c]`` decreasing weakly
    along rows and columns."""
    box = _box(box)
    box.guard()
    a, b, c = box.a, box.b, box.c
    if a == 0 or b == 0 or c == 0:
        return 1
    rows = _rows(b, c)
    counts = {r: 1 for r in rows}
    for _ in range(a - 1):
        nxt = {}
        for below in rows:
            nxt[below] = sum(n for above, n in counts.items()
                             if all(x <= y for x, y in zip(below, above)))
        counts = nxt
    return sum(counts.values())


def lgv_endpoints(box, variant):
    """Start and end points of path ``i = 0..c-1``."""
    a, b, c = box.a, box.b, box.c
    if variant == "toeplitz":
        return [((-i - a, i), (-i, i + b)) for i in range(c)]
    if variant == "shifted":
        return [((-i - a, 0), (0, i + b)) for i in range(c)]
    raise BadSpecError(f"unknown path variant {variant!r}")


def _paths(start, end):
    """All east/north paths as frozensets of visited lattice points."""
    (x0, y0), (x1, y1) = start, end
    dx, dy = x1 - x0, y1 - y0
    if dx < 0 or dy < 0:
        return []
    out = []
    for east in combinations(range(dx + dy), dx):
        east = set(east)
        x, y = x0, y0
        pts = [(x, y)]
        for k in range(dx + dy):
            if k in east:
                x += 1
            else:
                y += 1
            pts.append((x, y))
        out.append(frozenset(pts))
    return out


def count_lgv_paths(box, variant="toeplitz"):
    """Number of vertex-disjoint path families ``P_i : start_i -> end_i``."""
    box = _box(box)
    box.guard()
    ends = lgv_endpoints(box, variant)
    if not ends:
        return 1
    sizes = [comb(e[0] - s[0] + e[1] - s[1], e[0] - s[0]) for s, e in ends]
    if prod(sizes) > LGV_WORK_LIMIT:
        raise SizeLimitError(f"path enumeration for {box} too large", work=prod(sizes))
    paths = [_paths(s, e) for s, e in ends]
    index = {pt: k for k, pt in enumerate(sorted(set().union(*(p for ps in paths for p in ps))))}
    masks = [[sum(1 << index[pt] for pt in p) for p in ps] for ps in paths]

    def extend(k, used):
        if k == len(masks):
            return 1
        return sum(extend(k + 1, used | p) for p in masks[k] if not used & p)

    return extend(0, 0)


def macmahon_product(a, b, c):
    return eval_product("rhs.macmahon", {"a": a, "b": b, "c": c})


def verify_macmahon_triangle(box, enumerate_limit=4):
    """Both determinants, the product, and (for small boxes) the brute counts."""
    box = _box(box)
    a, b, c = box.a, box.b, box.c
    values = {
        "toeplitz_det": det(build_matrix("MacMahonToeplitz", c, a=a, b=b)) if c else 1,
        "binomial_det": det(build_matrix("SymmetricBinomial", c, a=a, b=b)) if c else 1,
        "product": macmahon_product(a, b, c),
    }
    if max(a, b, c) <= enumerate_limit:
        values["plane_partitions"] = count_plane_partitions(box)
        values["lgv_toeplitz"] = count_lgv_paths(box, "toeplitz")
        values["lgv_shifted"] = count_lgv_paths(box, "shifted")
    details = {"a": a, "b": b, "c": c, **values}
    if len(set(values.values())) == 1:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, values, "MACMAHON_MISMATCH")


def symmetric_under_permutations(box, counter=count_plane_partitions):
    box = _box(box)
    vals = {p: counter(BoxSpec(*p)) for p in permutations((box.a, box.b, box.c))}
    return len(set(vals.values())) == 1, vals
