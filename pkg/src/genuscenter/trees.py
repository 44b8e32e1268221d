"""Fusion-tree bases and the exact strand-diagram engine.

Morphisms between tensor words of simple labels are stored blockwise:
for each simple charge c, the matrix of the post-composition action
Hom(c, source) -> Hom(c, target) on left-nested splitting trees.  Every
diagram generator (braid, twist, cup, cap, split, merge, coupon) is a
local rewrite of those trees whose coefficients come from F, R, and the
pivotal data.

Tree encoding for a word (w_1, ..., w_m): ``(es, mus)`` where
``es[k-1]`` is the charge after absorbing ``w_k`` (so ``es[0] = w_1``
and ``es[-1]`` is the total charge) and ``mus[k-2]`` indexes the vertex
``es[k-1] -> es[k-2] (x) w_k``.

Duality normalization: fusion vertices are dual to splitting vertices
(``w o v = id``), cups are plain coevaluations, and cap coefficients are
solved from the zig-zag so that bent strands straighten with no scalar.
Primed cups/caps absorb the pivotal coefficients; closed loops then
evaluate to the quantum dimensions.
"""

from __future__ import annotations

from .errors import IllFormedDiagramError, InternalInconsistencyError
from .exactnum import Cyclotomic, ExactMatrix, rational

ONE = rational(1)

Word = tuple[str, ...]
Tree = tuple[tuple[str, ...], tuple[int, ...]]


def all_trees(spec, word: Word) -> dict[str, list[Tree]]:
    """Left-nested splitting trees of ``word``, grouped by total charge."""
    key = ("trees", word)
    if key in spec._cache:
        return spec._cache[key]
    partial: list[Tree] = []
    if len(word) == 0:
        out = {spec.unit: [((), ())]}
        spec._cache[key] = out
        return out
    partial = [((word[0],), ())]
    for k in range(1, len(word)):
        nxt: list[Tree] = []
        for es, mus in partial:
            for c in spec.channels(es[-1], word[k]):
                for mu in range(spec.N(es[-1], word[k], c)):
                    nxt.append((es + (c,), mus + (mu,)))
        partial = nxt
    out: dict[str, list[Tree]] = {}
    for t in partial:
        out.setdefault(t[0][-1], []).append(t)
    for ts in out.values():
        ts.sort()
    spec._cache[key] = out
    return out


def trees(spec, word: Word, charge: str) -> list[Tree]:
    return all_trees(spec, word).get(charge, [])


def tree_charge(spec, tree: Tree) -> str:
    return tree[0][-1] if tree[0] else spec.unit


def hom_dim(spec, word: Word, charge: str) -> int:
    return len(trees(spec, word, charge))


# ---------------------------------------------------------------------------
# cap normalization


def ev_coeff(spec, a: str) -> Cyclotomic:
    """Coefficient of ev_a on the dual fusion vertex, from the zig-zag."""
    key = ("ev", a)
    if key in spec._cache:
        return spec._cache[key]
    astar = spec.dual[a]
    _, _, blk = spec.f_block(a, astar, a, a)
    u = spec.unit
    entry = blk.get(((u, 0, 0), (u, 0, 0)))
    if entry is None or entry.is_zero():
        raise InternalInconsistencyError(
            f"{spec.name}: F[{a},{astar},{a};{a}] unit-unit entry vanishes"
        )
    val = entry.inverse()
    spec._cache[key] = val
    return val


# ---------------------------------------------------------------------------
# tree-level generator actions


def _expose(spec, word: Word, tree: Tree, i: int):
    """Rewrite so strands (i, i+1) meet at their own vertex.

    In the exposed tuple the slot ``es[i-1]`` holds the pair charge f,
    ``mus[i-2]`` the pair vertex, and ``mus[i-1]`` the spine vertex
    ``es[i] -> es[i-2] (x) f``.  Position 1 is exposed already.
    """
    if i == 1:
        return [(tree, ONE)]
    es, mus = tree
    a, d = es[i - 2], es[i]
    b, c = word[i - 1], word[i]
    _, _, blk = spec.f_block(a, b, c, d)
    row = (es[i - 1], mus[i - 2], mus[i - 1])
    out = []
    for (rk, ck), v in blk.items():
        if rk != row:
            continue
        f, nu, rho = ck
        out.append(
            (
                (
                    es[: i - 1] + (f,) + es[i:],
                    mus[: i - 2] + (nu, rho) + mus[i:],
                ),
                v,
            )
        )
    return out


def _unexpose(spec, word: Word, tree: Tree, i: int):
    """Inverse of :func:`_expose` on the (possibly relabeled) word."""
    if i == 1:
        return [(tree, ONE)]
    es, mus = tree
    a, d = es[i - 2], es[i]
    b, c = word[i - 1], word[i]
    _, _, blk = spec.f_inverse(a, b, c, d)
    col = (es[i - 1], mus[i - 2], mus[i - 1])
    out = []
    for (ck, rk), v in blk.items():
        if ck != col:
            continue
        e, al, be = rk
        out.append(
            (
                (
                    es[: i - 1] + (e,) + es[i:],
                    mus[: i - 2] + (al, be) + mus[i:],
                ),
                v,
            )
        )
    return out


def _pair_slots(tree: Tree, i: int):
    es, mus = tree
    if i == 1:
        return es[1], mus[0]
    return es[i - 1], mus[i - 2]


def _op_new_word(spec, word: Word, op) -> Word:
    kind = op[0]
    if kind == "braid":
        _, i, _ = op
        return word[: i - 1] + (word[i], word[i - 1]) + word[i + 1 :]
    if kind == "twist":
        return word
    if kind == "merge":
        _, i, c, _ = op
        return word[: i - 1] + (c,) + word[i + 1 :]
    if kind == "split":
        _, i, a, b, _ = op
        return word[: i - 1] + (a, b) + word[i:]
    if kind == "cup":
        _, g, a, primed = op
        pair = (spec.dual[a], a) if primed else (a, spec.dual[a])
        return word[:g] + pair + word[g:]
    if kind == "cap":
        _, i, _, _ = op
        return word[: i - 1] + word[i + 1 :]
    if kind == "unit_insert":
        _, g = op
        return word[:g] + (spec.unit,) + word[g:]
    if kind == "unit_remove":
        _, i = op
        return word[: i - 1] + word[i:]
    raise ValueError(f"unknown op {op!r}")


def _apply_tree(spec, word: Word, tree: Tree, op):
    """Action of a generator on one basis tree: list of (tree', coeff)."""
    kind = op[0]
    es, mus = tree

    if kind == "twist":
        _, i, sign = op
        th = theta(spec, word[i - 1])
        return [(tree, th if sign > 0 else th.inverse())]

    if kind == "braid":
        _, i, direction = op
        a, b = word[i - 1], word[i]
        new_word = _op_new_word(spec, word, op)
        out = []
        for exp, v1 in _expose(spec, word, tree, i):
            f, nu = _pair_slots(exp, i)
            if direction == "over":
                rmat = spec.r_matrix(a, b, f)
            else:
                rmat = spec.r_inverse_matrix(b, a, f)
            for nu2 in range(rmat.rows):
                coeff = rmat[nu2, nu]
                if coeff.is_zero():
                    continue
                ees, mmus = exp
                if i == 1:
                    cand = ((new_word[0],) + ees[1:], (nu2,) + mmus[1:])
                else:
                    cand = (ees, mmus[: i - 2] + (nu2,) + mmus[i - 1 :])
                for t2, v2 in _unexpose(spec, new_word, cand, i):
                    out.append((t2, v1 * coeff * v2))
        return out

    if kind == "merge":
        _, i, c, nu0 = op
        out = []
        for exp, v1 in _expose(spec, word, tree, i):
            f, nu = _pair_slots(exp, i)
            if f != c or nu != nu0:
                continue
            ees, mmus = exp
            if i == 1:
                t2 = ((c,) + ees[2:], mmus[1:])
            else:
                t2 = (ees[: i - 1] + ees[i:], mmus[: i - 2] + (mmus[i - 1],) + mmus[i:])
            out.append((t2, v1))
        return out

    if kind == "split":
        _, i, a, b, mu0 = op
        x = word[i - 1]
        if spec.N(a, b, x) <= mu0:
            return []
        new_word = _op_new_word(spec, word, op)
        if i == 1:
            return [(((a, x) + es[1:], (mu0,) + mus), ONE)]
        exp = (es[: i - 1] + (x,) + es[i - 1 :], mus[: i - 2] + (mu0, mus[i - 2]) + mus[i - 1 :])
        return _unexpose(spec, new_word, exp, i)

    if kind == "cup":
        _, g, a, primed = op
        if primed:
            scale = spec.pivotal_coeff(a).inverse()
            inner = ("cup", g, spec.dual[a], False)
            return [(t, scale * v) for t, v in _apply_tree(spec, word, tree, inner)]
        new_word = _op_new_word(spec, word, op)
        u = spec.unit
        if g == 0:
            if not es:
                return [(((a, u), (0,)), ONE)]
            return [(((a, u) + es, (0, 0) + mus), ONE)]
        exp = (es[:g] + (u, es[g - 1]) + es[g:], mus[: g - 1] + (0, 0) + mus[g - 1 :])
        return _unexpose(spec, new_word, exp, g + 1)

    if kind == "cap":
        _, i, a, primed = op
        if primed:
            scale = spec.pivotal_coeff(a)
            inner = ("cap", i, spec.dual[a], False)
            return [(t, scale * v) for t, v in _apply_tree(spec, word, tree, inner)]
        astar = spec.dual[a]
        if word[i - 1] != astar or word[i] != a:
            raise IllFormedDiagramError(
                f"cap({a}) expects strands ({astar},{a}) at position {i}, "
                f"found ({word[i-1]},{word[i]})"
            )
        lam = ev_coeff(spec, a)
        u = spec.unit
        out = []
        for exp, v1 in _expose(spec, word, tree, i):
            f, _ = _pair_slots(exp, i)
            if f != u:
                continue
            ees, mmus = exp
            if i == 1:
                t2 = (ees[2:], mmus[2:])
            else:
                if ees[i] != ees[i - 2]:
                    continue
                t2 = (ees[: i - 1] + ees[i + 1 :], mmus[: i - 2] + mmus[i:])
            out.append((t2, v1 * lam))
        return out

    if kind == "unit_insert":
        _, g = op
        u = spec.unit
        if g == 0:
            if not es:
                return [(((u,), ()), ONE)]
            return [(((u,) + es, (0,) + mus), ONE)]
        return [((es[:g] + (es[g - 1],) + es[g:], mus[: g - 1] + (0,) + mus[g - 1 :]), ONE)]

    if kind == "unit_remove":
        _, i = op
        if word[i - 1] != spec.unit:
            raise IllFormedDiagramError(f"strand {i} is not the unit")
        if i == 1:
            return [((es[1:], mus[1:]), ONE)]
        return [((es[: i - 1] + es[i:], mus[: i - 2] + mus[i - 1 :]), ONE)]

    raise ValueError(f"unknown op {op!r}")


def _op_map(spec, word: Word, op):
    """Cached sparse action {tree: [(tree', coeff)]} plus the new word."""
    key = ("opmap", word, op)
    if key in spec._cache:
        return spec._cache[key]
    new_word = _op_new_word(spec, word, op)
    mapping: dict[Tree, list] = {}
    for ts in all_trees(spec, word).values():
        for t in ts:
            mapping[t] = _apply_tree(spec, word, t, op)
    out = (new_word, mapping)
    spec._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """Exact morphism between tensor words, stored charge-blockwise."""

    __slots__ = ("spec", "src", "tgt", "blocks")

    def __init__(self, spec, src: Word, tgt: Word, blocks: dict[str, ExactMatrix]):
        self.spec = spec
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.blocks = blocks

    @staticmethod
    def identity(spec, word: Word) -> "Morphism":
        word = tuple(word)
        blocks = {
            c: ExactMatrix.identity(len(ts)) for c, ts in all_trees(spec, word).items()
        }
        return Morphism(spec, word, word, blocks)

    @staticmethod
    def zero(spec, src: Word, tgt: Word) -> "Morphism":
        return Morphism(spec, tuple(src), tuple(tgt), {})

    def block(self, charge: str) -> ExactMatrix:
        got = self.blocks.get(charge)
        if got is not None:
            return got
        return ExactMatrix.zeros(
            hom_dim(self.spec, self.tgt, charge), hom_dim(self.spec, self.src, charge)
        )

    def compose(self, other: "Morphism") -> "Morphism":
        """self o other (other acts first)."""
        if other.tgt != self.src:
            raise IllFormedDiagramError(
                f"cannot compose: middle words {other.tgt} vs {self.src}"
            )
        blocks = {}
        for c in set(self.blocks) & set(other.blocks):
            m = self.blocks[c] @ other.blocks[c]
            if not m.is_zero():
                blocks[c] = m
        return Morphism(self.spec, other.src, self.tgt, blocks)

    def __add__(self, other: "Morphism") -> "Morphism":
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise IllFormedDiagramError("cannot add morphisms of different shapes")
        blocks = dict(self.blocks)
        for c, m in other.blocks.items():
            blocks[c] = blocks[c] + m if c in blocks else m
        return Morphism(self.spec, self.src, self.tgt, blocks)

    def scale(self, s: Cyclotomic) -> "Morphism":
        return Morphism(
            self.spec, self.src, self.tgt, {c: m.scale(s) for c, m in self.blocks.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        if (self.src, self.tgt) != (other.src, other.tgt):
            return False
        for c in set(self.blocks) | set(other.blocks):
            if not (self.block(c) - other.block(c)).is_zero():
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def scalar(self) -> Cyclotomic:
        """Value of an endomorphism of the empty word."""
        if self.src or self.tgt:
            raise IllFormedDiagramError("scalar() needs an empty-word endomorphism")
        m = self.blocks.get(self.spec.unit)
        return m[0, 0] if m is not None else rational(0)

    def apply(self, op) -> "Morphism":
        """Post-compose one generator acting on the target word."""
        spec = self.spec
        new_word, mapping = _op_map(spec, self.tgt, op)
        old_trees = all_trees(spec, self.tgt)
        new_index = {
            c: {t: k for k, t in enumerate(ts)}
            for c, ts in all_trees(spec, new_word).items()
        }
        blocks = {}
        for c, m in self.blocks.items():
            rows_old = old_trees.get(c, [])
            idx = new_index.get(c)
            if idx is None:
                continue
            out = ExactMatrix.zeros(len(idx), m.cols)
            nonzero = False
            for r_old, t_old in enumerate(rows_old):
                for t_new, coeff in mapping[t_old]:
                    r_new = idx[t_new]
                    row_src = m.data[r_old]
                    row_dst = out.data[r_new]
                    for j in range(m.cols):
                        v = row_src[j]
                        if not v.is_zero():
                            row_dst[j] = row_dst[j] + coeff * v
                            nonzero = True
            if nonzero:
                blocks[c] = out
        return Morphism(spec, self.src, new_word, blocks)

    def apply_all(self, ops) -> "Morphism":
        out = self
        for op in ops:
            out = out.apply(op)
        return out

    def apply_coupon(self, pos: int, f: "Morphism") -> "Morphism":
        """Post-compose ``1 (x) f (x) 1`` with f's source at strand ``pos``."""
        spec = self.spec
        src_w, tgt_w = f.src, f.tgt
        if self.tgt[pos - 1 : pos - 1 + len(src_w)] != src_w:
            raise IllFormedDiagramError(
                f"coupon source {src_w} does not match strands at {pos} of {self.tgt}"
            )
        new_tgt = self.tgt[: pos - 1] + tgt_w + self.tgt[pos - 1 + len(src_w) :]
        total = Morphism.zero(spec, self.src, new_tgt)
        src_trees = all_trees(spec, src_w)
        tgt_trees = all_trees(spec, tgt_w)
        for d, m in f.blocks.items():
            for r, t_tree in enumerate(tgt_trees.get(d, [])):
                for ccol, s_tree in enumerate(src_trees.get(d, [])):
                    coeff = m[r, ccol]
                    if coeff.is_zero():
                        continue
                    chain = self._fuse_chain(pos, src_w, s_tree, d)
                    chain = _split_chain(spec, chain, pos, tgt_w, t_tree, d)
                    total = total + chain.scale(coeff)
        return total

    def _fuse_chain(self, pos: int, src_w: Word, s_tree: Tree, d: str) -> "Morphism":
        state = self
        if len(src_w) == 0:
            return state.apply(("unit_insert", pos - 1))
        es, mus = s_tree
        for k in range(2, len(src_w) + 1):
            state = state.apply(("merge", pos, es[k - 1], mus[k - 2]))
        return state


def _split_chain(spec, state: Morphism, pos: int, tgt_w: Word, t_tree: Tree, d: str) -> Morphism:
    if len(tgt_w) == 0:
        return state.apply(("unit_remove", pos))
    es, mus = t_tree
    for k in range(len(tgt_w), 1, -1):
        state = state.apply(("split", pos, es[k - 2], tgt_w[k - 1], mus[k - 2]))
    return state


def tensor(f: Morphism, g: Morphism) -> Morphism:
    """f (x) g via two coupon insertions."""
    spec = f.spec
    base = Morphism.identity(spec, f.src + g.src)
    out = base.apply_coupon(1, f)
    return out.apply_coupon(len(f.tgt) + 1, g)


# ---------------------------------------------------------------------------
# traces and closed diagrams


def right_trace(spec, h: Morphism) -> Cyclotomic:
    if h.src != h.tgt:
        raise IllFormedDiagramError("trace needs an endomorphism")
    w = h.src
    m = len(w)
    state = Morphism.identity(spec, ())
    for k in range(1, m + 1):
        state = state.apply(("cup", k - 1, w[k - 1], False))
    state = state.apply_coupon(1, h)
    for k in range(m, 0, -1):
        state = state.apply(("cap", k, w[k - 1], True))
    return state.scalar()


def left_trace(spec, h: Morphism) -> Cyclotomic:
    if h.src != h.tgt:
        raise IllFormedDiagramError("trace needs an endomorphism")
    w = h.src
    m = len(w)
    state = Morphism.identity(spec, ())
    for k in range(m, 0, -1):
        state = state.apply(("cup", m - k, w[k - 1], True))
    state = state.apply_coupon(m + 1, h)
    for k in range(1, m + 1):
        state = state.apply(("cap", m - k + 1, w[k - 1], False))
    return state.scalar()


def loop_value(spec, a: str, side: str = "right") -> Cyclotomic:
    key = ("loop", a, side)
    if key in spec._cache:
        return spec._cache[key]
    h = Morphism.identity(spec, (a,))
    val = right_trace(spec, h) if side == "right" else left_trace(spec, h)
    spec._cache[key] = val
    return val


def theta(spec, a: str) -> Cyclotomic:
    """Twist scalar from the right-closed positive curl."""
    key = ("theta", a)
    if key in spec._cache:
        return spec._cache[key]
    state = Morphism.identity(spec, (a,))
    state = state.apply(("cup", 1, a, False))
    state = state.apply(("braid", 1, "over"))
    state = state.apply(("cap", 2, a, True))
    blk = state.blocks.get(a)
    val = blk[0, 0] if blk is not None else rational(0)
    spec._cache[key] = val
    return val


def hopf_link_value(spec, a: str, b: str) -> Cyclotomic:
    """Closed double braiding of an a-loop and a b-loop."""
    state = Morphism.identity(spec, ())
    state = state.apply(("cup", 0, a, False))
    state = state.apply(("cup", 2, b, False))
    state = state.apply(("braid", 2, "over"))
    state = state.apply(("braid", 2, "over"))
    state = state.apply(("cap", 1, a, True))
    state = state.apply(("cap", 1, b, True))
    return state.scalar()
