"""Planar ribbon diagrams: Hom bases, exact evaluation, and the Omega color.

Text format for fixtures (one slice per line, read top source to bottom
target; a leading ``src:`` line declares the source boundary word):

    src: t+ t-
    id:t+ x:over id:t-      # tokens act left to right on the running word

Tokens:
  ``id:L+`` / ``id:L-``      identity strand (minus means the dual label)
  ``x:over`` / ``x:under``   crossing of the two strands at the cursor
  ``twist:L+`` / ``twist:L-``  twist or its inverse
  ``cup:L`` / ``cup':L``     1 -> (L, L*) and the pivotal-primed 1 -> (L*, L)
  ``cap:L`` / ``cap':L``     (L*, L) -> 1 and the primed (L, L*) -> 1
  ``merge:A,B>C`` / ``merge:A,B>C:m``   fusion vertex (multiplicity m)
  ``split:C>A,B`` / ``split:C>A,B:m``   splitting vertex
  ``@k`` in place of a label colors the strand by the Omega loop k,
  expanded by :func:`omega_expand` into a dimension-weighted sum.

Coupons (arbitrary precomputed morphisms) are available on ``Diagram``
objects built in code, not in the text format.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllFormedDiagramError, InternalInconsistencyError
from .exactnum import Cyclotomic, ExactMatrix, inverse as matrix_inverse, rational
from .trees import (
    Morphism,
    all_trees,
    hom_dim,
    left_trace,
    loop_value,
    right_trace,
    theta as twist_value,
    hopf_link_value,
    tensor,
    trees,
)

__all__ = [
    "BoundaryWord",
    "HomBasis",
    "MorphismMatrix",
    "Diagram",
    "hom_basis",
    "eval_diagram",
    "omega_expand",
    "hom_pairing",
    "dual_basis",
    "parse_diagram",
    "loop_value",
    "twist_value",
    "hopf_link_value",
]


class BoundaryWord:
    """Ordered (label, orientation) pairs; minus points carry the dual label."""

    def __init__(self, points):
        self.points = tuple((lab, orient) for lab, orient in points)
        for lab, orient in self.points:
            if orient not in ("+", "-"):
                raise IllFormedDiagramError(f"bad orientation {orient!r} on {lab!r}")

    def internal(self, spec) -> tuple[str, ...]:
        out = []
        for lab, orient in self.points:
            if lab not in spec.dual:
                raise IllFormedDiagramError(f"unknown label {lab!r}")
            out.append(lab if orient == "+" else spec.dual[lab])
        return tuple(out)

    @staticmethod
    def plus(word) -> "BoundaryWord":
        return BoundaryWord([(lab, "+") for lab in word])

    def __repr__(self):
        return " ".join(f"{lab}{orient}" for lab, orient in self.points) or "(empty)"


@dataclass
class HomBasis:
    """Canonical basis of Hom(source, target): charge-matched tree pairs."""

    source: BoundaryWord
    target: BoundaryWord
    trees: list  # (charge, source_tree, target_tree), lexicographic

    @property
    def dim(self) -> int:
        return len(self.trees)


def hom_basis(spec, source: BoundaryWord, target: BoundaryWord) -> HomBasis:
    src = source.internal(spec)
    tgt = target.internal(spec)
    entries = []
    src_trees = all_trees(spec, src)
    tgt_trees = all_trees(spec, tgt)
    for c in spec.labels:
        for s in src_trees.get(c, []):
            for t in tgt_trees.get(c, []):
                entries.append((c, s, t))
    return HomBasis(source=source, target=target, trees=entries)


class MorphismMatrix:
    """A Hom-space element carried as charge-blocked tree matrices."""

    def __init__(self, morphism: Morphism):
        self.morphism = morphism

    @property
    def spec(self):
        return self.morphism.spec

    @property
    def source(self) -> BoundaryWord:
        return BoundaryWord.plus(self.morphism.src)

    @property
    def target(self) -> BoundaryWord:
        return BoundaryWord.plus(self.morphism.tgt)

    def basis_src(self) -> HomBasis:
        w = self.source
        return hom_basis(self.spec, w, w)

    def basis_tgt(self) -> HomBasis:
        w = self.target
        return hom_basis(self.spec, w, w)

    def coefficients(self):
        """Coefficient vector over hom_basis(source, target), in order."""
        basis = hom_basis(self.spec, self.source, self.target)
        out = []
        for c, s_tree, t_tree in basis.trees:
            blk = self.morphism.blocks.get(c)
            if blk is None:
                out.append(rational(0))
            else:
                rows = trees(self.spec, self.morphism.tgt, c)
                cols = trees(self.spec, self.morphism.src, c)
                out.append(blk[rows.index(t_tree), cols.index(s_tree)])
        return out

    def entries(self) -> ExactMatrix:
        """Block-diagonal matrix over the per-charge tree bases."""
        m = self.morphism
        labels = [c for c in self.spec.labels]
        rows = sum(hom_dim(self.spec, m.tgt, c) for c in labels)
        cols = sum(hom_dim(self.spec, m.src, c) for c in labels)
        out = ExactMatrix(rows, cols)
        r0 = c0 = 0
        for c in labels:
            blk = m.block(c)
            for i in range(blk.rows):
                for j in range(blk.cols):
                    out[r0 + i, c0 + j] = blk[i, j]
            r0 += blk.rows
            c0 += blk.cols
        return out

    def compose(self, other: "MorphismMatrix") -> "MorphismMatrix":
        return MorphismMatrix(self.morphism.compose(other.morphism))

    def tensor(self, other: "MorphismMatrix") -> "MorphismMatrix":
        return MorphismMatrix(tensor(self.morphism, other.morphism))

    def __add__(self, other):
        return MorphismMatrix(self.morphism + other.morphism)

    def scale(self, s) -> "MorphismMatrix":
        return MorphismMatrix(self.morphism.scale(s))

    def __eq__(self, other):
        if not isinstance(other, MorphismMatrix):
            return NotImplemented
        return self.morphism == other.morphism

    def is_zero(self):
        return self.morphism.is_zero()

    def scalar(self):
        return self.morphism.scalar()

    def __repr__(self):
        return f"MorphismMatrix({self.morphism.src} -> {self.morphism.tgt})"


@dataclass
class Diagram:
    """Slices of generator tokens plus optional in-code coupons."""

    source: BoundaryWord
    slices: list  # list of slice; a slice is a list of tokens / coupon objects

    def stack(self, other: "Diagram") -> "Diagram":
        return Diagram(source=self.source, slices=self.slices + other.slices)


@dataclass
class Coupon:
    value: MorphismMatrix


def parse_diagram(text: str) -> Diagram:
    src = None
    slices = []
    for raw in text.strip().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("src:"):
            pts = []
            for tok in line[4:].split():
                lab, orient = tok[:-1], tok[-1]
                pts.append((lab, orient))
            src = BoundaryWord(pts)
            continue
        slices.append(line.split())
    if src is None:
        raise IllFormedDiagramError("diagram text needs a 'src:' line")
    return Diagram(source=src, slices=slices)


def _resolve(spec, lab: str, orient: str) -> str:
    if lab not in spec.dual:
        raise IllFormedDiagramError(f"unknown label {lab!r}")
    return lab if orient == "+" else spec.dual[lab]


def _apply_token(spec, state: Morphism, pos: int, tok) -> tuple[Morphism, int]:
    """Apply one token at strand position ``pos``; return (state, new pos)."""
    word = state.tgt
    if isinstance(tok, Coupon):
        f = tok.value.morphism
        return state.apply_coupon(pos, f), pos + len(f.tgt)
    if tok.startswith("id:"):
        lab = _resolve(spec, tok[3:-1], tok[-1])
        if pos > len(word) or word[pos - 1] != lab:
            raise IllFormedDiagramError(
                f"strand {pos} carries {word[pos-1] if pos <= len(word) else None!r}, "
                f"token wants {lab!r}"
            )
        return state, pos + 1
    if tok in ("x:over", "x:under"):
        if pos + 1 > len(word):
            raise IllFormedDiagramError("crossing runs past the boundary word")
        return state.apply(("braid", pos, tok[2:])), pos + 2
    if tok.startswith("twist:"):
        sign = 1 if tok[-1] == "+" else -1
        return state.apply(("twist", pos, sign)), pos + 1
    if tok.startswith("cup':"):
        return state.apply(("cup", pos - 1, tok[5:], True)), pos + 2
    if tok.startswith("cup:"):
        return state.apply(("cup", pos - 1, tok[4:], False)), pos + 2
    if tok.startswith("cap':"):
        return state.apply(("cap", pos, tok[5:], True)), pos
    if tok.startswith("cap:"):
        return state.apply(("cap", pos, tok[4:], False)), pos
    if tok.startswith("merge:"):
        body = tok[6:]
        mu = 0
        if body.count(":"):
            body, mu_s = body.split(":")
            mu = int(mu_s)
        pair, out = body.split(">")
        a, b = pair.split(",")
        if word[pos - 1 : pos + 1] != (a, b):
            raise IllFormedDiagramError(
                f"merge expects ({a},{b}) at {pos}, found {word[pos-1:pos+1]}"
            )
        return state.apply(("merge", pos, out, mu)), pos + 1
    if tok.startswith("split:"):
        body = tok[6:]
        mu = 0
        if body.count(":"):
            body, mu_s = body.split(":")
            mu = int(mu_s)
        inp, pair = body.split(">")
        a, b = pair.split(",")
        if word[pos - 1] != inp:
            raise IllFormedDiagramError(
                f"split expects {inp!r} at {pos}, found {word[pos-1]!r}"
            )
        return state.apply(("split", pos, a, b, 0 if mu is None else mu)), pos + 2
    raise IllFormedDiagramError(f"unknown token {tok!r}")


def _has_omega(d: Diagram) -> bool:
    for sl in d.slices:
        for tok in sl:
            if isinstance(tok, str) and "@" in tok:
                return True
    return False


def eval_diagram(spec, d: Diagram) -> MorphismMatrix:
    """Exact morphism of a diagram; Omega markers must be expanded first."""
    if _has_omega(d):
        raise IllFormedDiagramError(
            "diagram contains Omega markers; call omega_expand instead"
        )
    state = Morphism.identity(spec, d.source.internal(spec))
    for k, sl in enumerate(d.slices, start=1):
        pos = 1
        try:
            for tok in sl:
                state, pos = _apply_token(spec, state, pos, tok)
        except IllFormedDiagramError as exc:
            raise IllFormedDiagramError(f"slice {k}: {exc}") from exc
        if pos != len(state.tgt) + 1:
            raise IllFormedDiagramError(
                f"slice {k}: consumed {pos - 1} strands of {len(state.tgt)}"
            )
    return MorphismMatrix(state)


def omega_expand(spec, d: Diagram) -> MorphismMatrix:
    """Expand Omega markers into dimension-weighted sums over the simples."""
    from .fusion import quantum_dims

    markers = set()
    for sl in d.slices:
        for tok in sl:
            if isinstance(tok, str) and "@" in tok:
                frag = tok.split("@", 1)[1]
                idx = ""
                for ch in frag:
                    if ch.isdigit():
                        idx += ch
                    else:
                        break
                markers.add(idx)
    if not markers:
        return eval_diagram(spec, d)
    markers = sorted(markers)
    omega, _ = quantum_dims(spec)
    total: MorphismMatrix | None = None
    from itertools import product

    for assign in product(spec.labels, repeat=len(markers)):
        table = dict(zip(markers, assign))
        weight = rational(1)
        for m in markers:
            weight = weight * omega.weights[table[m]]
        sub = Diagram(
            source=BoundaryWord(
                [
                    (table[lab[1:]] if lab.startswith("@") else lab, o)
                    for lab, o in d.source.points
                ]
            ),
            slices=[
                [
                    _substitute(tok, table) if isinstance(tok, str) else tok
                    for tok in sl
                ]
                for sl in d.slices
            ],
        )
        term = eval_diagram(spec, sub).scale(weight)
        total = term if total is None else total + term
    return total


def _substitute(tok: str, table: dict) -> str:
    out = tok
    for idx, lab in table.items():
        out = out.replace(f"@{idx}", lab)
    return out


def hom_pairing(spec, f: MorphismMatrix, g: MorphismMatrix) -> Cyclotomic:
    """Nondegenerate pairing: spherical trace of g o f."""
    comp = g.morphism.compose(f.morphism)
    return right_trace(spec, comp)


def elementary_basis(spec, source: BoundaryWord, target: BoundaryWord):
    """Hom-space basis as MorphismMatrix values (unit coefficient each)."""
    src = source.internal(spec)
    tgt = target.internal(spec)
    basis = hom_basis(spec, source, target)
    out = []
    for c, s_tree, t_tree in basis.trees:
        rows = trees(spec, tgt, c)
        cols = trees(spec, src, c)
        m = ExactMatrix.zeros(len(rows), len(cols))
        m[rows.index(t_tree), cols.index(s_tree)] = rational(1)
        out.append(MorphismMatrix(Morphism(spec, src, tgt, {c: m})))
    return out


def dual_basis(spec, x: BoundaryWord, y: BoundaryWord):
    """Paired bases (phi_i, phi^i) of Hom(x,y) and Hom(y,x), pairing delta_ij."""
    fwd = elementary_basis(spec, x, y)
    bwd = elementary_basis(spec, y, x)
    if len(fwd) != len(bwd):
        raise InternalInconsistencyError("Hom spaces of mismatched dimension")
    n = len(fwd)
    if n == 0:
        return [], []
    gram = ExactMatrix(n, n)
    for i, phi in enumerate(fwd):
        for j, psi in enumerate(bwd):
            gram[j, i] = hom_pairing(spec, phi, psi)
    try:
        ginv = matrix_inverse(gram)
    except Exception as exc:
        raise InternalInconsistencyError(
            f"degenerate Hom pairing between {x} and {y}: {exc}"
        ) from exc
    duals = []
    for i in range(n):
        acc = None
        for j in range(n):
            term = bwd[j].scale(ginv[i, j])
            acc = term if acc is None else acc + term
        duals.append(acc)
    return fwd, duals
