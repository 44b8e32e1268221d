"""Skeletal premodular category data and exact axiom validators.

A ``CategorySpec`` holds labels, fusion multiplicities N_{ab}^c, F and R
recoupling data, and pivotal coefficients, all over exact cyclotomics.
The F convention, on splitting trees read top-down, is

    (v[e->ab]_alpha (x) 1_c) o v[d->ec]_beta
      = sum_{f,mu,nu} F[abc;d][(e,alpha,beta),(f,mu,nu)]
                      (1_a (x) v[f->bc]_mu) o v[d->af]_nu

and the R convention is  c_{a,b} o v[c->ab]_mu = sum_nu R[ab;c][nu,mu] v[c->ba]_nu.
Unit-leg F and R blocks are the identity (strict-unit gauge); catalogs
store only the non-unit blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import IncompleteDataError, PremodularRequiredError
from .exactnum import Cyclotomic, ExactMatrix, matrix_rank, rational

__all__ = [
    "CategorySpec",
    "OmegaColor",
    "ValidationReport",
    "validate_structure",
    "check_pentagon",
    "check_hexagon",
    "quantum_dims",
    "check_spherical_ribbon",
    "s_matrix_and_transparency",
]

ONE = rational(1)
ZERO = rational(0)


@dataclass
class CategorySpec:
    """Skeletal premodular (or spherical-fusion-only when R is None) data."""

    name: str
    labels: tuple[str, ...]
    unit: str
    dual: dict[str, str]
    fusion: dict[tuple[str, str, str], int]
    F: dict[tuple[str, str, str, str], dict]
    R: dict[tuple[str, str, str], dict] | None
    pivotal: dict[str, Cyclotomic]
    provenance: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- fusion combinatorics -----------------------------------------

    def N(self, a: str, b: str, c: str) -> int:
        return self.fusion.get((a, b, c), 0)

    def channels(self, a: str, b: str):
        """Labels c with N_{ab}^c > 0, in catalog label order."""
        return [c for c in self.labels if self.N(a, b, c) > 0]

    def require_braiding(self):
        if self.R is None:
            raise PremodularRequiredError(
                f"category {self.name!r} has no braiding data; "
                "a premodular spec is required"
            )

    # -- F / R block access ---------------------------------------------

    def f_rows(self, a, b, c, d):
        """Row keys (e, alpha, beta) of the F block for (a,b,c;d)."""
        keys = []
        for e in self.labels:
            n1, n2 = self.N(a, b, e), self.N(e, c, d)
            for alpha in range(n1):
                for beta in range(n2):
                    keys.append((e, alpha, beta))
        return keys

    def f_cols(self, a, b, c, d):
        """Column keys (f, mu, nu) of the F block for (a,b,c;d)."""
        keys = []
        for f in self.labels:
            n1, n2 = self.N(b, c, f), self.N(a, f, d)
            for mu in range(n1):
                for nu in range(n2):
                    keys.append((f, mu, nu))
        return keys

    def f_block(self, a, b, c, d):
        """The F block as {(row_key, col_key): Cyclotomic}; identity on unit legs."""
        key = ("F", a, b, c, d)
        if key in self._cache:
            return self._cache[key]
        rows = self.f_rows(a, b, c, d)
        cols = self.f_cols(a, b, c, d)
        unit = self.unit
        if a == unit or b == unit or c == unit:
            # Strict-unit gauge: the recoupling is the obvious relabeling.
            if a == unit:
                pair = {((e, al, be), (f, mu, nu)): be == mu for (e, al, be) in rows
                        for (f, mu, nu) in cols}
            elif b == unit:
                pair = {((e, al, be), (f, mu, nu)): be == nu for (e, al, be) in rows
                        for (f, mu, nu) in cols}
            else:
                pair = {((e, al, be), (f, mu, nu)): al == nu for (e, al, be) in rows
                        for (f, mu, nu) in cols}
            block = {k: ONE for k, hit in pair.items() if hit}
        else:
            block = self.F.get((a, b, c, d))
            if block is None:
                if rows:
                    raise IncompleteDataError(
                        f"{self.name}: missing F entry for admissible channel "
                        f"({a},{b},{c};{d})"
                    )
                block = {}
        out = (rows, cols, block)
        self._cache[key] = out
        return out

    def f_matrix(self, a, b, c, d) -> ExactMatrix:
        rows, cols, block = self.f_block(a, b, c, d)
        m = ExactMatrix(len(rows), len(cols))
        for i, rk in enumerate(rows):
            for j, ck in enumerate(cols):
                v = block.get((rk, ck))
                if v is not None:
                    m[i, j] = v
        return m

    def f_inverse(self, a, b, c, d):
        """Inverse block as {(col_key, row_key): Cyclotomic}."""
        key = ("Finv", a, b, c, d)
        if key in self._cache:
            return self._cache[key]
        rows, cols, _ = self.f_block(a, b, c, d)
        from .exactnum import inverse as minv

        m = self.f_matrix(a, b, c, d)
        if m.rows != m.cols:
            raise IncompleteDataError(
                f"{self.name}: F block ({a},{b},{c};{d}) is not square "
                f"({m.rows}x{m.cols}); fusion rules are inconsistent"
            )
        block = {}
        if m.rows:
            inv = minv(m)
            for i, ck in enumerate(cols):
                for j, rk in enumerate(rows):
                    if not inv[i, j].is_zero():
                        block[(ck, rk)] = inv[i, j]
        out = (cols, rows, block)
        self._cache[key] = out
        return out

    def r_keys(self, a, b, c):
        return list(range(self.N(a, b, c)))

    def r_block(self, a, b, c):
        """{(nu, mu): Cyclotomic} for c_{a,b} on channel c; identity on unit legs."""
        self.require_braiding()
        n = self.N(a, b, c)
        if a == self.unit or b == self.unit:
            return {(i, i): ONE for i in range(n)}
        block = self.R.get((a, b, c))
        if block is None:
            if n:
                raise IncompleteDataError(
                    f"{self.name}: missing R entry for admissible channel ({a},{b};{c})"
                )
            return {}
        return block

    def r_matrix(self, a, b, c) -> ExactMatrix:
        n = self.N(a, b, c)
        block = self.r_block(a, b, c)
        m = ExactMatrix(n, n)
        for (nu, mu), v in block.items():
            m[nu, mu] = v
        return m

    def r_inverse_matrix(self, a, b, c) -> ExactMatrix:
        key = ("Rinv", a, b, c)
        if key in self._cache:
            return self._cache[key]
        from .exactnum import inverse as minv

        m = self.r_matrix(a, b, c)
        out = minv(m) if m.rows else m
        self._cache[key] = out
        return out

    def pivotal_coeff(self, a: str) -> Cyclotomic:
        return self.pivotal.get(a, ONE)

    def field_order(self) -> int:
        """lcm of the orders of every stored scalar."""
        order = 1
        for block in self.F.values():
            for v in block.values():
                order = math.lcm(order, v.order)
        if self.R:
            for block in self.R.values():
                for v in block.values():
                    order = math.lcm(order, v.order)
        for v in self.pivotal.values():
            order = math.lcm(order, v.order)
        return order


@dataclass(frozen=True)
class OmegaColor:
    """Quantum dimensions of the simples and their squared total."""

    weights: dict[str, Cyclotomic]
    total: Cyclotomic


@dataclass
class ValidationReport:
    entries: list[str]

    @property
    def ok(self) -> bool:
        return not self.entries

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "\n".join(self.entries)


def validate_structure(spec: CategorySpec) -> ValidationReport:
    """Unit, dual, and fusion-consistency invariants; label hygiene."""
    bad: list[str] = []
    labels = set(spec.labels)
    if len(labels) != len(spec.labels):
        bad.append("duplicate labels")
    if spec.unit not in labels:
        bad.append(f"unknown unit label {spec.unit!r}")
        return ValidationReport(bad)

    for a, b in spec.dual.items():
        if a not in labels or b not in labels:
            bad.append(f"dual table references unknown label in {a!r} -> {b!r}")
    for a in spec.labels:
        da = spec.dual.get(a)
        if da is None:
            bad.append(f"dual missing for label {a!r}")
        elif spec.dual.get(da) != a:
            bad.append(f"dual is not involutive at {a!r}")

    for (a, b, c), n in spec.fusion.items():
        if n < 0:
            bad.append(f"negative multiplicity N({a},{b};{c})")
        for x in (a, b, c):
            if x not in labels:
                bad.append(f"fusion table references unknown label {x!r}")

    unit = spec.unit
    for a in spec.labels:
        for b in spec.labels:
            if spec.N(unit, a, b) != (1 if a == b else 0):
                bad.append(f"unit rule fails: N(1,{a};{b}) = {spec.N(unit, a, b)}")
            if spec.N(a, unit, b) != (1 if a == b else 0):
                bad.append(f"unit rule fails: N({a},1;{b}) = {spec.N(a, unit, b)}")
            want = 1 if spec.dual.get(a) == b else 0
            if spec.N(a, b, unit) != want:
                bad.append(f"dual rule fails: N({a},{b};1) = {spec.N(a, b, unit)}")

    # Associativity of multiplicities: F blocks must be square.
    for a in spec.labels:
        for b in spec.labels:
            for c in spec.labels:
                for d in spec.labels:
                    lhs = sum(spec.N(a, b, e) * spec.N(e, c, d) for e in spec.labels)
                    rhs = sum(spec.N(b, c, f) * spec.N(a, f, d) for f in spec.labels)
                    if lhs != rhs:
                        bad.append(
                            f"fusion not associative at ({a},{b},{c};{d}): {lhs} != {rhs}"
                        )

    if spec.pivotal_coeff(unit) != ONE:
        bad.append("pivotal coefficient of the unit must be 1")
    for a in spec.pivotal:
        if a not in labels:
            bad.append(f"pivotal table references unknown label {a!r}")

    for key in spec.F:
        for x in key:
            if x not in labels:
                bad.append(f"F table references unknown label {x!r}")
    if spec.R:
        for key in spec.R:
            for x in key:
                if x not in labels:
                    bad.append(f"R table references unknown label {x!r}")

    if not bad:
        # F-block invertibility (needs square blocks, hence gated on the above).
        try:
            for a in spec.labels:
                for b in spec.labels:
                    for c in spec.labels:
                        for d in spec.labels:
                            rows, _, _ = spec.f_block(a, b, c, d)
                            if rows:
                                m = spec.f_matrix(a, b, c, d)
                                if matrix_rank(m) != m.rows:
                                    bad.append(
                                        f"F block ({a},{b},{c};{d}) is singular"
                                    )
        except IncompleteDataError as exc:
            bad.append(str(exc))
    return ValidationReport(bad)


def _compose_sparse(later: dict, earlier: dict) -> dict:
    """Compose sparse {(row, col): scalar} maps: (later o earlier)."""
    by_row: dict = {}
    for (r, c), v in later.items():
        by_row.setdefault(c, []).append((r, v))
    out: dict = {}
    for (mid, col), v in earlier.items():
        for r, w in by_row.get(mid, ()):
            key = (r, col)
            acc = out.get(key)
            out[key] = w * v if acc is None else acc + w * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def check_pentagon(spec: CategorySpec) -> ValidationReport:
    """Exactly evaluate every pentagon instance; empty report means pass.

    Both recoupling paths from (((ab)c)d -> e) to (a(b(cd)) -> e) are
    assembled as sparse matrices over labeled-tree bases and compared.
    """
    bad: list[str] = []
    L = spec.labels
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    for e in L:
                        if not _pentagon_instance(spec, a, b, c, d, e):
                            bad.append(f"pentagon fails at ({a},{b},{c},{d};{e})")
    return ValidationReport(bad)


def _pentagon_instance(spec, a, b, c, d, e) -> bool:
    # Basis T1: (x,alpha,beta,gamma) with vertices (ab->x), (xc->y), (yd->e).
    # Path A: T1 -> T2 -> T3 -> T4; Path B: T1 -> T5 -> T4.
    move1: dict = {}
    for x in spec.channels(a, b):
        for y in spec.channels(x, c):
            if spec.N(y, d, e) == 0:
                continue
            _, _, blk = spec.f_block(a, b, c, y)
            for ((xx, al, be), (p, mu, nu)), v in blk.items():
                if xx != x:
                    continue
                for ga in range(spec.N(y, d, e)):
                    move1_key = ((p, mu, y, nu, ga), (x, al, y, be, ga))
                    move1[move1_key] = move1.get(move1_key, ZERO) + v

    move2: dict = {}
    for p in spec.labels:
        for q in spec.channels(a, p):
            if spec.N(q, d, e) == 0:
                continue
            _, _, blk = spec.f_block(a, p, d, e)
            for ((qq, nu, ga), (r, rho, tau)), v in blk.items():
                if qq != q:
                    continue
                for mu in range(spec.N(b, c, p)):
                    key = ((p, mu, r, rho, tau), (p, mu, q, nu, ga))
                    move2[key] = move2.get(key, ZERO) + v

    move3: dict = {}
    for r in spec.labels:
        if spec.N(a, r, e) == 0:
            continue
        _, _, blk = spec.f_block(b, c, d, r)
        for ((p, mu, rho), (s, sg, ka)), v in blk.items():
            for tau in range(spec.N(a, r, e)):
                key = ((s, sg, r, ka, tau), (p, mu, r, rho, tau))
                move3[key] = move3.get(key, ZERO) + v

    move4: dict = {}
    for x in spec.channels(a, b):
        _, _, blk = spec.f_block(x, c, d, e)
        for ((y, be, ga), (s, sg, de)), v in blk.items():
            for al in range(spec.N(a, b, x)):
                key = ((x, al, s, sg, de), (x, al, y, be, ga))
                move4[key] = move4.get(key, ZERO) + v

    move5: dict = {}
    for s in spec.labels:
        _, _, blk = spec.f_block(a, b, s, e)
        for ((x, al, de), (t, ka, tau)), v in blk.items():
            for sg in range(spec.N(c, d, s)):
                key = ((s, sg, t, ka, tau), (x, al, s, sg, de))
                move5[key] = move5.get(key, ZERO) + v

    path_a = _compose_sparse(move3, _compose_sparse(move2, move1))
    path_b = _compose_sparse(move5, move4)
    keys = set(path_a) | set(path_b)
    return all((path_a.get(k, ZERO) - path_b.get(k, ZERO)).is_zero() for k in keys)


def check_hexagon(spec: CategorySpec) -> ValidationReport:
    """Both hexagon families (for c and its reverse), exactly."""
    spec.require_braiding()
    bad: list[str] = []
    L = spec.labels
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    if not _hexagon_instance(spec, a, b, c, d, inverse=False):
                        bad.append(f"hexagon(c) fails at ({a};{b},{c};{d})")
                    if not _hexagon_instance(spec, a, b, c, d, inverse=True):
                        bad.append(f"hexagon(c^-1) fails at ({a};{b},{c};{d})")
    return ValidationReport(bad)


def _r_entries(spec, a, b, c, inverse):
    """R or reverse-braiding entries as {(nu, mu): value} for channel c."""
    if not inverse:
        blk = spec.r_block(a, b, c)
        return dict(blk)
    m = spec.r_inverse_matrix(b, a, c)
    return {
        (i, j): m[i, j]
        for i in range(m.rows)
        for j in range(m.cols)
        if not m[i, j].is_zero()
    }


def _hexagon_instance(spec, a, b, c, d, inverse) -> bool:
    # LHS: braid a across the fused pair (bc): diagonal R on the a(bc) basis.
    lhs: dict = {}
    for p in spec.channels(b, c):
        ent = _r_entries(spec, a, p, d, inverse)
        for (nu2, nu), v in ent.items():
            for mu in range(spec.N(b, c, p)):
                lhs[((p, mu, nu2), (p, mu, nu))] = v

    # RHS: F^{-1}, braid (a,b), F, braid (a,c), F^{-1}.
    m1: dict = {}
    _, _, blk = spec.f_inverse(a, b, c, d)
    for ((f, mu, nu), (e, al, be)), v in blk.items():
        m1[((e, al, be), (f, mu, nu))] = v

    m2: dict = {}
    for e in spec.channels(a, b):
        ent = _r_entries(spec, a, b, e, inverse)
        for (al2, al), v in ent.items():
            for be in range(spec.N(e, c, d)):
                m2[((e, al2, be), (e, al, be))] = v

    m3: dict = {}
    for key_pair, v in spec.f_block(b, a, c, d)[2].items():
        (e, al, be), (g, rho, tau) = key_pair
        m3[((g, rho, tau), (e, al, be))] = v

    m4: dict = {}
    for g in spec.channels(a, c):
        ent = _r_entries(spec, a, c, g, inverse)
        for (rho2, rho), v in ent.items():
            for tau in range(spec.N(b, g, d)):
                m4[((g, rho2, tau), (g, rho, tau))] = v

    m5: dict = {}
    _, _, blk = spec.f_inverse(b, c, a, d)
    for (ck, rk), v in blk.items():
        # ck is the b(ca)-shape key, rk the (bc)a-shape key.
        m5[(rk, ck)] = v

    rhs = _compose_sparse(m5, _compose_sparse(m4, _compose_sparse(m3, _compose_sparse(m2, m1))))
    keys = set(lhs) | set(rhs)
    return all((lhs.get(k, ZERO) - rhs.get(k, ZERO)).is_zero() for k in keys)


def quantum_dims(spec: CategorySpec):
    """Loop-evaluated dimensions, curl-evaluated twists, and dim(Omega).

    Returns (OmegaColor, twists) where twists maps label -> Cyclotomic.
    The loop and curl are evaluated by the diagram engine; the ribbon-sum
    formula for twists is kept in the test suite as an independent check.
    """
    from . import diagram as dg

    key = "quantum_dims"
    if key in spec._cache:
        return spec._cache[key]
    weights: dict[str, Cyclotomic] = {}
    twists: dict[str, Cyclotomic] = {}
    for a in spec.labels:
        weights[a] = dg.loop_value(spec, a)
        if spec.R is not None:
            twists[a] = dg.twist_value(spec, a)
    total = ZERO
    for a in spec.labels:
        total = total + weights[a] * weights[a]
    out = (OmegaColor(weights=weights, total=total), twists)
    spec._cache[key] = out
    return out


def check_spherical_ribbon(spec: CategorySpec) -> ValidationReport:
    """dim(a) = dim(a*) in both trace orders; theta(a) = theta(a*)."""
    from . import diagram as dg

    bad: list[str] = []
    omega, twists = quantum_dims(spec)
    for a in spec.labels:
        right = omega.weights[a]
        left = dg.loop_value(spec, a, side="left")
        if right != left:
            bad.append(f"left and right traces differ on {a!r}")
        if right != omega.weights[spec.dual[a]]:
            bad.append(f"dim({a}) != dim(dual {a})")
        if right.is_zero():
            bad.append(f"dim({a}) is zero")
    if spec.R is not None:
        for a in spec.labels:
            if twists[a] != twists[spec.dual[a]]:
                bad.append(f"twist({a}) != twist(dual {a})")
        if twists[spec.unit] != ONE:
            bad.append("twist of the unit is not 1")
    if omega.weights[spec.unit] != ONE:
        bad.append("dim of the unit is not 1")
    return ValidationReport(bad)


def s_matrix_and_transparency(spec: CategorySpec):
    """Unnormalized S-matrix, transparent labels, and the modular flag."""
    from . import diagram as dg

    spec.require_braiding()
    key = "smatrix"
    if key in spec._cache:
        return spec._cache[key]
    omega, _ = quantum_dims(spec)
    n = len(spec.labels)
    s = ExactMatrix(n, n)
    for i, a in enumerate(spec.labels):
        for j, b in enumerate(spec.labels):
            s[i, j] = dg.hopf_link_value(spec, a, b)
    transparent = set()
    for j, b in enumerate(spec.labels):
        if all(
            s[i, j] == omega.weights[a] * omega.weights[b]
            for i, a in enumerate(spec.labels)
        ):
            transparent.add(b)
    modular = matrix_rank(s) == n
    out = (s, transparent, modular)
    spec._cache[key] = out
    return out
