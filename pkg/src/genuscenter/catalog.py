"""Bundled example categories and the on-disk category format.

Pointed catalogs are generated from group cocycle/bicharacter data; the
S3 representation catalog is derived at first use from explicit rational
representation matrices, so its 6j-symbols are rational by construction.
The golden-ratio and square-root-of-two catalogs carry exact scalars in
Q(zeta_5) and Q(zeta_16).  Every entry is exercised against the pentagon,
hexagon, spherical, and ribbon validators by the test suite.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import GenusCenterError, KeyNotFoundError
from .exactnum import Cyclotomic, ExactMatrix, nullspace, rational, solve, zeta
from .fusion import CategorySpec

__all__ = ["builtin", "catalog_keys", "load_spec", "save_spec"]

ONE = rational(1)


def _pointed(name, n, omega, rvals, pivotal, provenance):
    """Pointed category on Z/n: fusion a+b, associator omega, braiding rvals."""
    labels = tuple(str(i) for i in range(n))
    unit = "0"
    dual = {str(i): str((-i) % n) for i in range(n)}
    fusion = {
        (str(a), str(b), str((a + b) % n)): 1 for a in range(n) for b in range(n)
    }
    F = {}
    for a in range(1, n):
        for b in range(1, n):
            for c in range(1, n):
                d = (a + b + c) % n
                e, f = (a + b) % n, (b + c) % n
                F[(str(a), str(b), str(c), str(d))] = {
                    ((str(e), 0, 0), (str(f), 0, 0)): omega(a, b, c)
                }
    R = {}
    for a in range(1, n):
        for b in range(1, n):
            R[(str(a), str(b), str((a + b) % n))] = {(0, 0): rvals(a, b)}
    return CategorySpec(
        name=name,
        labels=labels,
        unit=unit,
        dual=dual,
        fusion=fusion,
        F=F,
        R=R,
        pivotal={str(i): pivotal(i) for i in range(n)},
        provenance=provenance,
    )


def _rep_z2():
    return _pointed(
        "rep_z2", 2,
        omega=lambda a, b, c: ONE,
        rvals=lambda a, b: ONE,
        pivotal=lambda a: ONE,
        provenance="Z/2 representations: trivial associator and symmetric braiding.",
    )


def _vec_z2():
    return _pointed(
        "vec_z2", 2,
        omega=lambda a, b, c: ONE,
        rvals=lambda a, b: rational(-1),
        pivotal=lambda a: ONE,
        provenance="super-vector-space flavor of Z/2: trivial associator, "
        "braiding -1 on the odd-odd channel (symmetric, fermionic twist).",
    )


def _vec_z3_q():
    z3 = zeta(3)
    return _pointed(
        "vec_z3_q", 3,
        omega=lambda a, b, c: ONE,
        rvals=lambda a, b: z3 ** (a * b),
        pivotal=lambda a: ONE,
        provenance="Z/3 pointed with the nondegenerate quadratic form "
        "q(a) = zeta_3^(a^2); anyonic and modular.",
    )


def _semion():
    return _pointed(
        "semion", 2,
        omega=lambda a, b, c: rational(-1),
        rvals=lambda a, b: zeta(4),
        pivotal=lambda a: rational(-1) if a else ONE,
        provenance="Z/2 with the nontrivial associator and semionic braiding "
        "R = i; pivotal sign -1 keeps the loop value +1.",
    )


def _fibonacci():
    # phi = golden ratio, exactly 1 + z5 + z5^4; F in the rational gauge
    # [[1/phi, 1/phi], [1, -1/phi]], an involution since phi^2 = phi + 1.
    phi = rational(1) + zeta(5) + zeta(5, 4)
    phinv = phi.inverse()
    u, t = "1", "t"
    F = {
        (t, t, t, t): {
            ((u, 0, 0), (u, 0, 0)): phinv,
            ((u, 0, 0), (t, 0, 0)): phinv,
            ((t, 0, 0), (u, 0, 0)): ONE,
            ((t, 0, 0), (t, 0, 0)): -phinv,
        },
        (t, t, t, u): {((t, 0, 0), (t, 0, 0)): ONE},
    }
    # Hexagon solution found by exact scan over roots of unity: the only
    # solutions in this gauge are (z5^2, z10^7) and its mirror below.
    R = {
        (t, t, u): {(0, 0): zeta(5, 3)},
        (t, t, t): {(0, 0): zeta(10, 3)},
    }
    return CategorySpec(
        name="fibonacci",
        labels=(u, t),
        unit=u,
        dual={u: u, t: t},
        fusion={
            (u, u, u): 1, (u, t, t): 1, (t, u, t): 1,
            (t, t, u): 1, (t, t, t): 1,
        },
        F=F,
        R=R,
        pivotal={u: ONE, t: ONE},
        provenance="golden-ratio fusion rule; F in the rational gauge over "
        "Q(zeta_5), R fixed by exact hexagon solving.",
    )


def _ising():
    # sqrt2 = z8 + z8^-1 exactly; standard solution with F[sss;s] = H/sqrt2,
    # F[sfs;f] = F[fsf;s] = -1, R scanned exactly against the hexagon.
    s2inv = (zeta(8) + zeta(8, 7)).inverse()
    u, s, f = "1", "s", "f"
    neg = rational(-1)
    F = {
        (s, s, s, s): {
            ((u, 0, 0), (u, 0, 0)): s2inv,
            ((u, 0, 0), (f, 0, 0)): s2inv,
            ((f, 0, 0), (u, 0, 0)): s2inv,
            ((f, 0, 0), (f, 0, 0)): -s2inv,
        },
        (s, s, f, f): {((u, 0, 0), (s, 0, 0)): ONE},
        (s, s, f, u): {((f, 0, 0), (s, 0, 0)): ONE},
        (s, f, s, u): {((s, 0, 0), (s, 0, 0)): ONE},
        (s, f, s, f): {((s, 0, 0), (s, 0, 0)): neg},
        (s, f, f, s): {((s, 0, 0), (u, 0, 0)): ONE},
        (f, s, s, u): {((s, 0, 0), (f, 0, 0)): ONE},
        (f, s, s, f): {((s, 0, 0), (u, 0, 0)): ONE},
        (f, s, f, s): {((s, 0, 0), (s, 0, 0)): neg},
        (f, f, s, s): {((u, 0, 0), (s, 0, 0)): ONE},
        (f, f, f, f): {((u, 0, 0), (u, 0, 0)): ONE},
    }
    R = {
        (s, s, u): {(0, 0): zeta(16, 15)},
        (s, s, f): {(0, 0): zeta(16, 3)},
        (s, f, s): {(0, 0): zeta(4, 3)},
        (f, s, s): {(0, 0): zeta(4, 3)},
        (f, f, u): {(0, 0): rational(-1)},
    }
    return CategorySpec(
        name="ising",
        labels=(u, s, f),
        unit=u,
        dual={u: u, s: s, f: f},
        fusion={
            (u, u, u): 1, (u, s, s): 1, (u, f, f): 1,
            (s, u, s): 1, (f, u, f): 1,
            (s, s, u): 1, (s, s, f): 1,
            (s, f, s): 1, (f, s, s): 1,
            (f, f, u): 1,
        },
        F=F,
        R=R,
        pivotal={u: ONE, s: ONE, f: ONE},
        provenance="square-root-of-2 fusion rules over Q(zeta_16); "
        "R fixed by exact hexagon solving.",
    )


# ---------------------------------------------------------------------------
# Rep(S3), derived from explicit rational representation matrices


def _mat(rows):
    return ExactMatrix(len(rows), len(rows[0]), [[rational(v) for v in r] for r in rows])


def _kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    out = ExactMatrix(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j].is_zero():
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = a[i, j] * b[k, l]
    return out


_S3_REPS = {
    "1": {"dim": 1, "s": _mat([[1]]), "t": _mat([[1]])},
    "e": {"dim": 1, "s": _mat([[-1]]), "t": _mat([[1]])},
    "V": {"dim": 2, "s": _mat([[-1, 1], [0, 1]]), "t": _mat([[0, -1], [1, -1]])},
}


def _s3_intertwiner(a: str, b: str, c: str) -> ExactMatrix | None:
    """A basis intertwiner V_c -> V_a (x) V_b over Q, or None if absent."""
    ra, rb, rc = _S3_REPS[a], _S3_REPS[b], _S3_REPS[c]
    da, db, dc = ra["dim"], rb["dim"], rc["dim"]
    rows = []
    for g in ("s", "t"):
        lhs = _kron(ra[g], rb[g])
        rhs = rc[g]
        # (lhs T - T rhs) = 0, unknown T is (da*db) x dc flattened row-major.
        for i in range(da * db):
            for j in range(dc):
                row = [rational(0)] * (da * db * dc)
                for k in range(da * db):
                    row[k * dc + j] = row[k * dc + j] + lhs[i, k]
                for k in range(dc):
                    row[i * dc + k] = row[i * dc + k] - rhs[k, j]
                rows.append(row)
    basis = nullspace(ExactMatrix(len(rows), da * db * dc, rows))
    if not basis:
        return None
    vec = basis[0]
    # Deterministic scale: first nonzero coordinate = 1.
    first = next(v for v in vec if not v.is_zero())
    vec = [v / first for v in vec]
    T = ExactMatrix(da * db, dc)
    for i in range(da * db):
        for j in range(dc):
            T[i, j] = vec[i * dc + j]
    return T


def _s3_vertex(a: str, b: str, c: str) -> ExactMatrix | None:
    """Intertwiner with the strict-unit normalization on unit legs."""
    if a == "1":
        return ExactMatrix.identity(_S3_REPS[b]["dim"]) if b == c else None
    if b == "1":
        return ExactMatrix.identity(_S3_REPS[a]["dim"]) if a == c else None
    T = _s3_intertwiner(a, b, c)
    return T


def _rep_s3():
    labels = ("1", "e", "V")
    dims = {a: _S3_REPS[a]["dim"] for a in labels}
    fusion = {}
    verts = {}
    for a in labels:
        for b in labels:
            for c in labels:
                T = _s3_vertex(a, b, c)
                if T is not None:
                    fusion[(a, b, c)] = 1
                    verts[(a, b, c)] = T

    def tree1(a, b, c, d, e):
        # (iota[ab->e] (x) 1_c) o iota[ec->d]
        return _kron(verts[(a, b, e)], ExactMatrix.identity(dims[c])) @ verts[(e, c, d)]

    def tree2(a, b, c, d, f):
        return _kron(ExactMatrix.identity(dims[a]), verts[(b, c, f)]) @ verts[(a, f, d)]

    F = {}
    for a in labels:
        for b in labels:
            for c in labels:
                if "1" in (a, b, c):
                    continue
                for d in labels:
                    es = [e for e in labels if (a, b, e) in verts and (e, c, d) in verts]
                    fs = [f for f in labels if (b, c, f) in verts and (a, f, d) in verts]
                    if not es:
                        continue
                    # Solve tree1(e) = sum_f F[e,f] tree2(f) entrywise over Q.
                    nent = dims[a] * dims[b] * dims[c] * dims[d]
                    cols = ExactMatrix(nent, len(fs))
                    for jf, f in enumerate(fs):
                        m = tree2(a, b, c, d, f)
                        for i in range(m.rows):
                            for j in range(m.cols):
                                cols[i * m.cols + j, jf] = m[i, j]
                    block = {}
                    for e in es:
                        m = tree1(a, b, c, d, e)
                        rhs = [m[i // m.cols, i % m.cols] for i in range(nent)]
                        coeffs = solve(cols, rhs)
                        for jf, f in enumerate(fs):
                            if not coeffs[jf].is_zero():
                                block[((e, 0, 0), (f, 0, 0))] = coeffs[jf]
                    F[(a, b, c, d)] = block

    R = {}
    for a in labels:
        for b in labels:
            if "1" in (a, b):
                continue
            da, db = dims[a], dims[b]
            flip = ExactMatrix(db * da, da * db)
            for u in range(da):
                for v in range(db):
                    flip[v * da + u, u * db + v] = ONE
            for c in labels:
                if (a, b, c) not in verts:
                    continue
                lhs = flip @ verts[(a, b, c)]
                ref = verts[(b, a, c)]
                # lhs = r * ref for a scalar r.
                r = None
                for i in range(lhs.rows):
                    for j in range(lhs.cols):
                        if not ref[i, j].is_zero():
                            r = lhs[i, j] / ref[i, j]
                            break
                    if r is not None:
                        break
                assert (lhs - ref.scale(r)).is_zero()
                R[(a, b, c)] = {(0, 0): r}

    return CategorySpec(
        name="rep_s3",
        labels=labels,
        unit="1",
        dual={a: a for a in labels},
        fusion=fusion,
        F=F,
        R=R,
        pivotal={a: ONE for a in labels},
        provenance="derived at load from rational S3 representation matrices; "
        "the pentagon holds by construction and is re-checked by the validators.",
    )


_BUILDERS = {
    "vec_z2": _vec_z2,
    "vec_z3_q": _vec_z3_q,
    "rep_z2": _rep_z2,
    "rep_s3": _rep_s3,
    "fibonacci": _fibonacci,
    "ising": _ising,
    "semion": _semion,
}

_MEMO: dict[str, CategorySpec] = {}


def catalog_keys() -> list[str]:
    return sorted(_BUILDERS)


def builtin(key: str) -> CategorySpec:
    if key not in _BUILDERS:
        raise KeyNotFoundError(
            f"unknown catalog key {key!r}; available: {', '.join(catalog_keys())}"
        )
    if key not in _MEMO:
        _MEMO[key] = _BUILDERS[key]()
    return _MEMO[key]


# ---------------------------------------------------------------------------
# on-disk format


def _cyc_to_json(v: Cyclotomic) -> dict:
    return {"order": v.order, "terms": [list(t) for t in v.terms()]}


def _cyc_from_json(obj, where: str) -> Cyclotomic:
    try:
        order = obj["order"]
        terms = obj["terms"]
    except (TypeError, KeyError) as exc:
        raise GenusCenterError(f"{where}: malformed scalar {obj!r}") from exc
    if not isinstance(order, int) or order < 1:
        raise GenusCenterError(f"{where}: scalar order must be a positive integer")
    return Cyclotomic.from_terms(order, [tuple(t) for t in terms])


def save_spec(spec: CategorySpec, path) -> None:
    doc = {
        "name": spec.name,
        "labels": list(spec.labels),
        "unit": spec.unit,
        "dual": dict(spec.dual),
        "fusion": [[a, b, c, n] for (a, b, c), n in sorted(spec.fusion.items())],
        "F": [
            {
                "labels": list(key),
                "row": list(rk),
                "col": list(ck),
                "value": _cyc_to_json(v),
            }
            for key, block in sorted(spec.F.items())
            for (rk, ck), v in sorted(block.items())
        ],
        "pivotal": {a: _cyc_to_json(v) for a, v in sorted(spec.pivotal.items())},
        "provenance": spec.provenance,
    }
    if spec.R is not None:
        doc["R"] = [
            {"labels": list(key), "row": rk, "col": ck, "value": _cyc_to_json(v)}
            for key, block in sorted(spec.R.items())
            for (rk, ck), v in sorted(block.items())
        ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_spec(path) -> CategorySpec:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GenusCenterError(f"{path}: not valid JSON ({exc})") from exc
    for fieldname in ("name", "labels", "unit", "dual", "fusion", "F", "pivotal"):
        if fieldname not in doc:
            raise GenusCenterError(f"{path}: missing mandatory field {fieldname!r}")
    dual = dict(doc["dual"])
    for a, b in dual.items():
        if dual.get(b) != a:
            raise GenusCenterError(f"{path}: dual table is not involutive at {a!r}")
    fusion = {}
    for rec in doc["fusion"]:
        a, b, c, n = rec
        fusion[(a, b, c)] = int(n)
    F: dict = {}
    for rec in doc["F"]:
        a, b, c, d = rec["labels"]
        e, al, be = rec["row"]
        f, mu, nu = rec["col"]
        val = _cyc_from_json(rec["value"], f"{path} F[{a},{b},{c};{d}]")
        F.setdefault((a, b, c, d), {})[((e, int(al), int(be)), (f, int(mu), int(nu)))] = val
    R = None
    if "R" in doc:
        R = {}
        for rec in doc["R"]:
            a, b, c = rec["labels"]
            val = _cyc_from_json(rec["value"], f"{path} R[{a},{b};{c}]")
            R.setdefault((a, b, c), {})[(int(rec["row"]), int(rec["col"]))] = val
    pivotal = {
        a: _cyc_from_json(v, f"{path} pivotal[{a}]") for a, v in doc["pivotal"].items()
    }
    return CategorySpec(
        name=doc["name"],
        labels=tuple(doc["labels"]),
        unit=doc["unit"],
        dual=dual,
        fusion=fusion,
        F=F,
        R=R,
        pivotal=pivotal,
        provenance=doc.get("provenance", ""),
    )
