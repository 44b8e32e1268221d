"""Dev: validate catalogs; scan exact hexagon solutions for fib/ising."""
import itertools
import sys
import time

sys.path.insert(0, "src")

from genuscenter import catalog, fusion
from genuscenter.exactnum import rational, zeta

t0 = time.time()
for key in catalog.catalog_keys():
    spec = catalog.builtin(key)
    rep = fusion.validate_structure(spec)
    print(f"{key}: structure {'ok' if rep.ok else rep}")
    if not rep.ok:
        continue
    pent = fusion.check_pentagon(spec)
    print(f"{key}: pentagon {'ok' if pent.ok else pent}")
    if pent.ok and spec.R is not None:
        hexr = fusion.check_hexagon(spec)
        print(f"{key}: hexagon {'ok' if hexr.ok else f'{len(hexr.entries)} violations'}")
print("elapsed", round(time.time() - t0, 2))

# Scan Fibonacci R candidates exactly.
print("\n-- fibonacci R scan (r1, rt) over 20th roots of unity --")
spec = catalog.builtin("fibonacci")
u, t = "1", "t"
hits = []
for k1 in range(20):
    for k2 in range(20):
        spec.R = {(t, t, u): {(0, 0): zeta(20, k1)}, (t, t, t): {(0, 0): zeta(20, k2)}}
        spec._cache.clear()
        if fusion.check_hexagon(spec).ok:
            hits.append((k1, k2))
print("fibonacci solutions (z20 powers):", hits)

print("\n-- ising R scan --")
spec = catalog.builtin("ising")
uu, s, f = "1", "s", "f"
hits = []
for k1, k2 in itertools.product(range(16), repeat=2):
    for kf in range(2):
        for kx in range(4):
            spec.R = {
                (s, s, uu): {(0, 0): zeta(16, k1)},
                (s, s, f): {(0, 0): zeta(16, k2)},
                (s, f, s): {(0, 0): zeta(4, kx)},
                (f, s, s): {(0, 0): zeta(4, kx)},
                (f, f, uu): {(0, 0): rational(1) if kf == 0 else rational(-1)},
            }
            spec._cache.clear()
            if fusion.check_hexagon(spec).ok:
                hits.append((k1, k2, kf, kx))
print("ising solutions (z16,z16,sign,z4):", hits)
print("elapsed", round(time.time() - t0, 2))
