"""Dev: exercise induction, verification, and tube algebras on small cases."""
import sys
import time

sys.path.insert(0, "src")

from genuscenter import catalog, center
from genuscenter.algebra import decompose, float_decompose
from genuscenter.gluing import parse_cycles

t0 = time.time()

# 1. induce_object examples
spec = catalog.builtin("vec_z2")
sig = parse_cycles("(1 2)")
print("vec_z2 I(0):", center.induce_object(spec, sig, "0").as_dict())  # expect {0:2}

spec = catalog.builtin("fibonacci")
print("fib I(1):", center.induce_object(spec, sig, "1").as_dict())  # {1:2, t:1}

# 2. induced pair + verify, n=1
for key in ("rep_z2", "vec_z3_q", "fibonacci"):
    spec = catalog.builtin(key)
    for lab in spec.labels:
        pair = center.induced_half_braidings(spec, sig, lab)
        rep = center.verify_sigma_pair(spec, sig, pair)
        print(f"{key} induced({lab}) sigma=(12):", "ok" if rep.ok else rep.entries[:3])
    print("  elapsed", round(time.time() - t0, 1))

# 3. n=2 verify (the comm relations!)
for key in ("rep_z2", "fibonacci"):
    spec = catalog.builtin(key)
    for s in ("(1 3)(2 4)", "(1 2)(3 4)", "(1 4)(2 3)"):
        sig2 = parse_cycles(s)
        pair = center.induced_half_braidings(spec, sig2, spec.labels[0])
        rep = center.verify_sigma_pair(spec, sig2, pair)
        print(f"{key} induced sigma={s}:", "ok" if rep.ok else rep.entries[:4])
    print("  elapsed", round(time.time() - t0, 1))

# 4. tube algebra n=1: laws + ranks
for key in ("vec_z2", "rep_z2", "fibonacci", "ising"):
    spec = catalog.builtin(key)
    tube = center.tube_algebra(spec, sig)
    alg = tube.algebra_data()
    print(f"{key} tube dim {alg.dim}; unit ok {alg.check_unit()}; assoc {alg.check_associative()}")
    rank, dims, _ = decompose(alg)
    frank, fdims = float_decompose(alg)
    print(f"  rank {rank} dims {dims}; float oracle {frank} {fdims}")
    print("  elapsed", round(time.time() - t0, 1))
