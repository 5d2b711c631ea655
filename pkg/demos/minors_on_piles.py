"""Principal minors of a symmetric matrix, read along every pile of tilings.

Prints the signed minor tuple of a small matrix, tests it for
realizability, rebuilds the matrix and then places the minors on the
cubical complex of each pile for n = 4.
"""

import random

from kashaev import complexes as cx
from kashaev import minors as mn
from kashaev import tilings as tl

rng = random.Random(4)
m = mn.random_symmetric(4, rng)
t = mn.signed_minor_tuple(m)
for s in range(1 << t.n):
    print(f"  x[{tl.label_str(s):>6}] = {t[s]}")

print("realizable:", mn.realizability_test(t).ok)
print("rebuilt:", [[str(x) for x in row] for row in mn.reconstruct_symmetric(t)])

bumped = t.replace(15, t[15] + 1)
cert = mn.realizability_test(bumped).certificate
print("after bumping the full minor:", cert["kind"], "identity fails at", tl.label_str(cert["I"]))

for sigma in tl.enumerate_piles(4):
    c = cx.build_complex(tl.pile_from_admissible(sigma))
    values, faces = mn.matrix_khex_field(m, c)
    comfort = cx.is_comfortable(c)
    print(
        "pile", " ".join("".join(map(str, tr)) for tr in sigma),
        "| cubes", len(c.cubes),
        "| K-hex", cx.check_complex_khex(c, values, faces).ok,
        "| comfortable", comfort.comfortable,
    )
