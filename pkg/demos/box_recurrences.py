"""Four box recurrences side by side.

For each family: sweep random positive data, check the defining
polynomial and the vertex sign condition, and tabulate which sign each
orientation of the stencil produces.
"""

import random
from fractions import Fraction

from kashaev import genrec as g

rng = random.Random(9)
families = [
    ("kashaev3d", ()),
    ("sholo2d", ()),
    ("cubic1d", (-3, -6, -4)),
    ("box2d", (4, 4)),
]

for name, params in families:
    inst = g.make_instance(name, tuple(Fraction(p) for p in params))
    fld = g.positive_sweep(inst, g.default_shape(inst), lambda: g.random_positive(rng))
    checks = g.check_gen(inst, fld).ok and g.gen_coherence_report(inst, fld).ok
    signs = g.verify_propagation_signs(inst, 20, rng)
    table = " ".join(
        f"{''.join('+' if s > 0 else '-' for s in al)}:{'+' if inst.gamma[al] > 0 else '-'}"
        for al in g.signs(inst.d)
    )
    print(f"{name:10s} box {inst.a}  checks {checks}  signs {signs.ok}  [{table}]")

# rational data for the cubic family stays rational
inst = g.make_instance("cubic1d", (-3, -6, -4))
verts, faces = g.cubic_exact_seed(inst, Fraction(3), Fraction(1), Fraction(2))
fld = g.sweep_gen(inst, verts, faces, g.region((8,)))
print("cubic1d exact:", [str(fld.vertices[(k,)]) for k in range(11)])
