"""Command-line front end.

Every verb reads JSON payloads and writes a JSON document to standard
output (or ``--out``).  Exit status: 0 on success or PASS, 1 when a
verification fails, 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence

from . import complexes as cx
from . import genrec as gr
from . import jsonio
from . import kashaev3d as k3
from . import minors as mn
from . import tilings as tl
from .errors import (
    KashaevError,
    NonConvergent,
    NotAdmissible,
    NotCoherent,
    NotComfortable,
    NotFlippable,
    NotRealizable,
)
from .report import Report
from .scalars import EXACT, FLOAT, ToleranceContext, decode_scalar

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# raised when the input is well formed but the property it claims is false
VERDICT_ERRORS = (NotCoherent, NotRealizable, NotComfortable, NotAdmissible, NotFlippable, NonConvergent)


class UsageError(Exception):
    pass


# -- argument helpers -----------------------------------------------------------


def _ints(text: str) -> List[int]:
    text = text.strip()
    if "," in text:
        return [int(x) for x in text.split(",") if x.strip()]
    return [int(c) for c in text]


def _triple(text: str):
    t = tuple(sorted(_ints(text)))
    if len(t) != 3 or len(set(t)) != 3:
        raise argparse.ArgumentTypeError(f"expected three distinct indices, got {text!r}")
    return t


def _order(text: str):
    """Triples separated by commas or spaces, each as ``123`` or ``1-2-3``."""
    return [_triple(tok.replace("-", ",")) for tok in text.replace(",", " ").split()]


def _params(text: str):
    try:
        return [decode_scalar(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _point(text: str):
    return tuple(int(x) for x in text.split(","))


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _load(path: str, flag: str = "input"):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: {path} is not valid JSON: {exc}")


def _ctx(args) -> ToleranceContext:
    base = ToleranceContext()
    return ToleranceContext(
        args.rel_tol if args.rel_tol is not None else base.rel_tol,
        args.abs_tol if args.abs_tol is not None else base.abs_tol,
    )


def _chunks(items: Sequence, jobs: int) -> List[list]:
    items = list(items)
    size = max(1, -(-len(items) // jobs))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _parallel(fn: Callable, chunks: List[list], jobs: int) -> List[Report]:
    if jobs <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, chunks))


def _merge(reports: List[Report], mode: str) -> Report:
    out = Report(mode=mode)
    for r in reports:
        out.findings.extend(r.findings)
    return out.sorted()


class _KashaevChunk:
    def __init__(self, field, ctx):
        self.field, self.ctx = field, ctx

    def __call__(self, bases):
        return k3.check_kashaev(self.field, self.ctx, bases)


class _CoherenceChunk(_KashaevChunk):
    def __call__(self, points):
        return k3.coherence_report(self.field, self.ctx, points)


# -- kashaev --------------------------------------------------------------------


def _field_arg(args):
    return jsonio.decode_field(_load(args.field, "FIELD"), args.mode)


def cmd_kashaev_check(args):
    fld = _field_arg(args)
    ctx = _ctx(args)
    verts = fld.vertices if isinstance(fld, k3.KHexField3) else fld
    bases = verts.cube_bases()
    rep = _merge(_parallel(_KashaevChunk(verts, ctx), _chunks(bases, args.jobs), args.jobs), verts.mode)
    rep.extra["cubes"] = len(bases)
    if isinstance(fld, k3.KHexField3):
        rep.mode = fld.mode
        rep.findings.extend(k3.check_khex(fld, ctx).findings)
        rep.sorted()
    return rep


def cmd_kashaev_coherence(args):
    fld = _field_arg(args)
    ctx = _ctx(args)
    verts = fld.vertices if isinstance(fld, k3.KHexField3) else fld
    if args.at is not None:
        res = k3.check_coherence(verts, args.at, ctx)
        rep = Report(mode=verts.mode)
        if not res.ok:
            rep.add("coherence", args.at, res.lhs, res.rhs)
        rep.extra.update({"lhs": res.lhs, "rhs": res.rhs, "even": res.even, "odd": res.odd,
                          "split_ok": res.split_ok})
        return rep
    pts = verts.interior_points()
    rep = _merge(_parallel(_CoherenceChunk(verts, ctx), _chunks(pts, args.jobs), args.jobs), verts.mode)
    rep.extra["checked"] = len(pts)
    return rep


def cmd_kashaev_run(args):
    if args.field is not None:
        init = _field_arg(args)
        if isinstance(init, k3.KHexField3):
            init = init.vertices
    else:
        rng = random.Random(args.seed)
        if args.value is not None:
            init = k3.positive_slab(args.size, lambda p: args.value)
        else:
            init = k3.positive_slab(args.size, lambda p: rng.uniform(0.5, 2.0))
    return jsonio.encode_field(k3.run_positive_kashaev(init, args.steps))


def cmd_kashaev_extend(args):
    fld = _field_arg(args)
    if isinstance(fld, k3.KHexField3):
        fld = fld.vertices
    return jsonio.encode_field(k3.extend_to_khex(fld, _ctx(args)))


# -- tiling ---------------------------------------------------------------------


def cmd_tiling_min(args):
    return jsonio.encode_tiling(tl.min_tiling(args.n))


def cmd_tiling_max(args):
    return jsonio.encode_tiling(tl.max_tiling(args.n))


def cmd_tiling_flip(args):
    t = jsonio.decode_tiling(_load(args.tiling, "TILING"))
    if args.triple is None:
        return {
            "n": t.n,
            "flips": [{"triple": list(tr), "direction": d} for tr, d in tl.enumerate_flips(t)],
        }
    return jsonio.encode_tiling(tl.apply_flip(t, args.triple))


def _pile_from_args(args):
    if args.pile is not None:
        return jsonio.decode_pile(_load(args.pile, "PILE"))
    if args.n is None:
        raise UsageError("--n: required when no pile file is given")
    if args.order is None:
        return tl.lex_standard_pile(args.n)[0]
    return tl.pile_from_admissible(args.order, args.n)


def cmd_tiling_pile(args):
    if args.count:
        if args.n is None:
            raise UsageError("--count: needs --n")
        return {"n": args.n, "piles": tl.count_piles(args.n)}
    p = _pile_from_args(args)
    out = jsonio.encode_pile(p, with_steps=True)
    out["final"] = jsonio.encode_tiling(p.tilings()[-1])
    return out


# -- complex --------------------------------------------------------------------


def _complex_arg(args):
    obj = _load(args.complex, "COMPLEX")
    if "start" in obj:
        c = cx.build_complex(jsonio.decode_pile(obj))
        values = faces = None
    else:
        c, values, faces = jsonio.decode_complex(obj, args.mode)
    if getattr(args, "tuple", None):
        t = jsonio.decode_tuple(_load(args.tuple, "--tuple"), args.mode)
        values = mn.tuple_on_complex(t, c)
    if getattr(args, "matrix", None):
        m = jsonio.decode_matrix(_load(args.matrix, "--matrix"), args.mode)
        values, faces = mn.matrix_khex_field(m, c)
    return c, values, faces


def cmd_complex_build(args):
    return jsonio.encode_complex(cx.build_complex(_pile_from_args(args)))


def cmd_complex_check(args):
    c, values, faces = _complex_arg(args)
    if values is None:
        raise UsageError("COMPLEX: no vertex values (give \"values\", --tuple or --matrix)")
    ctx = _ctx(args)
    rep = cx.check_complex_kashaev(c, values, ctx)
    coh = cx.check_complex_coherence(c, values, ctx)
    rep.findings.extend(coh.findings)
    rep.extra.update(coh.extra)
    if faces is not None:
        kh = cx.check_complex_khex(c, values, faces, ctx)
        rep.findings.extend(kh.findings)
        rep.mode = kh.mode
    rep.extra.update({"cubes": len(c.cubes), "interior": len(c.interior)})
    return rep.sorted()


def cmd_complex_comfortable(args):
    c, _, _ = _complex_arg(args)
    res = cx.is_comfortable(c)
    rep = Report(mode=EXACT)
    if not res.comfortable:
        rep.add("comfortable", None, res.dim_image_psi, res.dim_c2)
    rep.extra.update({"dim_image_psi": res.dim_image_psi, "dim_C2_space": res.dim_c2,
                      "image_in_C2": res.image_in_c2})
    return rep


def cmd_complex_extend(args):
    c, values, _ = _complex_arg(args)
    if values is None:
        raise UsageError("COMPLEX: no vertex values (give \"values\" or --tuple)")
    faces = cx.extend_on_complex(c, values, _ctx(args))
    return jsonio.encode_complex(c, values, faces)


# -- minors ---------------------------------------------------------------------


def cmd_minors_from_matrix(args):
    m = jsonio.decode_matrix(_load(args.matrix, "MATRIX"), args.mode)
    return jsonio.encode_tuple(mn.signed_minor_tuple(m))


def cmd_minors_test(args):
    t = jsonio.decode_tuple(_load(args.tuple, "TUPLE"), args.mode)
    res = mn.realizability_test(t, _ctx(args))
    rep = Report(mode=t.mode)
    if not res.ok:
        cert = dict(res.certificate)
        kind = cert.pop("kind")
        if kind == "kashaev":
            rep.add(kind, cert, cert.pop("value"), 0)
        else:
            lhs, rhs = cert.pop("lhs"), cert.pop("rhs")
            rep.add(kind, cert, lhs, rhs)
    return rep


def cmd_minors_reconstruct(args):
    t = jsonio.decode_tuple(_load(args.tuple, "TUPLE"), args.mode)
    return jsonio.encode_matrix(mn.reconstruct_symmetric(t, _ctx(args)))


# -- genrec ---------------------------------------------------------------------


def _instance_arg(args):
    return gr.make_instance(args.instance, args.params or ())


def cmd_genrec_run(args):
    if args.init is not None:
        inst, fld = jsonio.decode_grid(_load(args.init, "--init"), args.mode)
    else:
        if args.instance is None:
            raise UsageError("--instance: required without --init")
        inst, fld = _instance_arg(args), None
    shape = args.shape or gr.default_shape(inst)
    if len(shape) != inst.d:
        raise UsageError(f"--shape: {inst.name} needs {inst.d} extents")
    bases = gr.region(shape)
    if fld is not None:
        out = gr.sweep_gen(inst, fld.vertices, fld.faces, bases)
    else:
        rng = random.Random(args.seed)
        out = gr.positive_sweep(inst, shape, lambda: gr.random_positive(rng))
    return jsonio.encode_grid(inst, out)


def cmd_genrec_verify(args):
    inst, fld = jsonio.decode_grid(_load(args.grid, "GRID"), args.mode)
    ctx = _ctx(args)
    rep = gr.check_gen(inst, fld, ctx)
    coh = gr.gen_coherence_report(inst, fld, ctx)
    rep.findings.extend(coh.findings)
    rep.extra.update(coh.extra)
    return rep.sorted()


def cmd_genrec_signs(args):
    inst = _instance_arg(args)
    rng = random.Random(args.seed)
    rep = gr.verify_propagation_signs(inst, args.trials, rng, args.shape, _ctx(args))
    rep.extra["table"] = {",".join(str(x) for x in al): g for al, g in sorted(inst.gamma.items())}
    return rep


# -- parser ---------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=(EXACT, FLOAT), default=None,
                   help="numeric mode (default: exact when every input is rational)")
    p.add_argument("--rel-tol", type=_positive_float, default=None)
    p.add_argument("--abs-tol", type=_positive_float, default=None)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for per-cube checks")
    p.add_argument("--out", default=None, help="write the JSON document here")
    p.add_argument("--timing", action="store_true", help="include wall time in reports")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kashaev", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def verb(sub, name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    g = groups.add_parser("kashaev", help="fields on Z^3").add_subparsers(dest="verb", required=True)
    p = verb(g, "check", cmd_kashaev_check, "Kashaev equation (and K-hexahedron if faces given)")
    p.add_argument("field")
    p = verb(g, "run", cmd_kashaev_run, "positive recurrence from an initial slab")
    p.add_argument("field", nargs="?")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--size", type=int, default=6, help="slab size when no field is given")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--value", type=_positive_float, default=None, help="constant slab value")
    p = verb(g, "extend", cmd_kashaev_extend, "extend a coherent solution by face values")
    p.add_argument("field")
    p = verb(g, "coherence", cmd_kashaev_coherence, "coherence at interior vertices")
    p.add_argument("field")
    p.add_argument("--at", type=_point, default=None, help="single vertex i,j,k")

    g = groups.add_parser("tiling", help="rhombus tilings and piles").add_subparsers(dest="verb", required=True)
    p = verb(g, "min", cmd_tiling_min, "minimal tiling")
    p.add_argument("n", type=int)
    p = verb(g, "max", cmd_tiling_max, "maximal tiling")
    p.add_argument("n", type=int)
    p = verb(g, "flip", cmd_tiling_flip, "list flips, or apply one")
    p.add_argument("tiling")
    p.add_argument("triple", nargs="?", type=_triple)
    p = verb(g, "pile", cmd_tiling_pile, "build, validate or count piles")
    p.add_argument("pile", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=_order, help="flip order, e.g. 123,124,134,234")
    p.add_argument("--count", action="store_true")

    g = groups.add_parser("complex", help="directed cubical complexes").add_subparsers(dest="verb", required=True)
    p = verb(g, "build", cmd_complex_build, "complex of a pile")
    p.add_argument("pile", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=_order)
    for name, fn, help in (
        ("check", cmd_complex_check, "Kashaev, coherence and K-hexahedron checks"),
        ("comfortable", cmd_complex_comfortable, "GF(2) comfortableness"),
        ("extend", cmd_complex_extend, "extend vertex values by face values"),
    ):
        p = verb(g, name, fn, help)
        p.add_argument("complex", help="complex or pile JSON")
        if name != "comfortable":
            p.add_argument("--tuple", help="take vertex values from a minor tuple")
        if name == "check":
            p.add_argument("--matrix", help="take vertex and face values from a matrix")

    g = groups.add_parser("minors", help="signed minor tuples").add_subparsers(dest="verb", required=True)
    p = verb(g, "from-matrix", cmd_minors_from_matrix, "signed principal minors")
    p.add_argument("matrix")
    p = verb(g, "test", cmd_minors_test, "symmetric realizability")
    p.add_argument("tuple")
    p = verb(g, "reconstruct", cmd_minors_reconstruct, "a symmetric matrix with these minors")
    p.add_argument("tuple")

    g = groups.add_parser("genrec", help="general box recurrences").add_subparsers(dest="verb", required=True)
    for name, fn, help in (
        ("run", cmd_genrec_run, "sweep a region"),
        ("signs", cmd_genrec_signs, "empirical propagation signs"),
    ):
        p = verb(g, name, fn, help)
        p.add_argument("--instance", choices=sorted(gr.INSTANCES), required=name == "signs")
        p.add_argument("--params", type=_params, default=None)
        p.add_argument("--shape", type=lambda s: tuple(_ints(s)) if "," in s else (int(s),), default=None)
        p.add_argument("--seed", type=int, default=0)
        if name == "run":
            p.add_argument("--init", help="grid JSON with initial data")
        else:
            p.add_argument("--trials", type=int, default=100)
    p = verb(g, "verify", cmd_genrec_verify, "equations, face conditions and coherence")
    p.add_argument("grid")
    return parser


def _emit(doc: dict, args) -> None:
    text = jsonio.dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


VALUE_FLAGS = ("--params", "--at")


def _glue_values(argv: Sequence[str]) -> List[str]:
    """Attach values such as ``-3,-6,-4`` to the flag before them, which
    argparse would otherwise read as an unknown option."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_values(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VERDICT_ERRORS as exc:
        doc = {"verdict": "FAIL", "error": type(exc).__name__, "message": str(exc)}
        quad = getattr(exc, "quadruple", None)
        if quad is not None:
            doc["quadruple"] = list(quad)
        _emit(doc, args)
        return EXIT_FAIL
    except (KashaevError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        if type(exc) is KeyError:
            msg = f"missing {exc.args[0]!r}"
        elif isinstance(exc, KeyError) and exc.args:
            msg = str(exc.args[0])
        else:
            msg = str(exc)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            msg += f" (witness {witness})"
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(result, Report):
        result.timing = time.perf_counter() - start
        _emit(result.to_json(with_timing=args.timing), args)
        return EXIT_PASS if result.ok else EXIT_FAIL
    if args.timing:
        result["timing"] = time.perf_counter() - start
    _emit(result, args)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
