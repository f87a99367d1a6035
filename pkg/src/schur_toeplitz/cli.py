"""Command-line front end.

Symbols are JSON documents with exactly one payload::

    {"coeffs": {"p": 1, "values": ["2", "-3", "1"]}}          # a_{p-w} .. a_p
    {"roots":  {"p": 1, "a_p": "1", "z": ["1", "2"]}}
    {"eseq":   {"p": 1, "a_p": "1", "e": ["1", "3", "2"]}}    # series prefix

Results go to stdout as JSON (JSON Lines for ``--full``). Exit status is
0 on success, 2 for malformed input and 3 when the request has no answer.
"""

from __future__ import annotations

import argparse
import cmath
import json
import random
import sys
import time
from typing import Sequence

from .errors import InputError, MathError
from .partitions import SkewPartition, minor_shapes, skew_pieri
from .scalars import EXACT, FLOAT, XFloat, as_xfloat, format_scalar, parse_scalar, relative_deviation, to_backend
from .schur import skew_schur
from .symcore import ElemSeq, HomSeq, RootList
from .toeplitz import (
    ADJUGATE_METHODS,
    DETERMINANT_METHODS,
    MINOR_VARIANTS,
    EigenRequest,
    LaurentSpec,
    MinorRequest,
    adjugate_entries,
    adjugate_entry,
    banded_determinant,
    determinant,
    eigen_residual,
    eigenvector,
    geometric_form,
    inverse_entries,
    inverse_entry,
    minor,
)

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 2, 3

BENCH_DENSE_CUTOFF = 20000
# float results from different methods count as agreeing within this
AGREE_RTOL = 1e-8


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _scalar(value, exact_decimals: bool):
    if isinstance(value, bool):
        raise InputError("booleans are not scalars")
    if isinstance(value, int):
        return to_backend(value, EXACT)
    if isinstance(value, float):
        value = repr(value)
    if not isinstance(value, str):
        raise InputError(f"expected a scalar string, got {value!r}")
    return parse_scalar(value, exact_decimals=exact_decimals)


def _scalars(values, exact_decimals: bool) -> list:
    if not isinstance(values, list):
        raise InputError(f"expected a list of scalars, got {values!r}")
    return [_scalar(v, exact_decimals) for v in values]


def _resolve_backend(values: Sequence, requested: str | None) -> str:
    if requested == EXACT:
        for v in values:
            if isinstance(v, XFloat):
                raise InputError(f"{v} has no exact rational form; drop --backend exact")
        return EXACT
    if requested == FLOAT:
        return FLOAT
    return FLOAT if any(isinstance(v, XFloat) for v in values) else EXACT


def _int_field(doc: dict, key: str) -> int:
    value = doc.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"field {key!r} must be an integer")
    return value


def symbol_from_document(doc, backend: str | None = None) -> LaurentSpec:
    if not isinstance(doc, dict):
        raise InputError("symbol document must be a JSON object")
    keys = [k for k in ("coeffs", "roots", "eseq") if k in doc]
    if len(keys) != 1:
        raise InputError("symbol document needs exactly one of 'coeffs', 'roots', 'eseq'")
    kind = keys[0]
    body = doc[kind]
    if not isinstance(body, dict):
        raise InputError(f"{kind!r} must be an object")
    p = _int_field(body, "p")
    exact_decimals = backend == EXACT
    if kind == "coeffs":
        values = _scalars(body.get("values"), exact_decimals)
        chosen = _resolve_backend(values, backend)
        return LaurentSpec.from_coeffs(p, values, backend=chosen)
    if "a_p" not in body:
        raise InputError(f"{kind!r} payload needs 'a_p'")
    a_p = _scalar(body["a_p"], exact_decimals)
    if kind == "roots":
        z = _scalars(body.get("z"), exact_decimals)
        chosen = _resolve_backend(z + [a_p], backend)
        return LaurentSpec.from_roots(p, a_p, z, backend=chosen)
    e = _scalars(body.get("e"), exact_decimals)
    chosen = _resolve_backend(e + [a_p], backend)
    try:
        return LaurentSpec.from_eseq(p, a_p, e, backend=chosen)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def read_document(source: str):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from None


def _int_list(text: str) -> list[int]:
    text = text.strip().strip("()[]")
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def parse_shape(text: str) -> SkewPartition:
    """``"5,4,2/2"`` or ``"(5,4,2)/(2)"``; the inner part is optional."""
    outer, _, inner = text.partition("/")
    return SkewPartition.of(_int_list(outer), _int_list(inner))


def _scalar_list(text: str, backend: str | None) -> list:
    parts = [x.strip() for x in text.split(",") if x.strip()]
    return [parse_scalar(x, exact_decimals=backend == EXACT) for x in parts]


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt(x) -> str:
    return format_scalar(x)


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def _agree(values: list) -> bool:
    first = values[0]
    for v in values[1:]:
        if isinstance(first, XFloat) or isinstance(v, XFloat):
            if relative_deviation(first, v) > AGREE_RTOL:
                return False
        elif v != first:
            return False
    return True


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    value = fn(*args, **kwargs)
    return value, time.perf_counter() - start


def _load(args) -> LaurentSpec:
    return symbol_from_document(read_document(args.symbol), args.backend)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_det(args, out):
    a = _load(args)
    if args.method == "all":
        values, timings = {}, {}
        for m in DETERMINANT_METHODS:
            values[m], timings[m] = _timed(determinant, a, args.n, m)
        _emit(
            {
                "values": {m: _fmt(v) for m, v in values.items()},
                "agree": _agree(list(values.values())),
                "method": "all",
                "timings": timings,
            },
            out,
        )
        return
    value, seconds = _timed(determinant, a, args.n, args.method)
    _emit({"value": _fmt(value), "method": args.method, "timings": {args.method: seconds}}, out)


def cmd_minor(args, out):
    a = _load(args)
    req = MinorRequest(args.n, _int_list(args.strike_rows), _int_list(args.strike_cols))
    value = minor(a, req, args.variant)
    shapes = minor_shapes(req.n, a.p, req.struck_rows, req.struck_cols)
    sign = -1 if (a.p * req.m + req.struck_rows.total + req.struck_cols.total) % 2 else 1
    _emit(
        {
            "value": _fmt(value),
            "variant": args.variant,
            "sign": sign,
            "expanded": shapes.expanded.to_json(),
            "flipped": shapes.flipped.to_json(),
        },
        out,
    )


def _entry_command(args, out, single, stream):
    a = _load(args)
    if args.full:
        for r, s, value in stream(a, args.n, args.method):
            _emit({"r": r, "s": s, "value": _fmt(value)}, out)
        return
    if args.r is None or args.s is None:
        raise InputError("give r and s, or --full")
    value = single(a, args.n, args.r, args.s, args.method)
    _emit({"value": _fmt(value), "r": args.r, "s": args.s, "method": args.method}, out)


def cmd_adj(args, out):
    _entry_command(args, out, adjugate_entry, adjugate_entries)


def cmd_inv(args, out):
    _entry_command(args, out, inverse_entry, inverse_entries)


def _norm_inf(values) -> object:
    best = None
    for v in values:
        mag = abs(v)
        if best is None or (as_xfloat(mag).log2abs() > as_xfloat(best).log2abs()):
            best = mag
    return 0 if best is None else best


def cmd_eig(args, out):
    a = _load(args)
    x = parse_scalar(args.x, exact_decimals=a.backend == EXACT)
    roots = _scalar_list(args.shifted_roots, args.backend) if args.shifted_roots else None
    req = EigenRequest(args.n, x, tuple(roots) if roots is not None else None)
    v = eigenvector(a, req)
    residual = eigen_residual(a, x, v)
    zero = all(c == 0 for c in v)
    doc = {
        "v": [_fmt(c) for c in v],
        "residual_norm": _fmt(_norm_inf(residual)),
        "zero_vector": zero,
        "geometric": None,
    }
    if zero:
        doc["warning"] = (
            "the formula produced the zero vector; a null-space based construction would be needed"
        )
    if not a.series and a.p <= a.shift(x).w:
        try:
            gf = geometric_form(a, req)
        except MathError as exc:
            doc["geometric_unavailable"] = str(exc)
        else:
            doc["geometric"] = {"C": [_fmt(c) for c in gf.coefficients], "path": gf.path}
    _emit(doc, out)


def cmd_schur(args, out):
    sp = parse_shape(args.shape)
    if (args.roots is None) == (args.eseq is None):
        raise InputError("give exactly one of --roots or --eseq")
    if args.roots is not None:
        roots = RootList(_scalar_list(args.roots, args.backend), backend=args.backend)
        h = HomSeq(roots=roots)
    else:
        e = _scalar_list(args.eseq, args.backend)
        try:
            h = HomSeq(e=ElemSeq(e, backend=args.backend))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    value = skew_schur(sp, h)
    _emit({"value": _fmt(value), "shape": sp.to_json()}, out)


def cmd_expand(args, out):
    sp = parse_shape(args.shape)
    if len(sp.inner) > 1:
        raise InputError("expand needs an inner shape with a single part (r)")
    r = sp.inner[0] if sp.inner else 0
    if r == 0:
        terms = [list(sp.outer)]
    else:
        terms = [list(nu) for nu in skew_pieri(sp.outer, r)]
    _emit({"shape": sp.to_json(), "terms": terms}, out)


def random_bench_symbol(rng: random.Random, w: int, p: int) -> LaurentSpec:
    """Roots with winding number zero: ``w - p`` inside the unit disk and
    ``p`` outside, so ``T_n`` stays well conditioned as ``n`` grows."""
    zs = []
    for j in range(w):
        radius = rng.uniform(0.3, 0.9) if j < w - p else rng.uniform(1.2, 3.0)
        zs.append(XFloat(radius * cmath.exp(1j * rng.uniform(0.0, 2 * cmath.pi))))
    return LaurentSpec.from_roots(p, XFloat(1.0), zs, backend=FLOAT)


def cmd_bench(args, out):
    if not 0 <= args.p <= args.w:
        raise InputError("bench needs 0 <= p <= w")
    rng = random.Random(args.seed)
    a = random_bench_symbol(rng, args.w, args.p)
    rows = []
    for n in _int_list(args.n_list):
        if n < 1:
            raise InputError("orders must be positive")
        best, value = None, None
        for _ in range(max(1, args.repeat)):
            # a fresh symbol each time, so no cached h values carry over
            fresh = LaurentSpec(a.p, a.a_p, a.e, a.roots)
            value, seconds = _timed(determinant, fresh, n, "baxter_schmidt")
            best = seconds if best is None else min(best, seconds)
        row = {"n": n, "closed_form_seconds": best, "closed_form_value": _fmt(value)}
        if n <= BENCH_DENSE_CUTOFF:
            dense, seconds = _timed(banded_determinant, a, n)
            row.update(
                elimination_seconds=seconds,
                elimination_value=_fmt(dense),
                relative_deviation=relative_deviation(value, dense),
            )
        else:
            row.update(elimination_seconds="skipped", elimination_value="skipped", relative_deviation="skipped")
        rows.append(row)
    _emit({"p": args.p, "w": args.w, "seed": args.seed, "roots": [_fmt(z) for z in a.roots], "rows": rows}, out)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schur-toeplitz",
        description="Minors, determinants, inverses and eigenvectors of banded Toeplitz matrices "
        "through skew Schur polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_symbol(p):
        p.add_argument("symbol", help="symbol JSON file, or - for stdin")
        p.add_argument("n", type=int, help="matrix order")
        p.add_argument("--backend", choices=(EXACT, FLOAT), default=None)
        return p

    p = with_symbol(sub.add_parser("det", help="determinant"))
    p.add_argument("--method", choices=DETERMINANT_METHODS + ("all",), default="baxter_schmidt")
    p.set_defaults(func=cmd_det)

    p = with_symbol(sub.add_parser("minor", help="minor with rows and columns struck out"))
    p.add_argument("--strike-rows", default="", help="comma-separated 1-based rows")
    p.add_argument("--strike-cols", default="", help="comma-separated 1-based columns")
    p.add_argument("--variant", choices=MINOR_VARIANTS, default="expanded")
    p.set_defaults(func=cmd_minor)

    for name, func, text in (("adj", cmd_adj, "adjugate entry"), ("inv", cmd_inv, "inverse entry")):
        p = with_symbol(sub.add_parser(name, help=text))
        p.add_argument("r", type=int, nargs="?")
        p.add_argument("s", type=int, nargs="?")
        p.add_argument("--full", action="store_true", help="stream every entry as JSON Lines")
        p.add_argument("--method", choices=ADJUGATE_METHODS, default="skew")
        p.set_defaults(func=func)

    p = with_symbol(sub.add_parser("eig", help="eigenvector for a known eigenvalue"))
    p.add_argument("x", help="eigenvalue")
    p.add_argument("--shifted-roots", default=None, help="comma-separated roots of a - x")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("schur", help="evaluate a skew Schur polynomial")
    p.add_argument("shape", help='skew shape such as "5,4,2/2"')
    p.add_argument("--roots", default=None, help="comma-separated variables")
    p.add_argument("--eseq", default=None, help="comma-separated e_0, e_1, ...")
    p.add_argument("--backend", choices=(EXACT, FLOAT), default=None)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("expand", help="horizontal-strip expansion of lam/(r)")
    p.add_argument("shape", help='shape such as "8,8,8,5/2"')
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("bench", help="closed form against banded elimination")
    p.add_argument("--n-list", default="100,2000,20000,1000000")
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--w", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
