"""Command line front end: JSON in, JSON out.

Every verb prints one canonical JSON document (sorted keys, floats with 17
significant digits) so identical command/seed pairs are byte-identical.
Exit codes: 0 success, 1 domain error (payload {"error", "detail"}),
2 usage errors and malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import catalog, modular, numkit, roots, semigroup, verify
from .errors import Grade3Error
from .liealg import GroupElement, LieAlgebraSpec, grade_by
from .numkit import Tolerance

__all__ = ["main"]

_ROOT_DEMOS = {
    "sl2": lambda: (catalog.get_entry("sl2").algebra,
                    np.array([[0.0, 1.0, -1.0]])),
    "su2": lambda: (catalog.build_su2(), np.array([[1.0, 0.0, 0.0]])),
}


# -- canonical JSON -----------------------------------------------------


def _fmt_float(x) -> str:
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("non-finite number in CLI output")
    return format(x, ".17g")


def render_json(obj, compact: bool = False, indent: int = 0) -> str:
    """Canonical renderer: sorted keys, floats at 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return render_json(obj.tolist(), compact, indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        sep = ":" if compact else ": "
        items = []
        for k in sorted(obj):
            if not isinstance(k, str):
                raise TypeError("JSON object keys must be strings")
            items.append(json.dumps(k) + sep + render_json(obj[k], compact, indent + 1))
        if compact:
            return "{" + ",".join(items) + "}"
        pad = "  " * (indent + 1)
        body = ",\n".join(pad + it for it in items)
        return "{\n" + body + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [render_json(v, compact, indent + 1) for v in obj]
        if compact:
            return "[" + ",".join(items) + "]"
        pad = "  " * (indent + 1)
        return "[\n" + ",\n".join(pad + it for it in items) + "\n" + "  " * indent + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- input plumbing -----------------------------------------------------


class UsageError(Exception):
    pass


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from exc


def _read_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return _load_json(text, path)


def _as_matrix(obj, what: str) -> np.ndarray:
    if isinstance(obj, str):
        obj = _load_json(obj, what)
    if isinstance(obj, dict):
        try:
            return numkit.matrix_from_json(obj)
        except (ValueError, TypeError, KeyError) as exc:
            raise UsageError(f"bad matrix object for {what}: {exc}") from exc
    try:
        m = np.asarray(obj, dtype=float)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad matrix literal for {what}: {exc}") from exc
    if m.ndim != 2:
        raise UsageError(f"{what} must be a matrix (nested lists)")
    return m


def _document(args):
    """The JSON document behind --file, or None."""
    if getattr(args, "file", None):
        doc = _read_file(args.file)
        if not isinstance(doc, dict):
            raise UsageError(f"{args.file} must hold a JSON object")
        return doc
    return None


def _load_setting(args):
    """(algebra, grading, cone or None) from --demo or --file."""
    doc = _document(args)
    if getattr(args, "demo", None):
        entry = catalog.get_entry(args.demo)
        return entry.algebra, entry.grading, entry.cone, entry
    if doc is None:
        raise UsageError("need --demo NAME or --file FILE")
    try:
        algebra = LieAlgebraSpec.from_json(doc["algebra"])
        h = np.asarray(doc["h"], dtype=float)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad algebra document: {exc}") from exc
    grading = grade_by(algebra, h)
    cone = None
    if "cone" in doc:
        try:
            from .cones import Cone
            cone = Cone.from_json(doc["cone"], ambient_dim=algebra.dim)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad cone document: {exc}") from exc
    return algebra, grading, cone, None


def _need_g(args, algebra) -> GroupElement:
    doc = _document(args)
    if getattr(args, "g", None) is not None:
        m = _as_matrix(args.g, "--g")
    elif doc is not None and "g" in doc:
        m = _as_matrix(doc["g"], "file entry 'g'")
    else:
        raise UsageError("need a group element via --g or a 'g' file entry")
    try:
        return GroupElement(algebra, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- verb handlers ------------------------------------------------------


def _cmd_grade(args, tol, rng):
    algebra, grading, _, entry = _load_setting(args)
    return 0, {"dims": list(grading.dims)}


def _cmd_member(args, tol, rng):
    algebra, grading, cone, entry = _load_setting(args)
    if cone is None:
        raise UsageError("membership needs a cone (catalog demo or 'cone' entry)")
    g = _need_g(args, algebra)
    return 0, {"member": semigroup.member_ShC(g, grading, cone, tol)}


def _cmd_factor(args, tol, rng):
    algebra, grading, cone, entry = _load_setting(args)
    g = _need_g(args, algebra)
    f = semigroup.triangular_factor(g, grading, args.order, tol)
    return 0, f.to_json()


def _cmd_polar(args, tol, rng):
    algebra, grading, cone, entry = _load_setting(args)
    g = _need_g(args, algebra)
    f = semigroup.polar_factor(g, grading, tol)
    return 0, f.to_json()


def _cmd_modular(args, tol, rng):
    doc = _document(args)
    if args.random is not None:
        if args.random < 1:
            raise UsageError("--random needs a positive dimension")
        v = modular.random_standard_subspace(int(args.random), rng)
    elif doc is not None:
        try:
            v = modular.StandardSubspace.from_json(doc)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        raise UsageError("need --file SUBSPACE.json or --random N")
    pair = modular.modular_pair(v, tol)
    back = modular.standard_from_pair(pair, tol)
    return 0, {
        "subspace": v.to_json(),
        "pair": pair.to_json(),
        "roundtrip_gap": modular.subspace_gap_standard(v, back),
    }


def _cmd_monotone(args, tol, rng):
    doc = _document(args)
    if args.random is not None:
        n = int(args.random)
        if n < 1:
            raise UsageError("--random needs a positive dimension")
        r = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = r.conj().T @ r + 0.1 * np.eye(n)
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        b = a + m.conj().T @ m
    elif doc is not None:
        if "a" not in doc or "b" not in doc:
            raise UsageError("monotone file needs entries 'a' and 'b'")
        a = _as_matrix(doc["a"], "'a'")
        b = _as_matrix(doc["b"], "'b'")
    else:
        raise UsageError("need --file PAIR.json or --random N")
    rep = modular.log_monotone_check(a, b, trials=args.samples, tol=tol,
                                     rng=np.random.default_rng([int(args.seed), 1]))
    return 0, rep


def _cmd_roots(args, tol, rng):
    doc = _document(args)
    if getattr(args, "demo", None):
        if args.demo not in _ROOT_DEMOS:
            raise UsageError(
                f"root demos: {', '.join(sorted(_ROOT_DEMOS))} (got {args.demo!r})")
        algebra, cartan = _ROOT_DEMOS[args.demo]()
    elif doc is not None:
        try:
            algebra = LieAlgebraSpec.from_json(doc["algebra"])
            cartan = np.asarray(doc["cartan"], dtype=float)
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"bad roots document: {exc}") from exc
    else:
        raise UsageError("need --demo NAME or --file FILE")
    datum = roots.root_decomposition(algebra, cartan, tol)
    out = {"datum": datum.to_json()}
    if args.x0 is not None:
        x0 = np.asarray(_load_json(args.x0, "--x0"), dtype=float)
        cone = roots.c_max(datum, x0, tol)
        out["c_max_generators"] = [[float(v) for v in col]
                                   for col in cone.generators.T]
    return 0, out


def _cmd_demo(args, tol, rng):
    entry = catalog.get_entry(args.name)
    g = catalog.sample_semigroup_element(entry, rng)
    f = semigroup.triangular_factor(g, entry.grading, "+0-", tol)
    return 0, {
        "entry": entry.to_json(),
        "example": {
            "semigroup_element": numkit.matrix_to_json(g.matrix),
            "member": semigroup.member_ShC(g, entry.grading, entry.cone, tol),
            "factorization": f.to_json(),
        },
    }


def _cmd_verify(args, tol, rng):
    rep = verify.run_suite(args.suite, seed=int(args.seed),
                           samples=int(args.samples), tol=tol)
    return (0 if rep["pass"] else 1), rep


# -- argument parsing ---------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grade3",
        description="3-graded Lie algebras: gradings, cones, compression "
                    "semigroups, modular theory.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance (default: GRADE3_TOL env or 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--samples", type=int, default=200,
                        help="sample count for randomized verbs (default 200)")
    common.add_argument("--json", action="store_true",
                        help="compact single-line JSON instead of pretty-printed")

    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, help_, **kw):
        return sub.add_parser(name, parents=[common], help=help_, **kw)

    p = add("grade", "eigenspace dimensions of a 3-grading")
    p.add_argument("--demo", choices=catalog.ENTRY_NAMES)
    p.add_argument("--file", help="JSON document with 'algebra' and 'h'")

    for name, help_ in (("member", "compression-semigroup membership"),
                        ("factor", "triangular factorization in the open cell"),
                        ("polar", "polar factorization g0 exp(x)")):
        p = add(name, help_)
        p.add_argument("--demo", choices=catalog.ENTRY_NAMES)
        p.add_argument("--file", help="JSON document ('algebra', 'h', optional 'cone', 'g')")
        p.add_argument("--g", help="group element as a JSON matrix")
        if name == "factor":
            p.add_argument("--order", choices=("+0-", "-0+"), default="+0-",
                           help="factor order (write --order=-0+ for the "
                                "mirrored cell)")

    p = add("modular", "modular pair of a standard subspace")
    p.add_argument("--file", help="JSON document with a subspace 'basis'")
    p.add_argument("--random", type=int, metavar="N",
                   help="use a seeded random standard subspace of C^N")

    p = add("monotone", "operator-monotonicity certificate for log")
    p.add_argument("--file", help="JSON document with matrices 'a' and 'b'")
    p.add_argument("--random", type=int, metavar="N",
                   help="use a seeded random pair A <= B of size N")

    p = add("roots", "root decomposition for a compactly embedded Cartan")
    p.add_argument("--demo", choices=sorted(_ROOT_DEMOS))
    p.add_argument("--file", help="JSON document with 'algebra' and 'cartan'")
    p.add_argument("--x0", help="regular element (JSON list, Cartan coordinates) "
                               "to also report c_max generators")

    p = add("demo", "bundled example with a worked factorization")
    p.add_argument("name", choices=catalog.DEMO_NAMES)

    p = add("verify", "run an invariant suite")
    p.add_argument("suite", choices=verify.SUITE_NAMES)
    return parser


_HANDLERS = {
    "grade": _cmd_grade,
    "member": _cmd_member,
    "factor": _cmd_factor,
    "polar": _cmd_polar,
    "modular": _cmd_modular,
    "monotone": _cmd_monotone,
    "roots": _cmd_roots,
    "demo": _cmd_demo,
    "verify": _cmd_verify,
}


def _resolve_tol(args) -> Tolerance:
    value = args.tol
    if value is None:
        env = os.environ.get("GRADE3_TOL")
        if env is not None:
            try:
                value = float(env)
            except ValueError as exc:
                raise UsageError(f"bad GRADE3_TOL value {env!r}") from exc
    if value is None:
        return Tolerance()
    try:
        return Tolerance(abs_tol=value, rel_tol=value)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _resolve_tol(args)
        rng = np.random.default_rng([int(args.seed), 0])
        code, payload = _HANDLERS[args.verb](args, tol, rng)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Grade3Error as exc:
        payload = {"error": type(exc).__name__, "detail": str(exc)}
        print(render_json(payload, compact=args.json))
        return 1
    print(render_json(payload, compact=args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
