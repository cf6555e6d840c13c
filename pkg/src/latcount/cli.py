"""Command-line front end: ``latcount <command> INSTANCE [options]``.

Instance files are JSON objects ``{"A": [[...], ...], "name": "..."}``.
Vectors are comma separated: ``--y 2,1``, ``--z 1/2,1/3``.

Text output
-----------
``count``   the integer count.
``hfunc``   the value ``p/q``; with ``--symbolic`` one line per term,
            ``coef * z^[e1,...,en] / (1 - z^[b1,...,bn])^mult * ...``
            (an empty denominator prints as ``1``).
``oracle``  one point ``[x1,...,xn]`` per line.
``bases``   ``sigma={..} mu=.. type=[..] nu={k:nu,...}`` per basis (1-based).

With ``--json`` the output is ``{"count": int}``, ``{"value": "p/q"}``,
``{"terms": [...]}``, ``{"points": [...]}``, ``{"bases": [...]}``, and for
``verify``/``expand``/``table`` a summary object.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 internal
inconsistency (including a failed ``verify`` or ``expand``).
"""

import argparse
import json
import random
import sys
from fractions import Fraction

import mpmath

from . import dual, oracle, primal
from .errors import DomainError, LatticeError, ParseError, UnboundedError
from .polyalg import (count_at_one, evaluate_at, format_terms, generic_direction,
                      specialize_univariate, sum_to_json)
from .structure import QuotientGroup, chamber_bases, enumerate_bases, in_cone, is_bounded, nu_order
from .validation import check_instance_matrix


def parse_instance(path):
    """Read an instance file; returns ``(A, name)``."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "A" not in doc:
        raise ParseError(f"{path}: expected an object with key \"A\"")
    rows = doc["A"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and r for r in rows):
        raise ParseError(f"{path}: \"A\" must be a non-empty array of non-empty arrays")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"{path}: A[{i}][{j}] = {v!r} is not an integer")
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"{path}: rows of \"A\" have different lengths")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"{path}: \"name\" must be a string")
    return check_instance_matrix(rows), name


def parse_int_vector(text, length):
    try:
        out = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ParseError(f"cannot parse {text!r} as comma-separated integers") from None
    if len(out) != length:
        raise ParseError(f"expected {length} integers, got {len(out)}")
    return out


def parse_rational_vector(text, length):
    try:
        out = tuple(Fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse {text!r} as comma-separated rationals") from None
    if len(out) != length:
        raise ParseError(f"expected {length} rationals, got {len(out)}")
    return out


def _braces(idx):
    return "{" + ",".join(str(i + 1) for i in idx) + "}"


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _h(args, A, y):
    rng = random.Random(args.seed)
    if getattr(args, "dual", False):
        return dual.h_dual(A, y, dual.DualShiftTable(A, rng=rng))
    return primal.h_primal(A, y, starred=not args.full, rng=rng)


def cmd_bases(args, A):
    rows, items = [], []
    for b in enumerate_bases(A):
        g = QuotientGroup(b)
        nus = {k: nu_order(b, k) for k in b.complement}
        rows.append(f"sigma={_braces(b.sigma)} mu={b.mu} type={list(g.type_vector)} "
                    "nu={" + ",".join(f"{k + 1}:{v}" for k, v in nus.items()) + "}")
        items.append({"sigma": [i + 1 for i in b.sigma], "mu": b.mu,
                      "type": list(g.type_vector), "nu": {str(k + 1): v for k, v in nus.items()}})
    _emit(args, {"bases": items}, rows)
    return 0


def _approx_count(expr, eps, rng):
    c = generic_direction(expr, rng)
    t = mpmath.mpf(1) - mpmath.mpf(eps.numerator) / eps.denominator
    total = mpmath.mpf(0)
    for term in specialize_univariate(expr, c):
        num = mpmath.fsum(mpmath.mpf(coef.numerator) / coef.denominator * t ** e
                          for e, coef in term.numerator.items())
        den = mpmath.mpf(1)
        for d, k in term.denominator.items():
            den *= (1 - t ** d) ** k
        total += num / den
    return total


def cmd_count(args, A):
    y = parse_int_vector(args.y, len(A))
    if args.table:
        with open(args.table) as fh:
            table = primal.ChamberTable.from_json(fh.read())
        if table.A != A:
            raise DomainError("table was built for a different matrix")
        expr = primal.h_from_table(table, y)
    else:
        if not is_bounded(A):
            raise UnboundedError("the polyhedra are unbounded; counts are infinite")
        expr = _h(args, A, y)
    if args.approx is not None:
        try:
            eps = Fraction(args.approx)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse --approx {args.approx!r}") from None
        if not 0 < eps < 1:
            raise DomainError("--approx needs 0 < eps < 1")
        with mpmath.workdps(60):
            value = _approx_count(expr, eps, random.Random(args.seed))
            count = int(mpmath.nint(value))
            raw = mpmath.nstr(value, 20)
        _emit(args, {"count": count, "approx_value": raw, "certified": False},
              [str(count)])
        return 0
    count = count_at_one(expr, random.Random(args.seed))
    _emit(args, {"count": count}, [str(count)])
    return 0


def cmd_hfunc(args, A):
    y = parse_int_vector(args.y, len(A))
    expr = _h(args, A, y)
    if args.symbolic:
        _emit(args, {"terms": sum_to_json(expr)}, format_terms(expr))
        return 0
    if args.z is None:
        raise ParseError("--z is required unless --symbolic is given")
    z = parse_rational_vector(args.z, len(A[0]))
    value = evaluate_at(expr, z)
    _emit(args, {"value": str(value)}, [str(value)])
    return 0


def cmd_table(args, A):
    y = parse_int_vector(args.y, len(A))
    chamber = chamber_bases(A, y, rng=random.Random(args.seed))
    if not chamber.bases:
        raise DomainError(f"y={list(y)} is outside the cone generated by the columns")
    table = primal.build_chamber_table(A, chamber=chamber, starred=not args.full)
    text = table.to_json()
    with open(args.out, "w") as fh:
        fh.write(text + "\n")
    sizes = {_braces(e.basis.sigma): len(e.r1) for e in table.entries}
    _emit(args, {"out": args.out, "bases": sizes},
          [f"wrote {args.out}"] + [f"sigma={s} classes={v}" for s, v in sizes.items()])
    return 0


def cmd_expand(args, A):
    z = parse_rational_vector(args.z, len(A[0]))
    report = dual.verify_expansion(A, z, args.box, dual.DualShiftTable(A, rng=random.Random(args.seed)))
    _emit(args, {"checked": len(report.status), "mismatches": [list(y) for y in report.mismatches],
                 "ok": report.ok}, report.format().splitlines())
    return 0 if report.ok else 4


def cmd_oracle(args, A):
    y = parse_int_vector(args.y, len(A))
    pts = oracle.enumerate_points(A, y)
    _emit(args, {"points": [list(p) for p in pts]},
          ["[" + ",".join(map(str, p)) + "]" for p in pts])
    return 0


def cmd_verify(args, A):
    if not is_bounded(A):
        raise UnboundedError("verification against the oracle needs a bounded instance")
    rng = random.Random(args.seed)
    m = len(A)
    bases = enumerate_bases(A)
    dtable = dual.DualShiftTable(A, bases, rng=random.Random(args.seed))
    tables = {}
    names = ("primal", "primal_full", "table", "dual")
    agree = dict.fromkeys(names, 0)
    failures = []
    done = 0
    for _ in range(args.samples):
        for _attempt in range(1000):
            y = tuple(rng.randint(-1, args.max_y) for _ in range(m))
            if in_cone(bases, y):
                break
        else:
            break
        done += 1
        truth = oracle.count_points(A, y)
        chamber = chamber_bases(A, y, bases=bases, rng=random.Random(args.seed))
        key = tuple(b.sigma for b in chamber.bases)
        if key not in tables:
            tables[key] = primal.build_chamber_table(A, chamber=chamber)
        got = {
            "primal": primal.h_primal(A, y, True, chamber=chamber),
            "primal_full": primal.h_primal(A, y, False, chamber=chamber),
            "table": primal.h_from_table(tables[key], y),
            "dual": dual.h_dual(A, y, dtable),
        }
        for name in names:
            value = count_at_one(got[name], rng)
            if value == truth:
                agree[name] += 1
            else:
                failures.append((name, y, value, truth))
    ok = not failures and done == args.samples
    lines = [f"samples={done} seed={args.seed}"]
    lines += [f"{name}: {agree[name]}/{done}" for name in names]
    lines += [f"mismatch {name} y={list(y)} got={v} oracle={t}" for name, y, v, t in failures]
    lines.append(f"result={'PASS' if ok else 'FAIL'}")
    _emit(args, {"samples": done, "seed": args.seed, "agree": agree,
                 "failures": [{"pipeline": f, "y": list(y), "got": v, "oracle": t}
                              for f, y, v, t in failures], "ok": ok}, lines)
    return 0 if ok else 4


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", help="JSON instance file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")

    p = argparse.ArgumentParser(prog="latcount", description="Exact lattice-point counting for {x >= 0 : Ax = y}.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bases", parents=[common], help="list bases, determinants and orders")
    s.set_defaults(func=cmd_bases)

    s = sub.add_parser("count", parents=[common], help="count lattice points")
    s.add_argument("--y", required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--dual", action="store_true", help="use the dual expansion")
    mode.add_argument("--table", metavar="FILE", help="use a stored chamber table")
    s.add_argument("--full", action="store_true", help="unreduced primal numerators")
    s.add_argument("--approx", metavar="EPS", help="non-certified: round h at z_k=(1-EPS)^c_k")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("hfunc", parents=[common], help="evaluate or print h(y; z)")
    s.add_argument("--y", required=True)
    s.add_argument("--z")
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--dual", action="store_true")
    s.add_argument("--full", action="store_true")
    s.set_defaults(func=cmd_hfunc)

    s = sub.add_parser("table", parents=[common], help="build and save the chamber table of y")
    s.add_argument("--y", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--full", action="store_true")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("expand", parents=[common], help="coefficient check of the dual expansion")
    s.add_argument("--z", required=True)
    s.add_argument("--box", type=int, default=6)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", parents=[common], help="random cross-check of every pipeline")
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--max-y", type=int, default=12)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="list the lattice points")
    s.add_argument("--y", required=True)
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        A, _ = parse_instance(args.instance)
        return args.func(args, A)
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
