"""Command line surface: JSON lattice files, one subcommand per operation.

Lattice files are {"n": rank, "gram": [[entries]]} with every entry a string
holding an exact integer or "p/q" rational; no floating point ever touches a
file. Emission is canonical (sorted keys, two-space indent, trailing newline)
so identical lattices always serialize to identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import linalg as la
from .errors import LatticeError, RetryLimitExceeded
from .gaussian import estimate_acceptance
from .lattice import Lattice, dual, make_lattice, norm_sq
from .lip import automorphisms, find_isolating_dual, lip_decide, lip_general
from .reduction import (
    DEFAULT_DELTA,
    enumerate_below,
    kz_basis,
    lll_reduce,
    shortest_vector,
    successive_minima_sq,
)

_ENTRY_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _parse_entry(e) -> Fraction:
    if isinstance(e, bool):
        raise ValueError(f"not an exact number: {e!r}")
    if isinstance(e, int):
        return Fraction(e)
    if isinstance(e, str) and _ENTRY_RE.match(e.strip()):
        try:
            return Fraction(e.strip())
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in entry {e!r}") from None
    raise ValueError(f"entry {e!r} is not an integer or p/q rational string")


def parse_lattice_file(text: str) -> Lattice:
    """Parse and validate a JSON lattice file into a Lattice."""
    data = json.loads(text)
    if not isinstance(data, dict) or "n" not in data or "gram" not in data:
        raise ValueError('lattice file needs "n" and "gram" fields')
    n = data["n"]
    gram = data["gram"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError('"n" must be a nonnegative integer')
    if not isinstance(gram, list) or len(gram) != n:
        raise ValueError(f'"gram" must be a list of {n} rows')
    rows = []
    for row in gram:
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"every gram row must have {n} entries")
        rows.append(tuple(_parse_entry(e) for e in row))
    return make_lattice(tuple(rows))


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _lattice_obj(L: Lattice) -> dict:
    return {"n": L.n, "gram": [[str(e) for e in row] for row in L.gram]}


def format_lattice_file(L: Lattice) -> str:
    """Canonical byte-stable serialization of a lattice."""
    return _canonical(_lattice_obj(L))


def _load(path: str) -> Lattice:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice_file(fh.read())


def _mat_strs(U):
    return [[str(x) for x in row] for row in U]


def _vec_words(v) -> str:
    return " ".join(str(x) for x in v)


def _mat_words(U) -> str:
    return "; ".join(_vec_words(row) for row in U)


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _emit_isoms(isoms, as_json: bool) -> None:
    if as_json:
        print(_canonical({"count": len(isoms), "isoms": [_mat_strs(U) for U in isoms]}), end="")
    else:
        print(f"count: {len(isoms)}")
        for U in isoms:
            print(_mat_words(U))


def _cmd_decide(args) -> int:
    if lip_decide(_load(args.a), _load(args.b)):
        print("ISOMORPHIC")
        return 0
    print("NOT_ISOMORPHIC")
    return 1


def _cmd_isoms(args) -> int:
    _emit_isoms(lip_general(_load(args.a), _load(args.b)).isoms, args.json)
    return 0


def _cmd_auts(args) -> int:
    out = automorphisms(_load(args.a))
    if args.count_only:
        print(len(out.isoms))
    else:
        _emit_isoms(out.isoms, args.json)
    return 0


def _cmd_svp(args) -> int:
    L = _load(args.a)
    v = shortest_vector(L)
    nsq = norm_sq(L, v)
    if args.json:
        print(_canonical({"vector": [str(x) for x in v], "norm_sq": str(nsq)}), end="")
    else:
        print(f"vector: {_vec_words(v)}")
        print(f"norm_sq: {nsq}")
    return 0


def _cmd_enum(args) -> int:
    L = _load(args.a)
    vs = enumerate_below(L, args.bound_sq)
    if args.json:
        obj = {
            "bound_sq": str(args.bound_sq),
            "count": len(vs),
            "vectors": [[str(x) for x in v] for v in vs],
        }
        print(_canonical(obj), end="")
    else:
        for v in vs:
            print(_vec_words(v))
    return 0


def _cmd_kz(args) -> int:
    print(format_lattice_file(kz_basis(_load(args.a)).L), end="")
    return 0


def _cmd_dual(args) -> int:
    print(format_lattice_file(dual(_load(args.a))), end="")
    return 0


def _cmd_reduce(args) -> int:
    print(format_lattice_file(lll_reduce(_load(args.a), args.delta).L), end="")
    return 0


def _cmd_minima(args) -> int:
    mins = successive_minima_sq(_load(args.a))
    if args.json:
        print(_canonical({"minima_sq": [str(m) for m in mins]}), end="")
    else:
        for m in mins:
            print(m)
    return 0


def _cmd_isolate(args) -> int:
    iso = find_isolating_dual(_load(args.a), eps=args.eps, rng_seed=args.seed)
    if args.json:
        obj = {
            "chain": [[str(x) for x in v] for v in iso.chain.vectors],
            "w": [str(x) for x in iso.w],
        }
        print(_canonical(obj), end="")
    else:
        print(f"w: {_vec_words(iso.w)}")
        print(f"chain: {_mat_words(iso.chain.vectors)}")
    return 0


def _cmd_szk(args) -> int:
    rate = estimate_acceptance(_load(args.a), _load(args.b), args.rounds, args.seed)
    accepted = rate.numerator * args.rounds // rate.denominator
    if args.json:
        print(
            _canonical({"accepted": accepted, "rate": str(rate), "rounds": args.rounds}),
            end="",
        )
    else:
        print(f"rounds: {args.rounds}")
        print(f"accepted: {accepted}")
        print(f"rate: {rate}")
    return 0


def _random_unimodular(n: int, skew: int, rng: random.Random):
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 1:
        return tuple(tuple(row) for row in U)
    for _ in range(8 * n):
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        m = rng.randint(-skew, skew)
        for row in U:
            row[i] += m * row[j]
    return tuple(tuple(row) for row in U)


def _cmd_gen(args) -> int:
    n, skew = args.n, args.skew
    if n < 1:
        raise ValueError("rank must be at least 1")
    if skew < 0:
        raise ValueError("skew must be nonnegative")
    rng = random.Random(args.seed)
    for _ in range(10_000):
        W = tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n))
        if la.det(W) != 0:
            break
    else:
        raise RetryLimitExceeded("no invertible seed matrix found")
    La = make_lattice(la.mat_mul(la.transpose(W), W))
    U = _random_unimodular(n, skew, rng)
    Lb = make_lattice(la.mat_mul(la.mat_mul(la.transpose(U), La.gram), U))
    if args.out_a or args.out_b:
        if args.out_a:
            with open(args.out_a, "w", encoding="utf-8") as fh:
                fh.write(format_lattice_file(La))
        if args.out_b:
            with open(args.out_b, "w", encoding="utf-8") as fh:
                fh.write(format_lattice_file(Lb))
    else:
        print(_canonical({"a": _lattice_obj(La), "b": _lattice_obj(Lb)}), end="")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lattiso", description="exact lattice isomorphism toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    lip = sub.add_parser("lip", help="isomorphism decisions and certificates")
    lipsub = lip.add_subparsers(dest="action", required=True)
    d = lipsub.add_parser("decide", help="exit 0 if isomorphic, 1 if not")
    d.add_argument("a")
    d.add_argument("b")
    d.set_defaults(func=_cmd_decide)
    iso = lipsub.add_parser("isoms", help="all unimodular certificates")
    iso.add_argument("a")
    iso.add_argument("b")
    iso.add_argument("--json", action="store_true")
    iso.set_defaults(func=_cmd_isoms)
    auts = lipsub.add_parser("auts", help="automorphism group")
    auts.add_argument("a")
    auts.add_argument("--count-only", action="store_true")
    auts.add_argument("--json", action="store_true")
    auts.set_defaults(func=_cmd_auts)

    svp = sub.add_parser("svp", help="a shortest nonzero vector")
    svp.add_argument("a")
    svp.add_argument("--json", action="store_true")
    svp.set_defaults(func=_cmd_svp)

    en = sub.add_parser("enum", help="all vectors with squared norm at most the bound")
    en.add_argument("a")
    en.add_argument("--bound-sq", type=_fraction_arg, required=True)
    en.add_argument("--json", action="store_true")
    en.set_defaults(func=_cmd_enum)

    kz = sub.add_parser("kz", help="Korkine-Zolotarev reduced Gram matrix")
    kz.add_argument("a")
    kz.set_defaults(func=_cmd_kz)

    du = sub.add_parser("dual", help="dual lattice Gram matrix")
    du.add_argument("a")
    du.set_defaults(func=_cmd_dual)

    red = sub.add_parser("reduce", help="LLL reduced Gram matrix")
    red.add_argument("a")
    red.add_argument("--delta", type=_fraction_arg, default=DEFAULT_DELTA)
    red.set_defaults(func=_cmd_reduce)

    mi = sub.add_parser("minima", help="successive minima, squared")
    mi.add_argument("a")
    mi.add_argument("--json", action="store_true")
    mi.set_defaults(func=_cmd_minima)

    isol = sub.add_parser("isolate", help="isolating dual vector and its chain")
    isol.add_argument("a")
    isol.add_argument("--eps", type=_fraction_arg, default=Fraction(1, 2))
    isol.add_argument("--seed", type=int, default=0)
    isol.add_argument("--json", action="store_true")
    isol.set_defaults(func=_cmd_isolate)

    szk = sub.add_parser("szk", help="Gram-exchange protocol acceptance rate")
    szk.add_argument("a")
    szk.add_argument("b")
    szk.add_argument("--rounds", type=int, default=100)
    szk.add_argument("--seed", type=int, default=0)
    szk.add_argument("--json", action="store_true")
    szk.set_defaults(func=_cmd_szk)

    gen = sub.add_parser("gen", help="random isomorphic instance pair")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--skew", type=int, default=2)
    gen.add_argument("--out-a")
    gen.add_argument("--out-b")
    gen.set_defaults(func=_cmd_gen)

    return p


def cli_main(argv=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (LatticeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
