"""Command-line front end.

JSON goes to standard output, diagnostics to standard error.  Exit codes:
0 holds / yes, 1 fails / no, 2 unknown, 3 malformed input.  Any input
argument may be a JSON file path, ``-`` for standard input, or ``@<id>`` for
a gallery instance.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import gallery
from .carrier import (
    canonical_nerve_map,
    compose,
    invert,
    is_carried,
    is_weakly_carried,
    validate_carrier,
)
from .complex import SimplicialComplex, barycentric_subdivision, complexes_isomorphic
from .cover import Cover, barycentric_star_cover, check_regularity, nerve, open_star_cover
from .homology import homology
from .homotopy import verify_n_nerve_theorem, verify_nerve_theorem
from .serialize import (
    boundary_matrices_json,
    carrier_from_json,
    carrier_to_json,
    complex_from_json,
    complex_to_json,
    cover_from_json,
    cover_to_json,
    dumps,
    map_from_json,
    map_to_json,
    nerve_to_json,
)
from .verdict import MalformedInput, ResourceLimit, UnknownCertificate, Verdict

EXIT_MALFORMED = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(arg: str):
    """Return (json value, base dir) for a path, ``-`` or ``@instance``."""
    if arg.startswith("@"):
        x = gallery.make(arg[1:])
        return (cover_to_json(x) if isinstance(x, Cover) else complex_to_json(x)), None
    if arg == "-":
        text, base = sys.stdin.read(), Path.cwd()
    else:
        path = Path(arg)
        text, base = path.read_text(), path.parent
    try:
        return json.loads(text), base
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{arg}: {e}") from None


def _complex(arg: str) -> SimplicialComplex:
    return complex_from_json(*_read(arg))


def _cover(arg: str) -> Cover:
    return cover_from_json(*_read(arg))


def _cmd_nerve(a):
    N = nerve(_cover(a.cover), a.dimension_cap)
    return nerve_to_json(N), 0


def _cmd_stars(a):
    K = _complex(a.complex)
    F = open_star_cover(K) if a.type == "open" else barycentric_star_cover(K)
    return cover_to_json(F), 0


def _cmd_check_cover(a):
    if a.mode == "n" and a.n is None:
        raise UsageError("--mode n requires --n")
    report = check_regularity(_cover(a.cover), a.mode, a.n)
    return report.to_json(), report.verdict.exit_code


def _cmd_carrier(a):
    carriers = [carrier_from_json(*_read(p)) for p in a.carriers]
    if a.action == "validate":
        if len(carriers) != 1:
            raise UsageError("carrier validate takes one carrier")
        chk = validate_carrier(carriers[0])
        return {"verdict": chk.verdict.value, "witness": chk.witness, "proxy_notes": []}, chk.verdict.exit_code
    if a.action == "compose":
        if len(carriers) < 2:
            raise UsageError("carrier compose takes two or more carriers")
        out = carriers[0]
        for nxt in carriers[1:]:
            out = compose(out, nxt)
        chk = validate_carrier(out)
        return {**carrier_to_json(out), "valid": chk.verdict.value}, chk.verdict.exit_code
    if len(carriers) != 1:
        raise UsageError("carrier invert takes one carrier")
    inv = invert(carriers[0])
    if inv is None:
        return {"verdict": Verdict.FAILS.value, "inverse": None}, 1
    return {"verdict": Verdict.HOLDS.value, "inverse": carrier_to_json(inv)}, 0


def _cmd_verify(a):
    F = _cover(a.cover)
    cid = Path(a.cover).name if not a.cover.startswith("@") else a.cover[1:]
    report = verify_nerve_theorem(F, cid) if a.n is None else verify_n_nerve_theorem(F, a.n, cid)
    return report.to_json(), report.verdict.exit_code


def _cmd_homology(a):
    K = _complex(a.complex)
    out = homology(K, reduced=a.reduced).to_json()
    if a.debug_matrices:
        out["boundary_matrices"] = boundary_matrices_json(K)
    return out, 0


def _cmd_map(a):
    if a.action == "canonical":
        if len(a.inputs) != 1:
            raise UsageError("map canonical takes one cover")
        return map_to_json(canonical_nerve_map(_cover(a.inputs[0]))), 0
    if len(a.inputs) != 2:
        raise UsageError("map check-carried takes a map and a carrier")
    f = map_from_json(*_read(a.inputs[0]))
    C = carrier_from_json(*_read(a.inputs[1]))
    chk = (is_weakly_carried if a.weak else is_carried)(f, C)
    out = {
        "verdict": chk.verdict.value,
        "weak": a.weak,
        "subdivided": f.source == barycentric_subdivision(C.domain.base) and f.source != C.domain.base,
        "witness": chk.witness,
        "proxy_notes": list(chk.notes),
    }
    return out, chk.verdict.exit_code


def _cmd_gen(a):
    x = gallery.make(a.instance)
    return (cover_to_json(x) if isinstance(x, Cover) else complex_to_json(x)), 0


def _cmd_iso(a):
    K1, K2 = _complex(a.first), _complex(a.second)
    bij = complexes_isomorphic(K1, K2)
    if bij is None:
        return {"verdict": Verdict.FAILS.value, "bijection": None}, 1
    return {"verdict": Verdict.HOLDS.value, "bijection": {str(k): str(v) for k, v in bij.items()}}, 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["pretty", "compact"], default=argparse.SUPPRESS)
    common.add_argument("--timestamps", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="carriernerve", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("nerve", parents=[common], help="nerve of a cover")
    s.add_argument("cover")
    s.add_argument("--dimension-cap", type=int)
    s.set_defaults(func=_cmd_nerve)

    s = sub.add_parser("stars", parents=[common], help="open or barycentric star cover")
    s.add_argument("--type", choices=["open", "barycentric"], required=True)
    s.add_argument("complex")
    s.set_defaults(func=_cmd_stars)

    s = sub.add_parser("check-cover", parents=[common], help="regularity certificates")
    s.add_argument("--mode", choices=["regular", "weak", "n"], default="regular")
    s.add_argument("--n", type=int)
    s.add_argument("cover")
    s.set_defaults(func=_cmd_check_cover)

    s = sub.add_parser("carrier", parents=[common], help="validate, compose or invert carriers")
    s.add_argument("action", choices=["validate", "compose", "invert"])
    s.add_argument("carriers", nargs="+")
    s.set_defaults(func=_cmd_carrier)

    s = sub.add_parser("verify", parents=[common], help="nerve-theorem verification")
    s.add_argument("cover")
    s.add_argument("--n", type=int)
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("homology", parents=[common], help="integer homology")
    s.add_argument("complex")
    s.add_argument("--reduced", action="store_true")
    s.add_argument("--debug-matrices", action="store_true")
    s.set_defaults(func=_cmd_homology)

    s = sub.add_parser("map", parents=[common], help="canonical nerve map or carried check")
    s.add_argument("action", choices=["canonical", "check-carried"])
    s.add_argument("inputs", nargs="+")
    s.add_argument("--weak", action="store_true")
    s.set_defaults(func=_cmd_map)

    s = sub.add_parser("gen", parents=[common], help="emit a gallery instance")
    s.add_argument("instance")
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("iso", parents=[common], help="complex isomorphism search")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=_cmd_iso)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    fmt = "pretty"
    try:
        args = build_parser().parse_args(argv)
        fmt = getattr(args, "format", "pretty")
        payload, code = args.func(args)
        if getattr(args, "timestamps", False):
            payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    except (UsageError, MalformedInput, KeyError, ValueError, OSError, ResourceLimit, UnknownCertificate) as e:
        kind = type(e).__name__
        msg = e.args[0] if e.args else str(e)
        print(f"carriernerve: {kind}: {msg}", file=err)
        print(dumps({"error": {"type": kind, "message": str(msg)}}, fmt), file=out)
        return EXIT_MALFORMED
    print(dumps(payload, fmt), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
