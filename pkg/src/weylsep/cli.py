"""Command line front end.

Exit codes: 0 success, 1 verification counterexample, 2 usage or input
error, 3 enumeration guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import patterns as pat
from . import verify
from .rootsys import UnknownCartanType, build
from .separable import certificate
from .weyl import (CACHE_VERSION, DEFAULT_MAX_ELEMENTS, EnumerationTooLarge, check_guard, enumerate_group,
                   from_inversions, from_oneline, from_word, load_group, save_group)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _system(args):
    try:
        return build(f"{args.type}{args.rank}")
    except UnknownCartanType as exc:
        raise UsageError(str(exc)) from None


def _cache_dir(args) -> Path | None:
    d = args.cache_dir or os.environ.get("WEYLSEP_CACHE")
    return Path(d) if d else None


def _cache_file(d: Path, s) -> Path:
    return d / f"{s.cartan_type}.v{CACHE_VERSION}.json"


def _group(args, s):
    check_guard(s.cartan_type, args.max_elements, args.allow_e7)
    d = _cache_dir(args)
    if d is not None:
        g = load_group(s, _cache_file(d, s))
        if g is not None:
            return g
    g = enumerate_group(s, args.max_elements, args.allow_e7)
    if d is not None:
        save_group(g, _cache_file(d, s))
    return g


def _format_element(w, fmt: str) -> str:
    word = [i + 1 for i in w.word]
    if fmt == "json":
        return json.dumps(w.to_json(), separators=(",", ":"))
    if fmt == "tsv":
        return f"{w.length}\t{' '.join(map(str, word))}\t{','.join(map(str, w.inversion_indices))}"
    return f"length={w.length} word={word} inversions={w.inversion_indices}"


def cmd_enumerate(args, out) -> int:
    s = _system(args)
    g = _group(args, s)
    lines = [_format_element(w, args.format) for w in g]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _parse_ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        if "," in text or " " in text:
            return [int(x) for x in text.replace(",", " ").split()]
        return [int(x) for x in text]
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a list of integers") from None


def _element(args, s):
    try:
        if args.word is not None:
            word = _parse_ints(args.word) if "," in args.word or " " in args.word else (
                [int(args.word)] if args.word.strip() else [])
            return from_word(s, [i - 1 for i in word])
        if args.oneline is not None:
            return from_oneline(s, _parse_ints(args.oneline))
        if args.inversions is not None:
            raw = args.inversions.replace(",", " ").split()
            return from_inversions(s, [int(x) for x in raw])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("give one of --word, --oneline or --inversions")


def _where(inst) -> str:
    if inst.is_identity_embedding:
        return "the identity embedding"
    roots = ", ".join(str(list(r)) for r in inst.embedding.simple_images)
    return f"the subsystem with simple roots {roots}"


def cmd_check(args, out) -> int:
    s = _system(args)
    w = _element(args, s)
    cert = certificate(w)
    inst = None if cert is not None else pat.first_forbidden(w)
    if args.format == "json":
        data = {
            "type": str(s.cartan_type),
            "element": w.to_json(),
            "separable": cert is not None,
            "certificate": cert.to_json() if cert else None,
            "pattern": inst.to_json() if inst else None,
        }
        out.write(json.dumps(data) + "\n")
    elif cert is not None:
        out.write(f"separable; {cert.describe()}\n")
    elif inst is not None:
        out.write(f"non-separable; pattern {inst.matched.name} at {_where(inst)}\n")
    else:
        out.write("non-separable; no forbidden pattern found\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    s = _system(args)
    check_guard(s.cartan_type, args.max_elements, args.allow_e7) if args.claim not in (
        "decomposition",) else None
    try:
        if args.claim == "decomposition" and args.permissive:
            reports = [verify.check_decomposition_lemma(s, permissive=True)]
        else:
            reports = verify.run_claim(args.claim, s, args.max_elements, args.allow_e7)
    except EnumerationTooLarge:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for r in reports:
        if args.format == "json":
            out.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
        else:
            out.write(r.summary() + "\n")
            if not r.passed:
                out.write("  first counterexample: " + json.dumps(r.counterexamples[0]) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def derive_types(max_rank: int) -> list[str]:
    types = []
    for n in range(1, max_rank + 1):
        types.append(f"A{n}")
        if n >= 2:
            types.append(f"B{n}")
        if n >= 3:
            types.append(f"C{n}")
        if n >= 4:
            types.append(f"D{n}")
        if n == 2:
            types.append("G2")
        if n == 4:
            types.append("F4")
        if n in (6, 7, 8):
            types.append(f"E{n}")
    return types


def cmd_patterns(args, out) -> int:
    found = []
    for t in derive_types(args.max_rank):
        s = build(t)
        check_guard(s.cartan_type, args.max_elements, args.allow_e7)
        for w in pat.minimal_nonseparable(s, args.max_elements, args.allow_e7):
            name = pat.pattern_name(w) or f"{s.cartan_type}:mask={w.mask}"
            found.append((name, w))
    if args.format == "json":
        out.write(json.dumps([{"name": n, "type": str(w.system.cartan_type), **w.to_json()}
                              for n, w in found]) + "\n")
    else:
        for name, w in found:
            out.write(name + "\n")
    return EXIT_OK


def cmd_cache(args, out) -> int:
    d = _cache_dir(args)
    if d is None:
        raise UsageError("no cache directory (use --cache-dir or WEYLSEP_CACHE)")
    files = sorted(d.glob("*.json")) if d.exists() else []
    if args.action == "list":
        for f in files:
            out.write(f"{f.name}\t{f.stat().st_size}\n")
    else:
        for f in files:
            f.unlink()
        out.write(f"removed {len(files)} file(s)\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    common.add_argument("--allow-e7", action="store_true")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", required=True, choices=list("ABCDEFG"), type=str.upper)
    typed.add_argument("--rank", required=True, type=int)

    p = argparse.ArgumentParser(prog="weylsep", description="Separable elements of finite Weyl groups.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common, typed], help="list all group elements")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("check", parents=[common, typed], help="decide separability of one element")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--word", help="reduced or unreduced word, 1-based simple indices, e.g. 1,2,1")
    g.add_argument("--oneline", help="permutation in one-line notation (type A), e.g. 3142")
    g.add_argument("--inversions", help="0-based positive-root indices of the inversion set")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", parents=[common, typed], help="exhaustively check a claim")
    v.add_argument("claim", choices=list(verify.CLAIMS) + ["all"])
    v.add_argument("--permissive", action="store_true",
                   help="run the decomposition check outside types D and E")
    v.set_defaults(func=cmd_verify)

    pt = sub.add_parser("patterns", help="pattern utilities")
    psub = pt.add_subparsers(dest="action", required=True)
    d = psub.add_parser("derive", parents=[common], help="search for minimal non-separable elements")
    d.add_argument("--max-rank", type=int, default=4)
    d.set_defaults(func=cmd_patterns)

    ca = sub.add_parser("cache", help="manage the group cache")
    ca.add_argument("action", choices=["list", "clear"])
    ca.add_argument("--cache-dir", default=None)
    ca.set_defaults(func=cmd_cache)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
