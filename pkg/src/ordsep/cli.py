"""Command-line front end.

Every subcommand builds one record (a JSON-compatible dict with stable keys)
and prints it either as JSON or as indented ``key: value`` text. Verdicts are
part of the record; the exit status is 0 on success, 2 on malformed input
and 3 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .approximant import Ordinal, approximate_one_letter, idempotent_bound, tower_level
from .decision import check_certificate, cover, pointlikes, separate
from .derivation import check_derivation
from .errors import BoundsExceeded, InconsistencyError, MalformedInput
from .fileformat import PresentationFile, load_presentation
from .green import greens
from .monoid import is_aperiodic, validate_presentation
from .powerset import DEFAULT_CAP, SubsetElement, bits, power_presentation, power_view
from .saturation import saturate, saturate_letters
from .witness import witnesses
from .words import check_letters, eval_expr, parse_expr

EXIT_OK, EXIT_MALFORMED, EXIT_INCONSISTENT = 0, 2, 3


def _load(path: str) -> PresentationFile:
    return load_presentation(Path(path))


def _language(ref: str):
    """``PATH`` or ``PATH:NAME``."""
    path, sep, name = ref.rpartition(":")
    if not sep or not Path(path).is_file():
        path, name = ref, None
    return _load(path).language(name or None)


def _letters(pf: PresentationFile):
    if pf.letters is None:
        raise MalformedInput(f"{pf.source}: this command needs a 'letters:' line")
    return pf.letters


def _names(m, mask_or_elems) -> list[str]:
    elems = bits(mask_or_elems) if isinstance(mask_or_elems, int) else mask_or_elems
    return [m.name(x) for x in sorted(elems)]


def cmd_validate(args) -> dict:
    pf = _load(args.file)
    m = pf.monoid
    rec: dict[str, Any] = {"command": "validate", "elements": len(m)}
    target = m
    if args.power:
        target, _ = power_presentation(m, cap=args.cap)
        rec["power_elements"] = len(target)
    violations = validate_presentation(target)
    rec["status"] = "ok" if not violations else "invalid"
    rec["violations"] = [{"axiom": v.axiom, "witness": _witness(target, v)} for v in violations]
    return rec


def _witness(m, v) -> list:
    # the power law reports (element, exponent)
    if v.axiom == "power":
        return [m.name(v.witness[0]), v.witness[1]]
    return [m.name(x) for x in v.witness]


def cmd_greens(args) -> dict:
    m = _load(args.file).monoid
    g = greens(m)
    return {
        "command": "greens",
        "elements": [
            {"element": m.name(x), "J": g.j[x], "L": g.l[x], "R": g.r[x], "H": g.h[x]} for x in m
        ],
        "j_classes": [
            {
                "members": _names(m, c.members),
                "regular": c.regular,
                "omega_stable": c.omega_stable,
                "h_trivial": c.h_trivial,
            }
            for c in g.j_classes
        ],
    }


def cmd_aperiodic(args) -> dict:
    m = _load(args.file).monoid
    ok, bad = is_aperiodic(m)
    rec: dict[str, Any] = {"command": "aperiodic", "aperiodic": ok}
    if not ok:
        rec["counterexample"] = m.name(bad)
    return rec


def _sat_record(sat) -> list[dict]:
    m = sat.base
    return [
        {"index": i, "set": _names(m, x), "rule": p.rule, "operands": list(p.operands)}
        for i, (x, p) in enumerate(zip(sat.masks, sat.provenance))
    ]


def cmd_saturate(args) -> dict:
    pf = _load(args.file)
    m = pf.monoid
    if args.seed:
        seed = [SubsetElement.of(m, [s for s in grp.split(",") if s]) for grp in args.seed]
        sat = saturate(m, seed)
    else:
        sat = saturate_letters(m, _letters(pf))
    return {"command": "saturate", "size": len(sat), "members": _sat_record(sat)}


def cmd_separate(args) -> dict:
    K, L = _language(args.K), _language(args.L)
    out = separate(K, L)
    return _outcome_record("separate", out)


def cmd_cover(args) -> dict:
    L = _language(args.L)
    Ks = [_language(k) for k in args.K]
    return _outcome_record("cover", cover(L, Ks))


def _outcome_record(command: str, out) -> dict:
    check = check_certificate(out)
    if not check:
        raise InconsistencyError(f"certificate does not re-check: {check}")
    return {"command": command, **out.to_record(), "certificate": "ok"}


def cmd_pointlikes(args) -> dict:
    pf = _load(args.file)
    m = pf.monoid
    pl = pointlikes(m, _letters(pf))
    return {
        "command": "pointlikes",
        "size": len(pl),
        "maximal": [_names(m, x) for x in pl.maximal()],
        "sets": [_names(m, x) for x in pl.masks],
    }


def cmd_witness(args) -> dict:
    K, L = _language(args.K), _language(args.L)
    out = separate(K, L)
    rec: dict[str, Any] = {"command": "witness", "k": args.k, "verdict": out.verdict}
    if out.verdict == "yes":
        rec["note"] = "languages are FO-separable; no witness pair exists"
        return rec
    m = K.monoid
    fam = witnesses(out.sat, out.blocking, args.k)
    x, y = out.marked
    d = fam.derivation(x, y)
    check = check_derivation(d, args.k)
    if not check:
        raise InconsistencyError(f"emitted derivation does not check: {check}")
    u, v = fam.words[x], fam.words[y]
    rec.update(
        {
            "blocking_set": _names(m, out.sat.masks[out.blocking]),
            "u": str(u),
            "v": str(v),
            "u_value": m.name(eval_expr(u, m, K.letters)),
            "v_value": m.name(eval_expr(v, m, K.letters)),
            "family": {m.name(z): str(w) for z, w in sorted(fam.words.items())},
            "derivation_check": str(check),
            "derivation": d.to_record() if args.derivation else {"size": d.size()},
        }
    )
    return rec


def cmd_eval(args) -> dict:
    pf = _load(args.file)
    letters = _letters(pf)
    e = parse_expr(args.expr)
    check_letters(e, letters)
    x = eval_expr(e, pf.monoid, letters)
    rec = {"command": "eval", "expr": str(e), "value": pf.monoid.name(x)}
    rec["accepted_by"] = [n for n, s in pf.accepts.items() if x in s]
    return rec


def cmd_approx(args) -> dict:
    pf = _load(args.file)
    m = pf.monoid
    letters = _letters(pf)
    v = power_view(m)
    x = 1 << letters[args.letter]
    kappa = Ordinal.parse(args.kappa)
    ell = tower_level(v, x) if args.ell is None else args.ell
    n = idempotent_bound(v, x, ell) if args.n is None else args.n
    try:
        got = approximate_one_letter(v, x, kappa, n=n, ell=ell)
    except ValueError as err:
        raise MalformedInput(str(err)) from None
    return {
        "command": "approx",
        "letter": args.letter,
        "kappa": str(kappa),
        "ell": ell,
        "n": n,
        "normal_form": {
            "top": kappa.normalize(ell).top,
            "coefficients": list(kappa.normalize(ell).coeffs),
        },
        "value": _names(m, got),
    }


def build_parser() -> argparse.ArgumentParser:
    def options(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global options; SUPPRESS keeps them from
        # overwriting a value given before the subcommand
        opt = argparse.ArgumentParser(add_help=False)
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        opt.add_argument("--format", choices=("human", "json"), default=default("human"))
        opt.add_argument("--k", type=int, default=default(2), help="quantifier depth (default 2)")
        opt.add_argument(
            "--cap", type=int, default=default(DEFAULT_CAP), help="size cap for full power monoids"
        )
        return opt

    common = options(suppress=True)
    p = argparse.ArgumentParser(
        prog="ordsep",
        description="FO-separability of regular languages of countable ordinal words.",
        parents=[options(suppress=False)],
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the presentation laws")
    s.add_argument("file")
    s.add_argument("--power", action="store_true", help="validate the power monoid instead")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("greens", parents=[common], help="Green's relations and J-class flags")
    s.add_argument("file")
    s.set_defaults(run=cmd_greens)

    s = sub.add_parser("aperiodic", parents=[common], help="aperiodicity test")
    s.add_argument("file")
    s.set_defaults(run=cmd_aperiodic)

    s = sub.add_parser("saturate", parents=[common], help="saturation with provenance")
    s.add_argument("file")
    s.add_argument("--seed", action="append", metavar="E1,E2,…", help="explicit seed set (repeatable)")
    s.set_defaults(run=cmd_saturate)

    s = sub.add_parser("separate", parents=[common], help="decide FO-separability of K from L")
    s.add_argument("K", metavar="K_REF")
    s.add_argument("L", metavar="L_REF")
    s.set_defaults(run=cmd_separate)

    s = sub.add_parser("cover", parents=[common], help="decide FO-covering of L against K1 … Kn")
    s.add_argument("L", metavar="L_REF")
    s.add_argument("K", metavar="K_REF", nargs="*")
    s.set_defaults(run=cmd_cover)

    s = sub.add_parser("pointlikes", parents=[common], help="FO-pointlike sets of the letter map")
    s.add_argument("file")
    s.set_defaults(run=cmd_pointlikes)

    s = sub.add_parser("witness", parents=[common], help="witness pair for a non-separable instance")
    s.add_argument("K", metavar="K_REF")
    s.add_argument("L", metavar="L_REF")
    s.add_argument("--derivation", action="store_true", help="include the full derivation tree")
    s.set_defaults(run=cmd_witness)

    s = sub.add_parser("eval", parents=[common], help="evaluate a word expression")
    s.add_argument("file")
    s.add_argument("expr")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("approx", parents=[common], help="one-letter approximant in the power monoid")
    s.add_argument("file")
    s.add_argument("letter")
    s.add_argument("kappa", help="ordinal below ω^ω, e.g. 'w^2+w+1'")
    s.add_argument("--n", type=int)
    s.add_argument("--ell", type=int)
    s.set_defaults(run=cmd_approx)
    return p


def render_human(rec: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out: list[str] = []
    if isinstance(rec, dict):
        for key, val in rec.items():
            if isinstance(val, (dict, list)) and val and not _flat(val):
                out.append(f"{pad}{key}:")
                out.extend(render_human(val, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(rec, list):
        for item in rec:
            if isinstance(item, dict):
                lines = render_human(item, indent + 1)
                out.append(f"{pad}- {lines[0].lstrip()}")
                out.extend(lines[1:])
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(f"{pad}{_scalar(rec)}")
    return out


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) for x in val)


def _scalar(val) -> str:
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(x) for x in val) + "]"
    if isinstance(val, dict):
        return "{}"
    return str(val)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.k < 0:
        parser.error("--k must be non-negative")
    try:
        rec = args.run(args)
    except (MalformedInput, BoundsExceeded) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MALFORMED
    except InconsistencyError as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return EXIT_INCONSISTENT
    if args.format == "json":
        print(json.dumps(rec, indent=2, ensure_ascii=False))
    else:
        print("\n".join(render_human(rec)))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
