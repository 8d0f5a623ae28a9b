"""Command-line front end.

Every subcommand prints one JSON document (or a short text summary with
``--format text``) on stdout.  Exit status: 0 on success, 1 on domain errors
(bad input, failed preconditions, failed verification), 2 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .apolarity import apolar_component, colon_with_maximal, hilbert_function
from .catalecticant import build, gamma_member
from .errors import ApolarError, InconsistencyError, PreconditionError
from .hierarchy import (DEFAULT_R_MAX, corpus_run, load_corpus, rank_report,
                        scheme_length_lower_bound, sylvester_binary_rank)
from .monomial import (WaringDecomposition, monomial_border_family, monomial_border_size,
                       monomial_rank, monomial_waring, verify)
from .parser import parse
from .recovery import GeneralizedDecomposition, verify_generalized
from .search import extension_rank_search
from .serialize import decomposition_from_json, dumps

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for inconsistencies here
    def error(self, message):
        raise UsageError(message)


def _polynomial(args):
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
    elif args.polynomial is not None:
        text = args.polynomial
    else:
        raise UsageError("give a polynomial or --file")
    return parse(text, args.n, nonzero=True)


def _add_poly(p):
    p.add_argument("polynomial", nargs="?", help="polynomial in x0..xn, e.g. 'x0^2*x1'")
    p.add_argument("--file", help="read the polynomial from this file")
    p.add_argument("-n", type=int, required=True, help="largest variable index (n + 1 variables)")


def _add_common(p):
    p.add_argument("--format", choices=["json", "text"], default="json")


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {s!r}") from None


# -- subcommands --------------------------------------------------------------

def cmd_cata(args):
    f = _polynomial(args)
    m = build(f, args.k)
    out = m.to_json()
    out["rank"] = m.rank()
    return out, f"catalecticant of order {args.k}: {m.shape[0]}x{m.shape[1]}, rank {out['rank']}"


def cmd_hilbert(args):
    f = _polynomial(args)
    h = hilbert_function(f)
    return ({"values": list(h), "r_H": max(h), "symmetric": h.is_symmetric()},
            f"H = {list(h)}, catalecticant rank {max(h)}")


def cmd_apolar(args):
    f = _polynomial(args)
    if args.colon:
        c = colon_with_maximal(f, args.k, saturate=not args.no_saturate)
        out = c.to_json()
        out["steps"] = c.steps
        return out, f"colon space in degree {c.degree}: " + (", ".join(map(str, c.basis)) or "0")
    c = apolar_component(f, args.k)
    return c.to_json(), f"(f^perp)_{args.k}: dimension {c.dimension} of {c.ambient_dimension}"


def cmd_gamma(args):
    f = _polynomial(args)
    member = gamma_member(f, args.i, args.r)
    return ({"i": args.i, "r": args.r, "member": member, "rank": build(f, args.i).rank()},
            f"order-{args.i} catalecticant rank <= {args.r}: {member}")


def _alpha(args):
    try:
        alpha = tuple(int(a) for a in args.alpha.split(","))
    except ValueError:
        raise UsageError(f"bad exponent list {args.alpha!r}") from None
    if any(a < 0 for a in alpha):
        raise UsageError("exponents must be non-negative")
    if args.n is not None and len(alpha) != args.n + 1:
        raise UsageError(f"--alpha has {len(alpha)} entries but -n {args.n} means {args.n + 1}")
    return alpha


def cmd_monomial(args):
    alpha = _alpha(args)
    eps = _fraction(args.eps)
    out = {"alpha": list(alpha), "rank": monomial_rank(alpha),
           "border_size": monomial_border_size(alpha)}
    text = [f"rank {out['rank']}, border family size {out['border_size']}"]
    dec = None
    if args.decompose:
        dec = monomial_waring(alpha, eps)
        mode = args.verify_mode
    elif args.border:
        dec = monomial_border_family(alpha).at(eps)
        mode = "numeric"
    if dec is not None:
        tol = args.tol if args.tol is not None else (10 * float(abs(eps)) if args.border else 1e-9)
        rep = verify(dec, mode=mode, tol=tol)
        out["decomposition"] = dec.to_json(rep)
        out["verification"] = rep.to_json()
        text.append(f"{len(dec)} terms, {rep.mode} residual {rep.residual:.3g}, verified {rep.ok}")
        if not rep.ok:
            return out, "\n".join(text), 1
    return out, "\n".join(text)


def _ext_json(res, f):
    out = res.to_json()
    if out.get("decomposition"):
        out["decomposition"]["target"] = str(f)
        out["decomposition"]["nvars"] = f.nvars
    return out


def cmd_extend(args):
    f = _polynomial(args)
    res = extension_rank_search(f, args.r_max, seed=args.seed)
    out = _ext_json(res, f)
    out["seed"] = args.seed
    if res.dec is not None:
        out["verification"] = verify_generalized(res.dec, f).to_json()
    text = f"{res.status}: r = {res.r} (catalecticant rank {res.r_H})"
    if res.dec is not None:
        text += f", multiplicities {res.dec.multiplicities}"
    return out, text


def cmd_sylvester(args):
    f = _polynomial(args)
    if f.nvars != 2:
        raise PreconditionError("sylvester needs a binary form (-n 1)")
    r = sylvester_binary_rank(f, seed=args.seed)
    return {"rank": r, "seed": args.seed}, f"rank {r}"


def cmd_scheme(args):
    f = _polynomial(args)
    sb = scheme_length_lower_bound(f, args.r_target)
    return sb.to_json(), f"{sb.status}" + (f": scheme length >= {sb.bound}" if sb.proven else f" ({sb.reason})")


def _report_text(rep):
    keys = ["r_H", "r_ext_upper", "r_upper", "r_border_upper", "r_exact", "sch_lower"]
    js = rep.to_json()
    return ", ".join(f"{k}={js[k]}" for k in keys if js[k] is not None)


def cmd_report(args):
    f = _polynomial(args)
    rep = rank_report(f, args.r_max, seed=args.seed)
    out = rep.to_json()
    out["seed"] = args.seed
    return out, _report_text(rep)


def cmd_corpus(args):
    entries = load_corpus(args.corpus)
    results = corpus_run(entries, args.r_max, seed=args.seed)
    out = {"seed": args.seed, "r_max": args.r_max,
           "entries": [r.to_json() for r in results],
           "passed": sum(r.ok for r in results), "total": len(results)}
    text = "\n".join(f"{'PASS' if r.ok else 'FAIL'} {r.name}: "
                     + (r.error if r.error else _report_text(r.report)) for r in results)
    code = 0 if all(r.ok for r in results) else 1
    return out, text, code


def _exact_scalars(dec) -> bool:
    vals = [w for w, _ in dec.terms] + [c for _, form in dec.terms for c in form.coeffs]
    return not any(isinstance(v, (float, complex)) for v in vals)


def cmd_verify(args):
    if args.document == "-":
        text = sys.stdin.read()
    else:
        with open(args.document) as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"not JSON: {exc}") from None
    # accept the whole output of `monomial` or `extend` as well as the bare object
    if isinstance(obj, dict) and "decomposition" in obj:
        obj = obj["decomposition"]
    dec = decomposition_from_json(obj)
    if isinstance(dec, GeneralizedDecomposition):
        f = parse(obj["target"], int(obj["nvars"]) - 1)
        rep = verify_generalized(dec, f, tol=args.tol or 1e-6)
    else:
        assert isinstance(dec, WaringDecomposition)
        border = obj.get("kind") == "border"
        # a border family only approaches its target: judge it by the residual bound
        mode = args.mode or ("numeric" if border or not _exact_scalars(dec) else "exact")
        tol = args.tol or (10 * float(abs(dec.eps)) if border and dec.eps else 1e-9)
        rep = verify(dec, mode=mode, tol=tol)
    out = rep.to_json()
    return out, f"verified {rep.ok} (residual {rep.residual:.3g})", 0 if rep.ok else 1


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="apolar-rank", description="Ranks of homogeneous polynomials via apolarity.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("cata", help="catalecticant matrix and its rank")
    _add_poly(s)
    s.add_argument("-k", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_cata)

    s = sub.add_parser("hilbert", help="Hilbert function of the apolar algebra")
    _add_poly(s)
    _add_common(s)
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("apolar", help="basis of a graded piece of the apolar ideal")
    _add_poly(s)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--colon", action="store_true", help="colon space with the maximal ideal instead")
    s.add_argument("--no-saturate", action="store_true", help="with --colon: one multiplication step only")
    _add_common(s)
    s.set_defaults(func=cmd_apolar)

    s = sub.add_parser("gamma", help="is the order-i catalecticant of rank <= r")
    _add_poly(s)
    s.add_argument("-i", type=int, required=True)
    s.add_argument("-r", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("monomial", help="rank, decomposition or border family of a monomial")
    s.add_argument("-n", type=int)
    s.add_argument("--alpha", required=True, help="comma-separated exponents")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--decompose", action="store_true")
    g.add_argument("--border", action="store_true")
    s.add_argument("--eps", default="1")
    s.add_argument("--verify-mode", choices=["exact", "numeric"], default="exact")
    s.add_argument("--tol", type=float)
    _add_common(s)
    s.set_defaults(func=cmd_monomial)

    s = sub.add_parser("extend", help="flat-extension rank search with point recovery")
    _add_poly(s)
    s.add_argument("--r-max", type=int, default=DEFAULT_R_MAX)
    s.add_argument("--seed", type=int, default=0)
    _add_common(s)
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("sylvester", help="Waring rank of a binary form")
    _add_poly(s)
    s.add_argument("--seed", type=int, default=0)
    _add_common(s)
    s.set_defaults(func=cmd_sylvester)

    s = sub.add_parser("scheme", help="saturation lower bound on the scheme length of a cubic")
    _add_poly(s)
    s.add_argument("--r-target", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_scheme)

    s = sub.add_parser("report", help="all rank bounds, cross-checked")
    _add_poly(s)
    s.add_argument("--r-max", type=int, default=DEFAULT_R_MAX)
    s.add_argument("--seed", type=int, default=0)
    _add_common(s)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("corpus", help="reports for a corpus file (default: bundled examples)")
    s.add_argument("corpus", nargs="?")
    s.add_argument("--r-max", type=int, default=DEFAULT_R_MAX)
    s.add_argument("--seed", type=int, default=0)
    _add_common(s)
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("verify", help="re-verify a decomposition emitted by monomial or extend")
    s.add_argument("document", help="JSON file, or - for stdin")
    s.add_argument("--mode", choices=["exact", "numeric"])
    s.add_argument("--tol", type=float)
    _add_common(s)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        result = args.func(args)
    except UsageError as exc:
        print(f"apolar-rank: usage error: {exc}", file=sys.stderr)
        return 1
    except InconsistencyError as exc:
        print(f"apolar-rank: internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except (ApolarError, OSError) as exc:
        print(f"apolar-rank: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out, text, *rest = result
    code = rest[0] if rest else 0
    if args.format == "text":
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write(dumps({"command": args.command, **out}))
    return code


if __name__ == "__main__":
    sys.exit(main())
