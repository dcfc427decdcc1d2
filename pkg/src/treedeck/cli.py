"""Command-line entry point.

One subcommand per module, line-oriented output: scalar facts as
``key<TAB>value`` records, shapes one per line in canonical text, so
runs diff cleanly.  Every report starts with a header echoing the
version and the full configuration; wall time goes to stderr so stdout
is byte-identical across repeated runs.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 request
refused as infeasible.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .decks import deck, multideck, multideck_bruteforce, render_deck, render_multideck
from .enumeration import shape_level, wedderburn
from .errors import InfeasibleError, ParseError, UnsupportedSizeError, VerificationError
from .extremal import max_deck_bruteforce, min_subtrees_bruteforce, singleton_deck_shapes
from .reconstruct import (
    counterexample_family,
    decks_determine,
    reconstruction_number,
    verify_counterexample,
)
from .shapes import parse_text, to_text
from .universal import EXHAUSTIVE_K_CEILING, kalmar_terms, known_universal_trees, min_universal_size

CACHE_ENV = "TREEDECK_CACHE"


class _Out:
    """Record writer for the two output formats."""

    def __init__(self, fmt: str):
        self.sep = "\t" if fmt == "records" else ": "

    def kv(self, key, *values) -> None:
        print(self.sep.join(str(v) for v in (key, *values)))

    def line(self, text: str) -> None:
        print(text)


def _header(args) -> _Out:
    # threads is deliberately left out: reports must be byte-identical
    # across worker counts, so it is echoed on stderr instead
    print(f"# treedeck {__version__}")
    skip = {"func", "command", "threads"}
    pairs = " ".join(f"{k.replace('_', '-')}={v}" for k, v in sorted(vars(args).items())
                     if k not in skip and v is not None)
    print(f"# config: {args.command} {pairs}".rstrip())
    print(f"# threads: {args.threads}", file=sys.stderr)
    return _Out(args.format)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_enumerate(args) -> int:
    out = _header(args)
    if args.count_only:
        out.kv("count", wedderburn(args.n))
        return 0
    for t in shape_level(args.n):
        out.line(to_text(t))
    return 0


def _cmd_deck(args) -> int:
    out = _header(args)
    tree = parse_text(args.tree)
    d = deck(tree, args.j)
    text = render_deck(d)
    if text:
        out.line(text)
    return 0


def _cmd_multideck(args) -> int:
    out = _header(args)
    tree = parse_text(args.tree)
    if args.oracle:
        md = multideck_bruteforce(tree, args.j)
    else:
        md = multideck(tree, args.j)
    out.line(render_multideck(md))
    return 0


def _cmd_reconstruct(args) -> int:
    out = _header(args)
    mode = "multideck" if args.multideck else "deck"
    if args.j is not None:
        rep = decks_determine(args.n, args.j, mode)
        out.kv("n", rep.n)
        out.kv("j", rep.j)
        out.kv("mode", rep.mode)
        out.kv("determined", str(rep.determined).lower())
        out.kv("classes", rep.classes)
        if rep.witness is not None:
            out.kv("witness", to_text(rep.witness[0]), to_text(rep.witness[1]))
        return 0
    rn = reconstruction_number(args.n, mode)
    out.kv("n", rn.n)
    out.kv("mode", rn.mode)
    out.kv("reconstruction-number", rn.value)
    return 0


def _cmd_counterexample(args) -> int:
    out = _header(args)
    fam = counterexample_family(args.n)
    out.kv("n", fam.n)
    out.kv("k", fam.k)
    out.kv("deck-size", fam.deck_size)
    out.kv("t1", to_text(fam.t1))
    out.kv("t2", to_text(fam.t2))
    if fam.common is not None:
        out.kv("common", to_text(fam.common))
    check = verify_counterexample(fam)
    out.kv("deck-equal", str(bool(check)).lower())
    if not check:
        print(f"verification failure: {check.reason}", file=sys.stderr)
        return 1
    return 0


def _cmd_extremal(args) -> int:
    out = _header(args)
    if args.quantity == "max-deck":
        rep = max_deck_bruteforce(args.n)
    elif args.quantity == "min-subtrees":
        rep = min_subtrees_bruteforce(args.n)
    else:
        shapes = singleton_deck_shapes(args.n)
        out.kv("n", args.n)
        out.kv("quantity", "singleton")
        out.kv("value", len(shapes))
        for t in sorted(shapes, key=lambda s: s.code):
            out.kv("achiever", to_text(t))
        return 0
    out.kv("n", rep.n)
    out.kv("quantity", args.quantity)
    out.kv("value", rep.value)
    for t in rep.achievers:
        out.kv("achiever", to_text(t))
    return 0


def _progress_printer(st) -> None:
    print(f"# scanned n={st.size}: {st.shapes} shapes, {st.fingerprints} fingerprints, "
          f"{st.witnesses} witnesses, {st.seconds:.2f}s", file=sys.stderr, flush=True)


def _cmd_universal(args) -> int:
    out = _header(args)
    cache = args.cache or os.environ.get(CACHE_ENV)
    cert = min_universal_size(args.k, budget=args.budget, max_size=args.max_size,
                              cache_path=cache,
                              on_level=_progress_printer if args.verbose else None)
    out.kv("k", cert.k)
    if cert.u_value is None:
        out.kv("u", "unknown")
    else:
        out.kv("u", cert.u_value if cert.exhaustive else f"<={cert.u_value}")
    out.kv("exhaustive", str(cert.exhaustive).lower())
    out.kv("explored", cert.explored)
    for t in cert.witnesses:
        out.kv("witness", to_text(t))
    return 0


def _cmd_kalmar(args) -> int:
    out = _header(args)
    seq = kalmar_terms(args.upto)
    for k, term in enumerate(seq.terms, start=1):
        out.kv(k, term)
    return 0


def _cmd_universal_table(args) -> int:
    out = _header(args)
    ks = list(range(1, args.max_k + 1))
    kal = kalmar_terms(args.max_k).terms
    u_cells = []
    exact_u: dict[int, int] = {}
    for k in ks:
        budget = args.budget
        if budget is None and k > EXHAUSTIVE_K_CEILING:
            known = known_universal_trees(k)
            u_cells.append(f"<={known[0].size}" if known else "?")
            continue
        cert = min_universal_size(k, budget=budget)
        if cert.u_value is None:
            u_cells.append("?")
        elif cert.exhaustive:
            exact_u[k] = cert.u_value
            u_cells.append(str(cert.u_value))
        else:
            u_cells.append(f"<={cert.u_value}")
    out.kv("k", *ks)
    out.kv("kalmar", *kal)
    out.kv("u", *u_cells)
    drops = [k for k in exact_u if k - 1 in exact_u and exact_u[k] < exact_u[k - 1]]
    if drops:
        out.kv("note", f"u decreases at k in {drops}")
    return 0


def _cmd_verify_all(args) -> int:
    from . import acceptance

    out = _header(args)
    failures = 0
    for crit in acceptance.criteria_for(args.level):
        try:
            crit.run(args.level)
        except Exception as exc:  # noqa: BLE001 - any failure means a red criterion
            failures += 1
            out.kv(f"criterion {crit.ident}", "FAIL", crit.name)
            print(f"criterion {crit.ident} failed: {exc}", file=sys.stderr)
        else:
            out.kv(f"criterion {crit.ident}", "PASS", crit.name)
    out.kv("result", "FAIL" if failures else "PASS")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treedeck",
        description="Decks and multidecks of rooted binary tree shapes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1,
                        help="worker count hint; execution is sequential and output never depends on it")
    common.add_argument("--format", choices=("records", "plain"), default="records",
                        help="records: tab-separated lines (default); plain: 'key: value'")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="dump all shapes of one size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("deck", parents=[common], help="size-j deck of a tree")
    p.add_argument("--tree", required=True, help="shape text, e.g. '(*,(*,*))'")
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=_cmd_deck)

    p = sub.add_parser("multideck", parents=[common], help="size-j multideck of a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="use the subset-enumeration oracle instead of the DP")
    p.set_defaults(func=_cmd_multideck)

    p = sub.add_parser("reconstruct", parents=[common],
                       help="determination report or reconstruction number")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, default=None,
                   help="test this deck size only; omit to compute the reconstruction number")
    p.add_argument("--multideck", action="store_true")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("counterexample", parents=[common],
                       help="same-deck tree pair for a given size, verified")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("extremal", parents=[common], help="extremal sweep reports")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--quantity", choices=("max-deck", "min-subtrees", "singleton"), required=True)
    p.set_defaults(func=_cmd_extremal)

    p = sub.add_parser("universal", parents=[common], help="minimum-size universal tree search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--budget", type=int, default=None,
                   help="work budget in scanned shapes (deterministic units)")
    p.add_argument("--cache", default=None,
                   help=f"progress log path (default ${CACHE_ENV})")
    p.add_argument("--verbose", action="store_true", help="per-level progress on stderr")
    p.set_defaults(func=_cmd_universal)

    p = sub.add_parser("kalmar", parents=[common],
                       help="ordered-factorization partial sums")
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=_cmd_kalmar)

    p = sub.add_parser("universal-table", parents=[common],
                       help="u(k) next to the factorization partial sums")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_universal_table)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--level", choices=("quick", "full", "extended"), default="quick")
    p.set_defaults(func=_cmd_verify_all)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except InfeasibleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (VerificationError, AssertionError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except UnsupportedSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RecursionError:
        print("refused: tree too deep for this operation", file=sys.stderr)
        return 3
    finally:
        print(f"# wall-time-s: {time.perf_counter() - t0:.3f}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
