"""Command-line front end: ``ncsets <command> ...``.

Exit codes: 0 ok, 1 a refuted claim, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import clique as C
from . import lines as Ln
from . import structures as S
from . import unitriangular as ut
from . import verify as V
from .errors import NCSetsError, TooLarge, UnknownTarget
from .gf import Field, minus_three_is_square, parse_field

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_TIME_CAP = 60.0
# pairwise work on group subsets is quadratic; UU_4(F_4) is about 45 s
GROUP_ITEMS_MAX = 4096

TARGETS = ("M", "Q", "N", "UU", "S0", "T1", "T1anti", "N0", "N1", "N1anti", "N2", "N3", "N3anti", "C", "W3")
CONSTRUCTIONS = ("2q", "qplus1", "2line", "2line-M", "3line", "3line+point", "4line", "abelian", "uu4")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, many_fields: bool = False) -> None:
    if many_fields:
        p.add_argument("--field", action="append", required=True, help="p, q, p^r or p^r:modhex; repeatable")
    else:
        p.add_argument("--field", required=True, help="p, q, p^r or p^r:modhex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1, help="accepted; the solver runs in one process")
    p.add_argument("--time-cap", type=float, default=None, help="seconds; default 60 for omega")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ncsets", description="Maximal non-commuting sets in UU_n(F_q) and the structures M, Q, N.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("omega", help="clique number of a structure or group subset")
    p.add_argument("target", help="one of " + ", ".join(TARGETS))
    _common(p)
    p.add_argument("--n", type=int, default=4, help="matrix size for UU and S0")
    p.add_argument("--m", default="0", help="m for C(m,1,0)")
    p.add_argument("--no-reduce", action="store_true", help="skip centralizer-class reduction")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="theorem-level checks")
    p.add_argument("suite", choices=("all",) + V.SUITES)
    _common(p, many_fields=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p = sub.add_parser("construct", help="explicit non-commuting sets")
    p.add_argument("kind", choices=CONSTRUCTIONS)
    _common(p)
    p.add_argument("--b", default=None, help="b1,b2,b3 for 4line")
    p.add_argument("--m", default="0", help="m for qplus1")
    p.add_argument("--format", choices=("text", "config", "json"), default="text")

    p = sub.add_parser("search", help="search for m-line configurations")
    p.add_argument("what", choices=("lines",))
    _common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--format", choices=("text", "config", "json"), default="text")

    p = sub.add_parser("export", help="write a structure or its non-commuting graph")
    p.add_argument("what", choices=("graph", "structure"))
    _common(p)
    p.add_argument("--target", required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", default="0")
    p.add_argument("--format", choices=("dimacs", "text"), default="dimacs")

    p = sub.add_parser("field-info", help="describe a finite field")
    p.add_argument("--field", required=True)
    p.add_argument("--out", default=None)
    return ap


def _banner(args: argparse.Namespace, F: Field | None) -> None:
    items = {k: v for k, v in sorted(vars(args).items()) if k != "field"}
    field = F.describe() if F is not None else ",".join(parse_field(f).describe() for f in args.field)
    sys.stderr.write(f"# ncsets field={field} " + " ".join(f"{k}={v}" for k, v in items.items()) + "\n")


def _parse_elem(F: Field, text: str) -> int:
    v = int(text)
    if not 0 <= v < F.q:
        raise NCSetsError(f"{v} is not a canonical element of F_{F.q}")
    return v


# --- targets ---------------------------------------------------------------------

def target_items(target: str, F: Field, n: int = 4, m: int = 0):
    """(items, relation, is_group_subset) for an omega or export target."""
    rel_pts = S.relation(F)
    if target == "M":
        return S.structure_M(F).points, rel_pts, False
    if target == "Q":
        return S.structure_Q(F).points, rel_pts, False
    if target == "N":
        return S.structure_N(F).points, rel_pts, False
    if target == "C":
        return S.centralizer_m10(F, m), rel_pts, False
    if target == "W3":
        pts = S.t2_points(F, avoid_line=False)
        return pts, ut.commutes, True
    if target == "UU":
        order = ut.group_order(n, F)
        if order > GROUP_ITEMS_MAX:
            raise TooLarge(f"UU_{n}(F_{F.q}) has {order} elements; the limit is {GROUP_ITEMS_MAX}")
        return ut.enumerate_group(n, F), ut.commutes, True
    if target == "S0":
        order = (F.q - 1) ** (n - 1) * F.q ** ((n - 1) * (n - 2) // 2)
        if order > GROUP_ITEMS_MAX:
            raise TooLarge(f"S0 for n={n}, q={F.q} has {order} elements; the limit is {GROUP_ITEMS_MAX}")
        return ut.s0_set(n, F), ut.commutes, True
    if target == "T1":
        return S.t1_set(F), ut.commutes, True
    if target == "T1anti":
        return S.t1_anti_set(F), ut.commutes, True
    if target in S.PART_NAMES:
        return S.partition_uu4(F).parts[target], ut.commutes, True
    raise UnknownTarget(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")


def _item_text(x) -> str:
    return x.to_text()


def _write(out_path: str | None, text: str) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _checked(F: Field, items: Sequence, relation) -> None:
    """Re-validate a set labelled non-commuting right before it is emitted."""
    bad = C.first_commuting_pair(items, relation)
    if bad is not None:
        raise AssertionError(f"emitted set is not non-commuting: {bad[0].to_text()} / {bad[1].to_text()}")


# --- commands ----------------------------------------------------------------------

def cmd_omega(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    _banner(args, F)
    m = _parse_elem(F, args.m)
    cap = DEFAULT_TIME_CAP if args.time_cap is None else args.time_cap
    items, relation, group = target_items(args.target, F, args.n, m)
    if args.target == "M":
        r = V.omega_M(F, cap)
    else:
        if group and not args.no_reduce:
            items, _ = C.reduce_by_classes(items, None, relation)
        r = C.max_clique(C.build_graph(items, relation), time_cap=cap)
    _checked(F, r.labels, relation)
    if args.format == "json":
        text = json.dumps({"target": args.target, "field": F.describe(), "omega": r.omega, "exact": r.exact,
                           "witness": [_item_text(x) for x in r.labels]}, sort_keys=True) + "\n"
    else:
        lines = [f"omega {r.omega}", f"exact {str(r.exact).lower()}", "witness"]
        lines += [_item_text(x) for x in r.labels]
        text = "\n".join(lines) + "\n"
    _write(args.out, text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    fields = [parse_field(f) for f in args.field]
    _banner(args, None)
    reports = V.run_suite(args.suite, fields, time_cap=args.time_cap, seed=args.seed)
    if args.format == "json":
        text = "".join(r.to_json() + "\n" for r in reports)
    else:
        text = V.to_tsv(reports)
    _write(args.out, text)
    return EXIT_REFUTED if any(r.failed for r in reports) else EXIT_OK


def _construct(args: argparse.Namespace, F: Field) -> tuple[list, object, Ln.LineConfig | None, dict]:
    kind = args.kind
    cfg = None
    info: dict = {}
    rel = S.relation(F)
    if kind == "2q":
        pts = S.construct_2q_set_M(F)
    elif kind == "qplus1":
        m = _parse_elem(F, args.m)
        pts = S.construct_q_plus_1_in_centralizer(F, m)
    elif kind in ("2line", "2line-M", "3line", "4line"):
        if kind == "2line":
            cfg = Ln.two_line_config(F)
        elif kind == "2line-M":
            cfg = Ln.two_line_config_M(F)
        elif kind == "3line":
            cfg = Ln.three_line_config(F)
        else:
            b = [_parse_elem(F, v) for v in args.b.split(",")] if args.b else [None, None, None]
            if len(b) != 3:
                raise NCSetsError("--b needs three comma-separated elements")
            cfg = Ln.construct_4line(F, *b)
            info = dict(cfg.info)
        pts = Ln.build_config_set(F, cfg)
        if kind == "2line-M":
            pts = [S.Point3(p.x, p.y, p.z, "M") for p in pts]
    elif kind == "3line+point":
        pts = Ln.construct_3line_plus_point(F)
    elif kind == "abelian":
        parts = S.abelian_decomposition_M(F)
        return parts, None, None, {"parts": len(parts)}
    elif kind == "uu4":
        if F.q <= V.OMEGA_M_EXACT_MAX_Q:
            bounds = V.uu4_bounds(F, seed=args.seed)
            info = {"lower": bounds.lower, "upper": bounds.upper}
            pts = bounds.witness
        else:
            pts = V.assemble_split_set(F, (), "search", seed=args.seed).elements
        rel = ut.commutes
    else:  # pragma: no cover - argparse restricts choices
        raise UnknownTarget(kind)
    return pts, rel, cfg, info


def cmd_construct(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    _banner(args, F)
    pts, rel, cfg, info = _construct(args, F)
    if args.kind == "abelian":
        for part in pts:
            if not S.is_abelian(F, part):
                raise AssertionError("decomposition part is not abelian")
        text = "".join(" ".join(p.to_text() for p in part) + "\n" for part in pts)
        _write(args.out, text)
        return EXIT_OK
    _checked(F, pts, rel)
    if args.format == "config":
        if cfg is None:
            raise NCSetsError(f"{args.kind} is not a line configuration")
        text = cfg.to_text(F)
    elif args.format == "json":
        d = {"kind": args.kind, "field": F.describe(), "size": len(pts), "set": [p.to_text() for p in pts],
             "info": {k: v for k, v in info.items()}}
        if cfg is not None:
            d["lines"] = [L.to_text() for L in cfg.lines]
            d["excluded"] = [sorted(e) for e in cfg.excluded]
        text = json.dumps(d, sort_keys=True, default=str) + "\n"
    else:
        out = []
        if cfg is not None:
            for i, L in enumerate(cfg.lines, 1):
                out.append(f"L_{i}: {Ln.format_line_equations(F, L).replace(',', ', ')}")
            for i, ex in enumerate(cfg.excluded, 1):
                if ex:
                    out.append(f"exclude L_{i}: t in {{{', '.join(map(str, sorted(ex)))}}}")
        for k, v in info.items():
            out.append(f"{k} = {','.join(map(str, v)) if isinstance(v, tuple) else v}")
        out.append(f"size {len(pts)}")
        out += [p.to_text() for p in pts]
        text = "\n".join(out) + "\n"
    _write(args.out, text)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    _banner(args, F)
    cfg = Ln.search_m_lines(F, args.m, args.budget, args.seed)
    if cfg is not None:
        _checked(F, Ln.build_config_set(F, cfg), S.relation(F))
    if args.format == "config":
        text = cfg.to_text(F) if cfg else ""
    elif args.format == "json":
        d = {"m": args.m, "field": F.describe(), "budget": args.budget, "seed": args.seed, "found": cfg is not None,
             "minus_three_square": minus_three_is_square(F)}
        if cfg:
            d.update(lines=[L.to_text() for L in cfg.lines], excluded=[sorted(e) for e in cfg.excluded],
                     branch=cfg.info.get("branch"), spent=cfg.info.get("spent"))
        text = json.dumps(d, sort_keys=True) + "\n"
    else:
        out = [f"m {args.m}", f"field {F.describe()}", f"budget {args.budget}", f"seed {args.seed}",
               f"found {'yes' if cfg else 'no'}"]
        if cfg:
            out.append(f"branch {cfg.info['branch']}")
            out.append(f"spent {cfg.info['spent']}")
            out.append(cfg.to_text(F).rstrip("\n"))
        text = "\n".join(out) + "\n"
    _write(args.out, text)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    _banner(args, F)
    m = _parse_elem(F, args.m)
    items, relation, _ = target_items(args.target, F, args.n, m)
    if args.what == "graph" and args.format == "dimacs":
        g = C.build_graph(items, relation)
        text = C.to_dimacs(g, comment=f"non-commuting graph of {args.target} over {F.describe()}")
    elif args.what == "structure" and args.target in ("M", "Q", "N"):
        import io

        buf = io.StringIO()
        S.NCStructure(F, args.target, items).write(buf)
        text = buf.getvalue()
    else:
        text = "".join(x.to_text() + "\n" for x in items)
    _write(args.out, text)
    return EXIT_OK


def cmd_field_info(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    r3 = F.sqrt(F.neg(F.from_int(3))) if F.p != 3 else 0
    lines = [f"descriptor {F.describe()}", f"p {F.p}", f"r {F.r}", f"q {F.q}", f"modulus {F.modulus_str()}",
             f"generator {F.generator}", f"minus_three_square {str(minus_three_is_square(F)).lower()}"]
    if r3 is not None:
        lines.append(f"sqrt_minus_three {r3}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {"omega": cmd_omega, "verify": cmd_verify, "construct": cmd_construct, "search": cmd_search,
            "export": cmd_export, "field-info": cmd_field_info}


def main(argv: Sequence[str] | None = None, stderr: TextIO | None = None) -> int:
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except TooLarge as e:
        err.write(f"ncsets: resource limit: {e}\n")
        return EXIT_RESOURCE
    except NCSetsError as e:
        err.write(f"ncsets: error: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        err.write(f"ncsets: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
