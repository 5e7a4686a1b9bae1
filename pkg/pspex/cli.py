from __future__ import annotations
import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from . import graph6
from .closedform import closed_form, compare_radii
from .config import (APP_NAME, APP_VERSION, DEFAULT_EPSILON, MAX_VERTICES,
                     OVERRIDE_N_CAP, Settings,
                     load_settings, save_settings, setting_names)
from .errors import SpexError, UsageError
from .format import (fmt_degree_sequence, fmt_fraction, fmt_interval,
                     fmt_seconds, json_default)
from .graph import Graph, construct
from .parser import (parse_edge, parse_family, parse_family_at, parse_forest,
                     parse_graph, parse_vertices)
from .patterns import chromatic_number, contains_subgraph, is_claw_free, is_H_maximal
from .planarity import is_planar
from .search import spex_search, structure_profile, verify_structure_dichotomy
from .spectral import certified_interval, perron, transform
from .turan import classify_spex, exf, maximal_forests, pi, turan_table


def _given(args, name: str, default):
    value = getattr(args, name, None)
    return default if value is None else value


@dataclass
class RunConfig:
    json: bool
    tolerance: float
    max_iterations: int
    threads: int
    n_cap: int
    allow_large: bool
    epsilon: float
    horizon: int

    @classmethod
    def from_args(cls, args, settings: Settings) -> 'RunConfig':
        tol = _given(args, 'tol', settings.tolerance)
        threads = _given(args, 'threads', settings.threads)
        epsilon = _given(args, 'epsilon', settings.epsilon)
        horizon = _given(args, 'horizon', settings.pi_horizon)
        if tol <= 0:
            raise UsageError(f'--tol must be positive (got {tol})')
        if threads < 1:
            raise UsageError(f'--threads must be >= 1 (got {threads})')
        if not 0 < epsilon <= DEFAULT_EPSILON:
            raise UsageError(f'--epsilon must be in (0, {DEFAULT_EPSILON}] (got {epsilon})')
        if not 2 <= horizon <= MAX_VERTICES:
            raise UsageError(f'--horizon must be in 2..{MAX_VERTICES} (got {horizon})')
        return cls(
            json=args.fmt == 'json',
            tolerance=tol,
            max_iterations=settings.max_iterations,
            threads=threads,
            n_cap=settings.n_cap,
            allow_large=getattr(args, 'allow_large', False),
            epsilon=epsilon,
            horizon=horizon,
        )


def _emit(cfg: RunConfig, data: dict, text: str) -> None:
    if cfg.json:
        print(json.dumps(data, indent=2, default=json_default))
    else:
        print(text)


def _graph_lines(g: Graph) -> str:
    return (f"{graph6.encode(g)}\n"
            f"n={g.n} m={g.m} degrees={fmt_degree_sequence(g.degree_sequence())}")


def _graph_dict(g: Graph) -> dict:
    return {'graph6': graph6.encode(g), 'n': g.n, 'm': g.m,
            'degree_sequence': list(g.degree_sequence())}


# ── argparse type hooks ─────────────────────────────────────────────────────

def _typed(parse, name: str):
    def convert(text: str):
        try:
            return parse(text)
        except SpexError as e:
            raise argparse.ArgumentTypeError(str(e)) from None
    convert.__name__ = name
    return convert


graph_arg = _typed(parse_graph, 'graph')
forest_arg = _typed(parse_forest, 'forest')
family_at_arg = _typed(parse_family_at, 'family')
edge_arg = _typed(parse_edge, 'edge')


def _vertices(text: str) -> List[int]:
    return [] if not text.strip() else parse_vertices(text)


vertices_arg = _typed(_vertices, 'vertices')


# ── Subcommand handlers ────────────────────────────────────────────────────

def cmd_construct(args, cfg: RunConfig):
    text = args.family if not args.params else f"{args.family}:{','.join(args.params)}"
    tag = parse_family(text)
    g = construct(tag)
    _emit(cfg, {'family': str(tag), **_graph_dict(g)}, _graph_lines(g))


def cmd_radius(args, cfg: RunConfig):
    g = args.graph
    res = perron(g, cfg.tolerance, cfg.max_iterations)
    lo, hi = certified_interval(g, cfg.tolerance, cfg.max_iterations)
    data = {**_graph_dict(g), **res.to_dict(), 'interval': {'lo': lo, 'hi': hi}}
    text = (f"lambda     {res.lam:.12f}\n"
            f"interval   {fmt_interval((lo, hi))}\n"
            f"residual   {res.residual:.3e}\n"
            f"iterations {res.iterations}")
    if res.component:
        text += f"\ncomponent  {list(res.component)}"
    if args.vector:
        text += '\nvector     ' + ' '.join(f'{t:.6f}' for t in res.vector)
    _emit(cfg, data, text)


def cmd_closed_form(args, cfg: RunConfig):
    tag = parse_family_at(f"{args.family}@{args.n}")
    form = closed_form(tag)
    _emit(cfg, {'family': str(tag), **form.to_dict()},
          f"{form.symbolic()}  {fmt_interval((form.lo, form.hi))}")


def cmd_compare(args, cfg: RunConfig):
    a, b = closed_form(args.a), closed_form(args.b)
    order = compare_radii(a, b)
    _emit(cfg, {'a': a.to_dict(), 'b': b.to_dict(), 'ordering': order.value},
          f"{order.value}  {a.symbolic()} vs {b.symbolic()}")


def cmd_exf(args, cfg: RunConfig):
    if args.table:
        table = turan_table(args.forest, args.n)
        lines = [f"{'n':>3} {'exf':>4}  witness", '-' * 28]
        lines += [f"{r.n:>3} {r.value:>4}  {r.witness}" for r in table.rows]
        _emit(cfg, table.to_dict(), '\n'.join(lines))
        return
    value, witness = exf(args.n, args.forest)
    _emit(cfg, {'n': args.n, 'h': args.forest, 'exf': value, 'witness': witness},
          f"exf({args.n}, {args.forest}) = {value}  witness {witness}")


def cmd_pi(args, cfg: RunConfig):
    v = pi(args.forest, cfg.horizon)
    if v.certified:
        text = f"{fmt_fraction(v.value)} {v.trichotomy.value} period={v.period}"
    else:
        text = (f"[{fmt_fraction(v.lower)}, {fmt_fraction(v.upper)}] "
                f"{v.trichotomy.value} horizon={v.horizon}")
    _emit(cfg, {'h': args.forest, **v.to_dict()}, text)


def cmd_classify(args, cfg: RunConfig):
    p = classify_spex(args.forest, cfg.horizon)
    _emit(cfg, p.to_dict(), f"{p.describe()}  ({p.reason})")


def cmd_maximal(args, cfg: RunConfig):
    h = args.against
    if args.forest is not None:
        verdict = is_H_maximal(args.forest, h)
        _emit(cfg, {'candidate': args.forest, 'h': h, 'maximal': verdict},
              'true' if verdict else 'false')
        return
    if args.order is None:
        raise UsageError('maximal needs --forest or --order')
    found = maximal_forests(args.order, h)
    _emit(cfg, {'n': args.order, 'h': h, 'forests': found},
          '\n'.join(str(f) for f in found) or '(none)')


def cmd_transform(args, cfg: RunConfig):
    g = transform(args.graph, args.vertex, args.targets, args.delete_edge)
    _emit(cfg, _graph_dict(g), _graph_lines(g))


def cmd_profile(args, cfg: RunConfig):
    prof = structure_profile(args.graph, cfg.epsilon, cfg.tolerance)
    data = prof.to_dict()
    lines = [
        f"x={prof.x} w={prof.w} weight(w)={prof.weight_w:.6f} x~w={prof.x_adjacent_w}",
        f"|B|={len(prof.b)} |A|={len(prof.a)} case={prof.case.value}",
        f"B={list(prof.b)}",
        f"G[B] forest={prof.b_forest} claw-free={prof.b_claw_free}",
        f"|L|={prof.large} |S|={prof.small} epsilon={prof.epsilon:g}",
    ]
    if args.dichotomy is not None:
        ok = verify_structure_dichotomy(args.graph, args.dichotomy)
        data['dichotomy'] = ok
        lines.append(f"dichotomy={'true' if ok else 'false'}")
    _emit(cfg, data, '\n'.join(lines))


def cmd_spex_search(args, cfg: RunConfig):
    report = spex_search(args.n, args.forbid, tol=cfg.tolerance, n_cap=cfg.n_cap,
                         allow_large=cfg.allow_large, threads=cfg.threads,
                         progress=args.progress, horizon=cfg.horizon)
    lines = [
        f"n={report.n} F={graph6.encode(report.forbidden)}",
        f"spex       {fmt_interval(report.spex)}",
        f"classes    {report.enumerated} enumerated, {report.evaluated} edge-maximal",
        f"exact      {report.exact_comparisons} exact comparison(s)",
        f"predicted  {report.prediction.describe()}  ({report.prediction.reason})",
        f"agreement  {report.agreement.value}",
        f"time       {fmt_seconds(report.wall_time)} on {report.threads} thread(s)",
        'argmax:',
    ]
    for c in report.argmax:
        lines.append(f"  {graph6.encode(c.graph):<12} m={c.graph.m:<3} "
                     f"{fmt_degree_sequence(c.graph.degree_sequence())} "
                     f"{fmt_interval(c.interval)}")
    if report.unresolved:
        lines.append('warning: some ties could not be separated exactly')
    _emit(cfg, report.to_dict(), '\n'.join(lines))


def cmd_check(args, cfg: RunConfig):
    if not (args.planar or args.free_of is not None or args.chromatic or args.claw_free):
        raise UsageError('check needs at least one of --planar, --free-of, --chromatic, --claw-free')
    g = args.graph
    data: dict = {'graph6': graph6.encode(g)}
    lines = []
    if args.planar:
        verdict = is_planar(g)
        data['planar'] = verdict.planar
        if verdict.planar:
            lines.append('planar')
        else:
            data['kuratowski'] = verdict.kind
            data['witness'] = sorted(verdict.witness)
            lines.append(f"nonplanar ({verdict.kind} subdivision)")
    if args.free_of is not None:
        witness = contains_subgraph(g, args.free_of)
        data['free'] = not witness.present
        data['mapping'] = list(witness.mapping) if witness.present else None
        lines.append(f"contains F via {list(witness.mapping)}" if witness.present else 'F-free')
    if args.chromatic:
        data['chromatic_number'] = chromatic_number(g)
        lines.append(f"chromatic number {data['chromatic_number']}")
    if args.claw_free:
        data['claw_free'] = is_claw_free(g)
        lines.append('claw-free' if data['claw_free'] else 'contains a claw')
    _emit(cfg, data, '\n'.join(lines))


def cmd_config(args, cfg: RunConfig):
    settings = load_settings()
    if args.action == 'set':
        if args.key not in setting_names():
            raise UsageError(f"unknown setting {args.key!r} (known: {', '.join(setting_names())})")
        current = getattr(settings, args.key)
        try:
            value = type(current)(args.value)
        except ValueError:
            raise UsageError(f"{args.key} needs a {type(current).__name__}") from None
        if value <= 0:
            raise UsageError(f"{args.key} must be positive")
        if args.key == 'n_cap' and value > OVERRIDE_N_CAP:
            raise UsageError(f"n_cap cannot exceed {OVERRIDE_N_CAP}")
        setattr(settings, args.key, value)
        save_settings(settings)
    data = asdict(settings)
    _emit(cfg, data, '\n'.join(f"{k:<15} {v}" for k, v in data.items()))


# ── Parser ──────────────────────────────────────────────────────────────────

def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    out = c.add_mutually_exclusive_group()
    out.add_argument('--json', dest='fmt', action='store_const', const='json', default='text')
    out.add_argument('--text', dest='fmt', action='store_const', const='text')
    noise = c.add_mutually_exclusive_group()
    noise.add_argument('-v', '--verbose', action='count', default=0)
    noise.add_argument('-q', '--quiet', action='store_true')
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(
        prog='pspex',
        description=f'{APP_NAME} {APP_VERSION}: spectral extremal planar graphs '
                    f'without K2+H',
    )
    p.add_argument('--version', action='version', version=f'{APP_NAME} {APP_VERSION}')
    sub = p.add_subparsers(dest='cmd', required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add('construct', cmd_construct, 'Build a named graph (graph6 + degrees)')
    sp.add_argument('family', help='family name or shorthand, e.g. book:3')
    sp.add_argument('params', nargs='*', help='integer parameters')

    sp = add('radius', cmd_radius, 'Spectral radius by power iteration, with certified interval')
    sp.add_argument('graph', type=graph_arg, help='graph6 or family shorthand')
    sp.add_argument('--tol', type=float)
    sp.add_argument('--vector', action='store_true', help='print the Perron vector')

    sp = add('closed-form', cmd_closed_form, 'Exact spectral radius of an extremal family')
    sp.add_argument('family')
    sp.add_argument('n', type=int)

    sp = add('compare', cmd_compare, 'Exact ordering of two closed-form radii')
    sp.add_argument('a', type=family_at_arg, help='e.g. k2-matching@10')
    sp.add_argument('b', type=family_at_arg)

    sp = add('exf', cmd_exf, 'Max edges of an n-vertex H-free linear forest')
    sp.add_argument('n', type=int)
    sp.add_argument('--forest', type=forest_arg, required=True, help='H as parts, e.g. 2,2')
    sp.add_argument('--table', action='store_true', help='all orders 1..n')

    sp = add('pi', cmd_pi, 'Limit of exf(n,H)/n with detected period')
    sp.add_argument('--forest', type=forest_arg, required=True)
    sp.add_argument('--horizon', type=int)

    sp = add('classify', cmd_classify, 'Predicted extremal family for F = K2+H')
    sp.add_argument('--forest', type=forest_arg, required=True)
    sp.add_argument('--horizon', type=int)

    sp = add('maximal', cmd_maximal, 'H-maximality of a forest, or all H-maximal forests')
    sp.add_argument('--forest', type=forest_arg, help='candidate forest')
    sp.add_argument('--order', type=int, help='list every H-maximal forest on this many vertices')
    sp.add_argument('--against', type=forest_arg, required=True, help='H')

    sp = add('transform', cmd_transform, 'Move a vertex onto new neighbours')
    sp.add_argument('graph', type=graph_arg)
    sp.add_argument('--vertex', type=int, required=True)
    sp.add_argument('--targets', type=vertices_arg, required=True, help="a,b,c or '' for none")
    sp.add_argument('--delete-edge', type=edge_arg, help='u,v')

    sp = add('profile', cmd_profile, 'Perron-weight structure of a connected graph')
    sp.add_argument('graph', type=graph_arg)
    sp.add_argument('--epsilon', type=float)
    sp.add_argument('--tol', type=float)
    sp.add_argument('--dichotomy', type=graph_arg, metavar='F',
                    help='also test the two-apex/dominating-edge dichotomy against F')

    sp = add('spex-search', cmd_spex_search, 'Certify the extremal set at small n')
    sp.add_argument('n', type=int)
    sp.add_argument('--forbid', type=graph_arg, required=True, help='graph6 or family shorthand')
    sp.add_argument('--tol', type=float)
    sp.add_argument('--threads', type=int, help='worker processes (default PSPEX_THREADS or 1)')
    sp.add_argument('--allow-large', action='store_true',
                    help=f'raise the vertex cap to {OVERRIDE_N_CAP}')
    sp.add_argument('--horizon', type=int)
    sp.add_argument('--progress', action='store_true', help='progress bar on stderr')

    sp = add('check', cmd_check, 'Planarity, F-freeness, chromatic number, claw-freeness')
    sp.add_argument('graph', type=graph_arg)
    sp.add_argument('--planar', action='store_true')
    sp.add_argument('--free-of', type=graph_arg, metavar='F')
    sp.add_argument('--chromatic', action='store_true')
    sp.add_argument('--claw-free', action='store_true')

    sp = add('config', cmd_config, 'Show or change saved settings')
    sp.add_argument('action', choices=['show', 'set'])
    sp.add_argument('key', nargs='?')
    sp.add_argument('value', nargs='?')

    return p


def _configure_logging(args) -> None:
    level = logging.WARNING
    if args.quiet:
        level = logging.ERROR
    elif args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        if args.cmd == 'config' and args.action == 'set' and (args.key is None or args.value is None):
            raise UsageError('config set needs KEY VALUE')
        cfg = RunConfig.from_args(args, load_settings())
        args.func(args, cfg)
    except UsageError as e:
        print(f"pspex: error: {e}", file=sys.stderr)
        return 2
    except SpexError as e:
        print(f"pspex: error: {e}", file=sys.stderr)
        return 1
    return 0
