"""Text forms of forests, family tags and graphs used on the command line.

Graph arguments accept either a family shorthand (``book:3``, ``k2-forest:4,2,1``,
``k5-e``) or graph6 text.
"""
from __future__ import annotations
from typing import List, Tuple

from . import graph6
from .errors import ParameterError
from .graph import Family, Graph, GraphFamilyTag, LinearForest, construct

_BY_NAME = {f.value: f for f in Family}
_ALIASES = {
    'p': Family.PATH,
    'c': Family.CYCLE,
    'i': Family.EMPTY,
    'kn': Family.COMPLETE,
    'bipartite': Family.COMPLETE_BIPARTITE,
}


def parse_int_list(text: str, what: str = 'list') -> List[int]:
    """``4,2,1`` -> [4, 2, 1]; ``2x3`` expands to three 2s."""
    body = text.strip().strip('{}() ')
    if not body:
        raise ParameterError(what, text, 'empty')
    out: List[int] = []
    for item in body.split(','):
        item = item.strip()
        base, _, times = item.partition('x')
        try:
            value = int(base)
            count = int(times) if times else 1
        except ValueError:
            raise ParameterError(what, text, f'{item!r} is not an integer') from None
        if count < 1:
            raise ParameterError(what, text, f'repeat count in {item!r} must be >= 1')
        out.extend([value] * count)
    return out


def parse_forest(text: str) -> LinearForest:
    return LinearForest(tuple(parse_int_list(text, 'forest')))


def family_names() -> List[str]:
    return sorted(_BY_NAME)


def parse_family(text: str) -> GraphFamilyTag:
    name, _, args = text.strip().partition(':')
    name = name.lower()
    family = _BY_NAME.get(name) or _ALIASES.get(name)
    if family is None:
        raise ParameterError('family', name,
                             f"unknown family (known: {', '.join(family_names())})")
    params = tuple(parse_int_list(args, name)) if args else ()
    return GraphFamilyTag(family, params)


def parse_family_at(text: str) -> GraphFamilyTag:
    """``two-apex-cycle@10`` -> GraphFamilyTag(TWO_APEX_CYCLE, (10,))."""
    name, sep, n = text.partition('@')
    if not sep:
        return parse_family(text)
    try:
        order = int(n)
    except ValueError:
        raise ParameterError('n', n, 'expected an integer after @') from None
    return GraphFamilyTag(parse_family(name).family, (order,))


def looks_like_family(text: str) -> bool:
    name = text.strip().partition(':')[0].lower()
    return name in _BY_NAME or name in _ALIASES


def parse_graph(text: str) -> Graph:
    if looks_like_family(text):
        return construct(parse_family(text))
    return graph6.decode(text)


def parse_edge(text: str) -> Tuple[int, int]:
    values = parse_int_list(text, 'edge')
    if len(values) != 2:
        raise ParameterError('edge', text, 'expected two vertices u,v')
    return values[0], values[1]


def parse_vertices(text: str) -> List[int]:
    return parse_int_list(text, 'vertices')
