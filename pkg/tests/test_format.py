import json
from fractions import Fraction

from pspex.format import (fmt_degree_sequence, fmt_fraction, fmt_interval,
                          fmt_seconds, json_default)
from pspex.graph import LinearForest
from pspex.turan import Trichotomy


def test_fmt_fraction():
    assert fmt_fraction(Fraction(1, 2)) == '1/2'
    assert fmt_fraction(Fraction(6, 2)) == '3'
    assert fmt_fraction(Fraction(-3, 4)) == '-3/4'


def test_fmt_interval():
    assert fmt_interval((Fraction(1, 4), Fraction(1, 2))) == '[0.250000000000, 0.500000000000]'
    assert fmt_interval((Fraction(1, 3), Fraction(2, 3)), digits=3) == '[0.333, 0.667]'


def test_fmt_degree_sequence():
    assert fmt_degree_sequence((8, 8, 4)) == '(8,8,4)'
    assert fmt_degree_sequence(()) == '()'


def test_fmt_seconds():
    assert fmt_seconds(0.25) == '250ms'
    assert fmt_seconds(12.34) == '12.3s'
    assert fmt_seconds(125) == '2m 5s'


def test_json_default_handles_domain_values():
    data = {'r': Fraction(1, 3), 't': Trichotomy.EQUAL_HALF, 'f': LinearForest.of(2, 4)}
    out = json.loads(json.dumps(data, default=json_default))
    assert out['r']['num'] == 1 and out['r']['den'] == 3
    assert out['r']['decimal'].startswith('0.3333333333')
    assert out['t'] == 'EQUAL_HALF'
    assert out['f'] == [4, 2]
