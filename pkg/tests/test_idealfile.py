import pytest

from liaison.errors import MalformedSyntax, ParseError, UnknownVariable
from liaison.ideals import Ideal
from liaison.idealfile import format_ideal_file, parse_ideal_file
from liaison.polyring import GF, LEX

TEXT = """\
# twisted cubic and friends
ring QQ [x0, x1, x2, x3]

# lc: yes
ideal C = x0*x2 - x1^2,
          x1*x3 - x2^2,
          x0*x3 - x1*x2;
ideal P = x0;   # trailing comment
# lc: assumed
ideal Z = ;
"""


def test_parse_basic():
    f = parse_ideal_file(TEXT)
    assert list(f.ideals) == ["C", "P", "Z"]
    assert len(f["C"].gens) == 3
    assert f["Z"].is_zero()
    assert f.lc == {"C": "yes", "Z": "assumed"}
    assert f.ring.names == ("x0", "x1", "x2", "x3")


def test_ring_options():
    f = parse_ideal_file("ring GF(101) [x, y] affine order lex\nideal I = x^2 - y;\n")
    assert f.ring.field == GF(101)
    assert not f.ring.graded
    assert f.ring.order == LEX


def test_roundtrip():
    f = parse_ideal_file(TEXT)
    again = parse_ideal_file(format_ideal_file(f.ring, f.ideals))
    for name in f.ideals:
        assert again[name] == f[name]


def test_unknown_name():
    with pytest.raises(ParseError):
        parse_ideal_file(TEXT)["Q"]


@pytest.mark.parametrize("text,line,column", [
    ("ring QQ [x, y]\nideal I = x + * y;\n", 2, 15),
    ("ring QQ [x, y]\nideal I = x,\n   y + ;\n", 3, 8),
    ("ring QQ [x, y\n", 1, 1),
    ("ideal I = x;\n", 1, 1),
    ("ring QQ [x, y]\nideal I = x\n", 2, 1),
    ("ring QQ [x, y]\nfoo\n", 2, 1),
    ("ring QQ [x, y]\nideal I = x;\nideal I = y;\n", 3, 1),
    ("ring QQ [x, y]\nideal I = x,, y;\n", 2, 13),
])
def test_errors_carry_location(text, line, column):
    with pytest.raises(ParseError) as e:
        parse_ideal_file(text)
    assert (e.value.line, e.value.column) == (line, column)


def test_unknown_variable_location():
    with pytest.raises(UnknownVariable) as e:
        parse_ideal_file("ring QQ [x, y]\n\nideal I = x + w;\n")
    assert e.value.line == 3


def test_bad_lc_tag():
    with pytest.raises(MalformedSyntax):
        parse_ideal_file("ring QQ [x]\n# lc: maybe\nideal I = x;\n")


def test_missing_ring_or_ideal():
    with pytest.raises(ParseError):
        parse_ideal_file("")
    with pytest.raises(ParseError):
        parse_ideal_file("ring QQ [x]\n")
