import pytest

from rrspace.cli import main
from rrspace.exprparse import parse_point_with_field, parse_polynomial
from rrspace.gf import GF


@pytest.fixture()
def curve_file(tmp_path):
    p = tmp_path / "curve.txt"
    p.write_text("field = GF(2)\nF = y^3 + x^3 + x^2*z\n")
    return str(p)


@pytest.fixture()
def divisor_file(tmp_path):
    p = tmp_path / "div.txt"
    p.write_text("point=(1:0:1) branch=0 mult=1\n")
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_adjoint_output(capsys, curve_file):
    code, out = _run(capsys, ["adjoint", curve_file])
    assert code == 0
    assert out.splitlines() == ["A = 2*P((0:0:1),0)", "genus = 0"]


def test_divisor_output(capsys, curve_file):
    code, out = _run(capsys, ["divisor", curve_file, "y"])
    assert code == 0
    assert out.strip() == "2*P((0:0:1),0) + 1*P((1:0:1),0)"


def test_rrbasis_output(capsys, curve_file, divisor_file):
    code, out = _run(capsys, ["rrbasis", curve_file, divisor_file])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "H = y"
    assert set(lines[1:3]) == {"G1 = y", "G2 = x"}
    assert lines[3] == "ell = 2"


def test_places_output_shows_ramification(capsys, curve_file):
    code, out = _run(capsys, ["places", curve_file, "(0:0:1)"])
    assert code == 0
    assert "ram=3" in out
    assert "t^3" in out and "t^2" in out


def test_share_roundtrip_output(capsys):
    code, out = _run(capsys, ["share", "GF(5)", "3", "2", "1,2,3"])
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("reconstructed = 3")


def test_agcode_output(capsys, tmp_path):
    curve = tmp_path / "line.txt"
    curve.write_text("field = GF(5)\nF = y\n")
    div = tmp_path / "div.txt"
    div.write_text("point=(1:0:0) branch=0 mult=2\n")
    pts = tmp_path / "pts.txt"
    pts.write_text("(0:0:1)\n(1:0:1)\n(2:0:1)\n(3:0:1)\n")
    code, out = _run(capsys, ["agcode", str(curve), str(div), str(pts)])
    assert code == 0
    assert out.splitlines() == ["1 1 1 1", "0 1 2 3", "0 1 4 4"]


def test_round_trip_of_printed_polynomials(capsys, curve_file, divisor_file):
    code, out = _run(capsys, ["rrbasis", curve_file, divisor_file])
    field = GF(2)
    for line in out.splitlines():
        if line.startswith(("H = ", "G")):
            text = line.split("=", 1)[1].strip()
            reparsed = parse_polynomial(text, field)
            assert str(reparsed) == text


def test_deterministic_output(capsys, curve_file, divisor_file):
    _code, out1 = _run(capsys, ["--seed", "9", "rrbasis", curve_file, divisor_file])
    _code, out2 = _run(capsys, ["--seed", "9", "rrbasis", curve_file, divisor_file])
    assert out1 == out2


def test_parse_error_exit_code(capsys, curve_file):
    code = main(["divisor", curve_file, "y + "])
    assert code == 2


def test_precondition_exit_code(capsys, curve_file):
    code = main(["places", curve_file, "(1:1:1)"])
    assert code == 3


def test_reducible_curve_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("field = GF(5)\nF = x*y\n")
    code = main(["adjoint", str(bad)])
    assert code == 3


def test_precision_cap_exit_code(capsys, curve_file):
    code = main(["--prec-cap", "4", "places", curve_file, "(0:0:1)"])
    assert code == 4


def test_extension_point_literal():
    F4 = GF(2, 2)
    pt = parse_point_with_field("(t:1:1) in GF(4)", GF(2))
    assert pt.field == F4
    assert pt.coords[0] == F4.generator()


def test_divisor_file_with_extension_point(capsys, tmp_path):
    curve = tmp_path / "conic.txt"
    curve.write_text("field = GF(2)\nF = x^2 + y*z\n")
    div = tmp_path / "div.txt"
    # (t : 1 : t^2) lies on x^2 + yz over GF(4)
    div.write_text("point=(t:1:t^2) in GF(4) branch=0 mult=1\n")
    code = main(["rrbasis", str(curve), str(div)])
    out = capsys.readouterr().out
    assert code == 0
    assert "ell = 2" in out  # genus-zero conic, degree-1 divisor
