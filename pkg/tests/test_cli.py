import json

import pytest

from schemekit.cli import main
from schemekit.fixtures import FILES


@pytest.fixture(scope="module")
def data(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    for name in FILES:
        assert main(["fixture", name, "--write", str(root / name)]) == 0
    return root


@pytest.fixture
def run(data, capsys):
    def go(*argv, code=0):
        argv = [str(data / a) if (data / a).exists() and "/" in a else a for a in argv]
        rc = main(list(argv))
        out, err = capsys.readouterr()
        assert rc == code, (argv, out, err)
        return out.splitlines(), err

    return go


def run_json(run, *argv, code=0):
    lines, _ = run(*argv, "--json", code=code)
    return json.loads("\n".join(lines))


def test_gb_and_normal_forms(run):
    lines, _ = run("gb", "twisted-cubic/cubic.ideal")
    assert lines == ["y^2 - x*z", "y*z - x*w", "z^2 - y*w"]
    lines, _ = run("nf", "twisted-cubic/cubic.ideal", "--poly", "x*z", "--poly", "y^2", "--poly", "y*w - z^2")
    assert lines == ["x*z", "x*z", "0"]
    out = run_json(run, "nf", "twisted-cubic/cubic.ideal", "--polys-file", "twisted-cubic/cubic.ideal")
    assert out == {"normal_forms": ["0", "0", "0"]}


def test_quotient_and_saturate(run):
    q, _ = run("quotient", "double-conic/H.ideal", "double-conic/C.ideal")
    c, _ = run("gb", "double-conic/C.ideal")
    assert q == c
    a, _ = run("saturate", "twisted-cubic/cubic.ideal")
    b, _ = run("saturate", "twisted-cubic/cubic.ideal", "--method", "iterate")
    assert a == b == ["y^2 - x*z", "y*z - x*w", "z^2 - y*w"]


def test_eliminate(run):
    out = run_json(run, "eliminate", "twisted-cubic/cubic-lex.ideal", "-k", "1")
    assert out["vars"] == ["x", "y", "z"]
    assert out["basis"] == ["y^2 - x*z", "y*z - x", "z^2 - y"]


def test_hilbert_commands(run):
    assert run("degree", "veronese-demo/veronese.ideal")[0] == ["4"]
    assert run("dim", "veronese-demo/veronese.ideal")[0] == ["2"]
    assert run_json(run, "degree", "twisted-cubic/cubic.ideal") == {"dimension": 1, "degree": 3}
    assert run("reduced-degree", "veronese-demo/section.ideal")[0] == ["1"]


def test_emptiness(run):
    assert run("empty", "nodal-cuspidal/conic.ideal")[0] == ["false"]
    assert run("empty", "coordinate-lines/L1.ideal", "--intersect", "coordinate-lines/L2.ideal")[0] == ["false"]
    assert run("empty", "coordinate-lines/triple.ideal")[0] == ["true"]
    out = run_json(run, "empty", "coordinate-lines/L1.ideal", "--intersect", "coordinate-lines/L2.ideal",
                   "--intersect", "coordinate-lines/L3.ideal")
    assert out == {"empty": True}


def test_double_check(run):
    args = ("double-conic/H.ideal", "double-conic/C.ideal", "--ambient", "double-conic/veronese.ideal")
    assert run("double-check", *args)[0] == ["true"]
    # a reduced hyperplane section is not twice anything
    assert run("double-check", "double-conic/H2.ideal", "double-conic/C.ideal", "--ambient",
               "double-conic/veronese.ideal")[0] == ["false"]


def test_forms_and_membership(run):
    out = run_json(run, "forms-through", "twisted-cubic/cubic.ideal", "-d", "2")
    assert out["dim"] == 3
    out = run_json(run, "member", "torsion-membership/member.ideal", "torsion-membership/2K.ideal", "-d", "3")
    assert out == {"member": True, "system_dim": 34}
    out = run_json(run, "member", "torsion-membership/perturbed.ideal", "torsion-membership/2K.ideal", "-d", "3")
    assert out["member"] is False


def test_singular(run):
    lines, _ = run("singular", "nodal-cuspidal/nodal.ideal")
    assert lines == ["x", "y", "reduced degree 1"]
    assert run("singular", "nodal-cuspidal/conic.ideal")[0] == ["empty"]


def test_crt_and_lift(run):
    assert run("crt", "veronese-demo/residues.txt")[0] == ["3337 mod 5005"]
    out = run_json(run, "lift", "veronese-demo/residues.txt")
    assert out == {"value": "1/3", "bad_primes": [], "confirmed": True}


def test_lift_conjugate_pairs(run, tmp_path):
    # 1 + s with s² = -7: split at 11, 23, 29 (s ≡ ±2, ±4, ±14); inert at 13, 17
    path = tmp_path / "pairs.txt"
    path.write_text("11 3 10\n13 1:1 1:12\n17 1:1 1:16\n23 5 20\n29 15 16\n")
    out = run_json(run, "lift", str(path), "--adjoin", "-7")
    assert (out["trace"], out["norm"]) == ("2", "8")
    assert out["value"] == "(1 + s)"


def test_search_hyperplanes(run):
    out = run_json(run, "search-hyperplanes", "--spec", "veronese-demo/demo.spec")
    [fam] = out["families"]
    assert [s["values"] for s in fam["lifted"]] == [["9/4"]]
    lines, _ = run("search-hyperplanes", "--spec", "veronese-demo/demo.spec", "--primes", "7", "11", "13")
    assert "  lifted ['9/4']: z00 - 3*z01 + 9/4*z11" in lines


def test_fixture_runner(run):
    assert "veronese-demo" in run("fixture", "list")[0]
    out = run_json(run, "fixture", "coordinate-lines")
    assert out["status"] == "PASS" and out["within_budget"]
    run("fixture", "no-such-thing", code=1)


def test_errors_and_exit_codes(run, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("field QQ\nvars x y\nx^2 + $y\n")
    out = run_json(run, "gb", str(bad), code=1)
    assert out["error"]["type"] == "ParseError"
    assert (out["error"]["line"], out["error"]["column"]) == (3, 7)
    _, err = run("gb", str(bad), code=1)
    assert "line 3, column 7" in err
    run("gb", str(tmp_path / "missing.ideal"), code=1)
    with pytest.raises(SystemExit) as exc:
        main(["quotient"])
    assert exc.value.code == 2


def test_size_limits(run, tmp_path):
    names = " ".join(f"x{i}" for i in range(13))
    big = tmp_path / "big.ideal"
    big.write_text(f"field GF 101\nvars {names}\nx0 - x1\n")
    out = run_json(run, "gb", str(big), code=1)
    assert "--load-external" in out["error"]["message"]
    assert run("gb", str(big), "--load-external")[0] == ["x0 + 100*x1"]
