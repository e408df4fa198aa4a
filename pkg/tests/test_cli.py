import re

import pytest

from dld.cli import main

DEMO_CONFIG = """\
# worked-example universe
spots=r,s,t,u
fields=up,dn
atoms=10
modulus=11
max_steps=100
"""


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "demo.cfg"
    path.write_text(DEMO_CONFIG)
    return str(path)


def test_normalize(capsys, config):
    assert main(["normalize", "--config", config,
                 "({s:#0} + {s:#1}) <| {s:#2}"]) == 0
    assert capsys.readouterr().out == "s:#2\n"
    assert main(["normalize", "--config", config, "0 <| 0"]) == 0
    assert capsys.readouterr().out == "0\n"
    assert main(["normalize", "--config", config, "{r:#0} + {r:#0}"]) == 0
    assert capsys.readouterr().out == "r:#0\n"


def test_normalize_requires_universe(capsys):
    assert main(["normalize", "0"]) == 1
    assert "universe not fully declared" in capsys.readouterr().err


def test_parse_error_reported(capsys, config):
    assert main(["normalize", "--config", config, "{s:#0"]) == 1
    assert "error:" in capsys.readouterr().err


def test_eval(capsys, config, tmp_path):
    state = tmp_path / "state.txt"
    state.write_text("0\n")
    assert main(["eval", "--config", config, "--state", str(state),
                 "--actions", "getatobj(r)"]) == 0
    assert capsys.readouterr().out == "getatobj(r) T r:#0\n"

    state.write_text("r:#0, #0.up:#1, #2.up:#3, #3.dn:#2\n")
    assert main(["eval", "--config", config, "--state", str(state),
                 "--actions", "fgc"]) == 0
    assert capsys.readouterr().out.strip().endswith("r:#0, #0.up:#1")

    state.write_text("r:#0, s:#0, #0.up:#1, t:#2, #2.up:#3\n")
    assert main(["eval", "--config", config, "--state", str(state),
                 "--actions", "udsetspot(s,t)"]) == 0
    assert capsys.readouterr().out.strip() == \
        "udsetspot(s,t) T s:#2, t:#2, #2.up:#3"


def test_run_exit_codes(capsys, config, tmp_path):
    init = tmp_path / "init.txt"
    init.write_text("0\n")
    spec = tmp_path / "spec.thread"

    spec.write_text("main = S\n")
    assert main(["run", "--config", config, "--spec", str(spec),
                 "--init", str(init)]) == 0
    capsys.readouterr()

    spec.write_text("main = D\n")
    assert main(["run", "--config", config, "--spec", str(spec),
                 "--init", str(init)]) == 2
    capsys.readouterr()

    spec.write_text("main = X\nX = tau . X\n")
    assert main(["run", "--config", config, "--spec", str(spec),
                 "--init", str(init), "--max-steps", "5"]) == 3
    out = capsys.readouterr().out
    assert out.strip().endswith("budgetexhausted")


def test_run_output_modes(capsys, config, tmp_path):
    init = tmp_path / "init.txt"
    init.write_text("0\n")
    spec = tmp_path / "spec.thread"
    spec.write_text("main = getatobj(r) ; S\n")

    assert main(["run", "--config", config, "--spec", str(spec),
                 "--init", str(init), "--output", "final"]) == 0
    assert capsys.readouterr().out == "r:#0\n"

    assert main(["run", "--config", config, "--spec", str(spec),
                 "--init", str(init), "--output", "machine"]) == 0
    assert capsys.readouterr().out == "getatobj(r) T r:#0\nstop\n"


def test_check_summary_line(capsys):
    assert main(["check", "axioms", "--cases", "5"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1
    assert re.fullmatch(r"checked=\d+ passed=\d+ failed=\d+", lines[-1])


def test_check_thm3_small(capsys):
    assert main(["check", "thm3", "--spots", "1", "--fields", "1",
                 "--atoms", "1", "--modulus", "2"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert re.fullmatch(r"checked=\d+ passed=\d+ failed=0", out[-1])

    # non-tight states expose the freshness counterexample family
    assert main(["check", "thm3", "--spots", "1", "--fields", "1",
                 "--atoms", "2", "--modulus", "2",
                 "--include-nontight"]) == 1
    out = capsys.readouterr().out.strip().splitlines()
    assert any(line.startswith("FAIL") and "tight=false" in line
               for line in out[:-1])
    assert re.fullmatch(r"checked=\d+ passed=\d+ failed=[1-9]\d*", out[-1])


def test_roundtrip_all_small_linkages():
    from dld.checks import enumerate_linkages
    from dld.parsing import parse_linkage
    from dld.universe import small_universe
    u = small_universe(2, 1, 2, 2)
    for l in enumerate_linkages(u):
        assert parse_linkage(l.canonical_text(), u) == l
