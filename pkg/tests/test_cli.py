import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from boobytrap.cli import main
from boobytrap.tables import fraction_text, parse_range, table

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_value_star3():
    code, text = run("value", "star3", "--traps", "1")
    assert code == 0 and "99/400" in text  # 0.2475


def test_value_csv():
    code, text = run("value", "cycle", "--traps", "2", "--emit", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and rows[0] == ["classification", "lower", "upper", "value"]
    assert rows[1][0] == "cycle" and float(rows[1][3]) == 0.125


def test_centroid_loop_tail():
    code, text = run("centroid", "loop_tail")
    assert code == 0 and "no centroid" in text and "equal split found" in text


def test_centroid_star():
    code, text = run("centroid", "star3")
    assert "node c" in text and "9/20" in text


def test_partition_round_trips(tmp_path):
    code, text = run("partition", "prism")
    assert code == 0 and text.count("# half") == 2


def test_partition_reports_none_found():
    code, _ = run("partition", "looped_triangle")
    assert code == 1


def test_strategy_and_best_response(tmp_path):
    doc = tmp_path / "odd.json"
    assert run("strategy", "--player", "defender", "--method", "odd-star", "star5_sym", "--out", str(doc))[0] == 1
    from boobytrap.netmodel import format_network, symmetric_star

    net = tmp_path / "s5.net"
    net.write_text(format_network(symmetric_star(5)))
    assert run("strategy", "--player", "defender", "--method", "odd-star", str(net), "--out", str(doc))[0] == 0
    assert json.loads(doc.read_text())["player"] == "defender"
    code, text = run("best-response", str(net), "--strategy", str(doc), "--mesh", "60")
    assert code == 0
    assert float(text.split(": ")[1].split()[0]) <= 6 / 35 + 0.01


def test_simulate_command(tmp_path):
    d, a, batches = tmp_path / "d.json", tmp_path / "a.json", tmp_path / "b.csv"
    run("strategy", "--player", "defender", "--method", "cycle", "cycle", "--traps", "2", "--out", str(d))
    run("strategy", "--player", "attacker", "--method", "cycle", "cycle", "--traps", "2", "--out", str(a))
    code, text = run("simulate", "cycle", "--defender", str(d), "--attacker", str(a), "--trials", "20000", "--seed", "4", "--batch-csv", str(batches))
    assert code == 0 and "mean payoff" in text
    raw = batches.read_bytes()
    assert raw.startswith(b"batch,mean\n") and b"\r" not in raw
    assert run("simulate", "cycle", "--defender", str(d), "--attacker", str(a), "--trials", "10")[0] == 2


def test_oracle_command(tmp_path):
    dump = tmp_path / "m.csv"
    code, text = run("oracle", "path", "--mesh", "6", "--tol", "1e-6", "--dump-matrix", str(dump))
    assert code == 0 and "certified" in text
    rows = list(csv.reader(dump.open()))
    assert len(rows) == 1 + 6 + 2  # header, cells, nodes


def test_euclidean_command():
    code, text = run("euclidean", "--traps", "2", "--cells", "30", "--trials", "1000", "--seed", "2")
    assert code == 0 and "4/27" in text and "simulated" in text
    assert run("euclidean", "--traps", "2", "--cells", "30", "--trials", "1000")[0] == 2


def test_usage_and_domain_errors():
    assert run("value", "star3", "--bogus")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("value", "no-such-file")[0] == 1
    assert run("strategy", "--player", "defender", "--method", "cycle", "path")[0] == 1
    assert run("tables", "--family", "cycle-k", "--k", "5..2")[0] == 1


@pytest.mark.parametrize(
    "family, args",
    [("euclidean-k", ["--k", "1..6"]), ("cycle-k", ["--k", "1..6"]), ("symmetric-star", ["--n", "3..12"]), ("ratio-sweep", ["--steps", "6000"])],
)
def test_tables_match_golden(family, args):
    code, text = run("tables", "--family", family, *args)
    assert code == 0
    assert text == (GOLDEN / f"{family}.csv").read_text()


def test_golden_values_against_formulas():
    rows = list(csv.DictReader((GOLDEN / "euclidean-k.csv").open()))
    assert [Fraction(r["value"]) for r in rows] == [Fraction(k**k, (k + 1) ** (k + 1)) for k in range(1, 7)]
    rows = list(csv.DictReader((GOLDEN / "cycle-k.csv").open()))
    assert [Fraction(r["value"]) for r in rows] == [Fraction(1, 4 * k) for k in range(1, 7)]
    rows = list(csv.DictReader((GOLDEN / "symmetric-star.csv").open()))
    for r in rows:
        n = int(r["n"])
        want = Fraction(n, n * n + 4) if n % 2 == 0 else Fraction(n * n - 1, n * (n * n + 3))
        assert Fraction(r["value"]) == want


def test_fraction_text():
    assert fraction_text(0.2475) == "99/400"
    assert fraction_text(Fraction(1, 3)) == "1/3"
    assert fraction_text(2**-0.5) == repr(2**-0.5)


def test_parse_range():
    assert list(parse_range("3..5")) == [3, 4, 5]
    assert list(parse_range("4")) == [4]
    with pytest.raises(ValueError):
        parse_range("a..b")
    with pytest.raises(ValueError):
        table("weather")
