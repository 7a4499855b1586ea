"""End-to-end tests for the command line interface."""

import json
import sys
from fractions import Fraction

import pytest

from lattiso import linalg as la
from lattiso.cli import cli_main, format_lattice_file, main, parse_lattice_file
from lattiso.lattice import dual, is_isomorphism, make_lattice
from lattiso.lip import lip_general

Z2 = make_lattice(((1, 0), (0, 1)))
Z3 = make_lattice(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
A2 = make_lattice(((2, 1), (1, 2)))
SKEW = make_lattice(((5, 3), (3, 2)))
DIAG_1_4 = make_lattice(((1, 0), (0, 4)))
DIAG_2_2 = make_lattice(((2, 0), (0, 2)))


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        p = tmp_path / name
        if isinstance(content, str):
            p.write_text(content)
        else:
            p.write_text(format_lattice_file(content))
        return str(p)

    return _write


def run(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def int_matrix(rows):
    return tuple(tuple(int(e) for e in row) for row in rows)


class TestLatticeFile:
    def test_round_trip_integer_gram(self):
        text = format_lattice_file(A2)
        L = parse_lattice_file(text)
        assert L.gram == A2.gram
        assert format_lattice_file(L) == text

    def test_round_trip_rational_entries(self):
        D = dual(A2)
        text = format_lattice_file(D)
        assert '"2/3"' in text
        assert parse_lattice_file(text).gram == D.gram
        assert format_lattice_file(parse_lattice_file(text)) == text

    def test_accepts_bare_integers(self):
        L = parse_lattice_file(json.dumps({"n": 1, "gram": [[2]]}))
        assert L.gram == ((Fraction(2),),)

    def test_rejects_decimal_strings(self):
        with pytest.raises(ValueError):
            parse_lattice_file(json.dumps({"n": 1, "gram": [["1.5"]]}))

    def test_rejects_rank_mismatch(self):
        with pytest.raises(ValueError):
            parse_lattice_file(json.dumps({"n": 2, "gram": [["1"]]}))

    def test_rejects_missing_fields(self):
        with pytest.raises(ValueError):
            parse_lattice_file(json.dumps({"gram": [["1"]]}))

    def test_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            parse_lattice_file(json.dumps({"n": 1, "gram": [["1/0"]]}))


class TestDecide:
    def test_isomorphic_pair(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "lip", "decide", a, a)
        assert code == 0
        assert out.strip() == "ISOMORPHIC"

    def test_non_isomorphic_pair(self, capsys, write):
        a = write("a.json", DIAG_1_4)
        b = write("b.json", DIAG_2_2)
        code, out, _ = run(capsys, "lip", "decide", a, b)
        assert code == 1
        assert out.strip() == "NOT_ISOMORPHIC"

    def test_missing_file(self, capsys, write, tmp_path):
        a = write("a.json", Z2)
        code, _, err = run(capsys, "lip", "decide", a, str(tmp_path / "nope.json"))
        assert code == 2
        assert "error" in err

    def test_malformed_json(self, capsys, write):
        a = write("a.json", Z2)
        bad = write("bad.json", "{not json")
        code, _, err = run(capsys, "lip", "decide", a, bad)
        assert code == 2
        assert err

    def test_not_positive_definite(self, capsys, write):
        a = write("a.json", Z2)
        bad = write("bad.json", json.dumps({"n": 2, "gram": [["1", "2"], ["2", "1"]]}))
        code, _, err = run(capsys, "lip", "decide", a, bad)
        assert code == 2
        assert err


class TestIsoms:
    def test_square_lattice_count(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "lip", "isoms", a, a, "--json")
        assert code == 0
        data = json.loads(out)
        assert data["count"] == 8
        assert len(data["isoms"]) == 8
        for rows in data["isoms"]:
            assert is_isomorphism(Z2, Z2, int_matrix(rows))

    def test_plain_output_lists_each(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "lip", "isoms", a, a)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "count: 8"
        assert len(lines) == 9

    def test_empty_set(self, capsys, write):
        a = write("a.json", DIAG_1_4)
        b = write("b.json", DIAG_2_2)
        code, out, _ = run(capsys, "lip", "isoms", a, b, "--json")
        assert code == 0
        assert json.loads(out) == {"count": 0, "isoms": []}


class TestAuts:
    def test_count_only_z3(self, capsys, write):
        a = write("a.json", Z3)
        code, out, _ = run(capsys, "lip", "auts", a, "--count-only")
        assert code == 0
        assert out.strip() == "48"

    def test_json_hexagonal(self, capsys, write):
        a = write("a.json", A2)
        code, out, _ = run(capsys, "lip", "auts", a, "--json")
        assert code == 0
        data = json.loads(out)
        assert data["count"] == 12
        for rows in data["isoms"]:
            assert is_isomorphism(A2, A2, int_matrix(rows))


class TestSvp:
    def test_plain(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "svp", a)
        assert code == 0
        assert "vector: 1 0" in out
        assert "norm_sq: 1" in out

    def test_json(self, capsys, write):
        a = write("a.json", A2)
        code, out, _ = run(capsys, "svp", a, "--json")
        assert code == 0
        data = json.loads(out)
        assert data["norm_sq"] == "2"
        assert [int(x) for x in data["vector"]] == [1, -1]


class TestEnum:
    def test_kissing_count_hexagonal(self, capsys, write):
        a = write("a.json", A2)
        code, out, _ = run(capsys, "enum", a, "--bound-sq", "2")
        assert code == 0
        assert len(out.strip().splitlines()) == 6

    def test_json_output(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "enum", a, "--bound-sq", "1")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 4
        code, out, _ = run(capsys, "enum", a, "--bound-sq", "1", "--json")
        data = json.loads(out)
        assert data["count"] == 4
        assert data["bound_sq"] == "1"
        assert ["0", "1"] in data["vectors"]

    def test_empty_below_minimum(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "enum", a, "--bound-sq", "1/2")
        assert code == 0
        assert out.strip() == ""

    def test_bad_bound(self, capsys, write):
        a = write("a.json", Z2)
        code, _, err = run(capsys, "enum", a, "--bound-sq", "xyz")
        assert code == 2

    def test_zero_denominator_bound(self, capsys, write):
        a = write("a.json", Z2)
        code, _, _ = run(capsys, "enum", a, "--bound-sq", "1/0")
        assert code == 2


class TestTransforms:
    def test_kz_emits_lattice_file(self, capsys, write):
        a = write("a.json", SKEW)
        code, out, _ = run(capsys, "kz", a)
        assert code == 0
        L = parse_lattice_file(out)
        assert L.gram == Z2.gram
        assert format_lattice_file(L) == out

    def test_dual_exact_rationals(self, capsys, write):
        a = write("a.json", A2)
        code, out, _ = run(capsys, "dual", a)
        assert code == 0
        assert parse_lattice_file(out).gram == dual(A2).gram

    def test_reduce_default_delta(self, capsys, write):
        a = write("a.json", SKEW)
        code, out, _ = run(capsys, "reduce", a)
        assert code == 0
        assert parse_lattice_file(out).gram == Z2.gram

    def test_reduce_rejects_bad_delta(self, capsys, write):
        a = write("a.json", SKEW)
        code, _, err = run(capsys, "reduce", a, "--delta", "1/5")
        assert code == 2
        assert err

    def test_minima(self, capsys, write):
        a = write("a.json", DIAG_1_4)
        code, out, _ = run(capsys, "minima", a)
        assert code == 0
        assert out.strip().splitlines() == ["1", "4"]
        code, out, _ = run(capsys, "minima", a, "--json")
        assert json.loads(out) == {"minima_sq": ["1", "4"]}


class TestIsolate:
    def test_deterministic_output(self, capsys, write):
        a = write("a.json", Z2)
        code, out1, _ = run(capsys, "isolate", a, "--seed", "3")
        assert code == 0
        code, out2, _ = run(capsys, "isolate", a, "--seed", "3")
        assert out1 == out2

    def test_json_chain(self, capsys, write):
        a = write("a.json", Z2)
        code, out, _ = run(capsys, "isolate", a, "--json")
        assert code == 0
        data = json.loads(out)
        assert len(data["w"]) == 2
        assert len(data["chain"]) == 2
        for v in data["chain"]:
            assert all(int(x) in (-1, 0, 1) for x in v)

    def test_eps_out_of_range(self, capsys, write):
        a = write("a.json", Z2)
        code, _, err = run(capsys, "isolate", a, "--eps", "3/2")
        assert code == 2
        assert err

    def test_unequal_minima_rejected(self, capsys, write):
        a = write("a.json", DIAG_1_4)
        code, _, err = run(capsys, "isolate", a)
        assert code == 2
        assert err


class TestSzk:
    def test_distinguishable_pair_accepts(self, capsys, write):
        a = write("a.json", make_lattice(((2,),)))
        b = write("b.json", make_lattice(((3,),)))
        code, out, _ = run(capsys, "szk", a, b, "--rounds", "4", "--seed", "1", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["rounds"] == 4
        assert data["accepted"] == 4

    def test_plain_report(self, capsys, write):
        a = write("a.json", make_lattice(((2,),)))
        b = write("b.json", make_lattice(((3,),)))
        code, out, _ = run(capsys, "szk", a, b, "--rounds", "2", "--seed", "0")
        assert code == 0
        assert "rounds: 2" in out
        assert "rate:" in out


class TestGen:
    def test_emits_isomorphic_pair(self, capsys, write, tmp_path):
        code, out, _ = run(capsys, "gen", "--n", "2", "--seed", "9", "--skew", "3")
        assert code == 0
        data = json.loads(out)
        La = parse_lattice_file(json.dumps(data["a"]))
        Lb = parse_lattice_file(json.dumps(data["b"]))
        a = write("a.json", La)
        b = write("b.json", Lb)
        code, out, _ = run(capsys, "lip", "decide", a, b)
        assert code == 0

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "gen", "--n", "3", "--seed", "5", "--skew", "2")
        _, out2, _ = run(capsys, "gen", "--n", "3", "--seed", "5", "--skew", "2")
        assert out1 == out2

    def test_out_files(self, capsys, tmp_path):
        pa = str(tmp_path / "a.json")
        pb = str(tmp_path / "b.json")
        code, out, _ = run(capsys, "gen", "--n", "2", "--seed", "4", "--out-a", pa, "--out-b", pb)
        assert code == 0
        assert out == ""
        La = parse_lattice_file(open(pa).read())
        Lb = parse_lattice_file(open(pb).read())
        assert La.n == Lb.n == 2

    def test_mutated_pair_certificate_consistency(self, capsys, write):
        _, out, _ = run(capsys, "gen", "--n", "2", "--seed", "9", "--skew", "3")
        data = json.loads(out)
        bumped = data["b"]
        bumped["gram"][0][0] = str(Fraction(bumped["gram"][0][0]) + 1)
        La = parse_lattice_file(json.dumps(data["a"]))
        Lb = parse_lattice_file(json.dumps(bumped))
        a = write("a.json", La)
        b = write("b.json", Lb)
        code, _, _ = run(capsys, "lip", "decide", a, b)
        assert code in (0, 1)
        assert (code == 0) == bool(lip_general(La, Lb).isoms)

    def test_bad_rank(self, capsys):
        code, _, err = run(capsys, "gen", "--n", "0", "--seed", "1")
        assert code == 2
        assert err


class TestArgHandling:
    def test_no_arguments(self, capsys):
        code, _, err = run(capsys)
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2

    def test_lip_without_action(self, capsys):
        code, _, _ = run(capsys, "lip")
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        assert "usage" in out

    def test_main_entry_point(self, capsys, write, monkeypatch):
        a = write("a.json", Z2)
        monkeypatch.setattr(sys, "argv", ["lattiso", "svp", a])
        with pytest.raises(SystemExit) as exc:
            main()
        assert exc.value.code == 0
