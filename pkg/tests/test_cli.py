"""End-to-end tests of the command-line front end."""

import numpy as np
import pytest

from gf2clifford.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_REFUSED, main
from gf2clifford.clifford import hadamard_gate, identity_tableau, random_tableau
from gf2clifford.textio import format_tableau, parse_circuit, parse_tableau


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestTableauCommand:
    """`tableau` folds a circuit into one tableau."""

    def test_empty_circuit(self, capsys, write):
        code, out, _ = run(capsys, "tableau", write("c.txt", "n 2\n"))
        assert code == EXIT_OK
        assert out == format_tableau(identity_tableau(2))

    def test_cnot(self, capsys, write):
        _, out, _ = run(capsys, "tableau", write("c.txt", "n 2\nCNOT 0 1\n"))
        assert out == "n 2\n1100\n0100\n0010\n0011\n0000\n0000\n"

    def test_hadamard_twice(self, capsys, write):
        _, out, _ = run(capsys, "tableau", write("c.txt", "n 1\nH 0\nH 0\n"))
        assert parse_tableau(out).is_identity()

    def test_parse_error(self, capsys, write):
        code, _, err = run(capsys, "tableau", write("c.txt", "n 2\nCNOT 0 5\n"))
        assert code == EXIT_INPUT
        assert "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "tableau", str(tmp_path / "nope.txt"))
        assert code == EXIT_INPUT and "cannot read" in err


class TestDecomposeCommand:
    """`decompose` emits a circuit realizing a tableau."""

    def test_identity(self, capsys, write):
        code, out, _ = run(capsys, "decompose", write("t.txt", format_tableau(identity_tableau(3))))
        assert code == EXIT_OK
        assert out == "n 3\n# gates: 0 two-qubit: 0\n"

    def test_all_hadamard_blocks(self, capsys, write):
        _, out, _ = run(capsys, "decompose", "--scheme", "blocks", write("t.txt", format_tableau(hadamard_gate(3, range(3)))))
        assert out.splitlines()[1] == "H 0 1 2"

    @pytest.mark.parametrize("scheme", ["cols", "blocks"])
    @pytest.mark.parametrize("seed", range(5))
    def test_roundtrip(self, capsys, write, scheme, seed):
        text = format_tableau(random_tableau(5, np.random.default_rng(seed)))
        _, circuit, _ = run(capsys, "decompose", "--scheme", scheme, write("t.txt", text))
        _, back, _ = run(capsys, "tableau", write("c.txt", circuit))
        assert back == text

    def test_rejects_bad_tableau(self, capsys, write):
        code, _, err = run(capsys, "decompose", write("t.txt", "n 1\n11\n00\n00\n00\n"))
        assert code == EXIT_INPUT and "entry" in err


class TestComposeInvert:
    """`compose` and `invert`."""

    def test_compose_with_inverse(self, capsys, write):
        t = write("t.txt", format_tableau(random_tableau(4, np.random.default_rng(3))))
        _, inv, _ = run(capsys, "invert", t)
        _, out, _ = run(capsys, "compose", t, write("inv.txt", inv))
        assert parse_tableau(out).is_identity()

    def test_compose_order(self, capsys, write):
        h = write("h.txt", "n 2\nH 0\n")
        c = write("c.txt", "n 2\nCNOT 0 1\n")
        _, th, _ = run(capsys, "tableau", h)
        _, tc, _ = run(capsys, "tableau", c)
        _, both, _ = run(capsys, "tableau", write("hc.txt", "n 2\nH 0\nCNOT 0 1\n"))
        _, out, _ = run(capsys, "compose", write("th", th), write("tc", tc))
        assert out == both


class TestStateCommands:
    """`canon` and `amplitudes`."""

    @pytest.mark.parametrize(
        "body, expected",
        [
            ("n 1\n+Z\n", "0 1 0\n"),
            ("n 2\n+XX\n+ZZ\n", "00 0.70710678118654757 0\n11 0.70710678118654757 0\n"),
            ("n 1\n+Y\n", "0 0.70710678118654757 0\n1 0 0.70710678118654757\n"),
        ],
    )
    def test_amplitudes(self, capsys, write, body, expected):
        code, out, _ = run(capsys, "amplitudes", write("s.txt", body))
        assert code == EXIT_OK and out == expected

    def test_canon(self, capsys, write):
        _, out, _ = run(capsys, "canon", write("s.txt", "n 2\n+XX\n+ZZ\n"))
        assert out.startswith("r_a: 0\nr_b: 1\nr_c: 1\n")

    def test_anticommuting_generators(self, capsys, write):
        code, _, err = run(capsys, "amplitudes", write("s.txt", "n 2\n+XI\n+ZI\n"))
        assert code == EXIT_INPUT and "commute" in err


class TestClosedFormCommand:
    """`closed-form` prints the matrix parameters."""

    def test_hadamard(self, capsys, write):
        _, out, _ = run(capsys, "closed-form", write("t.txt", format_tableau(hadamard_gate(1, [0]))))
        assert out.startswith("r: 1\nT1:\n1 1\n1\n")


class TestVerifyCommand:
    """`verify` checks circuits against dense matrices."""

    def test_bell_circuit(self, capsys, write):
        code, out, _ = run(capsys, "verify", write("c.txt", "n 2\nH 0\nCNOT 0 1\n"))
        assert code == EXIT_OK and out == "PASS n=2 gates=2\n"

    def test_empty(self, capsys, write):
        code, _, _ = run(capsys, "verify", write("c.txt", "n 3\n"))
        assert code == EXIT_OK

    def test_with_tableau_and_state(self, capsys, write):
        circuit = "n 2\nH 0\nCNOT 0 1\nEXP 1100\n"
        _, tab, _ = run(capsys, "tableau", write("c.txt", circuit))
        code, out, _ = run(
            capsys, "verify", write("c.txt", circuit), "--tableau", write("t.txt", tab), "--stabilizer", write("s.txt", "n 2\n+ZI\n-IX\n")
        )
        assert code == EXIT_OK, out

    def test_corrupted_tableau(self, capsys, write):
        circuit = write("c.txt", "n 2\nH 0\nCNOT 0 1\n")
        _, tab, _ = run(capsys, "tableau", circuit)
        lines = tab.splitlines()
        lines[-1] = "1" + lines[-1][1:]
        code, out, _ = run(capsys, "verify", circuit, "--tableau", write("t.txt", "\n".join(lines) + "\n"))
        assert code == EXIT_FAIL
        assert out == "FAIL given tableau: generator 0 image differs from dense conjugation\n"

    def test_refuses_large_register(self, capsys, write):
        code, _, err = run(capsys, "verify", write("c.txt", "n 11\n"))
        assert code == EXIT_REFUSED and "refused" in err

    def test_size_mismatch(self, capsys, write):
        code, _, _ = run(capsys, "verify", write("c.txt", "n 2\n"), "--stabilizer", write("s.txt", "n 1\n+Z\n"))
        assert code == EXIT_INPUT


class TestRandomTableauCommand:
    """`gen-random-tableau` is seeded and deterministic."""

    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, "gen-random-tableau", "--n", "4", "--seed", "7")
        _, b, _ = run(capsys, "gen-random-tableau", "--n", "4", "--seed", "7")
        assert a == b
        assert parse_tableau(a).n == 4

    def test_decompose_output_is_deterministic(self, capsys, write):
        _, t, _ = run(capsys, "gen-random-tableau", "--n", "6", "--seed", "1")
        path = write("t.txt", t)
        _, first, _ = run(capsys, "decompose", path)
        _, second, _ = run(capsys, "decompose", path)
        assert first == second
        assert parse_circuit(first).tableau() == parse_tableau(t)

    def test_negative_n(self, capsys):
        code, _, _ = run(capsys, "gen-random-tableau", "--n", "-1")
        assert code == EXIT_INPUT
